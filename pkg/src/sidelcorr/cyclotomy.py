"""Cyclotomic classes C_u = {alpha^(k*l + u)} and cyclotomic numbers (u, v)_k."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from .charsums import pure_parameters
from .errors import BadClassIndex, NonIntegralCount
from .gf import FieldTable


@dataclass(frozen=True, eq=False)
class CyclotomicTable:
    """k x k matrix of cyclotomic numbers; entry [u, v] = (u, v)_k."""

    q: int
    k: int
    numbers: np.ndarray
    source: Literal["brute", "pure"]

    def __getitem__(self, uv: tuple[int, int]) -> int:
        u, v = uv
        return int(self.numbers[u % self.k, v % self.k])

    def equals(self, other: CyclotomicTable) -> bool:
        return self.k == other.k and np.array_equal(self.numbers, other.numbers)

    def to_json(self) -> dict:
        return {"q": self.q, "k": self.k, "source": self.source, "numbers": self.numbers.tolist()}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u"] + [f"v={v}" for v in range(self.k)])
        for u in range(self.k):
            w.writerow([u] + self.numbers[u].tolist())
        return buf.getvalue()


def _check_k(field: FieldTable, k: int) -> None:
    if k < 1 or (field.q - 1) % k:
        raise BadClassIndex(f"k={k} must divide q-1={field.q - 1}")


def cyclotomic_class(field: FieldTable, k: int, u: int) -> frozenset[int]:
    _check_k(field, k)
    if not 0 <= u < k:
        raise BadClassIndex(f"class index {u} outside [0, {k})")
    n = (field.q - 1) // k
    return frozenset(field.exp_table[k * np.arange(n) + u].tolist())


def cyclotomic_number_brute(field: FieldTable, k: int, u: int, v: int) -> int:
    """#{x in C_u : 1 + x in C_v}, by direct membership test. Indices are mod k."""
    _check_k(field, k)
    cu = cyclotomic_class(field, k, u % k)
    cv = cyclotomic_class(field, k, v % k)
    return sum(1 for x in cu if field.add(x, 1) in cv)


@lru_cache(maxsize=256)
def cyclotomic_numbers(field: FieldTable, k: int) -> CyclotomicTable:
    """Full brute-force table, one pass over F_q; cached per (field, k)."""
    _check_k(field, k)
    xs = field.nonzero()
    ys = field.add(xs, 1)
    keep = ys != 0
    u = field.log_table[xs[keep]] % k
    v = field.log_table[ys[keep]] % k
    numbers = np.bincount(u * k + v, minlength=k * k).reshape(k, k)
    numbers.setflags(write=False)
    return CyclotomicTable(field.q, k, numbers, "brute")


def cyclotomic_numbers_pure(p: int, m: int, k: int) -> CyclotomicTable:
    """Closed-form table in the semiprimitive case (uniform cyclotomy).

    With r = (-1)^s p^(m/2):
      k^2 (0,0) = q + 1 - 3k - (k-1)(k-2) r
      k^2 (0,b) = k^2 (b,0) = k^2 (b,b) = q + 1 - k + (k-2) r   (b != 0)
      k^2 (a,b) = q + 1 - 2r                                     (otherwise)
    """
    t, s = pure_parameters(p, m, k)
    q = p**m
    r = (-1) ** s * p ** (m // 2)
    numbers = np.empty((k, k), dtype=np.int64)
    for a in range(k):
        for b in range(k):
            if a == 0 and b == 0:
                scaled = q + 1 - 3 * k - (k - 1) * (k - 2) * r
            elif a == 0 or b == 0 or a == b:
                scaled = q + 1 - k + (k - 2) * r
            else:
                scaled = q + 1 - 2 * r
            if scaled % (k * k):
                raise NonIntegralCount(f"k^2 ({a},{b})_k = {scaled} is not divisible by {k * k}")
            numbers[a, b] = scaled // (k * k)
    numbers.setflags(write=False)
    return CyclotomicTable(q, k, numbers, "pure")


def s_uv_counts(field: FieldTable, M: int) -> np.ndarray:
    """|S_{u,v}| for all (u, v), by enumerating y not in {0, 1}.

    S_{u,v} = {y : chi_M((y-1)/y) = w^u, chi_M(1/(1-y)) = w^v}.
    """
    _check_k(field, M)
    ys = np.arange(2, field.q)
    one_minus = field.sub(1, ys)
    u = field.log_table[field.div(field.neg(one_minus), ys)] % M
    v = (-field.log_table[one_minus]) % M
    return np.bincount(u * M + v, minlength=M * M).reshape(M, M)


def s_uv_cardinality(field: FieldTable, M: int, u: int, v: int) -> int:
    """(u + v, v)_M, read from the cached brute-force table."""
    _check_k(field, M)
    return cyclotomic_numbers(field, M)[(u + v) % M, v % M]


def s_uv_class_pair(q: int, M: int, u: int, v: int) -> tuple[int, int]:
    """Indices (a, b) with |S_{u,v}| = (a, b)_M for every q and M.

    The bijection y -> x = y/(1-y) sends S_{u,v} onto
    {x : log x = (q-1)/2 - u, log(1+x) = v (mod M)}.
    """
    return ((q - 1) // 2 - u) % M, v % M
