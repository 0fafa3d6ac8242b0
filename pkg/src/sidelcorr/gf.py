"""Finite fields GF(p^m) with fully materialised exp/log/trace tables.

Elements are plain integers: the residue c_0 + c_1 x + ... + c_{m-1} x^{m-1}
modulo the field polynomial is encoded as c_0 + c_1 p + ... + c_{m-1} p^{m-1}.
All table-backed operations accept ints or numpy integer arrays.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    EvenPrime,
    InvalidArgument,
    NotPrime,
    NotPrimitive,
    ReducibleModulus,
)

Poly = tuple[int, ...]  # ascending coefficients


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m`` and p prime, else None."""
    fs = prime_factors(q) if q > 1 else []
    if len(fs) != 1:
        return None
    p, m = fs[0], 0
    while q > 1:
        q //= p
        m += 1
    return p, m


def odd_prime_powers(limit: int) -> list[int]:
    return [q for q in range(3, limit + 1, 2) if prime_power(q) is not None]


# -- polynomial arithmetic over F_p (ascending coefficient tuples) ----------


def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``f``."""
    r = [c % p for c in a]
    n = len(f) - 1
    for i in range(len(r) - 1, n - 1, -1):
        c = r[i]
        if c:
            for j in range(n + 1):
                r[i - n + j] = (r[i - n + j] - c * f[j]) % p
    r = r[:n] if n > 0 else [0]
    return _trim(r or [0])


def poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return poly_mod(prod, f, p)


def poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(a, f, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def monic_polys(p: int, d: int) -> Iterator[Poly]:
    """Monic degree-``d`` polynomials, lexicographic with low degree first."""
    for tail in itertools.product(range(p), repeat=d):
        yield tail + (1,)


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for g in monic_polys(p, d):
            if poly_mod(f, g, p) == [0]:
                return False
    return True


def find_modulus(p: int, m: int) -> Poly:
    for f in monic_polys(p, m):
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


# -- field -------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: Poly
    alpha: Poly  # length m

    @property
    def q(self) -> int:
        return self.p**self.m

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "modulus": list(self.modulus),
            "alpha": list(self.alpha),
        }


@dataclass(frozen=True, eq=False)
class FieldTable:
    """GF(p^m) with exp/log/trace tables. Immutable once built."""

    spec: FieldSpec
    exp_table: np.ndarray  # exp_table[i] = alpha**i, 0 <= i < q-1
    log_table: np.ndarray  # length q, log_table[0] = 0
    trace_table: np.ndarray  # length q, values in [0, p)
    _place: np.ndarray = field(repr=False)

    # basic attributes

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def m(self) -> int:
        return self.spec.m

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def alpha(self) -> int:
        return self.encode(self.spec.alpha)

    @property
    def minus_one(self) -> int:
        return self.p - 1

    def __repr__(self) -> str:
        return f"FieldTable(p={self.p}, m={self.m}, modulus={list(self.spec.modulus)}, alpha={list(self.spec.alpha)})"

    # encoding

    def encode(self, coeffs: Iterable[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            raise InvalidArgument(f"element has {len(coeffs)} coefficients, field degree is {self.m}")
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def decode(self, x: int) -> Poly:
        return tuple(int(c) for c in self._digits(x))

    def elements(self) -> np.ndarray:
        return np.arange(self.q)

    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q)

    def _digits(self, x):
        return (np.asarray(x)[..., None] // self._place) % self.p

    def _undigits(self, d):
        return (d * self._place).sum(axis=-1)

    # arithmetic

    def add(self, a, b):
        if self.m == 1:
            return _out((np.asarray(a) + np.asarray(b)) % self.p, a, b)
        return _out(self._undigits((self._digits(a) + self._digits(b)) % self.p), a, b)

    def neg(self, a):
        if self.m == 1:
            return _out((-np.asarray(a)) % self.p, a)
        return _out(self._undigits((-self._digits(a)) % self.p), a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a_, b_ = np.asarray(a), np.asarray(b)
        idx = (self.log_table[a_] + self.log_table[b_]) % (self.q - 1)
        res = np.where((a_ == 0) | (b_ == 0), 0, self.exp_table[idx])
        return _out(res, a, b)

    def inv(self, a):
        a_ = np.asarray(a)
        if np.any(a_ == 0):
            raise DivisionByZero("inverse of zero")
        return _out(self.exp_table[(-self.log_table[a_]) % (self.q - 1)], a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a_ = np.asarray(a)
        if e < 0:
            a_ = np.asarray(self.inv(a_))
            e = -e
        idx = (self.log_table[a_] * e) % (self.q - 1)
        res = self.exp_table[idx]
        if e == 0:
            res = np.ones_like(res)
        else:
            res = np.where(a_ == 0, 0, res)
        return _out(res, a)

    def log(self, x):
        """Discrete log to base alpha, with log(0) = 0."""
        return _out(self.log_table[np.asarray(x)], x)

    def exp(self, i):
        """alpha**i for any integer i."""
        return _out(self.exp_table[np.asarray(i) % (self.q - 1)], i)

    def trace(self, x):
        return _out(self.trace_table[np.asarray(x)], x)

    def to_json(self) -> dict:
        return self.spec.to_json()


def _out(res, *inputs):
    if all(np.ndim(x) == 0 for x in inputs):
        return int(res)
    return res


def _as_poly(x: Sequence[int] | int, p: int, length: int | None = None) -> list[int]:
    if isinstance(x, (int, np.integer)):
        coeffs = []
        x = int(x)
        while x:
            coeffs.append(x % p)
            x //= p
    else:
        coeffs = [int(c) for c in x]
    if length is not None:
        if len(coeffs) > length:
            raise InvalidArgument(f"expected at most {length} coefficients, got {len(coeffs)}")
        coeffs = coeffs + [0] * (length - len(coeffs))
    return coeffs


def _is_primitive(a: Sequence[int], q: int, f: Sequence[int], p: int, factors: list[int]) -> bool:
    if poly_powmod(a, q - 1, f, p) != [1]:
        return False
    return all(poly_powmod(a, (q - 1) // r, f, p) != [1] for r in factors)


def build_field(
    p: int,
    m: int,
    modulus: Sequence[int] | None = None,
    alpha: Sequence[int] | int | None = None,
) -> FieldTable:
    """Construct GF(p^m).

    Without ``modulus`` the lexicographically least monic irreducible
    polynomial (low-degree coefficients compared first) is used; without
    ``alpha`` the least primitive element in integer-encoding order is used.
    Both choices are deterministic.
    """
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenPrime("characteristic 2 is not supported")
    if m < 1:
        raise InvalidArgument(f"extension degree must be >= 1, got {m}")
    p, m = int(p), int(m)
    q = p**m
    if alpha is not None and modulus is None:
        raise InvalidArgument("alpha can only be supplied together with a modulus")

    if modulus is None:
        f = find_modulus(p, m)
    else:
        f = tuple(int(c) for c in modulus)
        if len(f) != m + 1 or f[-1] != 1 or any(not 0 <= c < p for c in f):
            raise InvalidArgument(f"modulus must be monic of degree {m} with coefficients in [0, {p})")
        if not is_irreducible(f, p):
            raise ReducibleModulus(f"{list(f)} is reducible over F_{p}")

    factors = prime_factors(q - 1)
    if alpha is None:
        for n in range(1, q):
            a = _as_poly(n, p, m)
            if _is_primitive(a, q, f, p, factors):
                break
    else:
        a = _as_poly(alpha, p, m)
        if any(not 0 <= c < p for c in a) or not _is_primitive(a, q, f, p, factors):
            raise NotPrimitive(f"{a} does not have multiplicative order {q - 1}")

    place = p ** np.arange(m, dtype=np.int64)
    exp_table = np.empty(q - 1, dtype=np.int64)
    if m == 1:
        g, cur = a[0], 1
        for i in range(q - 1):
            exp_table[i] = cur
            cur = cur * g % p
    else:
        cur = [1]
        for i in range(q - 1):
            exp_table[i] = sum(c * p**k for k, c in enumerate(cur))
            cur = poly_mulmod(cur, a, f, p)
    log_table = np.zeros(q, dtype=np.int64)
    log_table[exp_table] = np.arange(q - 1)
    if len(set(exp_table.tolist())) != q - 1:
        raise AssertionError("alpha powers are not distinct")  # guarded by the order check

    spec = FieldSpec(p=p, m=m, modulus=tuple(f), alpha=tuple(a))
    table = FieldTable(spec, exp_table, log_table, np.zeros(q, dtype=np.int64), place)
    object.__setattr__(table, "trace_table", _trace_table(table))
    for arr in (table.exp_table, table.log_table, table.trace_table):
        arr.setflags(write=False)
    return table


def _trace_table(F: FieldTable) -> np.ndarray:
    # Tr(x) = x + x^p + ... + x^(p^(m-1))
    xs = F.elements()
    acc = np.zeros(F.q, dtype=np.int64)
    logs = F.log_table[xs]
    for i in range(F.m):
        conj = np.where(xs == 0, 0, F.exp_table[(logs * F.p**i) % (F.q - 1)])
        acc = F.add(acc, conj)
    if np.any(acc >= F.p):
        raise AssertionError("trace left the prime field")
    return acc


def field_from_json(data: dict | str) -> FieldTable:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return build_field(int(data["p"]), int(data["m"]), data.get("modulus"), data.get("alpha"))
    except KeyError as exc:
        raise InvalidArgument(f"field description is missing {exc}") from None
