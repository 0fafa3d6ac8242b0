"""M-ary Sidelnikov sequences, constant multiples, shifts and simple checks."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .cycint import CycInt
from .errors import InvalidArgument, ModulusDoesNotDivide, PeriodMismatch
from .gf import FieldTable


@dataclass(frozen=True)
class Sequence:
    """One period of an M-ary sequence, digits in [0, M)."""

    M: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.M < 1:
            raise InvalidArgument(f"M must be positive, got {self.M}")
        digits = tuple(int(d) for d in self.digits)
        if not digits:
            raise InvalidArgument("a sequence needs at least one digit")
        if any(not 0 <= d < self.M for d in digits):
            raise InvalidArgument(f"digits must lie in [0, {self.M})")
        object.__setattr__(self, "digits", digits)

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def length(self) -> int:
        return len(self.digits)

    @property
    def period(self) -> int:
        """Least period of the stored digit vector (divisor scan)."""
        n = len(self.digits)
        for d in range(1, n + 1):
            if n % d == 0 and self.digits == self.digits[d:] + self.digits[:d]:
                return d
        return n  # unreachable

    def array(self) -> np.ndarray:
        return np.array(self.digits, dtype=np.int64)

    def to_json(self) -> dict:
        return {"M": self.M, "v": self.length, "digits": list(self.digits)}

    @classmethod
    def from_json(cls, data: dict | str) -> Sequence:
        if isinstance(data, str):
            data = json.loads(data)
        seq = cls(int(data["M"]), data["digits"])
        if "v" in data and int(data["v"]) != seq.length:
            raise InvalidArgument(f"v={data['v']} does not match {seq.length} digits")
        return seq


def _check_modulus(field: FieldTable, M: int) -> None:
    if M < 2 or (field.q - 1) % M:
        raise ModulusDoesNotDivide(f"M={M} must be >= 2 and divide q-1={field.q - 1}")


def sidelnikov(field: FieldTable, M: int) -> Sequence:
    """s_j = log_alpha(alpha^j + 1) mod M, with s_j = 0 where alpha^j = -1."""
    _check_modulus(field, M)
    shifted = field.add(field.exp_table, 1)
    return Sequence(M, tuple((field.log_table[shifted] % M).tolist()))


def sidelnikov_from_classes(field: FieldTable, M: int) -> Sequence:
    """Same sequence, built from the sets D_k = {alpha^(Mi+k) - 1 : 0 <= i < (q-1)/M}."""
    _check_modulus(field, M)
    label = np.full(field.q, -1, dtype=np.int64)
    n = (field.q - 1) // M
    for k in range(M):
        members = field.sub(field.exp_table[M * np.arange(n) + k], 1)
        label[members] = k
    j_elems = field.exp_table
    digits = np.where(j_elems == field.minus_one, 0, label[j_elems])
    if np.any(digits < 0):
        raise AssertionError("D_k sets do not cover F_q minus {-1}")
    return Sequence(M, tuple(digits.tolist()))


def constant_multiple(s: Sequence, c: int) -> Sequence:
    return Sequence(s.M, tuple((c * d) % s.M for d in s.digits))


def shift(s: Sequence, ell: int) -> Sequence:
    """Digit i of the result is digit (i + ell) mod v of ``s``."""
    k = ell % s.length
    return Sequence(s.M, s.digits[k:] + s.digits[:k])


def is_balanced(s: Sequence) -> bool:
    v, M = s.length, s.M
    lo, hi = v // M, -(-v // M)
    counts = Counter(s.digits)
    return all(lo <= counts.get(r, 0) <= hi for r in range(M))


def shift_equivalent(a: Sequence, b: Sequence) -> int | None:
    """Least ell in [0, v) with shift(a, ell) == b, or None."""
    if a.M != b.M or a.length != b.length:
        raise PeriodMismatch(f"(M={a.M}, v={a.length}) vs (M={b.M}, v={b.length})")
    doubled = a.digits + a.digits
    v = a.length
    for ell in range(v):
        if doubled[ell : ell + v] == b.digits:
            return ell
    return None


def character_identity_holds(field: FieldTable, s: Sequence) -> bool:
    """exp(2 pi i s_j / M) == psi_M(alpha^j + 1) for every j, exactly."""
    from .charsums import CharacterSpec, psi

    spec = CharacterSpec(field, s.M, 1, zero_value=1)
    for j, d in enumerate(s.digits):
        lhs = CycInt.from_exponent_counts(s.M, _unit(s.M, d))
        if lhs != psi(spec, field.add(field.exp(j), 1)):
            return False
    return True


def _unit(L: int, e: int) -> list[int]:
    v = [0] * L
    v[e % L] = 1
    return v


# -- text wire format -------------------------------------------------------


def to_text(s: Sequence, field: FieldTable) -> str:
    alpha = ",".join(str(c) for c in field.spec.alpha)
    digits = ",".join(str(d) for d in s.digits)
    return f"{field.p} {field.m} {s.M} {alpha}\n{digits}\n"


def from_text(text: str) -> tuple[dict, Sequence]:
    """Parse the two-line format; returns (header, sequence)."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) != 2:
        raise InvalidArgument("expected a header line and a digit line")
    parts = lines[0].split()
    if len(parts) != 4:
        raise InvalidArgument("header must read 'p m M alpha'")
    p, m, M = (int(x) for x in parts[:3])
    header = {"p": p, "m": m, "M": M, "alpha": [int(c) for c in parts[3].split(",")]}
    return header, Sequence(M, _parse_ints(lines[1].split(",")))


def _parse_ints(items: Iterable[str]) -> tuple[int, ...]:
    return tuple(int(x) for x in items)
