"""Exact arithmetic in Z[w_L], w_L = exp(2*pi*i/L).

A value is stored as its residue modulo the L-th cyclotomic polynomial, a
length-phi(L) integer vector in the basis 1, w, ..., w^(phi(L)-1). That form
is unique, so equality is coefficient equality.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArgument, LevelMismatch, NotAMultiple

_INT64_SAFE = 2**62


def totient(n: int) -> int:
    result, k, d = n, n, 2
    while d * d <= k:
        if k % d == 0:
            while k % d == 0:
                k //= d
            result -= result // d
        d += 1
    if k > 1:
        result -= result // k
    return result


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn] // den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num[:dn]):
        raise AssertionError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Phi_L as ascending integer coefficients, via (x^L - 1) / prod_{d|L, d<L} Phi_d."""
    if L < 1:
        raise InvalidArgument(f"level must be positive, got {L}")
    num = [-1] + [0] * (L - 1) + [1]
    for d in range(1, L):
        if L % d == 0:
            num = _poly_divexact(num, cyclotomic_polynomial(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _phi_array(L: int) -> np.ndarray:
    return np.array(cyclotomic_polynomial(L), dtype=np.int64)


def reduce_poly(L: int, coeffs) -> np.ndarray:
    """Canonical residue of sum_e coeffs[..., e] * w_L^e.

    Works row-wise on 2-D input, so a whole correlation vector is reduced in
    one call. Exponents are folded mod L before dividing by Phi_L.
    """
    c = np.asarray(coeffs, dtype=np.int64)
    if c.shape[-1] > L:
        pad = (-c.shape[-1]) % L
        if pad:
            c = np.concatenate([c, np.zeros(c.shape[:-1] + (pad,), dtype=np.int64)], axis=-1)
        c = c.reshape(c.shape[:-1] + (-1, L)).sum(axis=-2)
    else:
        c = c.copy()
    phi = _phi_array(L)
    n = len(phi) - 1
    for i in range(c.shape[-1] - 1, n - 1, -1):
        top = c[..., i : i + 1]
        if np.any(top):
            c[..., i - n : i + 1] -= top * phi
    out = c[..., :n]
    if out.shape[-1] < n:
        out = np.concatenate([out, np.zeros(out.shape[:-1] + (n - out.shape[-1],), dtype=np.int64)], axis=-1)
    return out


def _convolve(a: tuple[int, ...], b: tuple[int, ...]) -> np.ndarray | list[int]:
    bound = max(map(abs, a), default=0) * max(map(abs, b), default=0) * min(len(a), len(b))
    if bound < _INT64_SAFE:
        return np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


class CycInt:
    """Element of Z[w_L] in canonical form. Immutable and hashable.

    Values of different levels never compare equal (use :meth:`lift`),
    except that integer-valued elements also compare equal to Python ints.
    """

    __slots__ = ("level", "coeffs")

    level: int
    coeffs: tuple[int, ...]

    def __init__(self, level: int, coeffs: Iterable[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if level < 1:
            raise InvalidArgument(f"level must be positive, got {level}")
        if len(coeffs) != totient(level):
            raise InvalidArgument(f"level {level} needs {totient(level)} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycInt is immutable")

    # constructors

    @classmethod
    def from_int(cls, n: int, level: int = 1) -> CycInt:
        return cls(level, (n,) + (0,) * (totient(level) - 1))

    @classmethod
    def from_poly(cls, level: int, coeffs) -> CycInt:
        """Reduce an arbitrary integer polynomial in w_L."""
        c = list(coeffs)
        if any(abs(int(x)) >= _INT64_SAFE for x in c):
            return cls(level, _reduce_bigint(level, [int(x) for x in c]))
        return cls(level, reduce_poly(level, c).tolist())

    @classmethod
    def from_exponent_counts(cls, level: int, counts) -> CycInt:
        """``sum_e counts[e] * w_L^e``."""
        return cls.from_poly(level, counts)

    @classmethod
    def zero(cls, level: int) -> CycInt:
        return cls.from_int(0, level)

    @classmethod
    def one(cls, level: int) -> CycInt:
        return cls.from_int(1, level)

    # arithmetic

    def _coerce(self, other) -> CycInt:
        if isinstance(other, CycInt):
            if other.level != self.level:
                raise LevelMismatch(f"levels {self.level} and {other.level} differ; lift first")
            return other
        if isinstance(other, (int, np.integer)):
            return CycInt.from_int(int(other), self.level)
        return NotImplemented

    def __add__(self, other) -> CycInt:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.level, (x + y for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt(self.level, (-x for x in self.coeffs))

    def __sub__(self, other) -> CycInt:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.level, (x - y for x, y in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other) -> CycInt:
        return (-self) + other

    def __mul__(self, other) -> CycInt:
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt.from_poly(self.level, _convolve(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CycInt:
        if e < 0:
            raise InvalidArgument("negative powers are not supported")
        result, base = CycInt.one(self.level), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, n: int) -> CycInt:
        return CycInt(self.level, (n * x for x in self.coeffs))

    def conj(self) -> CycInt:
        """Complex conjugate: w^e -> w^(-e)."""
        L = self.level
        raw = [0] * L
        for e, c in enumerate(self.coeffs):
            raw[(-e) % L] += c
        return CycInt.from_poly(L, raw)

    def norm_sq(self) -> CycInt:
        """|a|^2 = a * conj(a), exactly."""
        return self * self.conj()

    def lift(self, new_level: int) -> CycInt:
        """Same complex number, expressed at a multiple of the current level."""
        if new_level % self.level:
            raise NotAMultiple(f"{new_level} is not a multiple of {self.level}")
        step = new_level // self.level
        raw = [0] * new_level
        for e, c in enumerate(self.coeffs):
            raw[e * step] += c
        return CycInt.from_poly(new_level, raw)

    # inspection

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise InvalidArgument(f"{self} is not a rational integer")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        L = self.level
        return complex(sum(c * cmath.exp(2j * math.pi * e / L) for e, c in enumerate(self.coeffs) if c))

    def __complex__(self) -> complex:
        return self.to_complex()

    def __abs__(self) -> float:
        return abs(self.to_complex())

    def __eq__(self, other) -> bool:
        if isinstance(other, CycInt):
            return self.level == other.level and self.coeffs == other.coeffs
        if isinstance(other, (int, np.integer)):
            return self.is_integer() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_integer():
            return hash(self.coeffs[0])
        return hash((self.level, self.coeffs))

    def sort_key(self) -> tuple:
        return (self.level, self.coeffs)

    def __repr__(self) -> str:
        return f"CycInt({self.level}, {list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if e == 0 else ("w" if e == 1 else f"w^{e}")
            if mono and abs(c) == 1:
                terms.append(("-" if c < 0 else "+") + mono)
            else:
                terms.append(f"{c:+d}" + ("*" + mono if mono else ""))
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s

    def to_json(self) -> dict:
        z = self.to_complex()
        return {
            "level": self.level,
            "coeffs": list(self.coeffs),
            "re": _clean_float(z.real),
            "im": _clean_float(z.imag),
        }

    @classmethod
    def from_json(cls, data: dict) -> CycInt:
        return cls(int(data["level"]), data["coeffs"])


def _clean_float(x: float) -> float:
    return round(x, 6) + 0.0


def _reduce_bigint(L: int, c: list[int]) -> list[int]:
    folded = [0] * L
    for e, x in enumerate(c):
        folded[e % L] += x
    phi = cyclotomic_polynomial(L)
    n = len(phi) - 1
    for i in range(L - 1, n - 1, -1):
        top = folded[i]
        if top:
            for j, d in enumerate(phi):
                folded[i - n + j] -= top * d
    return folded[:n]


def root_of_unity(L: int, e: int) -> CycInt:
    """w_L^(e mod L)."""
    if L < 1:
        raise InvalidArgument(f"level must be positive, got {L}")
    return _root_of_unity(L, e % L)


@lru_cache(maxsize=4096)
def _root_of_unity(L: int, e: int) -> CycInt:
    raw = [0] * L
    raw[e] = 1
    return CycInt.from_poly(L, raw)


def lift(a: CycInt, new_level: int) -> CycInt:
    return a.lift(new_level)


def to_complex(a: CycInt) -> tuple[float, float]:
    z = a.to_complex()
    return z.real, z.imag


def from_rows(level: int, rows: np.ndarray) -> list[CycInt]:
    """Wrap already-canonical coefficient rows."""
    return [CycInt(level, r) for r in np.asarray(rows).tolist()]
