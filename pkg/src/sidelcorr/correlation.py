"""Periodic correlation by direct summation, and the two classical bounds."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .cycint import CycInt, from_rows, reduce_poly
from .errors import BadMultiplier, DegenerateFamily, ShapeMismatch
from .gf import FieldTable
from .sequences import Sequence, constant_multiple, sidelnikov

# rows of tau handled per bincount call; keeps the (rows, v) index block small
_CHUNK_ELEMS = 1 << 22


@dataclass(frozen=True, eq=False)
class CorrelationVector:
    """C_{a,b}(tau) for tau = 0..v-1, as canonical coefficient rows at level M."""

    M: int
    v: int
    coeffs: np.ndarray  # shape (v, phi(M))

    def __len__(self) -> int:
        return self.v

    def __getitem__(self, tau: int) -> CycInt:
        return CycInt(self.M, self.coeffs[tau % self.v].tolist())

    @property
    def values(self) -> list[CycInt]:
        return from_rows(self.M, self.coeffs)

    def complex_values(self) -> np.ndarray:
        basis = np.exp(2j * np.pi * np.arange(self.coeffs.shape[1]) / self.M)
        return self.coeffs @ basis

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.complex_values())

    def to_json(self) -> dict:
        return {"M": self.M, "v": self.v, "values": [c.to_json() for c in self.values]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        n = self.coeffs.shape[1]
        w.writerow(["tau"] + [f"c{i}" for i in range(n)] + ["re", "im"])
        for tau, (row, z) in enumerate(zip(self.coeffs.tolist(), self.complex_values())):
            w.writerow([tau] + row + [f"{z.real + 0.0:.6f}", f"{z.imag + 0.0:.6f}"])
        return buf.getvalue()


def _check_shapes(a: Sequence, b: Sequence) -> None:
    if a.M != b.M or a.length != b.length:
        raise ShapeMismatch(f"(M={a.M}, v={a.length}) vs (M={b.M}, v={b.length})")


def exponent_counts(a: Sequence, b: Sequence, taus) -> np.ndarray:
    """counts[i, e] = #{t : a_t - b_{t+taus[i]} = e (mod M)}."""
    _check_shapes(a, b)
    M, v = a.M, a.length
    A, B = a.array(), b.array()
    taus = np.atleast_1d(np.asarray(taus, dtype=np.int64)) % v
    t = np.arange(v)
    rows = max(1, _CHUNK_ELEMS // v)
    out = np.empty((len(taus), M), dtype=np.int64)
    for start in range(0, len(taus), rows):
        block = taus[start : start + rows]
        diff = (A[None, :] - B[(t[None, :] + block[:, None]) % v]) % M
        flat = diff + M * np.arange(len(block))[:, None]
        out[start : start + len(block)] = np.bincount(flat.ravel(), minlength=len(block) * M).reshape(-1, M)
    return out


def correlate(a: Sequence, b: Sequence, tau: int) -> CycInt:
    """sum_t w_M^(a_t - b_{t+tau}); tau is taken mod v."""
    return CycInt.from_exponent_counts(a.M, exponent_counts(a, b, [tau])[0])


def full_correlation(a: Sequence, b: Sequence) -> CorrelationVector:
    counts = exponent_counts(a, b, np.arange(a.length))
    return CorrelationVector(a.M, a.length, reduce_poly(a.M, counts))


def lag_histogram(s: Sequence) -> np.ndarray:
    """H[tau, a*M + b] = #{t : s_t = a, s_{t+tau} = b}, shape (v, M*M)."""
    M, v = s.M, s.length
    S = s.array()
    t = np.arange(v)
    rows = max(1, _CHUNK_ELEMS // v)
    out = np.empty((v, M * M), dtype=np.int64)
    for start in range(0, v, rows):
        block = np.arange(start, min(v, start + rows))
        joint = S[None, :] * M + S[(t[None, :] + block[:, None]) % v]
        flat = joint + (M * M) * np.arange(len(block))[:, None]
        out[start : start + len(block)] = np.bincount(flat.ravel(), minlength=len(block) * M * M).reshape(-1, M * M)
    return out


def multiple_correlation(hist: np.ndarray, M: int, c1: int, c2: int) -> CorrelationVector:
    """C_{c1 s, c2 s}(tau) for all tau, regrouped from :func:`lag_histogram`."""
    a, b = np.divmod(np.arange(M * M), M)
    select = np.zeros((M * M, M), dtype=np.int64)
    select[np.arange(M * M), (c1 * a - c2 * b) % M] = 1
    counts = hist @ select
    return CorrelationVector(M, hist.shape[0], reduce_poly(M, counts))


def autocorrelation(a: Sequence) -> CorrelationVector:
    return full_correlation(a, a)


def welch_bound(s: int, ell: int) -> float:
    """Lower bound sqrt(ell^2 (s-1) / (s*ell - 1)) on C_max for s sequences of period ell."""
    if s < 1 or ell < 1 or s * ell <= 1:
        raise DegenerateFamily(f"need s >= 1, ell >= 1 and s*ell > 1 (got s={s}, ell={ell})")
    return math.sqrt(ell * ell * (s - 1) / (s * ell - 1))


def sidelnikov_upper_bound(q: int) -> float:
    return math.sqrt(q) + 3


@dataclass(frozen=True)
class BoundReport:
    q: int
    M: int
    c1: int
    c2: int
    max_abs: float
    argmax_tau: int
    bound: float

    @property
    def passed(self) -> bool:
        return self.max_abs <= self.bound + 1e-9

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "M": self.M,
            "c1": self.c1,
            "c2": self.c2,
            "max_abs": round(self.max_abs, 6),
            "argmax_tau": self.argmax_tau,
            "bound": round(self.bound, 6),
            "pass": self.passed,
        }


def check_multipliers(M: int, c1: int, c2: int) -> None:
    if c1 % M == 0 or c2 % M == 0 or (c1 - c2) % M == 0:
        raise BadMultiplier(f"need distinct nonzero multipliers mod {M}, got ({c1}, {c2})")


def sidelnikov_bound_check(field: FieldTable, M: int, c1: int, c2: int) -> BoundReport:
    """max_tau |C_{c1 s, c2 s}(tau)| against sqrt(q) + 3."""
    check_multipliers(M, c1, c2)
    s = sidelnikov(field, M)
    mags = full_correlation(constant_multiple(s, c1 % M), constant_multiple(s, c2 % M)).magnitudes()
    tau = int(np.argmax(mags))
    return BoundReport(field.q, M, c1, c2, float(mags[tau]), tau, sidelnikov_upper_bound(field.q))
