"""Cross-correlation of constant multiples c1*s, c2*s of a Sidelnikov sequence.

For tau in [1, q-2] write y = alpha^tau and

    A = chi_M^c1(1 - alpha^-tau),   B = chi_M^-c2(1 - alpha^tau),
    J = J(chi_M^c1, chi_M^-c2).

Two closed forms are provided:

``form="exact"``
    C(tau) = A*B*J + A + B - 1 and C(0) = 0. The two unit terms are the
    x = 0 and x = 1 boundary terms of the underlying character sum, where
    psi(0) = 1 cannot be factored multiplicatively. This form agrees with
    direct summation everywhere.

``form="product"``
    C(tau) = A*B*(J + 2) - 1 and C(0) = -1, with J taken as -1 whenever
    c1 + c2 = 0 (mod M). It coincides with the exact form only at the tau
    where A = B = 1; it is kept so that formula can be evaluated and
    compared against direct summation.

Distributions are taken over tau in [1, q-2]; the tau = 0 value is reported
separately.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Literal

import numpy as np

from .charsums import (
    JacobiEvaluation,
    jacobi_sum,
    pure_jacobi,
    pure_parameters,
    semiprimitivity,
)
from .correlation import (
    autocorrelation,
    check_multipliers,
    full_correlation,
    lag_histogram,
    multiple_correlation,
    sidelnikov_upper_bound,
    welch_bound,
)
from .cycint import CycInt, root_of_unity
from .cyclotomy import (
    CyclotomicTable,
    cyclotomic_numbers,
    cyclotomic_numbers_pure,
    s_uv_class_pair,
)
from .errors import BadTau, DegreeNotCompatible, ModulusDoesNotDivide, NotSemiprimitive
from .gf import FieldTable, build_field, odd_prime_powers, prime_power
from .sequences import constant_multiple, is_balanced, shift_equivalent, sidelnikov

Form = Literal["exact", "product"]
Provenance = Literal["brute", "per_tau_closed_form", "cyclotomic_count"]


@dataclass(frozen=True)
class CrossCorrSpec:
    field: FieldTable
    M: int
    c1: int
    c2: int

    def __post_init__(self):
        if self.M < 2 or (self.field.q - 1) % self.M:
            raise ModulusDoesNotDivide(f"M={self.M} must be >= 2 and divide q-1={self.field.q - 1}")
        check_multipliers(self.M, self.c1, self.c2)
        object.__setattr__(self, "c1", self.c1 % self.M)
        object.__setattr__(self, "c2", self.c2 % self.M)

    @property
    def q(self) -> int:
        return self.field.q


@dataclass(frozen=True)
class ExponentPair:
    u: int
    v: int


@dataclass(frozen=True)
class DistributionEntry:
    value: CycInt
    count: int
    residue: object = None  # int (product form), (ru, rv) (exact form), None (brute)

    def to_json(self) -> dict:
        residue = list(self.residue) if isinstance(self.residue, tuple) else self.residue
        return {"residue": residue, "value": self.value.to_json(), "count": self.count}


@dataclass(frozen=True)
class CorrelationDistribution:
    q: int
    M: int
    c1: int
    c2: int
    entries: tuple[DistributionEntry, ...]
    tau_zero_value: CycInt
    provenance: Provenance
    form: Form | None = None
    jacobi: JacobiEvaluation | None = dc_field(default=None, compare=False)

    def as_counter(self) -> Counter:
        out: Counter = Counter()
        for e in self.entries:
            out[e.value] += e.count
        return out

    @property
    def total(self) -> int:
        return sum(e.count for e in self.entries)

    def same_multiset(self, other: CorrelationDistribution) -> bool:
        return self.as_counter() == other.as_counter()

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "M": self.M,
            "c1": self.c1,
            "c2": self.c2,
            "form": self.form,
            "provenance": self.provenance,
            "jacobi": self.jacobi.to_json() if self.jacobi else None,
            "tau0": self.tau_zero_value.to_json(),
            "entries": [e.to_json() for e in self.entries],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["residue", "count", "re", "im", "coeffs"])
        for e in self.entries:
            z = e.value.to_complex()
            residue = ":".join(map(str, e.residue)) if isinstance(e.residue, tuple) else e.residue
            coeffs = " ".join(map(str, e.value.coeffs))
            w.writerow([residue if residue is not None else "", e.count, f"{z.real + 0.0:.6f}", f"{z.imag + 0.0:.6f}", coeffs])
        return buf.getvalue()


# -- per-tau ingredients -------------------------------------------------------


def _check_tau(spec: CrossCorrSpec, tau: int, allow_zero: bool = True) -> None:
    lo = 0 if allow_zero else 1
    if not lo <= tau <= spec.q - 2:
        raise BadTau(f"tau={tau} outside [{lo}, {spec.q - 2}]")


def exponent_pair(spec: CrossCorrSpec, tau: int) -> ExponentPair:
    """u = log((y-1)/y), v = log(1/(1-y)) mod M for y = alpha^tau."""
    _check_tau(spec, tau, allow_zero=False)
    F, M = spec.field, spec.M
    y = F.exp(tau)
    u = F.log(F.div(F.sub(y, 1), y)) % M
    v = (-F.log(F.sub(1, y))) % M
    return ExponentPair(u, v)


def factor_exponents(spec: CrossCorrSpec, taus) -> tuple[np.ndarray, np.ndarray]:
    """Exponents of A = chi^c1(1 - alpha^-tau) and B = chi^-c2(1 - alpha^tau), mod M."""
    F, M = spec.field, spec.M
    taus = np.asarray(taus, dtype=np.int64)
    a = spec.c1 * F.log_table[F.sub(1, F.exp(-taus))] % M
    b = -spec.c2 * F.log_table[F.sub(1, F.exp(taus))] % M
    return a, b


def _as_value(J: JacobiEvaluation | CycInt | int, M: int) -> CycInt:
    if isinstance(J, JacobiEvaluation):
        return J.value
    if isinstance(J, CycInt):
        return J
    return CycInt.from_int(int(J), M)


@lru_cache(maxsize=1 << 16)
def _value(M: int, ea: int, eb: int, J: CycInt, form: Form) -> CycInt:
    A, B = root_of_unity(M, ea), root_of_unity(M, eb)
    if form == "product":
        return A * B * (J + 2) - 1
    return A * B * J + A + B - 1


def closed_form_correlation(spec: CrossCorrSpec, tau: int, J: JacobiEvaluation | CycInt | int) -> CycInt:
    """A*B*(J + 2) - 1 for tau >= 1 and -1 at tau = 0 (product form)."""
    _check_tau(spec, tau)
    if tau == 0:
        return CycInt.from_int(-1, spec.M)
    ea, eb = factor_exponents(spec, [tau])
    return _value(spec.M, int(ea[0]), int(eb[0]), _as_value(J, spec.M), "product")


def exact_closed_form_correlation(spec: CrossCorrSpec, tau: int, J: JacobiEvaluation | CycInt | int) -> CycInt:
    """A*B*J + A + B - 1 for tau >= 1 and 0 at tau = 0 (exact form)."""
    _check_tau(spec, tau)
    if tau == 0:
        return CycInt.from_int(0, spec.M)
    ea, eb = factor_exponents(spec, [tau])
    return _value(spec.M, int(ea[0]), int(eb[0]), _as_value(J, spec.M), "exact")


def tau_zero_value(spec: CrossCorrSpec, form: Form) -> CycInt:
    return CycInt.from_int(-1 if form == "product" else 0, spec.M)


# -- Jacobi selection --------------------------------------------------------


def cross_jacobi(spec: CrossCorrSpec) -> JacobiEvaluation:
    """J(chi^c1, chi^-c2): pure formula when available, brute force otherwise.

    c1 - c2 != 0 (mod M) for every valid spec, so this is never a conjugate pair.
    """
    return jacobi_sum(spec.field, spec.M, spec.c1, -spec.c2 % spec.M)


def product_form_jacobi(spec: CrossCorrSpec) -> JacobiEvaluation:
    """Jacobi value used by the product form: -1 when c1 + c2 = 0 (mod M)."""
    if (spec.c1 + spec.c2) % spec.M == 0:
        F = spec.field
        return JacobiEvaluation(
            CycInt.from_int(-1, spec.M), "conjugate_identity", F.p, F.m, spec.M, spec.c1, -spec.c2 % spec.M
        )
    return cross_jacobi(spec)


def _jacobi_for(spec: CrossCorrSpec, form: Form) -> JacobiEvaluation:
    return product_form_jacobi(spec) if form == "product" else cross_jacobi(spec)


def _merge(groups: dict, M: int, J: CycInt, form: Form) -> tuple[DistributionEntry, ...]:
    by_value: dict[CycInt, list] = {}
    for key in sorted(groups):
        n = groups[key]
        if not n:
            continue
        if form == "product":
            value = root_of_unity(M, key) * (J + 2) - 1
        else:
            value = _value(M, key[0], key[1], J, "exact")
        slot = by_value.setdefault(value, [0, key])
        slot[0] += n
    return tuple(DistributionEntry(v, n, key) for v, (n, key) in by_value.items())


# -- distributions ----------------------------------------------------------


def distribution_per_tau(spec: CrossCorrSpec, form: Form = "exact") -> CorrelationDistribution:
    """Closed form evaluated at every tau in [1, q-2], then aggregated."""
    J = _jacobi_for(spec, form)
    M = spec.M
    ea, eb = factor_exponents(spec, np.arange(1, spec.q - 1))
    groups: dict = {}
    if form == "product":
        for r, n in enumerate(np.bincount((ea + eb) % M, minlength=M).tolist()):
            groups[r] = n
    else:
        joint = np.bincount(ea * M + eb, minlength=M * M).reshape(M, M)
        for (i, j), n in np.ndenumerate(joint):
            groups[(i, j)] = int(n)
    return CorrelationDistribution(
        spec.q, M, spec.c1, spec.c2, _merge(groups, M, J.value, form),
        tau_zero_value(spec, form), "per_tau_closed_form", form, J,
    )


def default_cyclotomic_table(field: FieldTable, M: int) -> CyclotomicTable:
    """Closed-form table when the semiprimitive case applies, brute force otherwise."""
    try:
        return cyclotomic_numbers_pure(field.p, field.m, M)
    except (NotSemiprimitive, DegreeNotCompatible):
        return cyclotomic_numbers(field, M)


def distribution_by_counting(
    spec: CrossCorrSpec,
    form: Form = "exact",
    table: CyclotomicTable | None = None,
) -> CorrelationDistribution:
    """Distribution assembled from cyclotomic numbers, without touching individual tau.

    S_{u,v} (the y with exponent pair (u, v)) has a cardinality given by one
    cyclotomic number: (u+v, v)_M in the product form, ((q-1)/2 - u, v)_M in
    the exact form.
    """
    if table is None:
        table = default_cyclotomic_table(spec.field, spec.M)
    J = _jacobi_for(spec, form)
    M, c1, c2 = spec.M, spec.c1, spec.c2
    groups: dict = {}
    for u in range(M):
        for v in range(M):
            if form == "product":
                key = (c1 * u + c2 * v) % M
                n = table[(u + v) % M, v]
            else:
                key = (c1 * u % M, c2 * v % M)
                n = table[s_uv_class_pair(spec.q, M, u, v)]
            groups[key] = groups.get(key, 0) + n
    return CorrelationDistribution(
        spec.q, M, c1, c2, _merge(groups, M, J.value, form),
        tau_zero_value(spec, form), "cyclotomic_count", form, J,
    )


def distribution_brute(spec: CrossCorrSpec) -> CorrelationDistribution:
    """Multiset of directly summed C(tau), tau in [1, q-2]."""
    s = sidelnikov(spec.field, spec.M)
    vec = full_correlation(constant_multiple(s, spec.c1), constant_multiple(s, spec.c2))
    counts = Counter(vec.values[1:])
    entries = tuple(
        DistributionEntry(v, n) for v, n in sorted(counts.items(), key=lambda kv: kv[0].sort_key())
    )
    return CorrelationDistribution(spec.q, spec.M, spec.c1, spec.c2, entries, vec[0], "brute")


def pure_case_correlation(spec: CrossCorrSpec, tau: int) -> CycInt:
    """Product form with the Jacobi value fixed by the case analysis.

    c1 + c2 = 0 (mod M): A*B - 1. Otherwise, semiprimitive case only:
    A*B*((-1)^eps p^(m/2) + 2) - 1, eps from the pure Jacobi sign formula at
    (a, b) = (c1, c2); when m = 0 (mod 4) and t is odd this is -p^(m/2).
    """
    _check_tau(spec, tau)
    if tau == 0:
        return CycInt.from_int(-1, spec.M)
    F, M = spec.field, spec.M
    if (spec.c1 + spec.c2) % M == 0:
        J = CycInt.from_int(-1, M)
    else:
        t, _ = pure_parameters(F.p, F.m, M)
        if F.m % 4 == 0 and t % 2 == 1:
            J = CycInt.from_int(-(F.p ** (F.m // 2)), M)
        else:
            J = pure_jacobi(F.p, F.m, M, spec.c1, spec.c2).value
    return closed_form_correlation(spec, tau, J)


def closed_form_values(spec: CrossCorrSpec, form: Form = "exact", J: JacobiEvaluation | CycInt | None = None) -> list[CycInt]:
    """Closed-form C(tau) for every tau in [0, q-2], one CycInt per tau."""
    Jv = _as_value(J if J is not None else _jacobi_for(spec, form), spec.M)
    ea, eb = factor_exponents(spec, np.arange(1, spec.q - 1))
    cache: dict[tuple[int, int], CycInt] = {}
    out = [tau_zero_value(spec, form)]
    for key in zip(ea.tolist(), eb.tolist()):
        if key not in cache:
            cache[key] = _value(spec.M, key[0], key[1], Jv, form)
        out.append(cache[key])
    return out


@dataclass(frozen=True)
class InstanceCheck:
    """Outcome of comparing the closed forms with direct summation on one spec."""

    q: int
    M: int
    c1: int
    c2: int
    form: Form
    pointwise: bool  # closed form equals direct summation at every tau in [0, q-2]
    per_tau: bool  # per-tau distribution equals the direct-summation multiset
    counting: bool  # counting distribution equals the direct-summation multiset
    first_bad_tau: int | None

    @property
    def passed(self) -> bool:
        return self.pointwise and self.per_tau and self.counting

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        detail = "" if self.passed else (
            f" pointwise={self.pointwise} per_tau={self.per_tau} counting={self.counting}"
            f" first_bad_tau={self.first_bad_tau}"
        )
        return f"{status} q={self.q} M={self.M} c1={self.c1} c2={self.c2} form={self.form}{detail}"


def verify_instance(spec: CrossCorrSpec, form: Form = "exact", hist: np.ndarray | None = None) -> InstanceCheck:
    """Compare both closed-form paths with direct summation on one spec.

    ``hist`` is an optional :func:`lag_histogram` of the base sequence, shared
    across multiplier pairs of the same (field, M).
    """
    if hist is None:
        s = sidelnikov(spec.field, spec.M)
        brute = full_correlation(constant_multiple(s, spec.c1), constant_multiple(s, spec.c2)).values
    else:
        brute = multiple_correlation(hist, spec.M, spec.c1, spec.c2).values
    closed = closed_form_values(spec, form)
    bad = next((tau for tau, (x, y) in enumerate(zip(brute, closed)) if x != y), None)
    reference = Counter(brute[1:])
    per_tau = distribution_per_tau(spec, form).as_counter() == reference
    counting = distribution_by_counting(spec, form).as_counter() == reference
    return InstanceCheck(spec.q, spec.M, spec.c1, spec.c2, form, bad is None, per_tau, counting, bad)


def valid_pairs(M: int) -> list[tuple[int, int]]:
    return [(c1, c2) for c1 in range(1, M) for c2 in range(1, M) if c1 != c2]


def sweep_specs(max_q: int, max_M: int = 12, min_q: int = 3) -> list[tuple[FieldTable, int]]:
    """(field, M) for every odd prime power q in [min_q, max_q] and M | q-1, 2 <= M <= max_M."""
    out = []
    for q in odd_prime_powers(max_q):
        if q < min_q:
            continue
        F = build_field(*prime_power(q))
        out.extend((F, M) for M in range(2, min(max_M, q - 1) + 1) if (q - 1) % M == 0)
    return out


def check_family(field: FieldTable, M: int, form: Form = "exact") -> list[InstanceCheck]:
    """verify_instance for every valid multiplier pair, sharing one lag histogram."""
    hist = lag_histogram(sidelnikov(field, M))
    return [verify_instance(CrossCorrSpec(field, M, c1, c2), form, hist) for c1, c2 in valid_pairs(M)]


# -- family report ------------------------------------------------------------


@dataclass(frozen=True)
class FamilyReport:
    q: int
    M: int
    field_json: dict
    welch: float
    upper: float
    c_max: float
    c_max_cross: float
    c_max_auto: float
    balanced: dict[int, bool]
    shift_inequivalent: bool
    distributions: tuple[CorrelationDistribution, ...]

    @property
    def bounds_hold(self) -> bool:
        return self.welch <= self.c_max + 1e-9 and self.c_max_cross <= self.upper + 1e-9

    def to_json(self) -> dict:
        return {
            "field": self.field_json,
            "q": self.q,
            "M": self.M,
            "family_size": self.M - 1,
            "welch_bound": round(self.welch, 6),
            "upper_bound": round(self.upper, 6),
            "c_max": round(self.c_max, 6),
            "c_max_cross": round(self.c_max_cross, 6),
            "c_max_auto": round(self.c_max_auto, 6),
            "bounds_hold": self.bounds_hold,
            "balanced": {str(c): b for c, b in self.balanced.items()},
            "shift_inequivalent": self.shift_inequivalent,
            "distributions": [d.to_json() for d in self.distributions],
        }


def family_report(field: FieldTable, M: int) -> FamilyReport:
    """Correlation summary of {c*s : 1 <= c <= M-1} by direct summation."""
    s = sidelnikov(field, M)
    members = {c: constant_multiple(s, c) for c in range(1, M)}
    c_auto = max(
        (float(autocorrelation(seq).magnitudes()[1:].max()) for seq in members.values()),
        default=0.0,
    )
    c_cross = 0.0
    dists = []
    for c1, c2 in valid_pairs(M):
        dist = distribution_brute(CrossCorrSpec(field, M, c1, c2))
        dists.append(dist)
        c_cross = max(c_cross, abs(dist.tau_zero_value), *(abs(e.value) for e in dist.entries))
    inequivalent = all(
        shift_equivalent(members[a], members[b]) is None
        for a in members
        for b in members
        if a < b
    )
    return FamilyReport(
        q=field.q,
        M=M,
        field_json=field.to_json(),
        welch=welch_bound(M - 1, field.q - 1),
        upper=sidelnikov_upper_bound(field.q),
        c_max=max(c_auto, c_cross),
        c_max_cross=c_cross,
        c_max_auto=c_auto,
        balanced={c: is_balanced(seq) for c, seq in members.items()},
        shift_inequivalent=inequivalent,
        distributions=tuple(dists),
    )


__all__ = [
    "CorrelationDistribution",
    "CrossCorrSpec",
    "DistributionEntry",
    "ExponentPair",
    "FamilyReport",
    "InstanceCheck",
    "closed_form_correlation",
    "check_family",
    "closed_form_values",
    "cross_jacobi",
    "default_cyclotomic_table",
    "distribution_brute",
    "distribution_by_counting",
    "distribution_per_tau",
    "exact_closed_form_correlation",
    "exponent_pair",
    "factor_exponents",
    "family_report",
    "product_form_jacobi",
    "pure_case_correlation",
    "semiprimitivity",
    "sweep_specs",
    "tau_zero_value",
    "valid_pairs",
    "verify_instance",
]
