"""Multiplicative characters, Gauss and Jacobi sums over GF(q).

Every character here is a power of the one character fixed by the field's
primitive element, chi_M(alpha^i) = w_M^i. Brute-force sums are exact: the
exponents are binned and the bin counts reduced to a :class:`CycInt`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .cycint import CycInt, root_of_unity
from .errors import (
    ConjugatePair,
    DegreeNotCompatible,
    InvalidArgument,
    ModulusDoesNotDivide,
    NotCoprime,
    NotPrime,
    NotSemiprimitive,
    PreconditionUnmet,
    TrivialCharacter,
)
from .gf import FieldTable, is_prime

JacobiMethod = Literal["brute_force", "conjugate_identity", "pure_formula"]


@dataclass(frozen=True)
class CharacterSpec:
    """x -> w_M^(power * log x); ``zero_value`` is the image of 0 (1 for psi, 0 for chi)."""

    field: FieldTable
    M: int
    power: int = 1
    zero_value: int = 0

    def __post_init__(self):
        if self.M < 1 or (self.field.q - 1) % self.M:
            raise ModulusDoesNotDivide(f"M={self.M} does not divide q-1={self.field.q - 1}")
        if self.zero_value not in (0, 1):
            raise InvalidArgument("zero_value must be 0 (chi convention) or 1 (psi convention)")

    @property
    def order(self) -> int:
        return self.M // math.gcd(self.M, self.power)

    @property
    def is_trivial(self) -> bool:
        return self.power % self.M == 0


@dataclass(frozen=True)
class JacobiEvaluation:
    value: CycInt
    method: JacobiMethod
    p: int
    m: int
    k: int
    a: int
    b: int

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "k": self.k,
            "a": self.a,
            "b": self.b,
            "method": self.method,
            "value": self.value.to_json(),
        }


@dataclass(frozen=True)
class SemiprimitivityCertificate:
    p: int
    k: int
    t: int | None  # least t > 0 with p^t = -1 (mod k)
    s: int | None = None  # m / (2t) when a compatible degree m was supplied

    @property
    def present(self) -> bool:
        return self.t is not None


def psi(spec: CharacterSpec, x: int) -> CycInt:
    F = spec.field
    if x == 0:
        return CycInt.from_int(spec.zero_value, spec.M)
    return root_of_unity(spec.M, spec.power * F.log(x))


def gauss_sum(spec: CharacterSpec) -> CycInt:
    """sum_x chi(x) * w_p^Tr(x), exactly, at level lcm(M, p).

    The x = 0 term follows ``spec.zero_value``; for the trivial character the
    literal sum is -1 under chi(0) = 0 and 0 under chi(0) = 1 (compare
    :func:`trivial_gauss_value`).
    """
    F = spec.field
    L = math.lcm(spec.M, F.p)
    xs = F.nonzero()
    e = (spec.power * F.log_table[xs] * (L // spec.M) + F.trace_table[xs] * (L // F.p)) % L
    counts = np.bincount(e, minlength=L)
    counts[0] += spec.zero_value
    return CycInt.from_exponent_counts(L, counts)


def trivial_gauss_value(field: FieldTable) -> int:
    """Tabulated Gauss-sum value q - 1 for the trivial character.

    This is the character-sum count over F_q^*, not the literal additive
    twisted sum returned by :func:`gauss_sum`.
    """
    return field.q - 1


def _check_nontrivial(M: int, *powers: int) -> None:
    for a in powers:
        if a % M == 0:
            raise TrivialCharacter(f"chi^{a} is trivial for M={M}")


def jacobi_sum_brute(field: FieldTable, M: int, a: int, b: int) -> JacobiEvaluation:
    """J(chi^a, chi^b) = sum_x chi^a(x) chi^b(1 - x), chi(0) = 0."""
    if M < 1 or (field.q - 1) % M:
        raise ModulusDoesNotDivide(f"M={M} does not divide q-1={field.q - 1}")
    _check_nontrivial(M, a, b)
    xs = np.arange(2, field.q)  # 0 and 1 contribute nothing
    e = (a * field.log_table[xs] + b * field.log_table[field.sub(1, xs)]) % M
    value = CycInt.from_exponent_counts(M, np.bincount(e, minlength=M))
    return JacobiEvaluation(value, "brute_force", field.p, field.m, M, a, b)


def jacobi_conjugate(field: FieldTable, M: int, a: int) -> JacobiEvaluation:
    """J(chi^a, chi^-a) = -chi^a(-1)."""
    _check_nontrivial(M, a)
    value = -root_of_unity(M, a * ((field.q - 1) // 2))
    return JacobiEvaluation(value, "conjugate_identity", field.p, field.m, M, a, -a % M)


def jacobi_sum(field: FieldTable, M: int, a: int, b: int) -> JacobiEvaluation:
    """J(chi^a, chi^b) by the cheapest applicable route.

    Order: conjugate identity, pure closed form (semiprimitive case), brute force.
    """
    _check_nontrivial(M, a, b)
    if (a + b) % M == 0:
        return jacobi_conjugate(field, M, a)
    try:
        return pure_jacobi(field.p, field.m, M, a, b)
    except (NotSemiprimitive, DegreeNotCompatible):
        return jacobi_sum_brute(field, M, a, b)


def gauss_jacobi_identity_check(field: FieldTable, M: int, a: int, b: int) -> bool:
    """J(chi^a, chi^b) * G(chi^(a+b)) == G(chi^a) * G(chi^b), exactly."""
    _check_nontrivial(M, a, b, a + b)
    L = math.lcm(M, field.p)
    J = jacobi_sum_brute(field, M, a, b).value.lift(L)

    def G(c: int) -> CycInt:
        return gauss_sum(CharacterSpec(field, M, c))

    return J * G(a + b) == G(a) * G(b)


def multiplicative_order(p: int, k: int) -> int:
    if math.gcd(p, k) != 1:
        raise NotCoprime(f"gcd({p}, {k}) != 1")
    if k == 1:
        return 1
    x, n = p % k, 1
    while x != 1:
        x = x * p % k
        n += 1
    return n


def semiprimitivity(p: int, k: int, m: int | None = None) -> SemiprimitivityCertificate:
    """Least t with p^t = -1 (mod k), searched up to ord_k(p)."""
    if k < 1:
        raise InvalidArgument(f"k must be positive, got {k}")
    order = multiplicative_order(p, k)
    target = -1 % k
    t = next((t for t in range(1, order + 1) if pow(p, t, k) == target), None)
    s = None
    if t is not None and m is not None and m % (2 * t) == 0:
        s = m // (2 * t)
    return SemiprimitivityCertificate(p, k, t, s)


def _check_prime(p: int) -> None:
    if not is_prime(p) or p == 2:
        raise NotPrime(f"{p} is not an odd prime")


def pure_parameters(p: int, m: int, k: int) -> tuple[int, int]:
    """(t, s) for the semiprimitive case: p^t = -1 (mod k), m = 2ts."""
    if m < 1 or (p**m - 1) % k:
        raise ModulusDoesNotDivide(f"k={k} does not divide {p}^{m} - 1")
    cert = semiprimitivity(p, k)
    if cert.t is None:
        raise NotSemiprimitive(f"no t with {p}^t = -1 (mod {k})")
    if m % (2 * cert.t):
        raise DegreeNotCompatible(f"2t = {2 * cert.t} does not divide m = {m}")
    return cert.t, m // (2 * cert.t)


def pure_gauss(p: int, m: int, k: int) -> CycInt:
    """Gauss sum of any order-k character in the semiprimitive case.

    Returns (-1)^(s - 1 + (p^t + 1) s / k) * p^(m/2) at level lcm(k, p).
    """
    _check_prime(p)
    t, s = pure_parameters(p, m, k)
    sign = (-1) ** (s - 1 + (p**t + 1) * s // k)
    return CycInt.from_int(sign * p ** (m // 2), math.lcm(k, p))


def pure_jacobi(p: int, m: int, k: int, a: int, b: int) -> JacobiEvaluation:
    """J(chi^a, chi^b) for chi of order k when p^x = -1 (mod k) is solvable."""
    _check_prime(p)
    _check_nontrivial(k, a, b)
    if (a + b) % k == 0:
        raise ConjugatePair(f"a + b = {a + b} = 0 (mod {k}); J = -chi^a(-1)")
    t, _ = pure_parameters(p, m, k)
    exponent = 1
    weighted = 0
    for c in (a, b, a + b):
        g = math.gcd(k, c % k)
        t_c = semiprimitivity(p, k // g).t
        if t_c is None or t % t_c:
            raise AssertionError(f"t_c={t_c} does not divide t={t}")
        if m % (2 * t_c):
            raise DegreeNotCompatible(f"2*t_c = {2 * t_c} does not divide m = {m}")
        s_c = m // (2 * t_c)
        exponent += s_c
        weighted += (p**t_c + 1) * s_c * g
    if weighted % k:
        raise AssertionError("sign exponent is not integral")
    exponent += weighted // k
    value = CycInt.from_int((-1) ** exponent * p ** (m // 2), k)
    return JacobiEvaluation(value, "pure_formula", p, m, k, a, b)


def pure_jacobi_simple(p: int, m: int, k: int, a: int, b: int) -> JacobiEvaluation:
    """-p^(m/2) when m = 0 (mod 4) and the least t is odd."""
    _check_prime(p)
    _check_nontrivial(k, a, b)
    if m % 4:
        raise PreconditionUnmet(f"m = {m} is not divisible by 4")
    if (a + b) % k == 0:
        raise PreconditionUnmet(f"a + b = 0 (mod {k}) is a conjugate pair")
    t = semiprimitivity(p, k).t
    if t is None or t % 2 == 0:
        raise PreconditionUnmet(f"least t is {t}, need an odd value")
    pure_parameters(p, m, k)
    value = CycInt.from_int(-(p ** (m // 2)), k)
    return JacobiEvaluation(value, "pure_formula", p, m, k, a, b)
