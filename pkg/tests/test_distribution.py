import json
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sidelcorr.charsums import jacobi_sum_brute
from sidelcorr.correlation import correlate, full_correlation
from sidelcorr.cycint import CycInt, root_of_unity
from sidelcorr.distribution import (
    CrossCorrSpec,
    closed_form_correlation,
    closed_form_values,
    cross_jacobi,
    distribution_brute,
    distribution_by_counting,
    distribution_per_tau,
    exact_closed_form_correlation,
    exponent_pair,
    factor_exponents,
    family_report,
    product_form_jacobi,
    pure_case_correlation,
    valid_pairs,
    verify_instance,
)
from sidelcorr.errors import BadMultiplier, BadTau, ModulusDoesNotDivide, NotSemiprimitive
from sidelcorr.cyclotomy import s_uv_cardinality, s_uv_counts
from sidelcorr.gf import build_field
from sidelcorr.sequences import constant_multiple, sidelnikov

I = root_of_unity(4, 1)
PRODUCT_12 = Counter({CycInt.from_int(-8, 4): 15, -7 * I - 1: 20, CycInt.from_int(6, 4): 24, 7 * I - 1: 20})
PRODUCT_13 = Counter({CycInt.from_int(0, 4): 15, I - 1: 20, CycInt.from_int(-2, 4): 24, -I - 1: 20})

SMALL = [(7, 1), (13, 1), (3, 2), (5, 2), (3, 3), (29, 1), (7, 2), (3, 4)]
FIELDS = {pm: build_field(*pm) for pm in SMALL}
SPECS = st.sampled_from(
    [(pm, M) for pm in SMALL for M in range(2, 13) if (FIELDS[pm].q - 1) % M == 0 and M >= 3]
).flatmap(
    lambda pmM: st.sampled_from(valid_pairs(pmM[1])).map(lambda c: CrossCorrSpec(FIELDS[pmM[0]], pmM[1], *c))
)


def test_exponent_pair_by_hand(gf7):
    # alpha = y = 3: (y-1)/y = 2/3 = 3 = alpha^1 and 1/(1-y) = 1/5 = 3 = alpha^1
    assert gf7.alpha == 3
    pair = exponent_pair(CrossCorrSpec(gf7, 6, 1, 2), 1)
    assert (pair.u, pair.v) == (1, 1)


def test_exponent_pair_product_identity(gf81):
    for c1, c2 in valid_pairs(4):
        spec = CrossCorrSpec(gf81, 4, c1, c2)
        ea, eb = factor_exponents(spec, np.arange(1, 80))
        for tau in range(1, 80):
            pr = exponent_pair(spec, tau)
            assert (ea[tau - 1] + eb[tau - 1]) % 4 == (c1 * pr.u + c2 * pr.v) % 4


def test_exponent_pair_on_class_zero(gf81):
    spec = CrossCorrSpec(gf81, 4, 1, 2)
    for tau in range(1, 80):
        y = gf81.exp(tau)
        if gf81.log(y) % 4 == 0 and gf81.log(gf81.sub(1, y)) % 4 == 0:
            pr = exponent_pair(spec, tau)
            assert (pr.u, pr.v) == (0, 0)


@settings(max_examples=60, deadline=None)
@given(SPECS)
def test_exact_form_equals_direct_sum(spec):
    s = sidelnikov(spec.field, spec.M)
    direct = full_correlation(constant_multiple(s, spec.c1), constant_multiple(s, spec.c2)).values
    assert closed_form_values(spec, "exact") == direct


@settings(max_examples=40, deadline=None)
@given(SPECS)
def test_three_distribution_paths_agree(spec):
    brute = distribution_brute(spec).as_counter()
    assert distribution_per_tau(spec).as_counter() == brute
    assert distribution_by_counting(spec).as_counter() == brute
    assert sum(brute.values()) == spec.q - 2


@settings(max_examples=40, deadline=None)
@given(SPECS)
def test_product_form_paths_agree_when_index_pair_holds(spec):
    # the counting path indexes S_{u,v} by (u+v, v); when that matches the
    # enumerated S-sets, both product-form paths must produce the same multiset
    a = distribution_per_tau(spec, "product")
    b = distribution_by_counting(spec, "product")
    assert a.total == b.total == spec.q - 2
    S = s_uv_counts(spec.field, spec.M)
    M = spec.M
    if all(S[u, v] == s_uv_cardinality(spec.field, M, u, v) for u in range(M) for v in range(M)):
        assert a.same_multiset(b)


@settings(max_examples=40, deadline=None)
@given(SPECS)
def test_product_form_modulus_identity(spec):
    # |C + 1| = |J + 2| for the product form: A*B is a root of unity
    J = product_form_jacobi(spec).value
    for tau in range(1, spec.q - 1, max(1, spec.q // 17)):
        c = closed_form_correlation(spec, tau, J)
        assert (c + 1).norm_sq() == (J + 2).norm_sq()


def test_gf81_product_form_tables(gf81):
    assert distribution_per_tau(CrossCorrSpec(gf81, 4, 1, 2), "product").as_counter() == PRODUCT_12
    assert distribution_per_tau(CrossCorrSpec(gf81, 4, 1, 3), "product").as_counter() == PRODUCT_13
    assert distribution_per_tau(CrossCorrSpec(gf81, 4, 2, 3), "product").as_counter() == PRODUCT_12
    counted = distribution_by_counting(CrossCorrSpec(gf81, 4, 1, 2), "product")
    assert [(e.residue, e.count) for e in counted.entries] == [(0, 15), (1, 20), (2, 24), (3, 20)]


def test_gf81_direct_sums_differ_from_product_form(gf81):
    brute = distribution_brute(CrossCorrSpec(gf81, 4, 1, 2))
    assert brute.as_counter() != PRODUCT_12
    assert brute.tau_zero_value == 0
    assert brute.as_counter() == Counter(
        {-8 * I: 10, CycInt.from_int(-8, 4): 7, 8 * I: 10, -2 - 10 * I: 10,
         CycInt.from_int(8, 4): 24, -2 + 10 * I: 10, CycInt.from_int(-12, 4): 8}
    )


def test_forms_coincide_where_units_are_one(gf81):
    spec = CrossCorrSpec(gf81, 4, 1, 2)
    J = cross_jacobi(spec)
    ea, eb = factor_exponents(spec, np.arange(1, 80))
    for tau in range(1, 80):
        if ea[tau - 1] == 0 and eb[tau - 1] == 0:
            assert closed_form_correlation(spec, tau, J) == exact_closed_form_correlation(spec, tau, J)


def test_values_depend_only_on_residue(gf81):
    spec = CrossCorrSpec(gf81, 4, 1, 2)
    J = product_form_jacobi(spec)
    groups = {}
    for tau in range(1, 80):
        pr = exponent_pair(spec, tau)
        r = (spec.c1 * pr.u + spec.c2 * pr.v) % 4
        groups.setdefault(r, set()).add(closed_form_correlation(spec, tau, J))
    assert all(len(v) == 1 for v in groups.values())


def test_tau_zero(gf81):
    spec = CrossCorrSpec(gf81, 4, 1, 2)
    assert closed_form_correlation(spec, 0, -9) == -1
    assert exact_closed_form_correlation(spec, 0, -9) == 0
    s = sidelnikov(gf81, 4)
    assert correlate(s, constant_multiple(s, 2), 0) == 0


def test_jacobi_selection(gf81):
    assert cross_jacobi(CrossCorrSpec(gf81, 4, 1, 2)).value == -9
    conj = product_form_jacobi(CrossCorrSpec(gf81, 4, 1, 3))
    assert conj.value == -1 and conj.method == "conjugate_identity"
    # the character pair actually summed for (1, 3) is (chi, chi^-3) = (chi, chi)
    assert cross_jacobi(CrossCorrSpec(gf81, 4, 1, 3)).value == jacobi_sum_brute(gf81, 4, 1, 1).value


def test_pure_case_branches(gf81):
    conj = CrossCorrSpec(gf81, 4, 1, 3)
    gen = CrossCorrSpec(gf81, 4, 1, 2)
    for tau in range(80):
        assert pure_case_correlation(conj, tau) == closed_form_correlation(conj, tau, -1)
        assert pure_case_correlation(gen, tau) == closed_form_correlation(gen, tau, -9)
    with pytest.raises(NotSemiprimitive):
        pure_case_correlation(CrossCorrSpec(build_field(13, 1), 6, 1, 2), 1)


def test_spec_validation(gf81, gf7):
    with pytest.raises(BadMultiplier):
        CrossCorrSpec(gf81, 4, 1, 5)
    with pytest.raises(BadMultiplier):
        CrossCorrSpec(gf81, 4, 0, 1)
    with pytest.raises(ModulusDoesNotDivide):
        CrossCorrSpec(gf7, 4, 1, 2)
    spec = CrossCorrSpec(gf81, 4, 1, 2)
    with pytest.raises(BadTau):
        closed_form_correlation(spec, 80, -9)
    with pytest.raises(BadTau):
        exponent_pair(spec, 0)


def test_distribution_json_and_csv(gf81):
    dist = distribution_by_counting(CrossCorrSpec(gf81, 4, 1, 2), "product")
    data = json.loads(json.dumps(dist.to_json()))
    assert {"c1", "c2", "tau0", "entries", "provenance"} <= set(data)
    assert data["provenance"] == "cyclotomic_count"
    assert data["tau0"]["coeffs"] == [-1, 0]
    assert [e["residue"] for e in data["entries"]] == [0, 1, 2, 3]
    assert dist.to_csv().splitlines()[1] == "0,15,-8.000000,0.000000,-8 0"


def test_verify_instance(gf81):
    ok = verify_instance(CrossCorrSpec(gf81, 4, 1, 2))
    assert ok.passed and ok.line().startswith("PASS")
    bad = verify_instance(CrossCorrSpec(gf81, 4, 1, 2), "product")
    assert not bad.passed and bad.first_bad_tau == 0


def test_family_report(gf81, gf7):
    rep = family_report(gf81, 4)
    assert rep.welch == pytest.approx(7.3182, abs=1e-4)
    assert rep.welch <= rep.c_max <= rep.upper + 1e-9
    assert rep.bounds_hold and rep.shift_inequivalent and rep.balanced[1]
    assert len(rep.distributions) == 6
    small = family_report(gf7, 2)
    assert small.distributions == () and small.c_max == small.c_max_auto
