import math

import pytest
from hypothesis import given, settings, strategies as st

from cmcompanion.classgroup import class_group
from cmcompanion.congruence import detect_cm
from cmcompanion.heckechar import finite_type_from_values, hecke_char_new, trivial_finite_type
from cmcompanion.qexpansion import hecke_consistency, synthesize, theta_power
from cmcompanion.quadfield import QuadField, kronecker, splitting_type
from cmcompanion.residue import residue_system
from golden import COMPANIONS, F, as_list
from oracles import coefficients_sqrt_m5, fundamental_discriminants


def test_golden_f(f25):
    assert list(f25.coeffs) == as_list(F)
    assert f25.weight == 3 and f25.level == 8


@pytest.mark.parametrize("M", sorted(COMPANIONS))
def test_golden_companions(K8, M):
    k, table = COMPANIONS[M]
    h = synthesize(hecke_char_new(K8, trivial_finite_type(K8), k - 1, class_group(K8)), 25)
    assert list(h.coeffs) == as_list(table)


@pytest.mark.parametrize("sign,d", [(1, 0), (-1, 1)])
def test_class_number_two_against_oracle(K20, sign, d):
    psi = hecke_char_new(K20, trivial_finite_type(K20), 2, class_group(K20), [d])
    assert list(synthesize(psi, 150).coeffs) == coefficients_sqrt_m5(2, sign, 150)


def _forms():
    out = []
    for D, u in [(-8, 2), (-8, 18), (-7, 2), (-20, 2), (-56, 4), (-4, 4), (-3, 6), (-11, 4)]:
        K = QuadField.from_disc(D)
        cg = class_group(K)
        out.append(hecke_char_new(K, trivial_finite_type(K), u, cg, [0] * len(cg.reps)))
    return out


@pytest.mark.parametrize("psi", _forms(), ids=lambda p: f"D{p.K.D}_u{p.u}")
def test_hecke_consistency(psi):
    F = synthesize(psi, 400)
    rep = hecke_consistency(F)
    assert rep.ok, rep.first_violation
    assert detect_cm(F, psi.K.D).is_cm


def test_hecke_consistency_with_finite_type():
    K = QuadField.from_disc(-20)
    P7 = splitting_type(K, 7).prime
    ft = finite_type_from_values(K, P7, [(K(3), 1)], order=3)
    psi = hecke_char_new(K, ft, 2, class_group(K, P7, coprime_to=29), [0])
    S = residue_system(K, 29, root_order=3, class_exponent=2)
    F = synthesize(psi, 300, S)
    assert F.level == 140 and not F.is_exact()
    assert hecke_consistency(F).ok


def test_residue_synthesis_matches_exact(K20):
    psi = hecke_char_new(K20, trivial_finite_type(K20), 2, class_group(K20), [1])
    S = residue_system(K20, 21, class_exponent=2)
    exact = synthesize(psi, 120)
    res = synthesize(psi, 120, S)
    for n in range(1, 121):
        if n % 3 and n % 7:
            assert res[n] == S.lift(exact[n])


def test_hecke_consistency_detects_tampering(f25):
    bad = f25.replace_coeff(6, 5)
    assert not hecke_consistency(bad).ok


def test_theta_power(f25):
    g = theta_power(f25, 2)
    assert g.weight == 7
    assert all(g[n] == n ** 2 * f25[n] for n in range(1, 26))
    with pytest.raises(ValueError):
        theta_power(f25, -1)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([D for D in fundamental_discriminants(-120, -3) if D not in (-3, -4)]),
       st.integers(1, 4))
def test_inert_vanishing(D, half):
    K = QuadField.from_disc(D)
    cg = class_group(K)
    u = 2 * half
    psi = hecke_char_new(K, trivial_finite_type(K), u, cg, [0] * len(cg.reps))
    S = None
    if not psi.is_exact():
        M = next(p for p in range(3, 400, 2) if kronecker(D, p) == 1 and cg.h % p and all(p % q for q in range(3, p, 2)))
        # anchors must be units mod M, so pick representatives prime to M
        cg = class_group(K, coprime_to=M)
        psi = hecke_char_new(K, trivial_finite_type(K), u, cg, [0] * len(cg.reps))
        S = residue_system(K, M, class_exponent=math.lcm(*cg.orders))
    F = synthesize(psi, 60, S)
    for q in range(2, 61):
        if kronecker(D, q) == -1 and all(q % r for r in range(2, q)):
            a = F[q]
            assert (a.is_zero() if S else a == 0)


def test_bounds():
    K = QuadField.from_disc(-8)
    psi = hecke_char_new(K, trivial_finite_type(K), 2, class_group(K))
    F = synthesize(psi, 10)
    with pytest.raises(IndexError):
        F[11]
    with pytest.raises(ValueError):
        synthesize(psi, 0)
