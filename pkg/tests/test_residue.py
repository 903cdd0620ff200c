import pytest
from hypothesis import given, settings, strategies as st

from cmcompanion.quadfield import QuadField
from cmcompanion.residue import galois_ring_new, lift_root_of_unity, residue_system


@pytest.mark.parametrize("p,t,n0", [(3, 2, 2), (3, 3, 8), (5, 2, 12), (13, 1, 36), (7, 2, 9), (11, 3, 10)])
def test_zeta_has_exact_order(p, t, n0):
    R = galois_ring_new(p, t, n0)
    z = R.zeta
    assert z ** n0 == R.one
    for ell in {q for q in range(2, n0 + 1) if n0 % q == 0 and all(q % r for r in range(2, q))}:
        assert z ** (n0 // ell) != R.one
    assert (p ** R.degree - 1) % n0 == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 2, 8), (5, 1, 12), (7, 2, 9)]),
       st.lists(st.integers(0, 400), min_size=3, max_size=3))
def test_ring_axioms(params, seeds):
    R = galois_ring_new(*params)
    f = R.degree
    a, b, c = (R([(s * (i + 3)) % R.pt for i in range(f)]) for s in seeds)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == R.zero
    if a.is_unit():
        assert a * a.inverse() == R.one


@pytest.mark.parametrize("c", [1, 2, 3, 4, 6])
def test_lift_root_of_unity(c):
    R = galois_ring_new(5, 3, 12)
    for d in range(c):
        assert lift_root_of_unity(R, c, R.root_of_unity(c, d)) == d


def test_lift_root_of_unity_rejects_non_roots():
    R = galois_ring_new(5, 2, 4)
    with pytest.raises(ValueError):
        lift_root_of_unity(R, 4, R(6))


def test_canonical_root():
    R = galois_ring_new(13, 2, 36)
    for x in range(1, 40):
        r = R(x)
        if not r.is_unit():
            continue
        for c in (2, 3):
            try:
                y = R.canonical_root(r ** c, c)
            except ValueError:
                continue
            assert y ** c == r ** c


def test_units_aligned():
    # the image of i in Z[i]/(2+i)^t is zeta**(n0/4)
    K = QuadField.from_disc(-4)
    S = residue_system(K, 25)
    assert S.lift(K(0, 1)) == S.root_of_unity(4)
    K = QuadField.from_disc(-3)
    S = residue_system(K, 49)
    assert S.lift(K.unit_generator) == S.root_of_unity(6)


def test_residue_system_requires_split():
    with pytest.raises(ValueError):
        residue_system(QuadField.from_disc(-8), 25)


def test_residue_system_is_ring_map():
    K = QuadField.from_disc(-20)
    S = residue_system(K, 63)
    for a, b in [(K(3, 1), K(-2, 5)), (K(7, 7), K(1, 2))]:
        assert S.lift(a * b) == S.lift(a) * S.lift(b)
        assert S.lift(a + b) == S.lift(a) + S.lift(b)
    assert S.lift(63) == S.zero
