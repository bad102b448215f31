import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import conic_solvable_padic
from shimura_gate.arith import primes_in_range
from shimura_gate.curves import (
    REAL_PLACE,
    ConicModel,
    conic_for,
    has_k_point,
    hilbert_symbol,
    local_solvable_completion,
    local_solvable_Qp,
    obstruction_places,
    real_point,
    real_solvable,
    search_point,
    verify_point,
)
from shimura_gate.errors import InvalidInput, NoKnownModel
from shimura_gate.fields import parse_field_spec, power_basis_field

BIQUAD = parse_field_spec("biquad:-5,7")
CYCLO13 = parse_field_spec("cyclo:13")


def test_conic_models():
    assert conic_for(6).c == 3
    assert conic_for(10).c == 2
    assert conic_for(22).c == 11
    with pytest.raises(NoKnownModel):
        conic_for(15)
    with pytest.raises(InvalidInput):
        ConicModel(2, source_d=6)


def test_real_solvability():
    assert not real_solvable(3)
    assert not real_solvable(2)
    assert real_solvable(-1)
    assert real_point(-1) == (1, 0)


def test_local_solvability_examples():
    assert not local_solvable_Qp(3, 3)
    assert local_solvable_Qp(2, 5)
    assert local_solvable_Qp(11, 2) == conic_solvable_padic(11, 2)


def test_local_solvability_matches_hensel_search():
    for c in range(1, 21):
        for p in primes_in_range(2, 50):
            assert local_solvable_Qp(c, p) == conic_solvable_padic(c, p), (c, p)


@settings(max_examples=200, deadline=None)
@given(st.integers(-50, 50).filter(bool), st.integers(-50, 50).filter(bool), st.sampled_from(primes_in_range(2, 40)))
def test_hilbert_symbol_is_symmetric_and_bimultiplicative(a, b, p):
    assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
    assert hilbert_symbol(a, b * b, p) == 1
    assert hilbert_symbol(a, 7 * b, p) == hilbert_symbol(a, 7, p) * hilbert_symbol(a, b, p)


def test_hilbert_product_formula():
    # product over all places is 1; the real symbol is -1 iff both are negative
    for a in range(-12, 13):
        for b in range(-12, 13):
            if a == 0 or b == 0:
                continue
            prod = -1 if a < 0 and b < 0 else 1
            for p in primes_in_range(2, 30):
                prod *= hilbert_symbol(a, b, p)
            assert prod == 1, (a, b)


def test_completion_examples():
    assert not local_solvable_completion(3, BIQUAD, 3)
    assert not local_solvable_completion(3, CYCLO13, 3)
    assert local_solvable_completion(2, BIQUAD, 7)
    assert CYCLO13.local_degree(3) == 3


def test_three_is_obstructed_over_both_fields():
    for k in (BIQUAD, CYCLO13):
        r = has_k_point(3, k)
        assert r.kind == "local_obstruction" and r.place == "3"


def test_point_over_biquadratic_field():
    r = has_k_point(2, BIQUAD, 10)
    assert r.kind == "point"
    assert r.point == ("2+sqrt(-5)", "2-sqrt(-5)")
    assert r.infinitely_many
    K = power_basis_field(BIQUAD)
    x, y = r.elements
    assert verify_point(K, 2, x, y)
    # the stated witness re-substitutes to -2
    x = K.from_display([2, 1, 0, 0])
    y = K.from_display([2, -1, 0, 0])
    assert K.add(K.mul(x, x), K.mul(y, y)) == K.element([-2])


def test_search_over_rational_field_is_unknown():
    r = search_point(2, parse_field_spec("rational"), 100)
    assert r.kind == "unknown" and r.bound == 100


def test_real_place_reported_first():
    r = has_k_point(2, parse_field_spec("quad:7"))
    assert r.kind == "local_obstruction" and r.place == REAL_PLACE


@pytest.mark.parametrize("c", [2, 3, 11])
@pytest.mark.parametrize("spec", ["rational", "quad:7", "quad:2", "quad:5", "quad:13", "biquad:2,3", "abelian:f=13;H=-1,3", "abelian:f=13;H=-1", "abelian:f=7;H=-1"])
def test_real_fields_have_real_obstruction(c, spec):
    k = parse_field_spec(spec)
    assert k.is_real
    r = has_k_point(c, k)
    assert r.kind == "local_obstruction" and r.place == REAL_PLACE


@pytest.mark.parametrize("spec", ["quad:-1", "quad:-2", "quad:-5", "quad:-7", "cyclo:8", "cyclo:5", "biquad:-5,7", "quad:-11"])
@pytest.mark.parametrize("c", [1, 2, 3, 5, 6, 11])
def test_points_always_verify_and_never_contradict_obstructions(spec, c):
    k = parse_field_spec(spec)
    r = has_k_point(c, k, 4)
    if r.kind == "point":
        K = power_basis_field(k)
        assert verify_point(K, c, *r.elements)
        assert obstruction_places(c, k) == []
    elif r.kind == "local_obstruction":
        assert r.place == obstruction_places(c, k)[0]


def test_has_k_point_is_deterministic():
    runs = {str(has_k_point(c, k, 5).to_json()) for c in (2, 3) for k in (BIQUAD,) for _ in range(3)}
    assert len(runs) == 2


def test_high_degree_search_is_unknown():
    k = parse_field_spec("cyclo:7")
    # no completion of Q(zeta_7) obstructs x^2 + y^2 + 7, but degree 6 is beyond the search
    assert obstruction_places(7, k) == []
    r = has_k_point(7, k, 3)
    assert r.kind == "unknown" and r.bound == 0
    # 2 has odd local degree 3, so the 2-adic obstruction of x^2 + y^2 + 1 survives
    assert has_k_point(1, k).place == "2"
