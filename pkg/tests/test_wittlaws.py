import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from wittgrass.ring import field_for_q, galois_ring
from wittgrass.wittlaws import (DivisibilityError, WittVec, _Packing, _solve_next, derive_witt_laws,
                                format_poly, frobenius, galois_to_witt, ghost_eval_sum_product,
                                teichmuller_vec, verschiebung, witt_add, witt_mul, witt_neg,
                                witt_to_galois, witt_zero)


def mono(m, **powers):
    # mono(2, X0=1, Y1=2) -> exponent tuple
    e = [0] * (2 * m)
    for name, k in powers.items():
        idx = int(name[1:]) + (m if name[0] == "Y" else 0)
        e[idx] = k
    return tuple(e)


def test_first_laws_p2():
    laws = derive_witt_laws(2, 2)
    assert laws.S[0] == {mono(2, X0=1): 1, mono(2, Y0=1): 1}
    assert laws.S[1] == {mono(2, X1=1): 1, mono(2, Y1=1): 1, mono(2, X0=1, Y0=1): -1}
    assert laws.P[1] == {mono(2, X0=2, Y1=1): 1, mono(2, X1=1, Y0=2): 1, mono(2, X1=1, Y1=1): 2}
    assert format_poly(laws.S[1], 2) == "-X0*Y0 + X1 + Y1"


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_s0_is_plain_sum(p):
    laws = derive_witt_laws(p, 1)
    assert laws.S[0] == {mono(1, X0=1): 1, mono(1, Y0=1): 1}
    assert laws.P[0] == {mono(1, X0=1, Y0=1): 1}


@pytest.mark.parametrize("p, m", [(2, 3), (3, 3), (5, 2)])
def test_ghost_identities_symbolic(p, m):
    laws = derive_witt_laws(p, m)
    for n in range(m):
        assert laws.ghost_defect(n) == ({}, {})


def test_non_integral_step_aborts():
    pk = _Packing(2, 2)
    # X_0 is not a ghost identity target: (X_0 - X_0^2) / 2 has odd coefficients
    with pytest.raises(DivisibilityError):
        _solve_next(2, {pk.var(0): 1}, [{pk.var(0): 1}], 1)


def test_examples_over_f2():
    laws = derive_witt_laws(2, 2)
    k = galois_ring(field_for_q(2), 1)
    one = WittVec(k, [1, 0])
    assert witt_add(one, one, laws) == WittVec(k, [0, 1])
    for a in product(k.elements(), repeat=2):
        a = WittVec(k, a)
        assert witt_add(a, witt_zero(k, 2), laws) == a


@pytest.mark.parametrize("q", [2, 3, 4])
def test_fv_equals_vf_equals_p(q):
    k = galois_ring(field_for_q(q), 1)
    laws = derive_witt_laws(k.p, 2)
    p_vec = verschiebung(teichmuller_vec(k, k.one, 2))  # V(1) = p
    for a in product(k.elements(), repeat=2):
        a = WittVec(k, a)
        pa = witt_mul(p_vec, a, laws)
        assert frobenius(verschiebung(a)) == pa
        assert verschiebung(frobenius(a)) == pa


def test_witt_to_galois_examples():
    k = galois_ring(field_for_q(2), 1)
    R = galois_ring(field_for_q(2), 2)
    assert witt_to_galois(WittVec(k, [1, 1]), R) == 3
    assert witt_to_galois(WittVec(k, [0, 1]), R) == 2
    R9 = galois_ring(field_for_q(9), 3)
    k9 = R9.residue_field()
    for x in k9.elements():
        assert witt_to_galois(teichmuller_vec(k9, x, 3), R9) == R9.teichmuller(x)


@pytest.mark.parametrize("q, m", [(2, 2), (3, 2), (4, 2), (4, 1)])
def test_isomorphism_exhaustive_small(q, m):
    k = galois_ring(field_for_q(q), 1)
    R = galois_ring(field_for_q(q), m)
    laws = derive_witt_laws(k.p, m)
    vecs = [WittVec(k, c) for c in product(k.elements(), repeat=m)]
    images = {witt_to_galois(a, R) for a in vecs}
    assert len(images) == len(vecs) == len(R.elements())
    for a in vecs:
        assert galois_to_witt(witt_to_galois(a, R), R) == a
        for b in vecs:
            assert witt_to_galois(witt_add(a, b, laws), R) == R.add(witt_to_galois(a, R), witt_to_galois(b, R))
            assert witt_to_galois(witt_mul(a, b, laws), R) == R.mul(witt_to_galois(a, R), witt_to_galois(b, R))


@pytest.mark.parametrize("q, m", [(2, 4), (3, 3), (4, 3), (5, 2), (9, 2), (8, 3)])
def test_symbolic_and_ghost_routes_agree(q, m):
    k = galois_ring(field_for_q(q), 1)
    laws = derive_witt_laws(k.p, m)
    rng = random.Random(q * 100 + m)
    for _ in range(150):
        a = WittVec(k, [k.random(rng) for _ in range(m)])
        b = WittVec(k, [k.random(rng) for _ in range(m)])
        s, pr = ghost_eval_sum_product(a, b)
        assert witt_add(a, b, laws) == s
        assert witt_mul(a, b, laws) == pr


@pytest.mark.parametrize("q", [2, 3, 5])
def test_negation(q):
    k = galois_ring(field_for_q(q), 1)
    laws = derive_witt_laws(k.p, 3)
    rng = random.Random(q)
    for _ in range(50):
        a = WittVec(k, [k.random(rng) for _ in range(3)])
        assert witt_add(a, witt_neg(a, laws), laws) == witt_zero(k, 3)


@st.composite
def witt_triples(draw):
    q = draw(st.sampled_from([2, 3, 4, 5, 9]))
    m = draw(st.integers(1, 3))
    k = galois_ring(field_for_q(q), 1)
    elems = k.elements()
    vec = st.lists(st.sampled_from(elems), min_size=m, max_size=m).map(lambda c: WittVec(k, c))
    return derive_witt_laws(k.p, m), draw(vec), draw(vec), draw(vec)


@given(witt_triples())
def test_ring_identities(t):
    laws, a, b, c = t
    add = lambda x, y: witt_add(x, y, laws)
    mul = lambda x, y: witt_mul(x, y, laws)
    assert add(a, b) == add(b, a)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


def test_shape_mismatch():
    k = galois_ring(field_for_q(3), 1)
    with pytest.raises(ValueError):
        witt_add(WittVec(k, [1, 2]), WittVec(k, [1]), derive_witt_laws(3, 2))
    with pytest.raises(ValueError):
        witt_to_galois(WittVec(k, [1, 2]), galois_ring(field_for_q(3), 3))
