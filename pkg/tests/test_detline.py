import random

import pytest

from wittgrass.detline import (GradedLine, InvalidChain, TorsionModule, compare_chains, chain_scalar,
                               det_torsion, det_vect, maximal_chains, tensor_braid)
from wittgrass.lattice import det, mat_mul, random_invertible, vec_mat
from wittgrass.ring import field_for_q, galois_ring


def diag(R, exps):
    n = len(exps)
    return [[R.ppow(e) if i == j else R.zero for j in range(n)] for i, e in enumerate(exps)]


def test_graded_lines():
    k = galois_ring(field_for_q(5), 1)
    a, b = GradedLine(k, 2, 3), GradedLine(k, 3, 1)
    prod, sign = tensor_braid(a, b)
    assert prod == GradedLine(k, 1, 4) and sign == -1
    assert tensor_braid(a, GradedLine(k, 1, 2))[1] == 1
    assert a.tensor(a.inverse()) == GradedLine(k, 1, 0)
    with pytest.raises(ValueError):
        GradedLine(k, 0, 1)


def test_det_vect():
    k = galois_ring(field_for_q(3), 1)
    assert det_vect(k, [[1, 0], [0, 1]]) == GradedLine(k, 1, 2)
    assert det_vect(k, [[0, 1], [1, 0]]).scalar == 2  # -1 in F_3
    # swapping blocks of ranks 2 and 1 costs (-1)^(2*1)
    assert det_vect(k, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]).scalar == 1
    assert det_vect(k, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]).scalar == 1
    with pytest.raises(ValueError):
        det_vect(k, [[1, 1], [1, 1]])


def test_det_torsion_examples():
    R = galois_ring(field_for_q(3), 4)
    zero = TorsionModule(R, diag(R, [0, 0]))
    assert det_torsion(zero, []) == GradedLine(zero.field, 1, 0)
    cyc = TorsionModule(R, diag(R, [2, 0]))
    assert det_torsion(cyc, [[3, 0], [1, 0]], coords=True) == GradedLine(cyc.field, 1, 2)
    assert det_torsion(cyc, [[6, 0], [1, 0]], coords=True).scalar == 2
    assert det_torsion(cyc, [[3, 0], [2, 0]], coords=True).scalar == 2
    el = TorsionModule(R, diag(R, [1, 1]))
    assert chain_scalar(el, [[1, 1], [0, 1]], coords=True) == 1
    assert chain_scalar(el, [[0, 1], [1, 0]], coords=True) == 2


def test_invalid_chains():
    R = galois_ring(field_for_q(2), 4)
    cyc = TorsionModule(R, diag(R, [2]))
    with pytest.raises(InvalidChain):
        chain_scalar(cyc, [[2]])  # too short
    with pytest.raises(InvalidChain):
        chain_scalar(cyc, [[1], [2]])  # p * 1 is not in span(0)
    el = TorsionModule(R, diag(R, [1, 1]))
    with pytest.raises(InvalidChain):
        chain_scalar(el, [[1, 1], [3, 3]])  # second vector already in the first step


@pytest.mark.parametrize("q, n", [(2, 3), (3, 3), (5, 2), (7, 2)])
def test_elementary_module_scalar_is_det(q, n):
    # Q = (O/p)^n: the scalar is the determinant of the chain vectors
    R = galois_ring(field_for_q(q), 3)
    k = R.residue_field()
    Q = TorsionModule(R, diag(R, [1] * n))
    for ch in maximal_chains(Q)[:: max(1, q * q)]:
        want = det(k, [[k.reduce_from(R, x) for x in v] for v in ch])
        assert chain_scalar(Q, ch, coords=True) == want


@pytest.mark.parametrize("q", [2, 3, 4])
def test_cyclic_scalar_is_product_of_leading_digits(q):
    R = galois_ring(field_for_q(q), 5)
    k = R.residue_field()
    Q = TorsionModule(R, diag(R, [3]))
    chains = maximal_chains(Q)
    assert len(chains) == (q - 1) ** 3
    for ch in chains:
        want = k.one
        for i, (y,) in enumerate(ch):
            want = k.mul(want, k.reduce_from(R, R.div_p(y, 2 - i)))
        assert chain_scalar(Q, ch, coords=True) == want


def _modules(q):
    R = galois_ring(field_for_q(q), 6)
    for exps in [(1,), (2,), (3,), (1, 1), (2, 1), (1, 1, 1)]:
        yield R, TorsionModule(R, diag(R, list(exps)))


@pytest.mark.parametrize("q", [2, 3])
def test_degree_and_triangle(q):
    for R, Q in _modules(q):
        chains = maximal_chains(Q)
        rng = random.Random(len(chains))
        picks = [rng.choice(chains) for _ in range(6)]
        for a in picks:
            assert det_torsion(Q, a, coords=True).degree == Q.length
            assert compare_chains(Q, a, a, coords=True) == Q.field.one
            for b in picks:
                for c in picks:
                    ab = compare_chains(Q, a, b, coords=True)
                    bc = compare_chains(Q, b, c, coords=True)
                    assert Q.field.mul(ab, bc) == compare_chains(Q, a, c, coords=True)


@pytest.mark.parametrize("q, exps", [(3, (2, 1)), (3, (1, 1, 0)), (3, (2, 1, 0)), (5, (2, 1)), (5, (1, 1))])
def test_compare_is_intrinsic(q, exps):
    # comparing two chains must not depend on how Q is presented
    R = galois_ring(field_for_q(q), 6)
    rng = random.Random(q)
    n = len(exps)
    A = mat_mul(R, mat_mul(R, random_invertible(R, n, rng), diag(R, list(exps))), random_invertible(R, n, rng))
    Q = TorsionModule(R, A)
    chains = [[Q.from_coords(y) for y in ch] for ch in maximal_chains(Q)]
    U, W = random_invertible(R, n, rng), random_invertible(R, n, rng)
    Q_rows = TorsionModule(R, mat_mul(R, U, A))
    Q_move = TorsionModule(R, mat_mul(R, A, W))
    for _ in range(15):
        a, b = rng.choice(chains), rng.choice(chains)
        ref = compare_chains(Q, a, b)
        assert compare_chains(Q_rows, a, b) == ref
        moved = lambda ch: [vec_mat(R, v, W) for v in ch]
        assert compare_chains(Q_move, moved(a), moved(b)) == ref


@pytest.mark.parametrize("q", [2, 3])
def test_additivity_over_extensions(q):
    # O^n > L' = rows(B1) > L'' = rows(B2 B1); Q' = L'/L'' is O^n/rows(B2) via z -> z B1
    R = galois_ring(field_for_q(q), 8)
    rng = random.Random(10 + q)
    checked = 0
    for e1, e2 in [((1, 0), (1, 0)), ((1, 1), (1, 0)), ((2, 0), (0, 1)), ((1, 0, 0), (1, 1, 0)),
                   ((1, 1, 0), (1, 0, 0))]:
        n = len(e1)
        B1 = mat_mul(R, mat_mul(R, random_invertible(R, n, rng), diag(R, list(e1))), random_invertible(R, n, rng))
        B2 = mat_mul(R, mat_mul(R, random_invertible(R, n, rng), diag(R, list(e2))), random_invertible(R, n, rng))
        Q, Qs, Qq = TorsionModule(R, mat_mul(R, B2, B1)), TorsionModule(R, B2), TorsionModule(R, B1)
        assert Q.length == Qs.length + Qq.length
        sub = maximal_chains(Qs)
        quo = [[Qq.from_coords(y) for y in ch] for ch in maximal_chains(Qq)]
        lift = lambda ch: [vec_mat(R, Qs.from_coords(y), B1) for y in ch]
        for _ in range(12):
            i, j = rng.randrange(len(sub)), rng.randrange(len(sub))
            a, b = rng.randrange(len(quo)), rng.randrange(len(quo))
            whole = compare_chains(Q, lift(sub[i]) + quo[a], lift(sub[j]) + quo[b])
            parts = Q.field.mul(compare_chains(Qs, sub[i], sub[j], coords=True),
                                compare_chains(Qq, quo[a], quo[b]))
            assert whole == parts
            checked += 1
    assert checked == 60
