"""Cobar Ext of exterior Hopf algebras.

Sign oracle: the Koszul sign of a splitting is the parity of the bubble
sort putting the concatenation back in order, computed here from scratch.
Dimension oracle: stars and bars, Sym on n generators.
"""

import math
import random

import numpy as np
import pytest

from imj.cobar import (GF, ExtTable, ExteriorHopf, cobar_ext, cobar_matrix,
                       rank_gf, rank_mod_p, symmetric_oracle)


def sort_parity_sign(left, right):
    seq = sorted(left) + sorted(right)
    swaps = 0
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                swaps += 1
    return -1 if swaps % 2 else 1


def test_coproduct_of_a_pair():
    H = ExteriorHopf(2, 3)
    got = {(tuple(sorted(a)), tuple(sorted(b))): c
           for a, b, c in H.coproduct(frozenset({1, 2}))}
    assert got == {((), (1, 2)): 1, ((1, 2), ()): 1,
                   ((1,), (2,)): 1, ((2,), (1,)): -1}


def test_generators_primitive():
    H = ExteriorHopf(3, 5)
    for i in (1, 2, 3):
        assert H.reduced_coproduct(frozenset({i})) == []


def test_splitting_signs_match_sort_parity():
    H = ExteriorHopf(4, 3)
    for S in H.basis():
        for a, b, c in H.coproduct(S):
            assert c == sort_parity_sign(a, b)
            assert frozenset(a) | frozenset(b) == S
            assert not frozenset(a) & frozenset(b)
        assert len(H.coproduct(S)) == 2 ** len(S)


def test_counit_axiom():
    H = ExteriorHopf(4, 3)
    for S in H.basis():
        left = sum(c * H.counit(a) for a, b, c in H.coproduct(S)
                   if frozenset(b) == S)
        assert left == 1


def test_coassociativity():
    H = ExteriorHopf(4, 3)
    for S in H.basis():
        lhs, rhs = {}, {}
        for a, b, c in H.coproduct(S):
            for a1, a2, c1 in H.coproduct(frozenset(a)):
                key = (tuple(sorted(a1)), tuple(sorted(a2)), tuple(sorted(b)))
                lhs[key] = lhs.get(key, 0) + c * c1
            for b1, b2, c1 in H.coproduct(frozenset(b)):
                key = (tuple(sorted(a)), tuple(sorted(b1)), tuple(sorted(b2)))
                rhs[key] = rhs.get(key, 0) + c * c1
        assert {k: v for k, v in lhs.items() if v} == \
               {k: v for k, v in rhs.items() if v}


def test_internal_degree():
    H = ExteriorHopf(3, 3)
    assert H.degree(frozenset()) == 0
    assert H.degree(frozenset({2})) == -1
    assert H.degree(frozenset({1, 2, 3})) == -3


def test_differential_squares_to_zero():
    for n, q in ((2, 3), (3, 3), (3, 9)):
        H = ExteriorHopf(n, q)
        p = H.field.p
        for s in (1, 2, 3):
            for profile in all_profiles(n, s):
                cols, mid, d0 = cobar_matrix(H, s, profile)
                mid2, rows, d1 = cobar_matrix(H, s + 1, profile)
                assert mid == mid2
                if d0.size and d1.size:
                    assert not ((d1.astype(np.int64) @ d0) % p).any()


def all_profiles(n, s):
    import itertools
    return [m for m in itertools.product(range(s + 1), repeat=n)
            if s <= sum(m) <= n * s]


def test_d_squared_zero_over_gf9_tables():
    H = ExteriorHopf(2, 9)
    gf = H.field
    cols, mid, d0 = cobar_matrix(H, 1, (1, 1))
    mid2, rows, d1 = cobar_matrix(H, 2, (1, 1))
    for i in range(len(rows)):
        for j in range(len(cols)):
            acc = 0
            for k in range(len(mid)):
                acc = gf.add(acc, gf.mul(gf.embed(int(d1[i, k])),
                                         gf.embed(int(d0[k, j]))))
            assert acc == 0


def test_gf9_modulus_frozen():
    gf = GF(9)
    assert gf.modulus == (1, 1, 2)
    assert gf.p == 3 and gf.e == 2


def test_gf9_field_axioms_exhaustive():
    gf = GF(9)
    xs = range(9)
    for a in xs:
        assert gf.add(a, 0) == a and gf.mul(a, gf.embed(1)) == a
        if a:
            assert gf.mul(a, gf.inv(a)) == gf.embed(1)
        assert gf.add(a, gf.neg(a)) == 0
    for a in xs:
        for b in xs:
            assert gf.add(a, b) == gf.add(b, a)
            assert gf.mul(a, b) == gf.mul(b, a)
            for c in xs:
                assert gf.mul(a, gf.add(b, c)) == \
                       gf.add(gf.mul(a, b), gf.mul(a, c))
                assert gf.mul(gf.mul(a, b), c) == gf.mul(a, gf.mul(b, c))


def test_gf_x_is_primitive():
    for q in (9, 25, 27):
        gf = GF(q)
        x = gf.p  # little-endian digits: x has unit digit 0, x digit 1
        seen, cur = set(), gf.embed(1)
        for _ in range(q - 1):
            cur = gf.mul(cur, x)
            seen.add(cur)
        assert len(seen) == q - 1 and cur == gf.embed(1)


def test_gf_rejects_out_of_scope_orders():
    for q in (2, 4, 8, 12, 1):
        with pytest.raises(ValueError):
            GF(q)


def test_prime_field_shortcut():
    gf = GF(7)
    assert gf.e == 1
    assert gf.mul(3, 5) == 1 and gf.add(5, 4) == 2 and gf.inv(2) == 4


def test_rank_agrees_across_field_extensions():
    # integer matrices: row reduction happens in the prime field, so the
    # rank cannot move when scalars are extended
    rng = random.Random(40961)
    for _ in range(25):
        p = rng.choice([3, 5])
        rows = rng.randrange(1, 8)
        cols = rng.randrange(1, 8)
        M = [[rng.randrange(-2, 3) for _ in range(cols)] for _ in range(rows)]
        dense = rank_mod_p(np.array(M, dtype=np.int16) % p, p)
        assert dense == rank_gf(M, GF(p * p))
        assert dense == rank_gf(M, GF(p))


def test_rank_sparse_path_agrees_with_dense():
    from imj.cobar import _rank_sparse
    rng = random.Random(555)
    for _ in range(20):
        p = rng.choice([3, 5])
        rows, cols = rng.randrange(1, 12), rng.randrange(1, 12)
        M = [[rng.randrange(p) if rng.random() < 0.3 else 0
              for _ in range(cols)] for _ in range(rows)]
        sparse_cols = [{i: M[i][j] for i in range(rows) if M[i][j]}
                       for j in range(cols)]
        assert _rank_sparse(sparse_cols, p) == \
               rank_mod_p(np.array(M, dtype=np.int16), p)


def test_ext_one_generator_is_a_polynomial_line():
    table = cobar_ext(ExteriorHopf(1, 3), 4)
    for s in range(5):
        assert table.dim(s, -s) == 1
    assert all(t == -s for s, t in table.dims)


def test_ext_two_generators_quadratic_count():
    table = cobar_ext(ExteriorHopf(2, 3), 3)
    assert table.dim(0, 0) == 1
    assert table.dim(2, -2) == 3
    assert table.dim(3, -3) == 4


def test_ext_matches_symmetric_oracle_desk_sample():
    for n, q in ((1, 3), (2, 3), (2, 9)):
        assert cobar_ext(ExteriorHopf(n, q), 4) == symmetric_oracle(n, 4)


def test_oracle_counts():
    assert symmetric_oracle(3, 2).dim(2, -2) == 6
    assert symmetric_oracle(2, 4).dim(0, 0) == 1
    assert symmetric_oracle(2, 4).dim(4, -4) == 5
    assert symmetric_oracle(4, 3).dim(3, -3) == math.comb(6, 3)


def test_table_equality_and_lines():
    a = symmetric_oracle(2, 3)
    b = ExtTable({(s, -s): math.comb(s + 1, s) for s in range(4)}, 3)
    assert a == b
    assert a != symmetric_oracle(2, 2)
    assert any("s=2" in line and "3" in line for line in a.lines())


def test_desk_scale_enforced():
    with pytest.raises(ValueError):
        cobar_ext(ExteriorHopf(5, 3), 2)
    with pytest.raises(ValueError):
        cobar_ext(ExteriorHopf(2, 3), 7)


def test_even_prime_out_of_scope():
    with pytest.raises(ValueError):
        ExteriorHopf(2, 2)
