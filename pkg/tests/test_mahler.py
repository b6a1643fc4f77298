"""Mahler-basis model of continuous functions Z_p -> Z_p.

Oracles: finite differences of integer samples are computable in plain
integer arithmetic (no p-adics), and the psi-action on the linear function
is multiplication by psi.  The invariants computation is checked against
the expectation that constants are the only fixed functions.
"""

import math
import random

import pytest

from imj.mahler import (MahlerFunction, act_psi, h1_rational_profile,
                        invariants, mahler_coeffs, psi_matrix)
from imj.padic import PadicInt, PrecisionError, binom, psi_generator


def pad(values, p, N):
    return [PadicInt(v, p, N) for v in values]


def test_mahler_coeffs_square():
    p, N, L = 3, 6, 8
    f = mahler_coeffs(pad([x * x for x in range(L)], p, N))
    got = [c.residue for c in f.coefficients]
    assert got == [0, 1, 2, 0, 0, 0, 0, 0]


def test_mahler_coeffs_constant():
    p, N, L = 5, 4, 6
    f = mahler_coeffs(pad([1] * L, p, N))
    assert [c.residue for c in f.coefficients] == [1, 0, 0, 0, 0, 0]


def test_mahler_coeffs_basis_element():
    p, N, L = 3, 5, 10
    f = mahler_coeffs(pad([math.comb(x, 3) for x in range(L)], p, N))
    assert [c.residue for c in f.coefficients] == [0, 0, 0, 1] + [0] * 6


def test_round_trip_random():
    rng = random.Random(90125)
    p, N, L = 3, 7, 40
    vals = [rng.randrange(p**N) for _ in range(L)]
    f = mahler_coeffs(pad(vals, p, N))
    assert [f.evaluate(x).residue for x in range(L)] == vals


def test_round_trip_length_128():
    rng = random.Random(128128)
    p, N, L = 3, 8, 128
    vals = [rng.randrange(p**N) for _ in range(L)]
    f = mahler_coeffs(pad(vals, p, N))
    assert [f.evaluate(x).residue for x in range(L)] == vals


def test_evaluate_negative_argument():
    p, N = 3, 5
    f = MahlerFunction.basis(2, 8, p, N)
    # (-1 choose 2) = 1
    assert f.evaluate(-1).residue == 1
    # (-2 choose 3) = -4
    g = MahlerFunction.basis(3, 8, p, N)
    assert g.evaluate(-2).residue == (-4) % 3**5


def test_act_psi_linear():
    p, N, L = 3, 6, 8
    psi = psi_generator(p, N)
    out = act_psi(MahlerFunction.basis(1, L, p, N))
    got = [c.residue for c in out.coefficients]
    assert got == [0, psi.residue] + [0] * (L - 2)


def test_act_psi_fixes_constants():
    p, N, L = 5, 5, 6
    f = mahler_coeffs(pad([7] * L, p, N))
    out = act_psi(f)
    assert [c.residue for c in out.coefficients] == [7] + [0] * (L - 1)


def test_act_psi_b2_by_resampling():
    # act(b_2)(x) must equal (x psi choose 2) recomputed independently
    p, N, L = 3, 5, 8
    out = act_psi(MahlerFunction.basis(2, L, p, N))
    Nw = N + 4
    psi = psi_generator(p, Nw)
    for x in range(L):
        direct = binom(PadicInt(x, p, Nw) * psi, 2)
        assert out.evaluate(x).residue == direct.residue % 3**N


def test_act_psi_preserves_mahler_degree():
    p, N, L = 3, 6, 12
    out = act_psi(MahlerFunction.basis(5, L, p, N))
    for i in range(6, L):
        assert out.coefficients[i].residue == 0


def test_psi_matrix_triangular_with_power_diagonal():
    p, N, L = 3, 6, 10
    M = psi_matrix(L, p, N)
    psi = psi_generator(p, N)
    for i in range(L):
        assert M.data[i][i] == (psi**i).residue
        for j in range(i):
            assert M.data[i][j] == 0  # strictly lower part vanishes


def test_pointwise_product_matches_integer_oracle():
    # b_3 * b_5 re-expanded: coefficients from pure integer differences
    p, N, L = 3, 6, 16
    f = MahlerFunction.basis(3, L, p, N)
    g = MahlerFunction.basis(5, L, p, N)
    prod = f.pointwise_mul(g)
    vals = [math.comb(x, 3) * math.comb(x, 5) for x in range(L)]
    diffs = list(vals)
    expect = []
    for _ in range(L):
        expect.append(diffs[0] % p**N)
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    assert [c.residue for c in prod.coefficients] == expect


def test_act_psi_is_ring_action():
    # on functions of low Mahler degree the product is exactly representable
    rng = random.Random(777)
    p, N, L = 3, 6, 32
    cf = [rng.randrange(p**N) if i <= 10 else 0 for i in range(L)]
    cg = [rng.randrange(p**N) if i <= 12 else 0 for i in range(L)]
    f = MahlerFunction(pad(cf, p, N))
    g = MahlerFunction(pad(cg, p, N))
    lhs = act_psi(f.pointwise_mul(g))
    rhs = act_psi(f).pointwise_mul(act_psi(g))
    assert [c.residue for c in lhs.coefficients] == \
        [c.residue for c in rhs.coefficients]


def max_shift_valuation(L, p, N):
    one = PadicInt(1, p, N)
    psi = psi_generator(p, N)
    return max((one - psi**i).valuation() for i in range(1, L))


def test_invariants_rank_one_p3():
    p, N, L = 3, 8, 16
    rep = invariants(L, p, N)
    assert rep.rank == 1
    gen = rep.generators[0]
    assert gen.coefficients[0].residue == 1
    vmax = max_shift_valuation(L, p, N)
    for c in gen.coefficients[1:]:
        assert c.valuation() >= N - vmax
    # fixed on the nose at working precision
    out = act_psi(gen)
    assert [c.residue for c in out.coefficients] == \
        [c.residue for c in gen.coefficients]


def test_invariants_minimal_length():
    rep = invariants(2, 5, 4)
    assert rep.rank == 1


def test_invariants_rank_stable_as_length_doubles():
    assert invariants(16, 3, 8).rank == invariants(32, 3, 8).rank == 1


def test_invariants_doubled_window_generator_is_exact_constant():
    # doubling the window piles up truncation torsion (the kernel module
    # below genuinely contains Z/3^16) but must not create new invariants
    rep = invariants(32, 3, 8)
    gen = rep.generators[0]
    assert gen.coefficients[0].residue == 1
    assert all(c.residue == 0 for c in gen.coefficients[1:])
    assert rep.kernel.saturated_count() == 1
    assert 16 in rep.kernel.torsion_exponents()


def test_h1_rational_profile_window():
    rep = h1_rational_profile((-20, 20), 3, 6)
    assert rep.rational_h1 == [0]
    assert rep.entries[0] == (1, 1, 6)
    assert rep.entries[2] == (0, 0, 1)
    assert rep.entries[1] == (0, 0, 0)


def test_h1_rational_profile_propagates_precision():
    with pytest.raises(PrecisionError):
        h1_rational_profile((-9, 9), 3, 4)


def test_csv_dump():
    p, N = 3, 5
    f = mahler_coeffs(pad([x * x for x in range(6)], p, N))
    lines = f.to_csv().splitlines()
    assert lines[0] == "index,residue,valuation"
    assert lines[1] == "0,0,5"
    assert lines[2] == "1,1,0"
    assert lines[3] == "2,2,0"
    assert len(lines) == 7
