"""Filtration-by-p spectral sequence: pages, differentials, convergence.

The closed form is the oracle: in internal degree t = 2(p-1)k with k != 0
the single differential is d_v(b^j v1^k) = zeta b^{j+v} v1^k with
v = 1 + v_p(k), for every j with j + v < N.  The engine must rediscover
this from subgroup arithmetic alone.
"""

import pytest

from imj.grpcoh import abutment
from imj.padic import PrecisionError, int_valuation
from imj.ssq import (ChartClass, abutment_check, complete_convergence_probe,
                     e2_page, run)


def names(classes):
    return {cl.name for cl in classes}


def test_e2_page_window_example():
    got = e2_page(3, (0, 0), 2)
    assert names(got) == {"1", "b", "b^2", "zeta", "zeta b"}


def test_e2_page_dead_degree():
    assert e2_page(3, (2, 2), 4) == set()


def test_e2_page_p5_stem8():
    got = e2_page(5, (8, 8), 0)
    assert names(got) == {"v1"}


def test_e2_tridegrees_and_chart_coords():
    got = {cl.name: cl for cl in e2_page(3, (0, 4), 3)}
    b = got["b"]
    assert (b.t, b.f, b.c) == (0, 1, 0)
    assert (b.stem, b.s) == (0, 1)
    z = got["zeta"]
    assert (z.t, z.f, z.c) == (0, 0, 1)
    assert (z.stem, z.s) == (-1, 1)
    zbv = got["zeta b v1"]
    assert (zbv.t, zbv.f, zbv.c) == (4, 1, 1)
    assert (zbv.stem, zbv.s) == (3, 2)


def test_run_differential_examples():
    out = run(3, (0, 12), 5)
    recs = {(r.r, r.source.name, r.target.name) for r in out.differentials}
    assert (1, "v1", "zeta b v1") in recs
    assert (2, "v1^3", "zeta b^2 v1^3") in recs
    assert (1, "v1^2", "zeta b v1^2") in recs
    # no premature differential on v1^3
    assert not any(r.r == 1 and r.source.name == "v1^3"
                   for r in out.differentials)


def test_differential_set_matches_closed_form():
    N = 6
    for p in (3, 5):
        w = 2 * (p - 1) * 6
        out = run(p, (-w, w), N)
        got = {(r.r, r.source.name, r.target.name) for r in out.differentials}
        expected = set()
        for k in range(-6, 7):
            if k == 0:
                continue
            v = 1 + int_valuation(abs(k), p, N)
            for j in range(N - v):
                src = ChartClass.monomial(p, k, j, 0)
                tgt = ChartClass.monomial(p, k, j + v, 1)
                expected.add((v, src.name, tgt.name))
        assert got == expected, f"p={p}"


def test_differential_record_invariants():
    out = run(3, (0, 12), 5)
    for rec in out.differentials:
        assert rec.target.t == rec.source.t
        assert rec.target.f == rec.source.f + rec.r
        assert rec.target.c == rec.source.c + 1
        assert 0 < rec.coefficient < 3
        # zeta-linearity: nothing with a zeta factor supports a differential
        assert rec.source.c == 0


def test_b_linearity_contiguous_translates():
    N = 5
    out = run(3, (0, 12), N)
    by_deg = {}
    for rec in out.differentials:
        by_deg.setdefault((rec.r, rec.source.t), set()).add(rec.source.f)
    for (r, t), fs in by_deg.items():
        assert fs == set(range(N - r)), (r, t)


def test_leibniz_pth_power():
    # v1^(pk) supports nothing up to the page that kills v1^k
    p, N = 3, 6
    out = run(p, (0, 2 * (p - 1) * p**2), N)
    for rec in out.differentials:
        k = rec.source.t // (2 * p - 2)
        if k and k % p == 0:
            assert rec.r > 1 + int_valuation(abs(k) // p, p, N)


def test_page_recursion_counts():
    # E_{r+1} is the homology of (E_r, d_r), counted per tridegree
    out = run(3, (0, 12), 5)
    labels = sorted(out.pages)
    for r in labels[:-1]:
        cur = {}
        for cl in out.pages[r]:
            cur[(cl.t, cl.f, cl.c)] = cur.get((cl.t, cl.f, cl.c), 0) + 1
        m = r - 1  # differential label acting on this page
        for rec in out.differentials:
            if rec.r == m:
                cur[(rec.source.t, rec.source.f, rec.source.c)] -= 1
                cur[(rec.target.t, rec.target.f, rec.target.c)] -= 1
        nxt = {}
        for cl in out.pages[r + 1]:
            nxt[(cl.t, cl.f, cl.c)] = nxt.get((cl.t, cl.f, cl.c), 0) + 1
        assert {k: v for k, v in cur.items() if v} == nxt


def test_first_page_matches_associated_graded_homology():
    out = run(3, (0, 12), 5)
    first = min(out.pages)
    assert first == 2
    engine = {(cl.name, cl.t, cl.f, cl.c)
              for cl in out.pages[2] if cl.s <= 3}
    direct = {(cl.name, cl.t, cl.f, cl.c)
              for cl in e2_page(3, (0, 12), 3)}
    assert engine == direct


def test_precision_horizon_artifacts():
    p, N = 3, 4
    out = run(p, (12, 12), N)  # v = 2, so f >= N - v = 2 is unresolvable
    assert names(out.artifacts) == {"b^2 v1^3", "b^3 v1^3"}
    assert names(out.e_infinity) == {"zeta v1^3", "zeta b v1^3"}
    # artifacts still sit on the final page, honestly reported
    assert names(out.pages[max(out.pages)]) >= names(out.artifacts)


def test_einfinity_t_zero_column():
    p, N = 3, 4
    out = run(p, (0, 0), N)
    expect = {"1", "b", "b^2", "b^3", "zeta", "zeta b", "zeta b^2",
              "zeta b^3"}
    assert names(out.e_infinity) == expect
    assert out.artifacts == []


def test_abutment_check_p3():
    p, N = 3, 5
    out = run(p, (0, 12), N)
    rep = abutment_check(out, abutment(p, (0, 12), N))
    assert rep.ok
    assert rep.entries[(1, 12)]["count"] == 2
    assert rep.entries[(1, 12)]["resolved"] == "Z/3^2"
    assert rep.entries[(1, 4)]["resolved"] == "Z/3"
    assert rep.entries[(0, 0)]["resolved"] == "Z_3"
    assert rep.entries[(1, 0)]["resolved"] == "Z_3"
    assert (1, 2) not in rep.entries


def test_abutment_check_p5_t40():
    p, N = 5, 4
    out = run(p, (40, 40), N)
    rep = abutment_check(out, abutment(p, (40, 40), N))
    assert rep.entries[(1, 40)]["count"] == 2
    assert rep.entries[(1, 40)]["resolved"] == "Z/5^2"


def test_convergence_probe_on_finite_run():
    out = run(3, (0, 4), 4)
    stable, lim1 = complete_convergence_probe(out, (1, 4))
    assert lim1 is False
    assert names(stable) == {"zeta v1"}
    stable0, lim1_0 = complete_convergence_probe(out, (0, 4))
    assert lim1_0 is False


def test_precision_guard():
    # k = 3 needs N >= 2 + (1 + 1)
    with pytest.raises(PrecisionError):
        run(3, (0, 12), 3)
    run(3, (0, 12), 4)


def test_run_unpacks_as_triple():
    pages, diffs, einf = run(3, (0, 4), 4)
    assert 2 in pages
    assert all(rec.r >= 1 for rec in diffs)
    assert names(einf)


def test_json_document_shape():
    out = run(3, (0, 4), 4)
    doc = out.to_json_dict()
    assert list(doc) == ["prime", "precision", "window", "pages",
                         "differentials", "e_infinity"]
    page0 = doc["pages"][0]
    assert list(page0) == ["r", "classes"]
    assert list(page0["classes"][0]) == ["name", "t", "f", "c"]
    d0 = doc["differentials"][0]
    assert list(d0) == ["r", "source", "target"]
    assert isinstance(d0["source"], str)
