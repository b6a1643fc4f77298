"""Spectral sequence of the two-term complex filtered by powers of p.

Pages are computed from the generic filtered-complex subquotients

    E_m^{f,0} = (F^f n bd^{-1}F^{f+m}) / (F^{f+1} n bd^{-1}F^{f+m})
    E_m^{f,1} = F^f / (F^{f+1} + F^f n bd(F^{max(0,f-m+1)}))

with F^j = p^j, using exact subgroup arithmetic over Z/p^N; nothing about
the closed-form answer enters the engine.  Page labels follow the indexing
in which the homology of the associated graded is called E_2, so the label
r page carries the subquotients of internal index m = r - 1, and a
differential labeled d_r shifts filtration by exactly r.

Truncation honesty: mod p^N the filtration dies at level N, so in a degree
whose boundary has valuation v the classes of filtration f >= N - v can
never be seen to die.  They are kept on the pages (that is what the
formula yields) but reported in `artifacts`, and excluded from E_infinity
and the abutment comparison.
"""

from __future__ import annotations

from .gmod import (FgModule, ModMatrix, QuotPres, quotient_presentation,
                   sub_intersect, sub_preimage, sub_sum)
from .grpcoh import CohomologyReport, PsiModule
from .padic import PrecisionError, int_valuation, smallest_primitive_root


class WindowError(ValueError):
    """A requested window is empty or cuts a differential in half."""


def monomial_name(k: int, j: int, eps: int) -> str:
    parts = []
    if eps:
        parts.append("zeta")
    if j == 1:
        parts.append("b")
    elif j:
        parts.append(f"b^{j}")
    if k == 1:
        parts.append("v1")
    elif k:
        parts.append(f"v1^{k}")
    return " ".join(parts) if parts else "1"


class ChartClass:
    """A named monomial class zeta^eps b^j v1^k with tridegree (t, f, c).

    t is the internal degree 2(p-1)k, f the p-power filtration (the b
    exponent; zeta lives in filtration 0), c the cohomological spot.
    Chart coordinates: vertical s = f + c, horizontal stem = t - c.
    """

    __slots__ = ("name", "t", "f", "c")

    def __init__(self, name: str, t: int, f: int, c: int):
        self.name = name
        self.t = t
        self.f = f
        self.c = c

    @classmethod
    def monomial(cls, p: int, k: int, j: int, eps: int) -> "ChartClass":
        return cls(monomial_name(k, j, eps), 2 * (p - 1) * k, j, eps)

    @property
    def s(self) -> int:
        return self.f + self.c

    @property
    def stem(self) -> int:
        return self.t - self.c

    def sort_key(self):
        return (self.t, self.f, self.c)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ChartClass)
                and (self.name, self.t, self.f, self.c)
                == (other.name, other.t, other.f, other.c))

    def __hash__(self):
        return hash((self.name, self.t, self.f, self.c))

    def __repr__(self) -> str:
        return f"ChartClass({self.name!r}, t={self.t}, f={self.f}, c={self.c})"


class DifferentialRecord:
    """d_r(source) = coefficient * target, coefficient a unit mod p."""

    __slots__ = ("r", "source", "target", "coefficient")

    def __init__(self, r: int, source: ChartClass, target: ChartClass,
                 coefficient: int):
        if (target.t, target.f, target.c) != (source.t, source.f + r,
                                              source.c + 1):
            raise ValueError("differential record violates tridegree (0,r,1)")
        self.r = r
        self.source = source
        self.target = target
        self.coefficient = coefficient

    def __repr__(self) -> str:
        return (f"d_{self.r}({self.source.name}) = "
                f"{self.coefficient}*{self.target.name}")


def e2_page(p: int, window: tuple[int, int], fmax: int) -> set[ChartClass]:
    """Named basis of the homology of the associated graded, computed from
    the mod-p boundary on each graded line.

    The graded boundary in internal degree 2m multiplies by 1 - sigma^m
    with sigma the Teichmueller unit, so it is computed mod p as
    1 - g^m for a primitive root g.  fmax bounds the chart height s = f+c.
    """
    t_min, t_max = window
    g = smallest_primitive_root(p)
    out: set[ChartClass] = set()
    start = t_min + (t_min % 2)
    for t in range(start, t_max + 1, 2):
        m = t // 2
        if (1 - pow(g, m, p)) % p != 0:
            continue  # graded boundary is a unit: nothing survives
        k = m // (p - 1)
        for c in (0, 1):
            for f in range(0, fmax - c + 1):
                out.add(ChartClass.monomial(p, k, f, c))
    return out


class FilteredComplexSS:
    """Page subquotients of the filtered two-term complex of a PsiModule.

    Pieces are cached by (m, t, f, c) with m the internal page index
    (m = 1 is the homology of the associated graded)."""

    __slots__ = ("module", "prime", "precision", "_pres", "_bd")

    def __init__(self, module: PsiModule):
        self.module = module
        self.prime = module.prime
        self.precision = module.precision
        self._pres: dict[tuple[int, int, int, int], QuotPres] = {}
        self._bd: dict[int, ModMatrix] = {}

    def boundary(self, t: int) -> ModMatrix:
        if t not in self._bd:
            mat = self.module.matrix(t)
            self._bd[t] = ModMatrix.identity(mat.rows, self.prime,
                                             self.precision) - mat
        return self._bd[t]

    def filtration(self, t: int, j: int) -> ModMatrix:
        n = self.module.rank(t)
        scale = self.prime ** min(max(j, 0), self.precision)
        return ModMatrix.identity(n, self.prime,
                                  self.precision).scale_int(scale)

    def piece(self, m: int, t: int, f: int, c: int) -> QuotPres | None:
        if self.module.rank(t) == 0:
            return None
        key = (m, t, f, c)
        if key in self._pres:
            return self._pres[key]
        bd = self.boundary(t)
        if c == 0:
            reach = sub_preimage(bd, self.filtration(t, f + m))
            num = sub_intersect(self.filtration(t, f), reach)
            den = sub_intersect(self.filtration(t, f + 1), reach)
        else:
            num = self.filtration(t, f)
            hit = bd * self.filtration(t, max(0, f - m + 1))
            den = sub_sum(self.filtration(t, f + 1),
                          sub_intersect(num, hit))
        pres = quotient_presentation(num, den)
        assert all(e == 1 for e in pres.exponents), "page piece not p-torsion"
        self._pres[key] = pres
        return pres

    def dim(self, m: int, t: int, f: int, c: int) -> int:
        pres = self.piece(m, t, f, c)
        return 0 if pres is None else len(pres.exponents)

    def induced(self, m: int, t: int) -> list[tuple[int, int, int, int]]:
        """Nonzero entries of d_m in degree t: (f, src_idx, tgt_idx, coeff)."""
        p = self.prime
        bd = self.boundary(t)
        out = []
        for f in range(self.precision):
            src = self.piece(m, t, f, 0)
            if src is None or not src.exponents:
                continue
            tgt = self.piece(m, t, f + m, 1)
            if tgt is None or not tgt.exponents:
                continue
            for i in range(len(src.exponents)):
                x = src.generator(i)
                y = bd * ModMatrix([[v] for v in x], p, self.precision)
                coords = tgt.express(y.column(0))
                assert coords is not None, "differential left the target piece"
                for jdx, coeff in enumerate(coords):
                    if coeff % p:
                        out.append((f, i, jdx, coeff % p))
        return out


class RunResult:
    """Pages, differentials and E_infinity of one spectral sequence run.

    Unpacks as the triple (pages, differentials, e_infinity)."""

    __slots__ = ("prime", "precision", "window", "pages", "differentials",
                 "e_infinity", "artifacts")

    def __init__(self, prime, precision, window, pages, differentials,
                 e_infinity, artifacts):
        self.prime = prime
        self.precision = precision
        self.window = window
        self.pages = pages
        self.differentials = differentials
        self.e_infinity = e_infinity
        self.artifacts = artifacts

    def __iter__(self):
        return iter((self.pages, self.differentials, self.e_infinity))

    def page(self, r: int) -> list[ChartClass]:
        """Classes on page r; pages beyond the computed range are stable."""
        last = max(self.pages)
        if r < min(self.pages):
            raise KeyError(r)
        return self.pages[min(r, last)]

    def to_json_dict(self) -> dict:
        pages = []
        for r in sorted(self.pages):
            classes = [{"name": cl.name, "t": cl.t, "f": cl.f, "c": cl.c}
                       for cl in sorted(self.pages[r],
                                        key=ChartClass.sort_key)]
            pages.append({"r": r, "classes": classes})
        diffs = [{"r": rec.r, "source": rec.source.name,
                  "target": rec.target.name}
                 for rec in sorted(self.differentials,
                                   key=lambda rc: (rc.r, rc.source.t,
                                                   rc.source.f))]
        einf = [{"name": cl.name, "t": cl.t, "f": cl.f, "c": cl.c}
                for cl in sorted(self.e_infinity, key=ChartClass.sort_key)]
        return {
            "prime": self.prime,
            "precision": self.precision,
            "window": [self.window[0], self.window[1]],
            "pages": pages,
            "differentials": diffs,
            "e_infinity": einf,
        }


def run(p: int, window: tuple[int, int], N: int) -> RunResult:
    """Run the spectral sequence for Z_p[u^{+-1}] over an internal-degree
    window at precision N.

    Requires N >= 2 + (1 + v_p(k)) for every k = t/(2p-2) in the window,
    so each differential closes strictly below the precision horizon."""
    t_min, t_max = window
    if t_min > t_max:
        raise WindowError("empty degree window")
    start = t_min + (t_min % 2)
    ts = list(range(start, t_max + 1, 2))
    if not ts:
        raise WindowError("window contains no even degree")
    per = 2 * p - 2
    vmax = 0
    for t in ts:
        if t % per == 0 and t != 0:
            vk = 1 + int_valuation(abs(t) // per, p, N)
            if N < 2 + vk:
                raise PrecisionError(
                    f"degree t={t} needs N >= {2 + vk}, have {N}")
            vmax = max(vmax, vk)
    module = PsiModule.lubin_tate(p, N, ts[0], ts[-1])
    ss = FilteredComplexSS(module)
    live = {}
    for t in ts:
        live[t] = any(ss.dim(1, t, f, c) for f in range(N) for c in (0, 1))

    pages: dict[int, list[ChartClass]] = {}
    records: list[DifferentialRecord] = []
    for m in range(1, vmax + 2):
        classes = []
        for t in ts:
            if not live[t]:
                continue
            k = t // per
            for f in range(N):
                for c in (0, 1):
                    d = ss.dim(m, t, f, c)
                    assert d <= 1, "rank-1 degree with a fat page piece"
                    if d:
                        classes.append(ChartClass.monomial(p, k, f, c))
            for f, _i, _j, coeff in ss.induced(m, t):
                records.append(DifferentialRecord(
                    m, ChartClass.monomial(p, k, f, 0),
                    ChartClass.monomial(p, k, f + m, 1), coeff))
        pages[m + 1] = classes

    final = pages[max(pages)]
    artifacts = []
    for cl in final:
        if cl.c == 0 and cl.t != 0:
            v = ss.boundary(cl.t).entry_valuation(0, 0)
            if cl.f >= N - v:
                artifacts.append(cl)
    skip = set(artifacts)
    e_inf = [cl for cl in final if cl not in skip]
    return RunResult(p, N, (ts[0], ts[-1]), pages, records, e_inf, artifacts)


class AbutmentReport:
    """Per-bidegree comparison of E_infinity against the direct cohomology."""

    __slots__ = ("entries", "ok")

    def __init__(self, entries: dict):
        self.entries = entries
        self.ok = all(e["match"] for e in entries.values())

    def lines(self) -> list[str]:
        out = []
        for (s, t), e in sorted(self.entries.items(), key=lambda kv: (kv[0][1],
                                                                      kv[0][0])):
            out.append(f"(s={s}, t={t}): {e['count']} classes -> "
                       f"{e['resolved']}")
        return out


def abutment_check(run_output: RunResult,
                   coh: CohomologyReport) -> AbutmentReport:
    """Check that surviving classes assemble, along b-multiplication, to the
    directly computed H^{s,t}: n surviving classes in a column resolve the
    extension to Z/p^n.  A mismatch is an engine bug and raises."""
    if run_output.precision != coh.precision:
        raise ValueError("run and abutment computed at different precision")
    p, N = run_output.prime, run_output.precision
    counts: dict[tuple[int, int], int] = {}
    for cl in run_output.e_infinity:
        counts[(cl.c, cl.t)] = counts.get((cl.c, cl.t), 0) + 1
    keys = set(counts)
    lo, hi = run_output.window
    for (s, t), mod in coh.entries.items():
        if not mod.is_zero() and lo <= t <= hi:
            keys.add((s, t))
    entries = {}
    for s, t in sorted(keys, key=lambda st: (st[1], st[0])):
        n_ss = counts.get((s, t), 0)
        n_coh = coh.h(s, t).order_exponent()
        if n_ss != n_coh:
            raise RuntimeError(
                f"abutment mismatch at (s={s}, t={t}): {n_ss} surviving "
                f"classes vs order exponent {n_coh}")
        resolved = FgModule([n_ss], p, N).describe() if n_ss else "0"
        entries[(s, t)] = {"count": n_ss, "order_exponent": n_coh,
                           "resolved": resolved, "match": True}
    return AbutmentReport(entries)


def complete_convergence_probe(run_output, bidegree):
    """Stable value and a lim^1 verdict for the tower of pages at one
    bidegree (s, t).

    A finite-window run has finite-dimensional pages, so the tower is
    Mittag-Leffler and lim^1 vanishes.  A TowerSpec input (declared infinite
    tail) is delegated to the towers module, which can refuse or detect a
    genuine lim^1."""
    if hasattr(run_output, "stages"):
        from .towers import lim_lim1
        lim, lim1_nonzero, _witness = lim_lim1(run_output)
        return lim, lim1_nonzero
    s, t = bidegree
    seq = []
    for r in sorted(run_output.pages):
        seq.append([cl for cl in run_output.pages[r]
                    if cl.c == s and cl.t == t])
    for earlier, later in zip(seq, seq[1:]):
        assert len(later) <= len(earlier), "pages grew: engine bug"
    return (seq[-1] if seq else []), False
