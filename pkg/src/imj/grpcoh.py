"""Continuous cohomology of Z_p^x with graded psi-module coefficients.

The group is topologically generated by psi = omega(g)(1+p), so continuous
cohomology collapses to the two-term complex M --(id - psi)--> M per
internal degree, concentrated in s = 0, 1.
"""

from __future__ import annotations

from .gmod import FgModule, ModMatrix, homology, matinv
from .padic import PrecisionError, int_valuation, psi_generator


class PsiModule:
    """Graded module with an action of psi: one square matrix per degree.

    Matrices must be invertible mod p (psi is a group element)."""

    __slots__ = ("prime", "precision", "_matrices", "_names")

    def __init__(self, matrices: dict[int, ModMatrix], prime: int,
                 precision: int, names: dict[int, list[str]] | None = None):
        self.prime = prime
        self.precision = precision
        self._matrices = dict(matrices)
        for t, mat in self._matrices.items():
            if mat.rows != mat.cols:
                raise ValueError(f"psi matrix in degree {t} is not square")
            try:
                matinv(mat)
            except ValueError:
                raise ValueError(
                    f"psi matrix in degree {t} is not invertible mod {prime}")
        self._names = {}
        for t, mat in self._matrices.items():
            if names and t in names:
                if len(names[t]) != mat.rows:
                    raise ValueError("name count mismatch")
                self._names[t] = list(names[t])
            else:
                self._names[t] = [f"e({t};{i})" for i in range(mat.rows)]

    @classmethod
    def lubin_tate(cls, p: int, N: int, t_min: int, t_max: int) -> "PsiModule":
        """Z_p[u^{+-1}] over a degree window: rank 1 in each even degree 2j,
        psi acting on u^j by the scalar psi^j."""
        psi = psi_generator(p, N)
        mats, names = {}, {}
        start = t_min + (t_min % 2)
        for t in range(start, t_max + 1, 2):
            j = t // 2
            mats[t] = ModMatrix([[(psi**j).residue]], p, N)
            names[t] = ["u^%d" % j if j != 1 else "u"] if j else ["1"]
        return cls(mats, p, N, names)

    def degrees(self) -> list[int]:
        return sorted(self._matrices)

    def matrix(self, t: int) -> ModMatrix:
        return self._matrices[t]

    def rank(self, t: int) -> int:
        mat = self._matrices.get(t)
        return mat.rows if mat is not None else 0

    def names(self, t: int) -> list[str]:
        return list(self._names.get(t, []))

    def direct_sum(self, other: "PsiModule") -> "PsiModule":
        if (self.prime, self.precision) != (other.prime, other.precision):
            raise ValueError("prime/precision mismatch")
        p, N = self.prime, self.precision
        mats, names = {}, {}
        for t in set(self._matrices) | set(other._matrices):
            a, b = self._matrices.get(t), other._matrices.get(t)
            if a is None:
                mats[t], names[t] = b.copy(), other.names(t)
                continue
            if b is None:
                mats[t], names[t] = a.copy(), self.names(t)
                continue
            n, m = a.rows, b.rows
            block = [[0] * (n + m) for _ in range(n + m)]
            for i in range(n):
                block[i][:n] = a.data[i]
            for i in range(m):
                block[n + i][n:] = b.data[i]
            mats[t] = ModMatrix(block, p, N)
            names[t] = self.names(t) + other.names(t)
        return PsiModule(mats, p, N, names)


class CohomologyReport:
    """H^{s,t} per bidegree, s in {0, 1}."""

    __slots__ = ("prime", "precision", "entries", "window")

    def __init__(self, entries: dict[tuple[int, int], FgModule], prime: int,
                 precision: int, window: tuple[int, int] | None = None):
        self.entries = dict(entries)
        self.prime = prime
        self.precision = precision
        self.window = window

    def h(self, s: int, t: int) -> FgModule:
        got = self.entries.get((s, t))
        if got is None:
            return FgModule([], self.prime, self.precision)
        return got

    def nonzero(self) -> list[tuple[int, int, FgModule]]:
        out = [(s, t, m) for (s, t), m in self.entries.items()
               if not m.is_zero()]
        out.sort(key=lambda row: (row[1], row[0]))
        return out

    def table_lines(self) -> list[str]:
        lines = []
        for s, t, m in self.nonzero():
            lines.append(f"H^({s},{t}) = {m.describe()}")
        return lines


def two_term_cohomology(M: PsiModule) -> CohomologyReport:
    """H^0 = ker(id - psi), H^1 = coker(id - psi), degree by degree."""
    p, N = M.prime, M.precision
    entries = {}
    for t in M.degrees():
        mat = M.matrix(t)
        n = mat.rows
        bd = ModMatrix.identity(n, p, N) - mat
        entries[(0, t)] = homology(ModMatrix.zeros(n, 0, p, N), bd)
        entries[(1, t)] = homology(bd, ModMatrix.zeros(0, n, p, N))
    degs = M.degrees()
    window = (degs[0], degs[-1]) if degs else None
    return CohomologyReport(entries, p, N, window)


def character_cohomology(k: int, p: int, N: int) -> tuple[int, int, int]:
    """Rational ranks and integral torsion valuation for the character
    psi -> psi^k.

    Returns (h0_rank, h1_rank, v) with v = valuation of 1 - psi^k; only
    k = 0 carries rational cohomology.  Requires N > 1 + v_p(k) + 1 so the
    torsion exponent is resolved away from the precision ceiling."""
    if k == 0:
        return (1, 1, N)
    vk = int_valuation(abs(k), p, N)
    if N <= vk + 2:
        raise PrecisionError(
            f"need N > {vk + 2} to resolve the torsion of character {k}")
    psi = psi_generator(p, N)
    one = psi**0
    v = (one - psi**k).valuation()
    return (0, 0, v)


def abutment(p: int, window: tuple[int, int],
             N: int | None = None) -> CohomologyReport:
    """H^{s,t}(Z_p^x, Z_p[u^{+-1}]) over an even-degree window.

    Computed from the two-term complex, then H^0 factors below the
    precision ceiling are dropped: they are truncation shadows of 0.
    The surviving table is Z_p at (0,0) and (1,0), Z/p^{1+v_p(k)} at
    (1, 2(p-1)k), zero elsewhere."""
    t_min, t_max = window
    if N is None:
        N = 4
        for t in range(t_min, t_max + 1, 2):
            if t and t % (2 * p - 2) == 0:
                k = abs(t) // (2 * p - 2)
                N = max(N, int_valuation(k, p, 40) + 3)
    M = PsiModule.lubin_tate(p, N, t_min, t_max)
    raw = two_term_cohomology(M)
    entries = {}
    for (s, t), mod in raw.entries.items():
        if s == 0:
            kept = [e for e, sat in zip(mod.exponents, mod.saturated_flags())
                    if sat]
            entries[(s, t)] = FgModule(kept, p, N)
        else:
            entries[(s, t)] = mod
    return CohomologyReport(entries, p, N, (t_min, t_max))
