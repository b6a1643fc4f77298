"""Truncated Mahler model of continuous functions Z_p -> Z_p.

A length-L window stores Mahler coefficients c_0..c_{L-1} with respect to
the binomial functions b_i(a) = (a choose i); semantics are exact modulo
(p^N, b_{>=L}).  The psi-action is translation on the source, computed by
resampling at the points x*psi.  Since x -> (x psi choose i) is a degree-i
polynomial, the length-L window is genuinely psi-stable: no truncation
error enters act_psi.

Sampling at p-adic points costs precision v_p(i!) through the division in
the binomial; everything here works at the boosted precision
N + v_p((L-1)!) internally and reports results at N exactly.
"""

from __future__ import annotations

import math

from .gmod import FgModule, ModMatrix, diagonal_valuations, snf
from .grpcoh import character_cohomology
from .padic import PadicInt, PrecisionError, psi_generator


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _vp_factorial(n: int, p: int) -> int:
    total, q = 0, p
    while q <= n:
        total += n // q
        q *= p
    return total


def _mul(x: PadicInt, y: PadicInt) -> PadicInt:
    m = min(x.precision, y.precision)
    return x.reduce(m) * y.reduce(m)


def _sub(x: PadicInt, y: PadicInt) -> PadicInt:
    m = min(x.precision, y.precision)
    return x.reduce(m) - y.reduce(m)


def _add(x: PadicInt, y: PadicInt) -> PadicInt:
    m = min(x.precision, y.precision)
    return x.reduce(m) + y.reduce(m)


def _exact_div(x: PadicInt, n: int) -> PadicInt:
    """Divide by a nonzero integer whose p-part is known to divide x."""
    p = x.prime
    w = _vp(n, p)
    unit = n // p**w
    if x.precision <= w:
        raise PrecisionError("exact division exhausted the precision")
    if x.residue % p**w:
        raise PrecisionError("claimed-exact division is not exact")
    new_prec = x.precision - w
    res = (x.residue // p**w) * pow(unit, -1, p**new_prec)
    return PadicInt(res, p, new_prec)


def _binom_row(a: PadicInt, L: int) -> list[PadicInt]:
    """[ (a choose 0), ..., (a choose L-1) ] by the incremental product;
    entry i carries precision a.precision - v_p(i!)."""
    p = a.prime
    row = [PadicInt.one(p, a.precision)]
    for i in range(1, L):
        step = _mul(row[-1], a - PadicInt(i - 1, p, a.precision))
        row.append(_exact_div(step, i))
    return row


def _int_binom(x: int, i: int) -> int:
    if x >= 0:
        return math.comb(x, i)
    return (-1) ** i * math.comb(-x + i - 1, i)


class MahlerFunction:
    """Finitely many Mahler coefficients; f = sum c_i b_i mod (p^N, b_>=L)."""

    __slots__ = ("coefficients", "prime", "precision")

    def __init__(self, coefficients: list[PadicInt]):
        if not coefficients:
            raise ValueError("empty coefficient list")
        self.prime = coefficients[0].prime
        prec = min(c.precision for c in coefficients)
        self.coefficients = [c.reduce(prec) for c in coefficients]
        self.precision = prec

    @classmethod
    def basis(cls, i: int, L: int, p: int, N: int) -> "MahlerFunction":
        if not 0 <= i < L:
            raise ValueError("basis index outside the window")
        cs = [PadicInt(1 if j == i else 0, p, N) for j in range(L)]
        return cls(cs)

    @property
    def length(self) -> int:
        return len(self.coefficients)

    def evaluate(self, x: int) -> PadicInt:
        """Exact value at an integer point (binomials stay integral)."""
        p, N = self.prime, self.precision
        pN = p**N
        total = 0
        for i, c in enumerate(self.coefficients):
            if c.residue:
                total += c.residue * _int_binom(x, i)
        return PadicInt(total % pN, p, N)

    def pointwise_mul(self, other: "MahlerFunction") -> "MahlerFunction":
        """Product recomputed from samples; exact modulo b_{>=L}."""
        if (self.prime, self.length) != (other.prime, other.length):
            raise ValueError("length or prime mismatch")
        vals = [_mul(self.evaluate(x), other.evaluate(x))
                for x in range(self.length)]
        return mahler_coeffs(vals)

    def to_csv(self) -> str:
        lines = ["index,residue,valuation"]
        for i, c in enumerate(self.coefficients):
            lines.append(f"{i},{c.residue},{c.valuation()}")
        return "\n".join(lines)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, MahlerFunction)
                and self.prime == other.prime
                and self.precision == other.precision
                and [c.residue for c in self.coefficients]
                == [c.residue for c in other.coefficients])

    def __repr__(self) -> str:
        res = [c.residue for c in self.coefficients]
        return f"MahlerFunction({res}, p={self.prime}, N={self.precision})"


def mahler_coeffs(values: list[PadicInt]) -> MahlerFunction:
    """Coefficients from samples f(0), ..., f(L-1): c_i = (Delta^i f)(0)."""
    if not values:
        raise ValueError("no sample values")
    work = list(values)
    coeffs = []
    while work:
        coeffs.append(work[0])
        work = [_sub(b, a) for a, b in zip(work, work[1:])]
    return MahlerFunction(coeffs)


def act_psi(f: MahlerFunction) -> MahlerFunction:
    """(psi . f)(x) = f(x psi), resampled and re-expanded at length L."""
    p, N, L = f.prime, f.precision, f.length
    Nw = N + _vp_factorial(L - 1, p)
    psi = psi_generator(p, Nw)
    samples = []
    for x in range(L):
        a = PadicInt(x, p, Nw) * psi
        row = _binom_row(a, L)
        acc = PadicInt.zero(p, N)
        for c, b in zip(f.coefficients, row):
            if c.residue:
                acc = _add(acc, _mul(PadicInt(c.residue, p, b.precision), b))
        samples.append(acc.reduce(N))
    return mahler_coeffs(samples)


def psi_matrix(L: int, p: int, N: int) -> ModMatrix:
    """Matrix of act_psi on b_0..b_{L-1} over Z/p^N, built in one sweep:
    sample all basis functions at the points x psi, then difference the
    sample rows.  Upper triangular with diagonal psi^i."""
    Nw = N + _vp_factorial(L - 1, p)
    psi = psi_generator(p, Nw)
    rows = [_binom_row(PadicInt(x, p, Nw) * psi, L) for x in range(L)]
    entries = []
    work = rows
    for _ in range(L):
        head = work[0]
        for c in head:
            if c.precision < N:
                raise PrecisionError("psi matrix entry below target precision")
        entries.append([c.residue % p**N for c in head])
        work = [[_sub(b, a) for a, b in zip(r0, r1)]
                for r0, r1 in zip(work, work[1:])]
    return ModMatrix(entries, p, N)


class InvariantsReport:
    """Kernel of id - act_psi on the length-L window."""

    __slots__ = ("rank", "generators", "kernel", "length")

    def __init__(self, rank: int, generators: list[MahlerFunction],
                 kernel: FgModule, length: int):
        self.rank = rank
        self.generators = generators
        self.kernel = kernel
        self.length = length

    def describe(self) -> str:
        return (f"invariants: rank {self.rank} (kernel "
                f"{self.kernel.describe()}) at length {self.length}")


def invariants(L: int, p: int, N: int) -> InvariantsReport:
    """Saturated kernel of id - act_psi: the genuinely invariant functions.

    Naive saturation counting at precision N lies: id - act_psi is
    triangular with unit off-diagonal entries, and those merge the
    per-degree torsion into a single invariant factor as large as the
    determinant valuation B of the complement of the constant column.
    Whenever N <= B that accumulated factor also hits the precision
    ceiling and masquerades as a second free generator.  Working
    internally at N + B separates the two: every finite invariant factor
    is bounded by B, so only exact kernel vectors saturate.  Tail
    coordinates of a saturated column then carry valuation at least N
    and vanish from the reported generator, which is normalized to
    constant term 1 when that term is a unit.  The kernel module keeps
    the working precision, at which all its torsion exponents are exact."""
    if L < 2:
        raise ValueError("window too short to see the translation action")
    # det of the upper-triangular complement: sum of diagonal valuations
    B = sum(1 + _vp(i, p) for i in range(1, L) if i % (p - 1) == 0)
    Nw = N + B
    A = ModMatrix.identity(L, p, Nw) - psi_matrix(L, p, Nw)
    _, D, V = snf(A)
    vals = diagonal_valuations(D)
    gens = []
    for j, v in enumerate(vals):
        if v == Nw:
            col = [x % p**N for x in V.column(j)]
            if col[0] % p:
                inv = pow(col[0], -1, p**N)
                col = [x * inv % p**N for x in col]
            gens.append(MahlerFunction([PadicInt(x, p, N) for x in col]))
    kernel = FgModule(sorted(v for v in vals if v > 0), p, Nw)
    return InvariantsReport(len(gens), gens, kernel, L)


class RationalProfile:
    """character_cohomology aggregated over a k-window."""

    __slots__ = ("entries", "rational_h1", "prime", "precision")

    def __init__(self, entries: dict[int, tuple[int, int, int]],
                 rational_h1: list[int], prime: int, precision: int):
        self.entries = entries
        self.rational_h1 = rational_h1
        self.prime = prime
        self.precision = precision

    def lines(self) -> list[str]:
        out = []
        for k in sorted(self.entries):
            h0, h1, tv = self.entries[k]
            out.append(f"k={k}: h0={h0} h1={h1} torsion_valuation={tv}")
        return out


def h1_rational_profile(k_range: tuple[int, int], p: int,
                        N: int) -> RationalProfile:
    """Per-character rational cohomology over a window of characters.

    Exactly the trivial character carries rational H^0 and H^1; every
    other character contributes only bounded torsion.  A violation means
    the valuation engine is broken and raises."""
    lo, hi = k_range
    entries = {k: character_cohomology(k, p, N) for k in range(lo, hi + 1)}
    rational = sorted(k for k, (_h0, h1, _tv) in entries.items() if h1)
    expected = [0] if lo <= 0 <= hi else []
    if rational != expected:
        raise RuntimeError(f"rational H^1 carried by {rational}, "
                           f"expected {expected}")
    return RationalProfile(entries, rational, p, N)
