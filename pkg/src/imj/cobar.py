"""Cobar-complex Ext of exterior Hopf algebras over F_q.

Ext of an exterior coalgebra on primitive odd generators sitting in
internal degree -1 is a symmetric algebra on classes in (s, t) = (1, -1).
The module verifies that by raw rank computation on the reduced cobar
complex. The complex splits by occurrence profile (how often each
generator appears across the tensor slots), the differential has integer
shuffle-sign entries, and an integer matrix cannot change rank under
scalar extension, so ranks are taken mod p and spot-checked against a
direct F_q elimination.
"""

import itertools
import math

import numpy as np

_DENSE_CELLS = 100_000_000


def _factor_prime_power(q: int):
    if q < 2:
        raise ValueError("field order must be a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    e = 0
    m = q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


class GF:
    """F_q as F_p[x] mod m(x), elements encoded as ints in base p with
    the constant coefficient in the unit digit.

    The modulus is deterministic: the first monic degree-e polynomial,
    coefficients enumerated lexicographically, for which x generates a
    cyclic group of order q - 1 (that forces irreducibility and makes x
    primitive in one test). Multiplication runs on exp/log tables of
    that generator. Even characteristic is out of scope.
    """

    __slots__ = ("q", "p", "e", "modulus", "_exp", "_log")

    def __init__(self, q: int):
        p, e = _factor_prime_power(q)
        if p == 2:
            raise ValueError("even characteristic out of scope")
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self.modulus = None
            self._exp = self._log = None
            return
        for tail in itertools.product(range(p), repeat=e):
            exp = self._powers_of_x((1,) + tail)
            if exp is not None:
                self.modulus = (1,) + tail
                self._exp = exp
                self._log = {v: i for i, v in enumerate(exp)}
                return
        raise RuntimeError("no primitive modulus found")  # unreachable

    def _powers_of_x(self, mod):
        # little-endian digits; x^e folds back through the modulus tail
        p, e, q = self.p, self.e, self.q
        fold = [(-c) % p for c in reversed(mod[1:])]
        cur = [1] + [0] * (e - 1)
        out = [1]
        for step in range(q - 1):
            carry = cur[-1]
            cur = [0] + cur[:-1]
            if carry:
                cur = [(d + carry * f) % p for d, f in zip(cur, fold)]
            val = sum(d * p**i for i, d in enumerate(cur))
            if val == 1:
                # order exactly q - 1 certifies a field with x primitive
                return out if step == q - 2 else None
            out.append(val)
        return None

    def embed(self, c: int) -> int:
        return c % self.p

    def _digits(self, a: int):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return sum(((x + y) % self.p) * self.p**i
                   for i, (x, y) in enumerate(zip(self._digits(a),
                                                  self._digits(b))))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return sum(((-x) % self.p) * self.p**i
                   for i, x in enumerate(self._digits(a)))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._exp[-self._log[a] % (self.q - 1)]


def _shuffle_sign(a_mask: int, b_mask: int) -> int:
    """Koszul sign merging two sorted odd monomials: parity of the pairs
    (a, b) with a in the left factor, b in the right, a > b."""
    inv = 0
    b = b_mask
    while b:
        low = b & -b
        inv += (a_mask & ~(low | (low - 1))).bit_count()
        b ^= low
    return -1 if inv & 1 else 1


class ExteriorHopf:
    """Exterior Hopf algebra on n primitive odd generators over F_q.

    Basis: the subsets of {1..n}, internal degree minus the size. The
    coproduct splits a subset every possible way, each summand weighted
    by the Koszul sign of the split.
    """

    __slots__ = ("n", "field")

    def __init__(self, n: int, q: int):
        if n < 0:
            raise ValueError("need a nonnegative number of generators")
        self.n = n
        self.field = GF(q)

    def _mask(self, S) -> int:
        m = 0
        for i in S:
            if not 1 <= i <= self.n:
                raise ValueError(f"generator index {i} out of range")
            m |= 1 << (i - 1)
        return m

    @staticmethod
    def _unmask(mask: int) -> frozenset:
        out = set()
        while mask:
            low = mask & -mask
            out.add(low.bit_length())
            mask ^= low
        return frozenset(out)

    def basis(self) -> list:
        subsets = [self._unmask(m) for m in range(1 << self.n)]
        return sorted(subsets, key=lambda S: (len(S), tuple(sorted(S))))

    def degree(self, S) -> int:
        return -len(S)

    def counit(self, S) -> int:
        return 0 if S else 1

    def coproduct(self, S) -> list:
        mask = self._mask(S)
        out = []
        sub = mask
        while True:
            b = mask ^ sub
            out.append((self._unmask(sub), self._unmask(b),
                        _shuffle_sign(sub, b)))
            if sub == 0:
                break
            sub = (sub - 1) & mask
        return out

    def reduced_coproduct(self, S) -> list:
        return [(a, b, c) for a, b, c in self.coproduct(S) if a and b]


def _block_basis(n: int, s: int, profile) -> list:
    """Tuples of s nonempty generator masks whose multiset union has the
    given multiplicity per generator, in lexicographic slot order."""
    out = []

    def rec(slots, prof, acc):
        if slots == 0:
            if not any(prof):
                out.append(tuple(acc))
            return
        if sum(prof) < slots or any(m > slots for m in prof):
            return
        allowed = 0
        for i, m in enumerate(prof):
            if m:
                allowed |= 1 << i
        subs = []
        sub = allowed
        while sub:
            subs.append(sub)
            sub = (sub - 1) & allowed
        for sub in sorted(subs):
            nxt = list(prof)
            b = sub
            while b:
                low = b & -b
                nxt[low.bit_length() - 1] -= 1
                b ^= low
            rec(slots - 1, tuple(nxt), acc + [sub])

    rec(s, tuple(profile), [])
    return out


def _block_entries(tpl, i_slot_mask_iter=None):
    """Yield (target_tuple, coefficient) for d applied to one basis tuple."""
    for i, mask in enumerate(tpl):
        if mask.bit_count() < 2:
            continue
        pos = -1 if (i + 1) % 2 else 1
        sub = (mask - 1) & mask
        while sub:
            b = mask ^ sub
            yield tpl[:i] + (sub, b) + tpl[i + 1:], pos * _shuffle_sign(sub, b)
            sub = (sub - 1) & mask


def cobar_matrix(H: ExteriorHopf, s: int, profile):
    """d^s on one occurrence-profile block of the reduced cobar complex.

    Returns (domain_basis, target_basis, matrix): bases are tuples of
    frozensets, matrix[r, c] the coefficient of target r in d(domain c)
    reduced mod p. Entries before reduction are shuffle signs, so they
    live in the prime field for every F_q of that characteristic.
    """
    profile = tuple(profile)
    if len(profile) != H.n or any(m < 0 for m in profile):
        raise ValueError("profile must list one multiplicity per generator")
    p = H.field.p
    cols = _block_basis(H.n, s, profile)
    rows = _block_basis(H.n, s + 1, profile)
    index = {t: i for i, t in enumerate(rows)}
    M = np.zeros((len(rows), len(cols)), dtype=np.int16)
    for ci, tpl in enumerate(cols):
        for target, coeff in _block_entries(tpl):
            M[index[target], ci] += coeff
    M %= p
    unmask = ExteriorHopf._unmask
    return ([tuple(unmask(m) for m in t) for t in cols],
            [tuple(unmask(m) for m in t) for t in rows], M)


def rank_mod_p(M, p: int) -> int:
    """Rank over F_p by vectorized Gaussian elimination."""
    A = (np.asarray(M, dtype=np.int16) % p).astype(np.int16)
    if A.ndim != 2:
        raise ValueError("need a matrix")
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        r += 1
    return r


def rank_gf(M, gf: GF) -> int:
    """Rank over F_q by elimination on the lookup tables; integer
    entries are embedded through the prime subfield."""
    A = [[gf.embed(x) for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = gf.inv(A[r][c])
        A[r] = [gf.mul(inv, x) for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = gf.neg(A[i][c])
                A[i] = [gf.add(x, gf.mul(f, y)) for x, y in zip(A[i], A[r])]
        r += 1
    return r


def _rank_sparse(columns, p: int) -> int:
    """Rank over F_p of a matrix given as column dicts {row: value};
    left-looking elimination, dense blocks never materialized."""
    pivots = {}
    rank = 0
    for col in columns:
        col = {k: v % p for k, v in col.items() if v % p}
        while col:
            r = min(col)
            piv = pivots.get(r)
            if piv is None:
                inv = pow(col[r], -1, p)
                pivots[r] = {k: v * inv % p for k, v in col.items()}
                rank += 1
                break
            f = col[r]
            for k, v in piv.items():
                nv = (col.get(k, 0) - f * v) % p
                if nv:
                    col[k] = nv
                else:
                    col.pop(k, None)
    return rank


_RANK_CACHE = {}
_DIM_CACHE = {}


def _block_dim(n: int, s: int, profile) -> int:
    key = (n, s, tuple(sorted(profile, reverse=True)))
    if key not in _DIM_CACHE:
        _DIM_CACHE[key] = len(_block_basis(n, s, key[2]))
    return _DIM_CACHE[key]


def _block_rank(n: int, s: int, profile, p: int) -> int:
    """Rank of d^s on the profile block, cached up to permutation of the
    generators: relabeling permutes the basis and flips signs, which
    never moves a rank."""
    if s == 0:
        return 0
    canon = tuple(sorted(profile, reverse=True))
    key = (n, s, canon, p)
    if key in _RANK_CACHE:
        return _RANK_CACHE[key]
    cols = _block_basis(n, s, canon)
    rows = _block_basis(n, s + 1, canon)
    _DIM_CACHE[(n, s, canon)] = len(cols)
    if not cols or not rows:
        rank = 0
    elif len(cols) * len(rows) <= _DENSE_CELLS:
        index = {t: i for i, t in enumerate(rows)}
        M = np.zeros((len(rows), len(cols)), dtype=np.int16)
        for ci, tpl in enumerate(cols):
            for target, coeff in _block_entries(tpl):
                M[index[target], ci] += coeff
        rank = rank_mod_p(M % p, p)
    else:
        index = {t: i for i, t in enumerate(rows)}
        sparse = []
        for tpl in cols:
            col = {}
            for target, coeff in _block_entries(tpl):
                r = index[target]
                col[r] = col.get(r, 0) + coeff
            sparse.append(col)
        rank = _rank_sparse(sparse, p)
    _RANK_CACHE[key] = rank
    return rank


def _subfield_spot_check(H: ExteriorHopf, s: int, profile):
    """Recompute one small block rank by direct F_q elimination; a
    mismatch with the prime-field rank means the scalar-extension
    argument (or the arithmetic) is broken, so fail loudly."""
    _, _, M = cobar_matrix(H, s, profile)
    if M.size == 0 or M.shape[0] > 30 or M.shape[1] > 30:
        return
    dense = rank_mod_p(M, H.field.p)
    if dense != rank_gf(M.tolist(), H.field):
        raise RuntimeError("scalar extension moved a cobar rank")


class ExtTable:
    """Bigraded Ext dimensions dims[(s, t_internal)], zeros dropped."""

    __slots__ = ("dims", "s_max")

    def __init__(self, dims, s_max: int):
        self.dims = {k: int(v) for k, v in dims.items() if v}
        self.s_max = s_max

    def dim(self, s: int, t: int) -> int:
        return self.dims.get((s, t), 0)

    def __eq__(self, other):
        if not isinstance(other, ExtTable):
            return NotImplemented
        return self.dims == other.dims and self.s_max == other.s_max

    __hash__ = None

    def lines(self) -> list:
        return [f"s={s} t={t}: dim {d}"
                for (s, t), d in sorted(self.dims.items())]


def cobar_ext(H: ExteriorHopf, S_max: int) -> ExtTable:
    """Cohomology dimensions of the reduced cobar complex through S_max.

    Per cohomological degree s the complex is a direct sum of profile
    blocks; each contributes dim - rank(out) - rank(in). The result must
    land on the line t = -s; leakage means a rank is wrong and raises.
    """
    if H.n > 4 or S_max > 6:
        raise ValueError("desk scale is n <= 4 and S_max <= 6")
    if S_max < 0:
        raise ValueError("S_max must be >= 0")
    p = H.field.p
    dims = {(0, 0): 1}
    checked = H.field.e == 1
    for s in range(1, S_max + 1):
        for profile in itertools.product(range(s + 1), repeat=H.n):
            w = sum(profile)
            if w < s:
                continue
            d = _block_dim(H.n, s, profile)
            if d == 0:
                continue
            h = d - _block_rank(H.n, s, profile, p) \
                  - _block_rank(H.n, s - 1, profile, p)
            if h < 0:
                raise RuntimeError("cobar ranks overshot a block dimension")
            if not checked and d <= 30:
                _subfield_spot_check(H, s, profile)
                checked = True
            if h:
                dims[(s, -w)] = dims.get((s, -w), 0) + h
    for s, t in dims:
        if t != -s:
            raise RuntimeError(f"cohomology leaked off the line t = -s "
                               f"at (s={s}, t={t})")
    return ExtTable(dims, S_max)


def symmetric_oracle(n: int, S_max: int) -> ExtTable:
    """Symmetric algebra on n generators in (1, -1): stars and bars,
    concentrated in internal degree -s."""
    if n < 0 or S_max < 0:
        raise ValueError("need nonnegative n and S_max")
    return ExtTable({(s, -s): math.comb(max(n + s - 1, 0), s)
                     for s in range(S_max + 1)}, S_max)
