"""Bounded Cech cohomology on Proj R and hypercohomology of twisted
periodic complexes, plus exact global-section spaces and vanishing
thresholds.

Truncation trick: the piece of the localized module O(a)(U_S) with
exponents >= -B on the inverted variables is x_S^{-B} * R_{a + B*|S|}
(standard monomials), so restriction maps are multiplication by x_i^B and
the whole truncated Cech bicomplex is assembled from normal-form
multiplication matrices.  d^2 = 0 holds exactly because normal forms are
multiplicative.
"""

import os
from itertools import combinations

from .linalg import ExactMatrix, kernel_basis, rank, solve
from .poly import Poly
from .ring import binom


DEFAULT_B_START = 4
DEFAULT_B_MAX = 64


def truncation_max():
    env = os.environ.get("MFCAT_TRUNCATION_MAX")
    if env:
        return int(env)
    return DEFAULT_B_MAX


def h_projective_space(m, n, p):
    """dim H^p(P^m, O(n)) in closed form."""
    if p == 0 and n >= 0:
        return binom(n + m, m)
    if p == m and n <= -m - 1:
        return binom(-n - 1, m)
    return 0


def _subsets(nvars, p):
    """Index sets of the (p+1)-fold intersections, in lexicographic order."""
    return list(combinations(range(nvars), p + 1))


def _xs_power(ring, S, B):
    e = [0] * ring.nvars
    for i in S:
        e[i] = B
    return Poly.monomial(ring.field, ring.nvars, tuple(e))


class CechSetup:
    """Cover by the standard opens plus a truncation schedule."""

    def __init__(self, b_start=DEFAULT_B_START, b_max=None):
        self.b_start = b_start
        self.b_max = b_max if b_max is not None else truncation_max()

    def schedule(self):
        b = self.b_start
        while b <= self.b_max:
            yield b
            b *= 2


def _mult_block(ring, p, n):
    """ExactMatrix of multiplication by p on R_n (rows = target basis)."""
    rows = ring.mult_matrix(p, n)
    return ExactMatrix(ring.field, rows, ncols=ring.hilbert(n))


class CechSpace:
    """The truncated Cech space C^p of a twist sum, with its block layout."""

    def __init__(self, ring, twists, p, B):
        self.ring = ring
        self.twists = list(twists)
        self.p = p
        self.B = B
        self.subsets = _subsets(ring.nvars, p)
        self.block_dims = []
        self.offsets = []
        off = 0
        for S in self.subsets:
            for a in self.twists:
                self.offsets.append(off)
                dim = ring.hilbert(a + B * len(S))
                self.block_dims.append(dim)
                off += dim
        self.dim = off

    def block_index(self, s_idx, t_idx):
        return s_idx * len(self.twists) + t_idx

    def block_offset(self, s_idx, t_idx):
        return self.offsets[self.block_index(s_idx, t_idx)]


def cech_horizontal(src_space, dst_space):
    """The Cech differential C^p -> C^{p+1} (same twist list)."""
    ring = src_space.ring
    F = ring.field
    B = src_space.B
    out = ExactMatrix.zeros(F, dst_space.dim, src_space.dim)
    src_index = {S: i for i, S in enumerate(src_space.subsets)}
    for tj, T in enumerate(dst_space.subsets):
        for pos, i in enumerate(T):
            S = T[:pos] + T[pos + 1:]
            si = src_index[S]
            sign = 1 if pos % 2 == 0 else -1
            xiB = _xs_power(ring, (i,), B)
            for t_idx, a in enumerate(src_space.twists):
                block = ring.mult_matrix(xiB, a + B * len(S))
                ro = dst_space.block_offset(tj, t_idx)
                co = src_space.block_offset(si, t_idx)
                for r, row in enumerate(block):
                    orow = out.rows[ro + r]
                    for c, v in enumerate(row):
                        if not F.is_zero(v):
                            orow[co + c] = F.add(orow[co + c],
                                                 v if sign > 0 else F.neg(v))
    return out


def cech_vertical(src_space, dst_space, sheaf_map, sign=1):
    """Apply a map of twist sums on each localized piece (same p)."""
    ring = src_space.ring
    F = ring.field
    B = src_space.B
    out = ExactMatrix.zeros(F, dst_space.dim, src_space.dim)
    for s_idx, S in enumerate(src_space.subsets):
        shift = B * len(S)
        for c_t, a in enumerate(src_space.twists):
            for r_t, b in enumerate(dst_space.twists):
                p = sheaf_map.entries[r_t][c_t]
                if p.is_zero():
                    continue
                block = ring.mult_matrix(p, a + shift)
                ro = dst_space.block_offset(s_idx, r_t)
                co = src_space.block_offset(s_idx, c_t)
                for r, row in enumerate(block):
                    orow = out.rows[ro + r]
                    for c, v in enumerate(row):
                        if not F.is_zero(v):
                            orow[co + c] = F.add(orow[co + c],
                                                 v if sign > 0 else F.neg(v))
    return out


def cech_cohomology_at(ring, n, p, B):
    """dim H^p of the truncated Cech complex of O(n) at truncation B."""
    m = ring.nvars - 1
    if p < 0 or p > m:
        return 0
    spaces = {}
    for pp in (p - 1, p, p + 1):
        if 0 <= pp <= m:
            spaces[pp] = CechSpace(ring, [n], pp, B)
    cur = spaces[p]
    if p + 1 in spaces:
        d_out = cech_horizontal(cur, spaces[p + 1])
        z = kernel_basis(d_out).ncols
    else:
        z = cur.dim
    if p - 1 in spaces:
        d_in = cech_horizontal(spaces[p - 1], cur)
        b = rank(d_in)
    else:
        b = 0
    return z - b


def cech_cohomology(ring, n, p, setup=None):
    """(dimension, stable flag): values at consecutive truncations B, B+1
    must agree; the truncation doubles until they do or the cap is hit."""
    setup = setup or CechSetup()
    last = None
    for B in setup.schedule():
        v1 = cech_cohomology_at(ring, n, p, B)
        v2 = cech_cohomology_at(ring, n, p, B + 1)
        if v1 == v2:
            return v1, True
        last = v2
    return last, False


def cech_hypercohomology_at(C, q, B):
    """dim H^q of the truncated total complex of the Cech bicomplex of a
    twisted periodic complex C."""
    ring = C.ctx.ring
    F = ring.field
    m = ring.nvars - 1

    def total_space(n):
        cells = []
        for p in range(0, m + 1):
            r = n - p
            term = C.term(r)
            cells.append((p, r, CechSpace(ring, list(term.twists), p, B)))
        dims = [c[2].dim for c in cells]
        offs = []
        off = 0
        for d in dims:
            offs.append(off)
            off += d
        return cells, offs, off

    def total_diff(src, dst):
        (scells, soffs, sdim) = src
        (dcells, doffs, ddim) = dst
        out = ExactMatrix.zeros(F, ddim, sdim)
        dst_pos = {(p, r): k for k, (p, r, _sp) in enumerate(dcells)}
        for k, (p, r, sp) in enumerate(scells):
            if sp.dim == 0:
                continue
            # horizontal: (p, r) -> (p+1, r)
            key = (p + 1, r)
            if key in dst_pos:
                tsp = dcells[dst_pos[key]][2]
                if tsp.dim:
                    blk = cech_horizontal(sp, tsp)
                    _paste(out, blk, doffs[dst_pos[key]], soffs[k], F)
            # vertical: (p, r) -> (p, r+1) with sign (-1)^p
            key = (p, r + 1)
            if key in dst_pos:
                tsp = dcells[dst_pos[key]][2]
                if tsp.dim:
                    blk = cech_vertical(sp, tsp, C.diff(r),
                                        sign=1 if p % 2 == 0 else -1)
                    _paste(out, blk, doffs[dst_pos[key]], soffs[k], F)
        return out

    sm1 = total_space(q - 1)
    s0 = total_space(q)
    sp1 = total_space(q + 1)
    d_in = total_diff(sm1, s0)
    d_out = total_diff(s0, sp1)
    z = kernel_basis(d_out).ncols
    b = rank(d_in)
    return z - b


def _paste(out, blk, ro, co, F):
    for r, row in enumerate(blk.rows):
        orow = out.rows[ro + r]
        for c, v in enumerate(row):
            if not F.is_zero(v):
                orow[co + c] = F.add(orow[co + c], v)


def cech_hypercohomology(C, q, setup=None):
    """(dimension, stable flag) with the doubling truncation schedule."""
    setup = setup or CechSetup()
    last = None
    for B in setup.schedule():
        v1 = cech_hypercohomology_at(C, q, B)
        v2 = cech_hypercohomology_at(C, q, B + 1)
        if v1 == v2:
            return v1, True
        last = v2
    return last, False


# -- exact global sections ----------------------------------------------------


class GlobalSections:
    """Exact Gamma(X, O(n)) spaces with multiplication maps.

    Affine-graded mode: Gamma(O(n)) = R_n on the monomial basis.
    Projective mode: a per-degree saturation check (stable Cech H^0 dim
    equals dim R_n) enables the same fast path; degrees that fail it fall
    back to the Cech kernel representation (exact dimensions, but sections
    are not polynomials and no strict-morphism basis is extracted there).
    """

    def __init__(self, ctx, setup=None):
        self.ctx = ctx
        self.ring = ctx.ring
        self.setup = setup or CechSetup()
        self._saturated = {}
        self._kernels = {}

    # degree classification

    def saturated(self, n):
        if self.ctx.is_affine:
            return True
        if n not in self._saturated:
            dim, stable = cech_cohomology(self.ring, n, 0, self.setup)
            self._saturated[n] = bool(stable) and dim == self.ring.hilbert(n)
        return self._saturated[n]

    def _kernel(self, n):
        """(B, kernel basis matrix in C^0 coordinates) at a stable bound."""
        if n in self._kernels:
            return self._kernels[n]
        chosen = None
        for B in self.setup.schedule():
            sp0 = CechSpace(self.ring, [n], 0, B)
            sp1 = CechSpace(self.ring, [n], 1, B)
            K = kernel_basis(cech_horizontal(sp0, sp1))
            sp0b = CechSpace(self.ring, [n], 0, B + 1)
            sp1b = CechSpace(self.ring, [n], 1, B + 1)
            Kb = kernel_basis(cech_horizontal(sp0b, sp1b))
            if K.ncols == Kb.ncols:
                chosen = (B, sp0, K)
                break
        if chosen is None:
            raise RuntimeError("Cech H^0 did not stabilize for twist %d" % n)
        self._kernels[n] = chosen
        return chosen

    def dim(self, n):
        if self.saturated(n):
            return self.ring.hilbert(n)
        return self._kernel(n)[2].ncols

    def monomial_path(self, degrees):
        """True if every degree in the list passes the saturation check."""
        return all(self.saturated(n) for n in degrees)

    # matrices

    def mult(self, p, n):
        """Gamma(O(n)) -> Gamma(O(n + deg p)), multiplication by p."""
        ring = self.ring
        F = ring.field
        p = ring.normal_form(p)
        d = max(p.total_degree(), 0)
        if self.saturated(n) and self.saturated(n + d):
            return _mult_block(ring, p, n)
        B, sp0, K = self._kernel(n)
        B2, tp0, L = self._kernel(n + d)
        if B2 != B:
            # recompute the source kernel at the larger bound (bases embed)
            Bmax = max(B, B2)
            sp0 = CechSpace(ring, [n], 0, Bmax)
            sp1 = CechSpace(ring, [n], 1, Bmax)
            K = kernel_basis(cech_horizontal(sp0, sp1))
            tp0 = CechSpace(ring, [n + d], 0, Bmax)
            tp1 = CechSpace(ring, [n + d], 1, Bmax)
            L = kernel_basis(cech_horizontal(tp0, tp1))
        amb = cech_vertical(sp0, tp0, _single_entry_map(ring, p, n, n + d))
        cols = []
        for j in range(K.ncols):
            img = amb.matvec(K.column(j))
            x = solve(L, img)
            if x is None:
                raise RuntimeError("section image left the section space "
                                   "(truncation too small)")
            cols.append(x)
        return ExactMatrix.from_columns(F, cols, L.ncols)

    def sheafmap_matrix(self, f):
        """Gamma of a map of twist sums, as one block matrix."""
        F = self.ring.field
        src_dims = [self.dim(a) for a in f.src]
        dst_dims = [self.dim(b) for b in f.dst]
        out = ExactMatrix.zeros(F, sum(dst_dims), sum(src_dims))
        roffs = _offsets(dst_dims)
        coffs = _offsets(src_dims)
        for r in range(f.dst.rank):
            for c in range(f.src.rank):
                p = f.entries[r][c]
                if p.is_zero():
                    continue
                blk = self.mult(p, f.src[c])
                _paste(out, blk, roffs[r], coffs[c], F)
        return out

    def basis_polys(self, n):
        """Monomial basis of Gamma(O(n)) on the fast path, else None."""
        if self.saturated(n):
            return [Poly.monomial(self.ring.field, self.ring.nvars, m)
                    for m in self.ring.graded_piece_basis(n)]
        return None


def _offsets(dims):
    offs = []
    off = 0
    for d in dims:
        offs.append(off)
        off += d
    return offs


def _single_entry_map(ring, p, a, b):
    from .mf import SheafMap, TwistSum
    return SheafMap(ring, TwistSum([a]), TwistSum([b]), [[p]])


# -- vanishing thresholds -----------------------------------------------------


def vanishing_threshold(ctx, n_lo=None, n_hi=None, override=None, setup=None):
    """n0 with H^p(X, O(n)) = 0 for all p > 0, n >= n0.

    Exact for projective space; otherwise scanned with stability flags (the
    scan is heuristic evidence and refuses to answer when unstable or when
    no clean tail is visible).  Returns (n0, tag)."""
    if override is not None:
        return int(override), "override"
    ring = ctx.ring
    m = ring.nvars - 1
    if ring.is_polynomial_ring():
        return -m, "exact"
    if n_lo is None:
        n_lo = -2 * m - 2
    if n_hi is None:
        n_hi = 2
    table = {}
    for n in range(n_lo, n_hi + 1):
        for p in range(1, m + 1):
            dim, stable = cech_cohomology(ring, n, p, setup)
            if not stable:
                raise RuntimeError(
                    "Cech scan unstable at (n=%d, p=%d); supply an explicit "
                    "threshold override" % (n, p))
            table[(n, p)] = dim
    n0 = None
    for n in range(n_lo, n_hi + 1):
        if all(table[(nn, p)] == 0
               for nn in range(n, n_hi + 1) for p in range(1, m + 1)):
            n0 = n
            break
    if n0 is None:
        raise RuntimeError("no vanishing tail found in the scanned window; "
                           "supply an explicit threshold override")
    return n0, "scanned"
