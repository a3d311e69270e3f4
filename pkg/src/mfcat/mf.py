"""Matrix factorizations and twisted periodic complexes.

Conventions (fixed throughout the engine):
  * an MF is  e1: E1 -> E0,  e0: E0 -> E1(d)  with both composites W * id,
    where d = deg W is the twist step (projective mode enforces d = 1);
  * a twisted periodic complex satisfies C^{q+2} = C^q(d) on the nose, so
    it is stored as two terms and two differentials;
  * shift:  E[1] = (E0 --(-e0)--> E1(d) --(-e1(d))--> E0(d));
  * cone(f) uses the block matrices [[-e0, 0], [g0, f1]] and
    [[-e1(d), 0], [g1(d), f0]].
"""

from .linalg import ExactMatrix
from .poly import Poly


class TwistSum:
    """A formal direct sum of twists of O(1): just a tuple of integers.

    Twists are kept in construction order (block constructions such as
    cones and mapping complexes rely on positional block layout)."""

    __slots__ = ("twists",)

    def __init__(self, twists=()):
        self.twists = tuple(int(t) for t in twists)

    @property
    def rank(self):
        return len(self.twists)

    def twist(self, n):
        return TwistSum(t + n for t in self.twists)

    def __add__(self, other):
        return TwistSum(self.twists + other.twists)

    def __getitem__(self, i):
        return self.twists[i]

    def __iter__(self):
        return iter(self.twists)

    def __len__(self):
        return len(self.twists)

    def __eq__(self, other):
        return isinstance(other, TwistSum) and self.twists == other.twists

    def __hash__(self):
        return hash(self.twists)

    def __repr__(self):
        return "TwistSum%r" % (self.twists,)


class SheafMap:
    """A map of twist sums: a matrix of homogeneous ring elements.

    Entry (r, c) must be zero or homogeneous of degree dst[r] - src[c]."""

    __slots__ = ("ring", "src", "dst", "entries")

    def __init__(self, ring, src, dst, entries, check=True):
        self.ring = ring
        self.src = src
        self.dst = dst
        ents = []
        if len(entries) != dst.rank:
            raise ValueError("matrix has %d rows, expected %d" % (len(entries), dst.rank))
        for r, row in enumerate(entries):
            if len(row) != src.rank:
                raise ValueError("row %d has %d entries, expected %d"
                                 % (r, len(row), src.rank))
            out_row = []
            for c, p in enumerate(row):
                p = ring.normal_form(p)
                if check and not p.is_zero():
                    want = dst[r] - src[c]
                    if not p.is_homogeneous() or p.total_degree() != want:
                        raise ValueError(
                            "entry (%d, %d) must be homogeneous of degree %d, got %s"
                            % (r, c, want, ring.to_str(p)))
                out_row.append(p)
            ents.append(out_row)
        self.entries = ents

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(ring, src, dst):
        z = ring.zero()
        return SheafMap(ring, src, dst,
                        [[z] * src.rank for _ in range(dst.rank)], check=False)

    @staticmethod
    def identity(ring, ts):
        m = SheafMap.zero(ring, ts, ts)
        one = ring.one()
        for i in range(ts.rank):
            m.entries[i][i] = one
        return m

    @staticmethod
    def scalar(ring, p, src, dst):
        """p * id with a twist shift: dst must be src shifted by deg p."""
        m = SheafMap.zero(ring, src, dst)
        p = ring.normal_form(p)
        for i in range(src.rank):
            m.entries[i][i] = p
        return SheafMap(ring, src, dst, m.entries)

    @staticmethod
    def from_blocks(ring, srcs, dsts, blocks):
        """Assemble a block matrix; blocks[i][j]: srcs[j] -> dsts[i] or None."""
        src = TwistSum(sum((list(s.twists) for s in srcs), []))
        dst = TwistSum(sum((list(d.twists) for d in dsts), []))
        z = ring.zero()
        entries = [[z] * src.rank for _ in range(dst.rank)]
        roff = 0
        for i, dts in enumerate(dsts):
            coff = 0
            for j, sts in enumerate(srcs):
                blk = blocks[i][j]
                if blk is not None:
                    if blk.src != sts or blk.dst != dts:
                        raise ValueError("block (%d, %d) has wrong shape" % (i, j))
                    for r in range(dts.rank):
                        for c in range(sts.rank):
                            entries[roff + r][coff + c] = blk.entries[r][c]
                coff += sts.rank
            roff += dts.rank
        return SheafMap(ring, src, dst, entries, check=False)

    # -- arithmetic --------------------------------------------------------

    def compose(self, other):
        """self o other (apply `other` first)."""
        if other.dst != self.src:
            raise ValueError("composition shape mismatch")
        ring = self.ring
        entries = []
        for r in range(self.dst.rank):
            row = []
            for c in range(other.src.rank):
                acc = ring.zero()
                for k in range(self.src.rank):
                    a = self.entries[r][k]
                    b = other.entries[k][c]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(ring.normal_form(acc))
            entries.append(row)
        return SheafMap(ring, other.src, self.dst, entries, check=False)

    def twist(self, n):
        return SheafMap(self.ring, self.src.twist(n), self.dst.twist(n),
                        self.entries, check=False)

    def __add__(self, other):
        if other.src != self.src or other.dst != self.dst:
            raise ValueError("addition shape mismatch")
        return SheafMap(self.ring, self.src, self.dst,
                        [[self.ring.normal_form(a + b)
                          for a, b in zip(r1, r2)]
                         for r1, r2 in zip(self.entries, other.entries)],
                        check=False)

    def __neg__(self):
        return SheafMap(self.ring, self.src, self.dst,
                        [[-p for p in row] for row in self.entries], check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SheafMap(self.ring, self.src, self.dst,
                        [[p.scale(c) for p in row] for row in self.entries],
                        check=False)

    def is_zero(self):
        return all(p.is_zero() for row in self.entries for p in row)

    def __eq__(self, other):
        return (isinstance(other, SheafMap) and self.src == other.src
                and self.dst == other.dst
                and all(a == b for r1, r2 in zip(self.entries, other.entries)
                        for a, b in zip(r1, r2)))

    def to_strs(self):
        return [[self.ring.to_str(p) for p in row] for row in self.entries]

    def __repr__(self):
        return "SheafMap(%r -> %r, %r)" % (self.src, self.dst, self.to_strs())


class MFContext:
    """The triple (X, O(1), W): a graded ring, a mode, and the section W.

    mode 'projective' means X = Proj R with deg W = 1; mode 'affine-graded'
    means the graded-module model of Spec R with any homogeneous W.  The
    regularity of W (nonzerodivisor) is verified on graded pieces up to a
    bound and recorded as a flag.
    """

    def __init__(self, ring, W, mode="projective", twist_step=None,
                 regularity_bound=None):
        if mode not in ("projective", "affine-graded"):
            raise ValueError("mode must be 'projective' or 'affine-graded'")
        self.ring = ring
        self.mode = mode
        self.W = ring.poly(W)
        if self.W.is_zero():
            # TPC-as-MF mode (W = 0): the twist step must be supplied
            self.d = int(twist_step) if twist_step is not None else 1
            self.w_regular = False
        else:
            if not self.W.is_homogeneous():
                raise ValueError("W must be homogeneous")
            self.d = self.W.total_degree()
            if mode == "projective" and self.d != 1:
                raise ValueError("projective mode requires deg W = 1")
            if twist_step is not None and int(twist_step) != self.d:
                raise ValueError("twist step must equal deg W")
            self.w_regular = self._check_regular(regularity_bound)
        self._y_ring = None

    def _check_regular(self, bound):
        """W is regular iff multiplication by W is injective on R_n for all
        n; checked for n up to a bound (degrees where new relations between
        the generators of I and W could first appear, plus slack)."""
        ring = self.ring
        maxdeg = max([g.total_degree() for g in ring.ideal_gens] + [1])
        if bound is None:
            bound = ring.nvars + maxdeg + self.d + 2
        from .linalg import kernel_basis
        for n in range(0, bound + 1):
            src = ring.graded_piece_basis(n)
            if not src:
                continue
            m = ExactMatrix(ring.field, ring.mult_matrix(self.W, n),
                            ncols=len(src))
            if kernel_basis(m).ncols:
                return False
        return True

    @property
    def is_affine(self):
        return self.mode == "affine-graded"

    def y_ring(self):
        """Coordinate ring of the zero subscheme Y = V(W)."""
        if self._y_ring is None:
            self._y_ring = self.ring.quotient_by(self.W)
        return self._y_ring

    def dim_x(self):
        """Ambient-count dimension bound for X (used for stabilization
        starting points; an overestimate is safe)."""
        return self.ring.nvars - 1 if self.mode == "projective" else self.ring.nvars

    def describe(self):
        out = self.ring.describe()
        return {"ring": out, "W": self.ring.to_str(self.W), "mode": self.mode,
                "twist_step": self.d}

    def __eq__(self, other):
        return (isinstance(other, MFContext) and self.ring == other.ring
                and self.W == other.W and self.mode == other.mode
                and self.d == other.d)

    def __hash__(self):
        return hash((self.ring, self.W, self.mode, self.d))


class MatrixFactorization:
    """e1: E1 -> E0 and e0: E0 -> E1(d) with both composites W * id."""

    __slots__ = ("ctx", "E1", "E0", "e1", "e0")

    def __init__(self, ctx, e1, e0, check=True):
        self.ctx = ctx
        self.e1 = e1
        self.e0 = e0
        self.E1 = e1.src
        self.E0 = e1.dst
        if e0.src != self.E0 or e0.dst != self.E1.twist(ctx.d):
            raise ValueError("e0 must map E0 -> E1(d)")
        if check:
            report = verify_mf(self)
            if not report["ok"]:
                raise ValueError("not a matrix factorization: %s"
                                 % report["violations"][0])

    @property
    def ring(self):
        return self.ctx.ring

    def is_zero_object(self):
        return self.E1.rank == 0 and self.E0.rank == 0

    # -- the unrolled twisted periodic complex of E -----------------------

    def component_at(self, r):
        """Term of the unrolled complex at cohomological degree r:
        even slots are twists of E0, odd slots twists of E1."""
        d = self.ctx.d
        if r % 2 == 0:
            return self.E0.twist((r // 2) * d)
        return self.E1.twist(((r + 1) // 2) * d)

    def diff_at(self, r):
        """Differential component_at(r) -> component_at(r+1)."""
        d = self.ctx.d
        if r % 2 == 0:
            return self.e0.twist((r // 2) * d)
        return self.e1.twist(((r + 1) // 2) * d)

    def describe(self):
        return {
            "E1": list(self.E1.twists),
            "E0": list(self.E0.twists),
            "e1": self.e1.to_strs(),
            "e0": self.e0.to_strs(),
        }

    def __repr__(self):
        return "MatrixFactorization(E1=%r, E0=%r)" % (self.E1, self.E0)


def verify_mf(E):
    """Check the two W * id composition laws; report the first violation."""
    ctx = E.ctx
    ring = ctx.ring
    violations = []
    c1 = E.e0.compose(E.e1)            # E1 -> E1(d)
    w_id_1 = SheafMap.scalar(ring, ctx.W, E.E1, E.E1.twist(ctx.d))
    diff = c1 - w_id_1
    for r in range(diff.dst.rank):
        for c in range(diff.src.rank):
            if not diff.entries[r][c].is_zero():
                violations.append(
                    "e0*e1 != W*id at entry (%d, %d): %s"
                    % (r, c, ring.to_str(c1.entries[r][c])))
    c0 = E.e1.twist(ctx.d).compose(E.e0)  # E0 -> E0(d)
    w_id_0 = SheafMap.scalar(ring, ctx.W, E.E0, E.E0.twist(ctx.d))
    diff = c0 - w_id_0
    for r in range(diff.dst.rank):
        for c in range(diff.src.rank):
            if not diff.entries[r][c].is_zero():
                violations.append(
                    "e1(d)*e0 != W*id at entry (%d, %d): %s"
                    % (r, c, ring.to_str(c0.entries[r][c])))
    return {"ok": not violations, "violations": violations}


def zero_mf(ctx):
    z = TwistSum()
    m = SheafMap.zero(ctx.ring, z, z)
    return MatrixFactorization(ctx, m, m, check=False)


def twist_mf(E, n):
    return MatrixFactorization(E.ctx, E.e1.twist(n), E.e0.twist(n), check=False)


def shift_mf(E):
    """E[1] = (E0 --(-e0)--> E1(d) --(-e1(d))--> E0(d))."""
    d = E.ctx.d
    return MatrixFactorization(E.ctx, -E.e0, -E.e1.twist(d), check=False)


def direct_sum_mf(E, F):
    if E.ctx != F.ctx:
        raise ValueError("context mismatch")
    ring = E.ctx.ring
    e1 = SheafMap.from_blocks(ring, [E.E1, F.E1], [E.E0, F.E0],
                              [[E.e1, None], [None, F.e1]])
    e0 = SheafMap.from_blocks(ring, [E.E0, F.E0],
                              [E.E1.twist(E.ctx.d), F.E1.twist(E.ctx.d)],
                              [[E.e0, None], [None, F.e0]])
    return MatrixFactorization(E.ctx, e1, e0, check=False)


class StrictMorphism:
    """g1: E1 -> F1, g0: E0 -> F0 with both squares commuting."""

    __slots__ = ("src", "dst", "g1", "g0")

    def __init__(self, src, dst, g1, g0, check=True):
        if src.ctx != dst.ctx:
            raise ValueError("context mismatch")
        self.src = src
        self.dst = dst
        self.g1 = g1
        self.g0 = g0
        if g1.src != src.E1 or g1.dst != dst.E1:
            raise ValueError("g1 must map E1 -> F1")
        if g0.src != src.E0 or g0.dst != dst.E0:
            raise ValueError("g0 must map E0 -> F0")
        if check:
            err = strictness_violation(self)
            if err:
                raise ValueError(err)

    @property
    def ctx(self):
        return self.src.ctx

    def component_at(self, r):
        """The map component_at(r) of src -> component_at(r) of dst in the
        unrolled complexes."""
        d = self.ctx.d
        if r % 2 == 0:
            return self.g0.twist((r // 2) * d)
        return self.g1.twist(((r + 1) // 2) * d)

    @staticmethod
    def identity(E):
        ring = E.ctx.ring
        return StrictMorphism(E, E, SheafMap.identity(ring, E.E1),
                              SheafMap.identity(ring, E.E0), check=False)

    @staticmethod
    def zero(E, F):
        ring = E.ctx.ring
        return StrictMorphism(E, F, SheafMap.zero(ring, E.E1, F.E1),
                              SheafMap.zero(ring, E.E0, F.E0), check=False)

    def compose(self, other):
        """self o other."""
        if other.dst is not self.src and other.dst.describe() != self.src.describe():
            raise ValueError("composition endpoint mismatch")
        return StrictMorphism(other.src, self.dst,
                              self.g1.compose(other.g1),
                              self.g0.compose(other.g0), check=False)

    def __add__(self, other):
        return StrictMorphism(self.src, self.dst, self.g1 + other.g1,
                              self.g0 + other.g0, check=False)

    def __neg__(self):
        return StrictMorphism(self.src, self.dst, -self.g1, -self.g0,
                              check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return StrictMorphism(self.src, self.dst, self.g1.scale(c),
                              self.g0.scale(c), check=False)

    def twist(self, n):
        return StrictMorphism(twist_mf(self.src, n), twist_mf(self.dst, n),
                              self.g1.twist(n), self.g0.twist(n), check=False)

    def shift(self):
        """f[1]: E[1] -> F[1]; components swap (signs cancel)."""
        return StrictMorphism(shift_mf(self.src), shift_mf(self.dst),
                              self.g0, self.g1.twist(self.ctx.d), check=False)

    def is_zero(self):
        return self.g1.is_zero() and self.g0.is_zero()

    def describe(self):
        return {"g1": self.g1.to_strs(), "g0": self.g0.to_strs()}


def strictness_violation(f):
    """None if both squares commute, else a message."""
    d = f.ctx.d
    sq1 = f.g0.compose(f.src.e1) - f.dst.e1.compose(f.g1)
    if not sq1.is_zero():
        return "first square does not commute (g0*e1 != f1*g1)"
    sq0 = f.g1.twist(d).compose(f.src.e0) - f.dst.e0.compose(f.g0)
    if not sq0.is_zero():
        return "second square does not commute (g1(d)*e0 != f0*g0)"
    return None


def cone(f):
    """Mapping cone of a strict morphism f: E -> F.

    cone_1 = E0 (+) F1,  cone_0 = E1(d) (+) F0,
    c1 = [[-e0, 0], [g0, f1]],  c0 = [[-e1(d), 0], [g1(d), f0]].
    """
    E, F = f.src, f.dst
    ctx = E.ctx
    ring = ctx.ring
    d = ctx.d
    c1 = SheafMap.from_blocks(ring, [E.E0, F.E1], [E.E1.twist(d), F.E0],
                              [[-E.e0, None], [f.g0, F.e1]])
    c0 = SheafMap.from_blocks(ring, [E.E1.twist(d), F.E0],
                              [E.E0.twist(d), F.E1.twist(d)],
                              [[-E.e1.twist(d), None], [f.g1.twist(d), F.e0]])
    return MatrixFactorization(ctx, c1, c0, check=False)


def direct_sum_morphism(f, g):
    E = direct_sum_mf(f.src, g.src)
    F = direct_sum_mf(f.dst, g.dst)
    ring = f.ctx.ring
    g1 = SheafMap.from_blocks(ring, [f.src.E1, g.src.E1], [f.dst.E1, g.dst.E1],
                              [[f.g1, None], [None, g.g1]])
    g0 = SheafMap.from_blocks(ring, [f.src.E0, g.src.E0], [f.dst.E0, g.dst.E0],
                              [[f.g0, None], [None, g.g0]])
    return StrictMorphism(E, F, g1, g0, check=False)


class TwistedPeriodicComplex:
    """Two terms and two differentials generate the whole complex via
    C^{q+2} = C^q(d)."""

    __slots__ = ("ctx", "Cm1", "C0", "dm1", "d0")

    def __init__(self, ctx, dm1, d0, check=True):
        self.ctx = ctx
        self.dm1 = dm1          # C^{-1} -> C^0
        self.d0 = d0            # C^0 -> C^{-1}(d)
        self.Cm1 = dm1.src
        self.C0 = dm1.dst
        if d0.src != self.C0 or d0.dst != self.Cm1.twist(ctx.d):
            raise ValueError("d0 must map C0 -> C^{-1}(d)")
        if check:
            if not d0.compose(dm1).is_zero():
                raise ValueError("d0 * dm1 != 0")
            if not dm1.twist(ctx.d).compose(d0).is_zero():
                raise ValueError("dm1(d) * d0 != 0")

    def term(self, q):
        d = self.ctx.d
        if q % 2 == 0:
            return self.C0.twist((q // 2) * d)
        return self.Cm1.twist(((q + 1) // 2) * d)

    def diff(self, q):
        """term(q) -> term(q+1)."""
        d = self.ctx.d
        if q % 2 == 0:
            return self.d0.twist((q // 2) * d)
        return self.dm1.twist(((q + 1) // 2) * d)

    def twist(self, n):
        return TwistedPeriodicComplex(self.ctx, self.dm1.twist(n),
                                      self.d0.twist(n), check=False)

    def __repr__(self):
        return "TwistedPeriodicComplex(C^-1=%r, C^0=%r)" % (self.Cm1, self.C0)


def tpc_of_mf(E):
    """The underlying twisted periodic complex of an MF."""
    return TwistedPeriodicComplex(E.ctx, E.e1, E.e0, check=False)


# -- the mapping complex ----------------------------------------------------


def hom_twists(A, B):
    """Twist list of Hom(A, B) = (+) O(B[r] - A[c]) in row-major (r, c) order."""
    return TwistSum(B[r] - A[c] for r in range(B.rank) for c in range(A.rank))


def _post_compose_matrix(ring, phi, A, B, C):
    """Matrix of Hom(A, B) -> Hom(A, C), psi |-> phi o psi, for phi: B -> C."""
    src = hom_twists(A, B)
    dst = hom_twists(A, C)
    z = ring.zero()
    entries = [[z] * src.rank for _ in range(dst.rank)]
    for r in range(C.rank):
        for c in range(A.rank):
            for s in range(B.rank):
                entries[r * A.rank + c][s * A.rank + c] = phi.entries[r][s]
    return SheafMap(ring, src, dst, entries, check=False)


def _pre_compose_matrix(ring, phi, A, B, C):
    """Matrix of Hom(B, C) -> Hom(A, C), psi |-> psi o phi, for phi: A -> B."""
    src = hom_twists(B, C)
    dst = hom_twists(A, C)
    z = ring.zero()
    entries = [[z] * src.rank for _ in range(dst.rank)]
    for r in range(C.rank):
        for c in range(A.rank):
            for s in range(B.rank):
                entries[r * A.rank + c][r * B.rank + s] = phi.entries[s][c]
    return SheafMap(ring, src, dst, entries, check=False)


def mapping_complex(E, F):
    """The twisted periodic complex Hom_MF(E, F).

    C^0   = Hom(E0, F0) (+) Hom(E1, F1)
    C^-1  = Hom(E0, F1) (+) Hom(E1, F0(-d))
    d^-1  = [[(f1)_*, -e0^*], [-e1^*, (f0)_*]]
    d^0   = [[(f0)_*,  e0^*], [ e1^*, (f1)_*]]
    """
    if E.ctx != F.ctx:
        raise ValueError("context mismatch")
    ctx = E.ctx
    ring = ctx.ring
    d = ctx.d
    E0, E1, F0, F1 = E.E0, E.E1, F.E0, F.E1
    F0m = F0.twist(-d)

    h_e0f0 = hom_twists(E0, F0)
    h_e1f1 = hom_twists(E1, F1)
    h_e0f1 = hom_twists(E0, F1)
    h_e1f0m = hom_twists(E1, F0m)

    # d^{-1}: C^{-1} -> C^0
    b11 = _post_compose_matrix(ring, F.e1, E0, F1, F0)          # (f1)_*
    b12 = -_pre_compose_matrix(ring, E.e0, E0, E1.twist(d), F0) # -e0^*, note:
    # psi in Hom(E1, F0(-d)) is used as psi(d): E1(d) -> F0; precompose e0
    b12 = SheafMap(ring, h_e1f0m, h_e0f0, b12.entries, check=False)
    b21 = -_pre_compose_matrix(ring, E.e1, E1, E0, F1)          # -e1^*
    b22 = _post_compose_matrix(ring, F.e0.twist(-d), E1, F0m, F1)  # (f0)_*
    dm1 = SheafMap.from_blocks(ring, [h_e0f1, h_e1f0m], [h_e0f0, h_e1f1],
                               [[b11, b12], [b21, b22]])

    # d^0: C^0 -> C^{-1}(d) = Hom(E0, F1)(d) (+) Hom(E1, F0)
    c11 = _post_compose_matrix(ring, F.e0, E0, F0, F1.twist(d))  # (f0)_*
    c11 = SheafMap(ring, h_e0f0, h_e0f1.twist(d), c11.entries, check=False)
    c12 = _pre_compose_matrix(ring, E.e0, E0, E1.twist(d), F1.twist(d))  # e0^*
    c12 = SheafMap(ring, h_e1f1, h_e0f1.twist(d), c12.entries, check=False)
    c21 = _pre_compose_matrix(ring, E.e1, E1, E0, F0)            # e1^*
    c22 = _post_compose_matrix(ring, F.e1, E1, F1, F0)           # (f1)_*
    c21 = SheafMap(ring, h_e0f0, h_e1f0m.twist(d), c21.entries, check=False)
    c22 = SheafMap(ring, h_e1f1, h_e1f0m.twist(d), c22.entries, check=False)
    d0 = SheafMap.from_blocks(ring, [h_e0f0, h_e1f1],
                              [h_e0f1.twist(d), h_e1f0m.twist(d)],
                              [[c11, c12], [c21, c22]])
    return TwistedPeriodicComplex(ctx, dm1, d0)


def pack_morphism(E, F, g0, g1):
    """Entries of (g0, g1) flattened in the C^0 block order (row-major)."""
    out = []
    for r in range(F.E0.rank):
        for c in range(E.E0.rank):
            out.append(g0.entries[r][c])
    for r in range(F.E1.rank):
        for c in range(E.E1.rank):
            out.append(g1.entries[r][c])
    return out


def unpack_c0(E, F, polys):
    """Split a C^0 entry list back into matrices (gamma0, gamma1)."""
    ring = E.ctx.ring
    n0 = F.E0.rank * E.E0.rank
    it0 = iter(polys[:n0])
    g0 = [[next(it0) for _ in range(E.E0.rank)] for _ in range(F.E0.rank)]
    it1 = iter(polys[n0:])
    g1 = [[next(it1) for _ in range(E.E1.rank)] for _ in range(F.E1.rank)]
    return (SheafMap(ring, E.E0, F.E0, g0),
            SheafMap(ring, E.E1, F.E1, g1))


def strict_from_cycle(E, F, polys):
    """A degree-0 cycle (gamma0, gamma1) of the mapping complex corresponds
    to the strict morphism (g0, g1) = (gamma0, -gamma1)."""
    gamma0, gamma1 = unpack_c0(E, F, polys)
    return StrictMorphism(E, F, -gamma1, gamma0)


def cycle_from_strict(f):
    """Inverse of strict_from_cycle."""
    return pack_morphism(f.src, f.dst, f.g0, -f.g1)


def unpack_cm1(E, F, polys):
    """Split a C^{-1} entry list into (s: E0 -> F1, t_m: E1 -> F0(-d)).

    The homotopy pair used by solve_homotopy is (s, t) with t = t_m(d):
    E1(d) -> F0."""
    ring = E.ctx.ring
    d = E.ctx.d
    n0 = F.E1.rank * E.E0.rank
    s = [[polys[r * E.E0.rank + c] for c in range(E.E0.rank)]
         for r in range(F.E1.rank)]
    t = [[polys[n0 + r * E.E1.rank + c] for c in range(E.E1.rank)]
         for r in range(F.E0.rank)]
    return (SheafMap(ring, E.E0, F.E1, s),
            SheafMap(ring, E.E1, F.E0.twist(-d), t))


def solve_homotopy(f):
    """Find (s: E0 -> F1, t: E1(d) -> F0) with
        g1 = s o e1 + f0(-d) o t(-d)   and   g0 = f1 o s + t o e0,
    or return None (definitive: the linear system ranges over all
    admissible homogeneous entries)."""
    E, F = f.src, f.dst
    ctx = E.ctx
    ring = ctx.ring
    field = ring.field
    d = ctx.d

    # unknown slots: (tag, r, c, monomial) in deterministic order
    unknowns = []
    for r in range(F.E1.rank):
        for c in range(E.E0.rank):
            deg = F.E1[r] - E.E0[c]
            for m in ring.graded_piece_basis(deg):
                unknowns.append(("s", r, c, m))
    for r in range(F.E0.rank):
        for c in range(E.E1.rank):
            deg = F.E0[r] - (E.E1[c] + d)
            for m in ring.graded_piece_basis(deg):
                unknowns.append(("t", r, c, m))

    # equation coordinates: entries of two residual matrices, expanded in
    # the monomial basis of their graded pieces
    eq_slots = []
    for r in range(F.E1.rank):
        for c in range(E.E1.rank):
            deg = F.E1[r] - E.E1[c]
            basis = ring.graded_piece_basis(deg)
            eq_slots.append(("1", r, c, deg, basis,
                             {m: i for i, m in enumerate(basis)}))
    for r in range(F.E0.rank):
        for c in range(E.E0.rank):
            deg = F.E0[r] - E.E0[c]
            basis = ring.graded_piece_basis(deg)
            eq_slots.append(("0", r, c, deg, basis,
                             {m: i for i, m in enumerate(basis)}))
    offsets = []
    total = 0
    for slot in eq_slots:
        offsets.append(total)
        total += len(slot[4])

    def eval_pair(s_map, t_map):
        """coords of (s o e1 + f0(-d) o t, f1 o s + t(d) o e0)."""
        lhs1 = s_map.compose(E.e1) + F.e0.twist(-d).compose(t_map)
        lhs0 = F.e1.compose(s_map) + t_map.twist(d).compose(E.e0)
        vec = [field.zero()] * total
        for slot, off in zip(eq_slots, offsets):
            which, r, c, deg, basis, index = slot
            p = (lhs1 if which == "1" else lhs0).entries[r][c]
            for e, coeff in p.terms.items():
                vec[off + index[e]] = coeff
        return vec

    cols = []
    for tag, r, c, m in unknowns:
        s_map = SheafMap.zero(ring, E.E0, F.E1)
        t_map = SheafMap.zero(ring, E.E1, F.E0.twist(-d))
        mono = Poly.monomial(field, ring.nvars, m)
        if tag == "s":
            s_map.entries[r][c] = mono
        else:
            t_map.entries[r][c] = mono
        cols.append(eval_pair(s_map, t_map))

    rhs = [field.zero()] * total
    for slot, off in zip(eq_slots, offsets):
        which, r, c, deg, basis, index = slot
        p = (f.g1 if which == "1" else f.g0).entries[r][c]
        for e, coeff in p.terms.items():
            rhs[off + index[e]] = coeff

    from .linalg import solve
    A = ExactMatrix.from_columns(field, cols, total)
    x = solve(A, rhs)
    if x is None:
        return None
    s_map = SheafMap.zero(ring, E.E0, F.E1)
    t_map = SheafMap.zero(ring, E.E1, F.E0.twist(-d))
    for (tag, r, c, m), coeff in zip(unknowns, x):
        if field.is_zero(coeff):
            continue
        mono = Poly.monomial(field, ring.nvars, m, coeff)
        if tag == "s":
            s_map.entries[r][c] = ring.normal_form(s_map.entries[r][c] + mono)
        else:
            t_map.entries[r][c] = ring.normal_form(t_map.entries[r][c] + mono)
    return (SheafMap(ring, E.E0, F.E1, s_map.entries),
            SheafMap(ring, E.E1, F.E0.twist(-d), t_map.entries).twist(d))


def is_nullhomotopic(f):
    return solve_homotopy(f) is not None
