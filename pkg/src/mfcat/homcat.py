"""Hom-sets in the naive and hypercohomology homotopy categories,
Koszul stabilization with self-checking certificates, composition of
stabilized classes, and the contractibility/weak-equivalence predicates.
"""

from .cohomology import GlobalSections, vanishing_threshold
from .koszul import koszul_truncated, stabilized_mf, tensor_mf, tot_chain_morphism
from .linalg import CosetReducer, ExactMatrix, kernel_basis, rank, subquotient_dim
from .mf import (MatrixFactorization, SheafMap, StrictMorphism, cone,
                 mapping_complex, solve_homotopy, strict_from_cycle,
                 cycle_from_strict)
from .modules import contains_irrelevant_power, fitting_ideal
from .poly import Poly


class HomSpace:
    """A computed Hom-set: dimension, canonical basis data, model tag."""

    def __init__(self, src, dst, model, dimension, basis, tower,
                 certificate=None, stabilized_src=None, reducer=None,
                 cycle_space=None):
        self.src = src
        self.dst = dst
        self.model = model            # 'naive' | 'hyper'
        self.dimension = dimension
        self.basis = basis            # list of StabilizedClass, or None
        self.tower = tower            # tuple of Koszul levels j
        self.certificate = certificate
        self.stabilized_src = stabilized_src if stabilized_src is not None else src
        self.reducer = reducer        # CosetReducer modulo boundaries
        self.cycle_space = cycle_space

    def describe(self):
        out = {"model": self.model, "dim": self.dimension,
               "tower": list(self.tower)}
        if self.certificate is not None:
            out["certificate"] = self.certificate.describe()
        if self.basis is not None:
            out["basis"] = [cls.rep.describe() for cls in self.basis]
        return out


class StabilizedClass:
    """A morphism class E -> F represented by a strict morphism out of the
    stabilization of E along `tower` (applied left to right, outermost
    last)."""

    def __init__(self, src, dst, tower, rep):
        self.src = src
        self.dst = dst
        self.tower = tuple(tower)
        self.rep = rep               # StrictMorphism: stabilize(src, tower) -> dst

    @staticmethod
    def identity(E):
        return StabilizedClass(E, E, (), StrictMorphism.identity(E))


def gamma_complex_matrices(E, F, gs):
    """Gamma applied to the mapping complex: (M_in, M_out) around degree 0."""
    C = mapping_complex(E, F)
    m_in = gs.sheafmap_matrix(C.dm1)
    m_out = gs.sheafmap_matrix(C.d0)
    return C, m_in, m_out


def hom_naive(E, F, gs=None, want_basis=True):
    """Strict morphisms modulo homotopy: H^0 of Gamma(mapping complex)."""
    if E.ctx != F.ctx:
        raise ValueError("context mismatch")
    gs = gs or GlobalSections(E.ctx)
    if E.is_zero_object() or F.is_zero_object():
        return HomSpace(E, F, "naive", 0, [], (), reducer=None)
    C, m_in, m_out = gamma_complex_matrices(E, F, gs)
    Z = kernel_basis(m_out)
    dim = subquotient_dim(Z, m_in)   # also checks boundaries lie in cycles
    reducer = CosetReducer(m_in)
    basis = None
    degrees = list(C.C0.twists)
    if want_basis and gs.monomial_path(degrees):
        basis = _cycle_basis_classes(E, F, gs, Z, reducer)
        assert len(basis) == dim
    return HomSpace(E, F, "naive", dim, basis, (), reducer=reducer,
                    cycle_space=Z)


def _cycle_basis_classes(E, F, gs, Z, reducer):
    """Coset representatives of ker/im as verified strict morphisms."""
    field = E.ctx.ring.field
    picked = []
    picked_matrix = None
    classes = []
    for j in range(Z.ncols):
        v = reducer.reduce(Z.column(j))
        if all(field.is_zero(a) for a in v):
            continue
        cand = picked + [v]
        M = ExactMatrix.from_columns(field, cand, Z.nrows)
        if rank(M) == len(cand):
            picked.append(v)
            polys = _c0_coords_to_polys(E, F, gs, v)
            f = strict_from_cycle(E, F, polys)
            classes.append(StabilizedClass(E, F, (), f))
    return classes


def _c0_coords_to_polys(E, F, gs, coords):
    """Convert Gamma(C^0) coordinates (monomial fast path) to entry polys."""
    ring = E.ctx.ring
    field = ring.field
    polys = []
    pos = 0
    from .mf import hom_twists
    twists = list(hom_twists(E.E0, F.E0).twists) + \
        list(hom_twists(E.E1, F.E1).twists)
    for a in twists:
        basis = ring.graded_piece_basis(a)
        p = ring.zero()
        for m in basis:
            c = coords[pos]
            pos += 1
            if not field.is_zero(c):
                p = p + Poly.monomial(field, ring.nvars, m, c)
        polys.append(p)
    return polys


def class_coords(cls, gs=None, hom_space=None):
    """Canonical coordinates of a class: the boundary-reduced Gamma(C^0)
    vector of its representative (classes are equal iff these agree, at
    equal towers)."""
    E = cls.rep.src
    F = cls.dst
    gs = gs or GlobalSections(F.ctx)
    if hom_space is None:
        hom_space = hom_naive(E, F, gs, want_basis=False)
    vec = _strict_to_c0_coords(cls.rep, gs)
    return tuple(hom_space.reducer.reduce(vec))


def _strict_to_c0_coords(f, gs):
    """Coordinates of the degree-0 cycle of a strict morphism in Gamma(C^0)."""
    E, F = f.src, f.dst
    ring = E.ctx.ring
    field = ring.field
    polys = cycle_from_strict(f)
    coords = []
    from .mf import hom_twists
    twists = list(hom_twists(E.E0, F.E0).twists) + \
        list(hom_twists(E.E1, F.E1).twists)
    for p, a in zip(polys, twists):
        basis = ring.graded_piece_basis(a)
        index = {m: i for i, m in enumerate(basis)}
        vec = [field.zero()] * len(basis)
        p = ring.normal_form(p)
        for e, c in p.terms.items():
            vec[index[e]] = c
        coords.extend(vec)
    return coords


# -- stabilization -------------------------------------------------------------


class StabilizationCertificate:
    """Records the chosen Koszul level and the twist-inventory inequality
    that certifies naive = hypercohomology Hom out of the stabilization."""

    def __init__(self, j, k, threshold, threshold_tag, rows, min_twist, M):
        self.j = j
        self.k = k
        self.threshold = threshold
        self.threshold_tag = threshold_tag
        self.rows = rows              # {q: sorted twist list}
        self.min_twist = min_twist
        self.M = M

    def check(self):
        return self.min_twist >= self.threshold

    def describe(self):
        return {"j": self.j, "k": self.k, "threshold": self.threshold,
                "threshold_tag": self.threshold_tag, "M": self.M,
                "rows": {str(q): list(tw) for q, tw in self.rows.items()},
                "min_twist": self.min_twist, "verified": self.check()}


def _stabilized_component_twists(P, E):
    """Twist inventories (E'_1, E'_0) of Tot(P tensor E) without matrices."""
    from .mf import TwistSum
    degs = P.degrees()
    t1, t0 = [], []
    for p in degs:
        base = P.term(p)
        for level, acc in ((-1, t1), (0, t0)):
            comp = E.component_at(level - p)
            for a in base:
                acc.extend(c + a for c in comp.twists)
    return TwistSum(t1), TwistSum(t0)


def _mapping_row_twists(E1p, E0p, F, d, q):
    """Twist list of Hom_MF(E', F)^q from component inventories."""
    c0 = [b - a for b in F.E0 for a in E0p] + [b - a for b in F.E1 for a in E1p]
    cm1 = [b - a for b in F.E1 for a in E0p] + \
        [b - d - a for b in F.E0 for a in E1p]
    if q % 2 == 0:
        return sorted(t + (q // 2) * d for t in c0)
    return sorted(t + ((q + 1) // 2) * d for t in cm1)


def stabilize(E, F, M=0, j_max=12, threshold=None, gs=None):
    """Replace E by Tot(P(j) tensor E) with the least j whose mapping-complex
    twist inventory clears the vanishing threshold in all rows q >= M-m-1.

    Returns (E', epsilon: E' -> E, certificate)."""
    ctx = E.ctx
    ring = ctx.ring
    if ctx.is_affine:
        raise ValueError("stabilization is a projective-mode operation")
    if E.is_zero_object():
        cert = StabilizationCertificate(0, 0, 0, "trivial", {}, 0, M)
        return E, StrictMorphism.identity(E), cert
    if threshold is None:
        n0, tag = vanishing_threshold(ctx)
    else:
        n0, tag = threshold
    m = ring.nvars - 1
    d = ctx.d
    q_min = M - m - 1
    chosen = None
    for j in range(1, j_max + 1):
        P, aug = koszul_truncated(ring, j)
        E1p, E0p = _stabilized_component_twists(P, E)
        rows = {q: _mapping_row_twists(E1p, E0p, F, d, q)
                for q in (q_min, q_min + 1)}
        min_twist = min(min(tw) for tw in rows.values() if tw) \
            if any(rows.values()) else n0
        if min_twist >= n0:
            k = P.term(0).rank
            cert = StabilizationCertificate(j, k, n0, tag, rows, min_twist, M)
            chosen = (P, aug, cert)
            break
    if chosen is None:
        raise RuntimeError("no Koszul level up to %d clears the vanishing "
                           "threshold" % j_max)
    P, aug, cert = chosen
    Ep, eps = stabilized_mf(P, aug, E)
    # self-check: the certificate inventory matches the built object
    got = {q: _mapping_row_twists(Ep.E1, Ep.E0, F, d, q)
           for q in (q_min, q_min + 1)}
    if got != cert.rows or not cert.check():
        raise AssertionError("stabilization certificate failed its re-check")
    return Ep, eps, cert


def hom_H(E, F, gs=None, want_basis=True):
    """Hom in the hypercohomology homotopy category.

    Affine-graded mode: equals hom_naive.  Projective mode: hom_naive out
    of the Koszul stabilization of the source, with the certificate."""
    if E.ctx != F.ctx:
        raise ValueError("context mismatch")
    gs = gs or GlobalSections(E.ctx)
    if E.ctx.is_affine:
        hs = hom_naive(E, F, gs, want_basis=want_basis)
        return HomSpace(E, F, "hyper", hs.dimension, hs.basis, (),
                        reducer=hs.reducer, cycle_space=hs.cycle_space)
    Ep, eps, cert = stabilize(E, F, 0, gs=gs)
    hs = hom_naive(Ep, F, gs, want_basis=want_basis)
    basis = None
    if hs.basis is not None:
        basis = [StabilizedClass(E, F, (cert.j,), cls.rep)
                 for cls in hs.basis]
    return HomSpace(E, F, "hyper", hs.dimension, basis, (cert.j,),
                    certificate=cert, stabilized_src=Ep, reducer=hs.reducer,
                    cycle_space=hs.cycle_space)


# -- composition ----------------------------------------------------------------


def apply_tower(E, tower):
    """Stabilize E along a tower of Koszul levels (left to right)."""
    cur = E
    for j in tower:
        P, aug = koszul_truncated(E.ctx.ring, j)
        cur, _eps = stabilized_mf(P, aug, cur)
    return cur


def _tensor_tot_morphism(P, aug, f):
    """The strict morphism Tot(P tensor src) -> Tot(P tensor dst) induced by
    a strict morphism f."""
    DP = tensor_mf(P, f.src)
    DQ = tensor_mf(P, f.dst)
    chain = {}
    for p in DP.degrees():
        base = P.term(p)
        blocks1 = [[f.g1.twist(a) if i == jj else None
                    for jj in range(base.rank)] for i, a in enumerate(base)]
        blocks0 = [[f.g0.twist(a) if i == jj else None
                    for jj in range(base.rank)] for i, a in enumerate(base)]
        g1 = SheafMap.from_blocks(f.ctx.ring,
                                  [f.src.E1.twist(a) for a in base],
                                  [f.dst.E1.twist(a) for a in base], blocks1)
        g0 = SheafMap.from_blocks(f.ctx.ring,
                                  [f.src.E0.twist(a) for a in base],
                                  [f.dst.E0.twist(a) for a in base], blocks0)
        chain[p] = StrictMorphism(DP.term(p), DQ.term(p), g1, g0, check=False)
    return tot_chain_morphism(DP, DQ, chain)


def compose_h(beta, alpha):
    """Composition of stabilized classes: alpha: E -> F, beta: F -> G.

    The functor Tot(P(j) tensor -) for each level in beta's tower is applied
    to alpha's representative, then beta's representative is composed on;
    the result lives at the concatenated tower alpha.tower + beta.tower."""
    if alpha.dst.describe() != beta.src.describe():
        raise ValueError("classes are not composable")
    rep = alpha.rep
    for j in beta.tower:
        P, aug = koszul_truncated(rep.ctx.ring, j)
        rep = _tensor_tot_morphism(P, aug, rep)
    # rep: apply_tower(src-of-alpha-rep, beta.tower) -> apply_tower(F, beta.tower)
    composed = beta.rep.compose(rep)
    return StabilizedClass(alpha.src, beta.dst,
                           alpha.tower + beta.tower, composed)


# -- contractibility predicates ---------------------------------------------------


def is_contractible(E):
    """Global contractibility: the identity is nullhomotopic."""
    if E.is_zero_object():
        return True
    return solve_homotopy(StrictMorphism.identity(E)) is not None


def _connected_components(E):
    """Partition of E into direct summands along the block structure of
    (e1, e0).  Returns a list of (E1 indices, E0 indices), or None if E is
    a single block."""
    n1, n0 = E.E1.rank, E.E0.rank
    parent = list(range(n1 + n0))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for r in range(n0):
        for c in range(n1):
            if not E.e1.entries[r][c].is_zero():
                union(n1 + r, c)
    for r in range(n1):
        for c in range(n0):
            if not E.e0.entries[r][c].is_zero():
                union(r, n1 + c)
    groups = {}
    for idx in range(n1 + n0):
        groups.setdefault(find(idx), []).append(idx)
    if len(groups) <= 1:
        return None
    out = []
    for key in sorted(groups):
        idxs = groups[key]
        out.append(([i for i in idxs if i < n1],
                    [i - n1 for i in idxs if i >= n1]))
    return out


def _sub_mf(E, idx1, idx0):
    from .mf import TwistSum
    ring = E.ctx.ring
    E1 = TwistSum([E.E1[i] for i in idx1])
    E0 = TwistSum([E.E0[i] for i in idx0])
    e1 = SheafMap(ring, E1, E0,
                  [[E.e1.entries[r][c] for c in idx1] for r in idx0],
                  check=False)
    e0 = SheafMap(ring, E0, E1.twist(E.ctx.d),
                  [[E.e0.entries[r][c] for c in idx0] for r in idx1],
                  check=False)
    return MatrixFactorization(E.ctx, e1, e0, check=False)


def _sheaf_zero(gens, ring, B):
    """Positive certificate that each generator restricts to zero on Proj:
    normal form zero, or annihilated by the B-th power of every variable."""
    gens = [ring.normal_form(p) for p in gens]
    gens = [p for p in gens if not p.is_zero()]
    if not gens:
        return True
    for N in range(1, B + 1):
        ok = True
        for p in gens:
            for i in range(ring.nvars):
                xi = Poly.monomial(ring.field, ring.nvars,
                                   tuple(N if k == i else 0
                                         for k in range(ring.nvars)))
                if not ring.normal_form(xi * p).is_zero():
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def _ideal_is_unit(gens, ring):
    """1 in (gens) + I, decided by a Groebner basis."""
    from .ring import buchberger, reduce_poly
    gens = [ring.normal_form(p) for p in gens]
    gens = [p for p in gens if not p.is_zero()]
    if not gens:
        return False
    basis = buchberger(gens + ring.ideal_gens)
    return reduce_poly(ring.one(), basis).is_zero()


def locally_contractible(E, saturation_bound=None, fitting_cap=9):
    """Three-valued local contractibility via local freeness of the
    restricted cokernel (Fitting-ideal scan over R/(W)).

    Affine-graded mode is a complete decision (graded modules over a
    graded-connected ring are projective iff free).  Projective mode
    returns true on a positive certificate and inconclusive otherwise
    (rank-jumping sheaves on disconnected hypersurfaces prevent a bounded
    false certificate)."""
    ctx = E.ctx
    if not ctx.w_regular:
        raise ValueError("locally_contractible requires a regular W")
    if E.is_zero_object():
        return "true"
    comps = _connected_components(E)
    if comps is not None:
        results = [locally_contractible(_sub_mf(E, i1, i0),
                                        saturation_bound, fitting_cap)
                   for (i1, i0) in comps]
        if all(r == "true" for r in results):
            return "true"
        if any(r == "false" for r in results):
            return "false"
        return "inconclusive"
    if is_contractible(E):
        return "true"
    from .hypersurface import coker_module
    M = coker_module(E)
    g = M.n_gens
    if g == 0:
        return "true"
    if g > fitting_cap:
        return "inconclusive"
    ry = M.ring
    if saturation_bound is None:
        from .modules import default_saturation_bound
        cols = [p for col in M.columns for p in col]
        saturation_bound = default_saturation_bound(ry, cols or [ry.one()])
    fitt = {r: fitting_ideal(M, r) for r in range(-1, g + 1)}
    for r in range(0, g + 1):
        lower = fitt[r - 1]
        upper = fitt[r]
        if ctx.is_affine:
            low_zero = all(ry.normal_form(p).is_zero() for p in lower)
            up_unit = _ideal_is_unit(upper, ry)
        else:
            low_zero = _sheaf_zero(lower, ry, saturation_bound)
            up_unit = contains_irrelevant_power(upper, ry,
                                                saturation_bound) is not None
        if low_zero and up_unit:
            return "true"
    if ctx.is_affine:
        return "false"
    return "inconclusive"


def weak_equivalence(f, **kw):
    """A strict morphism is a weak equivalence iff its cone is locally
    contractible."""
    return locally_contractible(cone(f), **kw)


def prop28_report(E, **kw):
    """Contractibility condition report: (1) the identity is nullhomotopic,
    (4) the restricted cokernel is locally free on Y.  The implication
    (1) => (4) is asserted as a hard invariant."""
    cond1 = is_contractible(E)
    cond4 = locally_contractible(E, **kw)
    if cond1 and cond4 == "false":
        raise AssertionError(
            "contractibility implication violated: identity nullhomotopic "
            "but restricted cokernel certified non-locally-free")
    return {"condition1_contractible": cond1,
            "condition4_locally_free_coker": cond4,
            "consistent": True}
