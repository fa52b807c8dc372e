"""Finite-dimensional groupoid algebras: convolution, regular representations,
the restriction expectation, block structure and tight representations.

Groupoid functions are numpy vectors indexed by arrow id.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import block_diag, null_space

from .errors import NotARepresentation, NotSubgroupoid
from .germs import FiniteGroupoid, GermGroupoid, is_subgroupoid
from .isotropy import s_iso, z_region
from .semigroup import InverseSemigroup, minimal_covers
from .verdict import Verdict

ATOL = 1e-10
RANK_TOL = 1e-8


# -- functions on arrows ----------------------------------------------------

def zeros(G, dtype=complex):
    return np.zeros(len(G), dtype=dtype)


def indicator(G, arrows, dtype=np.int64):
    f = np.zeros(len(G), dtype=dtype)
    f[list(arrows)] = 1
    return f


def delta(G, g, dtype=complex):
    return indicator(G, [g], dtype)


def unit_indicator(G, units=None, dtype=np.int64):
    """1_U for a set U of unit indices (all units by default)."""
    if units is None:
        units = range(G.n_units)
    return indicator(G, [G.units[u] for u in units], dtype)


def generator(G: GermGroupoid, s, dtype=np.int64):
    """T_s = 1_{Theta(s, D_{s*s})}."""
    return indicator(G, G.bisection(s), dtype)


def convolve(G: FiniteGroupoid, f, g):
    """(fg)(k) = sum over ij = k of f(i) g(j); integer inputs stay integer."""
    I, J, K = G.composable
    out = np.zeros(len(G), dtype=np.result_type(f, g))
    np.add.at(out, K, f[I] * g[J])
    return out


def adjoint(G: FiniteGroupoid, f):
    return np.conj(np.asarray(f)[list(G.inv)])


def product_of(G, *fs):
    out = fs[0]
    for f in fs[1:]:
        out = convolve(G, out, f)
    return out


# -- representations --------------------------------------------------------

def regular_rep(G: FiniteGroupoid, u, f):
    """pi_u(f) on l2(G_u): delta_a -> sum_g f(g) delta_{ga}."""
    basis = G.arrows_from(u)
    pos = {a: k for k, a in enumerate(basis)}
    M = np.zeros((len(basis), len(basis)), dtype=complex)
    for a in basis:
        for g in range(len(G)):
            if f[g] != 0 and G.src[g] == G.rng[a]:
                M[pos[int(G.mul[g, a])], pos[a]] += f[g]
    return M


def full_rep(G, f, units=None):
    """Direct sum of pi_u over the given units (all by default); faithful."""
    if units is None:
        units = range(G.n_units)
    blocks = [regular_rep(G, u, f) for u in units]
    if not blocks:
        return np.zeros((0, 0), dtype=complex)  # block_diag() would give shape (1, 0)
    return block_diag(*blocks)


def orbit_representatives(G):
    return [orb[0] for orb in G.orbits]


def reduced_norm(G, f) -> float:
    return max((np.linalg.norm(regular_rep(G, u, f), 2) for u in orbit_representatives(G)), default=0.0)


def random_function(G, rng, support=None):
    f = zeros(G)
    idx = range(len(G)) if support is None else sorted(support)
    for g in idx:
        f[g] = complex(rng.standard_normal(), rng.standard_normal())
    return f


def check_regular_reps(G, rng, samples=5, atol=ATOL) -> Verdict:
    """pi_u is a *-homomorphism on sampled pairs, and the C*-identity holds."""
    for _ in range(samples):
        f, g = random_function(G, rng), random_function(G, rng)
        for u in range(G.n_units):
            pf, pg = regular_rep(G, u, f), regular_rep(G, u, g)
            if not np.allclose(regular_rep(G, u, convolve(G, f, g)), pf @ pg, atol=atol):
                return Verdict(False, witness=("product", u))
            if not np.allclose(regular_rep(G, u, adjoint(G, f)), pf.conj().T, atol=atol):
                return Verdict(False, witness=("adjoint", u))
        n = reduced_norm(G, f)
        if abs(reduced_norm(G, convolve(G, adjoint(G, f), f)) - n * n) > 1e-8 * max(1.0, n * n):
            return Verdict(False, witness=("C*-identity",))
    return Verdict(True)


# -- expectation ------------------------------------------------------------

def _check_sub(G, F_sub):
    F_sub = frozenset(F_sub)
    if not G.unit_set <= F_sub or not is_subgroupoid(G, F_sub):
        raise NotSubgroupoid("expectation target must be a subgroupoid containing the units")
    return F_sub


def expectation(G: FiniteGroupoid, F_sub, f):
    """Restriction of f to the subgroupoid F_sub."""
    F_sub = _check_sub(G, F_sub)
    return f * indicator(G, F_sub, dtype=np.result_type(f))


def expectation_formula(S: InverseSemigroup, G: GermGroupoid, F_sub=None, spec=None) -> Verdict:
    """E(T_s) = T_s 1_{Z_s} for every s, compared as integer vectors.

    z_region already insists that every candidate cover of W_s gives the
    same Z_s, so each comparison is against a cover-independent value.
    """
    if spec is None:
        spec = G.spectrum
    if F_sub is None:
        siso = s_iso(S)
        F_sub = [g for g in range(len(G)) if any(t in siso for t in G.classes[g])]
    for s in range(len(S)):
        if s == S.zero:
            continue
        T = generator(G, s)
        lhs = expectation(G, F_sub, T)
        rhs = convolve(G, T, unit_indicator(G, z_region(S, s, spec)))
        if not np.array_equal(lhs, rhs):
            return Verdict(False, witness=s, detail=f"mismatch for {S.elements[s]}")
    return Verdict(True)


def faithfulness_check(G: FiniteGroupoid, F_sub, rng=None, samples=20, tol=RANK_TOL) -> Verdict:
    """E(f*f) = 0 forces f = 0.

    The trace of the faithful representation is a faithful state-like
    functional, so f -> tr pi(E(f*f)) is a Hermitian form whose kernel is
    exactly the set of f with E(f*f) = 0.  Faithful iff the form is
    positive definite; random samples are checked as a second route.
    """
    F_sub = _check_sub(G, F_sub)
    n = len(G)
    if n == 0:
        return Verdict(True, detail="zero algebra")
    basis = [delta(G, g) for g in range(n)]
    Q = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            b = expectation(G, F_sub, convolve(G, adjoint(G, basis[i]), basis[j]))
            Q[i, j] = np.trace(full_rep(G, b))
    eig = np.linalg.eigvalsh((Q + Q.conj().T) / 2)
    if eig.min() <= tol:
        return Verdict(False, witness=float(eig.min()), detail="form not positive definite")
    if rng is None:
        rng = np.random.default_rng(0)
    for _ in range(samples):
        f = random_function(G, rng)
        e = expectation(G, F_sub, convolve(G, adjoint(G, f), f))
        if np.linalg.norm(full_rep(G, e), 2) <= tol * np.linalg.norm(f):
            return Verdict(False, witness=f, detail="sample killed by E")
    return Verdict(True, witness=float(eig.min()))


def expectation_properties(G, F_sub, rng, samples=5, atol=ATOL) -> Verdict:
    """Idempotent, unital, positive, and a bimodule map over the subalgebra."""
    F_sub = _check_sub(G, F_sub)
    one = unit_indicator(G, dtype=complex)
    if not np.allclose(expectation(G, F_sub, one), one, atol=atol):
        return Verdict(False, witness="unital")
    for _ in range(samples):
        f = random_function(G, rng)
        a, b = random_function(G, rng, F_sub), random_function(G, rng, F_sub)
        Ef = expectation(G, F_sub, f)
        if not np.allclose(expectation(G, F_sub, Ef), Ef, atol=atol):
            return Verdict(False, witness="idempotent")
        P = full_rep(G, expectation(G, F_sub, convolve(G, adjoint(G, f), f)))
        if np.linalg.eigvalsh((P + P.conj().T) / 2).min(initial=0.0) < -1e-8:
            return Verdict(False, witness="positive")
        lhs = expectation(G, F_sub, product_of(G, a, f, b))
        if not np.allclose(lhs, product_of(G, a, Ef, b), atol=1e-8):
            return Verdict(False, witness="bimodule")
    return Verdict(True)


# -- block structure --------------------------------------------------------

def _rank(vectors, tol=RANK_TOL):
    if len(vectors) == 0:
        return 0
    M = np.array(vectors)
    s = np.linalg.svd(M, compute_uv=False)
    return int((s > tol * max(1.0, s[0])).sum())


def _span_basis(vectors, tol=RANK_TOL):
    """Orthonormal rows spanning the given vectors."""
    if len(vectors) == 0:
        return np.zeros((0, 0))
    M = np.array(vectors)
    _, s, vh = np.linalg.svd(M, full_matrices=False)
    r = int((s > tol * max(1.0, s[0])).sum())
    return vh[:r]


def center(G: FiniteGroupoid):
    """Basis (rows) of the center of the convolution algebra."""
    n = len(G)
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    eqs = []
    for h in range(n):
        dh = delta(G, h)
        # column g of the commutator map applied to delta_g
        M = np.array([convolve(G, dh, delta(G, g)) - convolve(G, delta(G, g), dh) for g in range(n)]).T
        eqs.append(M)
    return null_space(np.vstack(eqs)).T


def minimal_central_projections(G: FiniteGroupoid, seed=0, attempts=10):
    """Minimal central projections via the spectral projections of a random
    self-adjoint central element (Lagrange interpolation in its eigenvalues).
    """
    Z = center(G)
    k = len(Z)
    if k == 0:
        return []
    one = unit_indicator(G, dtype=complex)
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        c = sum(complex(rng.standard_normal(), rng.standard_normal()) * z for z in Z)
        c = (c + adjoint(G, c)) / 2
        # matrix of multiplication by c restricted to the center
        images = np.array([convolve(G, c, z) for z in Z])
        coeffs = np.linalg.lstsq(Z.T, images.T, rcond=None)[0]
        lam = np.sort(np.linalg.eigvals(coeffs).real)
        distinct = [lam[0]]
        for x in lam[1:]:
            if x - distinct[-1] > 1e-6:
                distinct.append(x)
        if len(distinct) != k:
            continue
        projs = []
        for j, lj in enumerate(distinct):
            p = one.copy()
            for i, li in enumerate(distinct):
                if i != j:
                    p = convolve(G, p, c - li * one) / (lj - li)
            projs.append(p)
        return projs
    raise RuntimeError("could not separate the center with a random element")


def generated_algebra(G, generators, tol=RANK_TOL):
    """Orthonormal basis of the *-algebra generated by `generators`."""
    vecs = [np.asarray(g, dtype=complex) for g in generators]
    vecs += [adjoint(G, g) for g in vecs]
    basis = _span_basis(vecs, tol)
    while True:
        prods = [convolve(G, a, b) for a in basis for b in basis]
        new = _span_basis(list(basis) + prods, tol)
        if len(new) == len(basis):
            return new
        basis = new


@dataclass(frozen=True)
class BlockReport:
    ok: bool
    blocks: list = field(default_factory=list)  # dicts {dimension, subalgebra_intersection_dim}
    subalgebra_dim: int = 0

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "subalgebra_dim": self.subalgebra_dim, "blocks": self.blocks}


def ideal_meets_subalgebra(G: GermGroupoid, S: InverseSemigroup = None, seed=0) -> BlockReport:
    """Every simple block C(G) p_i meets the algebra generated by {T_s : s in S^iso}."""
    if S is None:
        S = G.semigroup
    siso = s_iso(S)
    A = generated_algebra(G, [generator(G, s) for s in sorted(siso) if s != S.zero])
    dimA = len(A)
    blocks = []
    for p in minimal_central_projections(G, seed=seed):
        B = _span_basis([convolve(G, delta(G, g), p) for g in range(len(G))])
        dimB = len(B)
        inter = dimA + dimB - _rank(list(A) + list(B))
        blocks.append({"dimension": dimB, "subalgebra_intersection_dim": inter})
    blocks.sort(key=lambda b: b["dimension"])
    return BlockReport(all(b["subalgebra_intersection_dim"] > 0 for b in blocks), blocks, dimA)


# -- tight representations --------------------------------------------------

def join(projections, dim):
    out = np.zeros((dim, dim), dtype=complex)
    for p in projections:
        out = out + p - out @ p
    return out


def canonical_representation(G: GermGroupoid):
    """s -> full_rep(T_s); the zero element goes to the zero matrix."""
    S = G.semigroup
    dim = sum(len(G.arrows_from(u)) for u in range(G.n_units))
    out = []
    for s in range(len(S)):
        if s == S.zero:
            out.append(np.zeros((dim, dim), dtype=complex))
        else:
            out.append(full_rep(G, generator(G, s)))
    return out


def check_tight_representation(S: InverseSemigroup, rho, atol=1e-9) -> Verdict:
    """rho: sequence of square matrices indexed by element.

    Raises NotARepresentation if rho is not a *-representation; otherwise
    returns a verdict on rho(e) = join of rho(C) for every idempotent e and
    every minimal cover C of e (zero included, with its empty cover).
    """
    mats = [np.asarray(r, dtype=complex) for r in rho]
    if len(mats) != len(S):
        raise NotARepresentation(f"need {len(S)} matrices, got {len(mats)}")
    dim = mats[0].shape[0]
    for s in range(len(S)):
        if not np.allclose(mats[int(S.star[s])], mats[s].conj().T, atol=atol):
            raise NotARepresentation(f"rho(s*) != rho(s)^* at {S.elements[s]}", witness=(s,))
        for t in range(len(S)):
            if not np.allclose(mats[s] @ mats[t], mats[int(S.mul[s, t])], atol=atol):
                raise NotARepresentation(
                    f"rho({S.elements[s]}) rho({S.elements[t]}) != rho of product", witness=(s, t)
                )
    for e in S.idempotents:
        for C in minimal_covers(S, e):
            if not np.allclose(join([mats[c] for c in C], dim), mats[e], atol=atol):
                return Verdict(False, witness=(e, tuple(sorted(C))),
                               detail=f"join over a cover of {S.elements[e]} differs from rho(e)")
    return Verdict(True)


# -- Cuntz-Krieger families -------------------------------------------------

@dataclass(frozen=True)
class DirectedGraph:
    vertices: tuple
    edges: dict  # name -> (source, range)

    def receivers(self, v):
        """Edges whose range is v."""
        return tuple(e for e, (_, r) in self.edges.items() if r == v)


@dataclass(frozen=True)
class CKReport:
    ok: bool
    relations: dict  # relation name -> (ok, witness)

    def __bool__(self):
        return self.ok


def check_ck_family(graph: DirectedGraph, S_mats: dict, P_mats: dict, atol=1e-9) -> CKReport:
    """Projections p_v mutually orthogonal, s_e* s_e = p_{s(e)}, and
    p_v = sum of s_e s_e* over edges with range v (skipped when there are none).
    """
    rel = {}
    bad = None
    for v in graph.vertices:
        p = np.asarray(P_mats[v], dtype=complex)
        if not (np.allclose(p @ p, p, atol=atol) and np.allclose(p, p.conj().T, atol=atol)):
            bad = bad or v
    rel["projections"] = (bad is None, bad)
    bad = None
    for v in graph.vertices:
        for w in graph.vertices:
            if v != w and not np.allclose(np.asarray(P_mats[v]) @ np.asarray(P_mats[w]), 0, atol=atol):
                bad = bad or (v, w)
    rel["orthogonal"] = (bad is None, bad)
    bad = None
    for e, (src, _) in graph.edges.items():
        s = np.asarray(S_mats[e], dtype=complex)
        if not np.allclose(s.conj().T @ s, P_mats[src], atol=atol):
            bad = bad or e
    rel["CK1"] = (bad is None, bad)
    bad = None
    for v in graph.vertices:
        into = graph.receivers(v)
        if not into:
            continue
        p = np.asarray(P_mats[v], dtype=complex)
        total = sum(np.asarray(S_mats[e]) @ np.asarray(S_mats[e]).conj().T for e in into)
        diff = total - p
        if not np.allclose(diff, 0, atol=atol):
            # basis vector on which the relation visibly fails
            col = int(np.argmax(np.abs(diff).sum(axis=0)))
            bad = bad or (v, col)
    rel["CK2"] = (bad is None, bad)
    return CKReport(all(ok for ok, _ in rel.values()), rel)


def graph_paths(graph: DirectedGraph, count):
    """First `count` finite paths in shortlex order (vertices first).

    A path e1 e2 ... requires source(e_i) = range(e_{i+1}).
    """
    out = [(v,) for v in graph.vertices]
    frontier = [(e,) for e in sorted(graph.edges)]
    while len(out) < count and frontier:
        out.extend(frontier)
        nxt = []
        for p in frontier:
            for e in sorted(graph.edges):
                if graph.edges[p[-1]][0] == graph.edges[e][1]:
                    nxt.append(p + (e,))
        frontier = nxt
    return out[:count]


def truncated_fock_family(graph: DirectedGraph, count):
    """Compression of the path-space representation to the first `count` paths.

    s_e sends the path mu to e mu when composable; p_v projects onto paths
    ending at range v.  The compression of s_e drops paths leaving the
    truncation, so CK relations generally fail.
    """
    paths = graph_paths(graph, count)
    pos = {p: k for k, p in enumerate(paths)}
    n = len(paths)

    def rng_of(p):
        return p[0] if p[0] in graph.vertices else graph.edges[p[0]][1]

    S = {}
    for e, (src, _) in graph.edges.items():
        M = np.zeros((n, n))
        for p in paths:
            if rng_of(p) == src:
                q = (e,) if p[0] in graph.vertices else (e,) + p
                if q in pos:
                    M[pos[q], pos[p]] = 1
        S[e] = M
    P = {v: np.diag([1.0 if rng_of(p) == v else 0.0 for p in paths]) for v in graph.vertices}
    return S, P, paths
