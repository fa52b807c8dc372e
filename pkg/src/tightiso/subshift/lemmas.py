"""Checks of the structural lemmas about S_X on sampled or enumerated data."""

from dataclasses import dataclass, field
from itertools import combinations

from ..verdict import Unknown, Verdict
from . import clopen as co
from .elements import (
    E,
    ZERO,
    apply,
    fixed_points,
    idempotent_on,
    image,
    is_idempotent,
    one,
    s,
    s_star,
    sx_eq,
    sx_mul,
    sx_product,
    sx_star,
)
from .sft import Sft, sample_points, small_points


def words_upto(X: Sft, depth):
    out = []
    for n in range(depth + 1):
        out += X.words(n)
    return out


def random_word(X, rng, max_len):
    """A random language word of length <= max_len."""
    w = ""
    n = int(rng.integers(0, max_len + 1))
    for _ in range(n):
        succ = sorted(X.successors(X.run(w)))
        w += succ[int(rng.integers(len(succ)))]
    return w


def random_element(X, rng, depth=3, nonzero=True, unequal=False):
    """s_alpha E(F; gamma) s_beta* with random words up to `depth`."""
    for _ in range(1000):
        a, b = random_word(X, rng, depth), random_word(X, rng, depth)
        if unequal and len(a) == len(b):
            continue
        F = [random_word(X, rng, 2) for _ in range(int(rng.integers(0, 3)))]
        g = random_word(X, rng, 1)
        e = sx_product(X, s(X, a), E(X, F, g), s_star(X, b))
        if not nonzero or not e.is_zero:
            return e
    return ZERO


def enumerate_elements(X, depth=2):
    """s_alpha g s_beta* for alpha, beta up to `depth` and g among 1, E({f}; ε)."""
    idems = [one(X)] + [E(X, [f], "") for f in words_upto(X, 1) if f]
    out = []
    for a in words_upto(X, depth):
        for b in words_upto(X, depth):
            for g in idems:
                e = sx_product(X, s(X, a), g, s_star(X, b))
                if not e.is_zero and not any(sx_eq(X, e, f) for f in out):
                    out.append(e)
    return out


def semigroup_axioms(X, rng, samples=100, depth=3) -> Verdict:
    """Associativity, involution and (e e*) e = e on random elements."""
    for _ in range(samples):
        x, y, z = (random_element(X, rng, depth, nonzero=False) for _ in range(3))
        if not sx_eq(X, sx_mul(X, sx_mul(X, x, y), z), sx_mul(X, x, sx_mul(X, y, z))):
            return Verdict(False, witness=("associativity", x, y, z))
        if not sx_eq(X, sx_star(X, sx_star(X, x)), x):
            return Verdict(False, witness=("involution", x))
        if not sx_eq(X, sx_star(X, sx_mul(X, x, y)), sx_mul(X, sx_star(X, y), sx_star(X, x))):
            return Verdict(False, witness=("star of product", x, y))
        if not sx_eq(X, sx_product(X, x, sx_star(X, x), x), x):
            return Verdict(False, witness=("regularity", x))
    return Verdict(True)


def idempotent_formula(X, rng, samples=50, depth=2) -> Verdict:
    """E(F; alpha) = s_alpha (prod over f of s_f* s_f) s_alpha*."""
    for _ in range(samples):
        a = random_word(X, rng, depth)
        F = [random_word(X, rng, depth) for _ in range(int(rng.integers(0, 3)))]
        mid = [sx_mul(X, s_star(X, f), s(X, f)) for f in F]
        rhs = sx_product(X, s(X, a), *mid, s_star(X, a))
        if not sx_eq(X, E(X, F, a), rhs):
            return Verdict(False, witness=(a, F))
    return Verdict(True)


def fixonepoint_suite(X, rng, count=200, depth=3) -> Verdict:
    """Elements with |alpha| != |beta| fix at most one point; the candidate
    is confirmed against a brute-force scan of small points in the domain.
    """
    pool = small_points(X, 3, 3)
    for _ in range(count):
        e = random_element(X, rng, depth, unequal=True)
        if e.is_zero:
            continue
        fps = fixed_points(X, e)
        if len(fps) > 1:
            return Verdict(False, witness=e)
        brute = [x for x in pool if co.contains(e.domain, x) and apply(X, e, x) == x]
        if any(x not in fps for x in brute):
            return Verdict(False, witness=(e, brute))
    return Verdict(True, witness=count)


def fixedultra_suite(X, rng, count=100, depth=2) -> Verdict:
    """theta_e(xi_x) = xi_{e(x)}: for sampled (F, v), e* E(F;v) e contains x
    in its domain iff e(x) lies in C(F; v).
    """
    points = sample_points(X, rng, count)
    checked = 0
    for x in points:
        k = int(rng.integers(0, depth + 1))
        b = x.prefix(k)
        a = random_word(X, rng, depth)
        e = sx_mul(X, s(X, a), s_star(X, b))
        if e.is_zero or not co.contains(e.domain, x):
            e = s_star(X, b)  # always defined at x
        y = apply(X, e, x)
        for _ in range(3):
            F = [random_word(X, rng, 2) for _ in range(int(rng.integers(0, 3)))]
            v = random_word(X, rng, depth)
            g = E(X, F, v)
            conj = sx_product(X, sx_star(X, e), g, e)
            lhs = not conj.is_zero and co.contains(conj.domain, x)
            rhs = co.contains(co.c_fset(X, F, v), y)
            if lhs != rhs:
                return Verdict(False, witness=(x, e, F, v))
            checked += 1
    return Verdict(True, witness=checked)


def cover_check(X, e, C, depth=None):
    """Is C a cover of e?  Exact once `depth` reaches the certificate depth:
    beyond the depth of every domain involved each cylinder below e lies
    entirely inside or outside each dom(c).
    """
    cert = max([e.domain.depth] + [c.domain.depth for c in C]) + X.memory
    if depth is None:
        depth = cert
    dom_c = [c.domain for c in C]
    for w in X.words(depth):
        piece = co.intersection(X, co.cylinder(X, w), e.domain)
        if piece.is_empty:
            continue
        if not any(not co.intersection(X, piece, d).is_empty for d in dom_c):
            return Verdict(False, witness=w)
    if depth < cert:
        return Unknown(depth, "all cylinders met at this depth")
    return Verdict(True)


def cover_domain_union(X, e, C, depth=None):
    """For a cover C of the idempotent e, the domains of C union to dom(e)."""
    for c in C:
        if not sx_eq(X, sx_mul(X, e, c), c):
            return Verdict(False, witness=c, detail="not below e")
    cov = cover_check(X, e, C, depth)
    if isinstance(cov, Unknown) or not cov:
        return cov
    union = co.EMPTY
    for c in C:
        union = co.union(X, union, c.domain)
    return Verdict(union == e.domain, witness=str(union))


def covertojoin_suite(X, depth=3, max_cover=3) -> Verdict:
    """Every cover of e by cylinder idempotents (words up to `depth`, at most
    `max_cover` members) has domain union dom(e), for e among 1 and the
    one-letter cylinders.
    """
    tops = [one(X)] + [E(X, [], a) for a in X.words(1)]
    checked = 0
    for e in tops:
        if e.is_zero:
            continue
        parts = []
        for w in words_upto(X, depth):
            c = sx_mul(X, E(X, [], w), e)
            if not c.is_zero and not any(sx_eq(X, c, p) for p in parts):
                parts.append(c)
        for k in range(1, max_cover + 1):
            for C in combinations(parts, k):
                cov = cover_check(X, e, C)
                if not cov:
                    continue
                v = cover_domain_union(X, e, C)
                checked += 1
                if not v:
                    return Verdict(False, witness=(e, C))
    return Verdict(True, witness=checked)


def non_iso_certificate(X, e, depth=3):
    """An idempotent f <= e*e with e f e* f = 0, proving e is not in S^iso."""
    src = sx_mul(X, sx_star(X, e), e)
    for w in words_upto(X, len(e.beta) + depth):
        f = sx_mul(X, E(X, [], w), src)
        if f.is_zero:
            continue
        if sx_product(X, e, f, sx_star(X, e), f).is_zero:
            return f
    return None


@dataclass
class SisoReport:
    idempotent: int = 0
    certified_non_iso: int = 0
    unknown: list = field(default_factory=list)
    moved: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.unknown


def siso_sample_check(X, depth=2, cert_depth=3) -> SisoReport:
    """S^iso = E(S_X): every enumerated element is idempotent or comes with
    a moved domain point and an idempotent below e*e that e moves off itself.
    """
    pool = small_points(X, 3, 3)
    rep = SisoReport()
    for e in enumerate_elements(X, depth):
        if is_idempotent(X, e):
            rep.idempotent += 1
            continue
        moved = next((x for x in pool if co.contains(e.domain, x) and apply(X, e, x) != x), None)
        cert = non_iso_certificate(X, e, cert_depth)
        if moved is None or cert is None:
            rep.unknown.append(e)
        else:
            rep.certified_non_iso += 1
            rep.moved[str(e)] = str(moved)
    return rep


def condition_h_witness(X, e, depth=None):
    """A finite cover of J_e = {g idempotent : g <= e}."""
    if e.is_zero:
        return []
    if is_idempotent(X, e):
        return [e]
    if len(e.alpha) == len(e.beta):
        return []  # alpha != beta: nothing is fixed
    fps = fixed_points(X, e)
    if not fps:
        return []
    x = fps[0]
    if depth is None:
        depth = X.memory + 1 + len(x.pre) + len(x.per)
    for n in range(depth + 1):
        g = idempotent_on(X, co.intersection(X, co.cylinder(X, x.prefix(n)), e.domain))
        if not g.is_zero and sx_eq(X, sx_mul(X, e, g), g):
            return [g]
    return []


def theta_harness(X, e, x, n=8):
    """Prefixes of e(x) computed by the point map and by the image set agree."""
    y = apply(X, e, x)
    img = image(X, e)
    return co.contains(img, y) and y.prefix(n) == (e.alpha + x.drop(len(e.beta)).prefix(n))[:n]
