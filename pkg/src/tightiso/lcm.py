"""Right-LCM monoids and the inverse semigroup of pairs [p, q].

Three exact backends are built in: free monoids on single-character
letters, the lattice monoid N^k, and finite direct products of these.  All
have trivial unit groups, so a pair class is just the pair itself.  The
base class carries bounded-search fallbacks that answer Unknown when the
search is exhausted.
"""

from dataclasses import dataclass
from itertools import product
import numpy as np

from .errors import InputError, ParseError, PreconditionB, PreconditionSiso, Undecidable
from .verdict import Unknown, Verdict


def _nbytes(text):
    return len(text.encode("utf-8"))


class RightLcmMonoid:
    """Interface.  Elements are hashable values in canonical form, so
    equality is ``==``.
    """

    kind = "abstract"
    one = None

    def mul(self, p, q):
        raise NotImplementedError

    def right_lcm(self, p, q):
        """r with pP meet qP = rP, or None when the ideals are disjoint."""
        raise NotImplementedError

    def left_quotient(self, p, r):
        """The unique x with p x = r, or None."""
        raise NotImplementedError

    def elements(self, depth):
        """All elements of size at most `depth`."""
        raise NotImplementedError

    def size(self, p):
        raise NotImplementedError

    def units(self):
        return (self.one,)

    def parse(self, text):
        raise NotImplementedError

    def format(self, p):
        raise NotImplementedError

    def meets(self, p, q):
        return self.right_lcm(p, q) is not None

    # bounded fallbacks ----------------------------------------------------

    def is_core(self, p):
        raise Undecidable(f"no exact core decider for {self.kind} monoids")

    def core_bounded(self, p, depth):
        """Search q up to `depth` with pP meet qP empty."""
        for q in self.elements(depth):
            if not self.meets(p, q):
                return Verdict(False, witness=q)
        return Unknown(depth, "no disjoint ideal found")

    def in_s_iso(self, p, q, depth=3):
        return self.s_iso_bounded(p, q, depth)

    def s_iso_bounded(self, p, q, depth):
        """Search a up to `depth` with paP meet qaP empty."""
        for a in self.elements(depth):
            if not self.meets(self.mul(p, a), self.mul(q, a)):
                return Verdict(False, witness=a)
        return Unknown(depth, "no separating a found")

    def foundation_probes(self, F):
        return None

    def boundary_points(self, rng, count):
        raise Undecidable(f"no boundary sampler for {self.kind} monoids")

    def point_contains(self, point, p):
        """Is the ideal pP in the filter described by `point`?"""
        raise NotImplementedError


class FreeMonoid(RightLcmMonoid):
    kind = "free"
    one = ""

    def __init__(self, alphabet=("a", "b")):
        alphabet = tuple(alphabet)
        if not alphabet or any(len(x) != 1 for x in alphabet) or len(set(alphabet)) != len(alphabet):
            raise InputError("alphabet must be distinct single characters")
        self.alphabet = alphabet

    def __repr__(self):
        return f"FreeMonoid({''.join(self.alphabet)})"

    def mul(self, p, q):
        return p + q

    def right_lcm(self, p, q):
        if q.startswith(p):
            return q
        if p.startswith(q):
            return p
        return None

    def left_quotient(self, p, r):
        return r[len(p):] if r.startswith(p) else None

    def size(self, p):
        return len(p)

    def elements(self, depth):
        out = [""]
        for n in range(1, depth + 1):
            out += ["".join(w) for w in product(self.alphabet, repeat=n)]
        return out

    def parse(self, text):
        lead = _nbytes(text) - _nbytes(text.lstrip())
        text = text.strip()
        if text in ("", "ε", "1", "e"):
            return ""
        for k, ch in enumerate(text):
            if ch not in self.alphabet:
                raise ParseError(f"letter {ch!r} not in alphabet", lead + _nbytes(text[:k]))
        return text

    def format(self, p):
        return p if p else "ε"

    def is_core(self, p):
        return len(self.alphabet) == 1 or p == ""

    def in_s_iso(self, p, q, depth=3):
        if len(self.alphabet) == 1 or p == q:
            return Verdict(True)
        # choose a whose first letter separates pa from qa
        if p.startswith(q) or q.startswith(p):
            longer, shorter = (p, q) if len(p) > len(q) else (q, p)
            nxt = longer[len(shorter)]
            a = next(x for x in self.alphabet if x != nxt)
        else:
            a = ""
        return Verdict(False, witness=a)

    def foundation_probes(self, F):
        L = max(len(f) for f in F)
        return ["".join(w) for w in product(self.alphabet, repeat=L)]

    def boundary_points(self, rng, count):
        """Eventually periodic infinite words (preperiod, period)."""
        out = []
        for _ in range(count):
            pre = "".join(rng.choice(self.alphabet, size=int(rng.integers(0, 4))))
            per = "".join(rng.choice(self.alphabet, size=int(rng.integers(1, 4))))
            out.append((pre, per))
        return out

    def point_contains(self, point, p):
        pre, per = point
        w = pre
        while len(w) < len(p):
            w += per
        return w.startswith(p)


class LatticeNk(RightLcmMonoid):
    kind = "lattice_nk"

    def __init__(self, k=2):
        if k < 1:
            raise InputError("k must be positive")
        self.k = k
        self.one = (0,) * k

    def __repr__(self):
        return f"LatticeNk({self.k})"

    def mul(self, p, q):
        return tuple(a + b for a, b in zip(p, q))

    def right_lcm(self, p, q):
        return tuple(max(a, b) for a, b in zip(p, q))

    def left_quotient(self, p, r):
        if all(a <= b for a, b in zip(p, r)):
            return tuple(b - a for a, b in zip(p, r))
        return None

    def size(self, p):
        return sum(p)

    def elements(self, depth):
        return [v for v in product(range(depth + 1), repeat=self.k) if sum(v) <= depth]

    def parse(self, text):
        parts = text.split(":")
        if len(parts) != self.k:
            raise ParseError(f"expected {self.k} coordinates separated by ':'", 0)
        out = []
        pos = 0
        for part in parts:
            if not part.strip().isdigit():
                raise ParseError(f"coordinate {part!r} is not a natural number", pos)
            out.append(int(part))
            pos += _nbytes(part) + 1
        return tuple(out)

    def format(self, p):
        return ":".join(str(a) for a in p)

    def is_core(self, p):
        return True

    def in_s_iso(self, p, q, depth=3):
        return Verdict(True)

    def foundation_probes(self, F):
        return [self.one]

    def boundary_points(self, rng, count):
        """Limit directions; every positive direction describes the unique
        tight filter (all ideals), since the ideals of N^k are directed.
        """
        out = []
        for _ in range(count):
            out.append(tuple(int(x) for x in rng.integers(1, 5, size=self.k)))
        return out

    def point_contains(self, point, p):
        # a positive direction d describes lim n*d, which lies in every pP
        return all(d > 0 for d in point)


class ProductMonoid(RightLcmMonoid):
    kind = "product"

    def __init__(self, factors):
        self.factors = tuple(factors)
        if len(self.factors) < 2:
            raise InputError("a product needs at least two factors")
        self.one = tuple(M.one for M in self.factors)

    def __repr__(self):
        return "ProductMonoid(" + ", ".join(map(repr, self.factors)) + ")"

    def mul(self, p, q):
        return tuple(M.mul(a, b) for M, a, b in zip(self.factors, p, q))

    def right_lcm(self, p, q):
        out = []
        for M, a, b in zip(self.factors, p, q):
            r = M.right_lcm(a, b)
            if r is None:
                return None
            out.append(r)
        return tuple(out)

    def left_quotient(self, p, r):
        out = []
        for M, a, b in zip(self.factors, p, r):
            x = M.left_quotient(a, b)
            if x is None:
                return None
            out.append(x)
        return tuple(out)

    def size(self, p):
        return sum(M.size(a) for M, a in zip(self.factors, p))

    def elements(self, depth):
        pools = [M.elements(depth) for M in self.factors]
        return [p for p in product(*pools) if self.size(p) <= depth]

    def parse(self, text):
        parts = text.split("|")
        if len(parts) != len(self.factors):
            raise ParseError(f"expected {len(self.factors)} factors separated by '|'", 0)
        out, pos = [], 0
        for M, part in zip(self.factors, parts):
            try:
                out.append(M.parse(part))
            except ParseError as exc:
                raise exc.shifted(pos) from None
            pos += _nbytes(part) + 1
        return tuple(out)

    def format(self, p):
        return "|".join(M.format(a) for M, a in zip(self.factors, p))

    def is_core(self, p):
        return all(M.is_core(a) for M, a in zip(self.factors, p))

    def in_s_iso(self, p, q, depth=3):
        for i, (M, a, b) in enumerate(zip(self.factors, p, q)):
            v = M.in_s_iso(a, b, depth)
            if isinstance(v, Unknown):
                return v
            if not v:
                # separate in factor i, identity elsewhere
                w = list(self.one)
                w[i] = v.witness
                return Verdict(False, witness=tuple(w))
        return Verdict(True)

    def foundation_probes(self, F):
        pools = []
        for i, M in enumerate(self.factors):
            pools.append(M.foundation_probes([f[i] for f in F]))
        return list(product(*pools))

    def boundary_points(self, rng, count):
        cols = [M.boundary_points(rng, count) for M in self.factors]
        return list(zip(*cols))

    def point_contains(self, point, p):
        return all(M.point_contains(x, a) for M, x, a in zip(self.factors, point, p))


def monoid_from_json(data) -> RightLcmMonoid:
    """``{"kind": "free" | "lattice_nk" | "product", "params": {...}}``."""
    try:
        kind = data["kind"]
        params = data.get("params", {})
        if kind == "free":
            return FreeMonoid(params.get("alphabet", ["a", "b"]))
        if kind == "lattice_nk":
            return LatticeNk(int(params.get("k", 2)))
        if kind == "product":
            return ProductMonoid([monoid_from_json(f) for f in params["factors"]])
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed monoid spec: {exc}") from None
    raise InputError(f"unknown monoid kind {kind!r}")


BUILTIN_MONOIDS = {
    "free2": lambda: FreeMonoid("ab"),
    "free1": lambda: FreeMonoid("a"),
    "n2": lambda: LatticeNk(2),
    "n1": lambda: LatticeNk(1),
    "free2xn": lambda: ProductMonoid([FreeMonoid("ab"), LatticeNk(1)]),
}


def builtin_monoid(name):
    try:
        return BUILTIN_MONOIDS[name]()
    except KeyError:
        raise InputError(f"unknown monoid {name!r}; choose from {sorted(BUILTIN_MONOIDS)}") from None


# -- the pair semigroup -----------------------------------------------------

@dataclass(frozen=True)
class Pair:
    p: object = None
    q: object = None
    zero: bool = False

    def star(self):
        return self if self.zero else Pair(self.q, self.p)


ZERO = Pair(zero=True)


def pair_mul(M: RightLcmMonoid, x: Pair, y: Pair) -> Pair:
    """[p,q][r,t] = [p q', t r'] with q q' = r r' = lcm(q, r); zero without lcm."""
    if x.zero or y.zero:
        return ZERO
    l = M.right_lcm(x.q, y.p)
    if l is None:
        return ZERO
    q1 = M.left_quotient(x.q, l)
    r1 = M.left_quotient(y.p, l)
    return Pair(M.mul(x.p, q1), M.mul(y.q, r1))


def pair_star(x: Pair) -> Pair:
    return x.star()


def parse_pair(M, text) -> Pair:
    text = text.strip()
    if text == "0":
        return ZERO
    if text.count(",") != 1:
        raise ParseError("a pair is written 'p,q'", 0)
    a, b = text.split(",")
    p = M.parse(a)
    try:
        q = M.parse(b)
    except ParseError as exc:
        raise exc.shifted(_nbytes(a) + 1) from None
    return Pair(p, q)


def format_pair(M, x: Pair) -> str:
    return "0" if x.zero else f"[{M.format(x.p)},{M.format(x.q)}]"


def pairs(M, depth):
    els = M.elements(depth)
    return [Pair(p, q) for p in els for q in els]


def is_idempotent_pair(M, x):
    return pair_mul(M, x, x) == x


def core_membership(M: RightLcmMonoid, p) -> bool:
    return M.is_core(p)


def in_s_iso(M: RightLcmMonoid, x: Pair, depth=3):
    """Exact for the built-in backends; bounded search (possibly Unknown) otherwise."""
    if x.zero:
        return Verdict(True)
    return M.in_s_iso(x.p, x.q, depth)


def is_foundation_set(M: RightLcmMonoid, F, probe_depth=3):
    """Every p meets some f in F.

    Built-ins supply a finite probe set that decides the question exactly;
    otherwise elements up to `probe_depth` are probed and success is Unknown.
    """
    F = list(F)
    if not F:
        return Verdict(False, witness=M.one, detail="empty set")
    probes = M.foundation_probes(F)
    exact = probes is not None
    if not exact:
        probes = M.elements(probe_depth)
    for p in probes:
        if not any(M.meets(f, p) for f in F):
            return Verdict(False, witness=p)
    return Verdict(True) if exact else Unknown(probe_depth, "all probes met")


def lemma_lcm1_check(M: RightLcmMonoid, x: Pair, b, depth=3):
    """[1,b][p,q][b,1] has both coordinates in the core.  Returns (pair, verdict)."""
    if x.zero or not in_s_iso(M, x, depth):
        raise PreconditionSiso("pair is not in S^iso")
    r = M.right_lcm(x.p, x.q)
    if r is None:
        raise PreconditionSiso("p and q have no right lcm")
    if M.left_quotient(r, b) is None:
        raise PreconditionB("b is not in rP")
    out = pair_mul(M, pair_mul(M, Pair(M.one, b), x), Pair(b, M.one))
    if out.zero:
        return out, Verdict(False, witness="zero")
    ok = M.is_core(out.p) and M.is_core(out.q)
    return out, Verdict(ok, witness=None if ok else out)


def lemma_lcm2_check(M: RightLcmMonoid, x: Pair, rng=None, samples=100, depth=3) -> Verdict:
    """D_{pP}, D_{qP}, D_{rP} agree on sampled boundary points, and every
    b with bP meeting qP also meets rP (b up to `depth`).
    """
    if x.zero or not in_s_iso(M, x, depth):
        raise PreconditionSiso("pair is not in S^iso")
    r = M.right_lcm(x.p, x.q)
    if r is None:
        raise PreconditionSiso("p and q have no right lcm")
    if rng is None:
        rng = np.random.default_rng(0)
    for pt in M.boundary_points(rng, samples):
        vals = {M.point_contains(pt, x.p), M.point_contains(pt, x.q), M.point_contains(pt, r)}
        if len(vals) != 1:
            return Verdict(False, witness=pt)
    for b in M.elements(depth):
        if M.meets(b, x.q) and not M.meets(b, r):
            return Verdict(False, witness=b)
    return Verdict(True)


def eligible_pairs(M, depth):
    """S^iso pairs with a right lcm, coordinates up to `depth`."""
    out = []
    for x in pairs(M, depth):
        if M.right_lcm(x.p, x.q) is not None and in_s_iso(M, x, depth):
            out.append(x)
    return out


def lcm1_harness(M, depth=3, b_depth=1) -> Verdict:
    """Lemma check on every eligible pair and every b = r c with |c| <= b_depth."""
    count = 0
    for x in eligible_pairs(M, depth):
        r = M.right_lcm(x.p, x.q)
        for c in M.elements(b_depth):
            _, v = lemma_lcm1_check(M, x, M.mul(r, c), depth)
            count += 1
            if not v:
                return Verdict(False, witness=(x, c))
    return Verdict(True, witness=count)


def lcm2_harness(M, depth=2, samples=100, seed=0) -> Verdict:
    rng = np.random.default_rng(seed)
    count = 0
    for x in eligible_pairs(M, depth):
        v = lemma_lcm2_check(M, x, rng, samples, depth)
        count += 1
        if not v:
            return Verdict(False, witness=(x, v.witness))
    return Verdict(True, witness=count)


# -- structural harnesses ---------------------------------------------------

def pair_semigroup_check(M, depth=4, samples=300, seed=0, exhaustive_depth=1) -> Verdict:
    """Associativity and star compatibility: exhaustive on small pairs,
    then random triples with coordinates up to `depth`.
    """
    small = pairs(M, exhaustive_depth) + [ZERO]
    triples = list(product(small, repeat=3))
    rng = np.random.default_rng(seed)
    pool = M.elements(depth)
    for _ in range(samples):
        triples.append(tuple(Pair(pool[rng.integers(len(pool))], pool[rng.integers(len(pool))]) for _ in range(3)))
    for x, y, z in triples:
        if pair_mul(M, pair_mul(M, x, y), z) != pair_mul(M, x, pair_mul(M, y, z)):
            return Verdict(False, witness=("associativity", x, y, z))
        if pair_mul(M, x, y).star() != pair_mul(M, y.star(), x.star()):
            return Verdict(False, witness=("star", x, y))
        if not x.zero and pair_mul(M, pair_mul(M, x, x.star()), x) != x:
            return Verdict(False, witness=("regularity", x))
    return Verdict(True)


def idempotent_check(M, depth=2) -> Verdict:
    """The idempotent pairs are exactly the diagonal ones."""
    for x in pairs(M, depth):
        if is_idempotent_pair(M, x) != (x.p == x.q):
            return Verdict(False, witness=x)
    return Verdict(True)


def core_closure_check(M, depth=2) -> Verdict:
    els = M.elements(depth)
    for p in els:
        for q in els:
            cp, cq, cpq = M.is_core(p), M.is_core(q), M.is_core(M.mul(p, q))
            if (cp and cq) != cpq:
                return Verdict(False, witness=("product", p, q))
            r = M.right_lcm(p, q)
            if cp and cq and r is not None and not M.is_core(r):
                return Verdict(False, witness=("lcm", p, q))
    return Verdict(True)


def core_set(M, depth):
    return [p for p in M.elements(depth) if M.is_core(p)]


def s_c(M, depth):
    """Nonzero pairs with both coordinates in the core, up to `depth`."""
    core = core_set(M, depth)
    return [Pair(p, q) for p in core for q in core]
