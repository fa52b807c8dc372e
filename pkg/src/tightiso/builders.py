"""Bundled example inverse semigroups.

Partial bijections of ``{1, ..., n}`` are tuples ``f`` of length n where
``f[i]`` is the image of ``i + 1`` (1-based) or None.  Composition follows
the table convention ``mul(f, g) = f o g``.
"""

from itertools import combinations, permutations

import numpy as np

from .errors import InputError, SizeLimit
from .semigroup import validate


def compose(f, g):
    """f o g on the largest possible domain."""
    out = []
    for img in g:
        out.append(None if img is None else f[img - 1])
    return tuple(out)


def invert(f):
    out = [None] * len(f)
    for i, img in enumerate(f):
        if img is not None:
            out[img - 1] = i + 1
    return tuple(out)


def identity_on(points, n):
    return tuple(i + 1 if (i + 1) in points else None for i in range(n))


def close_partial_maps(generators, include_zero=True):
    """Inverse subsemigroup of I(n) generated by `generators`.

    Returns the maps in order of discovery (generators first), with the
    empty map included when `include_zero` is set.
    """
    gens = list(dict.fromkeys(generators))
    if not gens:
        raise InputError("need at least one generator")
    n = len(gens[0])
    seen = dict.fromkeys(gens)
    for g in list(gens):
        seen.setdefault(invert(g))
    if include_zero:
        seen.setdefault((None,) * n)
    frontier = list(seen)
    while frontier:
        new = []
        current = list(seen)
        for f in frontier:
            for g in current:
                for h in (compose(f, g), compose(g, f)):
                    if h not in seen:
                        seen[h] = None
                        new.append(h)
                        inv = invert(h)
                        if inv not in seen:
                            seen[inv] = None
                            new.append(inv)
        frontier = new
    return list(seen)


def map_name(f):
    dom = [i + 1 for i, img in enumerate(f) if img is not None]
    if not dom:
        return "0"
    if all(f[i - 1] == i for i in dom):
        return "Id" + "".join(str(i) for i in dom)
    return "[" + ",".join(f"{i}>{f[i - 1]}" for i in dom) + "]"


def from_partial_maps(maps, name, names=None):
    """Validated inverse semigroup whose elements are the given partial maps."""
    maps = list(maps)
    index = {f: k for k, f in enumerate(maps)}
    n = len(maps)
    mul = np.empty((n, n), dtype=np.int64)
    for i, f in enumerate(maps):
        for j, g in enumerate(maps):
            h = compose(f, g)
            if h not in index:
                raise InputError(f"maps not closed under composition: {map_name(h)}")
            mul[i, j] = index[h]
    star = [index[invert(f)] for f in maps]
    if names is None:
        names = [map_name(f) for f in maps]
    zero = index.get((None,) * len(maps[0]))
    return validate(mul, star, zero=zero, elements=names, name=name)


def _ordered(maps):
    # zero first, then by domain size, then lexicographically
    def key(f):
        dom = tuple(i for i, img in enumerate(f) if img is not None)
        return (len(dom), dom, tuple(f[i] for i in dom))

    return sorted(maps, key=key)


def symmetric_inverse_monoid(n):
    """I({1..n}), all partial bijections; n <= 3 (34 elements)."""
    if n > 3:
        raise SizeLimit(f"symmetric_inverse_monoid supports n <= 3, got {n}")
    if n < 1:
        raise InputError("n must be positive")
    maps = []
    pts = range(1, n + 1)
    for k in range(n + 1):
        for dom in combinations(pts, k):
            for img in permutations(pts, k):
                f = [None] * n
                for a, b in zip(dom, img):
                    f[a - 1] = b
                maps.append(tuple(f))
    return from_partial_maps(_ordered(maps), f"I({n})")


def swap_monoid():
    """Inverse submonoid of I({1,2,3}) generated by Id12, Id13 and (2 3).

    Eight elements including the empty map; 0-disjunctivity fails because
    Id1 is the only nonzero idempotent below Id12.
    """
    n = 3
    id12 = identity_on({1, 2}, n)
    id13 = identity_on({1, 3}, n)
    sigma = (1, 3, 2)
    maps = close_partial_maps([id12, id13, sigma])
    tau = compose(sigma, id12)
    labels = {
        (None, None, None): "0",
        identity_on({1}, n): "Id1",
        id12: "Id12",
        id13: "Id13",
        identity_on({1, 2, 3}, n): "Id123",
        sigma: "sigma",
        tau: "tau",
        invert(tau): "tau*",
    }
    maps = _ordered(maps)
    return from_partial_maps(maps, "swap", [labels[f] for f in maps])


def brandt2():
    """Brandt semigroup B2 = {0, a, a*, aa*, a*a}, realised inside I({1,2})."""
    a = (None, 1)  # 2 -> 1
    maps = close_partial_maps([a])
    labels = {
        (None, None): "0",
        a: "a",
        invert(a): "a*",
        compose(a, invert(a)): "aa*",
        compose(invert(a), a): "a*a",
    }
    order = ["0", "a", "a*", "aa*", "a*a"]
    by_label = {labels[f]: f for f in maps}
    return from_partial_maps([by_label[k] for k in order], "B2", order)


def semilattice(elements, leq, name="semilattice"):
    """Meet-semilattice from a finite poset.

    `leq(x, y)` decides the order.  Meets must exist; a bottom element is
    adjoined as zero when the poset lacks one.
    """
    elements = list(elements)
    n = len(elements)
    lower = [[x for x in range(n) if leq(elements[x], elements[a]) and leq(elements[x], elements[b])]
             for a in range(n) for b in range(n)]
    mul = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            lb = lower[a * n + b]
            greatest = [x for x in lb if all(leq(elements[y], elements[x]) for y in lb)]
            if not lb:
                mul[a, b] = -1
            elif len(greatest) != 1:
                raise InputError(f"no meet for {elements[a]!r} and {elements[b]!r}")
            else:
                mul[a, b] = greatest[0]
    names = [str(e) for e in elements]
    if (mul < 0).any():
        # disjoint elements: their meet is the adjoined zero
        mul = np.where(mul < 0, n, mul)
        full = np.full((n + 1, n + 1), n, dtype=np.int64)
        full[:n, :n] = mul
        mul = full
        names.append("0")
    return validate(mul, list(range(len(names))), elements=names, name=name)


def chain(k):
    """0 < e1 < ... < e_{k-1}; chain(3) is 0 < e < 1."""
    if k == 3:
        names = ["0", "e", "1"]
    else:
        names = ["0"] + [f"e{i}" for i in range(1, k)]
    return semilattice(names, lambda x, y: names.index(x) <= names.index(y), name=f"chain{k}")


def boolean_semilattice(atoms=2):
    """Subsets of an `atoms`-set under intersection; the empty set is zero."""
    pts = range(atoms)
    subsets = [frozenset(c) for k in range(atoms + 1) for c in combinations(pts, k)]
    names = ["0" if not s else "{" + "".join(str(i + 1) for i in sorted(s)) + "}" for s in subsets]
    lookup = dict(zip(names, subsets))
    return semilattice(names, lambda x, y: lookup[x] <= lookup[y], name=f"boolean{atoms}")


def group_with_zero(group_table, names=None, name="G0"):
    """A finite group (Cayley table, identity at index 0) with zero adjoined."""
    g = np.asarray(group_table, dtype=np.int64)
    n = g.shape[0]
    if names is None:
        names = ["1"] + [f"g{i}" for i in range(1, n)]
    mul = np.full((n + 1, n + 1), 0, dtype=np.int64)
    mul[1:, 1:] = g + 1
    star = [0]
    for i in range(n):
        inv = [j for j in range(n) if g[i, j] == 0]
        if len(inv) != 1:
            raise InputError("group table has no unique inverse for element %d" % i)
        star.append(inv[0] + 1)
    return validate(mul, star, zero=0, elements=["0"] + list(names), name=name)


def cyclic_group_with_zero(k):
    table = [[(i + j) % k for j in range(k)] for i in range(k)]
    names = ["1"] + [f"g{i}" for i in range(1, k)]
    if k == 2:
        names = ["1", "s"]
    return group_with_zero(table, names, name=f"Z{k}+0")


BUILDERS = {
    "brandt2": brandt2,
    "swap": swap_monoid,
    "sym1": lambda: symmetric_inverse_monoid(1),
    "sym2": lambda: symmetric_inverse_monoid(2),
    "sym3": lambda: symmetric_inverse_monoid(3),
    "chain3": lambda: chain(3),
    "boolean2": lambda: boolean_semilattice(2),
    "z2": lambda: cyclic_group_with_zero(2),
    "z3": lambda: cyclic_group_with_zero(3),
}


def build(name):
    try:
        return BUILDERS[name]()
    except KeyError:
        raise InputError(f"unknown builder {name!r}; choose from {sorted(BUILDERS)}") from None


def bundled():
    """Every bundled finite semigroup, in registry order."""
    return [(name, fn()) for name, fn in BUILDERS.items()]
