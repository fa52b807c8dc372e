"""Brute-force reference computations, written straight from the definitions
on plain lists.  They share no code with the package beyond reading raw
tables, so agreement is a genuine cross-check.
"""

from itertools import chain, combinations, product


def table(S):
    """(mul as nested lists, star list, zero) from a package semigroup."""
    return [list(map(int, row)) for row in S.mul], [int(x) for x in S.star], int(S.zero)


def subsets(xs):
    xs = list(xs)
    return chain.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))


# -- axioms -----------------------------------------------------------------

def classify(mul, star=None):
    """Name of the first failing axiom in the order shape, associativity,
    zero, inverses, star agreement; None when the table is valid.
    """
    n = len(mul)
    if any(len(r) != n for r in mul) or any(not 0 <= v < n for r in mul for v in r):
        return "ShapeError"
    for a, b, c in product(range(n), repeat=3):
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            return "NonAssociative"
    zeros = [z for z in range(n) if all(mul[z][s] == z == mul[s][z] for s in range(n))]
    if zeros:
        m = mul
    else:
        m = [row + [n] for row in mul] + [[n] * (n + 1)]
        star = None if star is None else list(star) + [n]
    N = len(m)
    inv = []
    for s in range(N):
        cands = [t for t in range(N) if m[m[s][t]][s] == s and m[m[t][s]][t] == t]
        if not cands:
            return "NoInverse"
        if len(cands) > 1:
            return "NonUniqueInverse"
        inv.append(cands[0])
    if star is not None and list(star) != inv:
        return "StarMismatch"
    return None


# -- semilattice and filters ------------------------------------------------

def idempotents(mul):
    return [e for e in range(len(mul)) if mul[e][e] == e]


def leq(mul, e, f):
    return mul[e][f] == e


def all_filters(mul, zero):
    """Every nonempty proper up-closed down-directed subset of E."""
    E = [e for e in idempotents(mul) if e != zero]
    out = []
    for F in subsets(E):
        F = set(F)
        if not F:
            continue
        if any(f in F and leq(mul, f, g) and g not in F for f in E for g in E):
            continue
        if any(mul[a][b] not in F for a in F for b in F):
            continue
        out.append(frozenset(F))
    return out


def ultrafilters(mul, zero):
    fs = all_filters(mul, zero)
    return [F for F in fs if not any(F < G for G in fs)]


def is_cover(mul, zero, C, D):
    return all(any(mul[d][c] != zero for c in C) for d in D if d != zero)


def tight_by_definition(mul, zero):
    """Filters meeting every cover (all subsets of the down-set) of each member."""
    E = idempotents(mul)
    out = []
    for F in all_filters(mul, zero):
        ok = True
        for e in F:
            down = [f for f in E if leq(mul, f, e)]
            for C in subsets(down):
                if is_cover(mul, zero, C, down) and not (set(C) & F):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(F)
    return out


# -- isotropy ---------------------------------------------------------------

def weakly_fixed(mul, star, zero, s, e):
    E = idempotents(mul)
    return all(
        mul[mul[mul[s][f]][star[s]]][f] != zero for f in E if f != zero and leq(mul, f, e)
    )


def s_iso(mul, star, zero):
    return {s for s in range(len(mul)) if weakly_fixed(mul, star, zero, s, mul[star[s]][s])}


def centralizer(mul):
    E = idempotents(mul)
    return {s for s in range(len(mul)) if all(mul[s][e] == mul[e][s] for e in E)}


# -- germs ------------------------------------------------------------------

def germ_classes(mul, star, zero):
    """Union-find over all pairs (s, xi) with s*s in xi, xi tight.

    Returns (filters, classes) where classes is a list of sets of pairs.
    """
    tight = tight_by_definition(mul, zero)
    pairs = [(s, k) for k, F in enumerate(tight) for s in range(len(mul)) if mul[star[s]][s] in F]
    parent = {p: p for p in pairs}

    def find(p):
        while parent[p] != p:
            p = parent[p]
        return p

    for (s, k), (t, j) in product(pairs, repeat=2):
        if k == j and any(mul[s][e] == mul[t][e] for e in tight[k]):
            parent[find((s, k))] = find((t, j))
    groups = {}
    for p in pairs:
        groups.setdefault(find(p), set()).add(p)
    return tight, list(groups.values())


def germ_range(mul, star, zero, tight, s, k):
    """Index of the filter up({s e s* : e in xi})."""
    E = idempotents(mul)
    img = {mul[mul[s][e]][star[s]] for e in tight[k]}
    up = frozenset(f for f in E if any(leq(mul, g, f) for g in img))
    return tight.index(up)


def groupoid_shape(mul, star, zero):
    """(units, arrows, isotropy arrows)."""
    tight, classes = germ_classes(mul, star, zero)
    iso = 0
    for c in classes:
        s, k = next(iter(c))
        if germ_range(mul, star, zero, tight, s, k) == k:
            iso += 1
    return len(tight), len(classes), iso


# -- partial bijections -----------------------------------------------------

def pmap_compose(f, g):
    """f o g for partial maps given as dicts."""
    return {x: f[g[x]] for x in g if g[x] in f}


def pmap_close(gens):
    """Inverse semigroup of partial bijections (dicts) generated by gens, with the empty map."""
    key = lambda f: tuple(sorted(f.items()))
    seen = {key(g): g for g in gens}
    for g in gens:
        inv = {v: k for k, v in g.items()}
        seen[key(inv)] = inv
    seen[()] = {}
    changed = True
    while changed:
        changed = False
        for f, g in product(list(seen.values()), repeat=2):
            h = pmap_compose(f, g)
            if key(h) not in seen:
                seen[key(h)] = h
                changed = True
    return list(seen.values())


def pmap_s_iso(maps):
    """S^iso on partial maps: for every idempotent f of the semigroup with
    nonempty domain inside dom s, s(dom f) meets dom f.
    """
    idems = [set(f) for f in pmap_idempotents(maps) if f]
    out = []
    for s in maps:
        dom = set(s)
        if all(set(s[x] for x in B) & B for B in idems if B <= dom):
            out.append(s)
    return out


def pmap_centralizer(maps):
    idems = [f for f in maps if all(f[x] == x for x in f)]
    return [s for s in maps if all(pmap_compose(s, e) == pmap_compose(e, s) for e in idems)]


def pmap_idempotents(maps):
    return [f for f in maps if all(f[x] == x for x in f)]
