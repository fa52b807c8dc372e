"""Clopen subsets of a shift of finite type.

A clopen set is a finite union of cylinders C(w) over language words w of a
common length d.  The normal form uses the least d for which this is
possible; since cylinders of distinct words of equal length are nonempty
and disjoint, the normal form is unique.
"""

from dataclasses import dataclass

from .sft import Point, Sft


@dataclass(frozen=True)
class ClopenSet:
    depth: int
    words: frozenset

    @property
    def is_empty(self):
        return not self.words

    def __str__(self):
        if not self.words:
            return "{}"
        return "{" + ",".join(w or "ε" for w in sorted(self.words)) + f"}}@{self.depth}"


EMPTY = ClopenSet(0, frozenset())


def normalize(X: Sft, depth, words) -> ClopenSet:
    words = frozenset(w for w in words if X.in_language(w))
    if not words:
        return EMPTY
    while depth > 0:
        parents = {w[:-1] for w in words}
        complete = all(
            all(p + c in words for c in X.successors(X.run(p))) for p in parents
        )
        if not complete:
            break
        words = frozenset(parents)
        depth -= 1
    return ClopenSet(depth, words)


def lift(X: Sft, K: ClopenSet, depth) -> frozenset:
    """Words of length `depth` (>= K.depth) whose cylinders make up K."""
    out = set(K.words)
    for _ in range(depth - K.depth):
        out = {w + c for w in out for c in X.successors(X.run(w))}
    return frozenset(out)


def full(X: Sft) -> ClopenSet:
    return EMPTY if X.is_empty else ClopenSet(0, frozenset({""}))


def cylinder(X: Sft, alpha) -> ClopenSet:
    X.check_word(alpha)
    return normalize(X, len(alpha), [alpha])


def _binary(X, K, L, op):
    d = max(K.depth, L.depth)
    return normalize(X, d, op(lift(X, K, d), lift(X, L, d)))


def union(X, K, L):
    return _binary(X, K, L, frozenset.union)


def intersection(X, K, L):
    return _binary(X, K, L, frozenset.intersection)


def difference(X, K, L):
    return _binary(X, K, L, frozenset.difference)


def subset(X, K, L):
    return difference(X, K, L).is_empty


def contains(K: ClopenSet, x: Point) -> bool:
    return x.prefix(K.depth) in K.words


def prepend(X: Sft, alpha, K: ClopenSet) -> ClopenSet:
    """{alpha y : y in K, alpha y in X}.

    Lifting K to depth >= memory makes membership of alpha y in X depend
    only on the word alpha w.
    """
    d = max(K.depth, X.memory)
    return normalize(X, len(alpha) + d, [alpha + w for w in lift(X, K, d)])


def strip(X: Sft, alpha, K: ClopenSet) -> ClopenSet:
    """{y : alpha y in K}."""
    d = max(K.depth, len(alpha) + X.memory)
    return normalize(X, d - len(alpha), [w[len(alpha):] for w in lift(X, K, d) if w.startswith(alpha)])


def c_set(X: Sft, f, alpha) -> ClopenSet:
    """C(f, alpha) = {alpha x in X : f x in X}."""
    return prepend(X, alpha, strip(X, f, full(X)))


def c_fset(X: Sft, F, alpha) -> ClopenSet:
    """C(F; alpha): intersection of C(f, alpha) over f in F (C(alpha) when F is empty)."""
    out = cylinder(X, alpha)
    for f in F:
        out = intersection(X, out, c_set(X, f, alpha))
    return out


def is_singleton(X: Sft, K: ClopenSet) -> bool:
    if len(K.words) != 1:
        return False
    (w,) = K.words
    return X.follower_is_single(X.run(w))


def points_in(X: Sft, K: ClopenSet, pool):
    return [x for x in pool if contains(K, x)]
