"""Finite inverse semigroups given by multiplication tables.

Elements are dense integer indices ``0..n-1`` with a parallel tuple of names.
``mul[i, j]`` is the index of the product of element ``i`` by element ``j``
(for partial maps: apply ``j`` first).  A zero is always present; tables
without one get a zero adjoined and ``zero_adjoined`` set.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable

import numpy as np

from .errors import (
    CNotSubsetOfD,
    InvalidZero,
    NoInverse,
    NonAssociative,
    NonUniqueInverse,
    ShapeError,
    StarMismatch,
)
from .verdict import Verdict


@dataclass(frozen=True, eq=False)
class InverseSemigroup:
    elements: tuple
    mul: np.ndarray
    star: np.ndarray
    zero: int
    name: str = "S"
    zero_adjoined: bool = field(default=False)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"InverseSemigroup({self.name!r}, {len(self)} elements)"

    def index(self, name):
        """Index of the element called `name` (ints pass through)."""
        if isinstance(name, (int, np.integer)):
            return int(name)
        try:
            return self._name_index[name]
        except KeyError:
            raise KeyError(f"no element named {name!r} in {self.name}") from None

    @cached_property
    def _name_index(self):
        return {nm: i for i, nm in enumerate(self.elements)}

    def m(self, *factors):
        """Product of any number of elements, left to right."""
        out = factors[0]
        for f in factors[1:]:
            out = int(self.mul[out, f])
        return int(out)

    def source_idem(self, s):
        """s*s"""
        return int(self.mul[self.star[s], s])

    def range_idem(self, s):
        """ss*"""
        return int(self.mul[s, self.star[s]])

    def names(self, idx):
        return [self.elements[i] for i in sorted(idx)]

    @cached_property
    def idempotents(self):
        return idempotents(self)

    def is_idempotent(self, s):
        return int(self.mul[s, s]) == s

    def to_json(self):
        return {
            "name": self.name,
            "elements": list(self.elements),
            "mul": self.mul.tolist(),
            "star": self.star.tolist(),
            "zero": self.zero,
        }


@dataclass(frozen=True, eq=False)
class IdempotentSet:
    """The semilattice E(S).

    ``members`` is sorted by element index; ``leq[i, j]`` and ``meet[i, j]``
    are indexed by *positions* in ``members`` while ``meet`` stores element
    indices.
    """

    members: tuple
    leq: np.ndarray
    meet: np.ndarray
    zero: int

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, e):
        return e in self.position

    @cached_property
    def position(self):
        return {e: k for k, e in enumerate(self.members)}

    @cached_property
    def nonzero(self):
        return tuple(e for e in self.members if e != self.zero)

    def le(self, e, f):
        return bool(self.leq[self.position[e], self.position[f]])

    def down(self, e):
        """All idempotents below `e`, zero included."""
        return self._down[e]

    def up(self, e):
        return self._up[e]

    @cached_property
    def _down(self):
        return {
            e: frozenset(self.members[k] for k in np.flatnonzero(self.leq[:, i]))
            for i, e in enumerate(self.members)
        }

    @cached_property
    def _up(self):
        return {
            e: frozenset(self.members[k] for k in np.flatnonzero(self.leq[i, :]))
            for i, e in enumerate(self.members)
        }

    @cached_property
    def minimal_nonzero(self):
        return tuple(e for e in self.nonzero if self.down(e) == {e, self.zero})


def _as_table(mul):
    try:
        arr = np.asarray(mul, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"multiplication table is not an integer array: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ShapeError(f"multiplication table must be square and nonempty, got shape {arr.shape}")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        bad = tuple(int(v) for v in np.argwhere((arr < 0) | (arr >= n))[0])
        raise ShapeError(f"table entry {bad} out of range", witness=bad)
    return arr


def associativity_witness(mul):
    """First triple (a, b, c) with (ab)c != a(bc), or None."""
    n = mul.shape[0]
    idx = np.arange(n)
    left = mul[mul[:, :, None], idx[None, None, :]]
    right = mul[idx[:, None, None], mul[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        return tuple(int(v) for v in bad[0])
    return None


def _find_zero(mul):
    n = mul.shape[0]
    for z in range(n):
        if np.all(mul[z, :] == z) and np.all(mul[:, z] == z):
            return z
    return None


def _adjoin_zero(mul):
    n = mul.shape[0]
    out = np.full((n + 1, n + 1), n, dtype=np.int64)
    out[:n, :n] = mul
    return out


def inverse_candidates(mul):
    """Boolean matrix: cand[s, t] iff s t s = s and t s t = t."""
    n = mul.shape[0]
    idx = np.arange(n)
    sts = mul[mul[idx[:, None], idx[None, :]], idx[:, None]]
    tst = mul[mul[idx[None, :], idx[:, None]], idx[None, :]]
    return (sts == idx[:, None]) & (tst == idx[None, :])


def validate(mul, star=None, *, zero=None, elements=None, name="S"):
    """Check the inverse semigroup axioms exhaustively and build the structure.

    Checks run in a fixed order, so a defective table always reports the same
    error class: shape, associativity, zero, existence/uniqueness of
    inverses, then agreement of the supplied `star` with the computed
    inverses.  When `zero` is None a zero element is searched for and, if
    there is none, adjoined (``zero_adjoined=True``, named ``"0"``).
    """
    arr = _as_table(mul)
    n = arr.shape[0]
    if elements is None:
        elements = tuple(str(i) for i in range(n))
    elements = tuple(str(e) for e in elements)
    if len(elements) != n:
        raise ShapeError(f"{len(elements)} element names for a {n}x{n} table")
    if len(set(elements)) != n:
        raise ShapeError("element names must be distinct")
    star_arr = None
    if star is not None:
        star_arr = np.asarray(star, dtype=np.int64)
        if star_arr.shape != (n,):
            raise ShapeError(f"star must have length {n}, got shape {star_arr.shape}")
        if n and (star_arr.min() < 0 or star_arr.max() >= n):
            raise ShapeError("star entry out of range")
    if zero is not None and not 0 <= zero < n:
        raise ShapeError(f"zero index {zero} out of range")

    w = associativity_witness(arr)
    if w is not None:
        a, b, c = w
        raise NonAssociative(
            f"(ab)c != a(bc) for (a, b, c) = ({elements[a]}, {elements[b]}, {elements[c]})",
            witness=w,
        )

    adjoined = False
    if zero is not None:
        if not (np.all(arr[zero, :] == zero) and np.all(arr[:, zero] == zero)):
            bad = next(s for s in range(n) if arr[zero, s] != zero or arr[s, zero] != zero)
            raise InvalidZero(f"{elements[zero]} is not a zero: fails against {elements[bad]}", witness=bad)
    else:
        zero = _find_zero(arr)
        if zero is None:
            arr = _adjoin_zero(arr)
            zero = n
            adjoined = True
            base = "0" if "0" not in elements else "zero"
            elements = elements + (base,)
            if star_arr is not None:
                star_arr = np.append(star_arr, n)
            n += 1

    cand = inverse_candidates(arr)
    counts = cand.sum(axis=1)
    if np.any(counts == 0):
        s = int(np.flatnonzero(counts == 0)[0])
        raise NoInverse(f"{elements[s]} has no inverse", witness=s)
    if np.any(counts > 1):
        s = int(np.flatnonzero(counts > 1)[0])
        both = tuple(int(t) for t in np.flatnonzero(cand[s]))
        raise NonUniqueInverse(f"{elements[s]} has several inverses {[elements[t] for t in both]}", witness=s)
    inverse = cand.argmax(axis=1).astype(np.int64)
    if star_arr is not None and not np.array_equal(star_arr, inverse):
        s = int(np.flatnonzero(star_arr != inverse)[0])
        raise StarMismatch(
            f"star({elements[s]}) given as {elements[star_arr[s]]}, unique inverse is {elements[inverse[s]]}",
            witness=s,
        )
    arr.setflags(write=False)
    inverse.setflags(write=False)
    return InverseSemigroup(elements, arr, inverse, int(zero), name, adjoined)


def from_json(data):
    """Build from the documented JSON object ``{name, elements, mul, star, zero}``."""
    return validate(
        data["mul"],
        data.get("star"),
        zero=data.get("zero"),
        elements=data.get("elements"),
        name=data.get("name", "S"),
    )


def idempotents(S: InverseSemigroup) -> IdempotentSet:
    diag = S.mul[np.arange(len(S)), np.arange(len(S))]
    members = tuple(int(e) for e in np.flatnonzero(diag == np.arange(len(S))))
    sub = S.mul[np.ix_(members, members)]
    leq = sub == np.asarray(members)[:, None]
    leq.setflags(write=False)
    sub = sub.copy()
    sub.setflags(write=False)
    return IdempotentSet(members, leq, sub, S.zero)


def natural_leq(S, s, t):
    """s <= t in the natural partial order: s = t (s* s)."""
    return int(S.mul[t, S.mul[S.star[s], s]]) == s


def is_cover(S, C: Iterable[int], D: Iterable[int]) -> Verdict:
    """Does C cover D?  Every nonzero e in D must meet (ec != 0) some c in C.

    The witness on failure is the first uncovered element of D.
    """
    C = sorted(set(C))
    D = sorted(set(D))
    extra = set(C) - set(D)
    if extra:
        raise CNotSubsetOfD(f"{S.names(extra)} not contained in D")
    for e in D:
        if e == S.zero:
            continue
        if not any(S.mul[e, c] != S.zero for c in C):
            return Verdict(False, witness=e, detail=f"{S.elements[e]} meets no member of C")
    return Verdict(True)


def is_cover_of_idempotent(S, C, e) -> Verdict:
    return is_cover(S, C, S.idempotents.down(e))


def minimal_covers(S, e, max_size=None):
    """Yield every inclusion-minimal cover of the idempotent `e`.

    Exhaustive over subsets of the nonzero part of the down-set of `e`; the
    empty set is the unique minimal cover of zero.
    """
    E = S.idempotents
    pool = sorted(E.down(e) - {S.zero})
    if not pool:
        yield frozenset()
        return
    found = []
    limit = len(pool) if max_size is None else min(max_size, len(pool))
    for size in range(1, limit + 1):
        for combo in combinations(pool, size):
            cs = frozenset(combo)
            if any(f <= cs for f in found):
                continue
            if is_cover(S, cs, E.down(e)):
                found.append(cs)
                yield cs


def order_compatibility_witness(S):
    """First (s, t, u) with s <= t but us not <= ut, or None."""
    n = len(S)
    for s, t in product(range(n), repeat=2):
        if not natural_leq(S, s, t):
            continue
        for u in range(n):
            if not natural_leq(S, int(S.mul[u, s]), int(S.mul[u, t])):
                return (s, t, u)
    return None
