"""Filters, ultrafilters and tight filters on the idempotent semilattice."""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .errors import CharacterizationMismatch, SizeLimit
from .semigroup import InverseSemigroup, is_cover

GENERIC_LIMIT = 12


@dataclass(frozen=True)
class Filter:
    members: frozenset
    minimum: int

    def __contains__(self, e):
        return e in self.members

    def __len__(self):
        return len(self.members)


def up_closure(S: InverseSemigroup, A: Iterable[int]) -> frozenset:
    """Idempotents lying above some member of A."""
    E = S.idempotents
    out = set()
    for a in A:
        out |= E.up(a)
    return frozenset(out)


def _principal(S, e):
    return Filter(up_closure(S, [e]), e)


def is_filter(S, members):
    E = S.idempotents
    members = frozenset(members)
    if not members or S.zero in members:
        return False
    for e in members:
        if not E.up(e) <= members:
            return False
    for e, f in combinations(members, 2):
        if int(S.mul[e, f]) not in members:
            return False
    return True


def _generic_filters(S):
    E = S.idempotents
    pool = E.nonzero
    if len(pool) > GENERIC_LIMIT:
        raise SizeLimit(f"generic filter enumeration limited to {GENERIC_LIMIT} nonzero idempotents")
    out = []
    for k in range(1, len(pool) + 1):
        for combo in combinations(pool, k):
            if is_filter(S, combo):
                members = frozenset(combo)
                # a finite down-directed set contains the product of all members
                low = [e for e in members if all(E.le(e, f) for f in members)]
                out.append(Filter(members, low[0]))
    return out


def filters(S: InverseSemigroup, generic=False) -> list:
    """All filters in E(S), sorted by minimum element index.

    The default path builds the principal up-sets of nonzero idempotents;
    ``generic=True`` enumerates subsets instead (cross-check only).
    """
    if generic:
        found = _generic_filters(S)
    else:
        found = [_principal(S, e) for e in S.idempotents.nonzero]
    return sorted(found, key=lambda F: F.minimum)


def ultrafilters(S: InverseSemigroup, generic=False) -> list:
    """Filters not properly contained in any other filter."""
    fs = filters(S, generic=generic)
    return [F for F in fs if not any(F.members < G.members for G in fs)]


def closure_in_power_set(points, candidates, coordinates):
    """Candidates lying in the closure of `points` inside {0,1}^coordinates.

    A basic neighbourhood of a subset A fixes membership on a finite set K of
    coordinates.  With finitely many coordinates the neighbourhood fixing all
    of them is the smallest, so A is a limit point exactly when some point
    agrees with A on every coordinate.
    """
    coords = tuple(coordinates)
    keys = {tuple(c in P for c in coords) for P in points}
    return [A for A in candidates if tuple(c in A for c in coords) in keys]


def is_tight_by_covers(S, xi: Filter) -> bool:
    """Cover characterization: every cover of every e in xi meets xi.

    Covers are monotone, so it suffices to test the largest candidate
    ``down(e) minus xi`` for each e in xi.
    """
    E = S.idempotents
    for e in xi.members:
        outside = E.down(e) - xi.members
        if is_cover(S, outside, E.down(e)):
            return False
    return True


@dataclass(frozen=True, eq=False)
class TightSpectrum:
    semigroup: InverseSemigroup
    tight: tuple
    ultra: tuple  # flags parallel to `tight`

    def __len__(self):
        return len(self.tight)

    def index_of(self, members) -> int:
        return self._lookup[frozenset(members)]

    @cached_property
    def _lookup(self):
        return {F.members: k for k, F in enumerate(self.tight)}

    def basic(self, e) -> frozenset:
        """D_e as a set of indices into `tight`."""
        return frozenset(k for k, F in enumerate(self.tight) if e in F.members)

    def basic2(self, x, Y=()) -> frozenset:
        """U(x, Y): tight filters containing x and missing every y in Y."""
        Y = tuple(Y)
        return frozenset(
            k for k, F in enumerate(self.tight) if x in F.members and not any(y in F.members for y in Y)
        )

    def names(self, k):
        F = self.tight[k]
        return self.semigroup.names(F.members)


def tight_filters(S: InverseSemigroup, generic=False) -> TightSpectrum:
    """Tight filters computed as the closure of the ultrafilters and, separately,
    by the cover characterization; the two must coincide.
    """
    fs = filters(S, generic=generic)
    ultra = ultrafilters(S, generic=generic)
    by_closure = closure_in_power_set(
        [U.members for U in ultra], [F.members for F in fs], S.idempotents.members
    )
    by_covers = [F.members for F in fs if is_tight_by_covers(S, F)]
    if set(by_closure) != set(by_covers):
        diff = set(by_closure) ^ set(by_covers)
        raise CharacterizationMismatch(
            "closure and cover characterizations of tight filters disagree",
            witness=[S.names(d) for d in diff],
        )
    ultra_sets = {U.members for U in ultra}
    tight = tuple(F for F in fs if F.members in set(by_closure))
    return TightSpectrum(S, tight, tuple(F.members in ultra_sets for F in tight))
