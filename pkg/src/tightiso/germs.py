"""The tight groupoid of a finite inverse semigroup as explicit tables."""

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .errors import DomainViolation, InputError, InvariantViolation, SandwichViolation
from .isotropy import s_iso, w_set
from .semigroup import InverseSemigroup
from .spectrum import Filter, TightSpectrum, tight_filters, up_closure
from .verdict import Verdict


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    """Arrows 0..n-1 with unit indices for source/range.

    ``mul[i, j]`` is the arrow ``i j`` (defined when ``src[i] == rng[j]``) or -1.
    ``units[u]`` is the arrow id of the identity at unit u.
    """

    src: tuple
    rng: tuple
    mul: np.ndarray
    inv: tuple
    units: tuple
    labels: tuple = ()

    def __len__(self):
        return len(self.src)

    @property
    def n_units(self):
        return len(self.units)

    @cached_property
    def unit_set(self):
        return frozenset(self.units)

    @cached_property
    def composable(self):
        """Arrays (I, J, K) of all composable pairs with K = I J."""
        I, J = np.nonzero(self.mul >= 0)
        return I, J, self.mul[I, J]

    def arrows_from(self, u):
        """G_u: arrows with source u, in id order."""
        return tuple(g for g in range(len(self)) if self.src[g] == u)

    @cached_property
    def orbits(self):
        parent = list(range(self.n_units))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in range(len(self)):
            a, b = find(self.src[g]), find(self.rng[g])
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups = {}
        for u in range(self.n_units):
            groups.setdefault(find(u), []).append(u)
        return tuple(tuple(v) for _, v in sorted(groups.items()))

    def to_json(self):
        return {
            "units": [{"index": u, "arrow": a} for u, a in enumerate(self.units)],
            "arrows": [
                {"id": g, "src": self.src[g], "rng": self.rng[g], "rep": self._label(g)}
                for g in range(len(self))
            ],
            "mul": [[None if v < 0 else int(v) for v in row] for row in self.mul],
        }

    def _label(self, g):
        return self.labels[g] if self.labels else str(g)


def groupoid_from_json(data) -> FiniteGroupoid:
    """Rebuild a finite groupoid from an exported JSON object."""
    try:
        arrows = sorted(data["arrows"], key=lambda a: a["id"])
        n = len(arrows)
        if [a["id"] for a in arrows] != list(range(n)):
            raise InputError("arrow ids must be 0..n-1")
        src = tuple(int(a["src"]) for a in arrows)
        rng = tuple(int(a["rng"]) for a in arrows)
        mul = np.array([[-1 if v is None else int(v) for v in row] for row in data["mul"]], dtype=np.int64)
        units = tuple(int(u["arrow"]) for u in sorted(data["units"], key=lambda u: u["index"]))
        labels = tuple(str(a.get("rep", a["id"])) for a in arrows)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed groupoid JSON: {exc}") from None
    if mul.shape != (n, n):
        raise InputError("mul table shape does not match arrow count")
    inv = []
    for g in range(n):
        cands = [h for h in range(n) if mul[g, h] == units[rng[g]] and mul[h, g] == units[src[g]]]
        if len(cands) != 1:
            raise InputError(f"arrow {g} has no unique inverse")
        inv.append(cands[0])
    mul.setflags(write=False)
    return FiniteGroupoid(src, rng, mul, tuple(inv), units, labels)


def groupoid_axioms(G: FiniteGroupoid) -> Verdict:
    """Exhaustive check of the groupoid axioms on the tables."""
    n = len(G)
    for g in range(n):
        h = G.inv[g]
        if G.src[h] != G.rng[g] or G.rng[h] != G.src[g] or G.inv[h] != g:
            return Verdict(False, witness=("inverse", g))
        if G.mul[h, g] != G.units[G.src[g]] or G.mul[g, h] != G.units[G.rng[g]]:
            return Verdict(False, witness=("inverse-product", g))
        if G.mul[g, G.units[G.src[g]]] != g or G.mul[G.units[G.rng[g]], g] != g:
            return Verdict(False, witness=("unit", g))
    for g, h in product(range(n), repeat=2):
        defined = G.mul[g, h] >= 0
        if defined != (G.src[g] == G.rng[h]):
            return Verdict(False, witness=("domain", g, h))
        if defined:
            k = G.mul[g, h]
            if G.src[k] != G.src[h] or G.rng[k] != G.rng[g]:
                return Verdict(False, witness=("src/rng of product", g, h))
    I, J, K = G.composable
    for g, h, gh in zip(I, J, K):
        for k in range(n):
            if G.src[h] == G.rng[k]:
                if G.mul[gh, k] != G.mul[g, G.mul[h, k]]:
                    return Verdict(False, witness=("associativity", int(g), int(h), k))
    return Verdict(True)


def is_subgroupoid(G: FiniteGroupoid, arrows) -> bool:
    A = frozenset(arrows)
    if any(G.inv[g] not in A for g in A):
        return False
    return all(G.mul[g, h] in A for g in A for h in A if G.mul[g, h] >= 0)


def theta(S: InverseSemigroup, s, xi: Filter) -> Filter:
    """Image of the filter xi under conjugation by s, up-closed."""
    if S.source_idem(s) not in xi.members:
        raise DomainViolation(f"filter does not contain s*s for s = {S.elements[s]}")
    st = int(S.star[s])
    image = up_closure(S, {S.m(s, e, st) for e in xi.members})
    if S.range_idem(s) not in image:
        raise InvariantViolation("theta_s(xi) misses ss*", witness=s)
    E = S.idempotents
    low = [e for e in image if all(E.le(e, f) for f in image)]
    return Filter(image, low[0])


def germ_eq(S: InverseSemigroup, s, t, xi: Filter) -> bool:
    """(s, xi) ~ (t, xi): some e in xi has se = te."""
    if S.source_idem(s) not in xi.members or S.source_idem(t) not in xi.members:
        raise DomainViolation("xi must lie in D_{s*s} and D_{t*t}")
    return any(S.mul[s, e] == S.mul[t, e] for e in xi.members)


@dataclass(frozen=True, eq=False)
class GermGroupoid(FiniteGroupoid):
    """Groupoid of germs [s, xi]; arrow g has canonical representative
    ``reps[g]`` (least element index in the class) and source filter
    ``spectrum.tight[src[g]]``.
    """

    semigroup: InverseSemigroup = None
    spectrum: TightSpectrum = None
    reps: tuple = ()
    classes: tuple = ()  # all representatives of each arrow
    lookup: dict = field(default_factory=dict)  # (s, unit) -> arrow

    def arrow(self, s, u):
        """Arrow id of the germ [s, xi_u]."""
        try:
            return self.lookup[(s, u)]
        except KeyError:
            raise DomainViolation(
                f"tight filter {u} is not in D_(s*s) for s = {self.semigroup.elements[s]}"
            ) from None

    def bisection(self, s, U=None) -> frozenset:
        """Theta(s, U) for U a set of unit indices inside D_{s*s} (default all of it)."""
        dom = self.spectrum.basic(self.semigroup.source_idem(s))
        U = dom if U is None else frozenset(U)
        if not U <= dom:
            raise DomainViolation("U is not contained in D_(s*s)")
        return frozenset(self.lookup[(s, u)] for u in U)

    def basis(self, s, e) -> frozenset:
        """Theta(s, D_e)."""
        return self.bisection(s, self.spectrum.basic(e))

    @cached_property
    def basic_open_sets(self):
        """Theta(s, D_e) for all s and nonzero e <= s*s."""
        S = self.semigroup
        E = S.idempotents
        out = set()
        for s in range(len(S)):
            for e in E.down(S.source_idem(s)):
                if e != S.zero:
                    B = self.basis(s, e)
                    if B:
                        out.add(B)
        return sorted(out, key=sorted)

    def interior(self, A) -> frozenset:
        A = frozenset(A)
        out = set()
        for B in self.basic_open_sets:
            if B <= A:
                out |= B
        return frozenset(out)

    def closure(self, A) -> frozenset:
        A = frozenset(A)
        return frozenset(
            g for g in range(len(self)) if all(B & A for B in self.basic_open_sets if g in B)
        )

    def to_json(self):
        data = super().to_json()
        spec = self.spectrum
        for u, entry in enumerate(data["units"]):
            entry["filter"] = spec.names(u)
        for entry in data["arrows"]:
            entry["filter"] = spec.names(entry["src"])
        return data


def tight_groupoid(S: InverseSemigroup, spec: TightSpectrum = None) -> GermGroupoid:
    """Enumerate germ classes [s, xi] for xi in D_{s*s} and tabulate the
    groupoid operations.  Arrows are ordered by (source filter, representative).
    """
    if spec is None:
        spec = tight_filters(S)
    n = len(S)
    reps, srcs, classes = [], [], []
    lookup = {}
    for u, xi in enumerate(spec.tight):
        local = []  # (rep, members)
        for s in range(n):
            if S.source_idem(s) not in xi.members:
                continue
            for rep, members in local:
                if germ_eq(S, rep, s, xi):
                    members.append(s)
                    break
            else:
                local.append((s, [s]))
        for rep, members in local:
            g = len(reps)
            reps.append(rep)
            srcs.append(u)
            classes.append(tuple(members))
            for m in members:
                lookup[(m, u)] = g

    def unit_of(F):
        try:
            return spec.index_of(F.members)
        except KeyError:
            raise InvariantViolation("theta maps a tight filter outside the tight spectrum") from None

    rngs = [unit_of(theta(S, reps[g], spec.tight[srcs[g]])) for g in range(len(reps))]
    inv = [lookup[(int(S.star[reps[g]]), rngs[g])] for g in range(len(reps))]
    units = tuple(lookup[(spec.tight[u].minimum, u)] for u in range(len(spec)))
    m = len(reps)
    mul = np.full((m, m), -1, dtype=np.int64)
    for i in range(m):
        for j in range(m):
            if srcs[i] == rngs[j]:
                mul[i, j] = lookup[(S.m(reps[i], reps[j]), srcs[j])]
    mul.setflags(write=False)
    labels = tuple(S.elements[r] for r in reps)
    return GermGroupoid(
        tuple(srcs), tuple(rngs), mul, tuple(inv), units, labels,
        semigroup=S, spectrum=spec, reps=tuple(reps), classes=tuple(classes), lookup=lookup,
    )


@dataclass(frozen=True)
class IsotropyDecomposition:
    units: frozenset
    iso: frozenset
    iso_interior: frozenset
    siso_part: frozenset
    x_f: frozenset


def isotropy_decomposition(S: InverseSemigroup, G: GermGroupoid, siso=None) -> IsotropyDecomposition:
    """Iso(G), its interior, the S^iso part and X_F, with the sandwich
    G(S^iso) <= Iso° <= closure(G(S^iso)) checked.
    """
    if siso is None:
        siso = s_iso(S)
    spec = G.spectrum
    iso = frozenset(g for g in range(len(G)) if G.src[g] == G.rng[g])
    by_weak_fixing = set()
    for g in range(len(G)):
        xi = spec.tight[G.src[g]].members
        verdicts = {any(e in xi for e in w_set(S, s)) for s in G.classes[g]}
        if len(verdicts) != 1:
            raise SandwichViolation("weak-fixing criterion depends on the representative", witness=g)
        if verdicts.pop():
            by_weak_fixing.add(g)
    interior = G.interior(iso)
    if interior != by_weak_fixing:
        raise SandwichViolation(
            "topological interior of Iso disagrees with the weakly-fixed criterion",
            witness=sorted(interior ^ by_weak_fixing),
        )
    siso_part = frozenset(g for g in range(len(G)) if any(s in siso for s in G.classes[g]))
    units = G.unit_set
    if not units <= siso_part <= interior <= iso:
        raise SandwichViolation("units <= G(S^iso) <= Iso° <= Iso fails")
    if not interior <= G.closure(siso_part):
        raise SandwichViolation("Iso° not inside the closure of G(S^iso)")
    if not is_subgroupoid(G, interior) or not is_subgroupoid(G, siso_part):
        raise SandwichViolation("interior or S^iso part is not a subgroupoid")
    x_f = frozenset(
        u for u in range(G.n_units)
        if {g for g in siso_part if G.src[g] == u == G.rng[g]} == {g for g in iso if G.src[g] == u}
    )
    if unit_closure(G, x_f) != frozenset(range(G.n_units)):
        raise SandwichViolation("X_F is not dense in the unit space", witness=sorted(x_f))
    return IsotropyDecomposition(units, iso, interior, siso_part, x_f)


def unit_closure(G: GermGroupoid, U) -> frozenset:
    """Closure of a set of units, using the basic sets D_e."""
    U = frozenset(U)
    S = G.semigroup
    opens = [G.spectrum.basic(e) for e in S.idempotents.nonzero]
    return frozenset(u for u in range(G.n_units) if all(B & U for B in opens if u in B))


def is_effective(G: GermGroupoid, decomposition: IsotropyDecomposition = None) -> bool:
    if decomposition is None:
        decomposition = isotropy_decomposition(G.semigroup, G)
    return decomposition.iso_interior == decomposition.units


def to_dot(G: FiniteGroupoid, name="G") -> str:
    """Units as nodes, non-unit arrows as labelled edges from source to range."""
    lines = [f"digraph {json.dumps(name)} {{"]
    for u in range(G.n_units):
        label = G._label(G.units[u])
        if isinstance(G, GermGroupoid):
            label = "{" + ",".join(G.spectrum.names(u)) + "}"
        lines.append(f"  u{u} [label={json.dumps(label)}];")
    for g in range(len(G)):
        if g in G.unit_set:
            continue
        lines.append(f"  u{G.src[g]} -> u{G.rng[g]} [label={json.dumps(G._label(g))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
