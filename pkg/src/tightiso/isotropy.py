"""Weakly fixed idempotents, S^iso, the centralizer, and the Z_s regions."""

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvariantViolation, PreconditionE
from .semigroup import InverseSemigroup, is_cover, natural_leq
from .spectrum import TightSpectrum, tight_filters
from .verdict import Verdict


def is_weakly_fixed(S: InverseSemigroup, s, e) -> bool:
    """True iff s f s* f != 0 for every nonzero idempotent f <= e.

    Requires e idempotent with e <= s*s.
    """
    E = S.idempotents
    if e not in E:
        raise PreconditionE(f"{S.elements[e]} is not idempotent")
    if not E.le(e, S.source_idem(s)):
        raise PreconditionE(f"{S.elements[e]} is not below s*s for s = {S.elements[s]}")
    st = int(S.star[s])
    return all(S.m(s, f, st, f) != S.zero for f in E.down(e) if f != S.zero)


def is_fixed(S, s, e):
    return int(S.mul[s, e]) == e


def w_set(S, s) -> frozenset:
    """W_s: the nonzero idempotents weakly fixed by s."""
    E = S.idempotents
    return frozenset(
        e for e in E.down(S.source_idem(s)) if e != S.zero and is_weakly_fixed(S, s, e)
    )


def j_set(S, s) -> frozenset:
    """J_s = {e in E(S) : e <= s}, zero included."""
    return frozenset(e for e in S.idempotents if natural_leq(S, e, s))


def s_iso(S: InverseSemigroup) -> frozenset:
    """{s : s*s is weakly fixed by s}; checked to be an inverse subsemigroup."""
    out = frozenset(s for s in range(len(S)) if is_weakly_fixed(S, s, S.source_idem(s)))
    if not set(S.idempotents) <= out:
        raise InvariantViolation("E(S) not contained in S^iso", witness=set(S.idempotents) - out)
    w = closure_witness(S, out)
    if w is not None:
        raise InvariantViolation("S^iso not closed under product/star", witness=w)
    return out


def closure_witness(S, subset):
    """A pair (s, t) with st outside `subset`, a singleton (s,) with s* outside, or None."""
    for s in subset:
        if int(S.star[s]) not in subset:
            return (s,)
        for t in subset:
            if int(S.mul[s, t]) not in subset:
                return (s, t)
    return None


def centralizer(S: InverseSemigroup) -> frozenset:
    """Z(S): elements commuting with every idempotent."""
    E = tuple(S.idempotents)
    return frozenset(
        s for s in range(len(S)) if all(S.mul[s, e] == S.mul[e, s] for e in E)
    )


def is_zero_disjunctive(S: InverseSemigroup) -> Verdict:
    """For all idempotents 0 < e < f there must be 0 < e' < f with e e' = 0.

    The witness on failure is the offending pair (e, f).
    """
    E = S.idempotents
    for f in E.nonzero:
        below = [x for x in E.down(f) if x not in (f, S.zero)]
        for e in below:
            if not any(S.mul[e, x] == S.zero for x in below):
                return Verdict(False, witness=(e, f), detail=f"no e' below {S.elements[f]} disjoint from {S.elements[e]}")
    return Verdict(True)


@dataclass(frozen=True)
class ZeroDisjunctiveReport:
    zero_disjunctive: bool
    centralizer_in_siso: bool
    conclusions_checked: bool
    centralizer_equals_siso: bool
    witness: object = None


def lemma_0dis_check(S: InverseSemigroup) -> ZeroDisjunctiveReport:
    """Z(S) <= S^iso always; for 0-disjunctive S also s*s = ss*, ses* = e
    below s*s, and Z(S) = S^iso.  Raises InvariantViolation on failure.
    """
    Z = centralizer(S)
    Siso = s_iso(S)
    if not Z <= Siso:
        raise InvariantViolation("Z(S) not contained in S^iso", witness=sorted(Z - Siso))
    dis = is_zero_disjunctive(S)
    if dis:
        for s in Siso:
            if S.source_idem(s) != S.range_idem(s):
                raise InvariantViolation("s*s != ss* for s in S^iso", witness=s)
            st = int(S.star[s])
            for e in S.idempotents.down(S.source_idem(s)):
                if e != S.zero and S.m(s, e, st) != e:
                    raise InvariantViolation("ses* != e", witness=(s, e))
        if Z != Siso:
            raise InvariantViolation("Z(S) != S^iso for 0-disjunctive S", witness=sorted(Siso - Z))
    return ZeroDisjunctiveReport(bool(dis), True, bool(dis), Z == Siso, dis.witness)


def condition_h(S: InverseSemigroup) -> Verdict:
    """Every J_s has a finite cover; for finite S the witness is J_s minus zero."""
    witnesses = {}
    for s in range(len(S)):
        J = j_set(S, s)
        C = J - {S.zero}
        if not is_cover(S, C, J):
            raise InvariantViolation("J_s minus zero fails to cover J_s", witness=s)
        witnesses[s] = frozenset(C)
    return Verdict(True, witness=witnesses)


def maximal_elements(S, D):
    E = S.idempotents
    return frozenset(d for d in D if not any(d != x and E.le(d, x) for x in D))


def greedy_cover(S, D):
    """A cover of D built by dropping members while the rest still covers."""
    down = _down_closure(S, D)
    C = set(D)
    for d in sorted(D, reverse=True):
        trial = C - {d}
        if is_cover(S, trial, down):
            C = trial
    return frozenset(C)


def _down_closure(S, D):
    E = S.idempotents
    out = set()
    for d in D:
        out |= E.down(d)
    return frozenset(out)


def covers_of(S, D, limit=8):
    """All subsets of D that cover D (D assumed down-closed up to zero)."""
    D = sorted(D)
    if len(D) > limit:
        raise ValueError(f"refusing to enumerate covers of a {len(D)}-element set")
    down = _down_closure(S, D)
    for k in range(len(D) + 1):
        for combo in combinations(D, k):
            if is_cover(S, combo, down):
                yield frozenset(combo)


def union_of_basic(spec: TightSpectrum, C) -> frozenset:
    out = set()
    for c in C:
        out |= spec.basic(c)
    return frozenset(out)


def candidate_covers(S, s):
    """Distinct covers of W_s used to compute Z_s: maximal elements first."""
    W = w_set(S, s)
    if not W:
        return [frozenset()]
    out = []
    for C in (maximal_elements(S, W), W, greedy_cover(S, W)):
        if C not in out:
            out.append(C)
    return out


def z_region(S, s, spec: TightSpectrum = None) -> frozenset:
    """Z_s as tight-filter indices, computed from every candidate cover of W_s.

    All candidates must give the same union of D-sets; empty when W_s is empty.
    """
    if spec is None:
        spec = tight_filters(S)
    W = w_set(S, s)
    down = _down_closure(S, W) if W else frozenset({S.zero})
    results = []
    for C in candidate_covers(S, s):
        if not is_cover(S, C, down):
            raise InvariantViolation("candidate is not a cover of W_s", witness=sorted(C))
        results.append(union_of_basic(spec, C))
    if any(r != results[0] for r in results):
        raise InvariantViolation("Z_s depends on the chosen cover", witness=(s, results))
    return results[0]


@dataclass(frozen=True)
class IsotropyReport:
    s_iso: frozenset
    centralizer: frozenset
    w_sets: dict
    j_sets: dict
    zero_disjunctive: bool
    zero_disjunctive_witness: object
    condition_h: bool
    condition_h_witnesses: dict
    z_regions: dict
    semigroup: InverseSemigroup = field(repr=False, compare=False, default=None)

    def to_json(self):
        S = self.semigroup
        nm = S.names
        spec = tight_filters(S)
        wit = self.zero_disjunctive_witness
        return {
            "s_iso": nm(self.s_iso),
            "centralizer": nm(self.centralizer),
            "zero_disjunctive": self.zero_disjunctive,
            "zero_disjunctive_witness": None if wit is None else [S.elements[w] for w in wit],
            "condition_h": self.condition_h,
            "condition_h_witnesses": {S.elements[s]: nm(c) for s, c in sorted(self.condition_h_witnesses.items())},
            "w_sets": {S.elements[s]: nm(w) for s, w in sorted(self.w_sets.items())},
            "j_sets": {S.elements[s]: nm(j) for s, j in sorted(self.j_sets.items())},
            "z_regions": {
                S.elements[s]: [spec.names(k) for k in sorted(z)] for s, z in sorted(self.z_regions.items())
            },
        }


def isotropy_report(S: InverseSemigroup, spec: TightSpectrum = None) -> IsotropyReport:
    if spec is None:
        spec = tight_filters(S)
    dis = is_zero_disjunctive(S)
    h = condition_h(S)
    n = len(S)
    return IsotropyReport(
        s_iso=s_iso(S),
        centralizer=centralizer(S),
        w_sets={s: w_set(S, s) for s in range(n)},
        j_sets={s: j_set(S, s) for s in range(n)},
        zero_disjunctive=bool(dis),
        zero_disjunctive_witness=dis.witness,
        condition_h=bool(h),
        condition_h_witnesses=h.witness,
        z_regions={s: z_region(S, s, spec) for s in range(n)},
        semigroup=S,
    )
