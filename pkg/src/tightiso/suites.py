"""Named verification suites, each tied to a structural statement.

A suite runs against a target (finite semigroup, shift, or monoid) and
returns a list of SuiteResult rows.
"""

from dataclasses import dataclass

import numpy as np

from . import cstar, germs, isotropy, lcm
from .errors import InputError, InvariantViolation, UnknownSuite
from .semigroup import InverseSemigroup, order_compatibility_witness
from .spectrum import tight_filters, ultrafilters
from .subshift import lemmas as sl
from .subshift.finite import finite_sx, span_rank
from .subshift.sft import Sft
from .verdict import Unknown, Verdict


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    status: str  # "pass" | "fail" | "unknown"
    witness: str = ""
    detail: str = ""

    def to_json(self):
        return {"suite": self.suite, "status": self.status, "witness": self.witness, "detail": self.detail}


def _row(name, v, detail=""):
    if isinstance(v, Unknown):
        return SuiteResult(name, "unknown", "", v.detail or f"bounded at depth {v.depth}")
    w = getattr(v, "witness", None)
    return SuiteResult(name, "pass" if v else "fail", "" if w is None else str(w), detail or getattr(v, "detail", ""))


def _guard(name, fn):
    """Run fn; internal cross-check failures become failing rows."""
    try:
        return fn()
    except InvariantViolation as exc:
        return [SuiteResult(name, "fail", str(getattr(exc, "witness", "")), str(exc))]


@dataclass
class Context:
    kind: str  # "semigroup" | "shift" | "monoid"
    target: object
    seed: int = 0
    depth: int = 3

    def rng(self, salt=0):
        return np.random.default_rng([self.seed, salt])

    def semigroup(self) -> InverseSemigroup:
        if self.kind == "semigroup":
            return self.target
        if self.kind == "shift":
            return finite_sx(self.target)[0]
        raise InputError("this suite needs a finite semigroup (or a finite shift)")

    def shift(self) -> Sft:
        if self.kind != "shift":
            raise InputError("this suite needs a shift target")
        return self.target

    def monoid(self):
        if self.kind != "monoid":
            raise InputError("this suite needs a monoid target")
        return self.target


# -- finite semigroup suites ------------------------------------------------

def suite_spectrum(ctx):
    S = ctx.semigroup()
    spec = tight_filters(S)
    ultra = {U.members for U in ultrafilters(S)}
    ok = {F.members for F in spec.tight} == ultra
    out = [_row("spectrum", Verdict(ok, detail=f"{len(spec)} tight filters"))]
    w = order_compatibility_witness(S)
    out.append(_row("spectrum", Verdict(w is None, witness=w, detail="natural order compatible")))
    return out


def suite_siso_subsemigroup(ctx):
    S = ctx.semigroup()
    siso = isotropy.s_iso(S)
    w = isotropy.closure_witness(S, siso)
    return [_row("siso-subsemigroup", Verdict(w is None and set(S.idempotents) <= siso, witness=w))]


def suite_0dis(ctx):
    S = ctx.semigroup()
    rep = isotropy.lemma_0dis_check(S)
    branch = "0-disjunctive branch" if rep.zero_disjunctive else "unconditional inclusion branch"
    return [_row("0dis", Verdict(rep.centralizer_in_siso, detail=branch))]


def suite_zdef(ctx):
    S = ctx.semigroup()
    spec = tight_filters(S)
    multi = 0
    for s in range(len(S)):
        W = isotropy.w_set(S, s)
        regions = set()
        covers = list(isotropy.covers_of(S, W)) if 0 < len(W) <= 8 else isotropy.candidate_covers(S, s)
        for C in covers:
            regions.add(isotropy.union_of_basic(spec, C))
        if len(covers) > 1:
            multi += 1
        if len(regions) > 1:
            return [_row("zdef", Verdict(False, witness=S.elements[s]))]
        isotropy.z_region(S, s, spec)
    return [_row("zdef", Verdict(True, detail=f"{multi} elements with several covers"))]


def suite_sisogiso(ctx):
    S = ctx.semigroup()
    G = germs.tight_groupoid(S)
    d = germs.isotropy_decomposition(S, G)
    ok = d.siso_part == d.iso_interior and d.x_f == frozenset(range(G.n_units))
    return [_row("sisogiso", Verdict(ok, detail=f"{len(d.iso_interior)} interior isotropy arrows"))]


def suite_groupoid(ctx):
    G = germs.tight_groupoid(ctx.semigroup())
    return [_row("groupoid", germs.groupoid_axioms(G)), _row("groupoid", cstar.check_regular_reps(G, ctx.rng(1)))]


def suite_condexp(ctx):
    S = ctx.semigroup()
    G = germs.tight_groupoid(S)
    d = germs.isotropy_decomposition(S, G)
    return [
        _row("condexp", cstar.expectation_formula(S, G, d.siso_part), "E(T_s) = T_s 1_Zs"),
        _row("condexp", cstar.faithfulness_check(G, d.siso_part, ctx.rng(2)), "faithful"),
        _row("condexp", cstar.expectation_properties(G, d.siso_part, ctx.rng(3)), "expectation axioms"),
    ]


def suite_uniqueness(ctx):
    G = germs.tight_groupoid(ctx.semigroup())
    rep = cstar.ideal_meets_subalgebra(G, seed=ctx.seed)
    return [_row("uniqueness", Verdict(rep.ok, witness=rep.blocks))]


def suite_tightrep(ctx):
    S = ctx.semigroup()
    G = germs.tight_groupoid(S)
    return [_row("tightrep", cstar.check_tight_representation(S, cstar.canonical_representation(G)))]


def suite_condh(ctx):
    S = ctx.semigroup()
    v = isotropy.condition_h(S)
    named = {S.elements[s]: S.names(C) for s, C in sorted(v.witness.items())}
    return [_row("condh", Verdict(v.ok, witness=named), "J_s minus zero covers J_s")]


# -- monoid suites ----------------------------------------------------------

def suite_lcm1(ctx):
    return [_row("lcm1", lcm.lcm1_harness(ctx.monoid(), depth=ctx.depth))]


def suite_lcm2(ctx):
    return [_row("lcm2", lcm.lcm2_harness(ctx.monoid(), depth=min(ctx.depth, 2), seed=ctx.seed))]


def suite_lcm_axioms(ctx):
    M = ctx.monoid()
    return [
        _row("lcm-axioms", lcm.pair_semigroup_check(M, depth=max(ctx.depth, 4), seed=ctx.seed), "pair semigroup"),
        _row("lcm-axioms", lcm.idempotent_check(M), "idempotents are diagonal"),
        _row("lcm-axioms", lcm.core_closure_check(M), "core closure"),
    ]


# -- shift suites -----------------------------------------------------------

def suite_covertojoin(ctx):
    return [_row("covertojoin", sl.covertojoin_suite(ctx.shift(), depth=ctx.depth))]


def suite_fixonepoint(ctx):
    return [_row("fixonepoint", sl.fixonepoint_suite(ctx.shift(), ctx.rng(4), 200, ctx.depth))]


def suite_fixedultra(ctx):
    return [_row("fixedultra", sl.fixedultra_suite(ctx.shift(), ctx.rng(5), 100))]


def suite_sisoidem(ctx):
    rep = sl.siso_sample_check(ctx.shift(), depth=min(ctx.depth, 2))
    detail = f"{rep.idempotent} idempotent, {rep.certified_non_iso} certified outside S^iso"
    if rep.unknown:
        return [SuiteResult("sisoidem", "unknown", str(rep.unknown[0]), detail)]
    return [SuiteResult("sisoidem", "pass", "", detail)]


def suite_shift_axioms(ctx):
    X = ctx.shift()
    return [
        _row("shift-axioms", sl.semigroup_axioms(X, ctx.rng(6), 50, ctx.depth), "inverse semigroup laws"),
        _row("shift-axioms", sl.idempotent_formula(X, ctx.rng(7)), "E(F;a) formula"),
    ]


def suite_shift_finite(ctx):
    """Translation operators on finite X: tight, and faithful on idempotents."""
    X = ctx.shift()
    if not X.is_finite:
        return [SuiteResult("shift-finite", "pass", "", "X infinite; not applicable")]
    S, rho, pts, ops = finite_sx(X)
    tight = cstar.check_tight_representation(S, rho)
    n_tight = len(tight_filters(S))
    r_idem = span_rank([rho[e] for e in S.idempotents])
    G = germs.tight_groupoid(S)
    r_all = span_rank(rho)
    siso = isotropy.s_iso(S)
    return [
        _row("shift-finite", tight, "translation representation is tight"),
        _row("shift-finite", Verdict(r_idem == n_tight, witness=(r_idem, n_tight)), "injective on idempotents"),
        _row("shift-finite", Verdict(r_all == len(G), witness=(r_all, len(G))), "injective on the algebra"),
        _row("shift-finite", Verdict(siso == frozenset(S.idempotents) or len(pts) <= 1,
                                     witness=S.names(siso - set(S.idempotents))), "S^iso = E on the table"),
    ]


SEMIGROUP_SUITES = {
    "spectrum": suite_spectrum,
    "siso-subsemigroup": suite_siso_subsemigroup,
    "0dis": suite_0dis,
    "zdef": suite_zdef,
    "sisogiso": suite_sisogiso,
    "groupoid": suite_groupoid,
    "condexp": suite_condexp,
    "uniqueness": suite_uniqueness,
    "tightrep": suite_tightrep,
    "condh": suite_condh,
}
MONOID_SUITES = {"lcm1": suite_lcm1, "lcm2": suite_lcm2, "lcm-axioms": suite_lcm_axioms}
SHIFT_SUITES = {
    "covertojoin": suite_covertojoin,
    "fixonepoint": suite_fixonepoint,
    "fixedultra": suite_fixedultra,
    "sisoidem": suite_sisoidem,
    "shift-axioms": suite_shift_axioms,
    "shift-finite": suite_shift_finite,
}
SUITES = {**SEMIGROUP_SUITES, **MONOID_SUITES, **SHIFT_SUITES}
GROUPS = {"lemmas": ["covertojoin", "fixonepoint", "fixedultra", "sisoidem"]}


def applicable(ctx):
    if ctx.kind == "semigroup":
        return list(SEMIGROUP_SUITES)
    if ctx.kind == "monoid":
        return list(MONOID_SUITES)
    return list(SHIFT_SUITES)


def expand(names, ctx):
    out = []
    for n in names:
        if n == "all":
            out += applicable(ctx)
        elif n in GROUPS:
            out += GROUPS[n]
        elif n in SUITES:
            out.append(n)
        else:
            raise UnknownSuite(f"unknown suite {n!r}; choose from {sorted(SUITES) + sorted(GROUPS) + ['all']}")
    return list(dict.fromkeys(out))


def run_suites(ctx, names):
    rows = []
    for n in expand(names, ctx):
        rows += _guard(n, lambda: SUITES[n](ctx))
    return rows
