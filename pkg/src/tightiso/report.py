"""Full analysis report for a finite inverse semigroup."""

from . import cstar, germs
from .isotropy import isotropy_report, lemma_0dis_check
from .semigroup import InverseSemigroup
from .spectrum import filters, tight_filters, ultrafilters
from .suites import Context, run_suites


def analysis_report(S: InverseSemigroup, descriptor, seed=0, depth=3, suites=("all",)):
    spec = tight_filters(S)
    iso = isotropy_report(S, spec)
    G = germs.tight_groupoid(S, spec)
    dec = germs.isotropy_decomposition(S, G, iso.s_iso)
    blocks = cstar.ideal_meets_subalgebra(G, S, seed=seed)
    formula = cstar.expectation_formula(S, G, dec.siso_part, spec)
    faithful = cstar.faithfulness_check(G, dec.siso_part)
    zd = lemma_0dis_check(S)
    rows = run_suites(Context("semigroup", S, seed, depth), list(suites))
    return {
        "input": {
            "descriptor": descriptor,
            "name": S.name,
            "size": len(S),
            "zero": S.elements[S.zero],
            "zero_adjoined": S.zero_adjoined,
        },
        "spectrum": {
            "filters": len(filters(S)),
            "ultrafilters": len(ultrafilters(S)),
            "tight": len(spec),
            "tight_filters": [spec.names(k) for k in range(len(spec))],
        },
        "isotropy": iso.to_json(),
        "centralizer_equals_siso": zd.centralizer_equals_siso,
        "condition_I": "not evaluated",
        "groupoid": {
            "units": G.n_units,
            "arrows": len(G),
            "effective": germs.is_effective(G, dec),
            "iso": len(dec.iso),
            "iso_interior": len(dec.iso_interior),
            "siso_part": len(dec.siso_part),
            "x_f": len(dec.x_f),
            "export": G.to_json(),
        },
        "cstar": {
            "algebra_dim": len(G),
            "blocks": blocks.blocks,
            "subalgebra_dim": blocks.subalgebra_dim,
            "expectation_formula": bool(formula),
            "faithful": bool(faithful),
            "uniqueness": blocks.ok,
        },
        "suites": [r.to_json() for r in rows],
    }
