"""Hypothesis strategies: random inverse subsemigroups of I({1,2,3})."""

from hypothesis import strategies as st

from tightiso.builders import close_partial_maps, from_partial_maps


@st.composite
def partial_bijections(draw, n=3):
    perm = draw(st.permutations(range(1, n + 1)))
    dom = draw(st.sets(st.integers(0, n - 1)))
    return tuple(perm[i] if i in dom else None for i in range(n))


@st.composite
def generator_sets(draw, n=3):
    return draw(st.lists(partial_bijections(n), min_size=1, max_size=3))


@st.composite
def inverse_semigroups(draw, n=3):
    """(S, maps) with S validated from the closure of random generators."""
    gens = draw(generator_sets(n))
    maps = close_partial_maps(gens)
    return from_partial_maps(maps, "random"), maps


def as_dicts(maps):
    """Tuple maps to the dict form used by the oracles."""
    return [{i + 1: v for i, v in enumerate(f) if v is not None} for f in maps]
