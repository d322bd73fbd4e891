from fractions import Fraction

import hypothesis.strategies as st

from losnet import InstanceParams, LosInstance


def make_inst(extents, omega, cells) -> LosInstance:
    """Instance from {coords: weight-ish} with weights coerced to Fraction."""
    params = InstanceParams(len(extents), tuple(extents), omega)
    return LosInstance(params, {tuple(c): Fraction(w) for c, w in cells.items()})


def unit_inst(extents, omega, coords) -> LosInstance:
    return make_inst(extents, omega, {c: 1 for c in coords})


@st.composite
def small_instances(draw, max_n=8, max_k=3, max_d=3, max_vertices=14):
    """Random small weighted instances, narrow along axis 0."""
    d = draw(st.integers(2, max_d))
    extents = tuple(
        draw(st.integers(1, max_n if a == 0 else max_k)) for a in range(d)
    )
    omega = draw(st.integers(2, 4))
    params = InstanceParams(d, extents, omega)
    all_cells = []
    from itertools import product

    for coords in product(*(range(1, e + 1) for e in extents)):
        all_cells.append(coords)
    chosen = draw(
        st.lists(st.sampled_from(all_cells), unique=True, max_size=max_vertices)
    ) if all_cells else []
    weights = {
        c: Fraction(draw(st.integers(1, 5))) for c in chosen
    }
    return LosInstance(params, weights)
