"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from grasscp.coefficients import QQ, FieldSpec
from grasscp.free_algebra import NCPoly
from grasscp.grassmann import AlgebraSpec, GrassmannElement

small_ints = st.integers(min_value=-4, max_value=4)


def words(max_var=3, min_len=1, max_len=3):
    return st.lists(st.integers(1, max_var), min_size=min_len, max_size=max_len).map(tuple)


@st.composite
def ncpolys(draw, field=QQ, unital=False, max_var=3, max_len=3, max_terms=4):
    terms = draw(st.dictionaries(words(max_var, 1, max_len), small_ints, max_size=max_terms))
    f = NCPoly(terms, field, unital)
    if unital and draw(st.booleans()):
        f = f + NCPoly.constant(draw(small_ints), field)
    return f


@st.composite
def grassmann_elements(draw, spec: AlgebraSpec, parity=None):
    masks = [k for k in spec.basis_masks() if parity is None or k.bit_count() % 2 == parity]
    chosen = draw(st.dictionaries(st.sampled_from(masks), small_ints, max_size=6))
    return GrassmannElement(spec, chosen)
