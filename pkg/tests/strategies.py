"""Hypothesis strategies for ground values and small terms."""

from hypothesis import strategies as st

from funcons.terms import NULL, Bool, Char, Datatype, Int, MapVal, SetVal, identifier, string

ascii_text = st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=126), max_size=6)

atoms = st.one_of(
    st.booleans().map(Bool),
    st.integers(-(10**20), 10**20).map(Int),
    st.characters(min_codepoint=32, max_codepoint=126).map(Char),
    st.just(NULL),
    ascii_text.map(string),
    st.from_regex(r"[a-z]{1,4}", fullmatch=True).map(identifier),
)


def _compound(children):
    return st.one_of(
        st.lists(children, max_size=3).map(lambda xs: Datatype("tuple", tuple(xs))),
        st.lists(children, max_size=3).map(lambda xs: Datatype("list", tuple(xs))),
        st.frozensets(children, max_size=3).map(SetVal),
        st.dictionaries(children, children, max_size=3).map(lambda d: MapVal({k: (v,) for k, v in d.items()})),
        children.map(lambda x: Datatype("thrown", (x,))),
    )


ground_values = st.recursive(atoms, _compound, max_leaves=8)
