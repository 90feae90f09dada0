from hypothesis import strategies as st

NAMES = ("a", "b", "c", "d")

var_letter = st.tuples(st.integers(1, 4), st.sampled_from((1, -1)))
const_letter = st.tuples(st.sampled_from(NAMES), st.sampled_from((1, -1)))
letter = st.one_of(var_letter, const_letter)
letters = st.lists(letter, max_size=24)
raw_items = st.lists(st.one_of(var_letter, const_letter, st.none()), max_size=20)
free_letters = st.lists(st.tuples(st.integers(1, 2), st.sampled_from((1, -1))), max_size=16)
