from hypothesis import strategies as st

from opsmith.ratlin import Matrix

seeds = st.integers(min_value=0, max_value=2**31 - 1)
small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows=4, max_cols=4, rows=None, cols=None):
    r = draw(st.integers(0, max_rows)) if rows is None else rows
    c = draw(st.integers(0, max_cols)) if cols is None else cols
    data = [[draw(small) for _ in range(c)] for _ in range(r)]
    return Matrix.from_rows(data, c)
