"""Independent exact oracles built on sympy, used only by the tests."""

import sympy

from opsmith.ratlin import Matrix


def to_sympy(m: Matrix) -> sympy.Matrix:
    if m.rows == 0 or m.cols == 0:
        return sympy.zeros(m.rows, m.cols)
    return sympy.Matrix(m.rows, m.cols, [sympy.Rational(v) for row in m.data for v in row])


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return to_sympy(m).rank()


def homology_dims(c) -> dict:
    """dim ker d_n - rank d_{n+1}, with ranks from sympy."""
    out = {}
    for n in c.degrees:
        ker = c.dim(n) - rank(c.d(n))
        out[n] = ker - rank(c.d(n + 1))
    return {n: h for n, h in out.items() if h}


def is_injective(f) -> bool:
    return all(rank(f.at(n)) == f.source.dim(n) for n in f.source.degrees)


def is_surjective(f) -> bool:
    return all(rank(f.at(n)) == f.target.dim(n) for n in f.target.degrees)


def coinvariant_dim(gens, dim: int) -> int:
    """dim of V / span{v - g v} for matrices ``gens`` on a space of dimension ``dim``."""
    if not gens:
        return dim
    rel = sympy.Matrix.hstack(*[sympy.eye(dim) - to_sympy(g) for g in gens])
    return dim - (rel.rank() if dim else 0)
