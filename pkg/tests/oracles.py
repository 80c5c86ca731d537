"""Independent reference computations used to derive frozen test values.

Everything here goes through sympy or plain Python integers, never through
the library's own elimination routines.
"""

from fractions import Fraction
from itertools import product

import sympy

from torsorlab.linalg import Matrix


def to_sympy(m: Matrix) -> sympy.Matrix:
    f = m.field
    if f.p:
        return sympy.Matrix(m.nrows, m.ncols, lambda i, j: int(m[i, j]) % f.p)
    return sympy.Matrix(m.nrows, m.ncols,
                        lambda i, j: sympy.Rational(int(m[i, j].numerator),
                                                    int(m[i, j].denominator)))


def rank_oracle(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    s = to_sympy(m)
    if m.field.p:
        from sympy.polys.matrices import DomainMatrix
        from sympy import GF
        dm = DomainMatrix.from_Matrix(s).convert_to(GF(m.field.p))
        return dm.rank()
    return s.rank()


def nullity_oracle(m: Matrix) -> int:
    return m.ncols - rank_oracle(m)


def group_tau_columns(n: int):
    """τ(g^i) = g^i ⊗ (g^-i)^ ⊗ g^i for the cyclic group algebra, as index triples."""
    return [(i, (-i) % n, i) for i in range(n)]


def grouplikes_on_grid(coproduct: Matrix, counit: Matrix, values):
    """Brute-force grouplikes of a coalgebra over a field base with coordinates in ``values``."""
    n = counit.ncols
    f = counit.field
    found = []
    for coords in product(values, repeat=n):
        if not any(coords):
            continue
        g = Matrix.column_vector(f, [f(c) for c in coords])
        if (counit @ g)[0, 0] == f.one and coproduct @ g == g.kron(g):
            found.append(coords)
    return found


def small_rationals():
    return [Fraction(a, b) for a in range(-2, 3) for b in (1, 2)]


def hopf_coinvariant_dim(coproduct: Matrix, unit: Matrix) -> int:
    """dim ker(Δ − (− ⊗ 1)) via sympy."""
    n = unit.nrows
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        ej = Matrix.column_vector(unit.field, e)
        cols.append(coproduct @ ej - ej.kron(unit))
    return nullity_oracle(Matrix.hstack(*cols))
