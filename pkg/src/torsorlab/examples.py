"""Builders for the standard algebras, Hopf structures and pre-torsors.

The builtin corpus (``trivial``, ``kz2``, ``kz3f7``, ``h4``) is what the
command line lists and emits; the remaining builders are negative controls
and auxiliary data used by the tests.
"""

from __future__ import annotations

from .algebra import (AlgebraMorphism, Bimodule, FDAlgebra, HopfStructure, ground_algebra,
                      regular_bimodule)
from .errors import UnknownExample
from .linalg import GF, QQ, Field, Matrix

__all__ = ["group_algebra", "group_hopf", "sweedler_algebra", "sweedler_hopf",
           "hopf_torsor", "trivial_torsor", "nonflat_torsor", "truncated_polynomial",
           "perturb_coassociativity", "perturb_unit_leg", "BUILTIN", "builtin"]


def group_algebra(n: int, field: Field = QQ, name: str | None = None) -> FDAlgebra:
    """k[ℤ/n] on the basis g^0, ..., g^(n-1)."""
    mult = [[[1 if k == (i + j) % n else 0 for k in range(n)] for j in range(n)]
            for i in range(n)]
    unit = [1] + [0] * (n - 1)
    return FDAlgebra(field, n, mult, unit, name=name or f"kZ{n}")


def group_hopf(alg: FDAlgebra) -> HopfStructure:
    """Grouplike coproduct, trivial counit and inversion antipode on k[ℤ/n]."""
    f, n = alg.field, alg.dim
    cop = Matrix.from_dict(f, n * n, n, {(i * n + i, i): f.one for i in range(n)})
    eps = Matrix.from_rows(f, [[1] * n])
    s = Matrix.from_dict(f, n, n, {((-i) % n, i): f.one for i in range(n)})
    return HopfStructure(alg, cop, eps, s)


def truncated_polynomial(field: Field = QQ, name: str = "Qx2") -> FDAlgebra:
    """k[x]/(x²) on the basis 1, x."""
    mult = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    return FDAlgebra(field, 2, mult, [1, 0], name=name)


# Sweedler's algebra on 1, g, x, gx with g² = 1, x² = 0, xg = −gx.
_H4_TABLE = {
    (1, 1): (1, 0), (1, 2): (1, 3), (1, 3): (1, 2),
    (2, 1): (-1, 3), (2, 2): (0, 0), (2, 3): (0, 0),
    (3, 1): (-1, 2), (3, 2): (0, 0), (3, 3): (0, 0),
}


def sweedler_algebra(field: Field = QQ, name: str = "H4") -> FDAlgebra:
    mult = []
    for i in range(4):
        row = []
        for j in range(4):
            vec = [0] * 4
            if i == 0:
                vec[j] = 1
            elif j == 0:
                vec[i] = 1
            else:
                c, k = _H4_TABLE[(i, j)]
                if c:
                    vec[k] = c
            row.append(vec)
        mult.append(row)
    return FDAlgebra(field, 4, mult, [1, 0, 0, 0], name=name)


def sweedler_hopf(alg: FDAlgebra) -> HopfStructure:
    """Δg = g⊗g, Δx = x⊗1 + g⊗x; S(g) = g, S(x) = −gx."""
    f = alg.field
    e = {}
    e[(0, 0)] = 1                     # 1 ↦ 1⊗1
    e[(1 * 4 + 1, 1)] = 1             # g ↦ g⊗g
    e[(2 * 4 + 0, 2)] = 1             # x ↦ x⊗1 + g⊗x
    e[(1 * 4 + 2, 2)] = 1
    e[(3 * 4 + 1, 3)] = 1             # gx ↦ gx⊗g + 1⊗gx
    e[(0 * 4 + 3, 3)] = 1
    cop = Matrix.from_dict(f, 16, 4, {k: f(v) for k, v in e.items()})
    eps = Matrix.from_rows(f, [[1, 1, 0, 0]])
    s = Matrix.from_dict(f, 4, 4, {(0, 0): f.one, (1, 1): f.one, (3, 2): f(-1), (2, 3): f.one})
    return HopfStructure(alg, cop, eps, s)


def _hopf_setting(alg: FDAlgebra, name: str):
    from .herd import HerdSetting
    alpha = AlgebraMorphism.unit_map(alg)
    k = alpha.source
    reg = regular_bimodule(alg)
    sigma = Bimodule(k, alg, alg.dim, [Matrix.identity(alg.field, alg.dim)], reg.action,
                     name="Sigma")
    return HerdSetting(alpha, sigma, name=name)


def hopf_torsor(hopf: HopfStructure, name: str = "hopf"):
    """τ(h) = h₁ ⊗ S(h₂)^ ⊗ h₃ with A = B = k and Σ = T = H."""
    from .herd import PreTorsor, hopf_tau
    st = _hopf_setting(hopf.algebra, name)
    st.hopf = hopf
    return PreTorsor.from_field_tau(st, hopf_tau(st, hopf.coproduct, hopf.antipode), name=name)


def trivial_torsor(field: Field = QQ):
    """A = B = T = Σ = k and τ(1) = 1⊗1⊗1."""
    k = ground_algebra(field)
    return hopf_torsor(HopfStructure(k, Matrix.identity(field, 1), Matrix.identity(field, 1),
                                     Matrix.identity(field, 1)), name="trivial")


def nonflat_torsor(field: Field = QQ):
    """A = k[x]/(x²) → T = B = Σ = k by x ↦ 0, τ(1) = 1⊗1⊗1."""
    from .herd import HerdSetting, PreTorsor
    a = truncated_polynomial(field, name="A")
    t = FDAlgebra(field, 1, [[[1]]], [1], name="T")
    alpha = AlgebraMorphism(a, t, Matrix.from_rows(field, [[1, 0]]))
    sigma = Bimodule(t, t, 1, [Matrix.identity(field, 1)], [Matrix.identity(field, 1)],
                     name="Sigma")
    st = HerdSetting(alpha, sigma, name="nonflat")
    return PreTorsor.from_field_tau(st, Matrix.identity(field, 1), name="nonflat")


def perturb_unit_leg(pt):
    """Replace the middle leg of τ(g) by the unit functional for the last basis vector g."""
    from .herd import PreTorsor
    st = pt.setting
    f = st.field
    t = st.T
    n = t.dim
    hat = st.dual.coordinates_of([t.left_operator(t.unit_vector())])
    g = Matrix.from_dict(f, n, 1, {(n - 1, 0): f.one})
    col = g.kron(hat).kron(g)
    field_tau = st.herd_sec @ pt.tau
    cols = [field_tau.select_columns([j]) for j in range(n - 1)] + [col]
    return PreTorsor.from_field_tau(st, Matrix.hstack(*cols), name=f"{pt.name}-unit-leg")


def perturb_coassociativity(pt):
    """Add to τ(g) (last basis vector) a term killed by both counit-type axioms.

    The term is Σ_{a,b,c} s(a)s(c) a ⊗ φ_b ⊗ c with s(1) = 1 and s(g) = −1 on a
    two-element group; both the contraction of the first two legs and of the
    last two legs vanish, while coassociativity is broken.
    """
    from .herd import PreTorsor
    st = pt.setting
    f = st.field
    n = st.T.dim
    dd = st.sigma_star.dim
    sign = [f.one if i == 0 else -f.one for i in range(n)]
    entries = {}
    for a in range(n):
        for b in range(dd):
            for c in range(n):
                entries[((a * dd + b) * n + c, 0)] = sign[a] * sign[c]
    delta = Matrix.from_dict(f, n * dd * n, 1, entries)
    field_tau = st.herd_sec @ pt.tau
    bump = Matrix.hstack(*([Matrix.zeros(f, n * dd * n, 1)] * (n - 1) + [delta]))
    return PreTorsor.from_field_tau(st, field_tau + bump, name=f"{pt.name}-perturbed")


def _kz2():
    return hopf_torsor(group_hopf(group_algebra(2, QQ, name="kZ2")), name="kz2")


def _kz3f7():
    return hopf_torsor(group_hopf(group_algebra(3, GF(7), name="kZ3")), name="kz3f7")


def _h4():
    return hopf_torsor(sweedler_hopf(sweedler_algebra(QQ)), name="h4")


BUILTIN = {
    "trivial": ("A = B = T = Sigma = Q, tau(1) = 1(x)1(x)1", trivial_torsor),
    "kz2": ("group algebra of Z/2 over Q, tau(h) = h1 (x) S(h2) (x) h3", _kz2),
    "kz3f7": ("group algebra of Z/3 over F_7", _kz3f7),
    "h4": ("Sweedler's four-dimensional Hopf algebra over Q", _h4),
}


def builtin(name: str):
    try:
        return BUILTIN[name][1]()
    except KeyError:
        raise UnknownExample(f"no builtin example named {name!r}; "
                             f"choose from {', '.join(BUILTIN)}") from None
