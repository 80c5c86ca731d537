"""Pre-torsors in bimodule-herd form and the functors they live between.

A herd setting is an algebra map ``alpha: A → T`` together with a
(B, T)-bimodule Σ that is finitely generated projective over T.  It fixes

* ``N_A = (−)⊗_A T`` with right adjoint the restriction ``R_A``,
* ``N_B = (−)⊗_B Σ`` with right adjoint ``R_B = Hom_T(Σ, −)``,
* ``Q = R_A N_B``, ``P = (−)⊗_A Σ*`` (standing for ``R_B N_A``),
  ``R = R_A N_A`` and ``S = (−)⊗_B End_T(Σ)`` (standing for ``R_B N_B``),

and the transforms ``r = η^A``, ``s = η^B``, ``w: QP ⇒ R`` and ``z: PQ ⇒ S``.
Every one of them is a tensor chain, so all whiskered composites are
computed from field-level kernels.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (AlgebraMorphism, Bimodule, RightModule, restrict_left,
                      restriction_of_scalars, validate_algebra, validate_algebra_morphism,
                      validate_module)
from .errors import NotFGP, ValidationError
from .functors import (BimoduleTransform, ProbeSet, TensorFunctor, compose, default_probes,
                       identity_functor, preserves_equalizers_check, regular_unit_check,
                       restriction_extension_adjunction, tensor_hom_adjunction)
from .linalg import Matrix
from .monoidal import (DualBasisWitness, along, chain_tensor, dual_module, evaluation_operator,
                       fgp_witness, hom_module)
from .report import ValidationReport

__all__ = ["HerdSetting", "PreTorsor", "check_pretorsor_axioms", "check_regularity",
           "hopf_tau"]


class HerdSetting:
    """Functors, adjunctions and structure transforms shared by all constructions."""

    def __init__(self, alpha: AlgebraMorphism, sigma: Bimodule,
                 witness: DualBasisWitness | None = None, name: str = "herd",
                 extra_probes: dict | None = None):
        self.alpha = alpha
        self.sigma = sigma
        self.name = name
        self.A = alpha.source
        self.T = alpha.target
        self.B = sigma.left_algebra
        if sigma.algebra is not self.T:
            raise ValidationError("Σ must be a right module over the target of alpha")
        self.field = sigma.field
        self.witness = witness if witness is not None else fgp_witness(sigma)
        if not self.witness.verify():
            raise NotFGP("the supplied dual basis does not verify")
        self.dual = dual_module(sigma, self.witness)
        self.sigma_star = restrict_left(alpha, self.dual.module)
        self.sigma_star.name = "S*"
        self.sigma_A = restriction_of_scalars(alpha, sigma)
        self.end = hom_module(sigma, sigma, witness=self.witness)
        self.E = self.end.module
        self.E.name = "End"
        self.T_AT = along(alpha)

        self.adjA = restriction_extension_adjunction(alpha, name="A")
        self.adjB = tensor_hom_adjunction(sigma, self.witness, name="B")
        self.N_A, self.R_A = self.adjA.left, self.adjA.right
        self.N_B, self.R_B = self.adjB.left, self.adjB.right
        self.Q = compose(self.R_A, self.N_B)
        self.P = TensorFunctor(self.sigma_star, name="P")
        self.R = compose(self.R_A, self.N_A)
        self.S = TensorFunctor(self.E, name="S")
        self.QP = compose(self.Q, self.P)
        self.PQ = compose(self.P, self.Q)

        f = self.field
        ds, dd, dt = sigma.dim, self.sigma_star.dim, self.T.dim
        self.unit_T = Matrix.column_vector(f, self.T.unit)
        self.g_s = self.end.coordinates_of([Matrix.identity(f, ds)])
        # w: φ ⊗ x ↦ φ(x)
        cols = []
        for h in range(dd):
            phi = self.dual.basis[h]
            for k in range(ds):
                cols.append(phi.select_columns([k]))
        self.g_w = Matrix.hstack(*cols) if cols else Matrix.zeros(f, dt, 0)
        # z: x ⊗ φ ↦ (y ↦ x·φ(y))
        maps = []
        for k in range(ds):
            e = _unit(f, ds, k)
            for h in range(dd):
                maps.append(evaluation_operator(sigma, e, self.dual.basis[h]))
        self.g_z = self.end.coordinates_of(maps) if maps else Matrix.zeros(f, self.E.dim, 0)

        self.r = self.adjA.unit
        self.s = BimoduleTransform(identity_functor(self.B), self.S, self.g_s, name="s")
        self.w = BimoduleTransform(self.QP, self.R, self.g_w, name="w")
        self.z = BimoduleTransform(self.PQ, self.S, self.g_z, name="z")

        self.herd, self.herd_proj, self.herd_sec = chain_tensor(
            self.sigma_A, self.sigma_star, sigma)

        extra = extra_probes or {}
        self.probes_A = default_probes(self.A, extras=extra.get("A", ()))
        self.probes_B = default_probes(self.B, extras=extra.get("B", ()))
        self.probes_T = default_probes(self.T, extras=extra.get("T", ()))
        self.regular_A = self.probes_A.modules[1]
        self.regular_B = self.probes_B.modules[1]
        self.regular_T = self.probes_T.modules[1]

    def __repr__(self):
        return f"<HerdSetting {self.name}: dims A={self.A.dim} B={self.B.dim} " \
               f"T={self.T.dim} Sigma={self.sigma.dim}>"

    # ---------------------------------------------------------- identifications

    def p_to_rbna(self, x: RightModule) -> Matrix:
        """``P(X) → R_B N_A(X)``: ``x ⊗ φ ↦ (s ↦ x ⊗ φ(s))``."""
        f = self.field
        na = self.N_A
        y = na(x)
        bt = na.tensor(x)
        hom = self.R_B.hom(y)
        maps = []
        for i in range(x.dim):
            e = _unit(f, x.dim, i)
            for phi in self.dual.basis:
                maps.append(bt.project(e.kron(phi)))
        px = self.P(x)
        if not maps or hom.dim == 0:
            return Matrix.zeros(f, hom.dim, px.dim)
        return hom.coordinates_of(maps) @ self.P.frame(x)[1]

    def p_to_hom(self, y: RightModule) -> Matrix:
        """``P(R_A Y) → R_B(Y)``: ``y ⊗ φ ↦ (s ↦ y·φ(s))`` for a right T-module Y."""
        f = self.field
        ry = self.R_A(y)
        hom = self.R_B.hom(y)
        maps = []
        for i in range(y.dim):
            e = _unit(f, y.dim, i)
            for phi in self.dual.basis:
                maps.append(Matrix.hstack(*[y.act(phi.select_columns([k])) @ e
                                            for k in range(self.sigma.dim)]))
        pry = self.P(ry)
        if not maps or hom.dim == 0:
            return Matrix.zeros(f, hom.dim, pry.dim)
        return hom.coordinates_of(maps) @ self.P.frame(ry)[1]

    def from_regular_B(self, m_tau: Matrix) -> Matrix:
        """Transport a map ``Q(B) → QPQ(B)`` to ``Σ → Σ_A ⊗_A Σ* ⊗_B Σ``."""
        f = self.field
        b = self.regular_B
        q = self.Q
        ds = self.sigma.dim
        qb_proj, _ = q.frame(b)
        into = qb_proj @ Matrix.column_vector(f, self.B.unit).kron(Matrix.identity(f, ds))
        qpq = compose(q, self.P, q)
        _, sec = qpq.frame(b)
        act = _left_action_map(self.sigma)
        rest = Matrix.identity(f, self.sigma_star.dim * ds)
        out = self.herd_proj @ act.kron(rest) @ sec
        return out @ m_tau @ into


def _left_action_map(m: Bimodule) -> Matrix:
    from .functors import left_action_field_map
    return left_action_field_map(m)


def _unit(f, n, i):
    return Matrix.from_dict(f, n, 1, {(i, 0): f.one})


# ---------------------------------------------------------------- pre-torsors


@dataclass(eq=False)
class PreTorsor:
    """``τ: Σ → Σ_A ⊗_A Σ* ⊗_B Σ`` on the herd carrier of a setting."""

    setting: HerdSetting
    tau: Matrix
    name: str = "tau"

    def __post_init__(self):
        want = (self.setting.herd.dim, self.setting.sigma.dim)
        if self.tau.shape != want:
            raise ValidationError(f"tau has shape {self.tau.shape}, expected {want}")

    @classmethod
    def from_field_tau(cls, setting: HerdSetting, field_tau: Matrix, name: str = "tau"):
        """Build from a map into the field tensor ``Σ ⊗ Σ* ⊗ Σ``."""
        return cls(setting, setting.herd_proj @ field_tau, name=name)

    @property
    def kernel(self) -> Matrix:
        """A field-level lift of τ."""
        return self.setting.herd_sec @ self.tau

    def transform(self):
        st = self.setting
        return BimoduleTransform(st.Q, compose(st.Q, st.P, st.Q), self.kernel, name="tau")


def hopf_tau(setting: HerdSetting, coproduct: Matrix, antipode: Matrix) -> Matrix:
    """Field-level ``h ↦ h₁ ⊗ S(h₂)^ ⊗ h₃`` for Σ = T = H and A = B = k.

    ``t^`` is the functional ``x ↦ t·x`` in Σ*.
    """
    f = setting.field
    t = setting.T
    hat = setting.dual.coordinates_of([t.left_operator(t.basis_vector(i)) for i in range(t.dim)])
    i_h = Matrix.identity(f, t.dim)
    delta2 = coproduct.kron(i_h) @ coproduct
    return i_h.kron(hat @ antipode).kron(i_h) @ delta2


def _first_difference(lhs: Matrix, rhs: Matrix):
    for j in range(lhs.ncols):
        a, b = lhs.column(j), rhs.column(j)
        if a != b:
            return {"basis index": j, "lhs": a, "rhs": b}
    return None


def check_pretorsor_axioms(pt: PreTorsor) -> ValidationReport:
    """The three herd axioms on balanced carriers, plus bilinearity of τ."""
    st = pt.setting
    f = st.field
    sig = st.sigma
    rep = ValidationReport(f"pre-torsor axioms for {pt.name}")
    tau = pt.tau
    herd = st.herd
    a_basis = [st.alpha.matrix @ st.A.basis_vector(i) for i in range(st.A.dim)]
    right_ok = all(tau @ sig.act(a) == herd.act(a) @ tau for a in a_basis)
    left_ok = all(tau @ a == b @ tau for a, b in zip(sig.left_action, herd.left_action))
    rep.add("tau is right A-linear", right_ok)
    rep.add("tau is left B-linear", left_ok)
    g = pt.kernel
    ds, dd = sig.dim, st.sigma_star.dim
    i_s = Matrix.identity(f, ds)

    _, p1, _ = chain_tensor(st.E, sig)
    lhs = p1 @ st.g_z.kron(i_s) @ g
    rhs = p1 @ st.g_s.kron(i_s)
    w = _first_difference(lhs, rhs)
    rep.add("axiom (i): x1 x2(-) (x) x3 = Id (x) x", w is None, witness=w)

    _, p2, _ = chain_tensor(st.sigma_A, st.T_AT)
    lhs = p2 @ i_s.kron(st.g_w) @ g
    rhs = p2 @ i_s.kron(st.unit_T)
    w = _first_difference(lhs, rhs)
    rep.add("axiom (ii): x1 (x) x2(x3) = x (x) 1", w is None, witness=w)

    _, p3, _ = chain_tensor(st.sigma_A, st.sigma_star, st.sigma_A, st.sigma_star, sig)
    lhs = p3 @ Matrix.identity(f, ds * dd).kron(g) @ g
    rhs = p3 @ g.kron(Matrix.identity(f, dd * ds)) @ g
    w = _first_difference(lhs, rhs)
    rep.add("axiom (iii): coassociativity", w is None, witness=w)
    return rep


def check_regularity(pt_or_setting, probes_A: ProbeSet | None = None,
                     probes_B: ProbeSet | None = None) -> ValidationReport:
    """Units are regular monomorphisms and both left adjoints preserve equalizers (sampled)."""
    st = pt_or_setting.setting if isinstance(pt_or_setting, PreTorsor) else pt_or_setting
    pa = probes_A or st.probes_A
    pb = probes_B or st.probes_B
    rep = ValidationReport("regularity")
    rep.extend(regular_unit_check(st.adjA, pa), prefix="(N_A,R_A)")
    rep.extend(preserves_equalizers_check(st.N_A, pa), prefix="(N_A,R_A)")
    rep.extend(regular_unit_check(st.adjB, pb), prefix="(N_B,R_B)")
    rep.extend(preserves_equalizers_check(st.N_B, pb), prefix="(N_B,R_B)")
    rep.note("equalizer preservation is sampled on probe pairs; regularity is certified "
             "on probes only")
    return rep


def validate_setting(st: HerdSetting) -> ValidationReport:
    rep = ValidationReport(f"setting {st.name}")
    for alg in {id(a): a for a in (st.A, st.B, st.T)}.values():
        rep.extend(validate_algebra(alg), prefix=alg.name)
    rep.extend(validate_algebra_morphism(st.alpha), prefix="alpha")
    rep.extend(validate_module(st.sigma), prefix="Sigma")
    rep.add("dual basis verifies", st.witness.verify())
    return rep


__all__.append("validate_setting")
