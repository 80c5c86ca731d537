"""From pre-torsors to comonads and comonad arrows, and back.

Γ sends a pre-torsor to the comonads C (on Mod-A) and D (on Mod-B), the
arrows ξ and ζ and the bicomodule functor Q.  Ω sends a regular comonad
arrow (C, ξ) back to a pre-torsor; ``tau_from_coregular`` does the same for
a co-regular arrow (D, ζ).  Everything "unique such that" is computed by
solving through a monomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .comonads import (BicomoduleFunctor, ObjectwiseComonad, validate_bicomodule,
                       validate_comonad)
from .errors import (FactorizationFailure, InversionFailure, NotCoRegular, NotRegular)
from .functors import (NatTransform, compose, identity_functor, objectwise_equalizer,
                       solve_through)
from .herd import HerdSetting, PreTorsor, check_pretorsor_axioms
from .linalg import Matrix, inverse, rank
from .report import ValidationReport

__all__ = ["GammaOutput", "build_comonad_C", "build_comonad_D", "build_xi", "build_zeta",
           "build_coactions", "gamma", "RArrObject", "CoRegularObject", "omega_from_arrow",
           "tau_from_coregular", "roundtrip_check", "hom_comonad", "xi_bar", "phi_identities_check",
           "arrow_from_gamma", "coregular_from_gamma", "arrow_comparison", "zeta_bar",
           "PreTorsorMorphism", "check_pretorsor_morphism", "induce_comonad_morphism"]


# ---------------------------------------------------------------- Γ


def build_comonad_C(pt: PreTorsor):
    """C = equalizer of ω^l = (QPw)∘(τP) and ω^r = QPr, with Δ^C and ε^C solved."""
    st = pt.setting
    tau = pt.transform()
    qp = st.QP
    tau_p = tau.whisker_right(st.P)
    omega_l = st.w.whisker_left(qp).after(tau_p, name="omega_l")
    omega_r = st.r.whisker_left(qp, name="omega_r")
    c, i = objectwise_equalizer(omega_l, omega_r, name="C")

    def delta_rule(x):
        cx = c(x)
        mono = qp.mor(i.at(x), cx, qp(x)) @ i.at(cx)
        return solve_through(mono, tau_p.at(x) @ i.at(x), step=f"Delta^C at {x.name}")

    def eps_rule(x):
        return solve_through(st.r.at(x), st.w.at(x) @ i.at(x), step=f"eps^C at {x.name}")

    delta = NatTransform(c, compose(c, c), delta_rule, flavor="solved", name="Delta^C")
    eps = NatTransform(c, identity_functor(st.A), eps_rule, flavor="solved", name="eps^C")
    return ObjectwiseComonad(c, delta, eps, name="C"), i


def build_comonad_D(pt: PreTorsor):
    """D = equalizer of θ^l = (zPQ)∘(Pτ) and θ^r = sPQ, with Δ^D and ε^D solved."""
    st = pt.setting
    tau = pt.transform()
    pq = st.PQ
    p_tau = tau.whisker_left(st.P)
    theta_l = st.z.whisker_right(pq).after(p_tau, name="theta_l")
    theta_r = st.s.whisker_right(pq, name="theta_r")
    d, j = objectwise_equalizer(theta_l, theta_r, name="D")

    def delta_rule(m):
        dm = d(m)
        mono = pq.mor(j.at(m), dm, pq(m)) @ j.at(dm)
        return solve_through(mono, p_tau.at(m) @ j.at(m), step=f"Delta^D at {m.name}")

    def eps_rule(m):
        return solve_through(st.s.at(m), st.z.at(m) @ j.at(m), step=f"eps^D at {m.name}")

    delta = NatTransform(d, compose(d, d), delta_rule, flavor="solved", name="Delta^D")
    eps = NatTransform(d, identity_functor(st.B), eps_rule, flavor="solved", name="eps^D")
    return ObjectwiseComonad(d, delta, eps, name="D"), j


def build_xi(pt: PreTorsor, c: ObjectwiseComonad, i: NatTransform):
    """ξ: C R_A ⇒ R_A N_B R_B and its inverse ξ′, both as transforms on Mod-T."""
    st = pt.setting
    q, ra, rb = st.Q, st.R_A, st.R_B
    tau = pt.transform()
    eps_b = st.adjB.counit

    def xi_rule(y):
        ry = ra(y)
        pi = st.p_to_hom(y)
        return q.mor(pi, st.P(ry), rb(y)) @ i.at(ry)

    def xi_inv_rule(y):
        ry = ra(y)
        qrb = q(rb(y))
        target = st.QP.mor(eps_b.at(y), qrb, ry) @ tau.at(rb(y))
        try:
            return solve_through(i.at(ry), target, step=f"xi' at {y.name}")
        except FactorizationFailure as exc:
            raise InversionFailure(f"xi is not invertible at {y.name}: {exc}",
                                   witness=target) from None

    src = compose(c.functor, ra)
    tgt = compose(q, rb)
    xi = NatTransform(src, tgt, xi_rule, flavor="solved", name="xi")
    xi_inv = NatTransform(tgt, src, xi_inv_rule, flavor="solved", name="xi'")
    return xi, xi_inv


def build_zeta(pt: PreTorsor, d: ObjectwiseComonad, j: NatTransform) -> NatTransform:
    """ζ: D R_B ⇒ R_B N_A R_A, ``ζ = (R_B N_A R_A ε^B)∘(j R_B)`` read through P ≅ R_B N_A."""
    st = pt.setting
    ra, rb, na = st.R_A, st.R_B, st.N_A
    eps_b = st.adjB.counit

    def rule(y):
        ry = rb(y)
        pmap = st.P.mor(eps_b.at(y), st.Q(ry), ra(y))
        return st.p_to_rbna(ra(y)) @ pmap @ j.at(ry)

    return NatTransform(compose(d.functor, rb), compose(rb, na, ra), rule,
                        flavor="solved", name="zeta")


def build_coactions(pt: PreTorsor, c: ObjectwiseComonad, i: NatTransform,
                    d: ObjectwiseComonad, j: NatTransform) -> BicomoduleFunctor:
    """``c: Q ⇒ CQ`` with (iQ)∘c = τ and ``d: Q ⇒ QD`` with (Qj)∘d = τ."""
    st = pt.setting
    q = st.Q
    tau = pt.transform()

    def c_rule(m):
        return solve_through(i.at(q(m)), tau.at(m), step=f"c at {m.name}")

    def d_rule(m):
        return solve_through(q.mor(j.at(m), d(m), st.PQ(m)), tau.at(m), step=f"d at {m.name}")

    left = NatTransform(q, compose(c.functor, q), c_rule, flavor="solved", name="c")
    right = NatTransform(q, compose(q, d.functor), d_rule, flavor="solved", name="d")
    return BicomoduleFunctor(q, c, d, left, right, name="Q")


@dataclass(eq=False)
class GammaOutput:
    pretorsor: PreTorsor
    C: ObjectwiseComonad
    i: NatTransform
    D: ObjectwiseComonad
    j: NatTransform
    xi: NatTransform
    xi_inv: NatTransform
    zeta: NatTransform
    bicomodule: BicomoduleFunctor
    report: ValidationReport = dc_field(default_factory=lambda: ValidationReport("Gamma"))

    @property
    def setting(self) -> HerdSetting:
        return self.pretorsor.setting


def gamma(pt: PreTorsor, check: bool = True) -> GammaOutput:
    """Run every Γ construction; with ``check`` the laws are verified on the probes."""
    st = pt.setting
    c, i = build_comonad_C(pt)
    d, j = build_comonad_D(pt)
    xi, xi_inv = build_xi(pt, c, i)
    zeta = build_zeta(pt, d, j)
    bic = build_coactions(pt, c, i, d, j)
    out = GammaOutput(pt, c, i, d, j, xi, xi_inv, zeta, bic)
    if check:
        rep = out.report
        rep.extend(validate_comonad(c, st.probes_A))
        rep.extend(validate_comonad(d, st.probes_B))
        for y in st.probes_T.modules:
            a, b = xi.at(y), xi_inv.at(y)
            ok = (a @ b).is_identity() and (b @ a).is_identity()
            rep.add(f"xi xi' = id and xi' xi = id at {y.name}", ok)
        rep.extend(validate_bicomodule(bic, st.probes_B))
    return out


# ---------------------------------------------------------------- arrows


def hom_comonad(st: HerdSetting) -> ObjectwiseComonad:
    """C′ = N_B R_B on Mod-T with Δ′ = N_B η^B R_B and ε′ = ε^B."""
    nb, rb = st.N_B, st.R_B
    func = compose(nb, rb)
    eta = st.adjB.unit
    delta = NatTransform(func, compose(func, func),
                         lambda y: nb.mor(eta.at(rb(y)), rb(y), rb(nb(rb(y)))),
                         name="Delta'")
    return ObjectwiseComonad(func, delta, st.adjB.counit, name="N_B R_B")


@dataclass(eq=False)
class RArrObject:
    """A comonad C on Mod-A with an invertible arrow ξ: C R_A ⇒ R_A N_B R_B."""

    setting: HerdSetting
    C: ObjectwiseComonad
    xi: NatTransform
    xi_inv: NatTransform
    name: str = "arrow"


@dataclass(eq=False)
class CoRegularObject:
    """A comonad D on Mod-B with ζ: D R_B ⇒ R_B N_A R_A."""

    setting: HerdSetting
    D: ObjectwiseComonad
    zeta: NatTransform
    name: str = "co-arrow"


def arrow_from_gamma(g: GammaOutput) -> RArrObject:
    return RArrObject(g.setting, g.C, g.xi, g.xi_inv, name=f"Gamma({g.pretorsor.name})")


def coregular_from_gamma(g: GammaOutput) -> CoRegularObject:
    return CoRegularObject(g.setting, g.D, g.zeta, name=f"Gamma({g.pretorsor.name})")


def _hom_to_herd(st: HerdSetting, m, hom_tau: Matrix, step: str) -> Matrix:
    """Read a map into Q R_B N_A Q(M) as a map into QPQ(M)."""
    qm = st.Q(m)
    mono = st.Q.mor(st.p_to_rbna(qm), st.P(qm), st.R_B(st.N_A(qm)))
    return solve_through(mono, hom_tau, step=step)


def _herd_tau_from_component(st: HerdSetting, tau_b: Matrix, name: str) -> PreTorsor:
    return PreTorsor(st, st.from_regular_B(tau_b), name=name)


def omega_from_arrow(arr: RArrObject) -> PreTorsor:
    """τ = (ξN_AR_AN_B)∘(Cη^AR_AN_B)∘(ξ⁻¹N_B)∘(R_AN_Bη^B), read at the regular B-module."""
    st = arr.setting
    m = st.regular_B
    nb, na, ra, rb = st.N_B, st.N_A, st.R_A, st.R_B
    eta_a, eta_b = st.adjA.unit, st.adjB.unit
    c = arr.C
    nbm = nb(m)
    rnbm = rb(nbm)
    step1 = nb.mor(eta_b.at(m), m, rnbm)
    step2 = arr.xi_inv.at(nbm)
    xi2 = arr.xi.at(nbm)
    if not (step2 @ xi2).is_identity() or not (xi2 @ step2).is_identity():
        raise NotRegular(f"{arr.name}: xi is not inverted by the supplied inverse at {nbm.name}")
    qm = ra(nbm)
    step3 = c.mor(eta_a.at(qm), qm, ra(na(qm)))
    step4 = arr.xi.at(na(qm))
    hom_tau = step4 @ step3 @ step2 @ step1
    tau_b = _hom_to_herd(st, m, hom_tau, step="Omega: reading tau in herd form")
    return _herd_tau_from_component(st, tau_b, name=f"Omega({arr.name})")


def zeta_bar(obj: CoRegularObject) -> NatTransform:
    """ζ̄ = (ε^B N_A R_A N_B)∘(N_B ζ N_B)∘(N_B D η^B): N_B D ⇒ N_A R_A N_B."""
    st = obj.setting
    nb, na, ra, rb = st.N_B, st.N_A, st.R_A, st.R_B
    d = obj.D
    eta_b, eps_b = st.adjB.unit, st.adjB.counit

    def rule(m):
        nbm = nb(m)
        rnbm = rb(nbm)
        a = nb.mor(d.mor(eta_b.at(m), m, rnbm), d(m), d(rnbm))
        b = nb.mor(obj.zeta.at(nbm), d(rnbm), rb(na(ra(nbm))))
        e = eps_b.at(na(ra(nbm)))
        return e @ b @ a

    return NatTransform(compose(nb, d.functor), compose(na, ra, nb), rule, flavor="solved",
                        name="zeta_bar")


def tau_from_coregular(obj: CoRegularObject) -> PreTorsor:
    """τ = (R_AN_BR_Bζ̄)∘(R_AN_Bη^BD)∘(R_Aζ̄⁻¹)∘(η^AR_AN_B) at the regular B-module."""
    st = obj.setting
    m = st.regular_B
    nb, na, ra, rb = st.N_B, st.N_A, st.R_A, st.R_B
    eta_a, eta_b = st.adjA.unit, st.adjB.unit
    zb = zeta_bar(obj)
    zm = zb.at(m)
    if zm.nrows != zm.ncols or rank(zm) != zm.nrows:
        raise NotCoRegular(f"{obj.name}: zeta_bar is not invertible at {m.name} "
                           f"({zm.ncols} -> {zm.nrows}, rank {rank(zm)})")
    zm_inv = inverse(zm)
    qm = ra(nb(m))
    dm = obj.D(m)
    step1 = eta_a.at(qm)
    step2 = zm_inv
    step3 = nb.mor(eta_b.at(dm), dm, rb(nb(dm)))
    step4 = nb.mor(rb.mor(zm, nb(dm), na(qm)), rb(nb(dm)), rb(na(qm)))
    hom_tau = step4 @ step3 @ step2 @ step1
    tau_b = _hom_to_herd(st, m, hom_tau, step="co-regular: reading tau in herd form")
    return _herd_tau_from_component(st, tau_b, name=f"Omega({obj.name})")


# ---------------------------------------------------------------- round trip


def _transport(st, c_new: ObjectwiseComonad, i_new: NatTransform, arr: RArrObject):
    """w: C ⇒ C_new with ĩ∘w = (ξN_A)∘(Cη^A), both sides read in Hom form."""
    na = st.N_A
    eta_a = st.adjA.unit

    def rule(x):
        mono = st.Q.mor(st.p_to_rbna(x), st.P(x), st.R_B(na(x))) @ i_new.at(x)
        target = arr.xi.at(na(x)) @ arr.C.mor(eta_a.at(x), x, st.R(x))
        return solve_through(mono, target, step=f"w at {x.name}")

    return NatTransform(arr.C.functor, c_new.functor, rule, flavor="solved", name="w")


def roundtrip_check(pt: PreTorsor, arrow: RArrObject | None = None,
                    gamma_out: GammaOutput | None = None) -> ValidationReport:
    """Ω(Γ(τ)) = τ, the co-regular variant, and (optionally) Γ(Ω(arrow)) ≅ arrow."""
    rep = ValidationReport(f"round trip for {pt.name}")
    g = gamma_out or gamma(pt, check=False)
    back = omega_from_arrow(arrow_from_gamma(g))
    rep.add("Omega(Gamma(tau)) == tau", back.tau == pt.tau,
            witness=None if back.tau == pt.tau else back.tau - pt.tau)
    try:
        back2 = tau_from_coregular(coregular_from_gamma(g))
        rep.add("tau from (D, zeta) == tau", back2.tau == pt.tau,
                witness=None if back2.tau == pt.tau else back2.tau - pt.tau)
    except NotCoRegular as exc:
        rep.add("tau from (D, zeta) == tau", False, detail=str(exc))
    if arrow is not None:
        rep.extend(arrow_comparison(arrow), prefix="arrow")
    return rep


def arrow_comparison(arrow: RArrObject) -> ValidationReport:
    """Build w: C ⇒ C_Γ for Γ(Ω(arrow)) and check that it is a comonad iso matching ξ."""
    st = arrow.setting
    rep = ValidationReport(f"comparison for {arrow.name}")
    pt = omega_from_arrow(arrow)
    ax = check_pretorsor_axioms(pt)
    rep.extend(ax, prefix="Omega")
    if not ax.ok:
        return rep
    g = gamma(pt, check=False)
    w = _transport(st, arrow.C, g.i, arrow)
    c, ct = arrow.C, g.C
    for x in st.probes_A.modules:
        wx = w.at(x)
        inv = wx.nrows == wx.ncols and rank(wx) == wx.nrows
        rep.add(f"w invertible at {x.name}", inv, detail=f"{wx.ncols} -> {wx.nrows}")
        cx = c(x)
        lhs = ct.delta(x) @ wx
        rhs = ct.mor(wx, cx, ct(x)) @ w.at(cx) @ c.delta(x)
        rep.add(f"(ww) Delta = Delta~ w at {x.name}", lhs == rhs)
        rep.add(f"eps~ w = eps at {x.name}", ct.eps(x) @ wx == c.eps(x))
    for y in st.probes_T.modules:
        ry = st.R_A(y)
        rep.add(f"xi = xi~ (w R_A) at {y.name}", arrow.xi.at(y) == g.xi.at(y) @ w.at(ry))
    return rep


# ---------------------------------------------------------------- Φ


def xi_bar(arr: RArrObject) -> NatTransform:
    """ξ̄ = (ε^A C′N_A)∘(N_A ξ N_A)∘(N_A C η^A): N_A C ⇒ C′ N_A, C′ = N_B R_B."""
    st = arr.setting
    na, ra = st.N_A, st.R_A
    c = arr.C
    eta_a, eps_a = st.adjA.unit, st.adjA.counit
    cp = compose(st.N_B, st.R_B)

    def rule(x):
        rx = st.R(x)
        a = na.mor(c.mor(eta_a.at(x), x, rx), c(x), c(rx))
        b = na.mor(arr.xi.at(na(x)), c(rx), ra(cp(na(x))))
        e = eps_a.at(cp(na(x)))
        return e @ b @ a

    return NatTransform(compose(na, c.functor), compose(cp, na), rule, flavor="solved",
                        name="xi_bar")


def phi_identities_check(arr: RArrObject) -> ValidationReport:
    """Φ = (R_A ξ̄⁻¹)∘(ξ N_A) and its four compatibility identities on probes."""
    st = arr.setting
    rep = ValidationReport(f"Phi identities for {arr.name}")
    na, rn = st.N_A, st.R
    c = arr.C
    xb = xi_bar(arr)
    eta_a, eps_a = st.adjA.unit, st.adjA.counit
    inv_cache = {}

    def xb_inv(x):
        key = id(x)
        if key not in inv_cache:
            m = xb.at(x)
            if m.nrows != m.ncols or rank(m) != m.nrows:
                raise NotCoRegular(f"{arr.name}: xi_bar is not invertible at {x.name} "
                                   f"({m.ncols} -> {m.nrows}, rank {rank(m)})")
            inv_cache[key] = (x, inverse(m))
        return inv_cache[key][1]

    def phi(x):
        return xb_inv(x) @ arr.xi.at(na(x))

    for x in st.probes_A.modules:
        cx = c(x)
        rx = rn(x)
        p = phi(x)
        # 1. RN(Δ)Φ = (ΦC)(CΦ)(ΔRN)
        lhs = rn.mor(c.delta(x), cx, c(cx)) @ p
        rhs = phi(cx) @ c.mor(p, c(rx), rn(cx)) @ c.delta(rx)
        rep.add(f"(RN Delta) Phi = (Phi C)(C Phi)(Delta RN) at {x.name}", lhs == rhs)
        # 2. RN(ε)Φ = ε RN
        lhs = rn.mor(c.eps(x), cx, x) @ p
        rep.add(f"(RN eps) Phi = eps RN at {x.name}", lhs == c.eps(rx))
        # 3. Φ C(R_A ε^A N_A) = (R_A ε^A N_A C)(RN Φ)(Φ RN)
        e1 = eps_a.at(na(x))
        lhs = p @ c.mor(e1, rn(rx), rx)
        rhs = eps_a.at(na(cx)) @ rn.mor(p, c(rx), rn(cx)) @ phi(rx)
        rep.add(f"Phi C(R eps N) = (R eps N C)(RN Phi)(Phi RN) at {x.name}", lhs == rhs)
        # 4. Φ C(η^A) = η^A C
        lhs = p @ c.mor(eta_a.at(x), x, rx)
        rep.add(f"Phi (C eta) = eta C at {x.name}", lhs == eta_a.at(cx))
    return rep


# ---------------------------------------------------------------- morphisms


@dataclass(eq=False)
class PreTorsorMorphism:
    """An algebra map ``f: T → T′`` with a map ``σ: Σ → Σ′`` over the same A and B.

    σ must be left B-linear and right T-linear along f, and f∘α = α′.
    """

    source: PreTorsor
    target: PreTorsor
    algebra_map: object   # AlgebraMorphism T → T′
    sigma_map: Matrix
    name: str = "F"


def _dual_transfer(m: PreTorsorMorphism) -> Matrix:
    """κ: Σ* → Σ′* with κ(φ)∘σ = f∘φ (R_B F ≅ R′_B on the regular module)."""
    from .linalg import solve_factor
    from .errors import NoSolution
    from .monoidal import vectorize
    st, st2 = m.source.setting, m.target.setting
    f = st.field
    sig = m.sigma_map
    fm = m.algebra_map.matrix
    rows = st2.T.dim * st.sigma.dim
    cols = [vectorize(phi @ sig) for phi in st2.dual.basis]
    system = Matrix(f, len(cols), rows, cols).transpose() if cols else Matrix.zeros(f, rows, 0)
    targets = [vectorize(fm @ phi) for phi in st.dual.basis]
    rhs = Matrix(f, len(targets), rows, targets).transpose()
    try:
        return solve_factor(system, rhs)
    except NoSolution:
        raise FactorizationFailure("no functional on the target restricts to f∘φ",
                                   step="dual transfer") from None


def check_pretorsor_morphism(m: PreTorsorMorphism) -> ValidationReport:
    st, st2 = m.source.setting, m.target.setting
    rep = ValidationReport(f"pre-torsor morphism {m.name}")
    f = m.algebra_map
    sig = m.sigma_map
    same = st.A is st2.A and st.B is st2.B
    rep.add("same base algebras A and B", same)
    shapes = (f.source is st.T and f.target is st2.T
              and sig.shape == (st2.sigma.dim, st.sigma.dim))
    rep.add("maps have the right shapes", shapes)
    if not (same and shapes):
        return rep
    rep.add("f alpha = alpha'", f.matrix @ st.alpha.matrix == st2.alpha.matrix)
    rep.add("f is multiplicative and unital",
            all(f.matrix @ st.T.multiply(st.T.basis_vector(a), st.T.basis_vector(b))
                == st2.T.multiply(f.matrix @ st.T.basis_vector(a), f.matrix @ st.T.basis_vector(b))
                for a in range(st.T.dim) for b in range(st.T.dim))
            and f.matrix @ st.T.unit_vector() == st2.T.unit_vector())
    rep.add("sigma map is right T-linear along f",
            all(sig @ st.sigma.action[t] == st2.sigma.act(f.matrix @ st.T.basis_vector(t)) @ sig
                for t in range(st.T.dim)))
    rep.add("sigma map is left B-linear",
            all(sig @ a == b @ sig for a, b in zip(st.sigma.left_action, st2.sigma.left_action)))
    if not rep.ok:
        return rep
    try:
        kappa = _dual_transfer(m)
    except FactorizationFailure as exc:
        rep.add("dual transfer exists", False, detail=str(exc))
        return rep
    lhs = st2.herd_proj @ sig.kron(kappa).kron(sig) @ m.source.kernel
    rhs = st2.herd_proj @ m.target.kernel @ sig
    diff = None
    if lhs != rhs:
        for j in range(lhs.ncols):
            if lhs.column(j) != rhs.column(j):
                diff = {"basis index": j, "lhs": lhs.column(j), "rhs": rhs.column(j)}
                break
    rep.add("tau' F = (F (x) F* (x) F) tau", lhs == rhs, witness=diff)
    return rep


def induce_comonad_morphism(m: PreTorsorMorphism, g: GammaOutput, g2: GammaOutput,
                            check: bool = True):
    """t: C ⇒ C′ with i′∘t = (Σ-map on QP)∘i; returns ``(t, report)``."""
    st, st2 = m.source.setting, m.target.setting
    kappa = _dual_transfer(m)
    factor = kappa.kron(m.sigma_map)

    def rule(x):
        _, sec = st.QP.frame(x)
        proj, _ = st2.QP.frame(x)
        mapped = proj @ Matrix.identity(x.field, x.dim).kron(factor) @ sec @ g.i.at(x)
        return solve_through(g2.i.at(x), mapped, step=f"t at {x.name}")

    t = NatTransform(g.C.functor, g2.C.functor, rule, flavor="solved", name="t")
    rep = ValidationReport(f"comonad morphism induced by {m.name}")
    if check:
        c, c2 = g.C, g2.C
        for x in st.probes_A.modules:
            tx = t.at(x)
            cx = c(x)
            lhs = c2.delta(x) @ tx
            rhs = c2.mor(tx, cx, c2(x)) @ t.at(cx) @ c.delta(x)
            rep.add(f"(t t) Delta = Delta' t at {x.name}", lhs == rhs)
            rep.add(f"eps' t = eps at {x.name}", c2.eps(x) @ tx == c.eps(x))
    return t, rep
