"""Entwining structures, lifted comonads, Galois data and comonad arrows.

An entwining of an A-ring T (given by ``alpha: A → T``) with an A-coring C is
a map ``ψ: C ⊗_A T → T ⊗_A C``.  It lifts ``(−) ⊗_A C`` to a comonad on
Mod-T, whose comodules are the entwined modules.  A Galois datum is an
entwined module Σ with a subalgebra B of its endomorphisms; its canonical
map ``Hom_T(Σ, −) ⊗_B Σ ⇒ (−) ⊗_A C`` is invertible exactly in the Galois
case, and its inverse is a regular comonad arrow.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import (AlgebraMorphism, Bimodule, FDAlgebra, RightModule, regular_bimodule,
                      regular_module, restriction_of_scalars)
from .comonads import (CoringData, ObjectwiseComonad, coring_comonad, validate_coring)
from .errors import (ClosureFailure, NoSolution, NotALifting, NotGalois, ShapeError,
                     ValidationError)
from .functors import (Adjunction, BimoduleTransform, Functor, NatTransform, ProbeSet,
                       action_field_map, compose, identity_functor, left_action_field_map)
from .herd import HerdSetting
from .linalg import Matrix, inverse, kernel_basis, rank
from .monoidal import along, balanced_tensor, chain_tensor
from .pretorsor import RArrObject
from .report import ValidationReport

__all__ = ["EntwiningData", "validate_entwining", "LiftedFunctor", "lift_comonad",
           "distributive_law_from_lifting", "GaloisDatum", "validate_galois_datum",
           "canonical_map", "canonical_map_check", "GaloisVerdict", "is_galois",
           "coinvariants", "ComonadArrow", "ArrowVerdict", "check_comonad_arrow", "arrow_bar",
           "assemble_rarr_object", "rarr_as_arrow",
           "hopf_entwining", "coalgebra_coring", "trivial_entwining"]


def _first_diff(lhs: Matrix, rhs: Matrix):
    for j in range(lhs.ncols):
        if lhs.column(j) != rhs.column(j):
            return {"basis index": j, "lhs": lhs.column(j), "rhs": rhs.column(j)}
    return None


@dataclass(eq=False)
class EntwiningData:
    """ψ: C ⊗_A T → T ⊗_A C as a matrix between the balanced carriers."""

    alpha: AlgebraMorphism
    coring: CoringData
    psi: Matrix
    name: str = "psi"

    def __post_init__(self):
        if self.coring.algebra is not self.alpha.source:
            raise ShapeError("the coring must live over the source of alpha")
        self.A = self.alpha.source
        self.T = self.alpha.target
        self.T_bimodule = regular_bimodule(self.T)
        self.T_right_A = restriction_of_scalars(self.alpha, self.T_bimodule)   # (T, A)
        self.T_left_A = along(self.alpha)                                      # (A, T)
        self.CT = balanced_tensor(self.coring.carrier, self.T_left_A)
        self.TC = balanced_tensor(self.T_right_A, self.coring.carrier)
        want = (self.TC.carrier.dim, self.CT.carrier.dim)
        if self.psi.shape != want:
            raise ShapeError(f"psi has shape {self.psi.shape}, expected {want}")

    @classmethod
    def from_field_psi(cls, alpha, coring, field_psi: Matrix, name: str = "psi"):
        """Build from a map ``C ⊗ T → T ⊗ C`` of field tensors (projected and restricted)."""
        t = alpha.target
        ct = balanced_tensor(coring.carrier, along(alpha))
        tc = balanced_tensor(restriction_of_scalars(alpha, regular_bimodule(t)), coring.carrier)
        return cls(alpha, coring, tc.project(field_psi) @ ct.section, name=name)

    @property
    def field_psi(self) -> Matrix:
        """A lift ``C ⊗ T → T ⊗ C`` of ψ to field tensors."""
        return self.TC.section @ self.psi @ self.CT.projection


def validate_entwining(e: EntwiningData) -> ValidationReport:
    """The four entwining axioms, compared on balanced carriers."""
    rep = ValidationReport(f"entwining {e.name}")
    rep.extend(validate_coring(e.coring), prefix="coring")
    f = e.T.field
    c = e.coring.carrier
    t = e.T
    dc, dt = c.dim, t.dim
    psi = e.field_psi
    i_c, i_t = Matrix.identity(f, dc), Matrix.identity(f, dt)
    a_basis = [e.alpha.matrix @ e.A.basis_vector(i) for i in range(e.A.dim)]

    left_ok = all(e.psi @ e.CT.carrier.left_action[i] == e.TC.carrier.left_act(a) @ e.psi
                  for i, a in enumerate(a_basis))
    right_ok = all(e.psi @ e.CT.carrier.act(a) == e.TC.carrier.action[i] @ e.psi
                   for i, a in enumerate(a_basis))
    rep.add("psi is A-bilinear", left_ok and right_ok)

    # multiplication: ψ(c ⊗ t t′) = t_ψ t′_Ψ ⊗ c^{ψΨ}
    mult = Matrix.hstack(*[t.left_mult[i] for i in range(dt)])       # T ⊗ T → T
    proj = e.TC.projection
    lhs = proj @ psi @ i_c.kron(mult)
    rhs = proj @ mult.kron(i_c) @ i_t.kron(psi) @ psi.kron(i_t)
    rep.add("axiom 1 (multiplication)", lhs == rhs, witness=_first_diff(lhs, rhs))

    unit = Matrix.column_vector(f, t.unit)
    lhs = proj @ psi @ i_c.kron(unit)
    rhs = proj @ unit.kron(i_c)
    rep.add("axiom 2 (unit)", lhs == rhs, witness=_first_diff(lhs, rhs))

    delta = e.coring.field_coproduct()
    _, p3, _ = chain_tensor(e.T_right_A, c, c)
    lhs = p3 @ i_t.kron(delta) @ psi
    rhs = p3 @ psi.kron(i_c) @ i_c.kron(psi) @ delta.kron(i_t)
    rep.add("axiom 3 (comultiplication)", lhs == rhs, witness=_first_diff(lhs, rhs))

    eps = e.coring.counit
    lhs = action_field_map(e.T_right_A) @ i_t.kron(eps) @ psi
    rhs = left_action_field_map(e.T_left_A) @ eps.kron(i_t)
    rep.add("axiom 4 (counit)", lhs == rhs, witness=_first_diff(lhs, rhs))
    return rep


# ---------------------------------------------------------------- lifting


class LiftedFunctor(Functor):
    """``X ↦ X ⊗_A C`` on Mod-T with ``(x ⊗ c)·t = x t_ψ ⊗ c^ψ``."""

    kind = "tensor_with_bimodule"

    def __init__(self, e: EntwiningData, name: str | None = None):
        super().__init__(e.T, e.T, name or f"(-)(x){e.coring.name}~")
        self.entwining = e
        self.restrict = lambda x: restriction_of_scalars(e.alpha, x)

    def _build(self, x):
        e = self.entwining
        f = x.field
        bt = balanced_tensor(self.restrict(x), e.coring.carrier)
        dc = e.coring.carrier.dim
        act = action_field_map(x)
        psi = e.field_psi
        i_x, i_c = Matrix.identity(f, x.dim), Matrix.identity(f, dc)
        actions = []
        for j in range(e.T.dim):
            tj = e.T.basis_vector(j)
            field_map = act.kron(i_c) @ i_x.kron(psi @ i_c.kron(tj))
            actions.append(bt.project(bt.lift(field_map)))
        return RightModule(e.T, bt.carrier.dim, actions, name=f"{x.name}(x)C"), bt

    def tensor(self, x):
        return self.data(x)

    def mor(self, f, x, y):
        src, tgt = self.tensor(x), self.tensor(y)
        n = self.entwining.coring.carrier.dim
        return tgt.project(src.lift(f.kron(Matrix.identity(f.field, n))))

    @property
    def factors(self):
        return (self.entwining.coring.carrier,)

    def frame(self, x):
        bt = self.tensor(x)
        return bt.projection, bt.section


def lift_comonad(e: EntwiningData) -> ObjectwiseComonad:
    func = LiftedFunctor(e)
    delta = BimoduleTransform(func, compose(func, func), e.coring.field_coproduct(),
                              name="Delta~")
    counit = e.coring.counit

    def eps_rule(x):
        _, sec = func.frame(x)
        rx = func.restrict(x)
        return action_field_map(rx) @ Matrix.identity(x.field, x.dim).kron(counit) @ sec

    eps = NatTransform(func, identity_functor(e.T), eps_rule, flavor="bimodule_induced",
                       name="eps~")
    return ObjectwiseComonad(func, delta, eps, name=f"{e.coring.name}~")


def distributive_law_from_lifting(lifted: ObjectwiseComonad, alpha: AlgebraMorphism,
                                  coring: CoringData, probes: ProbeSet | None = None,
                                  name: str = "psi") -> EntwiningData:
    """Recover ψ from a lifting of ``(−) ⊗_A C`` to Mod-T.

    ψ(c ⊗ t) is the action of t on ``1 ⊗ c`` in the lifted value at T_T.
    """
    t = alpha.target
    base = coring_comonad(coring)
    reg_t = regular_module(t)
    reg_t.name = t.name
    mods = list(probes.modules) if probes else []
    if all(m.dim != reg_t.dim or m.action != reg_t.action for m in mods):
        mods.insert(0, reg_t)
    for y in mods:
        ry = restriction_of_scalars(alpha, y)
        ly = lifted(y)
        if ly.dim != base(ry).dim:
            raise NotALifting(f"lifted value at {y.name} has dim {ly.dim}, "
                              f"expected {base(ry).dim}")
        restricted = [ly.act(alpha.matrix @ alpha.source.basis_vector(i))
                      for i in range(alpha.source.dim)]
        if tuple(restricted) != tuple(base(ry).action):
            raise NotALifting(f"restriction of the lifted value at {y.name} differs")
        if lifted.delta(y) != base.delta(ry):
            raise NotALifting(f"coproducts differ at {y.name}")
        if lifted.eps(y) != base.eps(ry):
            raise NotALifting(f"counits differ at {y.name}")
    reg = next(m for m in mods if m.dim == reg_t.dim and m.action == reg_t.action)
    f = t.field
    lt = lifted(reg)
    tc = balanced_tensor(restriction_of_scalars(alpha, reg), coring.carrier)
    unit = Matrix.column_vector(f, t.unit)
    cols = []
    for k in range(coring.carrier.dim):
        e_k = Matrix.from_dict(f, coring.carrier.dim, 1, {(k, 0): f.one})
        one_c = tc.project(unit.kron(e_k))
        for j in range(t.dim):
            cols.append(lt.action[j] @ one_c)
    field_psi_on_carrier = Matrix.hstack(*cols)
    ct = balanced_tensor(coring.carrier, along(alpha))
    return EntwiningData(alpha, coring, field_psi_on_carrier @ ct.section, name=name)


# ---------------------------------------------------------------- Galois data


@dataclass(eq=False)
class GaloisDatum:
    """An entwined module Σ (a (B, T)-bimodule with coaction ρ: Σ → Σ ⊗_A C)."""

    entwining: EntwiningData
    sigma: Bimodule
    rho: Matrix
    name: str = "Sigma"

    def __post_init__(self):
        self.lifted = lift_comonad(self.entwining)
        self.B = self.sigma.left_algebra
        if self.sigma.algebra is not self.entwining.T:
            raise ShapeError("Sigma must be a right T-module")
        want = (self.lifted(self.sigma_right).dim, self.sigma.dim)
        if self.rho.shape != want:
            raise ShapeError(f"rho has shape {self.rho.shape}, expected {want}")

    @property
    def sigma_right(self) -> RightModule:
        if not hasattr(self, "_sigma_right"):
            self._sigma_right = self.sigma.as_right_module()
        return self._sigma_right

    def setting(self, **kwargs) -> HerdSetting:
        if not hasattr(self, "_setting"):
            self._setting = HerdSetting(self.entwining.alpha, self.sigma, name=self.name,
                                        **kwargs)
        return self._setting


def validate_galois_datum(g: GaloisDatum) -> ValidationReport:
    rep = ValidationReport(f"Galois datum {g.name}")
    rep.extend(validate_entwining(g.entwining))
    lc = g.lifted
    s = g.sigma_right
    ls = lc(s)
    rho = g.rho
    rep.add("coaction is T-linear", all(rho @ a == b @ rho for a, b in zip(s.action, ls.action)))
    lhs = lc.delta(s) @ rho
    rhs = lc.mor(rho, s, ls) @ rho
    rep.add("coaction is coassociative", lhs == rhs)
    rep.add("coaction is counital", (lc.eps(s) @ rho).is_identity())
    rep.add("B acts by entwined endomorphisms",
            all(rho @ lb == lc.mor(lb, s, s) @ rho for lb in g.sigma.left_action))
    return rep


def canonical_map(g: GaloisDatum) -> NatTransform:
    """can: Hom_T(Σ, −) ⊗_B Σ ⇒ (−) ⊗_A C, ``f ⊗ x ↦ f(x₀) ⊗ x₁``."""
    st = g.setting()
    nb, rb = st.N_B, st.R_B
    lc = g.lifted
    f = st.field
    s_bt = balanced_tensor(restriction_of_scalars(g.entwining.alpha, g.sigma_right),
                           g.entwining.coring.carrier)
    rho_field = s_bt.section @ g.rho
    i_c = Matrix.identity(f, g.entwining.coring.carrier.dim)

    def rule(y):
        hom = rb.hom(y)
        _, sec = nb.frame(rb(y))
        proj, _ = lc.functor.frame(y)
        if hom.dim == 0 or g.sigma.dim == 0:
            return Matrix.zeros(f, lc(y).dim, nb(rb(y)).dim)
        blocks = [proj @ fh.kron(i_c) @ rho_field for fh in hom.basis]
        return Matrix.hstack(*blocks) @ sec

    return NatTransform(compose(nb, rb), lc.functor, rule, flavor="constructed", name="can")


def canonical_map_check(g: GaloisDatum, probes: ProbeSet | None = None) -> ValidationReport:
    """can is a comonad morphism N_B R_B → C~ on the probes."""
    from .pretorsor import hom_comonad
    st = g.setting()
    probes = probes or st.probes_T
    can = canonical_map(g)
    cp = hom_comonad(st)
    lc = g.lifted
    rep = ValidationReport(f"canonical map of {g.name}")
    for y in probes.modules:
        cy = can.at(y)
        lhs = lc.delta(y) @ cy
        rhs = lc.mor(cy, cp(y), lc(y)) @ can.at(cp(y)) @ cp.delta(y)
        rep.add(f"(can can) Delta' = Delta~ can at {y.name}", lhs == rhs)
        rep.add(f"eps~ can = eps' at {y.name}", lc.eps(y) @ cy == cp.eps(y))
    return rep


@dataclass(eq=False)
class GaloisVerdict:
    galois: bool
    report: ValidationReport
    ranks: dict = dc_field(default_factory=dict)      # probe name -> (rank, source dim, target dim)
    inverses: dict = dc_field(default_factory=dict)   # probe name -> can^{-1}


def is_galois(g: GaloisDatum, probes: ProbeSet | None = None) -> GaloisVerdict:
    st = g.setting()
    probes = probes or st.probes_T
    can = canonical_map(g)
    rep = ValidationReport(f"Galois verdict for {g.name}")
    ranks, inverses = {}, {}
    for y in probes.modules:
        m = can.at(y)
        r = rank(m)
        ranks[y.name] = (r, m.ncols, m.nrows)
        ok = m.nrows == m.ncols and r == m.nrows
        witness = None if ok else {"rank": r, "source dim": m.ncols, "target dim": m.nrows}
        rep.add(f"can invertible at {y.name}", ok, detail=f"rank {r} of {m.ncols} -> {m.nrows}",
                witness=witness)
        if ok:
            inverses[y.name] = inverse(m)
    rep.note("verdict is relative to the probe set")
    return GaloisVerdict(rep.ok, rep, ranks, inverses)


def coinvariants(e: EntwiningData, grouplike: Matrix, name: str = "B"):
    """Coinvariants of the coaction ``t ↦ g·t`` of the lifted comonad on T_T.

    ``grouplike`` is the image of 1 in T ⊗_A C.  Returns ``(B, β: B → T)`` with
    ``B = {t : t·g = g·t}`` (left multiplication against the lifted action).
    """
    t = e.T
    f = t.field
    lc = lift_comonad(e)
    reg = regular_module(t)
    lt = lc(reg)
    bt = lc.functor.tensor(reg)
    i_c = Matrix.identity(f, e.coring.carrier.dim)
    rho = Matrix.hstack(*[lt.action[j] @ grouplike for j in range(t.dim)])
    rep = ValidationReport("coaction on T")
    rep.add("coassociative", lc.delta(reg) @ rho == lc.mor(rho, reg, lt) @ rho)
    rep.add("counital", (lc.eps(reg) @ rho).is_identity())
    if not rep.ok:
        raise ValidationError("the coaction on T is not a comodule structure", report=rep)
    left = [bt.project(bt.lift(t.left_mult[j].kron(i_c))) @ grouplike for j in range(t.dim)]
    diff = Matrix.hstack(*left) - rho
    kb = kernel_basis(diff)
    basis = kb.basis
    if kb.dim == 0:
        raise ClosureFailure("the coinvariant subspace is zero")
    vecs = [basis.select_columns([i]) for i in range(kb.dim)]
    mult = []
    try:
        for a in vecs:
            row = []
            for b in vecs:
                row.append(kb.coordinates(t.multiply(a, b)).column(0))
            mult.append(row)
        unit = kb.coordinates(t.unit_vector()).column(0)
    except NoSolution:
        raise ClosureFailure("coinvariants are not closed under multiplication") from None
    b_alg = FDAlgebra(f, kb.dim, mult, unit, name=name)
    return b_alg, AlgebraMorphism(b_alg, t, basis)


# ---------------------------------------------------------------- comonad arrows


@dataclass(eq=False)
class ComonadArrow:
    """``ξ: C F ⇒ F C′`` for ``F: Mod-T → Mod-A``, C on Mod-A, C′ on Mod-T.

    ``adjunction`` (G ⊣ F) is needed only for the co-regularity test.
    """

    functor: Functor
    C: ObjectwiseComonad
    C_prime: ObjectwiseComonad
    xi: NatTransform
    xi_inv: NatTransform | None = None
    adjunction: Adjunction | None = None
    name: str = "arrow"


def arrow_bar(arr: ComonadArrow) -> NatTransform:
    """ξ̄ = (ε C′G)∘(G ξ G)∘(G C η): G C ⇒ C′ G."""
    adj = arr.adjunction
    g, fn = adj.left, arr.functor
    c, cp = arr.C, arr.C_prime

    def rule(x):
        gx = g(x)
        fgx = fn(gx)
        a = g.mor(c.mor(adj.unit.at(x), x, fgx), c(x), c(fgx))
        b = g.mor(arr.xi.at(gx), c(fgx), fn(cp(gx)))
        return adj.counit.at(cp(gx)) @ b @ a

    return NatTransform(compose(g, c.functor), compose(cp.functor, g), rule, flavor="solved",
                        name=f"{arr.xi.name}_bar")


@dataclass(eq=False)
class ArrowVerdict:
    valid: bool
    regular: bool
    co_regular: bool | None
    report: ValidationReport


def check_comonad_arrow(arr: ComonadArrow, probes: ProbeSet,
                        source_probes: ProbeSet | None = None) -> ArrowVerdict:
    """The two arrow identities, regularity and (with an adjunction) co-regularity.

    ``probes`` are objects of the domain of F; ``source_probes`` objects of
    the domain of its left adjoint.
    """
    rep = ValidationReport(f"comonad arrow {arr.name}")
    fn, c, cp = arr.functor, arr.C, arr.C_prime
    regular = True
    for y in probes.modules:
        xi = arr.xi.at(y)
        fy = fn(y)
        lhs = fn.mor(cp.eps(y), cp(y), y) @ xi
        rhs = c.eps(fy)
        rep.add(f"(F eps') xi = eps F at {y.name}", lhs == rhs, witness=_first_diff(lhs, rhs))
        cpy = cp(y)
        lhs = fn.mor(cp.delta(y), cpy, cp(cpy)) @ xi
        rhs = arr.xi.at(cpy) @ c.mor(xi, c(fy), fn(cpy)) @ c.delta(fy)
        rep.add(f"(F Delta') xi = (xi C')(C xi)(Delta F) at {y.name}", lhs == rhs,
                witness=_first_diff(lhs, rhs))
        inv = xi.nrows == xi.ncols and rank(xi) == xi.nrows
        if arr.xi_inv is not None and inv:
            xinv = arr.xi_inv.at(y)
            inv = (xi @ xinv).is_identity() and (xinv @ xi).is_identity()
        regular = regular and inv
        rep.add(f"xi invertible at {y.name}", inv, detail=f"rank {rank(xi)}")
    co = None
    if arr.adjunction is not None and source_probes is not None:
        xb = arrow_bar(arr)
        co = True
        for x in source_probes.modules:
            m = xb.at(x)
            ok = m.nrows == m.ncols and rank(m) == m.nrows
            co = co and ok
            rep.note(f"xi_bar at {x.name}: rank {rank(m)} of {m.ncols} -> {m.nrows}")
    return ArrowVerdict(rep.ok, regular, co, rep)


def assemble_rarr_object(g: GaloisDatum, probes: ProbeSet | None = None) -> RArrObject:
    """(Mod-T, (N_A, R_A), (N_B, R_B), (−) ⊗_A C, ξ = can⁻¹) for a Galois datum."""
    verdict = is_galois(g, probes)
    if not verdict.galois:
        raise NotGalois(f"{g.name}: canonical map is not invertible on the probes")
    st = g.setting()
    c = coring_comonad(g.entwining.coring)
    can = canonical_map(g)
    src = compose(c.functor, st.R_A)
    tgt = compose(st.Q, st.R_B)

    def xi_rule(y):
        m = can.at(y)
        if m.nrows != m.ncols or rank(m) != m.nrows:
            raise NotGalois(f"{g.name}: canonical map is not invertible at {y.name}")
        return inverse(m)

    xi = NatTransform(src, tgt, xi_rule, flavor="solved", name="can^-1")
    xi_inv = NatTransform(tgt, src, can.at, flavor="constructed", name="can")
    return RArrObject(st, c, xi, xi_inv, name=f"RArr({g.name})")


def rarr_as_arrow(obj: RArrObject) -> ComonadArrow:
    from .pretorsor import hom_comonad
    st = obj.setting
    return ComonadArrow(st.R_A, obj.C, hom_comonad(st), obj.xi, obj.xi_inv, st.adjA,
                        name=obj.name)




# ---------------------------------------------------------------- builders


def coalgebra_coring(coproduct: Matrix, counit: Matrix, field, name: str = "C") -> CoringData:
    """A coalgebra over the ground field as a coring over k."""
    from .algebra import ground_algebra
    k = ground_algebra(field)
    n = counit.ncols
    ident = Matrix.identity(field, n)
    carrier = Bimodule(k, k, n, [ident], [ident], name=name)
    return CoringData(k, carrier, coproduct, counit, name=name)


def hopf_entwining(hopf, name: str = "psi") -> EntwiningData:
    """ψ(c ⊗ t) = t₁ ⊗ c t₂ for A = k, T = C = H."""
    h = hopf.algebra
    f = h.field
    n = h.dim
    coring = coalgebra_coring(hopf.coproduct, hopf.counit, f, name=h.name)
    alpha = AlgebraMorphism.unit_map(h)
    cols = []
    for k in range(n):
        ck = h.basis_vector(k)
        for j in range(n):
            d = hopf.coproduct @ h.basis_vector(j)       # Σ t1 ⊗ t2
            # (I ⊗ left mult by c) then reorder nothing: t1 ⊗ c t2
            cols.append(Matrix.identity(f, n).kron(h.left_operator(ck)) @ d)
    return EntwiningData.from_field_psi(alpha, coring, Matrix.hstack(*cols), name=name)


def trivial_entwining(field, name: str = "psi") -> EntwiningData:
    """C = A = T = k with ψ the identity."""
    from .algebra import ground_algebra
    k = ground_algebra(field)
    one = Matrix.identity(field, 1)
    coring = CoringData(k, regular_bimodule(k), one, one, name="k")
    return EntwiningData(AlgebraMorphism.identity(k), coring, one, name=name)
