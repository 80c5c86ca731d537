"""Objectwise comonads, comodules, corings and the cotensor functor."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import product

from .algebra import (Bimodule, FDAlgebra, RightModule, direct_sum,
                      regular_module)
from .errors import (ComparisonUndefined, FactorizationFailure, TorsorLabError)
from .functors import (BimoduleTransform, Functor, NatTransform, ProbeSet, TensorFunctor,
                       action_field_map, compose, identity_functor, identity_transform,
                       left_action_field_map, solve_through, submodule)
from .linalg import Matrix, kernel_basis, rank
from .monoidal import balanced_tensor, chain_tensor
from .report import ValidationReport

__all__ = [
    "ObjectwiseComonad", "identity_comonad", "validate_comonad", "Comodule",
    "validate_comodule", "cofree_comodule", "CoringData", "validate_coring",
    "coring_comonad", "grouplikes", "CoringExtraction", "extract_coring",
    "BicomoduleFunctor", "validate_bicomodule", "cotensor_functor", "CotensorValue",
    "comodule_morphisms", "comodules_isomorphic", "grouplike_comodule",
    "direct_sum_comodule", "enumerate_comodules", "idempotent_kernel_comonad",
]


@dataclass(eq=False)
class ObjectwiseComonad:
    """Comonad on Mod-``functor.source`` given by its functor and two transforms."""

    functor: Functor
    coproduct: NatTransform
    counit: NatTransform
    name: str = "C"

    @property
    def algebra(self) -> FDAlgebra:
        return self.functor.source

    def __call__(self, x):
        return self.functor(x)

    def mor(self, f, x, y):
        return self.functor.mor(f, x, y)

    def delta(self, x) -> Matrix:
        return self.coproduct.at(x)

    def eps(self, x) -> Matrix:
        return self.counit.at(x)


def identity_comonad(algebra: FDAlgebra) -> ObjectwiseComonad:
    i = identity_functor(algebra)
    one = identity_transform(i)
    return ObjectwiseComonad(i, one, one, name="Id")


def validate_comonad(c: ObjectwiseComonad, probes: ProbeSet) -> ValidationReport:
    """Coassociativity, both counit laws and naturality of Δ and ε on probes."""
    rep = ValidationReport(f"comonad {c.name}")
    for x in probes.modules:
        cx = c(x)
        d = c.delta(x)
        left = c.delta(cx) @ d
        right = c.mor(d, cx, c(cx)) @ d
        rep.add(f"coassociative at {x.name}", left == right,
                witness=None if left == right else left - right)
        u1 = c.eps(cx) @ d
        rep.add(f"(eps C) delta = id at {x.name}", u1.is_identity(), witness=None if u1.is_identity() else u1)
        u2 = c.mor(c.eps(x), cx, x) @ d
        rep.add(f"(C eps) delta = id at {x.name}", u2.is_identity(), witness=None if u2.is_identity() else u2)
    for m in probes.maps:
        x, y = m.source, m.target
        cf = c.mor(m.matrix, x, y)
        ok_d = c.delta(y) @ cf == c.mor(cf, c(x), c(y)) @ c.delta(x)
        ok_e = c.eps(y) @ cf == m.matrix @ c.eps(x)
        rep.add(f"delta natural on {_label(m)}", ok_d)
        rep.add(f"eps natural on {_label(m)}", ok_e)
    return rep


def _label(m):
    return getattr(m, "label", None) or f"{m.source.name}->{m.target.name}"


# ---------------------------------------------------------------- comodules


@dataclass(eq=False)
class Comodule:
    """``(carrier, ρ: carrier → C(carrier))``."""

    comonad: ObjectwiseComonad
    carrier: RightModule
    coaction: Matrix
    name: str = "M"

    @property
    def dim(self) -> int:
        return self.carrier.dim


def validate_comodule(m: Comodule) -> ValidationReport:
    c = m.comonad
    x = m.carrier
    rep = ValidationReport(f"comodule {m.name}")
    rho = m.coaction
    rep.add("coaction shape", rho.shape == (c(x).dim, x.dim))
    if rho.shape != (c(x).dim, x.dim):
        return rep
    rep.add("coaction is a module map", all(rho @ a == b @ rho
                                            for a, b in zip(x.action, c(x).action)))
    lhs = c.delta(x) @ rho
    rhs = c.mor(rho, x, c(x)) @ rho
    rep.add("coassociative", lhs == rhs, witness=None if lhs == rhs else lhs - rhs)
    u = c.eps(x) @ rho
    rep.add("counital", u.is_identity(), witness=None if u.is_identity() else u)
    return rep


def cofree_comodule(c: ObjectwiseComonad, n: RightModule) -> Comodule:
    return Comodule(c, c(n), c.delta(n), name=f"{c.name}({n.name})")


def comodule_morphisms(m: Comodule, n: Comodule):
    """Basis of comodule maps ``m → n`` (module maps commuting with coactions)."""
    c = m.comonad
    x, y = m.carrier, n.carrier
    f = x.field
    dx, dy = x.dim, y.dim
    if dx == 0 or dy == 0:
        return []
    # unknown h (dy × dx), vectorized row-major
    basis_maps = []
    for r in range(dy):
        for s in range(dx):
            basis_maps.append(Matrix.from_dict(f, dy, dx, {(r, s): f.one}))
    rows = []
    for h in basis_maps:
        parts = [_vec(a @ h - h @ b) for a, b in zip(y.action, x.action)]
        parts.append(_vec(n.coaction @ h - c.mor(h, x, y) @ m.coaction))
        col = {}
        off = 0
        for p, size in parts:
            for k, v in p.items():
                col[off + k] = v
            off += size
        rows.append((col, off))
    total = rows[0][1]
    system = Matrix(f, len(rows), total, [r[0] for r in rows]).transpose()
    kb = kernel_basis(system)
    out = []
    for k in range(kb.dim):
        coeffs = kb.basis.column(k)
        h = Matrix.zeros(f, dy, dx)
        for coef, bm in zip(coeffs, basis_maps):
            if coef:
                h = h + bm.scale(coef)
        out.append(h)
    return out


def _vec(mat: Matrix):
    out = {}
    n = mat.ncols
    for r in range(mat.nrows):
        for c, v in mat.row_items(r).items():
            out[r * n + c] = v
    return out, mat.nrows * mat.ncols


def comodules_isomorphic(m: Comodule, n: Comodule, tries: int = 8, seed: int = 0) -> bool:
    """Search the intertwiner space for an invertible element (seeded, exact)."""
    if m.dim != n.dim:
        return False
    if m.dim == 0:
        return True
    maps = comodule_morphisms(m, n)
    if not maps:
        return False
    f = m.carrier.field
    rng = random.Random(seed)
    for attempt in range(tries):
        h = Matrix.zeros(f, n.dim, m.dim)
        for b in maps:
            coef = 1 if attempt == 0 else rng.randint(-7, 7)
            h = h + b.scale(f(coef))
        if rank(h) == m.dim:
            return True
    return False


def direct_sum_comodule(m: Comodule, n: Comodule, name: str | None = None) -> Comodule:
    c = m.comonad
    s, (i1, i2), (p1, p2) = direct_sum(m.carrier, n.carrier, name=name)
    rho = (c.mor(i1.matrix, m.carrier, s) @ m.coaction @ p1.matrix
           + c.mor(i2.matrix, n.carrier, s) @ n.coaction @ p2.matrix)
    return Comodule(c, s, rho, name=name or f"{m.name}+{n.name}")


def grouplike_comodule(c: ObjectwiseComonad, ground: RightModule, g: Matrix,
                       name: str = "k_g") -> Comodule:
    """One-dimensional comodule on the regular ground module with coaction ``1 ↦ g``."""
    return Comodule(c, ground, g, name=name)


def enumerate_comodules(c: ObjectwiseComonad, coring: "CoringData", ground: RightModule,
                        max_dim: int):
    """Comodules of dimension ≤ ``max_dim`` over a field base, up to isomorphism.

    Candidates are direct sums of the one-dimensional comodules given by
    grouplikes together with cofree comodules; duplicates are removed by
    intertwiner solves.  The result is exhaustive when the coalgebra is
    spanned by its grouplikes (then every comodule is such a direct sum).
    Returns ``(classes, exhaustive)``.
    """
    gs = grouplikes(coring)
    ones = [grouplike_comodule(c, ground, g, name=f"k_g{i}") for i, g in enumerate(gs)]
    candidates = []
    for d in range(1, max_dim + 1):
        for combo in _multisets(len(ones), d):
            mod = ones[combo[0]]
            for idx in combo[1:]:
                mod = direct_sum_comodule(mod, ones[idx])
            mod.name = "+".join(f"k_g{i}" for i in combo)
            candidates.append(mod)
    cof = cofree_comodule(c, ground)
    if cof.dim <= max_dim:
        candidates.append(cof)
    classes = []
    for cand in candidates:
        if not validate_comodule(cand).ok:
            continue
        if any(comodules_isomorphic(cand, k) for k in classes):
            continue
        classes.append(cand)
    exhaustive = len(gs) == coring.carrier.dim
    return classes, exhaustive


def _multisets(n, d):
    out = []

    def rec(start, acc):
        if len(acc) == d:
            out.append(tuple(acc))
            return
        for i in range(start, n):
            rec(i, acc + [i])

    rec(0, [])
    return out


# ---------------------------------------------------------------- corings


@dataclass(eq=False)
class CoringData:
    """An A-coring: an (A, A)-bimodule with coproduct into ``carrier ⊗_A carrier``."""

    algebra: FDAlgebra
    carrier: Bimodule
    coproduct: Matrix   # carrier -> carrier ⊗_A carrier (balanced carrier coordinates)
    counit: Matrix      # carrier -> A
    name: str = "C"

    def square(self):
        return balanced_tensor(self.carrier, self.carrier)

    def field_coproduct(self) -> Matrix:
        """A lift of Δ into the field tensor ``carrier ⊗ carrier``."""
        return self.square().section @ self.coproduct


def validate_coring(c: CoringData) -> ValidationReport:
    rep = ValidationReport(f"coring {c.name}")
    x = c.carrier
    a = c.algebra
    f = x.field
    sq = c.square()
    rep.add("coproduct shape", c.coproduct.shape == (sq.carrier.dim, x.dim))
    rep.add("counit shape", c.counit.shape == (a.dim, x.dim))
    if not rep.ok:
        return rep
    # bimodule maps
    rep.add("coproduct is right linear",
            all(c.coproduct @ r == sq.carrier.action[i] @ c.coproduct
                for i, r in enumerate(x.action)))
    rep.add("coproduct is left linear",
            all(c.coproduct @ l == sq.carrier.left_action[i] @ c.coproduct
                for i, l in enumerate(x.left_action)))
    rep.add("counit is right linear",
            all(c.counit @ r == a.right_mult[i] @ c.counit for i, r in enumerate(x.action)))
    rep.add("counit is left linear",
            all(c.counit @ l == a.left_mult[i] @ c.counit for i, l in enumerate(x.left_action)))
    d = c.field_coproduct()
    i_c = Matrix.identity(f, x.dim)
    _, p3, _ = chain_tensor(x, x, x)
    lhs = p3 @ d.kron(i_c) @ d
    rhs = p3 @ i_c.kron(d) @ d
    rep.add("coassociative", lhs == rhs, witness=None if lhs == rhs else _first_col(lhs, rhs))
    # (ε ⊗ C)Δ and (C ⊗ ε)Δ through the actions
    act_left = left_action_field_map(x)
    act_right = action_field_map(x)
    u1 = act_left @ c.counit.kron(i_c) @ d
    u2 = act_right @ i_c.kron(c.counit) @ d
    rep.add("left counital", u1.is_identity())
    rep.add("right counital", u2.is_identity())
    return rep


def _first_col(a: Matrix, b: Matrix):
    for j in range(a.ncols):
        if a.column(j) != b.column(j):
            return j
    return None


def coring_comonad(c: CoringData) -> ObjectwiseComonad:
    """``(−) ⊗_A C`` with the coproduct and counit of the coring."""
    func = TensorFunctor(c.carrier, name=c.name)
    cc = compose(func, func)
    delta = BimoduleTransform(func, cc, c.field_coproduct(), name=f"Delta_{c.name}")
    f = c.carrier.field

    def eps_rule(x):
        _, sec = func.frame(x)
        i_x = Matrix.identity(f, x.dim)
        return action_field_map(x) @ i_x.kron(c.counit) @ sec

    eps = NatTransform(func, identity_functor(c.algebra), eps_rule, flavor="bimodule_induced",
                       name=f"eps_{c.name}")
    return ObjectwiseComonad(func, delta, eps, name=c.name)


def grouplikes(c: CoringData):
    """Grouplike elements of a coalgebra (a coring over a one-dimensional base).

    Over ℚ the quadratic system Δ(g) = g⊗g, ε(g) = 1 is solved with sympy and
    only rational solutions are kept; over F_p all vectors are enumerated.
    """
    if c.algebra.dim != 1:
        raise ComparisonUndefined("grouplikes are computed for coalgebras over the base field")
    f = c.carrier.field
    n = c.carrier.dim
    d = c.field_coproduct()
    eps = c.counit
    if f.p == 0:
        return _grouplikes_rational(f, n, d, eps)
    p = f.p
    if p ** n > 2_000_000:
        raise ComparisonUndefined(f"grouplike search over F_{p}^{n} is too large")
    out = []
    for coords in product(range(p), repeat=n):
        g = Matrix.column_vector(f, [f(v) for v in coords])
        if (eps @ g)[0, 0] == f.one and d @ g == g.kron(g):
            out.append(g)
    return out


def _grouplikes_rational(f, n, d, eps):
    import sympy

    xs = sympy.symbols(f"g0:{n}")
    dd = d.tolist()
    ee = eps.tolist()[0]
    eqs = []
    for r in range(n * n):
        lin = sum(sympy.Rational(int(dd[r][k].numerator), int(dd[r][k].denominator)) * xs[k]
                  for k in range(n) if dd[r][k])
        eqs.append(lin - xs[r // n] * xs[r % n])
    eqs.append(sum(sympy.Rational(int(ee[k].numerator), int(ee[k].denominator)) * xs[k]
                   for k in range(n) if ee[k]) - 1)
    sols = sympy.solve(eqs, xs, dict=True)
    out = []
    for s in sols:
        vals = [s.get(x, None) for x in xs]
        if any(v is None or not v.is_rational for v in vals):
            continue
        g = Matrix.column_vector(f, [f.parse(str(v)) for v in vals])
        if d @ g == g.kron(g) and (eps @ g)[0, 0] == f.one:
            out.append(g)
    out.sort(key=lambda g: [str(v) for v in g.column(0)])
    return out


# ---------------------------------------------------------------- coring extraction


@dataclass(eq=False)
class CoringExtraction:
    coring: CoringData | None
    verdict: ValidationReport
    comparisons: dict = dc_field(default_factory=dict)   # probe name -> κ matrix


def _find_regular(probes, a):
    if probes is not None:
        for m in probes.modules:
            if m.dim == a.dim and m.action == tuple(a.right_mult):
                return m
    return regular_module(a)


def _comparison(c: ObjectwiseComonad, reg: RightModule, carrier: Bimodule, m: RightModule):
    """κ_M: M ⊗_A C(A) → C(M), m ⊗ c ↦ C(λ_m)(c)."""
    f = m.field
    bt = balanced_tensor(m, carrier)
    a = reg.algebra
    cols = []
    for i in range(m.dim):
        e = Matrix.from_dict(f, m.dim, 1, {(i, 0): f.one})
        lam = Matrix.hstack(*[m.action[j] @ e for j in range(a.dim)])
        cols.append(c.mor(lam, reg, m))
    if not cols:
        return bt, Matrix.zeros(f, c(m).dim, bt.carrier.dim)
    field_map = Matrix.hstack(*cols)
    return bt, bt.lift(field_map)


def extract_coring(c: ObjectwiseComonad, probes: ProbeSet | None = None,
                   regular: RightModule | None = None) -> CoringExtraction:
    """Read off a candidate coring from C(A_A) and compare (−)⊗_A C(A) with C on probes."""
    a = c.algebra
    reg = regular or _find_regular(probes, a)
    rep = ValidationReport(f"coring extracted from {c.name}")
    try:
        ca = c(reg)
        left = [c.mor(a.left_operator(a.basis_vector(i)), reg, reg) for i in range(a.dim)]
    except TorsorLabError as exc:
        raise ComparisonUndefined(f"cannot evaluate {c.name} on the regular module: {exc}")
    carrier = Bimodule(a, a, ca.dim, left, ca.action, name=f"{c.name}({a.name})")
    comparisons = {}
    mods = list(probes.modules) if probes else [reg]
    if all(m is not reg for m in mods):
        mods.insert(0, reg)
    for m in mods:
        _, kappa = _comparison(c, reg, carrier, m)
        comparisons[m.name] = kappa
        ok = kappa.nrows == kappa.ncols and rank(kappa) == kappa.nrows
        rep.add(f"comparison invertible at {m.name}", ok,
                detail=f"{kappa.ncols} -> {kappa.nrows}, rank {rank(kappa)}",
                witness=None if ok else kappa)
    # naturality of κ on probe maps
    if probes:
        for mp in probes.maps:
            x, y = mp.source, mp.target
            bx, kx = _comparison(c, reg, carrier, x)
            by, ky = _comparison(c, reg, carrier, y)
            fx = bx.map_to(by, mp.matrix, Matrix.identity(x.field, carrier.dim))
            rep.add(f"comparison natural on {_label(mp)}",
                    ky @ fx == c.mor(mp.matrix, x, y) @ kx)
    coring = None
    try:
        _, kappa_c = _comparison(c, reg, carrier, ca)
        delta = solve_through(kappa_c, c.delta(reg), step="coring coproduct")
        coring = CoringData(a, carrier, delta, c.eps(reg), name=f"{c.name}({a.name})")
        vc = validate_coring(coring)
        rep.extend(vc, prefix="extracted")
        if not vc.ok:
            coring = None
    except FactorizationFailure as exc:
        rep.add("coproduct factors through the comparison at C(A)", False, detail=str(exc))
    rep.note("comparison checked on probes only")
    return CoringExtraction(coring, rep, comparisons)


# ---------------------------------------------------------------- bicomodules


@dataclass(eq=False)
class BicomoduleFunctor:
    """``functor`` with left coaction ``left: Q ⇒ LQ`` and right ``right: Q ⇒ QR``."""

    functor: Functor
    left_comonad: ObjectwiseComonad
    right_comonad: ObjectwiseComonad
    left: NatTransform
    right: NatTransform
    name: str = "Q"


def validate_bicomodule(b: BicomoduleFunctor, probes: ProbeSet) -> ValidationReport:
    q, lc, rc = b.functor, b.left_comonad, b.right_comonad
    rep = ValidationReport(f"bicomodule {b.name}")
    for m in probes.modules:
        qm = q(m)
        c = b.left.at(m)
        rep.add(f"left coassociative at {m.name}",
                lc.delta(qm) @ c == lc.mor(c, qm, lc(qm)) @ c)
        rep.add(f"left counital at {m.name}", (lc.eps(qm) @ c).is_identity())
        d = b.right.at(m)
        dm = rc(m)
        rep.add(f"right coassociative at {m.name}",
                q.mor(rc.delta(m), dm, rc(dm)) @ d == b.right.at(dm) @ d)
        rep.add(f"right counital at {m.name}", (q.mor(rc.eps(m), dm, m) @ d).is_identity())
        lhs = lc.mor(d, qm, q(dm)) @ c
        rhs = b.left.at(dm) @ d
        rep.add(f"coactions commute at {m.name}", lhs == rhs)
    return rep


@dataclass(eq=False)
class CotensorValue:
    comodule: Comodule
    inclusion: Matrix     # I_0 → Q(M)
    source: Comodule


def cotensor_functor(b: BicomoduleFunctor):
    """The functor from right-comonad comodules to left-comonad comodules.

    ``I_0`` is the kernel of ``d_M − Q(ρ)`` inside ``Q(M)``; its coaction is
    the unique ``c_0`` with ``L(e)∘c_0 = c_M∘e``.
    """
    q, lc = b.functor, b.left_comonad

    def apply(m: Comodule) -> CotensorValue:
        x = m.carrier
        qx = q(x)
        dx = b.right.at(x)
        qrho = q.mor(m.coaction, x, b.right_comonad(x))
        kb = kernel_basis(dx - qrho)
        i0 = submodule(qx, kb, name=f"I({m.name})")
        e = kb.basis
        le = lc.mor(e, i0, qx)
        c0 = solve_through(le, b.left.at(x) @ e, step=f"coaction of I_{b.name}({m.name})")
        return CotensorValue(Comodule(lc, i0, c0, name=f"I_{b.name}({m.name})"), e, m)

    return apply


# ---------------------------------------------------------------- a non-coring example


def idempotent_kernel_comonad(algebra: FDAlgebra, element: Matrix,
                              name: str = "K") -> ObjectwiseComonad:
    """``C(M) = {m : m·x = 0}`` for a central ``x``; Δ = id, ε = inclusion.

    The functor is a kernel, so it preserves equalizers, yet it need not be
    of the form (−)⊗_A C(A).
    """
    from .functors import objectwise_equalizer
    ident = identity_functor(algebra)
    gamma = NatTransform(ident, ident, lambda x: x.act(element), name="times x")
    zero = NatTransform(ident, ident, lambda x: Matrix.zeros(x.field, x.dim, x.dim), name="0")
    func, incl = objectwise_equalizer(gamma, zero, name=name)
    cc = compose(func, func)
    delta = NatTransform(func, cc, lambda x: Matrix.identity(x.field, func(x).dim),
                         name=f"Delta_{name}")
    eps = NatTransform(func, ident, lambda x: func.inclusion_at(x), name=f"eps_{name}")
    return ObjectwiseComonad(func, delta, eps, name=name)
