"""Computable functors between module categories and natural transformations.

A functor maps right modules to right modules and module-map matrices to
matrices.  Functors built only from restrictions and balanced tensors are
"chains": their value on ``X`` is a quotient of ``X ⊗ F1 ⊗ ... ⊗ Fn`` (field
tensor), exposed through :meth:`Functor.frame`.  Transforms between chains
that come from a bimodule map are stored by a single field-level kernel
matrix, so whiskering and composing them never touches objects.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field as dc_field

from .algebra import (AlgebraMorphism, Bimodule, FDAlgebra, ModuleMap, RightModule,
                      direct_sum, left_multiplication, regular_module,
                      restriction_of_scalars, zero_map, zero_module)
from .errors import ActionMismatch, FactorizationFailure, NoSolution, ValidationError
from .linalg import (Matrix, identity_kron, image_basis, kernel_basis, kron_identity,
                     rank)
from .monoidal import (DualBasisWitness, balanced_tensor, along, hom_module)
from .report import ValidationReport

__all__ = [
    "Functor", "IdentityFunctor", "RestrictionFunctor", "TensorFunctor", "HomFunctor",
    "CompositeFunctor", "EqualizerFunctor", "compose", "NatTransform", "BimoduleTransform",
    "identity_transform", "objectwise_equalizer", "factor_through_equalizer",
    "Adjunction", "restriction_extension_adjunction", "tensor_hom_adjunction",
    "ProbeSet", "default_probes", "submodule", "split_equalizer_oracle",
    "regular_unit_check", "preserves_equalizers_check", "naturality_check",
    "triangle_check", "identity_functor", "solve_through", "action_field_map",
    "left_action_field_map", "identity_adjunction",
]


_REGISTRY_LOCK = threading.RLock()


class _ObjectCache:
    """Per-object memo keyed by module identity; keeps keys alive."""

    def __init__(self):
        self._lock = threading.RLock()
        self._data = {}

    def get(self, key, build):
        k = id(key)
        with self._lock:
            hit = self._data.get(k)
            if hit is not None and hit[0] is key:
                return hit[1]
            value = build()
            self._data[k] = (key, value)
            return value


# ---------------------------------------------------------------- functors


class Functor:
    """Mod-``source`` → Mod-``target``."""

    kind = "abstract"

    def __init__(self, source: FDAlgebra, target: FDAlgebra, name: str):
        self.source = source
        self.target = target
        self.name = name
        self._cache = _ObjectCache()

    def __repr__(self):
        return f"<{self.kind} functor {self.name}>"

    def __call__(self, x: RightModule) -> RightModule:
        if x.algebra is not self.source:
            raise ActionMismatch(f"{self.name} expects modules over {self.source.name}, "
                                 f"got one over {x.algebra.name}")
        return self._cache.get(x, lambda: self._build(x))[0]

    def data(self, x: RightModule):
        """Auxiliary data cached with the object (tensor or hom record)."""
        self(x)
        return self._cache.get(x, lambda: None)[1]

    def _build(self, x):
        raise NotImplementedError

    def mor(self, f: Matrix, x: RightModule, y: RightModule) -> Matrix:
        """Image of a module map ``f: x → y`` given by its matrix."""
        raise NotImplementedError

    def map(self, f: ModuleMap) -> ModuleMap:
        return ModuleMap(self(f.source), self(f.target), self.mor(f.matrix, f.source, f.target))

    # chains
    @property
    def factors(self):
        """Bimodules tensored on, in application order, or None if not a chain."""
        return None

    @property
    def factor_dim(self) -> int:
        d = 1
        for b in self.factors:
            d *= b.dim
        return d

    def frame(self, x: RightModule):
        """(projection, section) between ``x ⊗ factors`` and the value at ``x``."""
        raise TypeError(f"{self.name} is not a tensor chain")

    def primitives(self) -> tuple:
        """Non-composite functors this one is built from, outermost first."""
        return (self,)

    def __matmul__(self, inner: "Functor") -> "Functor":
        return compose(self, inner)


class IdentityFunctor(Functor):
    kind = "identity"

    def __init__(self, algebra: FDAlgebra):
        super().__init__(algebra, algebra, "Id")

    def __call__(self, x):
        return x

    def _build(self, x):  # pragma: no cover
        return x, None

    def mor(self, f, x, y):
        return f

    @property
    def factors(self):
        return ()

    def frame(self, x):
        i = Matrix.identity(x.field, x.dim)
        return i, i


_IDENTITIES: dict = {}


def identity_functor(algebra: FDAlgebra) -> IdentityFunctor:
    """The identity functor on Mod-``algebra`` (one shared object per algebra)."""
    with _REGISTRY_LOCK:
        hit = _IDENTITIES.get(id(algebra))
        if hit is None or hit[0] is not algebra:
            hit = (algebra, IdentityFunctor(algebra))
            _IDENTITIES[id(algebra)] = hit
        return hit[1]


class RestrictionFunctor(Functor):
    """Restriction of scalars along an algebra map (iso to Hom_T(T, −))."""

    kind = "restriction"

    def __init__(self, morphism: AlgebraMorphism, name: str = "R"):
        super().__init__(morphism.target, morphism.source, name)
        self.morphism = morphism

    def _build(self, x):
        return restriction_of_scalars(self.morphism, x), None

    def mor(self, f, x, y):
        return f

    @property
    def factors(self):
        return ()

    def frame(self, x):
        i = Matrix.identity(x.field, x.dim)
        return i, i


class TensorFunctor(Functor):
    """``(−) ⊗_A X`` for an (A, B)-bimodule ``X``."""

    kind = "tensor_with_bimodule"

    def __init__(self, bimodule: Bimodule, name: str | None = None):
        super().__init__(bimodule.left_algebra, bimodule.algebra, name or f"(-)(x){bimodule.name}")
        self.bimodule = bimodule

    def _build(self, x):
        bt = balanced_tensor(x, self.bimodule)
        return bt.carrier, bt

    def tensor(self, x):
        return self.data(x)

    def mor(self, f, x, y):
        src, tgt = self.tensor(x), self.tensor(y)
        return tgt.project(src.lift(kron_identity(f, self.bimodule.dim)))

    @property
    def factors(self):
        return (self.bimodule,)

    def frame(self, x):
        bt = self.tensor(x)
        return bt.projection, bt.section


class HomFunctor(Functor):
    """``Hom_T(Σ, −)`` for a (B, T)-bimodule Σ."""

    kind = "hom_from_module"

    def __init__(self, sigma: Bimodule, witness: DualBasisWitness | None = None,
                 name: str | None = None):
        super().__init__(sigma.algebra, sigma.left_algebra, name or f"Hom({sigma.name},-)")
        self.sigma = sigma
        self.witness = witness

    def _build(self, y):
        h = hom_module(self.sigma, y, witness=self.witness)
        return h.module, h

    def hom(self, y):
        return self.data(y)

    def mor(self, f, x, y):
        hx, hy = self.hom(x), self.hom(y)
        if hx.dim == 0 or hy.dim == 0:
            return Matrix.zeros(f.field, hy.dim, hx.dim)
        return hy.coordinates_of([f @ b for b in hx.basis])


class CompositeFunctor(Functor):
    """``outer ∘ inner``."""

    kind = "composite"

    def __init__(self, outer: Functor, inner: Functor):
        if inner.target is not outer.source:
            raise ActionMismatch(f"cannot compose {outer.name} after {inner.name}")
        super().__init__(inner.source, outer.target, f"{outer.name}.{inner.name}")
        self.outer = outer
        self.inner = inner
        self._frames = _ObjectCache()

    def __call__(self, x):
        return self.outer(self.inner(x))

    def mor(self, f, x, y):
        return self.outer.mor(self.inner.mor(f, x, y), self.inner(x), self.inner(y))

    @property
    def factors(self):
        a, b = self.inner.factors, self.outer.factors
        if a is None or b is None:
            return None
        return tuple(a) + tuple(b)

    def frame(self, x):
        return self._frames.get(x, lambda: self._frame(x))

    def _frame(self, x):
        p1, s1 = self.inner.frame(x)
        y = self.inner(x)
        p2, s2 = self.outer.frame(y)
        n = self.outer.factor_dim
        if self.outer.factors == ():
            return p1, s1
        if self.inner.factors == ():
            return p2, s2
        return p2 @ kron_identity(p1, n), kron_identity(s1, n) @ s2

    def primitives(self):
        return self.outer.primitives() + self.inner.primitives()

_REGISTRY: dict = {}


def compose(*functors: Functor) -> Functor:
    """``compose(F, G, H)`` is ``F∘G∘H`` (H applied first).

    Equal composites are returned as the same object, so transforms between
    them compose by identity and share caches.
    """
    prims = []
    for f in functors:
        prims.extend(p for p in f.primitives() if not isinstance(p, IdentityFunctor))
    if not prims:
        return functors[-1]
    return _composite(tuple(prims))


def _composite(prims):
    if len(prims) == 1:
        return prims[0]
    key = tuple(id(p) for p in prims)
    with _REGISTRY_LOCK:
        hit = _REGISTRY.get(key)
        if hit is None:
            hit = (prims, CompositeFunctor(prims[0], _composite(prims[1:])))
            _REGISTRY[key] = hit
        return hit[1]


class EqualizerFunctor(Functor):
    """Objectwise equalizer of two transforms F ⇒ G."""

    kind = "objectwise_equalizer"

    def __init__(self, gamma: "NatTransform", theta: "NatTransform", name: str = "E"):
        if gamma.source is not theta.source or gamma.target is not theta.target:
            raise ActionMismatch("equalizer needs two parallel transforms")
        base = gamma.source
        super().__init__(base.source, base.target, name)
        self.gamma = gamma
        self.theta = theta
        self.base = base

    def _build(self, x):
        fx = self.base(x)
        diff = self.gamma.at(x) - self.theta.at(x)
        kb = kernel_basis(diff)
        module = submodule(fx, kb, name=f"{self.name}({x.name})")
        return module, kb

    def inclusion_at(self, x) -> Matrix:
        return self.data(x).basis

    def mor(self, f, x, y):
        image = self.base.mor(f, x, y) @ self.inclusion_at(x)
        try:
            return self.data(y).coordinates(image)
        except NoSolution:
            raise FactorizationFailure(
                f"{self.name}: image of a morphism leaves the equalizer "
                "(the parallel transforms are not natural on this map)",
                step=f"{self.name}.mor") from None


def submodule(m: RightModule, kb, name: str | None = None) -> RightModule:
    """The submodule spanned by a SubspaceBasis, with action read off by coordinates."""
    incl = kb.basis
    actions = []
    for a in m.action:
        try:
            actions.append(kb.coordinates(a @ incl))
        except NoSolution:
            raise FactorizationFailure(f"subspace of {m.name} is not closed under the action",
                                       step="submodule") from None
    return RightModule(m.algebra, kb.dim, actions, name=name or f"sub({m.name})")


# ---------------------------------------------------------------- transforms


class NatTransform:
    """Natural transformation given by a per-object rule."""

    def __init__(self, source: Functor, target: Functor, rule, flavor: str = "constructed",
                 name: str = "nt"):
        self.source = source
        self.target = target
        self.rule = rule
        self.flavor = flavor
        self.name = name
        self._cache = _ObjectCache()

    def __repr__(self):
        return f"<{self.flavor} transform {self.name}: {self.source.name} => {self.target.name}>"

    def at(self, x: RightModule) -> Matrix:
        return self._cache.get(x, lambda: self._evaluate(x))

    def _evaluate(self, x):
        m = self.rule(x)
        want = (self.target(x).dim, self.source(x).dim)
        if m.shape != want:
            raise ValidationError(f"{self.name} at {x.name}: shape {m.shape}, expected {want}")
        return m

    def component(self, x) -> ModuleMap:
        return ModuleMap(self.source(x), self.target(x), self.at(x))

    def after(self, first: "NatTransform", name: str | None = None) -> "NatTransform":
        """Vertical composite ``self ∘ first``."""
        if first.target is not self.source:
            raise ActionMismatch(f"cannot compose {self.name} after {first.name}")
        return NatTransform(first.source, self.target,
                            lambda x: self.at(x) @ first.at(x),
                            name=name or f"{self.name}.{first.name}")

    def whisker_right(self, f: Functor, name: str | None = None) -> "NatTransform":
        """``self F``: component at ``X`` is ``self`` at ``F(X)``."""
        return NatTransform(compose(self.source, f), compose(self.target, f),
                            lambda x: self.at(f(x)), name=name or f"{self.name}{f.name}")

    def whisker_left(self, f: Functor, name: str | None = None) -> "NatTransform":
        """``F self``: component at ``X`` is ``F`` applied to ``self_X``."""
        return NatTransform(compose(f, self.source), compose(f, self.target),
                            lambda x: f.mor(self.at(x), self.source(x), self.target(x)),
                            name=name or f"{f.name}{self.name}")

    def retarget(self, source: Functor, target: Functor) -> "NatTransform":
        """Same components, relabelled functors (used for equal composites)."""
        return NatTransform(source, target, self.at, self.flavor, self.name)


def identity_transform(f: Functor) -> NatTransform:
    if f.factors is not None:
        return BimoduleTransform(f, f, Matrix.identity(f.source.field, f.factor_dim),
                                 name=f"id_{f.name}")
    return NatTransform(f, f, lambda x: Matrix.identity(x.field, f(x).dim),
                        flavor="constructed", name=f"id_{f.name}")


class BimoduleTransform(NatTransform):
    """Transform between tensor chains induced by one field-level map.

    ``kernel`` maps the field tensor of the source factors to that of the
    target factors and must respect the balancing relations.
    """

    def __init__(self, source: Functor, target: Functor, kernel: Matrix, name: str = "nt"):
        if source.factors is None or target.factors is None:
            raise TypeError("bimodule transforms need tensor-chain functors")
        if kernel.shape != (target.factor_dim, source.factor_dim):
            raise ValidationError(
                f"{name}: kernel shape {kernel.shape} does not fit "
                f"{(target.factor_dim, source.factor_dim)}")
        self.kernel = kernel
        super().__init__(source, target, self._component, flavor="bimodule_induced", name=name)

    def _component(self, x):
        _, sec = self.source.frame(x)
        proj, _ = self.target.frame(x)
        return proj @ identity_kron(x.dim, self.kernel) @ sec

    def after(self, first, name=None):
        if isinstance(first, BimoduleTransform):
            return BimoduleTransform(first.source, self.target, self.kernel @ first.kernel,
                                     name=name or f"{self.name}.{first.name}")
        return super().after(first, name)

    def whisker_right(self, f, name=None):
        if f.factors is not None:
            return BimoduleTransform(compose(self.source, f), compose(self.target, f),
                                     identity_kron(f.factor_dim, self.kernel),
                                     name=name or f"{self.name}{f.name}")
        return super().whisker_right(f, name)

    def whisker_left(self, f, name=None):
        if f.factors is not None:
            return BimoduleTransform(compose(f, self.source), compose(f, self.target),
                                     kron_identity(self.kernel, f.factor_dim),
                                     name=name or f"{f.name}{self.name}")
        return super().whisker_left(f, name)

    def retarget(self, source, target):
        return BimoduleTransform(source, target, self.kernel, self.name)


def objectwise_equalizer(gamma: NatTransform, theta: NatTransform, name: str = "E"):
    """Return ``(E, i)`` with ``E(X) = ker(gamma_X − theta_X)`` and ``i`` the inclusion."""
    e = EqualizerFunctor(gamma, theta, name=name)
    incl = NatTransform(e, gamma.source, e.inclusion_at, flavor="solved", name=f"i_{name}")
    return e, incl


def factor_through_equalizer(e: EqualizerFunctor, chi: NatTransform,
                             name: str = "factor") -> NatTransform:
    """The unique transform ``xi`` with ``i∘xi = chi``; raises FactorizationFailure."""

    def rule(x):
        try:
            return e.data(x).coordinates(chi.at(x))
        except NoSolution:
            raise FactorizationFailure(f"{chi.name} does not equalize at {x.name}",
                                       step=name) from None

    return NatTransform(chi.source, e, rule, flavor="solved", name=name)


def solve_through(mono: Matrix, target: Matrix, step: str) -> Matrix:
    """Unique ``X`` with ``mono @ X == target`` for an injective ``mono``."""
    from .linalg import solve_factor
    if rank(mono) != mono.ncols:
        raise FactorizationFailure(f"{step}: map to factor through is not injective", step=step)
    try:
        return solve_factor(mono, target)
    except NoSolution:
        raise FactorizationFailure(f"{step}: target does not factor", step=step) from None


def action_field_map(x: RightModule) -> Matrix:
    """``X ⊗ A → X``, ``x ⊗ a ↦ x·a`` on field tensors."""
    f = x.field
    n = x.algebra.dim
    cols = {}
    for i in range(x.dim):
        for j in range(n):
            col = x.action[j].select_columns([i])
            cols[i * n + j] = col
    if not cols:
        return Matrix.zeros(f, x.dim, 0)
    return Matrix.hstack(*[cols[k] for k in range(x.dim * n)])


def left_action_field_map(m: Bimodule) -> Matrix:
    """``B ⊗ M → M``, ``b ⊗ m ↦ b·m`` on field tensors."""
    f = m.field
    blocks = [m.left_action[b] for b in range(m.left_algebra.dim)]
    if m.dim == 0:
        return Matrix.zeros(f, 0, 0)
    return Matrix.hstack(*blocks)


# ---------------------------------------------------------------- probes


@dataclass
class ProbeSet:
    """Finite sample of objects and maps standing in for "every object"."""

    algebra: FDAlgebra
    modules: list
    maps: list = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.modules:
            raise ValidationError("a probe set needs at least one module")

    def parallel_pairs(self):
        out = []
        for i, f in enumerate(self.maps):
            for g in self.maps[i + 1:]:
                if f.source is g.source and f.target is g.target:
                    out.append((f, g))
        return out

    def names(self):
        return [m.name for m in self.modules]


def default_probes(algebra: FDAlgebra, extras=(), light: bool = False) -> ProbeSet:
    """Zero, regular and regular⊕regular with their structure maps and left multiplications.

    ``light`` keeps only the regular module and its left multiplications.
    """
    reg = regular_module(algebra)
    reg.name = f"{algebra.name}"
    mults = []
    for i in range(algebra.dim):
        m = left_multiplication(reg, algebra.basis_vector(i))
        m.label = f"left mult by e{i}"
        mults.append(m)
    z = zero_map(reg, reg)
    z.label = "zero"
    maps = list(mults) + [z]
    if light:
        return ProbeSet(algebra, [reg], maps)
    zero = zero_module(algebra)
    s, (i1, i2), (p1, p2) = direct_sum(reg, reg, name=f"{algebra.name}^2")
    mods = [zero, reg, s]
    maps += [i1, i2, p1, p2, zero_map(zero, reg), zero_map(reg, zero)]
    for x in extras:
        if isinstance(x, ModuleMap):
            maps.append(x)
            for end in (x.source, x.target):
                if all(end is not m for m in mods):
                    mods.append(end)
        else:
            mods.append(x)
    return ProbeSet(algebra, mods, maps)


# ---------------------------------------------------------------- adjunctions


@dataclass(eq=False)
class Adjunction:
    left: Functor
    right: Functor
    unit: NatTransform
    counit: NatTransform
    name: str = "adj"


def identity_adjunction(algebra: FDAlgebra) -> Adjunction:
    i = identity_functor(algebra)
    one = identity_transform(i)
    return Adjunction(i, i, one, one, name="(Id,Id)")


def restriction_extension_adjunction(alpha: AlgebraMorphism, name: str = "A") -> Adjunction:
    """``(−) ⊗_A T ⊣ restriction`` for an algebra map ``alpha: A → T``."""
    t = alpha.target
    n = TensorFunctor(along(alpha), name=f"N_{name}")
    r = RestrictionFunctor(alpha, name=f"R_{name}")
    rn = compose(r, n)
    unit = BimoduleTransform(identity_functor(alpha.source), rn,
                             Matrix.column_vector(t.field, t.unit), name=f"eta^{name}")
    nr = compose(n, r)

    def counit_rule(y):
        bt = n.tensor(r(y))
        f = y.field
        field_map = Matrix.hstack(*[Matrix.hstack(*[y.action[j].select_columns([i])
                                                    for j in range(t.dim)])
                                    for i in range(y.dim)]) if y.dim else Matrix.zeros(f, 0, 0)
        return bt.lift(field_map)

    counit = NatTransform(nr, identity_functor(t), counit_rule, name=f"eps^{name}")
    return Adjunction(n, r, unit, counit, name=f"(N_{name},R_{name})")


def tensor_hom_adjunction(sigma: Bimodule, witness: DualBasisWitness | None = None,
                          name: str = "B") -> Adjunction:
    """``(−) ⊗_B Σ ⊣ Hom_T(Σ, −)``."""
    n = TensorFunctor(sigma, name=f"N_{name}")
    r = HomFunctor(sigma, witness=witness, name=f"R_{name}")
    rn = compose(r, n)
    nr = compose(n, r)
    f = sigma.field

    def unit_rule(m):
        bt = n.tensor(m)
        h = r.hom(n(m))
        if h.dim == 0 or m.dim == 0:
            return Matrix.zeros(f, h.dim, m.dim)
        maps = []
        for i in range(m.dim):
            e = Matrix(f, m.dim, 1, [{0: f.one} if k == i else {} for k in range(m.dim)])
            maps.append(bt.project(e.kron(Matrix.identity(f, sigma.dim))))
        return h.coordinates_of(maps)

    def counit_rule(y):
        h = r.hom(y)
        bt = n.tensor(h.module)
        if h.dim == 0 or sigma.dim == 0:
            return Matrix.zeros(f, y.dim, bt.carrier.dim)
        field_map = Matrix.hstack(*[b for b in h.basis])
        return bt.lift(field_map)

    unit = NatTransform(identity_functor(sigma.left_algebra), rn, unit_rule, name=f"eta^{name}")
    counit = NatTransform(nr, identity_functor(sigma.algebra), counit_rule, name=f"eps^{name}")
    return Adjunction(n, r, unit, counit, name=f"(N_{name},R_{name})")


# ---------------------------------------------------------------- checks


def _unit_vectors(f, n):
    return [Matrix(f, n, 1, [{0: f.one} if k == i else {} for k in range(n)]) for i in range(n)]


def triangle_check(adj: Adjunction, source_probes: ProbeSet,
                   target_probes: ProbeSet) -> ValidationReport:
    rep = ValidationReport(f"triangle identities {adj.name}")
    n, r, eta, eps = adj.left, adj.right, adj.unit, adj.counit
    for x in source_probes.modules:
        lhs = eps.at(n(x)) @ n.mor(eta.at(x), x, r(n(x)))
        rep.add(f"(eps N)(N eta) = id at {x.name}", lhs.is_identity(), witness=lhs)
    for y in target_probes.modules:
        lhs = r.mor(eps.at(y), n(r(y)), y) @ eta.at(r(y))
        rep.add(f"(R eps)(eta R) = id at {y.name}", lhs.is_identity(), witness=lhs)
    return rep


def split_equalizer_oracle(adj: Adjunction, source_probes: ProbeSet,
                           target_probes: ProbeSet) -> ValidationReport:
    """Both split equalizers built from an adjunction, checked objectwise."""
    rep = ValidationReport(f"split equalizers {adj.name}")
    n, r, eta, eps = adj.left, adj.right, adj.unit, adj.counit
    for y in target_probes.modules:
        ry = r(y)
        rnry = r(n(ry))
        e = eta.at(ry)
        f = r.mor(n.mor(e, ry, rnry), n(ry), n(rnry))
        g = eta.at(rnry)
        s = r.mor(eps.at(y), n(ry), y)
        t = r.mor(n.mor(s, rnry, ry), n(rnry), n(ry))
        _split_rows(rep, f"(1) at {y.name}", e, f, g, s, t)
    for x in source_probes.modules:
        nx = n(x)
        rnx = r(nx)
        e = n.mor(eta.at(x), x, rnx)
        f = n.mor(eta.at(rnx), rnx, r(n(rnx)))
        g = n.mor(r.mor(n.mor(eta.at(x), x, rnx), nx, n(rnx)), rnx, r(n(rnx)))
        s = eps.at(nx)
        t = eps.at(n(rnx))
        _split_rows(rep, f"(2) at {x.name}", e, f, g, s, t)
    return rep


def _split_rows(rep, label, e, f, g, s, t):
    rep.add(f"{label}: fork", f @ e == g @ e)
    rep.add(f"{label}: s.e = id", (s @ e).is_identity())
    rep.add(f"{label}: t.f = id", (t @ f).is_identity())
    rep.add(f"{label}: t.g = e.s", t @ g == e @ s)


def regular_unit_check(adj: Adjunction, probes: ProbeSet) -> ValidationReport:
    """η injective with image equal to the equalizer of (RNη, ηRN), per probe."""
    rep = ValidationReport(f"regular unit {adj.name}")
    n, r, eta = adj.left, adj.right, adj.unit
    for x in probes.modules:
        e = eta.at(x)
        rn = r(n(x))
        inj = rank(e) == x.dim
        rep.add(f"unit injective at {x.name}", inj, detail=f"rank {rank(e)} of {x.dim}",
                witness=None if inj else kernel_basis(e).basis)
        rne = r.mor(n.mor(e, x, rn), n(x), n(rn))
        diff = rne - eta.at(rn)
        ker = kernel_basis(diff)
        img = image_basis(e)
        rep.add(f"unit is the equalizer at {x.name}", ker == img,
                detail=f"image dim {img.dim}, equalizer dim {ker.dim}")
    return rep


def preserves_equalizers_check(f: Functor, probes: ProbeSet) -> ValidationReport:
    """Sampled test: F(ker(a − b)) → ker(F a − F b) is an isomorphism."""
    pairs = probes.parallel_pairs()
    rep = ValidationReport(f"{f.name} preserves equalizers (sampled)")
    for a, b in pairs:
        x, y = a.source, a.target
        kb = kernel_basis(a.matrix - b.matrix)
        e = submodule(x, kb, name=f"ker({x.name})")
        fe = f.mor(kb.basis, e, x)
        fa = f.mor(a.matrix, x, y)
        fb = f.mor(b.matrix, x, y)
        target = kernel_basis(fa - fb)
        img = image_basis(fe)
        ok = rank(fe) == fe.ncols and img == target
        label = f"pair ({_map_label(a)}, {_map_label(b)}) on {x.name}"
        rep.add(label, ok, detail=f"F(equalizer) dim {fe.ncols}, image dim {img.dim}, "
                                  f"equalizer of images dim {target.dim}",
                witness=None if ok else {"pair": [_map_label(a), _map_label(b)],
                                         "comparison": fe})
    rep.note(f"no violation found on {len(pairs)} samples" if rep.ok
             else f"violation found among {len(pairs)} samples")
    return rep


def _map_label(m: ModuleMap) -> str:
    return getattr(m, "label", None) or f"{m.source.name}->{m.target.name}#{m.matrix.nnz()}"


def naturality_check(nt: NatTransform, probes: ProbeSet) -> ValidationReport:
    rep = ValidationReport(f"naturality of {nt.name}")
    for m in probes.maps:
        x, y = m.source, m.target
        lhs = nt.target.mor(m.matrix, x, y) @ nt.at(x)
        rhs = nt.at(y) @ nt.source.mor(m.matrix, x, y)
        ok = lhs == rhs
        rep.add(f"square for {_map_label(m)}", ok, witness=None if ok else lhs - rhs)
    return rep
