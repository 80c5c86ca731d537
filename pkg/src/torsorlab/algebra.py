"""Finite-dimensional algebras, their morphisms, modules and bimodules.

Right actions are stored as matrices acting on column vectors:
``action[i] @ v`` is ``v · e_i``.  Hence ``action(ab) = action(b) @ action(a)``.
Left actions follow the usual order, ``left(ab) = left(a) @ left(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .errors import ActionMismatch, NotUnital, ShapeError, ValidationError
from .linalg import Field, Matrix, QQ
from .report import ValidationReport

__all__ = [
    "FDAlgebra", "AlgebraMorphism", "RightModule", "Bimodule", "ModuleMap",
    "validate_algebra", "validate_module", "validate_algebra_morphism",
    "validate_module_map", "restriction_of_scalars", "regular_module",
    "regular_bimodule", "ground_algebra", "zero_module", "direct_sum",
    "left_multiplication", "identity_map", "zero_map", "restrict_left",
    "require_valid", "HopfStructure", "validate_hopf",
]


class FDAlgebra:
    """Unital associative algebra given by structure constants.

    ``mult[i][j]`` is the coefficient vector of ``e_i e_j``.
    """

    def __init__(self, field: Field, dim: int, mult, unit, name: str = "A"):
        if dim <= 0:
            raise NotUnital("an algebra needs dimension at least 1")
        if len(mult) != dim or any(len(r) != dim for r in mult):
            raise ShapeError("multiplication table must be dim x dim")
        self.field = field
        self.dim = dim
        self.name = name
        self.mult = tuple(tuple(tuple(field(c) for c in vec) for vec in row) for row in mult)
        for row in self.mult:
            for vec in row:
                if len(vec) != dim:
                    raise ShapeError("product vectors must have length dim")
        if len(unit) != dim:
            raise ShapeError("unit vector must have length dim")
        self.unit = tuple(field(c) for c in unit)
        # left_mult[i] @ v = e_i v ; right_mult[j] @ v = v e_j
        self.left_mult = tuple(
            Matrix.from_columns(field, [self.mult[i][j] for j in range(dim)], dim) for i in range(dim))
        self.right_mult = tuple(
            Matrix.from_columns(field, [self.mult[i][j] for i in range(dim)], dim) for j in range(dim))

    def __repr__(self):
        return f"FDAlgebra({self.name}, dim={self.dim}, {self.field.name})"

    @property
    def is_ground(self) -> bool:
        return self.dim == 1

    def vector(self, coeffs) -> Matrix:
        return Matrix.column_vector(self.field, coeffs)

    def basis_vector(self, i: int) -> Matrix:
        return Matrix(self.field, self.dim, 1, [{0: self.field.one} if k == i else {} for k in range(self.dim)])

    def unit_vector(self) -> Matrix:
        return Matrix.column_vector(self.field, self.unit)

    def multiply(self, x: Matrix, y: Matrix) -> Matrix:
        """Product of two column vectors."""
        out = Matrix.zeros(self.field, self.dim, 1)
        for i, a in x.transpose().row_items(0).items():
            out = out + (self.left_mult[i] @ y).scale(a)
        return out

    def left_operator(self, x: Matrix) -> Matrix:
        """Matrix of ``v ↦ x v``."""
        return _combine(self.field, self.dim, self.left_mult, x)

    def right_operator(self, x: Matrix) -> Matrix:
        """Matrix of ``v ↦ v x``."""
        return _combine(self.field, self.dim, self.right_mult, x)

    def opposite(self) -> "FDAlgebra":
        d = self.dim
        mult = [[self.mult[j][i] for j in range(d)] for i in range(d)]
        return FDAlgebra(self.field, d, mult, self.unit, name=self.name + "^op")


def _combine(field: Field, n: int, mats, x: Matrix) -> Matrix:
    out = Matrix.zeros(field, n, n)
    for i in range(x.nrows):
        a = x[i, 0]
        if a:
            out = out + mats[i].scale(a)
    return out


@lru_cache(maxsize=None)
def ground_algebra(field: Field = QQ) -> FDAlgebra:
    """The base field viewed as a one-dimensional algebra."""
    return FDAlgebra(field, 1, [[[1]]], [1], name="k")


@dataclass(eq=False)
class AlgebraMorphism:
    source: FDAlgebra
    target: FDAlgebra
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ShapeError(f"morphism matrix must be {self.target.dim}x{self.source.dim}")

    def image(self, x: Matrix) -> Matrix:
        return self.matrix @ x

    def compose(self, first: "AlgebraMorphism") -> "AlgebraMorphism":
        """``self ∘ first``."""
        if first.target is not self.source:
            raise ActionMismatch("morphisms are not composable")
        return AlgebraMorphism(first.source, self.target, self.matrix @ first.matrix)

    @classmethod
    def identity(cls, a: FDAlgebra) -> "AlgebraMorphism":
        return cls(a, a, Matrix.identity(a.field, a.dim))

    @classmethod
    def unit_map(cls, a: FDAlgebra) -> "AlgebraMorphism":
        """The structure map ``k → A``."""
        return cls(ground_algebra(a.field), a, a.unit_vector())


class RightModule:
    """Right module over ``algebra``; ``action[i]`` is right multiplication by e_i."""

    def __init__(self, algebra: FDAlgebra, dim: int, action, name: str = "M"):
        self.algebra = algebra
        self.dim = dim
        self.name = name
        action = tuple(action)
        if len(action) != algebra.dim:
            raise ShapeError(f"need {algebra.dim} action matrices, got {len(action)}")
        for m in action:
            if m.shape != (dim, dim):
                raise ShapeError(f"action matrix {m.shape} on a module of dim {dim}")
        self.action = action

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def right_over(self) -> FDAlgebra:
        return self.algebra

    @property
    def left_over(self):
        return None

    def act(self, x: Matrix) -> Matrix:
        """Matrix of ``v ↦ v · x`` for an algebra element ``x``."""
        return _combine(self.field, self.dim, self.action, x)

    def __repr__(self):
        return f"{type(self).__name__}({self.name}, dim={self.dim} over {self.algebra.name})"


class Bimodule(RightModule):
    """A (left_over, right_over)-bimodule."""

    def __init__(self, left_over: FDAlgebra, right_over: FDAlgebra, dim: int,
                 left_action, right_action, name: str = "X"):
        super().__init__(right_over, dim, right_action, name=name)
        left_action = tuple(left_action)
        if len(left_action) != left_over.dim:
            raise ShapeError(f"need {left_over.dim} left action matrices")
        for m in left_action:
            if m.shape != (dim, dim):
                raise ShapeError(f"left action matrix {m.shape} on dim {dim}")
        self.left_algebra = left_over
        self.left_action = left_action

    @property
    def left_over(self) -> FDAlgebra:
        return self.left_algebra

    def left_act(self, x: Matrix) -> Matrix:
        return _combine(self.field, self.dim, self.left_action, x)

    def as_right_module(self) -> RightModule:
        return RightModule(self.algebra, self.dim, self.action, name=self.name)


@dataclass(eq=False)
class ModuleMap:
    source: RightModule
    target: RightModule
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ShapeError(
                f"map {self.source.name}->{self.target.name} needs shape "
                f"{(self.target.dim, self.source.dim)}, got {self.matrix.shape}")

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """``self ∘ first``."""
        return ModuleMap(first.source, self.target, self.matrix @ first.matrix)

    def __matmul__(self, first: "ModuleMap") -> "ModuleMap":
        return self.compose(first)

    def __repr__(self):
        return f"ModuleMap({self.source.name} -> {self.target.name}, {self.matrix.shape})"


def identity_map(m: RightModule) -> ModuleMap:
    return ModuleMap(m, m, Matrix.identity(m.field, m.dim))


def zero_map(src: RightModule, tgt: RightModule) -> ModuleMap:
    return ModuleMap(src, tgt, Matrix.zeros(src.field, tgt.dim, src.dim))


# ---------------------------------------------------------------- validation


def validate_algebra(a: FDAlgebra) -> ValidationReport:
    rep = ValidationReport(f"algebra {a.name}")
    d = a.dim
    basis = [a.basis_vector(i) for i in range(d)]
    bad = []
    for i in range(d):
        for j in range(d):
            eij = a.vector(a.mult[i][j])
            for k in range(d):
                lhs = a.right_operator(basis[k]) @ eij
                rhs = a.left_operator(basis[i]) @ a.vector(a.mult[j][k])
                if lhs != rhs:
                    bad.append((i, j, k))
    rep.add("associativity", not bad, witness=bad[:8] or None,
            detail=f"{len(bad)} failing basis triples" if bad else f"{d ** 3} triples")
    u = a.unit_vector()
    bad_unit = []
    for i in range(d):
        if a.multiply(u, basis[i]) != basis[i]:
            bad_unit.append(("u*e", i))
        if a.multiply(basis[i], u) != basis[i]:
            bad_unit.append(("e*u", i))
    rep.add("unit laws", not bad_unit, witness=bad_unit or None)
    return rep


def _check_action(rep, label, mats, alg: FDAlgebra, dim: int, right: bool):
    f = alg.field
    bad = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            prod = _combine(f, dim, mats, alg.vector(alg.mult[i][j]))
            composed = mats[j] @ mats[i] if right else mats[i] @ mats[j]
            if prod != composed:
                bad.append((i, j))
    rep.add(f"{label} associativity", not bad, witness=bad[:8] or None)
    unit = _combine(f, dim, mats, alg.unit_vector())
    rep.add(f"{label} unit", unit == Matrix.identity(f, dim))


def validate_module(m: RightModule) -> ValidationReport:
    rep = ValidationReport(f"module {m.name}")
    _check_action(rep, "right action", m.action, m.algebra, m.dim, right=True)
    if isinstance(m, Bimodule):
        _check_action(rep, "left action", m.left_action, m.left_algebra, m.dim, right=False)
        bad = [(a, b) for a, la in enumerate(m.left_action) for b, rb in enumerate(m.action)
               if la @ rb != rb @ la]
        rep.add("actions commute", not bad, witness=bad[:8] or None)
    return rep


def validate_algebra_morphism(f: AlgebraMorphism) -> ValidationReport:
    rep = ValidationReport("algebra morphism")
    s, t = f.source, f.target
    bad = []
    for i in range(s.dim):
        for j in range(s.dim):
            lhs = f.matrix @ s.vector(s.mult[i][j])
            rhs = t.multiply(f.matrix @ s.basis_vector(i), f.matrix @ s.basis_vector(j))
            if lhs != rhs:
                bad.append((i, j))
    rep.add("multiplicative", not bad, witness=bad[:8] or None)
    rep.add("unital", f.matrix @ s.unit_vector() == t.unit_vector())
    return rep


def validate_module_map(f: ModuleMap) -> ValidationReport:
    rep = ValidationReport(f"module map {f.source.name}->{f.target.name}")
    if f.source.algebra is not f.target.algebra:
        raise ActionMismatch("module map between modules over different algebras")
    bad = [i for i, (a, b) in enumerate(zip(f.source.action, f.target.action))
           if f.matrix @ a != b @ f.matrix]
    rep.add("right linear", not bad, witness=bad or None)
    if isinstance(f.source, Bimodule) and isinstance(f.target, Bimodule):
        bad = [i for i, (a, b) in enumerate(zip(f.source.left_action, f.target.left_action))
               if f.matrix @ a != b @ f.matrix]
        rep.add("left linear", not bad, witness=bad or None)
    return rep


def require_valid(rep: ValidationReport) -> None:
    if not rep.ok:
        raise ValidationError(str(rep), report=rep)


# ---------------------------------------------------------------- constructions


def restriction_of_scalars(f: AlgebraMorphism, m: RightModule) -> RightModule:
    """View a right module over ``f.target`` as one over ``f.source``."""
    if m.algebra is not f.target:
        raise ActionMismatch("module is not over the morphism's target")
    action = [m.act(f.matrix @ f.source.basis_vector(i)) for i in range(f.source.dim)]
    if isinstance(m, Bimodule):
        return Bimodule(m.left_algebra, f.source, m.dim, m.left_action, action, name=m.name)
    return RightModule(f.source, m.dim, action, name=m.name)


def restrict_left(f: AlgebraMorphism, m: Bimodule) -> Bimodule:
    """Restrict the left action of a bimodule along ``f``."""
    if m.left_algebra is not f.target:
        raise ActionMismatch("left action is not over the morphism's target")
    left = [m.left_act(f.matrix @ f.source.basis_vector(i)) for i in range(f.source.dim)]
    return Bimodule(f.source, m.algebra, m.dim, left, m.action, name=m.name)


def regular_module(a: FDAlgebra) -> RightModule:
    return RightModule(a, a.dim, a.right_mult, name=f"{a.name}_{a.name}")


def regular_bimodule(a: FDAlgebra) -> Bimodule:
    return Bimodule(a, a, a.dim, a.left_mult, a.right_mult, name=a.name)


def zero_module(a: FDAlgebra) -> RightModule:
    z = Matrix.zeros(a.field, 0, 0)
    return RightModule(a, 0, [z] * a.dim, name="0")


def direct_sum(m: RightModule, n: RightModule, name: str | None = None):
    """``m ⊕ n`` with its two injections and two projections."""
    if m.algebra is not n.algebra:
        raise ActionMismatch("summands over different algebras")
    f = m.field
    action = [Matrix.block_diagonal(a, b) for a, b in zip(m.action, n.action)]
    s = RightModule(m.algebra, m.dim + n.dim, action, name=name or f"{m.name}+{n.name}")
    ident = Matrix.identity(f, s.dim)
    inj1 = ModuleMap(m, s, ident.select_columns(range(m.dim)))
    inj2 = ModuleMap(n, s, ident.select_columns(range(m.dim, s.dim)))
    pr1 = ModuleMap(s, m, ident.select_rows(range(m.dim)))
    pr2 = ModuleMap(s, n, ident.select_rows(range(m.dim, s.dim)))
    return s, (inj1, inj2), (pr1, pr2)


def left_multiplication(reg: RightModule, x: Matrix) -> ModuleMap:
    """The right-module endomorphism ``y ↦ x y`` of the regular module."""
    return ModuleMap(reg, reg, reg.algebra.left_operator(x))


@dataclass
class HopfStructure:
    """Coalgebra and antipode data on an algebra (for building examples)."""

    algebra: FDAlgebra
    coproduct: Matrix   # dim^2 x dim, left-factor-major
    counit: Matrix      # 1 x dim
    antipode: Matrix    # dim x dim
    notes: list = dc_field(default_factory=list)


def _square_left_operator(a: FDAlgebra, u: Matrix) -> Matrix:
    """Left multiplication by ``u`` in A ⊗ A, where (x ⊗ y)(z ⊗ w) = xz ⊗ yw."""
    n = a.dim
    out = Matrix.zeros(a.field, n * n, n * n)
    for k in range(n * n):
        c = u[k, 0]
        if c:
            out = out + a.left_mult[k // n].kron(a.left_mult[k % n]).scale(c)
    return out


def validate_hopf(h: HopfStructure) -> ValidationReport:
    """Bialgebra axioms and the antipode identities on basis elements."""
    a = h.algebra
    f, n = a.field, a.dim
    rep = ValidationReport(f"Hopf structure on {a.name}")
    shapes = (h.coproduct.shape == (n * n, n) and h.counit.shape == (1, n)
              and h.antipode.shape == (n, n))
    rep.add("shapes", shapes)
    if not shapes:
        return rep
    ident = Matrix.identity(f, n)
    d, e, s = h.coproduct, h.counit, h.antipode
    rep.add("coassociative", ident.kron(d) @ d == d.kron(ident) @ d)
    rep.add("counital", e.kron(ident) @ d == ident and ident.kron(e) @ d == ident)
    basis = [a.basis_vector(i) for i in range(n)]
    bad = [(i, j) for i in range(n) for j in range(n)
           if d @ a.vector(a.mult[i][j]) != _square_left_operator(a, d @ basis[i]) @ d @ basis[j]]
    rep.add("coproduct multiplicative", not bad, witness=bad[:8] or None)
    u = a.unit_vector()
    rep.add("coproduct unital", d @ u == u.kron(u))
    bad = [(i, j) for i in range(n) for j in range(n)
           if e @ a.vector(a.mult[i][j]) != (e @ basis[i]) @ (e @ basis[j])]
    rep.add("counit multiplicative", not bad, witness=bad[:8] or None)
    rep.add("counit unital", (e @ u).is_identity())
    mult = Matrix.hstack(*a.left_mult)
    rep.add("antipode left identity", mult @ s.kron(ident) @ d == u @ e)
    rep.add("antipode right identity", mult @ ident.kron(s) @ d == u @ e)
    return rep
