"""Tensor products over the field and over algebras, hom-modules and duals."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (AlgebraMorphism, Bimodule, ModuleMap, RightModule,
                      ground_algebra, regular_bimodule, regular_module, restrict_left)
from .errors import ActionMismatch, NoSolution, NotFGP, ShapeError
from .linalg import (Matrix, SubspaceBasis, check_cap, cokernel, kernel_basis,
                     solve_factor, span_of_columns)

__all__ = [
    "tensor_over_field", "BalancedTensor", "balanced_tensor", "HomModule", "hom_module",
    "dual_module", "DualBasisWitness", "fgp_witness", "extension_of_scalars",
    "along", "vectorize", "associator", "evaluation_operator", "chain_tensor",
]


def tensor_over_field(x, y):
    """Tensor over the base field of two matrices or two modules.

    For modules the left structure of ``x`` and the right structure of
    ``y`` survive; basis index ``i*dim(y) + j``.
    """
    if isinstance(x, Matrix) and isinstance(y, Matrix):
        return x.kron(y)
    if x.field != y.field:
        from .errors import DomainMismatch
        raise DomainMismatch("tensor factors over different fields")
    f = x.field
    dim = x.dim * y.dim
    check_cap(dim)
    iy = Matrix.identity(f, y.dim)
    ix = Matrix.identity(f, x.dim)
    right = [ix.kron(r) for r in y.action]
    name = f"{x.name}(x){y.name}"
    if isinstance(x, Bimodule):
        left = [l.kron(iy) for l in x.left_action]
        return Bimodule(x.left_algebra, y.algebra, dim, left, right, name=name)
    return RightModule(y.algebra, dim, right, name=name)


@dataclass(eq=False)
class BalancedTensor:
    """``left ⊗_A right`` as a quotient of the field tensor."""

    left: RightModule
    right: Bimodule
    carrier: RightModule
    projection: Matrix
    section: Matrix
    trivial: bool = False

    @property
    def carrier_dim(self) -> int:
        return self.carrier.dim

    @property
    def field_dim(self) -> int:
        return self.left.dim * self.right.dim

    def project(self, m: Matrix) -> Matrix:
        return m if self.trivial else self.projection @ m

    def lift(self, m: Matrix) -> Matrix:
        """Pull a map out of the field tensor back to the carrier."""
        return m if self.trivial else m @ self.section

    def map_to(self, other: "BalancedTensor", f: Matrix, g: Matrix) -> Matrix:
        """Carrier matrix of ``f ⊗ g`` into another balanced tensor."""
        return other.project(self.lift(f.kron(g)))

    def relations_killed_by(self, m: Matrix) -> bool:
        """Whether a map out of the field tensor is well defined on the carrier."""
        if self.trivial:
            return True
        return (m @ balancing_relations(self.left, self.right)).is_zero()


def balancing_relations(m: RightModule, n: Bimodule) -> Matrix:
    f = m.field
    im = Matrix.identity(f, m.dim)
    in_ = Matrix.identity(f, n.dim)
    blocks = [m.action[a].kron(in_) - im.kron(n.left_action[a]) for a in range(m.algebra.dim)]
    return Matrix.hstack(*blocks)


def balanced_tensor(m: RightModule, n: Bimodule) -> BalancedTensor:
    """``m ⊗_A n`` for a right A-module ``m`` and a bimodule ``n`` with left A-action."""
    if not isinstance(n, Bimodule) or m.algebra is not n.left_algebra:
        raise ActionMismatch(f"cannot balance {m.name} against {n.name}: algebras differ")
    f = m.field
    dim = m.dim * n.dim
    check_cap(dim)
    alg = m.algebra
    trivial = alg.dim == 1
    if trivial:
        proj = sec = Matrix.identity(f, dim)
        cdim = dim
    else:
        proj, sec = cokernel(balancing_relations(m, n))
        cdim = proj.nrows
    im = Matrix.identity(f, m.dim)
    in_ = Matrix.identity(f, n.dim)

    def induced(mat):
        return mat if trivial else proj @ mat @ sec

    right = [induced(im.kron(r)) for r in n.action]
    name = f"{m.name}(x){n.name}"
    if isinstance(m, Bimodule):
        left = [induced(l.kron(in_)) for l in m.left_action]
        carrier = Bimodule(m.left_algebra, n.algebra, cdim, left, right, name=name)
    else:
        carrier = RightModule(n.algebra, cdim, right, name=name)
    return BalancedTensor(m, n, carrier, proj, sec, trivial)


def chain_tensor(first: RightModule, *rest: Bimodule):
    """``first ⊗ rest[0] ⊗ ...`` associated to the left.

    Returns ``(carrier, projection, section)`` relating the field tensor of
    all factors to the iterated balanced tensor.
    """
    f = first.field
    cur = first
    proj = sec = Matrix.identity(f, first.dim)
    for nxt in rest:
        bt = balanced_tensor(cur, nxt)
        proj = bt.project(proj.kron(Matrix.identity(f, nxt.dim)))
        sec = sec.kron(Matrix.identity(f, nxt.dim)) @ bt.section
        cur = bt.carrier
    return cur, proj, sec


def along(f: AlgebraMorphism) -> Bimodule:
    """The target algebra as an (source, target)-bimodule via ``f``."""
    return restrict_left(f, regular_bimodule(f.target))


def extension_of_scalars(f: AlgebraMorphism, m: RightModule) -> RightModule:
    return balanced_tensor(m, along(f)).carrier


def associator(m: RightModule, n: Bimodule, p: Bimodule) -> Matrix:
    """Canonical comparison ``(m ⊗ n) ⊗ p → m ⊗ (n ⊗ p)`` on carriers."""
    mn = balanced_tensor(m, n)
    left = balanced_tensor(mn.carrier, p)
    np_ = balanced_tensor(n, p)
    right = balanced_tensor(m, np_.carrier)
    f = m.field
    lift_left = mn.section.kron(Matrix.identity(f, p.dim)) @ left.section
    to_right = right.projection @ Matrix.identity(f, m.dim).kron(np_.projection)
    return to_right @ lift_left


# ---------------------------------------------------------------- hom modules


def vectorize(mat: Matrix) -> dict:
    """Row-major sparse vector of a matrix."""
    n = mat.ncols
    out = {}
    for r in range(mat.nrows):
        for c, v in mat.row_items(r).items():
            out[r * n + c] = v
    return out


class HomModule:
    """``Hom_T(source, target)`` with a canonical basis and outer actions.

    Maps are ``target.dim × source.dim`` matrices, vectorized row-major.
    """

    def __init__(self, source: RightModule, target: RightModule, space: SubspaceBasis):
        self.source = source
        self.target = target
        self.space = space
        self.field = source.field
        self._basis = None
        self.module = self._outer_module()

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> list:
        if self._basis is None:
            bt = self.space.basis.transpose()
            n = self.source.dim
            out = []
            for k in range(self.dim):
                rows = [dict() for _ in range(self.target.dim)]
                for idx, v in bt.row_items(k).items():
                    rows[idx // n][idx % n] = v
                out.append(Matrix(self.field, self.target.dim, n, rows))
            self._basis = out
        return self._basis

    def element(self, coords: Matrix) -> Matrix:
        """The map with the given coordinate column."""
        vec = self.space.basis @ coords
        rows = [dict() for _ in range(self.target.dim)]
        n = self.source.dim
        for idx in range(vec.nrows):
            v = vec.row_items(idx).get(0)
            if v:
                rows[idx // n][idx % n] = v
        return Matrix(self.field, self.target.dim, n, rows)

    def coordinates_of(self, maps) -> Matrix:
        """Coordinate columns of a list of maps (raises NoSolution off Hom)."""
        cols = [vectorize(m) for m in maps]
        ambient = self.space.ambient_dim
        target = Matrix(self.field, len(cols), ambient, cols).transpose()
        return self.space.coordinates(target)

    def _outer_module(self) -> RightModule:
        f = self.field
        src, tgt = self.source, self.target
        right_alg = src.left_over
        left_alg = tgt.left_over
        right = None
        left = None
        if right_alg is not None:
            right = [self.coordinates_of([h @ la for h in self.basis]) if self.dim
                     else Matrix.zeros(f, 0, 0) for la in src.left_action]
        if left_alg is not None:
            left = [self.coordinates_of([la @ h for h in self.basis]) if self.dim
                    else Matrix.zeros(f, 0, 0) for la in tgt.left_action]
        name = f"Hom({src.name},{tgt.name})"
        if right is None:
            right_alg = ground_algebra(f)
            right = [Matrix.identity(f, self.dim)]
        if left is None:
            return RightModule(right_alg, self.dim, right, name=name)
        return Bimodule(left_alg, right_alg, self.dim, left, right, name=name)


def hom_module(m: RightModule, n: RightModule, witness: "DualBasisWitness | None" = None) -> HomModule:
    """Hom_T(m, n) for right T-modules."""
    if m.algebra is not n.algebra:
        raise ActionMismatch("hom between modules over different algebras")
    f = m.field
    ambient = m.dim * n.dim
    check_cap(ambient)
    if witness is not None and witness.module is m:
        cols = []
        dm = m.dim
        for e, phi in zip(witness.elements, witness.functionals):
            acts = [n.act(phi.select_columns([k])) for k in range(dm)]
            for j in range(n.dim):
                vec = {}
                for k, a in enumerate(acts):
                    for r in range(n.dim):
                        v = a.row_items(r).get(j)
                        if v:
                            vec[r * dm + k] = v
                cols.append(vec)
        space = span_of_columns(f, ambient, cols)
        return HomModule(m, n, space)
    im = Matrix.identity(f, m.dim)
    in_ = Matrix.identity(f, n.dim)
    blocks = [in_.kron(rm.transpose()) - rn.kron(im) for rm, rn in zip(m.action, n.action)]
    if blocks:
        constraints = Matrix.vstack(*blocks)
    else:
        constraints = Matrix.zeros(f, 0, ambient)
    return HomModule(m, n, kernel_basis(constraints))


def dual_module(sigma: RightModule, witness: "DualBasisWitness | None" = None) -> HomModule:
    """Σ* = Hom_T(Σ, T) with left T-action and (if Σ is a bimodule) right action."""
    return hom_module(sigma, regular_bimodule(sigma.algebra), witness=witness)


@dataclass(eq=False)
class DualBasisWitness:
    """Pairs (e_i, f_i) with Σ_i e_i · f_i(x) = x."""

    module: RightModule
    elements: list      # column vectors in the module
    functionals: list   # matrices T.dim x module.dim

    def verify(self) -> bool:
        f = self.module.field
        total = Matrix.zeros(f, self.module.dim, self.module.dim)
        for e, phi in zip(self.elements, self.functionals):
            total = total + evaluation_operator(self.module, e, phi)
        return total == Matrix.identity(f, self.module.dim)

    def __len__(self):
        return len(self.elements)


def evaluation_operator(module: RightModule, e: Matrix, phi: Matrix) -> Matrix:
    """Matrix of ``x ↦ e · phi(x)``."""
    cols = []
    for k in range(module.dim):
        cols.append(module.act(phi.select_columns([k])) @ e)
    if not cols:
        return Matrix.zeros(module.field, 0, 0)
    return Matrix.hstack(*cols)


def fgp_witness(sigma: RightModule, dual: HomModule | None = None) -> DualBasisWitness:
    """Find a dual basis by one linear feasibility solve, or raise NotFGP."""
    f = sigma.field
    d = sigma.dim
    if d == 0:
        return DualBasisWitness(sigma, [], [])
    dual = dual or hom_module(sigma, regular_module(sigma.algebra))
    if dual.dim == 0:
        raise NotFGP(f"{sigma.name} has no nonzero functionals")
    basis_vecs = [Matrix(f, d, 1, [{0: f.one} if k == i else {} for k in range(d)]) for i in range(d)]
    pairs = []
    cols = []
    for i, e in enumerate(basis_vecs):
        for h, phi in enumerate(dual.basis):
            pairs.append((i, h))
            cols.append(vectorize(evaluation_operator(sigma, e, phi)))
    system = Matrix(f, len(cols), d * d, cols).transpose()
    rhs = Matrix(f, d * d, 1, [{0: f.one} if (r // d) == (r % d) else {} for r in range(d * d)])
    try:
        coeffs = solve_factor(system, rhs)
    except NoSolution:
        raise NotFGP(f"{sigma.name}: the dual-basis system is infeasible") from None
    elements, functionals = [], []
    for i, e in enumerate(basis_vecs):
        phi = Matrix.zeros(f, sigma.algebra.dim, d)
        for k, (ii, h) in enumerate(pairs):
            c = coeffs[k, 0]
            if ii == i and c:
                phi = phi + dual.basis[h].scale(c)
        if not phi.is_zero():
            elements.append(e)
            functionals.append(phi)
    w = DualBasisWitness(sigma, elements, functionals)
    if not w.verify():
        raise NotFGP("dual-basis identity failed after solving")  # pragma: no cover
    return w


def module_map(src: RightModule, tgt: RightModule, mat: Matrix) -> ModuleMap:
    if mat.shape != (tgt.dim, src.dim):
        raise ShapeError("matrix does not fit the modules")
    return ModuleMap(src, tgt, mat)
