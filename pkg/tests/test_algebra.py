import pytest

from torsorlab.algebra import (AlgebraMorphism, Bimodule, FDAlgebra, HopfStructure,
                               direct_sum, regular_bimodule, regular_module,
                               restriction_of_scalars, validate_algebra,
                               validate_algebra_morphism, validate_hopf, validate_module)
from torsorlab.errors import ActionMismatch, NotUnital, ShapeError
from torsorlab.examples import (group_algebra, group_hopf, sweedler_algebra, sweedler_hopf,
                                truncated_polynomial)
from torsorlab.linalg import GF, QQ, Matrix
from torsorlab.monoidal import (balanced_tensor, chain_tensor, dual_module, fgp_witness,
                                hom_module)


@pytest.mark.parametrize("alg", [group_algebra(2), group_algebra(3, GF(7)), sweedler_algebra(),
                                 truncated_polynomial()], ids=lambda a: a.name)
def test_standard_algebras_validate(alg):
    assert validate_algebra(alg).ok
    assert validate_module(regular_bimodule(alg)).ok


def test_sweedler_relations_directly():
    h = sweedler_algebra()
    one, g, x, gx = (h.basis_vector(i) for i in range(4))
    assert h.multiply(g, g) == one
    assert h.multiply(x, x).is_zero()
    assert h.multiply(x, g) == -gx
    assert h.multiply(g, x) == gx


def test_broken_associativity_reports_triples():
    # e1 e1 = e1 but e1 e2 = e2, e2 e1 = 0, e2 e2 = e1 is not associative
    mult = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [0, 1, 0], [0, 0, 1]],
            [[0, 0, 1], [0, 0, 0], [0, 1, 0]]]
    rep = validate_algebra(FDAlgebra(QQ, 3, mult, [1, 0, 0], name="bad"))
    assert not rep.find("associativity").passed
    assert rep.find("associativity").witness


def test_zero_dimensional_algebra_rejected():
    with pytest.raises(NotUnital):
        FDAlgebra(QQ, 0, [], [])


def test_action_shape_checked():
    a = group_algebra(2)
    with pytest.raises(ShapeError):
        from torsorlab.algebra import RightModule
        RightModule(a, 2, [Matrix.identity(QQ, 2)])


@pytest.mark.parametrize("hopf", [group_hopf(group_algebra(2)), group_hopf(group_algebra(3)),
                                  group_hopf(group_algebra(3, GF(7))),
                                  sweedler_hopf(sweedler_algebra())],
                         ids=["kZ2", "kZ3", "kZ3/F7", "H4"])
def test_hopf_structures_validate(hopf):
    assert validate_hopf(hopf).ok


def test_identity_antipode_fails_on_sweedler():
    h = sweedler_hopf(sweedler_algebra())
    bad = HopfStructure(h.algebra, h.coproduct, h.counit, Matrix.identity(QQ, 4))
    failed = {c.name for c in validate_hopf(bad).failures}
    assert failed == {"antipode left identity", "antipode right identity"}


def test_unit_map_is_a_morphism():
    a = group_algebra(2)
    assert validate_algebra_morphism(AlgebraMorphism.unit_map(a)).ok


def test_non_multiplicative_map_detected():
    a = group_algebra(2)
    bad = AlgebraMorphism(a, a, Matrix.from_rows(QQ, [[1, 0], [0, 2]]))
    assert not validate_algebra_morphism(bad).find("multiplicative").passed


def test_restriction_along_unit_map_gives_trivial_action():
    a = group_algebra(2)
    m = restriction_of_scalars(AlgebraMorphism.unit_map(a), regular_module(a))
    assert m.algebra.dim == 1
    assert m.action[0].is_identity()


def test_restriction_requires_matching_algebra():
    a, b = group_algebra(2), group_algebra(3)
    with pytest.raises(ActionMismatch):
        restriction_of_scalars(AlgebraMorphism.unit_map(a), regular_module(b))


def test_direct_sum_structure_maps():
    a = group_algebra(2)
    reg = regular_module(a)
    s, (i1, i2), (p1, p2) = direct_sum(reg, reg)
    assert s.dim == 4
    assert (p1.matrix @ i1.matrix).is_identity()
    assert (p1.matrix @ i2.matrix).is_zero()


def test_regular_tensor_regular_is_regular():
    a = group_algebra(3)
    bt = balanced_tensor(regular_module(a), regular_bimodule(a))
    assert bt.carrier.dim == 3


def test_balanced_tensor_over_truncated_polynomial():
    # k ⊗_{k[x]/x²} k = k where x acts by zero on both sides
    a = truncated_polynomial()
    z = Matrix.zeros(QQ, 1, 1)
    one = Matrix.identity(QQ, 1)
    k_bi = Bimodule(a, a, 1, [one, z], [one, z], name="k")
    bt = balanced_tensor(k_bi, k_bi)
    assert bt.carrier.dim == 1
    reg = regular_bimodule(a)
    assert balanced_tensor(k_bi, reg).carrier.dim == 1
    assert balanced_tensor(reg, reg).carrier.dim == 2


def test_chain_tensor_projection_section():
    a = group_algebra(2)
    reg = regular_bimodule(a)
    carrier, proj, sec = chain_tensor(regular_module(a), reg, reg)
    assert carrier.dim == 2
    assert (proj @ sec).is_identity()


def test_dual_basis_of_regular_module():
    a = sweedler_algebra()
    reg = regular_module(a)
    w = fgp_witness(reg)
    assert w.verify()
    assert dual_module(reg, w).dim == 4


def test_hom_dimension_between_group_modules():
    a = group_algebra(2)
    reg = regular_module(a)
    assert hom_module(reg, reg).dim == 2
    s, _, _ = direct_sum(reg, reg)
    assert hom_module(reg, s).dim == 4
