import pytest

from torsorlab.algebra import AlgebraMorphism
from torsorlab.examples import group_algebra, group_hopf, hopf_torsor
from torsorlab.linalg import QQ, Matrix
from torsorlab.pretorsor import (PreTorsorMorphism, arrow_comparison, arrow_from_gamma,
                                 check_pretorsor_morphism, coregular_from_gamma, gamma,
                                 induce_comonad_morphism, omega_from_arrow,
                                 phi_identities_check, roundtrip_check, tau_from_coregular)

# dim C(A) and dim D(B) on the regular modules, equal to dim T for these examples
DIMS = {"trivial": 1, "kz2": 2, "kz3f7": 3, "h4": 4}


@pytest.mark.parametrize("name", sorted(DIMS))
def test_gamma_checks_pass(gammas, name):
    assert gammas(name).report.ok


@pytest.mark.parametrize("name", sorted(DIMS))
def test_comonad_dimensions(gammas, name):
    g = gammas(name)
    st = g.setting
    assert g.C(st.regular_A).dim == DIMS[name]
    assert g.D(st.regular_B).dim == DIMS[name]


@pytest.mark.parametrize("name", sorted(DIMS))
def test_round_trip_recovers_tau(builtins, gammas, name):
    pt = builtins(name)
    g = gammas(name)
    assert omega_from_arrow(arrow_from_gamma(g)).tau == pt.tau
    assert tau_from_coregular(coregular_from_gamma(g)).tau == pt.tau
    assert roundtrip_check(pt, arrow=arrow_from_gamma(g), gamma_out=g).ok


@pytest.mark.parametrize("name", sorted(DIMS))
def test_arrow_comparison_against_itself(gammas, name):
    assert arrow_comparison(arrow_from_gamma(gammas(name))).ok


@pytest.mark.parametrize("name", ["trivial", "kz2", "h4"])
def test_phi_identities(gammas, name):
    assert phi_identities_check(arrow_from_gamma(gammas(name))).ok


def _kz3_square_map():
    alg = group_algebra(3)
    pt = hopf_torsor(group_hopf(alg), name="z3")
    # g^i ↦ g^{2i} is an automorphism of ℤ/3
    perm = Matrix.from_dict(QQ, 3, 3, {((2 * i) % 3, i): QQ(1) for i in range(3)})
    return pt, AlgebraMorphism(pt.setting.T, pt.setting.T, perm)


def test_group_automorphism_is_a_pretorsor_morphism():
    pt, f = _kz3_square_map()
    m = PreTorsorMorphism(pt, pt, f, f.matrix, name="square")
    assert check_pretorsor_morphism(m).ok
    g = gamma(pt)
    _, rep = induce_comonad_morphism(m, g, g)
    assert rep.ok


def test_translated_automorphism_is_also_a_morphism():
    # σ = g·f(−) is still right T-linear along f
    pt, f = _kz3_square_map()
    shifted = pt.setting.T.left_mult[1] @ f.matrix
    assert check_pretorsor_morphism(PreTorsorMorphism(pt, pt, f, shifted)).ok


def test_non_equivariant_sigma_map_is_rejected():
    pt, f = _kz3_square_map()
    scale = Matrix.from_dict(QQ, 3, 3, {(i, i): QQ(i + 1) for i in range(3)})
    m = PreTorsorMorphism(pt, pt, f, scale, name="bad")
    rep = check_pretorsor_morphism(m)
    assert not rep.find("sigma map is right T-linear along f").passed
