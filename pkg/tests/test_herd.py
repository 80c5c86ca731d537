import pytest

from oracles import group_tau_columns
from torsorlab.examples import (group_algebra, group_hopf, hopf_torsor, nonflat_torsor,
                                perturb_coassociativity, perturb_unit_leg)
from torsorlab.herd import check_pretorsor_axioms, check_regularity, validate_setting
from torsorlab.linalg import GF

COASSOC = "axiom (iii): coassociativity"
AX1 = "axiom (i): x1 x2(-) (x) x3 = Id (x) x"
AX2 = "axiom (ii): x1 (x) x2(x3) = x (x) 1"


@pytest.mark.parametrize("name", ["trivial", "kz2", "kz3f7", "h4"])
def test_builtin_torsors_satisfy_axioms(builtins, name):
    pt = builtins(name)
    assert validate_setting(pt.setting).ok
    assert check_pretorsor_axioms(pt).ok


@pytest.mark.parametrize("name", ["trivial", "kz2", "kz3f7", "h4"])
def test_builtin_settings_are_regular(builtins, name):
    assert check_regularity(builtins(name)).ok


@pytest.mark.parametrize("n,p", [(2, 0), (3, 7), (4, 0), (5, 3)])
def test_group_tau_matches_index_formula(n, p):
    # τ(g^i) = g^i ⊗ (g^-i)^ ⊗ g^i, read through the dual basis of Σ* = Hom_T(T, T)
    field = GF(p) if p else None
    alg = group_algebra(n, field) if field else group_algebra(n)
    pt = hopf_torsor(group_hopf(alg), name=f"z{n}")
    st = pt.setting
    field_tau = st.herd_sec @ pt.tau
    phis = st.dual.basis
    for j, (a, b, c) in enumerate(group_tau_columns(n)):
        col = field_tau.select_columns([j])
        nz = [i for i in range(col.nrows) if col[i, 0] != 0]
        assert len(nz) == 1 and col[nz[0], 0] == 1
        first, rest = divmod(nz[0], len(phis) * n)
        mid, last = divmod(rest, n)
        assert (first, last) == (a, c)
        # Σ* = Hom_T(T, T) consists of left multiplications; the middle leg is g^b·(−)
        assert phis[mid] == st.T.left_mult[b]
        assert phis[mid] @ st.T.basis_vector(j) == st.T.unit_vector()
    assert check_pretorsor_axioms(pt).ok


def test_coassociativity_perturbation_fails_only_axiom_three(builtins):
    rep = check_pretorsor_axioms(perturb_coassociativity(builtins("kz2")))
    failed = [c for c in rep.failures]
    assert [c.name for c in failed] == [COASSOC]
    assert failed[0].witness is not None


def test_unit_leg_perturbation_fails_first_two_axioms(builtins):
    rep = check_pretorsor_axioms(perturb_unit_leg(builtins("kz2")))
    assert {c.name for c in rep.failures} == {AX1, AX2}
    assert all(c.witness is not None for c in rep.failures)


def test_nonflat_example_satisfies_axioms_but_is_not_regular():
    pt = nonflat_torsor()
    assert check_pretorsor_axioms(pt).ok
    rep = check_regularity(pt)
    assert not rep.ok
    bad = [c for c in rep.failures if isinstance(c.witness, dict) and "pair" in c.witness]
    assert bad
