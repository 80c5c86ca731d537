import pytest

from torsorlab.comonads import cofree_comodule, validate_bicomodule
from torsorlab.equivalence import (build_barQ, equivalence_witness, witness_on_C_comodule,
                                   witness_on_D_comodule)
from torsorlab.linalg import rank


@pytest.fixture(scope="module")
def barqs(gammas):
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_barQ(gammas(name))
        return cache[name]

    return get


@pytest.mark.parametrize("name", ["trivial", "kz2", "kz3f7"])
def test_barQ_is_a_bicomodule(gammas, barqs, name):
    bq = barqs(name)
    assert bq.report.ok


def test_trivial_witness_maps_are_identities(gammas, barqs):
    w = equivalence_witness(gammas("trivial"), barqs("trivial"), max_dim=2)
    assert w.ok
    assert len(w.d_side) == len(w.c_side) == 2
    for item in w.d_side:
        assert item.maps["beta~"].is_identity()
        assert item.maps["beta"].is_identity()
    for item in w.c_side:
        assert item.maps["kappa~"].is_identity()


def test_kz2_equivalence_up_to_dim_two(gammas, barqs):
    w = equivalence_witness(gammas("kz2"), barqs("kz2"), max_dim=2)
    assert w.ok
    # five isomorphism classes on each side
    assert len(w.d_side) == len(w.c_side) == 5
    for item in w.d_side + w.c_side:
        for m in item.maps.values():
            if m.nrows == m.ncols:
                assert rank(m) == m.nrows


def test_cofree_comodules_transport(gammas, barqs):
    g = gammas("kz3f7")
    bq = barqs("kz3f7")
    st = g.setting
    for m in st.probes_B.modules:
        if m.dim:
            assert witness_on_D_comodule(g, bq, cofree_comodule(g.D, m)).report.ok
    for x in st.probes_A.modules:
        if x.dim:
            assert witness_on_C_comodule(g, bq, cofree_comodule(g.C, x)).report.ok


def test_bicomodule_functor_from_gamma(gammas):
    g = gammas("kz2")
    assert validate_bicomodule(g.bicomodule, g.setting.probes_B).ok
