from math import comb

import pytest

from oracles import grouplikes_on_grid, small_rationals
from torsorlab.comonads import (CoringData, comodules_isomorphic, coring_comonad,
                                direct_sum_comodule, enumerate_comodules, extract_coring,
                                grouplike_comodule, grouplikes, validate_comodule,
                                validate_comonad, validate_coring)
from torsorlab.linalg import Matrix


def _coring(gammas, name, side):
    g = gammas(name)
    st = g.setting
    com, probes, ground = ((g.C, st.probes_A, st.regular_A) if side == "C"
                           else (g.D, st.probes_B, st.regular_B))
    ext = extract_coring(com, probes)
    return com, ext, ground


@pytest.mark.parametrize("name", ["trivial", "kz2", "kz3f7", "h4"])
@pytest.mark.parametrize("side", ["C", "D"])
def test_derived_comonads_satisfy_laws(gammas, name, side):
    g = gammas(name)
    st = g.setting
    com, probes = (g.C, st.probes_A) if side == "C" else (g.D, st.probes_B)
    assert validate_comonad(com, probes).ok


@pytest.mark.parametrize("name,dim", [("trivial", 1), ("kz2", 2), ("kz3f7", 3), ("h4", 4)])
@pytest.mark.parametrize("side", ["C", "D"])
def test_extracted_coring_dimension(gammas, name, dim, side):
    _, ext, _ = _coring(gammas, name, side)
    assert ext.verdict.ok
    assert ext.coring.carrier.dim == dim
    assert validate_coring(ext.coring).ok


@pytest.mark.parametrize("name,count", [("trivial", 1), ("kz2", 2), ("kz3f7", 3), ("h4", 2)])
def test_grouplike_count(gammas, name, count):
    _, ext, _ = _coring(gammas, name, "D")
    assert len(grouplikes(ext.coring)) == count


@pytest.mark.parametrize("name", ["kz2", "h4"])
def test_grouplikes_agree_with_grid_search(gammas, name):
    _, ext, _ = _coring(gammas, name, "D")
    c = ext.coring
    found = {tuple(g.column(0)) for g in grouplikes(c)}
    grid = grouplikes_on_grid(c.field_coproduct(), c.counit, small_rationals())
    f = c.counit.field
    assert {tuple(f(x) for x in coords) for coords in grid} <= found


def test_kz2_comodule_classes_up_to_dim_two(gammas):
    com, ext, ground = _coring(gammas, "kz2", "D")
    classes, exhaustive = enumerate_comodules(com, ext.coring, ground, 2)
    assert exhaustive
    # sums of the two one-dimensional comodules: multisets of size 1 and 2
    assert len(classes) == comb(2, 1) + comb(3, 2) == 5


def test_kz2_comodule_classes_up_to_dim_four(gammas):
    com, ext, ground = _coring(gammas, "kz2", "D")
    classes, _ = enumerate_comodules(com, ext.coring, ground, 4)
    assert len(classes) == sum(comb(d + 1, d) for d in range(1, 5)) == 14


def test_grouplike_comodules_are_distinct(gammas):
    com, ext, ground = _coring(gammas, "kz2", "D")
    g0, g1 = grouplikes(ext.coring)
    m0 = grouplike_comodule(com, ground, g0)
    m1 = grouplike_comodule(com, ground, g1)
    assert validate_comodule(m0).ok and validate_comodule(m1).ok
    assert not comodules_isomorphic(m0, m1)
    s01, s10 = direct_sum_comodule(m0, m1), direct_sum_comodule(m1, m0)
    assert comodules_isomorphic(s01, s10)


def test_negated_coproduct_is_not_a_coring(gammas):
    _, ext, _ = _coring(gammas, "kz2", "D")
    c = ext.coring
    bad = CoringData(c.algebra, c.carrier, -c.coproduct, c.counit, name="neg")
    assert not validate_coring(bad).ok


def test_coring_comonad_round_trips_through_extraction(gammas):
    com, ext, _ = _coring(gammas, "kz2", "C")
    again = extract_coring(coring_comonad(ext.coring), gammas("kz2").setting.probes_A)
    assert again.verdict.ok
    assert again.coring.carrier.dim == ext.coring.carrier.dim
    assert isinstance(again.coring.counit, Matrix)
