import pytest
from hypothesis import given, strategies as st

from oracles import hopf_coinvariant_dim
from torsorlab.algebra import (AlgebraMorphism, Bimodule, FDAlgebra, HopfStructure,
                               ground_algebra, regular_bimodule, restriction_of_scalars,
                               validate_hopf)
from torsorlab.comonads import ObjectwiseComonad
from torsorlab.entwining import (EntwiningData, GaloisDatum, assemble_rarr_object,
                                 canonical_map_check, check_comonad_arrow, coalgebra_coring,
                                 coinvariants, distributive_law_from_lifting, hopf_entwining,
                                 is_galois, lift_comonad, rarr_as_arrow, trivial_entwining,
                                 validate_entwining, validate_galois_datum)
from torsorlab.errors import NotALifting, NotGalois
from torsorlab.examples import (group_algebra, group_hopf, hopf_torsor, sweedler_algebra,
                                sweedler_hopf)
from torsorlab.functors import NatTransform, default_probes
from torsorlab.herd import check_pretorsor_axioms
from torsorlab.linalg import GF, QQ, Matrix, inverse
from torsorlab.monoidal import balanced_tensor
from torsorlab.pretorsor import omega_from_arrow

HOPFS = {
    "kZ2": lambda: group_hopf(group_algebra(2)),
    "kZ3/F7": lambda: group_hopf(group_algebra(3, GF(7))),
    "H4": lambda: sweedler_hopf(sweedler_algebra()),
}


def hopf_galois(hopf):
    e = hopf_entwining(hopf)
    alg = hopf.algebra
    n = alg.dim
    sigma = Bimodule(e.A, alg, n, [Matrix.identity(alg.field, n)],
                     regular_bimodule(alg).action, name="Sigma")
    bt = balanced_tensor(restriction_of_scalars(e.alpha, sigma.as_right_module()),
                         e.coring.carrier)
    return GaloisDatum(e, sigma, bt.project(hopf.coproduct), name="G")


@pytest.fixture(scope="module", params=sorted(HOPFS))
def hopf(request):
    return HOPFS[request.param]()


def test_hopf_entwining_axioms(hopf):
    assert validate_entwining(hopf_entwining(hopf)).ok


def test_trivial_entwining_axioms():
    assert validate_entwining(trivial_entwining(QQ)).ok


def test_dropping_the_first_leg_breaks_comultiplication():
    h = group_hopf(group_algebra(2))
    e = hopf_entwining(h)
    alg = h.algebra
    n = alg.dim
    cols = []
    for k in range(n):
        for j in range(n):
            # ψ(c ⊗ t) = 1 ⊗ c t
            cols.append(Matrix.column_vector(QQ, alg.unit).kron(
                alg.multiply(alg.basis_vector(k), alg.basis_vector(j))))
    bad = EntwiningData.from_field_psi(e.alpha, e.coring, Matrix.hstack(*cols), name="dropped")
    failed = {c.name for c in validate_entwining(bad).failures}
    assert "axiom 3 (comultiplication)" in failed
    assert "axiom 1 (multiplication)" not in failed


def test_beck_bijection_recovers_psi(hopf):
    e = hopf_entwining(hopf)
    lifted = lift_comonad(e)
    probes = default_probes(e.T)
    back = distributive_law_from_lifting(lifted, e.alpha, e.coring, probes)
    assert back.psi == e.psi
    again = lift_comonad(back)
    for y in probes.modules:
        assert again(y).action == lifted(y).action
        assert again.delta(y) == lifted.delta(y)
        assert again.eps(y) == lifted.eps(y)


def test_negated_coproduct_is_not_a_lifting():
    e = hopf_entwining(group_hopf(group_algebra(2)))
    lifted = lift_comonad(e)
    neg = NatTransform(lifted.coproduct.source, lifted.coproduct.target,
                       lambda y: -lifted.delta(y), name="-Delta")
    bad = ObjectwiseComonad(lifted.functor, neg, lifted.counit, name="negated")
    with pytest.raises(NotALifting):
        distributive_law_from_lifting(bad, e.alpha, e.coring)


def test_hopf_galois_datum(hopf):
    g = hopf_galois(hopf)
    assert validate_galois_datum(g).ok
    assert canonical_map_check(g).ok
    verdict = is_galois(g)
    assert verdict.galois
    for r, src, tgt in verdict.ranks.values():
        assert r == src == tgt


def test_hopf_galois_arrow_gives_back_the_hopf_torsor(hopf):
    g = hopf_galois(hopf)
    obj = assemble_rarr_object(g)
    verdict = check_comonad_arrow(rarr_as_arrow(obj), g.setting().probes_T,
                                  g.setting().probes_A)
    assert verdict.valid and verdict.regular and verdict.co_regular
    pt = omega_from_arrow(obj)
    assert check_pretorsor_axioms(pt).ok
    ref = hopf_torsor(hopf)
    assert pt.setting.herd_sec @ pt.tau == ref.setting.herd_sec @ ref.tau


def _trivial_coaction_datum():
    k = ground_algebra(QQ)
    h = group_hopf(group_algebra(2))
    coring = coalgebra_coring(h.coproduct, h.counit, QQ, name="kZ2")
    e = EntwiningData.from_field_psi(AlgebraMorphism.identity(k), coring,
                                     Matrix.identity(QQ, 2), name="flip")
    sigma = Bimodule(k, k, 1, [Matrix.identity(QQ, 1)], [Matrix.identity(QQ, 1)], name="k")
    return GaloisDatum(e, sigma, Matrix.from_rows(QQ, [[1], [0]]), name="trivial coaction")


def test_trivial_coaction_is_not_galois():
    g = _trivial_coaction_datum()
    assert validate_entwining(g.entwining).ok
    assert validate_galois_datum(g).ok
    verdict = is_galois(g)
    assert not verdict.galois
    for r, src, tgt in verdict.ranks.values():
        if src:
            assert r == src < tgt == 2 * src
    with pytest.raises(NotGalois):
        assemble_rarr_object(g)


def test_coinvariants_of_sweedler_on_itself():
    h = sweedler_hopf(sweedler_algebra())
    e = hopf_entwining(h)
    b, beta = coinvariants(e, e.T.unit_vector().kron(e.T.unit_vector()))
    assert b.dim == 1 == hopf_coinvariant_dim(h.coproduct, h.algebra.unit_vector())


def _transport(h: HopfStructure, p: Matrix) -> HopfStructure:
    """The same Hopf algebra written in the basis given by the columns of ``p``."""
    a = h.algebra
    f = a.field
    n = a.dim
    q = inverse(p)
    cols = [p.select_columns([i]) for i in range(n)]
    mult = [[(q @ a.multiply(cols[i], cols[j])).column(0) for j in range(n)] for i in range(n)]
    alg = FDAlgebra(f, n, mult, (q @ a.unit_vector()).column(0), name=a.name)
    return HopfStructure(alg, q.kron(q) @ h.coproduct @ p, h.counit @ p, q @ h.antipode @ p)


@st.composite
def based_kz2(draw):
    p = draw(st.sampled_from([0, 2, 3, 5, 7, 11]))
    field = GF(p) if p else QQ
    h = group_hopf(group_algebra(2, field))
    lo, up = draw(st.integers(-3, 3)), draw(st.integers(-3, 3))
    scales = [c for c in (1, -1, 2, 3) if field(c) != 0]
    d1, d2 = draw(st.sampled_from(scales)), draw(st.sampled_from(scales))
    # lower unipotent · upper unipotent · diagonal is always invertible
    m = (Matrix.from_rows(field, [[1, 0], [lo, 1]]) @ Matrix.from_rows(field, [[1, up], [0, 1]])
         @ Matrix.from_rows(field, [[d1, 0], [0, d2]]))
    return _transport(h, m)


@given(based_kz2())
def test_coinvariants_of_kz2_on_itself_are_one_dimensional(h):
    assert validate_hopf(h).ok
    e = hopf_entwining(h)
    one = e.T.unit_vector()
    b, beta = coinvariants(e, one.kron(one))
    assert b.dim == 1
    assert beta.matrix @ b.unit_vector() == one
    assert hopf_coinvariant_dim(h.coproduct, one) == 1
