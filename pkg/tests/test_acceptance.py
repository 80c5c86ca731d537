"""Acceptance suite: one PASS/FAIL line per criterion, printed to the terminal."""

import time
from contextlib import contextmanager

import pytest
from hypothesis import given, settings

from torsorlab.comonads import extract_coring, grouplikes
from torsorlab.entwining import (assemble_rarr_object, distributive_law_from_lifting,
                                 hopf_entwining, is_galois, lift_comonad)
from torsorlab.equivalence import build_barQ, equivalence_witness
from torsorlab.errors import FactorizationFailure
from torsorlab.examples import (builtin, group_algebra, group_hopf, nonflat_torsor,
                                perturb_coassociativity, sweedler_algebra, sweedler_hopf)
from torsorlab.functors import default_probes, preserves_equalizers_check
from torsorlab.herd import check_pretorsor_axioms, check_regularity
from torsorlab.linalg import rank
from torsorlab.pretorsor import arrow_from_gamma, gamma, omega_from_arrow, roundtrip_check
import test_entwining
import test_functors
import test_linalg

EXAMPLES = 100


@pytest.fixture
def verdict(capsys):
    @contextmanager
    def record(n, title):
        checks = []
        start = time.perf_counter()
        failed = None
        try:
            yield checks
        except Exception as exc:   # report, then let pytest see it
            failed = exc
        elapsed = time.perf_counter() - start
        ok = failed is None and all(passed for _, passed in checks)
        bad = [name for name, passed in checks if not passed]
        if failed is not None:
            bad.append(f"{type(failed).__name__}: {failed}")
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {title} ({elapsed:.2f} s)"
                  + ("" if ok else f" -- failing: {'; '.join(bad)}"))
        if failed is not None:
            raise failed
        assert ok, bad
    return record


def _invertible(m):
    return m.nrows == m.ncols and rank(m) == m.nrows


def _dims(g):
    st = g.setting
    return g.C(st.regular_A).dim, g.D(st.regular_B).dim


def test_criterion_1_trivial_torsor(verdict):
    with verdict(1, "trivial torsor") as checks:
        start = time.perf_counter()
        pt = builtin("trivial")
        checks.append(("axioms", check_pretorsor_axioms(pt).ok))
        g = gamma(pt)
        checks.append(("C(k) = D(k) = 1", _dims(g) == (1, 1)))
        checks.append(("Omega(Gamma tau) = tau", omega_from_arrow(arrow_from_gamma(g)).tau == pt.tau))
        w = equivalence_witness(g, build_barQ(g), max_dim=2)
        checks.append(("beta~ is the identity",
                       w.ok and all(x.maps["beta~"].is_identity() for x in w.d_side)))
        checks.append(("under 1 s", time.perf_counter() - start < 1.0))


def test_criterion_2_group_algebra_z2(verdict):
    with verdict(2, "kZ/2 over Q") as checks:
        start = time.perf_counter()
        pt = builtin("kz2")
        st = pt.setting
        checks.append(("axioms", check_pretorsor_axioms(pt).ok))
        checks.append(("regularity", check_regularity(pt).ok))
        g = gamma(pt)
        checks.append(("C(k) = D(k) = 2", _dims(g) == (2, 2)))
        ext_c = extract_coring(g.C, st.probes_A)
        ext_d = extract_coring(g.D, st.probes_B)
        checks.append(("2 grouplikes", len(grouplikes(ext_d.coring)) == 2))
        kappas = list(ext_c.comparisons.values()) + list(ext_d.comparisons.values())
        checks.append(("kappa invertible on probes", bool(kappas) and all(map(_invertible, kappas))))
        checks.append(("round trip exact", roundtrip_check(pt, arrow_from_gamma(g), g).ok))
        w = equivalence_witness(g, build_barQ(g), max_dim=2)
        checks.append(("equivalence on D-comodules of dim <= 2",
                       w.ok and len(w.d_side) == 5
                       and all(_invertible(x.maps["beta"]) for x in w.d_side)))
        checks.append(("under 30 s", time.perf_counter() - start < 30.0))


def test_criterion_3_sweedler(verdict):
    with verdict(3, "Sweedler H4") as checks:
        start = time.perf_counter()
        pt = builtin("h4")
        checks.append(("axioms", check_pretorsor_axioms(pt).ok))
        g = gamma(pt)
        checks.append(("dims 4/4", _dims(g) == (4, 4)))
        datum = test_entwining.hopf_galois(sweedler_hopf(sweedler_algebra()))
        checks.append(("B = k", datum.B.dim == 1))
        v = is_galois(datum)
        checks.append(("Galois for Sigma = T = H4", v.galois))
        back = omega_from_arrow(assemble_rarr_object(datum))
        checks.append(("Galois datum gives back tau",
                       back.setting.herd_sec @ back.tau == pt.setting.herd_sec @ pt.tau))
        checks.append(("round trip exact", roundtrip_check(pt, arrow_from_gamma(g), g).ok))
        checks.append(("under 60 s", time.perf_counter() - start < 60.0))


def test_criterion_4_beck_bijection(verdict):
    with verdict(4, "Beck bijection for the kZ/2 entwining") as checks:
        e = hopf_entwining(group_hopf(group_algebra(2)))
        lifted = lift_comonad(e)
        probes = default_probes(e.T)
        back = distributive_law_from_lifting(lifted, e.alpha, e.coring, probes)
        checks.append(("psi recovered bit-exactly", back.psi == e.psi))
        again = lift_comonad(back)
        same = all(again(y).action == lifted(y).action and again.delta(y) == lifted.delta(y)
                   and again.eps(y) == lifted.eps(y) for y in probes.modules)
        checks.append(("lifting recovered on probes", same))


def test_criterion_5_negative_controls(verdict):
    with verdict(5, "negative controls") as checks:
        rep = check_pretorsor_axioms(perturb_coassociativity(builtin("kz2")))
        failed = rep.failures
        checks.append(("perturbed tau fails exactly coassociativity, with witness",
                       [c.name for c in failed] == ["axiom (iii): coassociativity"]
                       and failed[0].witness is not None))
        v = is_galois(test_entwining._trivial_coaction_datum())
        defect = [(r, s, t) for r, s, t in v.ranks.values() if r < t]
        checks.append(("trivial coaction is not Galois, with rank defect",
                       not v.galois and bool(defect)))
        nf = nonflat_torsor()
        pe = preserves_equalizers_check(nf.setting.N_A, nf.setting.probes_A)
        pairs = [c.witness["pair"] for c in pe.failures if isinstance(c.witness, dict)]
        checks.append(("non-flat example fails equalizer preservation with a probe pair",
                       not pe.ok and bool(pairs)))
        try:
            gamma(nf)
            raised = False
        except FactorizationFailure:
            raised = True
        checks.append(("Gamma refuses the non-flat example", raised))


def _counted(strategy, body):
    calls = []

    @settings(max_examples=EXAMPLES, deadline=None, database=None)
    @given(strategy)
    def run(value):
        body(value)
        calls.append(1)

    run()
    return len(calls)


def test_criterion_6_randomized_properties(verdict):
    with verdict(6, f"randomized properties, >= {EXAMPLES} cases each") as checks:
        props = [
            ("rank-nullity", test_linalg.matrices(),
             test_linalg.test_rank_plus_nullity_is_column_count.hypothesis.inner_test),
            ("equalizer universality", test_functors.equalizer_setups(),
             test_functors.test_equalizer_universality.hypothesis.inner_test),
            ("split equalizers for tensor-hom", test_functors.fgp_bimodules(),
             test_functors.test_split_equalizers_for_tensor_hom.hypothesis.inner_test),
            ("coinvariants of kZ/2 on itself have dim 1", test_entwining.based_kz2(),
             test_entwining.test_coinvariants_of_kz2_on_itself_are_one_dimensional
             .hypothesis.inner_test),
        ]
        for name, strategy, body in props:
            n = _counted(strategy, body)
            checks.append((f"{name} ({n} cases)", n >= EXAMPLES))
