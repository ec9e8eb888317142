# pytest tests/test_genset.py
import pytest

from app.services.genset import (
    almost_finitely_generated_witness,
    chi_of_inverse_subsemigroup,
    congruence_class_of_upset,
    generates_universal,
    generating_decomposition,
    has_trivial_class,
    idempotents_bounded_by_generators,
    lower_covers,
    maximal_idempotents,
    noetherian_report,
    normalize_generating_set,
    omega_fg_analysis,
    trace_of_join_generators,
    trivial_class_via_components,
)
from app.services.oracle import brute_force_left_congruences
from app.services.pairs_lattice import enumerate_pairs, rho_from_pair
from app.services.relations import (
    eq_join_transitive,
    left_congruence_closure,
    semilattice_congruences,
)
from app.services.semigroup_core import full_inverse_subsemigroups, green_R
from app.services.trace_kernel import chi, nu, trace
from app.shared.errors import InputError
from tests.conftest import I2_ALPHA, I2_BETA, I2_E1, I2_E2, I2_ID, I2_ZERO


def _random_pairs(S, rng, count):
    picks = rng.integers(0, S.size, size=(count, 2))
    return [(int(a), int(b)) for a, b in picks]


def _assert_normal_form(S, normalized):
    for p, q in normalized.idempotent_pairs:
        assert S.is_idempotent(p) and S.is_idempotent(q)
    for p, q in normalized.r_pairs:
        assert green_R(S, p, q)
        assert S.is_idempotent(p) or S.is_idempotent(q)


def test_normalized_pairs_have_the_two_shapes(i2):
    normalized = normalize_generating_set(i2, [(I2_ALPHA, I2_BETA)])
    _assert_normal_form(i2, normalized)
    assert len(normalized) == len(normalized.pairs)


def test_normalization_preserves_the_generated_congruence(corpus_member, rng):
    S = corpus_member
    for _ in range(100):
        H = _random_pairs(S, rng, int(rng.integers(1, 4)))
        normalized = normalize_generating_set(S, H)
        _assert_normal_form(S, normalized)
        assert left_congruence_closure(S, normalized.pairs) == left_congruence_closure(S, H)


def test_trace_of_join(i2):
    for tau in semilattice_congruences(i2):
        for Y in full_inverse_subsemigroups(i2):
            joined = eq_join_transitive(nu(i2, tau), chi(i2, Y))
            assert trace(i2, joined) == trace_of_join_generators(i2, tau, Y)


def test_trivial_idempotent_class_forces_trivial_class(corpus_member):
    S = corpus_member
    for rho in brute_force_left_congruences(S):
        for a in range(S.size):
            if has_trivial_class(rho, S.right_idempotent(a)):
                assert has_trivial_class(rho, a)


def test_trivial_class_via_components_agrees(corpus_member):
    S = corpus_member
    for pair in enumerate_pairs(S)[0]:
        rho = rho_from_pair(S, pair)
        for e in S.idempotents:
            assert trivial_class_via_components(S, pair.tau, pair.sub, e) == has_trivial_class(rho, e)


def test_trivial_class_via_components_needs_an_idempotent(i2):
    pair = enumerate_pairs(i2)[0][0]
    with pytest.raises(InputError):
        trivial_class_via_components(i2, pair.tau, pair.sub, I2_BETA)


def test_every_full_inverse_subsemigroup_is_almost_finitely_generated(corpus_member):
    for T in full_inverse_subsemigroups(corpus_member):
        witness = almost_finitely_generated_witness(corpus_member, T)
        assert witness.chi_generated
        assert witness.sub == list(T.members)


def test_generating_decomposition_reproduces_congruence(corpus_member):
    S = corpus_member
    for rho in brute_force_left_congruences(S):
        nu_pairs, chi_pairs = generating_decomposition(S, rho)
        assert all(S.is_idempotent(p) and S.is_idempotent(q) for p, q in nu_pairs)
        rebuilt = eq_join_transitive(
            left_congruence_closure(S, nu_pairs), left_congruence_closure(S, chi_pairs)
        )
        assert rebuilt == rho


def test_i2_idempotent_order(i2):
    assert maximal_idempotents(i2) == [I2_ID]
    assert sorted(lower_covers(i2, I2_ID)) == [I2_E2, I2_E1]
    assert lower_covers(i2, I2_E1) == [I2_ZERO]


def test_i2_universal_congruence_witness(i2):
    report = omega_fg_analysis(i2)
    assert report.maximal_idempotents == [I2_ID]
    assert report.every_idempotent_below_maximal
    assert report.witness.idempotents == [I2_ID, I2_E2, I2_E1]
    assert report.witness.elements == []
    assert report.witness.minimal
    assert report.subsemigroup_condition
    assert generates_universal(i2, report.witness.idempotents, report.witness.elements)
    assert idempotents_bounded_by_generators(i2, report.witness.idempotents, report.witness.elements)


def test_universal_needs_more_than_the_top(i2):
    assert not generates_universal(i2, [I2_ID], [])
    assert not generates_universal(i2, [I2_ID], [I2_ALPHA])
    assert chi_of_inverse_subsemigroup(i2, [I2_ALPHA]).related(I2_ALPHA, I2_ID)


@pytest.mark.parametrize("upset", [[I2_ID], [I2_ID, I2_E2]])
def test_upset_of_maximal_idempotents_is_a_class(i2, upset):
    members, is_class = congruence_class_of_upset(i2, upset)
    assert I2_ID in members
    assert is_class


def test_noetherian_report_height_bound(corpus_member):
    report = noetherian_report(corpus_member)
    assert report.height_bound_holds
    assert report.left_noetherian
    assert report.lattice_height <= report.subsemigroup_height + report.trace_height
