# pytest tests/test_pairs_lattice.py
import pytest

from app.config import settings
from app.services.oracle import brute_force_left_congruences
from app.services.pairs_lattice import (
    IKPair,
    P_from_pair,
    build_lattice,
    decompose,
    enumerate_pairs,
    green_r_pair,
    ik_class,
    is_congruence_pair,
    is_icp_via_minimals,
    is_icp_via_normality,
    is_inverse_congruence_pair,
    is_psi_saturated,
    is_two_sided,
    join_pairs,
    meet_pairs,
    pair_from_congruence,
    phi,
    phi_join_counterexample,
    psi,
    psi_from_nu,
    rho_from_pair,
    rho_right_from_pair,
    theta,
    theta_meet_counterexample,
    trace_class,
    trace_class_bounds,
    trace_class_quotient,
)
from app.services.relations import EqRelation, eq_join_transitive, eq_meet, semilattice_congruences
from app.services.semigroup_core import (
    close_subset,
    full_inverse_subsemigroups,
    join_subsemigroups,
    meet_subsemigroups,
)
from app.services.trace_kernel import green_r, kernel, normalizer, reverse_inverse
from app.shared.errors import InputError, ResourceLimitError
from tests.conftest import I2_ALPHA


def _valid_pairs(S):
    return enumerate_pairs(S)[0]


def test_i2_reproduces_ten_pairs_among_twenty_one(i2):
    valid, candidates = enumerate_pairs(i2)
    assert candidates == 21
    assert len(valid) == 10
    assert len(brute_force_left_congruences(i2)) == 10


def test_i2_lattice_shape(i2):
    lattice = build_lattice(i2)
    assert len(lattice) == 10
    assert lattice.nodes[lattice.minimum].rho.is_identity()
    assert lattice.nodes[lattice.maximum].rho.is_universal()
    assert lattice.hasse
    for i, j in lattice.hasse:
        assert lattice.leq[i, j] and i != j
    assert lattice.height() >= 2


def test_round_trips(corpus_member):
    S = corpus_member
    for p in _valid_pairs(S):
        assert phi(S, rho_from_pair(S, p)) == p
    for rho in brute_force_left_congruences(S):
        assert rho_from_pair(S, phi(S, rho)) == rho


def test_pair_from_non_congruence_is_rejected(i2):
    with pytest.raises(InputError):
        pair_from_congruence(i2, EqRelation.from_blocks(7, [[0, I2_ALPHA]]))
    with pytest.raises(InputError):
        pair_from_congruence(i2, EqRelation.identity(3))


def test_pair_order_matches_inclusion(i2):
    valid = _valid_pairs(i2)
    for p in valid:
        for q in valid:
            assert p.leq(q) == rho_from_pair(i2, p).issubset(rho_from_pair(i2, q))


def test_meet_and_join_agree_with_relations(corpus_member):
    S = corpus_member
    valid = _valid_pairs(S)
    rhos = {p: rho_from_pair(S, p) for p in valid}
    for p in valid:
        for q in valid:
            assert rho_from_pair(S, meet_pairs(S, p, q)) == eq_meet(rhos[p], rhos[q])
            assert rho_from_pair(S, join_pairs(S, p, q)) == eq_join_transitive(rhos[p], rhos[q])


def test_lattice_join_and_meet_by_index(i2):
    lattice = build_lattice(i2)
    for i in range(len(lattice)):
        assert lattice.join(i, lattice.minimum) == i
        assert lattice.meet(i, lattice.maximum) == i


def test_invalid_pair_is_rejected(i2):
    # {id, I_2}{I_1, empty} has normalizer E, so T = I_2 is outside it
    tau = EqRelation.from_blocks(4, [[0, 1], [2, 3]])
    pair = IKPair(tau, close_subset(i2, [I2_ALPHA]))
    assert not is_inverse_congruence_pair(i2, pair)
    assert not is_icp_via_normality(i2, pair)
    with pytest.raises(InputError):
        rho_from_pair(i2, pair)
    with pytest.raises(InputError):
        is_icp_via_minimals(i2, pair)


def test_minimal_element_and_normality_criteria_agree(corpus_member):
    S = corpus_member
    for tau in semilattice_congruences(S):
        n = normalizer(S, tau)
        for T in full_inverse_subsemigroups(S):
            pair = IKPair(tau, T)
            direct = is_inverse_congruence_pair(S, pair)
            assert is_icp_via_normality(S, pair) == direct
            if T.issubset(n):
                assert is_icp_via_minimals(S, pair) == direct


def test_theta_on_valid_pairs_is_rho(i2):
    for p in _valid_pairs(i2):
        assert theta(i2, p) == rho_from_pair(i2, p)


def test_decomposition_of_every_congruence(corpus_member):
    S = corpus_member
    for rho in brute_force_left_congruences(S):
        parts = decompose(S, rho)
        assert parts.joined == rho
        assert parts.chi_part.issubset(green_r(S))
        assert set(parts.witnesses) == set(kernel(S, rho).members)


def test_right_congruence_from_pair_is_dual(i2):
    for p in _valid_pairs(i2):
        assert rho_right_from_pair(i2, p) == reverse_inverse(i2, rho_from_pair(i2, p))


def test_trace_classes_and_bounds(corpus_member):
    S = corpus_member
    valid = _valid_pairs(S)
    for tau in semilattice_congruences(S):
        members = trace_class(S, tau)
        assert len(members) == sum(1 for p in valid if p.tau == tau)
        assert len(members) == len(full_inverse_subsemigroups(trace_class_quotient(S, tau)))
        low, high = trace_class_bounds(S, tau)
        assert low in members and high in members
        for p in members:
            assert low.leq(p) and p.leq(high)
            assert is_psi_saturated(S, tau, p.sub)


def test_psi_closed_form(corpus_member):
    for tau in semilattice_congruences(corpus_member):
        assert psi(corpus_member, tau) == psi_from_nu(corpus_member, tau)


def test_inverse_kernel_class_of_e_has_no_maximum(i2):
    lattice = build_lattice(i2)
    E = close_subset(i2, ())
    indices = [lattice.index_of(rho_from_pair(i2, p)) for p in ik_class(i2, E)]
    assert len(lattice.maximal_elements(indices)) >= 2
    assert not lattice.has_maximum(indices)


def test_two_sided_criterion(corpus_member):
    S = corpus_member
    for rho in brute_force_left_congruences(S):
        pair = phi(S, rho)
        two_sided = is_two_sided(S, rho)
        assert is_congruence_pair(S, pair) == two_sided
        assert (rho_right_from_pair(S, pair) == rho) == two_sided
        if two_sided:
            assert P_from_pair(S, pair) == rho


def test_green_r_is_one_sided(i2):
    pair = green_r_pair(i2)
    assert pair.tau.is_identity()
    assert pair.sub.members == tuple(range(i2.size))
    assert not is_congruence_pair(i2, pair)
    with pytest.raises(InputError):
        P_from_pair(i2, pair)


def test_lattice_map_counterexamples_are_genuine(i2):
    found = theta_meet_counterexample(i2)
    assert found is not None
    p1, p2 = found
    met = IKPair(eq_meet(p1.tau, p2.tau), meet_subsemigroups(p1.sub, p2.sub))
    assert theta(i2, met) != eq_meet(theta(i2, p1), theta(i2, p2))

    lattice = build_lattice(i2)
    pair = phi_join_counterexample(i2, lattice)
    assert pair is not None
    i, j = pair
    a, b = lattice.nodes[i].pair, lattice.nodes[j].pair
    componentwise = IKPair(eq_join_transitive(a.tau, b.tau), join_subsemigroups(i2, a.sub, b.sub))
    assert lattice.nodes[lattice.join(i, j)].pair != componentwise
    assert phi(i2, eq_join_transitive(lattice.nodes[i].rho, lattice.nodes[j].rho)) != componentwise


def test_theta_preserves_componentwise_joins(corpus_member):
    S = corpus_member
    product = [IKPair(tau, T) for tau in semilattice_congruences(S) for T in full_inverse_subsemigroups(S)]
    images = {p: theta(S, p) for p in product}
    for n, p in enumerate(product):
        for q in product[n + 1:]:
            joined = IKPair(eq_join_transitive(p.tau, q.tau), join_subsemigroups(S, p.sub, q.sub))
            assert theta(S, joined) == eq_join_transitive(images[p], images[q])


def test_theta_of_pair_join_is_relation_join(corpus_member):
    S = corpus_member
    valid = _valid_pairs(S)
    for n, p in enumerate(valid):
        for q in valid[n + 1:]:
            assert theta(S, join_pairs(S, p, q)) == eq_join_transitive(theta(S, p), theta(S, q))


def test_candidate_pair_cap(i2, monkeypatch):
    # 7 traces times 3 subsemigroups
    monkeypatch.setattr(settings, "MAX_PAIRS", 20)
    with pytest.raises(ResourceLimitError) as exc:
        enumerate_pairs(i2)
    assert exc.value.payload == {"cap": 20, "setting": "MAX_PAIRS"}
    monkeypatch.setattr(settings, "MAX_PAIRS", 21)
    assert len(enumerate_pairs(i2)[0]) == 10
