# pytest tests/test_trace_kernel.py
import pytest

from app.services.oracle import brute_force_left_congruences
from app.services.relations import (
    EqRelation,
    eq_meet,
    left_congruence_closure,
    semilattice_congruences,
)
from app.services.semigroup_core import ElementSubset, close_subset, full_inverse_subsemigroups
from app.services.trace_kernel import (
    centralizer,
    chi,
    green_r,
    idempotent_separating_part,
    inverse_kernel,
    is_left_compatible,
    is_right_compatible,
    kernel,
    kernel_from_inverse_kernel,
    kernel_trace_relation,
    left_normalizer,
    mu,
    normalizer,
    normalizers,
    nu,
    reverse_inverse,
    right_normalizer,
    trace,
    validate_trace,
)
from app.shared.errors import InputError
from tests.conftest import I2_ALPHA, I2_BETA, I2_BETA_INV, I2_E1, I2_E2, I2_ID, I2_ZERO


def _lift_trace(S, tau):
    return left_congruence_closure(
        S, [(S.idempotents[p], S.idempotents[q]) for p, q in tau.generating_pairs()]
    )


def test_nu_is_the_generated_left_congruence(corpus_member):
    for tau in semilattice_congruences(corpus_member):
        rho = nu(corpus_member, tau)
        assert rho == _lift_trace(corpus_member, tau)
        assert trace(corpus_member, rho) == tau


def test_mu_has_the_same_trace_and_is_left_compatible(corpus_member):
    for tau in semilattice_congruences(corpus_member):
        rho = mu(corpus_member, tau)
        assert is_left_compatible(corpus_member, rho)
        assert trace(corpus_member, rho) == tau
        assert nu(corpus_member, tau).issubset(rho)


def test_every_congruence_lies_between_nu_and_mu(corpus_member):
    for rho in brute_force_left_congruences(corpus_member):
        tau = trace(corpus_member, rho)
        assert nu(corpus_member, tau).issubset(rho)
        assert rho.issubset(mu(corpus_member, tau))


def test_normalizer_is_inverse_closed_left_normalizer(corpus_member):
    S = corpus_member
    for tau in semilattice_congruences(S):
        n_left, n_right, n = normalizers(S, tau)
        expected = {a for a in n_left if S.inverse(a) in n_left}
        assert set(n.members) == expected
        assert n.mask == n_left.mask & n_right.mask
        assert centralizer(S, tau).issubset(n)


def test_normalizer_of_meet_contains_common_normalizer(i2):
    traces = semilattice_congruences(i2)
    for t1 in traces:
        for t2 in traces:
            common = normalizer(i2, t1).mask & normalizer(i2, t2).mask
            assert common & ~normalizer(i2, eq_meet(t1, t2)).mask == 0


def test_i2_normalizer_of_trace_joining_top(i2):
    # positions 0 id, 1 I_2, 2 I_1, 3 empty; tau = {id, I_2} {I_1, empty}
    tau = EqRelation.from_blocks(4, [[0, 1], [2, 3]])
    n = normalizer(i2, tau)
    assert I2_ALPHA not in n
    assert set(n.members) == {I2_ID, I2_E2, I2_E1, I2_ZERO}
    assert I2_BETA not in left_normalizer(i2, tau) or I2_BETA not in right_normalizer(i2, tau)


def test_kernel_and_inverse_kernel_identities(corpus_member):
    S = corpus_member
    for rho in brute_force_left_congruences(S):
        K = kernel(S, rho)
        T = inverse_kernel(S, rho)
        tau = trace(S, rho)
        assert set(T.members) == {a for a in K if S.inverse(a) in K}
        assert T.mask == K.mask & normalizer(S, tau).mask
        assert kernel_from_inverse_kernel(S, tau, T) == K
        assert kernel_trace_relation(S, K, tau) == rho


def test_chi_is_idempotent_separating(i2):
    for T in full_inverse_subsemigroups(i2):
        rho = chi(i2, T)
        assert trace(i2, rho).is_identity()
        assert inverse_kernel(i2, rho) == T
        assert rho.issubset(green_r(i2))


def test_chi_rejects_non_full_subset(i2):
    with pytest.raises(InputError):
        chi(i2, ElementSubset.from_members([I2_ID, I2_BETA]))


def test_idempotent_separating_part_of_universal(i2):
    omega = EqRelation.universal(i2.size)
    assert idempotent_separating_part(i2, omega) == green_r(i2)
    assert idempotent_separating_part(i2, omega) == chi(i2, close_subset(i2, [I2_ALPHA]))


def test_green_r_classes_of_i2(i2):
    r = green_r(i2)
    assert r.related(I2_BETA, I2_E1)
    assert r.related(I2_BETA_INV, I2_E2)
    assert r.related(I2_ALPHA, I2_ID)
    assert not r.related(I2_E1, I2_E2)
    assert is_left_compatible(i2, r)
    assert not is_right_compatible(i2, r)


def test_reverse_inverse_swaps_sides(i2):
    r = green_r(i2)
    l = reverse_inverse(i2, r)
    assert is_right_compatible(i2, l)
    assert reverse_inverse(i2, l) == r


def test_validate_trace_rejects_non_congruence(i2):
    # id ~ I_1 without I_2 ~ empty
    with pytest.raises(InputError):
        validate_trace(i2, EqRelation.from_blocks(4, [[0, 2]]))


def test_inverse_kernel_of_mu_is_the_normalizer(corpus_member):
    S = corpus_member
    for tau in semilattice_congruences(S):
        assert inverse_kernel(S, mu(S, tau)).mask == normalizer(S, tau).mask


def test_centralizer_is_self_conjugate_in_normalizer(corpus_member):
    S = corpus_member
    for tau in semilattice_congruences(S):
        n, c = normalizer(S, tau), centralizer(S, tau)
        assert c.issubset(n)
        for a in c:
            for b in n:
                assert S.product(b, a, S.inverse(b)) in c


def test_centralizer_of_extreme_traces(corpus_member):
    S = corpus_member
    n = len(S.idempotents)
    omega, iota = EqRelation.universal(n), EqRelation.identity(n)
    assert centralizer(S, omega).mask == inverse_kernel(S, nu(S, omega)).mask
    assert set(centralizer(S, iota).members) == set(S.idempotents)
