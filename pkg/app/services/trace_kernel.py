# app/services/trace_kernel.py
"""
Trace, kernel and inverse kernel of left congruences, together with the
normalizers and centralizer of a trace and the closed-form congruences
nu, mu and chi built from them.

A trace is an EqRelation over idempotent *positions* (S.idempotents[i]);
everything else works on element indices.
"""
from __future__ import annotations

import logging
from typing import Dict, List, Tuple

import numpy as np

from app.services.relations import EqRelation, eq_meet, restrict, is_semilattice_congruence
from app.services.semigroup_core import (
    ElementSubset,
    FiniteInverseSemigroup,
    FullInverseSub,
    is_full_inverse,
)
from app.shared.errors import InputError

logger = logging.getLogger(__name__)

TraceCongruence = EqRelation


class KernelSub(ElementSubset):
    """Full subsemigroup, not necessarily inverse."""


# =========================================================
# Validation helpers
# =========================================================
def validate_trace(S: FiniteInverseSemigroup, tau: EqRelation) -> None:
    if tau.size != len(S.idempotents):
        raise InputError(
            f"trace must relate the {len(S.idempotents)} idempotents, got size {tau.size}"
        )
    if not is_semilattice_congruence(S, tau):
        raise InputError("trace is not a congruence on the semilattice of idempotents")


def validate_full_inverse(S: FiniteInverseSemigroup, T: ElementSubset) -> None:
    if not is_full_inverse(S, T):
        raise InputError("subset is not a full inverse subsemigroup")


def tau_related(S: FiniteInverseSemigroup, tau: EqRelation, e: int, f: int) -> bool:
    """e tau f for idempotent element indices."""
    return tau.related(int(S.idem_pos[e]), int(S.idem_pos[f]))


def identity_trace(S: FiniteInverseSemigroup) -> EqRelation:
    return EqRelation.identity(len(S.idempotents))


def universal_trace(S: FiniteInverseSemigroup) -> EqRelation:
    return EqRelation.universal(len(S.idempotents))


def trace_class_members(S: FiniteInverseSemigroup, tau: EqRelation, e: int) -> Tuple[int, ...]:
    """Idempotent element indices tau-related to e."""
    return tuple(S.idempotents[p] for p in tau.class_of(int(S.idem_pos[e])))


# =========================================================
# Compatibility and duality
# =========================================================
def _reps(rho: EqRelation) -> np.ndarray:
    return np.asarray([rho.representative(a) for a in range(rho.size)], dtype=np.int64)


def is_left_compatible(S: FiniteInverseSemigroup, rho: EqRelation) -> bool:
    """a rho b implies c a rho c b."""
    labels = np.asarray(rho.labels)
    idx = np.arange(S.size)
    return bool(np.array_equal(labels[S.cayley[:, idx]], labels[S.cayley[:, _reps(rho)]]))


def is_right_compatible(S: FiniteInverseSemigroup, rho: EqRelation) -> bool:
    """a rho b implies a c rho b c."""
    labels = np.asarray(rho.labels)
    idx = np.arange(S.size)
    return bool(np.array_equal(labels[S.cayley[idx, :]], labels[S.cayley[_reps(rho), :]]))


def reverse_inverse(S: FiniteInverseSemigroup, rho: EqRelation) -> EqRelation:
    """rho_{-1}: a rho_{-1} b iff a^{-1} rho b^{-1}; swaps left and right congruences."""
    labels = rho.labels
    return EqRelation.from_labels([labels[S.inverse(a)] for a in range(S.size)])


def green_r(S: FiniteInverseSemigroup) -> EqRelation:
    return EqRelation.from_labels([S.left_idempotent(a) for a in range(S.size)])


# =========================================================
# Trace, kernel, inverse kernel
# =========================================================
def trace(S: FiniteInverseSemigroup, rho: EqRelation) -> TraceCongruence:
    tau, _ = restrict(rho, S.idempotents)
    return tau


def kernel(S: FiniteInverseSemigroup, rho: EqRelation) -> KernelSub:
    idem_labels = {rho.labels[e] for e in S.idempotents}
    return KernelSub.from_members(a for a in range(S.size) if rho.labels[a] in idem_labels)


def inverse_kernel(S: FiniteInverseSemigroup, rho: EqRelation) -> FullInverseSub:
    return FullInverseSub.from_members(
        a for a in range(S.size) if rho.related(a, S.left_idempotent(a))
    )


def kernel_from_inverse_kernel(
    S: FiniteInverseSemigroup, tau: EqRelation, T: ElementSubset
) -> KernelSub:
    """Union of the nu_tau classes of the members of T."""
    nu_rel = nu(S, tau)
    labels = {nu_rel.labels[a] for a in T}
    return KernelSub.from_members(a for a in range(S.size) if nu_rel.labels[a] in labels)


# =========================================================
# Normalizers and centralizer
# =========================================================
def _conjugation_preserves(S: FiniteInverseSemigroup, tau: EqRelation, conj: np.ndarray) -> np.ndarray:
    """
    conj[a, i] is the idempotent position of the conjugate of idempotent i by a.
    Row a passes when tau-related positions stay related.
    """
    labels = np.asarray(tau.labels)
    reps = _reps(tau)
    return np.all(labels[conj] == labels[conj[:, reps]], axis=1)


def _left_conjugates(S: FiniteInverseSemigroup) -> np.ndarray:
    """a^{-1} e a for every element a and idempotent e (positions)."""
    e = np.asarray(S.idempotents, dtype=np.int64)
    a = np.arange(S.size)
    return S.idem_pos[S.cayley[S.cayley[S.inv[:, None], e[None, :]], a[:, None]]]


def _right_conjugates(S: FiniteInverseSemigroup) -> np.ndarray:
    """a e a^{-1}"""
    e = np.asarray(S.idempotents, dtype=np.int64)
    a = np.arange(S.size)
    return S.idem_pos[S.cayley[S.cayley[a[:, None], e[None, :]], S.inv[:, None]]]


def left_normalizer(S: FiniteInverseSemigroup, tau: EqRelation) -> ElementSubset:
    ok = _conjugation_preserves(S, tau, _left_conjugates(S))
    return ElementSubset.from_members(np.flatnonzero(ok).tolist())


def right_normalizer(S: FiniteInverseSemigroup, tau: EqRelation) -> ElementSubset:
    ok = _conjugation_preserves(S, tau, _right_conjugates(S))
    return ElementSubset.from_members(np.flatnonzero(ok).tolist())


def normalizers(
    S: FiniteInverseSemigroup, tau: EqRelation
) -> Tuple[ElementSubset, ElementSubset, FullInverseSub]:
    """(N_L, N_R, N) with N = N_L intersected with N_R."""
    n_left = left_normalizer(S, tau)
    n_right = right_normalizer(S, tau)
    n = FullInverseSub.from_mask(n_left.mask & n_right.mask)
    return n_left, n_right, n


def normalizer(S: FiniteInverseSemigroup, tau: EqRelation) -> FullInverseSub:
    return normalizers(S, tau)[2]


def centralizer(S: FiniteInverseSemigroup, tau: EqRelation) -> FullInverseSub:
    """Members a of N(tau) with a e = e for some e tau-related to a^{-1} a."""
    n = normalizer(S, tau)
    members = []
    for a in n:
        for e in trace_class_members(S, tau, S.right_idempotent(a)):
            if S.mul(a, e) == e:
                members.append(a)
                break
    return FullInverseSub.from_members(members)


# =========================================================
# Closed-form congruences
# =========================================================
def nu(S: FiniteInverseSemigroup, tau: EqRelation) -> EqRelation:
    """
    Minimum left congruence with trace tau:
    a nu b iff a^{-1}a tau b^{-1}b and a e = b e for some e tau a^{-1}a.
    """
    rel = EqRelation(S.size)
    groups: Dict[int, List[int]] = {}
    for a in range(S.size):
        groups.setdefault(tau.labels[S.idem_pos[S.right_idempotent(a)]], []).append(a)
    for label, elements in groups.items():
        for p in tau.blocks[label]:
            e = S.idempotents[p]
            seen: Dict[int, int] = {}
            for a in elements:
                ae = S.mul(a, e)
                if ae in seen:
                    rel.union(seen[ae], a)
                else:
                    seen[ae] = a
    return rel.freeze()


def mu(S: FiniteInverseSemigroup, tau: EqRelation) -> EqRelation:
    """
    Maximum left congruence with trace tau:
    a mu b iff a^{-1}bb^{-1}a tau a^{-1}a, b^{-1}aa^{-1}b tau b^{-1}b
    and a^{-1}b, b^{-1}a lie in the left normalizer.
    """
    n_left = left_normalizer(S, tau)

    def related(a: int, b: int) -> bool:
        ai, bi = S.inverse(a), S.inverse(b)
        return (
            tau_related(S, tau, S.product(ai, b, bi, a), S.right_idempotent(a))
            and tau_related(S, tau, S.product(bi, a, ai, b), S.right_idempotent(b))
            and S.mul(ai, b) in n_left
            and S.mul(bi, a) in n_left
        )

    return EqRelation.from_predicate(S.size, related)


def pair_relation(S: FiniteInverseSemigroup, tau: EqRelation, T: ElementSubset) -> EqRelation:
    """
    x ~ y iff x^{-1}y in T, x^{-1}yy^{-1}x tau x^{-1}x and y^{-1}xx^{-1}y tau y^{-1}y.
    An equivalence (indeed a left congruence) whenever (tau, T) is a valid pair.
    """

    def related(x: int, y: int) -> bool:
        xi, yi = S.inverse(x), S.inverse(y)
        return (
            S.mul(xi, y) in T
            and tau_related(S, tau, S.product(xi, y, yi, x), S.right_idempotent(x))
            and tau_related(S, tau, S.product(yi, x, xi, y), S.right_idempotent(y))
        )

    return EqRelation.from_predicate(S.size, related)


def chi(S: FiniteInverseSemigroup, T: ElementSubset) -> EqRelation:
    """The idempotent-separating left congruence with inverse kernel T."""
    validate_full_inverse(S, T)
    return pair_relation(S, identity_trace(S), T)


def kernel_trace_relation(
    S: FiniteInverseSemigroup, K: ElementSubset, tau: EqRelation
) -> EqRelation:
    """
    Reconstruction from kernel and trace:
    a ~ b iff a^{-1}b, b^{-1}a in K, a^{-1}bb^{-1}a tau a^{-1}a, b^{-1}aa^{-1}b tau b^{-1}b.
    """

    def related(a: int, b: int) -> bool:
        ai, bi = S.inverse(a), S.inverse(b)
        return (
            S.mul(ai, b) in K
            and S.mul(bi, a) in K
            and tau_related(S, tau, S.product(ai, b, bi, a), S.right_idempotent(a))
            and tau_related(S, tau, S.product(bi, a, ai, b), S.right_idempotent(b))
        )

    return EqRelation.from_predicate(S.size, related)


def idempotent_separating_part(S: FiniteInverseSemigroup, rho: EqRelation) -> EqRelation:
    """rho intersected with Green's R."""
    return eq_meet(rho, green_r(S))
