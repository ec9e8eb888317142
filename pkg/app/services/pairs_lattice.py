# app/services/pairs_lattice.py
"""
Inverse congruence pairs (tau, T): validity, reconstruction of the left
congruence, meets and joins, trace classes and inverse-kernel classes,
two-sided congruence pairs and the assembled lattice of left congruences.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from app.config import settings
from app.services.relations import (
    EqRelation,
    eq_join_transitive,
    eq_meet,
    restrict,
    semilattice_congruence_closure,
    semilattice_congruences,
)
from app.services.semigroup_core import (
    ElementSubset,
    FiniteInverseSemigroup,
    FullInverseSub,
    full_inverse_subsemigroups,
    join_subsemigroups,
    meet_subsemigroups,
    quotient_semigroup,
)
from app.services.trace_kernel import (
    centralizer,
    chi,
    green_r,
    idempotent_separating_part,
    inverse_kernel,
    is_left_compatible,
    is_right_compatible,
    kernel,
    normalizer,
    nu,
    pair_relation,
    tau_related,
    trace,
    trace_class_members,
    validate_full_inverse,
    validate_trace,
)
from app.shared.errors import InputError, InvariantViolation, ResourceLimitError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IKPair:
    """Coordinates (trace, inverse kernel) of a left congruence; validity is a separate predicate."""

    tau: EqRelation
    sub: FullInverseSub

    @property
    def key(self) -> Tuple[Tuple[int, ...], int]:
        return (self.tau.key, self.sub.mask)

    def leq(self, other: "IKPair") -> bool:
        return self.tau.issubset(other.tau) and self.sub.issubset(other.sub)


def validate_pair(S: FiniteInverseSemigroup, pair: IKPair) -> None:
    validate_trace(S, pair.tau)
    validate_full_inverse(S, pair.sub)


# =========================================================
# Validity predicates
# =========================================================
def _d2_violation(S: FiniteInverseSemigroup, pair: IKPair) -> Optional[int]:
    """First x outside T with e tau x^{-1}x, f tau xx^{-1} and xe, fx in T."""
    tau, T = pair.tau, pair.sub
    for x in range(S.size):
        if x in T:
            continue
        right_ok = any(
            S.mul(x, e) in T for e in trace_class_members(S, tau, S.right_idempotent(x))
        )
        if not right_ok:
            continue
        left_ok = any(
            S.mul(f, x) in T for f in trace_class_members(S, tau, S.left_idempotent(x))
        )
        if left_ok:
            return x
    return None


def is_inverse_congruence_pair(S: FiniteInverseSemigroup, pair: IKPair) -> bool:
    validate_pair(S, pair)
    if not pair.sub.issubset(normalizer(S, pair.tau)):
        return False
    return _d2_violation(S, pair) is None


def class_minimum(S: FiniteInverseSemigroup, tau: EqRelation, e: int) -> int:
    """Least idempotent of e's tau-class: the product of the class."""
    return S.product(*trace_class_members(S, tau, e))


def minimal_elements(S: FiniteInverseSemigroup, T: ElementSubset) -> List[int]:
    """a outside T with every a e in T or equal to a."""
    out = []
    for a in range(S.size):
        if a in T:
            continue
        if all(S.mul(a, e) == a or S.mul(a, e) in T for e in S.idempotents):
            out.append(a)
    return out


def is_icp_via_minimals(S: FiniteInverseSemigroup, pair: IKPair) -> bool:
    """Validity through T-minimal elements; needs T inside N(tau)."""
    validate_pair(S, pair)
    if not pair.sub.issubset(normalizer(S, pair.tau)):
        raise InputError("T is not contained in the normalizer of tau")
    for a in minimal_elements(S, pair.sub):
        d, r = S.left_idempotent(a), S.right_idempotent(a)
        if d != class_minimum(S, pair.tau, d) and r != class_minimum(S, pair.tau, r):
            logger.debug("minimal element %d has neither idempotent minimum in its class", a)
            return False
    return True


def is_icp_via_normality(S: FiniteInverseSemigroup, pair: IKPair) -> bool:
    """
    Fixed-T criterion: tau is normal in T, and for a outside T and e with
    a e in T and a^{-1}a tau e, aa^{-1} is not tau-related to a e a^{-1}.
    """
    validate_pair(S, pair)
    tau, T = pair.tau, pair.sub
    if not T.issubset(normalizer(S, tau)):
        return False
    for a in range(S.size):
        if a in T:
            continue
        for e in S.idempotents:
            if S.mul(a, e) not in T:
                continue
            if tau_related(S, tau, S.right_idempotent(a), e) and tau_related(
                S, tau, S.left_idempotent(a), S.conjugate(a, e)
            ):
                return False
    return True


# =========================================================
# Reconstruction
# =========================================================
def _require_valid(S: FiniteInverseSemigroup, pair: IKPair) -> None:
    if not is_inverse_congruence_pair(S, pair):
        raise InputError("not an inverse congruence pair")


def rho_from_pair(S: FiniteInverseSemigroup, pair: IKPair) -> EqRelation:
    _require_valid(S, pair)
    return pair_relation(S, pair.tau, pair.sub)


def rho_right_from_pair(S: FiniteInverseSemigroup, pair: IKPair) -> EqRelation:
    """
    The right congruence with the same trace and inverse kernel:
    x ~ y iff xy^{-1} in T, xy^{-1}yx^{-1} tau xx^{-1} and yx^{-1}xy^{-1} tau yy^{-1}.
    """
    _require_valid(S, pair)
    tau, T = pair.tau, pair.sub

    def related(x: int, y: int) -> bool:
        xi, yi = S.inverse(x), S.inverse(y)
        return (
            S.mul(x, yi) in T
            and tau_related(S, tau, S.product(x, yi, y, xi), S.left_idempotent(x))
            and tau_related(S, tau, S.product(y, xi, x, yi), S.left_idempotent(y))
        )

    return EqRelation.from_predicate(S.size, related)


def pair_from_congruence(S: FiniteInverseSemigroup, rho: EqRelation) -> IKPair:
    if rho.size != S.size or not is_left_compatible(S, rho):
        raise InputError("relation is not a left congruence on this semigroup")
    return IKPair(trace(S, rho), inverse_kernel(S, rho))


phi = pair_from_congruence


def theta(S: FiniteInverseSemigroup, pair: IKPair) -> EqRelation:
    """nu_tau joined with chi_T; defined on every well-formed pair."""
    validate_pair(S, pair)
    return eq_join_transitive(nu(S, pair.tau), chi(S, pair.sub))


@dataclass
class Decomposition:
    nu_part: EqRelation
    chi_part: EqRelation
    joined: EqRelation
    witnesses: Dict[int, int] = field(default_factory=dict)


def decompose(S: FiniteInverseSemigroup, rho: EqRelation) -> Decomposition:
    """
    rho = nu_{trace(rho)} v (rho meet R); for each a in the kernel an
    idempotent f with f chi f a and f a nu a.
    """
    pair = pair_from_congruence(S, rho)
    nu_part = nu(S, pair.tau)
    chi_part = idempotent_separating_part(S, rho)
    joined = eq_join_transitive(nu_part, chi_part)
    if joined != rho:
        logger.error("decomposition join differs from the input relation")
        raise InvariantViolation("nu v chi does not reproduce the relation")

    witnesses: Dict[int, int] = {}
    for a in kernel(S, rho):
        aa = S.left_idempotent(a)
        preferred = [S.mul(e, aa) for e in S.idempotents if rho.related(e, a)]
        for f in preferred + list(S.idempotents):
            fa = S.mul(f, a)
            if chi_part.related(f, fa) and nu_part.related(fa, a):
                witnesses[a] = f
                break
        else:
            raise InvariantViolation(f"no decomposition witness for element {a}")
    return Decomposition(nu_part, chi_part, joined, witnesses)


# =========================================================
# Meet and join
# =========================================================
def meet_pairs(S: FiniteInverseSemigroup, p1: IKPair, p2: IKPair) -> IKPair:
    _require_valid(S, p1)
    _require_valid(S, p2)
    return IKPair(eq_meet(p1.tau, p2.tau), meet_subsemigroups(p1.sub, p2.sub))


def saturate(
    S: FiniteInverseSemigroup, tau: EqRelation, T: ElementSubset
) -> FullInverseSub:
    """Union of the psi-classes (nu_tau inside N(tau)) meeting T."""
    n = normalizer(S, tau)
    nu_rel = nu(S, tau)
    hit = set()
    for t in T:
        for a in nu_rel.class_of(t):
            if a in n:
                hit.add(a)
    return FullInverseSub.from_members(hit)


def join_pairs(S: FiniteInverseSemigroup, p1: IKPair, p2: IKPair) -> IKPair:
    """
    xi is the least trace containing tau1 v tau2 whose normalizer holds
    T* = T1 v T2; the inverse kernel is T* saturated by psi for xi.
    """
    _require_valid(S, p1)
    _require_valid(S, p2)
    t_star = join_subsemigroups(S, p1.sub, p2.sub)
    xi = semilattice_congruence_closure(S, [], base=eq_join_transitive(p1.tau, p2.tau))
    rounds = 0
    while not t_star.issubset(normalizer(S, xi)):
        rounds += 1
        extra = []
        for a in t_star:
            for p, q in xi.generating_pairs():
                e, f = S.idempotents[p], S.idempotents[q]
                extra.append((int(S.idem_pos[S.conjugate(a, e)]), int(S.idem_pos[S.conjugate(a, f)])))
        xi = semilattice_congruence_closure(S, extra, base=xi)
    logger.debug("join trace stabilised after %d conjugation rounds", rounds)
    return IKPair(xi, saturate(S, xi, t_star))


# =========================================================
# Trace classes
# =========================================================
def psi(S: FiniteInverseSemigroup, tau: EqRelation) -> Tuple[EqRelation, Tuple[int, ...]]:
    """
    On N(tau): a psi b iff a^{-1}a tau b^{-1}b and ab^{-1} in C(tau).
    Returns the relation on N(tau) and its index map into S.
    """
    n = normalizer(S, tau)
    c = centralizer(S, tau)
    members = n.members

    def related(i: int, j: int) -> bool:
        a, b = members[i], members[j]
        return (
            tau_related(S, tau, S.right_idempotent(a), S.right_idempotent(b))
            and S.mul(a, S.inverse(b)) in c
        )

    return EqRelation.from_predicate(len(members), related), members


def psi_from_nu(S: FiniteInverseSemigroup, tau: EqRelation) -> Tuple[EqRelation, Tuple[int, ...]]:
    return restrict(nu(S, tau), normalizer(S, tau).members)


def trace_class_quotient(S: FiniteInverseSemigroup, tau: EqRelation) -> FiniteInverseSemigroup:
    """N(tau)/psi with the induced product."""
    rel, members = psi_from_nu(S, tau)
    return quotient_semigroup(S, members, rel.labels, name="N/psi")


def is_psi_saturated(S: FiniteInverseSemigroup, tau: EqRelation, T: ElementSubset) -> bool:
    rel, members = psi_from_nu(S, tau)
    for block in rel.blocks:
        inside = [members[i] in T for i in block]
        if any(inside) and not all(inside):
            return False
    return True


def trace_class(
    S: FiniteInverseSemigroup,
    tau: EqRelation,
    subs: Optional[Sequence[FullInverseSub]] = None,
) -> List[IKPair]:
    """Valid pairs with trace tau: psi-saturated full inverse subsemigroups of N(tau)."""
    validate_trace(S, tau)
    subs = subs if subs is not None else full_inverse_subsemigroups(S)
    n = normalizer(S, tau)
    pairs = [
        IKPair(tau, T) for T in subs if T.issubset(n) and is_psi_saturated(S, tau, T)
    ]
    expected = len(full_inverse_subsemigroups(trace_class_quotient(S, tau)))
    if expected != len(pairs):
        logger.error("trace class has %d pairs but N/psi has %d subsemigroups", len(pairs), expected)
        raise InvariantViolation("trace class size differs from the quotient count")
    return pairs


def trace_class_bounds(S: FiniteInverseSemigroup, tau: EqRelation) -> Tuple[IKPair, IKPair]:
    """(tau, C(tau)) and (tau, N(tau)): least and greatest pairs with trace tau."""
    validate_trace(S, tau)
    return IKPair(tau, centralizer(S, tau)), IKPair(tau, normalizer(S, tau))


def ik_class(
    S: FiniteInverseSemigroup,
    T: FullInverseSub,
    traces: Optional[Sequence[EqRelation]] = None,
) -> List[IKPair]:
    """Valid pairs with inverse kernel T; always contains (iota, T)."""
    validate_full_inverse(S, T)
    traces = traces if traces is not None else semilattice_congruences(S)
    return [IKPair(tau, T) for tau in traces if is_inverse_congruence_pair(S, IKPair(tau, T))]


# =========================================================
# Two-sided congruences
# =========================================================
def is_self_conjugate(S: FiniteInverseSemigroup, T: ElementSubset) -> bool:
    return all(S.conjugate(a, t) in T for a in range(S.size) for t in T)


def is_congruence_pair(S: FiniteInverseSemigroup, pair: IKPair) -> bool:
    validate_pair(S, pair)
    tau, T = pair.tau, pair.sub
    if normalizer(S, tau).mask != (1 << S.size) - 1 or not is_self_conjugate(S, T):
        return False
    for x in range(S.size):
        if x in T:
            continue
        for e in trace_class_members(S, tau, S.right_idempotent(x)):
            if S.mul(x, e) in T:
                return False
    return all(
        tau_related(S, tau, S.left_idempotent(x), S.right_idempotent(x)) for x in T
    )


def P_from_pair(S: FiniteInverseSemigroup, pair: IKPair) -> EqRelation:
    """a ~ b iff a^{-1}a tau b^{-1}b and ab^{-1} in T."""
    if not is_congruence_pair(S, pair):
        raise InputError("not a congruence pair")
    tau, T = pair.tau, pair.sub
    return EqRelation.from_predicate(
        S.size,
        lambda a, b: tau_related(S, tau, S.right_idempotent(a), S.right_idempotent(b))
        and S.mul(a, S.inverse(b)) in T,
    )


def is_two_sided(S: FiniteInverseSemigroup, rho: EqRelation) -> bool:
    return is_left_compatible(S, rho) and is_right_compatible(S, rho)


# =========================================================
# Lattice assembly
# =========================================================
@dataclass
class LatticeNode:
    pair: IKPair
    rho: EqRelation


class CongruenceLattice:
    """Left congruences of S ordered by inclusion, with Hasse cover edges."""

    def __init__(self, S: FiniteInverseSemigroup, nodes: List[LatticeNode]):
        self.S = S
        self.nodes = nodes
        self._index = {node.rho: i for i, node in enumerate(nodes)}
        k = len(nodes)
        self.leq = np.zeros((k, k), dtype=bool)
        for i, a in enumerate(nodes):
            for j, b in enumerate(nodes):
                self.leq[i, j] = a.rho.issubset(b.rho)
        self.leq.setflags(write=False)

        order = nx.DiGraph()
        order.add_nodes_from(range(k))
        order.add_edges_from(
            (i, j) for i in range(k) for j in range(k) if i != j and self.leq[i, j]
        )
        self.graph = nx.transitive_reduction(order)
        self.hasse: List[Tuple[int, int]] = sorted(self.graph.edges())

    def __len__(self) -> int:
        return len(self.nodes)

    def index_of(self, rho: EqRelation) -> int:
        try:
            return self._index[rho]
        except KeyError:
            raise InputError("relation is not a left congruence of this lattice") from None

    @cached_property
    def minimum(self) -> int:
        return next(i for i in range(len(self)) if self.leq[i, :].all())

    @cached_property
    def maximum(self) -> int:
        return next(i for i in range(len(self)) if self.leq[:, i].all())

    def join(self, i: int, j: int) -> int:
        return self.index_of(eq_join_transitive(self.nodes[i].rho, self.nodes[j].rho))

    def meet(self, i: int, j: int) -> int:
        return self.index_of(eq_meet(self.nodes[i].rho, self.nodes[j].rho))

    def height(self) -> int:
        """Edges in a longest chain."""
        return int(nx.dag_longest_path_length(self.graph))

    def maximal_elements(self, indices: Sequence[int]) -> List[int]:
        return [
            i for i in indices if not any(j != i and self.leq[i, j] for j in indices)
        ]

    def has_maximum(self, indices: Sequence[int]) -> bool:
        return len(self.maximal_elements(indices)) == 1


def enumerate_pairs(
    S: FiniteInverseSemigroup,
    traces: Optional[Sequence[EqRelation]] = None,
    subs: Optional[Sequence[FullInverseSub]] = None,
) -> Tuple[List[IKPair], int]:
    """Valid pairs in canonical order, and the number of candidates examined."""
    traces = traces if traces is not None else semilattice_congruences(S)
    subs = subs if subs is not None else full_inverse_subsemigroups(S)
    candidates = len(traces) * len(subs)
    if candidates > settings.MAX_PAIRS:
        raise ResourceLimitError(
            f"{candidates} candidate pairs exceed the cap of {settings.MAX_PAIRS}",
            payload={"cap": settings.MAX_PAIRS, "setting": "MAX_PAIRS"},
        )
    valid = [
        IKPair(tau, T)
        for tau in traces
        for T in subs
        if is_inverse_congruence_pair(S, IKPair(tau, T))
    ]
    valid.sort(key=lambda p: p.key)
    return valid, candidates


def build_lattice(
    S: FiniteInverseSemigroup,
    traces: Optional[Sequence[EqRelation]] = None,
    subs: Optional[Sequence[FullInverseSub]] = None,
) -> CongruenceLattice:
    if S.size > settings.MAX_ELEMENTS:
        raise ResourceLimitError(
            f"semigroup of size {S.size} exceeds the cap of {settings.MAX_ELEMENTS}",
            payload={"cap": settings.MAX_ELEMENTS},
        )
    valid, candidates = enumerate_pairs(S, traces, subs)
    nodes = [LatticeNode(p, pair_relation(S, p.tau, p.sub)) for p in valid]
    lattice = CongruenceLattice(S, nodes)
    logger.info(
        "lattice of %s: %d left congruences from %d candidate pairs, %d cover edges",
        S.name or "semigroup", len(nodes), candidates, len(lattice.hasse),
    )
    return lattice


# =========================================================
# Lattice-map counterexamples
# =========================================================
def theta_meet_counterexample(
    S: FiniteInverseSemigroup,
    traces: Optional[Sequence[EqRelation]] = None,
    subs: Optional[Sequence[FullInverseSub]] = None,
) -> Optional[Tuple[IKPair, IKPair]]:
    """Pairs p1, p2 with theta(p1 meet p2) different from theta(p1) meet theta(p2)."""
    traces = traces if traces is not None else semilattice_congruences(S)
    subs = subs if subs is not None else full_inverse_subsemigroups(S)
    product = [IKPair(tau, T) for tau in traces for T in subs]
    images = {p: theta(S, p) for p in product}
    for i, p1 in enumerate(product):
        for p2 in product[i + 1:]:
            met = IKPair(eq_meet(p1.tau, p2.tau), meet_subsemigroups(p1.sub, p2.sub))
            if images[met] != eq_meet(images[p1], images[p2]):
                return p1, p2
    return None


def phi_join_counterexample(
    S: FiniteInverseSemigroup, lattice: CongruenceLattice
) -> Optional[Tuple[int, int]]:
    """Node indices i, j with phi(rho_i v rho_j) different from phi(rho_i) v phi(rho_j)."""
    for i, a in enumerate(lattice.nodes):
        for j in range(i + 1, len(lattice)):
            b = lattice.nodes[j]
            joined = lattice.nodes[lattice.join(i, j)].pair
            componentwise = IKPair(
                eq_join_transitive(a.pair.tau, b.pair.tau),
                join_subsemigroups(S, a.pair.sub, b.pair.sub),
            )
            if joined != componentwise:
                return i, j
    return None


def green_r_pair(S: FiniteInverseSemigroup) -> IKPair:
    return pair_from_congruence(S, green_r(S))
