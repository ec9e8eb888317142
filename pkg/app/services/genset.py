# app/services/genset.py
"""
Generating sets of left congruences: normalization into idempotent and
R-related pairs, the trace of a join, trivial classes, almost finitely
generated subsemigroups and finite-scale checks on finite generation of
the universal congruence.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from app.config import settings
from app.schemas.genset import (
    AlmostFGWitness,
    GeneratorWitness,
    NoetherianReport,
    OmegaFGReport,
)
from app.services.pairs_lattice import CongruenceLattice, build_lattice
from app.services.relations import (
    EqRelation,
    GenPairSet,
    eq_join_transitive,
    left_congruence_closure,
    semilattice_congruence_closure,
    semilattice_congruences,
)
from app.services.semigroup_core import (
    ElementSubset,
    FiniteInverseSemigroup,
    FullInverseSub,
    close_subset,
    full_inverse_subsemigroups,
    green_R,
)
from app.services.trace_kernel import chi, inverse_kernel, nu, trace
from app.shared.errors import InputError, InvariantViolation

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class NormalizedGenSet:
    """Pairs of idempotents, and pairs (e, a) / (a, e) with a R e."""

    idempotent_pairs: Tuple[Pair, ...]
    r_pairs: Tuple[Pair, ...]

    @property
    def pairs(self) -> Tuple[Pair, ...]:
        return self.idempotent_pairs + self.r_pairs

    def __len__(self) -> int:
        return len(self.pairs)


def normalize_generating_set(S: FiniteInverseSemigroup, H: Iterable[Pair]) -> NormalizedGenSet:
    """
    Replace each (a, b) by (a^{-1}b, a^{-1}bb^{-1}a), (a^{-1}a, a^{-1}bb^{-1}a)
    and (b^{-1}aa^{-1}b, b^{-1}b); the generated left congruence is unchanged.
    """
    out = set()
    for a, b in GenPairSet.from_pairs(H):
        ai, bi = S.inverse(a), S.inverse(b)
        x = S.mul(ai, b)
        e = S.product(ai, b, bi, a)
        out.add((x, e))
        out.add((S.right_idempotent(a), e))
        out.add((S.product(bi, a, ai, b), S.right_idempotent(b)))
    symmetric = GenPairSet.from_pairs(out)
    idem, r_pairs = [], []
    for p, q in symmetric:
        if S.is_idempotent(p) and S.is_idempotent(q):
            idem.append((p, q))
        elif green_R(S, p, q) and (S.is_idempotent(p) or S.is_idempotent(q)):
            r_pairs.append((p, q))
        else:
            raise InvariantViolation(f"pair ({p},{q}) has neither normalized shape")
    return NormalizedGenSet(tuple(idem), tuple(r_pairs))


def trace_of_join_generators(
    S: FiniteInverseSemigroup, tau: EqRelation, Y: ElementSubset
) -> EqRelation:
    """Congruence on E generated by tau and its conjugates a e a^{-1} for a in Y."""
    pairs = list(tau.generating_pairs())
    for a in Y:
        for p, q in tau.generating_pairs():
            e, f = S.idempotents[p], S.idempotents[q]
            pairs.append((int(S.idem_pos[S.conjugate(a, e)]), int(S.idem_pos[S.conjugate(a, f)])))
    return semilattice_congruence_closure(S, pairs)


def chi_of_inverse_subsemigroup(S: FiniteInverseSemigroup, Y: Iterable[int]) -> EqRelation:
    """chi with inverse kernel generated by Y and E(S)."""
    return chi(S, close_subset(S, Y))


# =========================================================
# Trivial classes
# =========================================================
def has_trivial_class(rho: EqRelation, a: int) -> bool:
    return len(rho.class_of(a)) == 1


def trivial_class_via_components(
    S: FiniteInverseSemigroup, tau: EqRelation, T: ElementSubset, e: int
) -> bool:
    """[e] is trivial in rho_(tau,T) iff it is trivial in tau and [e]_R meets T only in e."""
    if not S.is_idempotent(e):
        raise InputError(f"element {e} is not an idempotent")
    if len(tau.class_of(int(S.idem_pos[e]))) != 1:
        return False
    return all(a == e for a in T if green_R(S, a, e))


# =========================================================
# Almost finitely generated subsemigroups
# =========================================================
def almost_finitely_generated_witness(
    S: FiniteInverseSemigroup, T: FullInverseSub
) -> AlmostFGWitness:
    """Greedy X with T = <X, E>, and the check chi_T = <(x, x x^{-1}) : x in X>."""
    generators: List[int] = []
    current = close_subset(S, ())
    for a in T:
        if a not in current:
            generators.append(a)
            current = close_subset(S, generators)
    generated = left_congruence_closure(S, [(x, S.left_idempotent(x)) for x in generators])
    return AlmostFGWitness(
        sub=list(T.members),
        generators=generators,
        chi_generated=current.mask == T.mask and generated == chi(S, T),
    )


def generating_decomposition(
    S: FiniteInverseSemigroup, rho: EqRelation
) -> Tuple[List[Pair], List[Pair]]:
    """
    Finite generating sets for the trace-minimal and idempotent-separating
    parts: rho = <nu pairs> v <chi pairs>.
    """
    tau = trace(S, rho)
    nu_pairs = [(S.idempotents[p], S.idempotents[q]) for p, q in tau.generating_pairs()]
    witness = almost_finitely_generated_witness(S, inverse_kernel(S, rho))
    chi_pairs = [(x, S.left_idempotent(x)) for x in witness.generators]
    return nu_pairs, chi_pairs


# =========================================================
# Maximal idempotents and the universal congruence
# =========================================================
def maximal_idempotents(S: FiniteInverseSemigroup) -> List[int]:
    return [
        e for e in S.idempotents
        if not any(f != e and S.leq[e, f] for f in S.idempotents)
    ]


def lower_covers(S: FiniteInverseSemigroup, e: int) -> List[int]:
    below = [f for f in S.idempotents if f != e and S.leq[f, e]]
    return [f for f in below if not any(g != f and S.leq[f, g] for g in below)]


def inverse_subsemigroup_generated(S: FiniteInverseSemigroup, gens: Iterable[int]) -> ElementSubset:
    """Inverse subsemigroup generated by gens (idempotents are not added)."""
    members = set()
    queue = []
    for a in gens:
        for x in (int(a), S.inverse(int(a))):
            if x not in members:
                members.add(x)
                queue.append(x)
    while queue:
        x = queue.pop()
        for y in list(members):
            for z in (S.mul(x, y), S.mul(y, x)):
                if z not in members:
                    members.add(z)
                    queue.append(z)
    return ElementSubset.from_members(members)


def generates_universal(
    S: FiniteInverseSemigroup, X: Sequence[int], Y: Sequence[int]
) -> bool:
    """omega = chi_|Y| v nu_<X x X>."""
    positions = [int(S.idem_pos[e]) for e in X]
    tau = semilattice_congruence_closure(S, [(positions[0], p) for p in positions[1:]]) if positions \
        else EqRelation.identity(len(S.idempotents))
    joined = eq_join_transitive(nu(S, tau), chi_of_inverse_subsemigroup(S, Y))
    return joined.is_universal()


def idempotents_bounded_by_generators(
    S: FiniteInverseSemigroup, X: Sequence[int], Y: Sequence[int]
) -> bool:
    """
    Every idempotent with a nontrivial class in nu_<X x X> v chi_|Y| lies
    below a maximal idempotent of the inverse subsemigroup generated by X and Y.
    """
    positions = [int(S.idem_pos[e]) for e in X]
    tau = semilattice_congruence_closure(S, [(positions[0], p) for p in positions[1:]]) if positions \
        else EqRelation.identity(len(S.idempotents))
    rho = eq_join_transitive(nu(S, tau), chi_of_inverse_subsemigroup(S, Y))
    w = inverse_subsemigroup_generated(S, list(X) + list(Y))
    w_idem = [e for e in w if S.is_idempotent(e)]
    tops = [m for m in w_idem if not any(f != m and S.leq[m, f] for f in w_idem)]
    return all(
        any(S.leq[e, m] for m in tops)
        for e in S.idempotents
        if not has_trivial_class(rho, e)
    )


def congruence_class_of_upset(
    S: FiniteInverseSemigroup, F: Sequence[int]
) -> Tuple[Tuple[int, ...], bool]:
    """
    The up-set K of F, and whether K is a class of <F x F> (expected when F
    is a subsemilattice holding every maximal idempotent).
    """
    upset = tuple(e for e in S.idempotents if any(S.leq[f, e] for f in F))
    positions = [int(S.idem_pos[f]) for f in F]
    tau = semilattice_congruence_closure(S, [(positions[0], p) for p in positions[1:]])
    klass = tuple(sorted(S.idempotents[p] for p in tau.class_of(positions[0])))
    return upset, tuple(sorted(upset)) == klass


def _witness_search(S: FiniteInverseSemigroup) -> Optional[Tuple[List[int], List[int]]]:
    tops = maximal_idempotents(S)
    pool = list(tops)
    for m in tops:
        for f in lower_covers(S, m):
            if f not in pool:
                pool.append(f)
    pool = pool[: max(settings.OMEGA_FG_MAX_POOL, len(tops))]
    extras = [e for e in pool if e not in tops]
    singles = sorted({min(a, S.inverse(a)) for a in S.non_idempotents})
    max_y = min(settings.OMEGA_FG_MAX_GENERATORS, len(singles))
    for total in range(0, len(extras) + max_y + 1):
        for ny in range(0, min(total, max_y) + 1):
            nx_extra = total - ny
            if nx_extra > len(extras):
                continue
            for xs in itertools.combinations(extras, nx_extra):
                X = tops + list(xs)
                for Y in itertools.combinations(singles, ny):
                    if generates_universal(S, X, list(Y)):
                        return X, list(Y)
    return None


def omega_fg_analysis(S: FiniteInverseSemigroup) -> OmegaFGReport:
    tops = maximal_idempotents(S)
    below = all(any(S.leq[e, m] for m in tops) for e in S.idempotents)
    found = _witness_search(S)
    if found is None:
        logger.warning("bounded omega witness search failed for %s; using X = E, Y = S \\ E", S.name)
        X, Y, minimal = list(S.idempotents), list(S.non_idempotents), False
    else:
        (X, Y), minimal = found, True
    w = inverse_subsemigroup_generated(S, X + Y)
    w_idem = [f for f in w if S.is_idempotent(f)]
    condition = all(any(S.mul(a, f) in w for f in w_idem) for a in range(S.size))
    logger.info("omega witness for %s: |X|=%d |Y|=%d", S.name, len(X), len(Y))
    return OmegaFGReport(
        semigroup_id=S.name or "",
        maximal_idempotents=tops,
        every_idempotent_below_maximal=below,
        witness=GeneratorWitness(idempotents=X, elements=Y, minimal=minimal),
        subsemigroup_condition=condition,
        subsemigroup_members=list(w.members),
    )


# =========================================================
# Ascending chains at finite scale
# =========================================================
def poset_height(items: Sequence, leq) -> int:
    """Edges in a longest chain of the order `leq` on items."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(items)))
    graph.add_edges_from(
        (i, j)
        for i, a in enumerate(items)
        for j, b in enumerate(items)
        if i != j and leq(a, b)
    )
    return int(nx.dag_longest_path_length(graph))


def noetherian_report(
    S: FiniteInverseSemigroup, lattice: Optional[CongruenceLattice] = None
) -> NoetherianReport:
    subs = full_inverse_subsemigroups(S)
    traces = semilattice_congruences(S)
    lattice = lattice or build_lattice(S, traces, subs)
    sub_height = poset_height(subs, lambda a, b: a.issubset(b))
    trace_height = poset_height(traces, lambda a, b: a.issubset(b))
    lattice_height = lattice.height()
    all_fg = all(almost_finitely_generated_witness(S, T).chi_generated for T in subs)
    return NoetherianReport(
        semigroup_id=S.name or "",
        subsemigroup_height=sub_height,
        trace_height=trace_height,
        lattice_height=lattice_height,
        height_bound_holds=lattice_height <= sub_height + trace_height,
        all_subsemigroups_finitely_generated=all_fg,
        left_noetherian=all_fg,
    )
