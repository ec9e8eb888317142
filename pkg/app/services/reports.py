# app/services/reports.py
"""Builds the pydantic reports returned by the CLI and the HTTP routes."""
import logging

from app.schemas.bicyclic import BicyclicCheckOut
from app.schemas.lattice import (
    DecomposeOut,
    LatticeOut,
    NodeOut,
    PairArithmeticOut,
    PairCheckOut,
    PairOut,
    PairsOut,
)
from app.services.bicyclic import (
    BicyclicTrace,
    TkdSub,
    is_icp_bicyclic,
    l_of,
    normalizer_bicyclic,
    sample_normalizer_agreement,
)
from app.services.genset import generating_decomposition
from app.services.pairs_lattice import (
    CongruenceLattice,
    IKPair,
    decompose,
    enumerate_pairs,
    is_icp_via_minimals,
    is_icp_via_normality,
    is_inverse_congruence_pair,
    join_pairs,
    meet_pairs,
    pair_from_congruence,
    rho_from_pair,
    validate_pair,
)
from app.services.relations import EqRelation, eq_join_transitive, eq_meet, semilattice_congruences
from app.services.semigroup_core import FiniteInverseSemigroup, full_inverse_subsemigroups
from app.services.text_formats import (
    element_table,
    format_sub,
    format_tkd,
    format_trace,
    trace_blocks,
)
from app.services.trace_kernel import normalizer
from app.shared.errors import InputError

logger = logging.getLogger(__name__)


def blocks(rho: EqRelation):
    return [list(block) for block in rho.blocks]


def pair_out(S: FiniteInverseSemigroup, pair: IKPair) -> PairOut:
    return PairOut(
        tau=trace_blocks(S, pair.tau),
        sub=list(pair.sub),
        text=f"{format_trace(S, pair.tau)}/{format_sub(pair.sub)}",
    )


def lattice_report(lattice: CongruenceLattice) -> LatticeOut:
    S = lattice.S
    return LatticeOut(
        semigroup_id=S.name or "",
        elements=element_table(S),
        nodes=[
            NodeOut(index=i, pair=pair_out(S, node.pair), rho=blocks(node.rho))
            for i, node in enumerate(lattice.nodes)
        ],
        hasse=lattice.hasse,
        minimum=lattice.minimum,
        maximum=lattice.maximum,
        height=lattice.height(),
    )


def pairs_report(S: FiniteInverseSemigroup) -> PairsOut:
    traces = semilattice_congruences(S)
    subs = full_inverse_subsemigroups(S)
    valid, candidates = enumerate_pairs(S, traces, subs)
    return PairsOut(
        semigroup_id=S.name or "",
        elements=element_table(S),
        trace_count=len(traces),
        subsemigroup_count=len(subs),
        candidate_count=candidates,
        pairs=[pair_out(S, p) for p in valid],
    )


def check_pair_report(S: FiniteInverseSemigroup, pair: IKPair) -> PairCheckOut:
    validate_pair(S, pair)
    valid = is_inverse_congruence_pair(S, pair)
    inside = pair.sub.issubset(normalizer(S, pair.tau))
    return PairCheckOut(
        pair=pair_out(S, pair),
        valid=valid,
        valid_via_minimals=is_icp_via_minimals(S, pair) if inside else None,
        valid_via_normality=is_icp_via_normality(S, pair),
        in_normalizer=inside,
        rho=blocks(rho_from_pair(S, pair)) if valid else None,
    )


def pair_arithmetic_report(
    S: FiniteInverseSemigroup, op: str, p1: IKPair, p2: IKPair
) -> PairArithmeticOut:
    if op == "join":
        result = join_pairs(S, p1, p2)
        expected = eq_join_transitive(rho_from_pair(S, p1), rho_from_pair(S, p2))
    elif op == "meet":
        result = meet_pairs(S, p1, p2)
        expected = eq_meet(rho_from_pair(S, p1), rho_from_pair(S, p2))
    else:
        raise InputError(f"op must be 'join' or 'meet', got {op!r}")
    rho = rho_from_pair(S, result)
    if rho != expected:
        logger.error("pair %s disagrees with the %s of the relations", op, op)
    return PairArithmeticOut(
        op=op,
        p1=pair_out(S, p1),
        p2=pair_out(S, p2),
        result=pair_out(S, result),
        rho=blocks(rho),
        cross_check=rho == expected,
    )


def decompose_report(S: FiniteInverseSemigroup, rho: EqRelation) -> DecomposeOut:
    parts = decompose(S, rho)
    nu_pairs, chi_pairs = generating_decomposition(S, rho)
    return DecomposeOut(
        rho=blocks(rho),
        pair=pair_out(S, pair_from_congruence(S, rho)),
        nu_part=blocks(parts.nu_part),
        chi_part=blocks(parts.chi_part),
        witnesses=parts.witnesses,
        nu_generators=nu_pairs,
        chi_generators=chi_pairs,
    )


def bicyclic_check_report(tau: BicyclicTrace, sub: TkdSub, samples: int = 200) -> BicyclicCheckOut:
    return BicyclicCheckOut(
        trace=tau.describe(),
        sub=format_tkd(sub),
        valid=is_icp_bicyclic(tau, sub),
        normalizer=format_tkd(normalizer_bicyclic(tau)),
        l=None if tau.has_infinite_class else l_of(tau),
        threshold=tau.threshold,
        period=tau.period,
        infinite_start=tau.infinite_start,
        sampled_mismatches=len(sample_normalizer_agreement(tau, samples=samples)),
    )
