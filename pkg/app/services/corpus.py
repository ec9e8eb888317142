# app/services/corpus.py
"""Pinned small inverse semigroups used by the oracle, the CLI and the tests."""
from functools import lru_cache
from typing import Callable, Dict, List

from app.services.semigroup_core import FiniteInverseSemigroup, PartialPerm, closure
from app.shared.errors import InputError


def _chain(length: int) -> List[PartialPerm]:
    # identities on {1..i}, a chain under the natural order
    return [PartialPerm.idempotent_on(length, range(1, i + 1)) for i in range(1, length + 1)]


def _e_i2() -> List[PartialPerm]:
    return [
        PartialPerm.identity(2),
        PartialPerm.idempotent_on(2, [1]),
        PartialPerm.idempotent_on(2, [2]),
    ]


def _i2() -> List[PartialPerm]:
    alpha = PartialPerm.from_mapping(2, {1: 2, 2: 1})
    beta = PartialPerm.from_mapping(2, {1: 2})
    return [alpha, beta]


def _beta() -> List[PartialPerm]:
    return [PartialPerm.from_mapping(2, {1: 2})]


def _b2() -> List[PartialPerm]:
    # B_2 again, embedded in degree 3; results must match `beta`
    return [PartialPerm.from_mapping(3, {2: 3})]


def _clifford6() -> List[PartialPerm]:
    # Z_3 on {1..6} above Z_3 on {1,2,3}
    sigma = PartialPerm.from_mapping(6, {1: 2, 2: 3, 3: 1, 4: 5, 5: 6, 6: 4})
    return [sigma, PartialPerm.idempotent_on(6, [1, 2, 3])]


CORPUS: Dict[str, Callable[[], List[PartialPerm]]] = {
    "chain2": lambda: _chain(2),
    "chain3": lambda: _chain(3),
    "chain4": lambda: _chain(4),
    "chain5": lambda: _chain(5),
    "e_i2": _e_i2,
    "i2": _i2,
    "beta": _beta,
    "b2": _b2,
    "clifford6": _clifford6,
}


@lru_cache(maxsize=None)
def corpus_semigroup(name: str) -> FiniteInverseSemigroup:
    try:
        generators = CORPUS[name]()
    except KeyError:
        raise InputError(
            f"unknown corpus member {name!r}",
            payload={"known": sorted(CORPUS)},
        ) from None
    return closure(generators, name=name)


def corpus_ids() -> List[str]:
    return list(CORPUS)
