# app/services/relations.py
"""
Equivalence relations on element indices, left-congruence closure and the
congruences of a finite semilattice.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.config import settings
from app.services.semigroup_core import FiniteInverseSemigroup
from app.shared.errors import InputError, InvariantViolation

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class EqRelation:
    """
    Union-find over 0..size-1 (path halving, union by rank).

    Freezing fixes a canonical form: blocks sorted by least element, labels[a]
    the position of a's block. Frozen relations hash and compare by that form.
    """

    def __init__(self, size: int):
        if size < 0:
            raise InputError(f"relation size must be non-negative, got {size}")
        self.size = size
        self.parent = list(range(size))
        self.rank = [0] * size
        self.frozen = False
        self._labels: Optional[Tuple[int, ...]] = None
        self._blocks: Optional[Tuple[Tuple[int, ...], ...]] = None

    # ---------- constructors ----------
    @classmethod
    def identity(cls, size: int) -> "EqRelation":
        return cls(size).freeze()

    @classmethod
    def universal(cls, size: int) -> "EqRelation":
        rel = cls(size)
        for a in range(1, size):
            rel.union(0, a)
        return rel.freeze()

    @classmethod
    def from_blocks(cls, size: int, blocks: Iterable[Iterable[int]]) -> "EqRelation":
        rel = cls(size)
        seen = set()
        for block in blocks:
            block = list(block)
            for a in block:
                if not 0 <= a < size:
                    raise InputError(f"index {a} outside 0..{size - 1}")
                if a in seen:
                    raise InputError(f"index {a} appears in two blocks")
                seen.add(a)
            for a in block[1:]:
                rel.union(block[0], a)
        return rel.freeze()

    @classmethod
    def from_labels(cls, labels: Sequence) -> "EqRelation":
        rel = cls(len(labels))
        first: Dict = {}
        for a, lab in enumerate(labels):
            if lab in first:
                rel.union(first[lab], a)
            else:
                first[lab] = a
        return rel.freeze()

    @classmethod
    def from_predicate(cls, size: int, related: Callable[[int, int], bool]) -> "EqRelation":
        """Relation from a predicate already known to be an equivalence."""
        rel = cls(size)
        reps: List[int] = []
        for a in range(size):
            for r in reps:
                if related(r, a):
                    rel.union(r, a)
                    break
            else:
                reps.append(a)
        return rel.freeze()

    def copy(self) -> "EqRelation":
        rel = EqRelation(self.size)
        rel.parent = list(self.parent)
        rel.rank = list(self.rank)
        return rel

    # ---------- union-find ----------
    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        if self.frozen:
            raise InvariantViolation("cannot merge classes of a frozen relation")
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def freeze(self) -> "EqRelation":
        if self.frozen:
            return self
        root_label: Dict[int, int] = {}
        labels = []
        blocks: List[List[int]] = []
        for a in range(self.size):
            root = self.find(a)
            if root not in root_label:
                root_label[root] = len(blocks)
                blocks.append([])
            labels.append(root_label[root])
            blocks[root_label[root]].append(a)
        self._labels = tuple(labels)
        self._blocks = tuple(tuple(b) for b in blocks)
        self.frozen = True
        return self

    # ---------- canonical view ----------
    @property
    def labels(self) -> Tuple[int, ...]:
        return self.freeze()._labels

    @property
    def blocks(self) -> Tuple[Tuple[int, ...], ...]:
        return self.freeze()._blocks

    @property
    def key(self) -> Tuple[int, ...]:
        return self.labels

    @property
    def num_classes(self) -> int:
        return len(self.blocks)

    def related(self, a: int, b: int) -> bool:
        if self.frozen:
            return self._labels[a] == self._labels[b]
        return self.find(a) == self.find(b)

    def class_of(self, a: int) -> Tuple[int, ...]:
        return self.blocks[self.labels[a]]

    def representative(self, a: int) -> int:
        """Least element of a's class."""
        return self.class_of(a)[0]

    def issubset(self, other: "EqRelation") -> bool:
        if self.size != other.size:
            return False
        return all(
            other.related(block[0], a) for block in self.blocks for a in block[1:]
        )

    def is_identity(self) -> bool:
        return self.num_classes == self.size

    def is_universal(self) -> bool:
        return self.num_classes <= 1

    def generating_pairs(self) -> List[Pair]:
        return [(block[0], a) for block in self.blocks for a in block[1:]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, EqRelation):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "EqRelation") -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return "EqRelation(" + "|".join(",".join(map(str, b)) for b in self.blocks) + ")"


@dataclass(frozen=True)
class GenPairSet:
    """Generating pairs, closed under swap."""

    pairs: Tuple[Pair, ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Pair]) -> "GenPairSet":
        out = set()
        for a, b in pairs:
            out.add((int(a), int(b)))
            out.add((int(b), int(a)))
        return cls(tuple(sorted(out)))

    @classmethod
    def from_relation(cls, rho: EqRelation) -> "GenPairSet":
        return cls.from_pairs(rho.generating_pairs())

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


# =========================================================
# Left-congruence closure
# =========================================================
def left_congruence_closure(
    S: FiniteInverseSemigroup,
    R: Iterable[Pair],
    base: Optional[EqRelation] = None,
) -> EqRelation:
    """
    Least left congruence containing R (and `base`, if given).

    Worklist: when a and b merge, every left multiple (c*a, c*b) is queued.
    The pair itself covers the adjoined identity.
    """
    rel = base.copy() if base is not None else EqRelation(S.size)
    cayley = S.cayley
    work: List[Pair] = [(int(a), int(b)) for a, b in R]
    if base is not None:
        for a, b in base.generating_pairs():
            work.extend(zip(cayley[:, a].tolist(), cayley[:, b].tolist()))
    while work:
        a, b = work.pop()
        if rel.union(a, b):
            work.extend(zip(cayley[:, a].tolist(), cayley[:, b].tolist()))
    return rel.freeze()


def rsequence_closure(S: FiniteInverseSemigroup, R: Iterable[Pair]) -> EqRelation:
    """
    The relation of R-sequences: x ~ y iff x = c1 x1, ci yi = c(i+1) x(i+1),
    cn yn = y with (xi, yi) in R and ci in S with identity adjoined. That is
    the equivalence closure of {(c x, c y)}.
    """
    rel = EqRelation(S.size)
    cayley = S.cayley
    for a, b in R:
        rel.union(a, b)
        for c in range(S.size):
            rel.union(int(cayley[c, a]), int(cayley[c, b]))
    return rel.freeze()


def restrict(rho: EqRelation, subset: Sequence[int]) -> Tuple[EqRelation, Tuple[int, ...]]:
    """rho on `subset`, reindexed; returns the relation and the index map."""
    index_map = tuple(int(a) for a in subset)
    labels = rho.labels
    return EqRelation.from_labels([labels[a] for a in index_map]), index_map


def lift(rel: EqRelation, index_map: Sequence[int], size: int) -> EqRelation:
    """Inverse of restrict: relation on 0..size-1 that is trivial off the subset."""
    out = EqRelation(size)
    for block in rel.blocks:
        for a in block[1:]:
            out.union(index_map[block[0]], index_map[a])
    return out.freeze()


def eq_meet(rho1: EqRelation, rho2: EqRelation) -> EqRelation:
    if rho1.size != rho2.size:
        raise InputError("relations of different sizes")
    return EqRelation.from_labels(list(zip(rho1.labels, rho2.labels)))


def eq_join_transitive(rho1: EqRelation, *others: EqRelation) -> EqRelation:
    """Transitive closure of the union."""
    rel = rho1.copy()
    for rho in others:
        if rho.size != rho1.size:
            raise InputError("relations of different sizes")
        for a, b in rho.generating_pairs():
            rel.union(a, b)
    return rel.freeze()


# =========================================================
# Semilattice congruences (relations on idempotent positions)
# =========================================================
def idempotent_table(S: FiniteInverseSemigroup) -> np.ndarray:
    """Product table of E(S) in idempotent positions."""
    e = np.asarray(S.idempotents, dtype=np.int64)
    return S.idem_pos[S.cayley[np.ix_(e, e)]]


def semilattice_congruence_closure(
    S: FiniteInverseSemigroup,
    pairs: Iterable[Pair],
    base: Optional[EqRelation] = None,
) -> EqRelation:
    """Least semilattice congruence on E(S) (positions) containing `pairs`."""
    table = idempotent_table(S)
    rel = base.copy() if base is not None else EqRelation(len(S.idempotents))
    work: List[Pair] = [(int(a), int(b)) for a, b in pairs]
    if base is not None:
        for a, b in base.generating_pairs():
            work.extend(zip(table[:, a].tolist(), table[:, b].tolist()))
    while work:
        a, b = work.pop()
        if rel.union(a, b):
            work.extend(zip(table[:, a].tolist(), table[:, b].tolist()))
    return rel.freeze()


def is_semilattice_congruence(S: FiniteInverseSemigroup, tau: EqRelation) -> bool:
    table = idempotent_table(S)
    if tau.size != table.shape[0]:
        return False
    labels = np.asarray(tau.labels)
    reps = np.asarray([tau.representative(a) for a in range(tau.size)])
    return bool(np.array_equal(labels[table[:, np.arange(tau.size)]], labels[table[:, reps]]))


def compatible_partitions(table: np.ndarray) -> List[EqRelation]:
    """Restricted-growth backtracking; a constraint is checked once all four entries are placed."""
    n = table.shape[0]
    assign = [-1] * n
    found: List[EqRelation] = []

    def consistent(i: int) -> bool:
        for j in range(i + 1):
            if assign[j] != assign[i]:
                continue
            for g in range(n):
                x, y = table[g, i], table[g, j]
                if x <= i and y <= i and assign[x] != assign[y]:
                    return False
        # earlier related pairs whose products only now became assigned
        for j in range(i):
            for k in range(j):
                if assign[j] != assign[k]:
                    continue
                for g in range(n):
                    x, y = table[g, j], table[g, k]
                    if (x == i or y == i) and x <= i and y <= i and assign[x] != assign[y]:
                        return False
        return True

    def extend(i: int, blocks: int) -> None:
        if i == n:
            found.append(EqRelation.from_labels(assign))
            return
        for b in range(blocks + 1):
            assign[i] = b
            if consistent(i):
                extend(i + 1, max(blocks, b + 1))
        assign[i] = -1

    extend(0, 0)
    return found


def join_closure(principals: Iterable[EqRelation], size: int) -> List[EqRelation]:
    """Close a family of relations under pairwise transitive join; adds the identity."""
    found = {EqRelation.identity(size)}
    frontier = set(principals) - found
    found |= frontier
    while frontier:
        new = set()
        for rho in frontier:
            for sigma in list(found):
                joined = eq_join_transitive(rho, sigma)
                if joined not in found and joined not in new:
                    new.add(joined)
        found |= new
        frontier = new
    return sorted(found)


def semilattice_congruences(
    S: FiniteInverseSemigroup,
    threshold: Optional[int] = None,
) -> List[EqRelation]:
    """All congruences on E(S), as relations on idempotent positions, sorted canonically."""
    threshold = threshold if threshold is not None else settings.PARTITION_ENUMERATION_LIMIT
    n = len(S.idempotents)
    if n <= threshold:
        congruences = sorted(compatible_partitions(idempotent_table(S)))
        strategy = "partitions"
    else:
        principals = [
            semilattice_congruence_closure(S, [(a, b)]) for a in range(n) for b in range(a + 1, n)
        ]
        congruences = join_closure(principals, n)
        strategy = "principal-joins"
    logger.info("%d semilattice congruences on %d idempotents (%s)", len(congruences), n, strategy)
    return congruences
