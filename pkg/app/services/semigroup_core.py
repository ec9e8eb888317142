# app/services/semigroup_core.py
"""
Partial-permutation arithmetic and finite inverse semigroups.

Maps act left to right: (p * q)(i) = q(p(i)). With this convention a * inv(a)
is the identity on the domain of a, and a left congruence is compatible with
multiplication on the left, S[c, a] = c * a.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.config import settings
from app.shared.errors import InputError, InvariantViolation, ResourceLimitError

logger = logging.getLogger(__name__)

UNDEFINED = -1


# =========================================================
# Partial permutations
# =========================================================
@dataclass(frozen=True, order=False)
class PartialPerm:
    """Injective partial map on {0..degree-1}; image[i] is UNDEFINED off the domain."""

    degree: int
    image: Tuple[int, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise InputError(f"degree must be positive, got {self.degree}")
        if len(self.image) != self.degree:
            raise InputError(
                f"image has length {len(self.image)}, expected degree {self.degree}"
            )
        defined = [j for j in self.image if j != UNDEFINED]
        if any(j < 0 or j >= self.degree for j in defined):
            raise InputError(f"image {self.label} leaves 1..{self.degree}")
        if len(set(defined)) != len(defined):
            raise InputError(f"image {self.label} is not injective")

    @classmethod
    def from_mapping(cls, degree: int, mapping: Dict[int, int]) -> "PartialPerm":
        """Build from a 1-based point -> image dictionary."""
        image = [UNDEFINED] * degree
        for point, target in mapping.items():
            if not 1 <= int(point) <= degree:
                raise InputError(f"point {point} outside 1..{degree}")
            image[int(point) - 1] = int(target) - 1
        return cls(degree, tuple(image))

    @classmethod
    def identity(cls, degree: int) -> "PartialPerm":
        return cls(degree, tuple(range(degree)))

    @classmethod
    def idempotent_on(cls, degree: int, points: Iterable[int]) -> "PartialPerm":
        """Partial identity on the given 1-based points."""
        return cls.from_mapping(degree, {p: p for p in points})

    def to_mapping(self) -> Dict[int, int]:
        return {i + 1: j + 1 for i, j in enumerate(self.image) if j != UNDEFINED}

    @property
    def domain(self) -> Tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.image) if j != UNDEFINED)

    @property
    def rank(self) -> int:
        return sum(1 for j in self.image if j != UNDEFINED)

    @property
    def is_idempotent(self) -> bool:
        return all(j == UNDEFINED or j == i for i, j in enumerate(self.image))

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        # rank descending, then lexicographic image array
        return (-self.rank, self.image)

    @property
    def label(self) -> str:
        return "[" + ",".join("-" if j == UNDEFINED else str(j + 1) for j in self.image) + "]"

    def compose(self, other: "PartialPerm") -> "PartialPerm":
        return compose(self, other)

    def invert(self) -> "PartialPerm":
        return invert(self)

    def __mul__(self, other: "PartialPerm") -> "PartialPerm":
        return compose(self, other)

    def __repr__(self) -> str:
        return f"PartialPerm{self.label}"


def compose(p: PartialPerm, q: PartialPerm) -> PartialPerm:
    """Left-to-right composition: result(i) = q(p(i))."""
    if p.degree != q.degree:
        raise InputError(f"degree mismatch: {p.degree} vs {q.degree}")
    return PartialPerm(
        p.degree,
        tuple(UNDEFINED if j == UNDEFINED else q.image[j] for j in p.image),
    )


def invert(p: PartialPerm) -> PartialPerm:
    image = [UNDEFINED] * p.degree
    for i, j in enumerate(p.image):
        if j != UNDEFINED:
            image[j] = i
    return PartialPerm(p.degree, tuple(image))


# =========================================================
# Finite inverse semigroups
# =========================================================
class FiniteInverseSemigroup:
    """
    Fully enumerated finite inverse semigroup on element indices 0..m-1.

    Tables are numpy arrays frozen after construction:
      - cayley[a, b] = a * b
      - inv[a]      = a^{-1}
      - leq[a, b]   = (a <= b) in the natural partial order
    """

    def __init__(
        self,
        cayley: np.ndarray,
        elements: Optional[Sequence[PartialPerm]] = None,
        inverse: Optional[Sequence[int]] = None,
        labels: Optional[Sequence[str]] = None,
        name: Optional[str] = None,
    ):
        cayley = np.asarray(cayley, dtype=np.int64)
        if cayley.ndim != 2 or cayley.shape[0] != cayley.shape[1] or cayley.shape[0] == 0:
            raise InvariantViolation("Cayley table must be a nonempty square array")
        m = cayley.shape[0]
        if cayley.min() < 0 or cayley.max() >= m:
            raise InvariantViolation("Cayley table entries out of range")

        self.name = name
        self.cayley = cayley
        self.elements: Optional[Tuple[PartialPerm, ...]] = tuple(elements) if elements else None
        self._labels = tuple(labels) if labels else None

        if inverse is None:
            inverse = self._find_inverses()
        self.inv = np.asarray(inverse, dtype=np.int64)

        diag = cayley[np.arange(m), np.arange(m)]
        self.idempotents: Tuple[int, ...] = tuple(int(e) for e in np.flatnonzero(diag == np.arange(m)))
        self.idem_pos = np.full(m, -1, dtype=np.int64)
        for pos, e in enumerate(self.idempotents):
            self.idem_pos[e] = pos
        self.idempotent_mask = sum(1 << e for e in self.idempotents)

        self._check_inverse_laws()

        # a <= b  iff  a = (a a^{-1}) b
        left_idem = cayley[np.arange(m), self.inv]
        self.leq = cayley[left_idem, :] == np.arange(m)[:, None]

        for table in (self.cayley, self.inv, self.idem_pos, self.leq):
            table.setflags(write=False)

    # ---------- construction helpers ----------
    def _find_inverses(self) -> List[int]:
        m = self.size
        c = self.cayley
        inverse = []
        for a in range(m):
            candidates = [b for b in range(m) if c[c[a, b], a] == a and c[c[b, a], b] == b]
            if len(candidates) != 1:
                raise InvariantViolation(
                    f"element {a} has {len(candidates)} inverses; table is not an inverse semigroup"
                )
            inverse.append(candidates[0])
        return inverse

    def _check_inverse_laws(self) -> None:
        c, inv = self.cayley, self.inv
        m = self.size
        idx = np.arange(m)
        if not np.array_equal(c[c[idx, inv], idx], idx):
            raise InvariantViolation("a a^{-1} a = a fails")
        if not np.array_equal(c[c[inv, idx], inv], inv):
            raise InvariantViolation("a^{-1} a a^{-1} = a^{-1} fails")
        e = np.asarray(self.idempotents, dtype=np.int64)
        if not np.array_equal(c[np.ix_(e, e)], c[np.ix_(e, e)].T):
            raise InvariantViolation("idempotents do not commute")

    def verify_associativity(self, rng: Optional[np.random.Generator] = None) -> None:
        """Exhaustive below the configured limit, sampled triples above it."""
        c = self.cayley
        m = self.size
        if m <= settings.ASSOCIATIVITY_EXHAUSTIVE_LIMIT:
            left = c[c, :]                                  # (ab)c
            right = c[np.arange(m)[:, None, None], c[None, :, :]]  # a(bc)
            if not np.array_equal(left, right):
                raise InvariantViolation("Cayley table is not associative")
            return
        rng = rng or np.random.default_rng(settings.RANDOM_SEED)
        a, b, d = rng.integers(0, m, size=(3, settings.ASSOCIATIVITY_SAMPLE_TRIPLES))
        if not np.array_equal(c[c[a, b], d], c[a, c[b, d]]):
            raise InvariantViolation("Cayley table is not associative (sampled)")

    # ---------- arithmetic ----------
    @property
    def size(self) -> int:
        return int(self.cayley.shape[0])

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def product(self, *factors: int) -> int:
        out = factors[0]
        for f in factors[1:]:
            out = int(self.cayley[out, f])
        return out

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def left_idempotent(self, a: int) -> int:
        """a a^{-1}"""
        return int(self.cayley[a, self.inv[a]])

    def right_idempotent(self, a: int) -> int:
        """a^{-1} a"""
        return int(self.cayley[self.inv[a], a])

    def conjugate(self, a: int, e: int) -> int:
        """a e a^{-1}"""
        return int(self.cayley[self.cayley[a, e], self.inv[a]])

    def is_idempotent(self, a: int) -> bool:
        return bool(self.idem_pos[a] >= 0)

    @property
    def non_idempotents(self) -> Tuple[int, ...]:
        return tuple(a for a in range(self.size) if self.idem_pos[a] < 0)

    def element_label(self, a: int) -> str:
        if self.elements is not None:
            return self.elements[a].label
        if self._labels is not None:
            return self._labels[a]
        return str(a)

    def index_of(self, perm: PartialPerm) -> int:
        if self.elements is None:
            raise InputError("semigroup has no partial permutation elements")
        try:
            return self.elements.index(perm)
        except ValueError:
            raise InputError(f"{perm.label} is not an element of the semigroup") from None

    def __repr__(self) -> str:
        return f"FiniteInverseSemigroup(name={self.name!r}, size={self.size}, |E|={len(self.idempotents)})"


def closure(
    generators: Sequence[PartialPerm],
    cap: Optional[int] = None,
    name: Optional[str] = None,
) -> FiniteInverseSemigroup:
    """Inverse subsemigroup of I_n generated by `generators` and their inverses."""
    if not generators:
        raise InputError("an inverse semigroup needs at least one generator")
    degree = generators[0].degree
    if any(g.degree != degree for g in generators):
        raise InputError("all generators must share a degree")
    cap = cap or settings.MAX_ELEMENTS

    gens: List[PartialPerm] = []
    for g in generators:
        for h in (g, invert(g)):
            if h not in gens:
                gens.append(h)

    seen = dict.fromkeys(gens)
    queue = list(gens)
    while queue:
        p = queue.pop()
        for g in gens:
            q = compose(p, g)
            if q not in seen:
                seen[q] = None
                queue.append(q)
                if len(seen) > cap:
                    raise ResourceLimitError(
                        f"closure exceeds the cap of {cap} elements",
                        payload={"cap": cap},
                    )

    elements = sorted(seen, key=lambda p: p.sort_key)
    index = {p.image: i for i, p in enumerate(elements)}
    images = np.array([p.image for p in elements], dtype=np.int64)
    m = len(elements)

    cayley = np.empty((m, m), dtype=np.int64)
    for a in range(m):
        row = images[a]
        defined = row != UNDEFINED
        composed = np.full((m, degree), UNDEFINED, dtype=np.int64)
        composed[:, defined] = images[:, row[defined]]
        cayley[a] = [index[tuple(r)] for r in composed.tolist()]

    inverse = [index[invert(p).image] for p in elements]
    S = FiniteInverseSemigroup(cayley, elements=elements, inverse=inverse, name=name)
    S.verify_associativity()
    logger.info("closure %s: %d elements, %d idempotents", name or "", m, len(S.idempotents))
    return S


def natural_leq(S: FiniteInverseSemigroup, a: int, b: int) -> bool:
    return bool(S.leq[a, b])


def green_R(S: FiniteInverseSemigroup, a: int, b: int) -> bool:
    return S.left_idempotent(a) == S.left_idempotent(b)


# =========================================================
# Subsets of elements (bitmask backed)
# =========================================================
@dataclass(frozen=True)
class ElementSubset:
    mask: int
    members: Tuple[int, ...]

    @classmethod
    def from_members(cls, members: Iterable[int]):
        members = tuple(sorted(set(int(a) for a in members)))
        return cls(sum(1 << a for a in members), members)

    @classmethod
    def from_mask(cls, mask: int):
        members = []
        i = 0
        m = mask
        while m:
            if m & 1:
                members.append(i)
            m >>= 1
            i += 1
        return cls(mask, tuple(members))

    def __contains__(self, a: int) -> bool:
        return bool((self.mask >> a) & 1)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def issubset(self, other: "ElementSubset") -> bool:
        return self.mask & ~other.mask == 0

    def intersection_mask(self, other: "ElementSubset") -> int:
        return self.mask & other.mask


class FullInverseSub(ElementSubset):
    """Full inverse subsemigroup: contains E(S), closed under product and inverse."""


def is_full_inverse(S: FiniteInverseSemigroup, subset: ElementSubset) -> bool:
    if S.idempotent_mask & ~subset.mask:
        return False
    for a in subset.members:
        if S.inverse(a) not in subset:
            return False
        for b in subset.members:
            if S.mul(a, b) not in subset:
                return False
    return True


def close_subset(S: FiniteInverseSemigroup, seeds: Iterable[int]) -> FullInverseSub:
    """Least full inverse subsemigroup containing `seeds`."""
    members = list(S.idempotents)
    mask = S.idempotent_mask
    queue = []
    for a in seeds:
        for x in (int(a), S.inverse(int(a))):
            if not (mask >> x) & 1:
                mask |= 1 << x
                members.append(x)
                queue.append(x)
    while queue:
        x = queue.pop()
        for y in list(members):
            for z in (S.mul(x, y), S.mul(y, x)):
                if not (mask >> z) & 1:
                    mask |= 1 << z
                    members.append(z)
                    queue.append(z)
                    zi = S.inverse(z)
                    if not (mask >> zi) & 1:
                        mask |= 1 << zi
                        members.append(zi)
                        queue.append(zi)
    return FullInverseSub.from_mask(mask)


def join_subsemigroups(S: FiniteInverseSemigroup, *subs: ElementSubset) -> FullInverseSub:
    seeds = set()
    for t in subs:
        seeds.update(t.members)
    return close_subset(S, seeds)


def meet_subsemigroups(first: ElementSubset, *others: ElementSubset) -> FullInverseSub:
    mask = first.mask
    for t in others:
        mask &= t.mask
    return FullInverseSub.from_mask(mask)


def full_inverse_subsemigroups(
    S: FiniteInverseSemigroup,
    cap: Optional[int] = None,
) -> List[FullInverseSub]:
    """
    All full inverse subsemigroups, sorted by membership bitmask.

    Every full inverse subsemigroup is E(S) closed with a set X of
    non-idempotents, so growing known subsemigroups one generator at a time
    (memoized on the bitmask) reaches all of them.
    """
    cap = cap or settings.MAX_SUBSEMIGROUPS
    base = close_subset(S, ())
    found: Dict[int, FullInverseSub] = {base.mask: base}
    step_cache: Dict[Tuple[int, int], int] = {}
    queue = [base]
    while queue:
        t = queue.pop()
        for x in S.non_idempotents:
            if x in t:
                continue
            key = (t.mask, min(x, S.inverse(x)))
            if key in step_cache:
                continue
            grown = close_subset(S, t.members + (x,))
            step_cache[key] = grown.mask
            if grown.mask not in found:
                found[grown.mask] = grown
                queue.append(grown)
                if len(found) > cap:
                    raise ResourceLimitError(
                        f"more than {cap} full inverse subsemigroups",
                        payload={"cap": cap, "setting": "MAX_SUBSEMIGROUPS"},
                    )
    subs = sorted(found.values(), key=lambda t: t.mask)
    logger.info("%d full inverse subsemigroups", len(subs))
    return subs


def quotient_semigroup(
    S: FiniteInverseSemigroup,
    members: Sequence[int],
    labels_of: Sequence[int],
    name: Optional[str] = None,
) -> FiniteInverseSemigroup:
    """
    Quotient of the inverse subsemigroup `members` of S by a congruence given
    as class labels (labels_of[i] is the class of members[i]).

    Raises InvariantViolation if the product is not well defined on classes.
    """
    position = {a: i for i, a in enumerate(members)}
    classes = sorted(set(labels_of))
    class_index = {c: i for i, c in enumerate(classes)}
    k = len(classes)
    table = np.full((k, k), -1, dtype=np.int64)
    for a in members:
        ca = class_index[labels_of[position[a]]]
        for b in members:
            cb = class_index[labels_of[position[b]]]
            ab = S.mul(a, b)
            if ab not in position:
                raise InvariantViolation("subset is not closed under multiplication")
            cab = class_index[labels_of[position[ab]]]
            if table[ca, cb] == -1:
                table[ca, cb] = cab
            elif table[ca, cb] != cab:
                raise InvariantViolation("quotient product is not well defined")
    blocks: Dict[int, List[int]] = {}
    for a in members:
        blocks.setdefault(class_index[labels_of[position[a]]], []).append(a)
    labels = ["{" + ",".join(str(a) for a in blocks[i]) + "}" for i in range(k)]
    return FiniteInverseSemigroup(table, labels=labels, name=name)
