# app/services/bicyclic.py
"""
Left congruences on the bicyclic monoid B = N0 x N0,
(a,b)(c,d) = (a-b+t, d-c+t) with t = max(b,c).

Congruences on E(B) = {(s,s)} are partitions of N0 into intervals. The
finitely described ones carry a prefix of class sizes followed by either one
infinite class or a periodic pattern of class sizes.
"""
from __future__ import annotations

import bisect
import itertools
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from app.config import settings
from app.shared.errors import InputError

logger = logging.getLogger(__name__)


# =========================================================
# Elements
# =========================================================
@dataclass(frozen=True)
class BicyclicElement:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise InputError(f"bicyclic coordinates must be non-negative, got ({self.a},{self.b})")

    @property
    def is_idempotent(self) -> bool:
        return self.a == self.b

    def __mul__(self, other: "BicyclicElement") -> "BicyclicElement":
        return bmul(self, other)

    def inverse(self) -> "BicyclicElement":
        return binv(self)

    def __repr__(self) -> str:
        return f"({self.a},{self.b})"


def bmul(x: BicyclicElement, y: BicyclicElement) -> BicyclicElement:
    t = max(x.b, y.a)
    return BicyclicElement(x.a - x.b + t, y.b - y.a + t)


def binv(x: BicyclicElement) -> BicyclicElement:
    return BicyclicElement(x.b, x.a)


def idempotent(s: int) -> BicyclicElement:
    return BicyclicElement(s, s)


# =========================================================
# Full inverse subsemigroups T_{k,d} and E(B)
# =========================================================
@dataclass(frozen=True)
class TkdSub:
    """T_{k,d} = E(B) plus {(x,y) : x,y >= k, d | x-y}; k = d = None is E(B)."""

    k: Optional[int] = None
    d: Optional[int] = None

    def __post_init__(self):
        if (self.k is None) != (self.d is None):
            raise InputError("T_{k,d} needs both k and d, or neither for E(B)")
        if self.k is not None and (self.k < 0 or self.d < 1):
            raise InputError(f"T_{{k,d}} needs k >= 0 and d >= 1, got k={self.k}, d={self.d}")

    @classmethod
    def idempotents(cls) -> "TkdSub":
        return cls()

    @classmethod
    def of(cls, k: int, d: int) -> "TkdSub":
        return cls(k, d)

    @property
    def is_idempotents(self) -> bool:
        return self.k is None

    def __contains__(self, x: BicyclicElement) -> bool:
        return tkd_contains(self, x)

    def __repr__(self) -> str:
        return "E(B)" if self.is_idempotents else f"T_{{{self.k},{self.d}}}"


def tkd_contains(sub: TkdSub, x: BicyclicElement) -> bool:
    if x.is_idempotent:
        return True
    if sub.is_idempotents:
        return False
    return x.a >= sub.k and x.b >= sub.k and (x.a - x.b) % sub.d == 0


def tkd_leq(sub1: TkdSub, sub2: TkdSub) -> bool:
    """T_{k,d} inside T_{j,c} iff j <= k and c | d; E(B) is the least element."""
    if sub1.is_idempotents:
        return True
    if sub2.is_idempotents:
        return False
    return sub2.k <= sub1.k and sub1.d % sub2.d == 0


# =========================================================
# Congruences on E(B)
# =========================================================
def _primitive(pattern: Tuple[int, ...]) -> Tuple[int, ...]:
    n = len(pattern)
    for p in range(1, n + 1):
        if n % p == 0 and pattern[:p] * (n // p) == pattern:
            return pattern[:p]
    return pattern


@dataclass(frozen=True)
class BicyclicTrace:
    """
    prefix: sizes of the initial classes; pattern: periodic class sizes, or
    None when everything after the prefix is one infinite class.

    Stored minimal: the pattern is primitive and the prefix never ends with
    the pattern's last size.
    """

    prefix: Tuple[int, ...] = ()
    pattern: Optional[Tuple[int, ...]] = (1,)

    def __post_init__(self):
        prefix = tuple(int(m) for m in self.prefix)
        if any(m < 1 for m in prefix):
            raise InputError(f"class sizes must be positive, got {list(prefix)}")
        pattern = self.pattern
        if pattern is not None:
            pattern = tuple(int(m) for m in pattern)
            if not pattern or any(m < 1 for m in pattern):
                raise InputError(f"periodic pattern must be nonempty and positive, got {list(pattern)}")
            pattern = _primitive(pattern)
            while prefix and prefix[-1] == pattern[-1]:
                pattern = (prefix[-1],) + pattern[:-1]
                prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "pattern", pattern)
        object.__setattr__(self, "_starts", tuple(itertools.accumulate((0,) + prefix)))
        object.__setattr__(self, "_pattern_ends", tuple(itertools.accumulate(pattern)) if pattern else ())

    @classmethod
    def identity(cls) -> "BicyclicTrace":
        return cls((), (1,))

    @classmethod
    def universal(cls) -> "BicyclicTrace":
        return cls((), None)

    @classmethod
    def infinite_from(cls, prefix: Sequence[int]) -> "BicyclicTrace":
        return cls(tuple(prefix), None)

    @classmethod
    def periodic(cls, prefix: Sequence[int], pattern: Sequence[int]) -> "BicyclicTrace":
        return cls(tuple(prefix), tuple(pattern))

    # ---------- derived data ----------
    @property
    def has_infinite_class(self) -> bool:
        return self.pattern is None

    @property
    def threshold(self) -> int:
        """k: where the infinite class or the periodic part begins."""
        return self._starts[-1]

    @property
    def infinite_start(self) -> Optional[int]:
        return self.threshold if self.has_infinite_class else None

    @property
    def period(self) -> Optional[int]:
        return sum(self.pattern) if self.pattern is not None else None

    @property
    def horizon(self) -> int:
        """A point past which the partition repeats (or is constant)."""
        if self.has_infinite_class:
            return self.threshold + 2
        return self.threshold + 2 * self.period

    def class_index(self, x: int) -> int:
        if x < 0:
            raise InputError(f"idempotent index must be non-negative, got {x}")
        k = self.threshold
        if x < k:
            return bisect.bisect_right(self._starts, x) - 1
        if self.has_infinite_class:
            return len(self.prefix)
        q, r = divmod(x - k, self.period)
        pos = bisect.bisect_right(self._pattern_ends, r)
        return len(self.prefix) + q * len(self.pattern) + pos

    def related(self, x: int, y: int) -> bool:
        return self.class_index(x) == self.class_index(y)

    def is_class_start(self, x: int) -> bool:
        return x == 0 or not self.related(x - 1, x)

    def class_sizes(self, count: int) -> List[Optional[int]]:
        """m_1..m_count; the infinite class has size None."""
        sizes: List[Optional[int]] = list(self.prefix)
        if self.has_infinite_class:
            sizes.append(None)
        else:
            cycle = itertools.cycle(self.pattern)
            while len(sizes) < count:
                sizes.append(next(cycle))
        return sizes[:count]

    def class_maxima(self, count: int) -> List[Optional[int]]:
        """c_u = -1 + m_1 + ... + m_u; None for the infinite class."""
        out: List[Optional[int]] = []
        total = -1
        for m in self.class_sizes(count):
            if m is None:
                out.append(None)
                break
            total += m
            out.append(total)
        return out

    def describe(self) -> str:
        tail = "inf" if self.has_infinite_class else "per([" + ",".join(map(str, self.pattern)) + "])"
        return "prefix=[" + ",".join(map(str, self.prefix)) + "];tail=" + tail


def trace_related(tau: BicyclicTrace, x: int, y: int) -> bool:
    return tau.related(x, y)


def l_of(tau: BicyclicTrace) -> int:
    """
    Least l with related(x, y) <=> related(x+d, y+d) for all x, y >= l:
    k minus the smaller of the last prefix size and the last pattern size,
    and 0 when the prefix is empty.
    """
    if tau.has_infinite_class:
        raise InputError("l(tau) is defined only for a periodic tail")
    if not tau.prefix:
        return 0
    return tau.threshold - min(tau.prefix[-1], tau.pattern[-1])


def normalizer_bicyclic(tau: BicyclicTrace) -> TkdSub:
    if tau.has_infinite_class:
        return TkdSub(tau.infinite_start, 1)
    return TkdSub(l_of(tau), tau.period)


def is_icp_bicyclic(tau: BicyclicTrace, sub: TkdSub) -> bool:
    """
    (tau, T) is an inverse congruence pair iff T = E(B); or tau has an
    infinite class from n and T = T_{n,c}; or tau is periodic with period d
    and T = T_{j,c} with d | c and j = l(tau) or j a class start at or past k.
    """
    if sub.is_idempotents:
        return True
    if tau.has_infinite_class:
        return sub.k == tau.infinite_start
    if sub.d % tau.period != 0:
        return False
    return sub.k == l_of(tau) or (sub.k >= tau.threshold and tau.is_class_start(sub.k))


def nu_bicyclic_related(
    tau: BicyclicTrace, x: BicyclicElement, y: BicyclicElement, side: str = "left"
) -> bool:
    """Minimum left (or right) congruence with trace tau."""
    if x.b - x.a != y.b - y.a:
        return False
    if side == "left":
        return tau.related(x.b, y.b)
    if side == "right":
        return tau.related(x.a, y.a)
    raise InputError(f"side must be 'left' or 'right', got {side!r}")


# =========================================================
# Finite-window checks
# =========================================================
def left_conjugate(x: BicyclicElement, s: int) -> int:
    """x^{-1}(s,s)x as an idempotent index."""
    return x.b - x.a + max(s, x.a)


def right_conjugate(x: BicyclicElement, s: int) -> int:
    """x(s,s)x^{-1}"""
    return x.a - x.b + max(s, x.b)


def in_normalizer_by_conjugation(
    tau: BicyclicTrace, x: BicyclicElement, bound: Optional[int] = None
) -> bool:
    """
    Conjugation test on idempotents (s,s), s below the window. Classes are
    intervals and conjugation is monotone, so adjacent related pairs suffice.
    """
    window = max(bound or settings.BICYCLIC_SAMPLE_BOUND, x.a + x.b + tau.horizon)
    for s in range(window):
        if not tau.related(s, s + 1):
            continue
        if not tau.related(left_conjugate(x, s), left_conjugate(x, s + 1)):
            return False
        if not tau.related(right_conjugate(x, s), right_conjugate(x, s + 1)):
            return False
    return True


def sample_normalizer_agreement(
    tau: BicyclicTrace,
    samples: int = 200,
    bound: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> List[BicyclicElement]:
    """Sampled elements where the T_{k,d} formula and the conjugation test disagree."""
    bound = bound or settings.BICYCLIC_SAMPLE_BOUND
    rng = rng or np.random.default_rng(settings.RANDOM_SEED)
    n = normalizer_bicyclic(tau)
    coords = rng.integers(0, bound, size=(samples, 2))
    mismatches = []
    for a, b in coords.tolist():
        x = BicyclicElement(a, b)
        if tkd_contains(n, x) != in_normalizer_by_conjugation(tau, x, bound):
            mismatches.append(x)
    if mismatches:
        logger.warning("normalizer formula disagrees with conjugation on %d samples for %s",
                       len(mismatches), tau.describe())
    return mismatches


def is_shift_invariant(tau: BicyclicTrace, l: int, d: int, x: int, y: int) -> bool:
    """For x, y >= l: related(x, y) iff related(x + d, y + d)."""
    if x < l or y < l:
        return True
    return tau.related(x, y) == tau.related(x + d, y + d)


def is_saturated_window(tau: BicyclicTrace, sub: TkdSub, bound: int = 40) -> bool:
    """
    T inside N(tau), and no left-nu class inside N(tau) (restricted to
    elements with coordinates below bound) is split by T.
    """
    n = normalizer_bicyclic(tau)
    if not tkd_leq(sub, n):
        return False
    membership = {}
    for a in range(bound):
        for b in range(bound):
            x = BicyclicElement(a, b)
            if not tkd_contains(n, x):
                continue
            key = (tau.class_index(b), b - a)
            inside = tkd_contains(sub, x)
            if membership.setdefault(key, inside) != inside:
                return False
    return True


def infer_trace(related: Callable[[int, int], bool], k: int, d: int) -> BicyclicTrace:
    """
    Finite description of an interval partition of N0 given only its
    relation, known to be shift-invariant by d from k on.
    """
    if k < 0 or d < 1:
        raise InputError(f"need k >= 0 and d >= 1, got k={k}, d={d}")

    def starts_upto(limit: int) -> List[int]:
        return [x for x in range(limit + 1) if x == 0 or not related(x - 1, x)]

    for x in range(k, k + d):
        if related(x, x + d):
            n = x
            while n > 0 and related(n - 1, x):
                n -= 1
            starts = starts_upto(n)
            prefix = [b - a for a, b in zip(starts, starts[1:])]
            return BicyclicTrace(tuple(prefix), None)

    # starts strictly past k repeat with period d; k itself need not
    starts = starts_upto(k + 2 * d)
    s0 = next(s for s in starts if s > k)
    head = [s for s in starts if s <= s0]
    cycle = [s for s in starts if s0 <= s <= s0 + d]
    prefix = [b - a for a, b in zip(head, head[1:])]
    pattern = [b - a for a, b in zip(cycle, cycle[1:])]
    return BicyclicTrace(tuple(prefix), tuple(pattern))


def random_trace(rng: np.random.Generator, max_prefix: int = 3, max_size: int = 4) -> BicyclicTrace:
    prefix = tuple(int(m) for m in rng.integers(1, max_size + 1, size=rng.integers(0, max_prefix + 1)))
    if rng.random() < 0.3:
        return BicyclicTrace(prefix, None)
    pattern = tuple(int(m) for m in rng.integers(1, max_size, size=rng.integers(1, 4)))
    return BicyclicTrace(prefix, pattern)
