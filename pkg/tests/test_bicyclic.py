# pytest tests/test_bicyclic.py
import pytest

from app.services.bicyclic import (
    BicyclicElement,
    BicyclicTrace,
    TkdSub,
    binv,
    bmul,
    idempotent,
    in_normalizer_by_conjugation,
    infer_trace,
    is_icp_bicyclic,
    is_saturated_window,
    is_shift_invariant,
    l_of,
    left_conjugate,
    normalizer_bicyclic,
    nu_bicyclic_related,
    random_trace,
    right_conjugate,
    sample_normalizer_agreement,
    tkd_contains,
    tkd_leq,
    trace_related,
)
from app.services.text_formats import format_tkd, parse_bicyclic_trace, parse_tkd
from app.shared.errors import InputError

THREE_THEN_TWOS = BicyclicTrace.periodic([3], [2])


def test_multiplication():
    p, q = BicyclicElement(1, 0), BicyclicElement(0, 1)
    assert p * q == BicyclicElement(1, 1)
    assert q * p == BicyclicElement(0, 0)
    x = BicyclicElement(2, 5)
    assert bmul(bmul(x, binv(x)), x) == x
    assert (x * binv(x)).is_idempotent


def test_negative_coordinates_rejected():
    with pytest.raises(InputError):
        BicyclicElement(-1, 0)


def test_conjugation_formulas():
    x = BicyclicElement(2, 5)
    for s in range(10):
        assert left_conjugate(x, s) == 5 - 2 + max(s, 2)
        assert right_conjugate(x, s) == 2 - 5 + max(s, 5)
    assert bmul(bmul(x, idempotent(7)), binv(x)) == idempotent(right_conjugate(x, 7))
    for s in range(10):
        assert bmul(bmul(binv(x), idempotent(s)), x) == idempotent(left_conjugate(x, s))
        assert bmul(bmul(x, idempotent(s)), binv(x)) == idempotent(right_conjugate(x, s))


def test_periodic_trace_classes():
    tau = BicyclicTrace.periodic([], [2])
    assert tau.related(0, 1)
    assert not tau.related(1, 2)
    assert tau.period == 2
    assert tau.threshold == 0
    assert trace_related(THREE_THEN_TWOS, 0, 2)
    assert trace_related(THREE_THEN_TWOS, 3, 4)
    assert not trace_related(THREE_THEN_TWOS, 2, 3)


def test_infinite_class():
    tau = BicyclicTrace.infinite_from([1])
    assert not tau.related(0, 1)
    assert tau.related(1, 10**6)
    assert tau.infinite_start == 1
    assert tau.class_sizes(4) == [1, None]
    assert tau.class_maxima(4) == [0, None]


def test_canonical_form():
    assert BicyclicTrace.periodic([1, 2], [2]) == BicyclicTrace.periodic([1], [2])
    assert BicyclicTrace.periodic([], [2, 2]) == BicyclicTrace.periodic([], [2])
    assert BicyclicTrace.periodic([1, 1], [1]) == BicyclicTrace.identity()


def test_class_sizes_and_maxima():
    assert THREE_THEN_TWOS.class_sizes(4) == [3, 2, 2, 2]
    assert THREE_THEN_TWOS.class_maxima(4) == [2, 4, 6, 8]
    assert THREE_THEN_TWOS.is_class_start(3)
    assert not THREE_THEN_TWOS.is_class_start(4)


@pytest.mark.parametrize(
    "tau, expected",
    [
        (BicyclicTrace.periodic([3], [2]), 1),
        (BicyclicTrace.periodic([2], [1]), 1),
        (BicyclicTrace.periodic([1], [3]), 0),
        (BicyclicTrace.identity(), 0),
    ],
)
def test_shift_point(tau, expected):
    assert l_of(tau) == expected


def test_shift_point_needs_periodic_tail():
    with pytest.raises(InputError):
        l_of(BicyclicTrace.universal())


def test_shift_point_is_least():
    for tau in (BicyclicTrace.periodic([3], [2]), BicyclicTrace.periodic([2], [1])):
        l, d = l_of(tau), tau.period
        assert all(is_shift_invariant(tau, l, d, x, y) for x in range(30) for y in range(30))
        assert not all(is_shift_invariant(tau, l - 1, d, x, y) for x in range(30) for y in range(30))


def test_normalizer_of_three_then_twos():
    assert normalizer_bicyclic(THREE_THEN_TWOS) == TkdSub.of(1, 2)
    assert normalizer_bicyclic(BicyclicTrace.infinite_from([2])) == TkdSub.of(2, 1)


@pytest.mark.parametrize(
    "sub, valid",
    [
        (TkdSub.idempotents(), True),
        (TkdSub.of(2, 2), False),
        (TkdSub.of(3, 2), True),
        (TkdSub.of(1, 2), True),
        (TkdSub.of(1, 4), True),
        (TkdSub.of(1, 3), False),
    ],
)
def test_pair_validity(sub, valid):
    assert is_icp_bicyclic(THREE_THEN_TWOS, sub) == valid


def test_infinite_class_pairs():
    tau = BicyclicTrace.infinite_from([2])
    assert is_icp_bicyclic(tau, TkdSub.of(2, 5))
    assert not is_icp_bicyclic(tau, TkdSub.of(3, 5))


def test_valid_pairs_are_saturated():
    for sub in (TkdSub.idempotents(), TkdSub.of(3, 2), TkdSub.of(1, 2), TkdSub.of(1, 4)):
        assert is_saturated_window(THREE_THEN_TWOS, sub)
    assert not is_saturated_window(THREE_THEN_TWOS, TkdSub.of(2, 2))
    assert not is_saturated_window(THREE_THEN_TWOS, TkdSub.of(0, 2))


def test_tkd_membership_and_order():
    t = TkdSub.of(2, 3)
    assert tkd_contains(t, BicyclicElement(2, 5))
    assert not tkd_contains(t, BicyclicElement(1, 4))
    assert not tkd_contains(t, BicyclicElement(2, 4))
    assert BicyclicElement(0, 0) in TkdSub.idempotents()
    assert tkd_leq(TkdSub.of(3, 6), t)
    assert not tkd_leq(t, TkdSub.of(3, 6))
    assert tkd_leq(TkdSub.idempotents(), t)


def test_tkd_needs_both_parameters():
    with pytest.raises(InputError):
        TkdSub(k=1)
    with pytest.raises(InputError):
        TkdSub.of(0, 0)


def test_nu_relates_along_the_trace():
    tau = THREE_THEN_TWOS
    assert nu_bicyclic_related(tau, BicyclicElement(0, 1), BicyclicElement(1, 2))
    assert not nu_bicyclic_related(tau, BicyclicElement(1, 2), BicyclicElement(2, 3))
    assert not nu_bicyclic_related(tau, BicyclicElement(0, 1), BicyclicElement(0, 2))
    assert nu_bicyclic_related(tau, BicyclicElement(3, 0), BicyclicElement(4, 1), side="right")
    with pytest.raises(InputError):
        nu_bicyclic_related(tau, BicyclicElement(0, 0), BicyclicElement(0, 0), side="up")


def test_conjugation_agrees_on_hand_examples():
    assert in_normalizer_by_conjugation(THREE_THEN_TWOS, BicyclicElement(1, 3), bound=40)
    assert not in_normalizer_by_conjugation(THREE_THEN_TWOS, BicyclicElement(0, 2), bound=40)
    assert not in_normalizer_by_conjugation(THREE_THEN_TWOS, BicyclicElement(1, 2), bound=40)


def test_normalizer_formula_matches_conjugation_on_random_traces(rng):
    for _ in range(50):
        tau = random_trace(rng)
        assert sample_normalizer_agreement(tau, samples=200, bound=200, rng=rng) == []


def test_infer_trace_recovers_description(rng):
    for _ in range(20):
        tau = random_trace(rng)
        d = 1 if tau.has_infinite_class else tau.period
        assert infer_trace(tau.related, tau.threshold, d) == tau


def test_text_round_trip(rng):
    for _ in range(10):
        tau = random_trace(rng)
        assert parse_bicyclic_trace(tau.describe()) == tau
    assert parse_bicyclic_trace("prefix=[3];tail=per([2])") == THREE_THEN_TWOS
    assert parse_tkd("k=1,d=2") == TkdSub.of(1, 2)
    assert format_tkd(parse_tkd("E")) == "E"
    with pytest.raises(InputError):
        parse_bicyclic_trace("prefix=3")


def _periodic_traces(rng, count):
    traces = []
    while len(traces) < count:
        tau = random_trace(rng)
        if not tau.has_infinite_class:
            traces.append(tau)
    return traces


def test_shift_invariance_past_l_on_random_traces(rng):
    for tau in _periodic_traces(rng, 50):
        l, d = l_of(tau), tau.period
        points = rng.integers(l, l + 4 * d + tau.threshold + 5, size=(200, 2))
        for x, y in points.tolist():
            assert is_shift_invariant(tau, l, d, x, y)


TKD_GRID = [TkdSub.idempotents()] + [TkdSub.of(k, d) for k in range(6) for d in range(1, 7)]


def _window(sub, bound=25):
    return {(a, b) for a in range(bound) for b in range(bound) if tkd_contains(sub, BicyclicElement(a, b))}


def test_tkd_leq_is_a_partial_order():
    for s in TKD_GRID:
        assert tkd_leq(s, s)
        for t in TKD_GRID:
            if tkd_leq(s, t) and tkd_leq(t, s):
                assert s == t
            if not tkd_leq(s, t):
                continue
            for u in TKD_GRID:
                if tkd_leq(t, u):
                    assert tkd_leq(s, u)


def test_tkd_leq_is_containment():
    windows = {s: _window(s) for s in TKD_GRID}
    for s in TKD_GRID:
        for t in TKD_GRID:
            assert tkd_leq(s, t) == windows[s].issubset(windows[t])


def test_valid_subsemigroups_sit_below_the_normalizer(rng):
    traces = [random_trace(rng) for _ in range(40)] + [THREE_THEN_TWOS]
    for tau in traces:
        n = normalizer_bicyclic(tau)
        assert is_icp_bicyclic(tau, n)
        assert is_icp_bicyclic(tau, TkdSub.idempotents())
        for sub in TKD_GRID:
            if not is_icp_bicyclic(tau, sub):
                continue
            assert tkd_leq(sub, n)
            if sub.is_idempotents:
                continue
            # shrinking along the period coordinate keeps the pair valid
            for m in range(1, 5):
                smaller = TkdSub.of(sub.k, sub.d * m)
                assert tkd_leq(smaller, sub)
                assert is_icp_bicyclic(tau, smaller)


def test_moving_up_can_leave_the_valid_pairs():
    assert is_icp_bicyclic(THREE_THEN_TWOS, TkdSub.of(3, 2))
    assert tkd_leq(TkdSub.of(3, 2), TkdSub.of(0, 1))
    assert not is_icp_bicyclic(THREE_THEN_TWOS, TkdSub.of(0, 1))
