"""Path planner cases, trajectory tracing, and crossing detection."""

import math

import numpy as np
import pytest

from dcroots import (
    CoefficientVector,
    DMultiset,
    DomainError,
    classify,
    counts_along_path,
    detect_crossings,
    eval_path,
    find_t_for_count,
    from_multiset,
    plan_full_path,
    plan_segment,
    solve_all_roots,
    to_multiset,
    trace_roots,
)
from dcroots.bounds import delta_square
from dcroots.extremal import construct_nu_one
from dcroots.homotopy import multiset_at, trajectory_derivative, _rates_for
from dcroots.oracle import ideal_roots, ideal_vector
from dcroots.sampling import random_vector, spawn_rng


def _gm(d: DMultiset) -> float:
    return math.exp(
        sum(m * math.log(v) for v, m in zip(d.values, d.mults)) / d.n
    )


class TestPlanSegment:
    def test_case_three_b(self):
        seg = plan_segment(DMultiset((1.0, 2.0, 4.0), (1, 1, 1)))
        assert seg.case_tag == "III-b"
        assert seg.tau == pytest.approx(math.log(2.0))
        assert seg.end.values == (2.0,) and seg.end.mults == (3,)

    def test_case_four(self):
        seg = plan_segment(DMultiset((0.25, 1.0), (1, 1)))
        assert seg.case_tag == "IV"
        assert seg.tau == pytest.approx(0.5 * math.log(4.0))
        assert seg.end.values[0] == pytest.approx(0.5, rel=1e-14)
        assert seg.end.mults == (2,)

    def test_case_one(self):
        seg = plan_segment(DMultiset((1.0, 2.0, 16.0), (2, 1, 1)))
        assert seg.case_tag == "I"
        assert seg.tau == pytest.approx(math.log(2.0))
        assert seg.end.values == pytest.approx((2.0, 4.0))
        assert seg.end.mults == (3, 1)

    def test_case_two_mirror(self):
        seg = plan_segment(DMultiset((1.0 / 16.0, 0.5, 1.0), (1, 1, 2)))
        assert seg.case_tag == "II"
        assert seg.end.mults[-1] == 3

    def test_case_three_a(self):
        # symmetric layout with q = 3: both ends merge at once
        seg = plan_segment(DMultiset((1.0, 2.0, 4.0, 8.0), (1, 1, 1, 1)))
        assert seg.case_tag == "III-a"
        assert seg.end.values == (2.0, 4.0)
        assert seg.end.mults == (2, 2)

    def test_diversity_strictly_drops(self):
        rng = spawn_rng(70, 0)
        for _ in range(200):
            c = random_vector(rng, int(rng.integers(2, 11)), 0.6)
            d = to_multiset(c)
            seg = plan_segment(d)
            assert seg.end.q <= d.q - 1
            assert _gm(seg.end) == pytest.approx(_gm(d), rel=1e-12)

    def test_singleton_rejected(self):
        with pytest.raises(DomainError):
            plan_segment(DMultiset((0.5,), (4,)))


class TestEvalPath:
    def test_endpoints(self):
        seg = plan_segment(DMultiset((0.25, 1.0), (1, 1)))
        assert eval_path(seg, 0.0) == seg.start
        assert eval_path(seg, seg.tau) == seg.end

    def test_midpoint_case_four(self):
        seg = plan_segment(DMultiset((0.25, 1.0), (1, 1)))
        mid = eval_path(seg, seg.tau / 2.0)
        assert mid.values[0] == pytest.approx(0.25 * math.sqrt(2.0))
        assert mid.values[1] == pytest.approx(1.0 / math.sqrt(2.0))
        assert mid.values[0] * mid.values[1] == pytest.approx(0.25, rel=1e-14)

    def test_out_of_range(self):
        seg = plan_segment(DMultiset((0.25, 1.0), (1, 1)))
        with pytest.raises(DomainError):
            eval_path(seg, seg.tau + 1.0)


class TestPlanFullPath:
    def test_ideal_is_empty(self):
        plan = plan_full_path(ideal_vector(5, 0.4))
        assert plan.p == 0 and plan.T == 0.0

    def test_single_case_four(self):
        plan = plan_full_path(CoefficientVector((0.25, 1.0)))
        assert plan.p == 1 and plan.segments[0].case_tag == "IV"

    def test_case_one_then_finish(self):
        c = from_multiset(DMultiset((1.0, 2.0, 16.0), (2, 1, 1)))
        plan = plan_full_path(c)
        assert plan.p <= 2
        assert plan.segments[-1].end.q == 0

    def test_p_at_most_q_and_mean_preserved(self):
        rng = spawn_rng(71, 0)
        for _ in range(100):
            c = random_vector(rng, int(rng.integers(2, 11)), 0.6)
            plan = plan_full_path(c)
            assert plan.p <= to_multiset(c).q
            final = plan.segments[-1].end if plan.segments else to_multiset(c)
            assert final.q == 0
            assert final.values[0] == pytest.approx(c.gamma, rel=1e-12)


class TestTraceRoots:
    def test_ideal_constant(self):
        trs = trace_roots(plan_full_path(ideal_vector(4, 0.5)), ideal_vector(4, 0.5), 0.1)
        assert all(len(tr.samples) == 1 for tr in trs)
        assert all(not tr.crossings for tr in trs)

    def test_no_crossings_when_counts_match(self):
        c = CoefficientVector((0.3, 0.5, 0.6))  # n=3: both counts are already 1
        plan = plan_full_path(c)
        trs = trace_roots(plan, c, 0.02)
        assert sum(len(tr.crossings) for tr in trs) == 0

    def test_extremal_eight_single_pair(self):
        c = construct_nu_one(8, 0.5)
        plan = plan_full_path(c)
        trs = trace_roots(plan, c, 0.05)
        events = [e for tr in trs for e in tr.crossings]
        assert len(events) == 2  # one conjugate pair
        ys = sorted(e.y_value for e in events)
        assert ys[0] == pytest.approx(ys[1], abs=1e-6)
        # endpoints coincide with the ideal roots as a set
        final = sorted(
            (tr.samples[-1][1] for tr in trs), key=lambda w: (w.real, w.imag)
        )
        want = sorted(ideal_roots(8, 0.5).roots, key=lambda w: (w.real, w.imag))
        for a, b in zip(final, want):
            assert a == pytest.approx(b, abs=1e-6)

    def test_residuals_along_samples(self):
        c = CoefficientVector((0.2, 0.5, 1.1, 1.3))
        trs = trace_roots(plan_full_path(c), c, 0.05)
        assert max(r for tr in trs for _, _, r in tr.samples) <= 1e-8

    def test_derivative_matches_finite_difference(self):
        c = CoefficientVector((0.3, 0.8, 1.4))
        plan = plan_full_path(c)
        seg = plan.segments[0]
        h = 1e-6
        for t in (0.2 * seg.tau, 0.6 * seg.tau):
            d_now = eval_path(seg, t)
            ent = np.repeat(d_now.values, d_now.mults)
            roots = solve_all_roots(CoefficientVector(tuple(ent)))
            rates = _rates_for(seg, d_now)
            for w in roots.roots:
                wdot = trajectory_derivative(w, d_now, rates)
                wp = _track(seg, t + h, w)
                wm = _track(seg, t - h, w)
                fd = (wp - wm) / (2.0 * h)
                assert wdot == pytest.approx(fd, rel=1e-4, abs=1e-8)

    def test_wall_push(self):
        # at the axis crossing itself, the drift must point rightward
        c = construct_nu_one(8, 0.5)
        plan = plan_full_path(c)
        events = detect_crossings(plan, c)
        assert events
        for ev in events:
            seg, tl = _locate(plan, ev.t_star)
            d_now = eval_path(seg, tl)
            rates = _rates_for(seg, d_now)
            for w in (complex(0.0, ev.y_value), complex(0.0, -ev.y_value)):
                assert trajectory_derivative(w, d_now, rates).real > 0.0
            # the crossing ordinate sits inside the wall band
            delt = delta_square(c.gamma, math.sqrt(3.0) * c.d_upper, c.n)
            assert delt <= ev.y_value <= 1.0

    def test_bad_dt(self):
        c = CoefficientVector((0.25, 1.0))
        with pytest.raises(DomainError):
            trace_roots(plan_full_path(c), c, 0.0)


def _locate(plan, t):
    acc = 0.0
    for seg in plan.segments:
        if t <= acc + seg.tau + 1e-12:
            return seg, min(max(t - acc, 0.0), seg.tau)
        acc += seg.tau
    raise AssertionError("time outside plan")


def _track(seg, t, w_seed):
    from dcroots.homotopy import _newton_batch

    d = eval_path(seg, t)
    ent = np.repeat(d.values, d.mults)
    return complex(_newton_batch(np.array([w_seed], dtype=complex), ent)[0])


class TestCountsAlongPath:
    def test_ideal_constant(self):
        c = ideal_vector(5, 0.4)
        rows = counts_along_path(plan_full_path(c), c, samples=5)
        assert len({rep.nu_plus for _, rep in rows}) == 1

    def test_gamma_above_one_all_zero(self):
        c = CoefficientVector((1.0, 1.5, 2.2))
        rows = counts_along_path(plan_full_path(c), c, samples=9)
        assert all(rep.nu_bar == 0 for _, rep in rows)

    def test_extremal_steps_one_to_three(self):
        c = construct_nu_one(8, 0.5)
        rows = counts_along_path(plan_full_path(c), c, samples=17)
        seen = [rep.nu_plus for _, rep in rows if rep.nu_zero == 0]
        assert seen[0] == 1 and seen[-1] == 3
        assert set(seen) == {1, 3}

    def test_sample_floor(self):
        c = CoefficientVector((0.25, 1.0))
        with pytest.raises(DomainError):
            counts_along_path(plan_full_path(c), c, samples=1)


class TestCrossingsAndTargets:
    def test_no_events_without_count_change(self):
        c = CoefficientVector((0.3, 0.5, 0.6))
        assert detect_crossings(plan_full_path(c), c) == []

    def test_extremal_eight(self):
        c = construct_nu_one(8, 0.5)
        plan = plan_full_path(c)
        events = detect_crossings(plan, c)
        assert len(events) == 1
        assert events[0].jump == 2
        # event time agrees with the traced pair crossing
        traced = [e for tr in trace_roots(plan, c, 0.05) for e in tr.crossings]
        assert events[0].t_star == pytest.approx(traced[0].t_star, abs=1e-5)

    def test_find_t_endpoints(self):
        c = construct_nu_one(8, 0.5)
        plan = plan_full_path(c)
        assert find_t_for_count(plan, c, 1) == 0.0
        t3 = find_t_for_count(plan, c, 3)
        c3 = from_multiset(multiset_at(plan, c, t3))
        assert classify(solve_all_roots(c3)).nu_plus == 3

    def test_find_t_rejects_bad_targets(self):
        c = construct_nu_one(8, 0.5)
        plan = plan_full_path(c)
        with pytest.raises(DomainError):
            find_t_for_count(plan, c, 2)
        with pytest.raises(DomainError):
            find_t_for_count(plan, c, 5)
