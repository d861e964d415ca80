"""Homotopy path from any coefficient vector to the all-gamma vector.

The planner shrinks diversity by exponential pinching: the lowest value
rises at rate m_q, the highest falls at rate m_0, interior values hold.
Whichever end reaches its neighbor first merges (cases I/II), a tie
merges both (III-a, or III-b when only two gaps remain), and a single
gap closes onto the geometric mean (IV).  The tracer follows each root
with an Euler predictor from the analytic time-derivative and a Newton
corrector, recording axis-crossing events where the right-half count
jumps by two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CoefficientVector, CountReport, DMultiset, from_multiset, to_multiset
from .errors import DomainError, MatchingError, TheoremViolation, TracerError
from .roots import classify, imaginary_axis_modulus_root, solve_all_roots

__all__ = [
    "Segment",
    "PathPlan",
    "Trajectory",
    "CrossingEvent",
    "plan_segment",
    "eval_path",
    "plan_full_path",
    "multiset_at",
    "trajectory_derivative",
    "trace_roots",
    "counts_along_path",
    "detect_crossings",
    "find_t_for_count",
]

# Relative tolerance for the tau trichotomy; ties must be recognized or a
# zero-length follow-up segment appears.
_TAU_TIE = 1e-12


@dataclass(frozen=True)
class Segment:
    """One planned leg: start/end multisets, duration, and per-value rates.

    rates[j] is the exponential rate of values[j]: d_j(t) = d_j exp(rate_j t).
    """

    case_tag: str
    tau: float
    start: DMultiset
    end: DMultiset
    rates: tuple[float, ...]


@dataclass(frozen=True)
class PathPlan:
    """Ordered segments taking the start multiset to the singleton."""

    segments: tuple[Segment, ...]

    @property
    def p(self) -> int:
        return len(self.segments)

    @property
    def T(self) -> float:
        return sum(s.tau for s in self.segments)

    def to_json_dict(self) -> dict:
        return {
            "T": self.T,
            "segments": [
                {
                    "case": s.case_tag,
                    "tau": s.tau,
                    "start": s.start.to_json_dict(),
                    "end": s.end.to_json_dict(),
                    "rates": list(s.rates),
                }
                for s in self.segments
            ],
        }


@dataclass(frozen=True)
class CrossingEvent:
    """A conjugate pair meeting the axis at +-iY at time t_star, count +2."""

    t_star: float
    y_value: float
    jump: int

    def to_json_dict(self) -> dict:
        return {"t_star": self.t_star, "y_value": self.y_value, "jump": self.jump}


@dataclass(frozen=True)
class Trajectory:
    """One root's sampled curve: (t, w, residual) triples plus its crossings."""

    root_id: int
    samples: tuple[tuple[float, complex, float], ...]
    crossings: tuple[CrossingEvent, ...]


def plan_segment(d: DMultiset) -> Segment:
    """One pinching leg from a multiset with at least one gap."""
    q = d.q
    if q == 0:
        raise DomainError("multiset is already a singleton; nothing to plan")
    vals, mults = d.values, d.mults
    if q == 1:
        m0, m1 = mults
        n = m0 + m1
        tau = math.log(vals[1] / vals[0]) / n
        g = math.exp((m0 * math.log(vals[0]) + m1 * math.log(vals[1])) / n)
        end = DMultiset((g,), (n,))
        return Segment("IV", tau, d, end, (float(m1), float(-m0)))
    m0, mq = mults[0], mults[-1]
    tau_low = math.log(vals[1] / vals[0]) / mq
    tau_high = math.log(vals[-1] / vals[-2]) / m0
    rates = (float(mq),) + (0.0,) * (q - 1) + (float(-m0),)
    scale = max(tau_low, tau_high)
    if tau_low < tau_high - _TAU_TIE * scale:
        tau = tau_low
        top = vals[-1] * math.exp(-m0 * tau)
        end = DMultiset(
            (vals[1],) + vals[2:-1] + (top,),
            (m0 + mults[1],) + mults[2:-1] + (mq,),
        )
        return Segment("I", tau, d, end, rates)
    if tau_high < tau_low - _TAU_TIE * scale:
        tau = tau_high
        low = vals[0] * math.exp(mq * tau)
        end = DMultiset(
            (low,) + vals[1:-1],
            (m0,) + mults[1:-2] + (mults[-2] + mq,),
        )
        return Segment("II", tau, d, end, rates)
    tau = 0.5 * (tau_low + tau_high)
    if q == 2:
        end = DMultiset((vals[1],), (d.n,))
        return Segment("III-b", tau, d, end, rates)
    end = DMultiset(
        vals[1:-1],
        (m0 + mults[1],) + mults[2:-2] + (mults[-2] + mq,),
    )
    return Segment("III-a", tau, d, end, rates)


def eval_path(seg: Segment, t: float) -> DMultiset:
    """Multiset at local time t in [0, tau]; endpoints returned exactly."""
    if t < -1e-15 or t > seg.tau + 1e-15:
        raise DomainError(f"t = {t} outside [0, {seg.tau}]")
    if t <= 0.0:
        return seg.start
    if t >= seg.tau:
        return seg.end
    vals = [v * math.exp(r * t) for v, r in zip(seg.start.values, seg.rates)]
    mults = list(seg.start.mults)
    # Moving ends can land exactly on a neighbor just short of tau; merge.
    out_v: list[float] = []
    out_m: list[int] = []
    for v, m in zip(vals, mults):
        if out_v and v <= out_v[-1]:
            out_m[-1] += m
        else:
            out_v.append(v)
            out_m.append(m)
    return DMultiset(tuple(out_v), tuple(out_m))


def plan_full_path(c0: CoefficientVector) -> PathPlan:
    """Iterate the planner until diversity zero; at most q segments."""
    segs: list[Segment] = []
    d = to_multiset(c0)
    while d.q > 0:
        seg = plan_segment(d)
        segs.append(seg)
        d = seg.end
    return PathPlan(tuple(segs))


def _segment_index(plan: PathPlan, t: float) -> tuple[int, float]:
    """(segment index, local time) for a global t in [0, T]."""
    acc = 0.0
    for i, seg in enumerate(plan.segments):
        if t <= acc + seg.tau or i == len(plan.segments) - 1:
            return i, min(max(t - acc, 0.0), seg.tau)
        acc += seg.tau
    raise DomainError("empty plan has no time axis")


def multiset_at(plan: PathPlan, c0: CoefficientVector, t: float) -> DMultiset:
    """Multiset at global time t along the full planned path."""
    if not plan.segments:
        return to_multiset(c0)
    if t < -1e-15 or t > plan.T + 1e-12:
        raise DomainError(f"t = {t} outside [0, {plan.T}]")
    i, tl = _segment_index(plan, min(t, plan.T))
    return eval_path(plan.segments[i], tl)


def trajectory_derivative(w: complex, d: DMultiset, rates) -> complex:
    """Analytic dw/dt at a root w of the instantaneous equation.

    Implicit differentiation of prod(w + d_j)^{m_j} = 1 with
    d_j' = rate_j d_j; the common factor P cancels at a root.
    """
    num = 0.0 + 0.0j
    den = 0.0 + 0.0j
    for v, m, r in zip(d.values, d.mults, rates):
        f = w + v
        num += m * r * v / f
        den += m / f
    return -num / den


def _newton_batch(w: np.ndarray, ent: np.ndarray, iters: int = 25) -> np.ndarray:
    from .roots import _p_minus_one_and_ratio

    for _ in range(iters):
        pm1, ratio = _p_minus_one_and_ratio(w, ent)
        step = pm1 / ((pm1 + 1.0) * ratio)
        w = w - step
        if np.max(np.abs(step) / (1.0 + np.abs(w))) < 1e-15:
            break
    return w


def _residuals(w: np.ndarray, ent: np.ndarray) -> np.ndarray:
    from .roots import _p_minus_one_and_ratio

    pm1, _ = _p_minus_one_and_ratio(w, ent)
    return np.abs(pm1)


def _entries_at(plan: PathPlan, c0: CoefficientVector, t: float) -> np.ndarray:
    d = multiset_at(plan, c0, t)
    return np.repeat(np.asarray(d.values), np.asarray(d.mults))


def _refine_axis_crossing(
    plan: PathPlan,
    c0: CoefficientVector,
    t_lo: float,
    w_lo: complex,
    t_hi: float,
    w_hi: complex,
) -> tuple[float, complex]:
    """Bisect in t until |Re w| <= 1e-10, tracking the root by Newton."""
    for _ in range(200):
        tm = 0.5 * (t_lo + t_hi)
        ent = _entries_at(plan, c0, tm)
        seed = 0.5 * (w_lo + w_hi)
        wm = complex(_newton_batch(np.array([seed]), ent)[0])
        if abs(wm.real) <= 1e-10:
            return tm, wm
        if (wm.real > 0.0) == (w_hi.real > 0.0):
            t_hi, w_hi = tm, wm
        else:
            t_lo, w_lo = tm, wm
    return 0.5 * (t_lo + t_hi), wm


def trace_roots(
    plan: PathPlan,
    c0: CoefficientVector,
    dt_max: float,
    dt_min: float = 1e-12,
) -> list[Trajectory]:
    """Follow all n roots along the path with Euler predict / Newton correct.

    Root identity is positional: each step's corrector starts from the
    predictor, and a collision guard halves the step when two corrected
    roots come closer than their own movement can disambiguate.
    """
    if dt_max <= 0.0:
        raise DomainError("dt_max must be positive")
    start_roots = solve_all_roots(c0)
    w = np.array(start_roots.roots, dtype=complex)
    n = len(w)
    samples: list[list[tuple[float, complex, float]]] = [
        [(0.0, complex(w[i]), start_roots.residuals[i])] for i in range(n)
    ]
    crossings: list[list[CrossingEvent]] = [[] for _ in range(n)]
    if not plan.segments:
        return [
            Trajectory(i, tuple(samples[i]), ()) for i in range(n)
        ]
    t_global = 0.0
    for seg in plan.segments:
        seg_start = t_global
        tl = 0.0
        while tl < seg.tau - 1e-15:
            h = min(dt_max, seg.tau - tl)
            accepted = False
            while h >= dt_min:
                d_now = eval_path(seg, tl)
                # Rates must align with the current value layout, which can
                # have fewer groups than the segment start near coalescence.
                rates = _rates_for(seg, d_now)
                wdot = np.array(
                    [trajectory_derivative(wi, d_now, rates) for wi in w]
                )
                pred = w + h * wdot
                ent = _entries_at(plan, c0, seg_start + tl + h)
                corr = _newton_batch(pred.copy(), ent)
                res = _residuals(corr, ent)
                from .roots import rescue_clusters

                corr, res = rescue_clusters(corr, res, ent)
                move = np.abs(corr - w)
                pair = np.abs(corr[:, None] - corr[None, :])
                np.fill_diagonal(pair, np.inf)
                gap = np.min(pair, axis=1)
                collided = bool(np.any(move > 0.5 * gap)) and bool(
                    np.min(gap) < 1e-12 * (1.0 + np.max(np.abs(corr)))
                )
                if np.max(res) <= 1e-8 and not np.any(move > 0.5 * gap):
                    accepted = True
                    break
                h *= 0.5
            if not accepted:
                if collided:
                    raise MatchingError(
                        "root matching collision could not be resolved by step halving"
                    )
                raise TracerError(
                    f"corrector failed below dt_min at t = {seg_start + tl:.6g}"
                )
            t_new = seg_start + tl + h
            for i in range(n):
                if (w[i].real > 0.0) != (corr[i].real > 0.0) and abs(
                    corr[i].real - w[i].real
                ) > 1e-13:
                    ts, ws = _refine_axis_crossing(
                        plan, c0, seg_start + tl, complex(w[i]), t_new, complex(corr[i])
                    )
                    crossings[i].append(
                        CrossingEvent(t_star=ts, y_value=abs(ws.imag), jump=2)
                    )
                samples[i].append((t_new, complex(corr[i]), float(res[i])))
            w = corr
            tl += h
        t_global += seg.tau
    return [
        Trajectory(i, tuple(samples[i]), tuple(crossings[i])) for i in range(n)
    ]


def _rates_for(seg: Segment, d_now: DMultiset) -> tuple[float, ...]:
    if len(d_now.values) == len(seg.rates):
        return seg.rates
    # Groups merged early: moving ends keep their rates, merged interior 0.
    k = len(d_now.values)
    return (seg.rates[0],) + (0.0,) * (k - 2) + (seg.rates[-1],)


def counts_along_path(
    plan: PathPlan,
    c0: CoefficientVector,
    samples: int,
) -> list[tuple[float, CountReport]]:
    """classify(solve(c(t))) on a uniform grid plus joins and crossing flanks.

    The right-half count must be nondecreasing; any decrease raises a
    theorem-violation error rather than being smoothed over.
    """
    if samples < 2:
        raise DomainError("need at least 2 samples")
    ts = set(np.linspace(0.0, plan.T, samples).tolist())
    acc = 0.0
    for seg in plan.segments:
        ts.add(acc)
        acc += seg.tau
        ts.add(acc)
    for ev in detect_crossings(plan, c0):
        ts.add(max(0.0, ev.t_star - 1e-6))
        ts.add(min(plan.T, ev.t_star + 1e-6))
    out = []
    for t in sorted(ts):
        c_t = from_multiset(multiset_at(plan, c0, t))
        out.append((t, classify(solve_all_roots(c_t))))
    prev = None
    for t, rep in out:
        if prev is not None and (
            rep.nu_plus < prev.nu_plus or rep.nu_bar < prev.nu_bar
        ):
            raise TheoremViolation(
                f"right-half count decreased at t = {t:.6g} "
                f"({prev.nu_plus} -> {rep.nu_plus})"
            )
        # A root sitting on the axis at a sampled instant is legitimate;
        # only a genuine drop in nu_plus past it is a violation.
        if prev is None or rep.nu_zero == 0:
            prev = rep
    return out


def _nu_plus_at(plan: PathPlan, c0: CoefficientVector, t: float) -> int:
    # Tight axis band: extremal starts put the lone right root at
    # ~1e-10, which the display tolerance would misread as on-axis and
    # fabricate a +1 jump near t = 0.
    c_t = from_multiset(multiset_at(plan, c0, t))
    return classify(solve_all_roots(c_t), tol=1e-13).nu_plus


def detect_crossings(plan: PathPlan, c0: CoefficientVector) -> list[CrossingEvent]:
    """All +2 jump events of the right-half count, refined by bisection."""
    if not plan.segments:
        return []
    # The count is monotone along the path; equal endpoints mean no events.
    if _nu_plus_at(plan, c0, 0.0) == _nu_plus_at(plan, c0, plan.T):
        return []
    grid = [0.0]
    acc = 0.0
    for seg in plan.segments:
        local = np.linspace(0.0, seg.tau, 33)[1:]
        grid.extend((acc + u for u in local))
        acc += seg.tau
    counts = [_nu_plus_at(plan, c0, t) for t in grid]
    events: list[CrossingEvent] = []
    intervals = [
        (grid[i], grid[i + 1], counts[i], counts[i + 1])
        for i in range(len(grid) - 1)
        if counts[i + 1] != counts[i]
    ]
    while intervals:
        t0, t1, k0, k1 = intervals.pop(0)
        if k1 - k0 > 2:
            tm = 0.5 * (t0 + t1)
            km = _nu_plus_at(plan, c0, tm)
            if km != k0:
                intervals.append((t0, tm, k0, km))
            if km != k1:
                intervals.append((tm, t1, km, k1))
            continue
        lo, hi = t0, t1
        for _ in range(60):
            tm = 0.5 * (lo + hi)
            if _nu_plus_at(plan, c0, tm) == k0:
                lo = tm
            else:
                hi = tm
        t_star = 0.5 * (lo + hi)
        c_star = from_multiset(multiset_at(plan, c0, t_star))
        y = imaginary_axis_modulus_root(c_star)
        events.append(CrossingEvent(t_star=t_star, y_value=y, jump=k1 - k0))
    events.sort(key=lambda e: e.t_star)
    return events


def find_t_for_count(plan: PathPlan, c0: CoefficientVector, k: int) -> float:
    """A time t at which the right-half count equals the odd target k."""
    if k % 2 == 0:
        raise DomainError("target count must be odd")
    k0 = _nu_plus_at(plan, c0, 0.0)
    k_end = _nu_plus_at(plan, c0, plan.T) if plan.segments else k0
    if not (k0 <= k <= k_end):
        raise DomainError(f"target {k} outside achievable range [{k0}, {k_end}]")
    if k == k0:
        return 0.0
    events = detect_crossings(plan, c0)
    cum = k0
    for i, ev in enumerate(events):
        cum += ev.jump
        if cum >= k:
            t_next = events[i + 1].t_star if i + 1 < len(events) else plan.T
            t = 0.5 * (ev.t_star + t_next)
            if _nu_plus_at(plan, c0, t) == k:
                return t
            # Fall back to a point just past the event.
            step = 1e-4 * (t_next - ev.t_star)
            t = ev.t_star + max(step, 1e-9)
            if _nu_plus_at(plan, c0, t) == k:
                return t
            raise TracerError(f"could not certify count {k} past event {i}")
    raise TracerError(f"crossing events never reached target count {k}")
