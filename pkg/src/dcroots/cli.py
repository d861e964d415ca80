"""Command-line front end: count, path, verify, construct.

Exit codes: 0 success, 2 usage error, 3 theorem-violation signal,
4 numerical failure.  All randomness flows from --seed, and identical
invocations produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .core import CoefficientVector, DCMatrix, reduce_matrix
from .errors import (
    ConstructionError,
    ContourError,
    DomainError,
    MatchingError,
    SolverError,
    TheoremViolation,
    TracerError,
)
from .extremal import construct_with_count, matrix_with_count
from .homotopy import (
    counts_along_path,
    detect_crossings,
    plan_full_path,
    trace_roots,
)
from .oracle import ideal_counts, ideal_vector, maclaurin_chain, product_bound_check
from .roots import classify, count_right_half, solve_all_roots
from .sampling import random_vector, spawn_rng

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VIOLATION = 3
EXIT_NUMERICAL = 4

_NUMERICAL_ERRORS = (
    SolverError,
    TracerError,
    ContourError,
    MatchingError,
    ConstructionError,
)


def _dump_json(obj, path: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_vector(args) -> CoefficientVector:
    if args.c:
        return CoefficientVector(tuple(float(x) for x in args.c.split(",")))
    if getattr(args, "infile", None):
        with open(args.infile) as fh:
            obj = json.load(fh)
        if "entries" in obj:
            return CoefficientVector.from_json_dict(obj)
        if "a" in obj:
            return reduce_matrix(DCMatrix.from_json_dict(obj))[0]
        raise DomainError("input JSON must carry 'entries' or 'a'/'b'")
    if args.ideal:
        if args.n is None or args.gamma is None:
            raise DomainError("--ideal needs --n and --gamma")
        return ideal_vector(args.n, args.gamma)
    raise DomainError("no coefficient input: use --c, --ideal, or an input file")


def cmd_count(args) -> int:
    if getattr(args, "a", None) and getattr(args, "b", None):
        m = DCMatrix(
            tuple(float(x) for x in args.a.split(",")),
            tuple(float(x) for x in args.b.split(",")),
        )
        c, _ = reduce_matrix(m)
        eig = np.linalg.eigvals(m.matrix())
        eig_count = int(np.sum(eig.real < 0.0))
    else:
        m = None
        eig_count = None
        c = _parse_vector(args)
    rep = classify(solve_all_roots(c), tol=args.tol)
    try:
        contour = count_right_half(c, tol=args.tol)
    except ContourError:
        contour = None
    bound = ideal_counts(c.n, c.gamma)
    ok = rep.nu_plus <= bound.nu_plus and rep.nu_bar <= bound.nu_bar
    out = {
        "c": c.to_json_dict(),
        "gamma": c.gamma,
        "classify": rep.to_json_dict(),
        "contour_nu_plus": contour,
        "ideal_bound": bound.to_json_dict(),
        "bound_check": "PASS" if ok else "FAIL",
    }
    if eig_count is not None:
        out["matrix_left_half_eigenvalues"] = eig_count
    _dump_json(out, args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def _write_trajectories(path: str, trajectories) -> None:
    with open(path, "w") as fh:
        fh.write("t,root_id,re,im,residual\n")
        for tr in trajectories:
            for t, w, res in tr.samples:
                fh.write(f"{t!r},{tr.root_id},{w.real!r},{w.imag!r},{res!r}\n")


def _write_crossings(path: str, events) -> None:
    with open(path, "w") as fh:
        fh.write("t_star,y_value,jump\n")
        for ev in events:
            fh.write(f"{ev.t_star!r},{ev.y_value!r},{ev.jump}\n")


def _write_counts(path: str, rows) -> None:
    with open(path, "w") as fh:
        fh.write("t,nu_minus,nu_zero,nu_plus,nu_bar\n")
        for t, rep in rows:
            fh.write(f"{t!r},{rep.nu_minus},{rep.nu_zero},{rep.nu_plus},{rep.nu_bar}\n")


def _plot_path(path: str, c0, trajectories) -> None:
    import matplotlib

    matplotlib.use("svg")
    import matplotlib.pyplot as plt

    from .bounds import box_region, inner_radius

    fig, ax = plt.subplots(figsize=(6, 6))
    if c0.gamma < 1.0:
        d = inner_radius(c0.gamma, c0.d_upper, c0.n)
        box = box_region(c0.gamma, c0.d_lower, c0.d_upper, c0.n).params
        th = np.linspace(0.0, 2.0 * np.pi, 200)
        ax.plot(np.cos(th), np.sin(th), lw=0.8, color="gray")
        ax.plot(d * np.cos(th), d * np.sin(th), lw=0.8, color="gray")
        ax.add_patch(
            plt.Rectangle(
                (-box["re_lo"], -box["im_hi"]),
                box["re_lo"] + box["re_hi"],
                2.0 * box["im_hi"],
                fill=False,
                ec="lightblue",
            )
        )
    for tr in trajectories:
        ws = np.array([w for _, w, _ in tr.samples])
        ax.plot(ws.real, ws.imag, lw=1.0)
        ax.plot(ws.real[:1], ws.imag[:1], marker="o", ms=3)
    ax.axvline(0.0, color="k", lw=0.6)
    ax.set_aspect("equal")
    ax.set_xlabel("Re w")
    ax.set_ylabel("Im w")
    fig.savefig(path, format="svg")
    plt.close(fig)


def cmd_path(args) -> int:
    c0 = _parse_vector(args)
    if c0.gamma >= 1.0 and not args.mechanics_only:
        raise DomainError(
            "gamma >= 1 has no right-half roots to track; pass --mechanics-only"
        )
    plan = plan_full_path(c0)
    prefix = args.out or "path_"
    _dump_json(plan.to_json_dict(), prefix + "plan.json")
    trajectories = trace_roots(plan, c0, dt_max=args.dt_max)
    _write_trajectories(prefix + "trajectories.csv", trajectories)
    events = detect_crossings(plan, c0)
    _write_crossings(prefix + "crossings.csv", events)
    rows = counts_along_path(plan, c0, samples=args.samples)
    _write_counts(prefix + "counts.csv", rows)
    if args.plot:
        _plot_path(args.plot, c0, trajectories)
    return EXIT_OK


def _verify_battery(args):
    """Per-property pass counts over seeded random instances."""
    results = {}
    failures = []
    n_max = args.n_max
    trials = args.trials

    def record(name, passed, payload=None):
        ok, total = results.get(name, (0, 0))
        results[name] = (ok + (1 if passed else 0), total + 1)
        if not passed:
            failures.append({"property": name, "instance": payload})

    for i in range(trials):
        rng = spawn_rng(args.seed, i)
        n = int(rng.integers(2, n_max + 1))
        gamma = float(rng.uniform(0.1, 0.95))
        c = random_vector(rng, n, gamma)
        rep = classify(solve_all_roots(c))
        bound = ideal_counts(n, c.gamma)
        main_ok = rep.nu_plus <= bound.nu_plus and rep.nu_bar <= bound.nu_bar
        if args.self_test_negate:
            main_ok = not main_ok
        record("main_theorem", main_ok, c.to_json_dict())
        record(
            "oddness",
            rep.nu_plus % 2 == 1 and rep.nu_bar % 2 == 1,
            c.to_json_dict(),
        )
        from .bounds import inner_radius

        d = inner_radius(c.gamma, c.d_upper, n)
        roots = solve_all_roots(c)
        loc_ok = all(
            d < abs(w) < 1.0 for w in roots.roots if w.real >= 0.0
        )
        record("localization", loc_ok, c.to_json_dict())
        chain = maclaurin_chain(rng.uniform(0.2, 5.0, size=min(n, 20)))
        mac_ok = bool(np.all(np.diff(chain) <= 1e-12))
        lhs, rhs = product_bound_check(rng.uniform(0.0, 4.0, size=n))
        record("maclaurin", mac_ok and lhs >= rhs - 1e-12, None)
        if i % 10 == 0:
            safe = all(abs(w.real) > 1e-6 for w in roots.roots)
            if safe:
                agree = count_right_half(c) == rep.nu_plus
                record("method_agreement", agree, c.to_json_dict())
    return results, failures


def cmd_verify(args) -> int:
    results, failures = _verify_battery(args)
    for name in sorted(results):
        ok, total = results[name]
        print(f"{name}: {ok}/{total} {'PASS' if ok == total else 'FAIL'}")
    if failures:
        replay = args.out or "verify_failures.json"
        _dump_json({"seed": args.seed, "failures": failures}, replay)
        print(f"failing instances written to {replay}")
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.k is None or args.k % 2 == 0 or args.k < 1:
        gamma = args.gamma
        if gamma is None and args.alpha is not None and args.beta is not None:
            gamma = args.alpha / args.beta
        hint = ""
        if gamma is not None and 0.0 < gamma:
            hint = f" in [1, {ideal_counts(args.n, gamma).nu_plus}]"
        raise DomainError(f"count must be odd{hint}; got {args.k}")
    if args.alpha is not None and args.beta is not None:
        m = matrix_with_count(args.n, args.alpha, args.beta, args.k)
        c, _ = reduce_matrix(m)
        rep = classify(solve_all_roots(c))
        out = {"matrix": m.to_json_dict(), "report": rep.to_json_dict()}
    else:
        if args.gamma is None:
            raise DomainError("construct needs --gamma or both --alpha and --beta")
        c = construct_with_count(args.n, args.gamma, args.k)
        rep = classify(solve_all_roots(c))
        out = {"c": c.to_json_dict(), "report": rep.to_json_dict()}
    _dump_json(out, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dcroots",
        description="Count, localize, and track half-plane roots of "
        "prod(z + c_k) = 1 from doubly cyclic matrices.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="output file or prefix")
        p.add_argument("--tol", type=float, default=1e-9)

    pc = sub.add_parser("count", help="count half-plane roots of one instance")
    pc.add_argument("--c", default=None, help="comma-separated entries")
    pc.add_argument("--a", default=None, help="matrix diagonal, comma-separated")
    pc.add_argument("--b", default=None, help="matrix cycle weights, comma-separated")
    pc.add_argument("--ideal", action="store_true", help="use the all-gamma vector")
    pc.add_argument("--n", type=int, default=None)
    pc.add_argument("--gamma", type=float, default=None)
    pc.add_argument("--infile", default=None, help="JSON instance file")
    common(pc)
    pc.set_defaults(func=cmd_count)

    pp = sub.add_parser("path", help="plan and trace the homotopy path")
    pp.add_argument("--c", default=None)
    pp.add_argument("--ideal", action="store_true")
    pp.add_argument("--n", type=int, default=None)
    pp.add_argument("--gamma", type=float, default=None)
    pp.add_argument("--infile", default=None)
    pp.add_argument("--dt-max", type=float, default=0.01)
    pp.add_argument("--samples", type=int, default=33)
    pp.add_argument("--mechanics-only", action="store_true")
    pp.add_argument("--safety", type=float, default=1.0)
    pp.add_argument("--plot", default=None, help="SVG output path")
    common(pp)
    pp.set_defaults(func=cmd_path)

    pv = sub.add_parser("verify", help="run the randomized invariant battery")
    pv.add_argument("--trials", type=int, default=100)
    pv.add_argument("--n-max", type=int, default=10)
    pv.add_argument("--seed", type=int, required=True)
    pv.add_argument(
        "--self-test-negate",
        action="store_true",
        help="negate the main bound comparison (harness self-test)",
    )
    common(pv)
    pv.set_defaults(func=cmd_verify)

    pg = sub.add_parser("construct", help="build a vector or matrix with count k")
    pg.add_argument("--n", type=int, required=True)
    pg.add_argument("--gamma", type=float, default=None)
    pg.add_argument("--alpha", type=float, default=None)
    pg.add_argument("--beta", type=float, default=None)
    pg.add_argument("--k", type=int, required=True)
    common(pg)
    pg.set_defaults(func=cmd_construct)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TheoremViolation as exc:
        print(f"THEOREM VIOLATION: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
