"""Command-line front end: walk simulations, operator checks,
extension/correction translation, and convergence studies.

Exit codes: 0 pass, 1 check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import scalar, serialize
from .errors import DCError
from .linalg import (
    DCMatrix,
    check_appreciably_semipositive,
    classify_op,
    eig_hermitian,
    eig_unitary,
    is_hermitian,
    is_unitary,
    OperatorKind,
)
from .quantum import (
    Measurement,
    complex_correct_measurement,
    complex_correct_unitary,
    dc_extend_unitary,
    ParamUnitary,
)
from .walk import (
    covariance_check,
    dirac_gate,
    lorentz_encodings,
    point_source,
    run,
    walk_vs_continuum_error,
)

PASS, FAIL, USAGE = 0, 1, 2


def _load_json(path: str):
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        print(f"error: {path}: parse error at line {e.lineno}, column {e.colno}: {e.msg}",
              file=sys.stderr)
        raise SystemExit(USAGE)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        raise SystemExit(USAGE)


def _write_report(report: dict, path):
    if path:
        serialize.dump_json(report, path)
    print(json.dumps(report))


# ---------------------------------------------------------------------------
# walk
# ---------------------------------------------------------------------------


def cmd_walk(args) -> int:
    if args.sites < 2:
        print("error: --sites must be >= 2", file=sys.stderr)
        return USAGE
    if not math.isfinite(args.mass):
        print("error: --mass must be finite", file=sys.stderr)
        return USAGE
    w = point_source(args.sites)
    snaps = run(w, args.mass, args.steps, record_every=args.record_every)
    serialize.write_trajectory_csv(snaps, args.out)
    final = snaps[-1].total_norm()
    print(f"final dual norm: {final.sig!r} + ({final.inf!r})eps")
    return PASS


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def _check_unitary(m: DCMatrix, atol: float):
    prod = m.adjoint() @ m
    eye = np.eye(m.rows)
    residual = max(float(np.abs(prod.sig - eye).max()), float(np.abs(prod.inf).max()))
    return residual <= atol, residual


def _check_hermitian(m: DCMatrix, atol: float):
    adj = m.adjoint()
    residual = max(
        float(np.abs(adj.sig - m.sig).max()), float(np.abs(adj.inf - m.inf).max())
    )
    return residual <= atol, residual


def _check_spectrum(m: DCMatrix, atol: float, delta: float):
    if is_hermitian(m):
        spec = eig_hermitian(m, delta)
    elif is_unitary(m):
        spec = eig_unitary(m, delta)
    else:
        return False, float("inf")
    rec = spec.reconstruct()
    residual = max(
        float(np.abs(rec.sig - m.sig).max()), float(np.abs(rec.inf - m.inf).max())
    )
    return residual <= atol, residual


def cmd_check(args) -> int:
    delta = args.delta
    if args.what == "covariance":
        patch = lorentz_encodings(args.alpha, args.beta, args.mass)
        rng = np.random.default_rng(args.seed)
        worst = None
        for _ in range(args.trials):
            amp = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            amp /= np.linalg.norm(amp)
            mode = "dual_exact" if args.mode == "dual" else "corrected"
            rep = covariance_check(patch, (amp[0], amp[1]), mode=mode, h=args.h)
            if worst is None or rep.max_discrepancy > worst.max_discrepancy:
                worst = rep
        report = {
            "check": "covariance",
            "mode": worst.mode,
            "alpha": worst.alpha,
            "beta": worst.beta,
            "max_discrepancy": worst.max_discrepancy,
            "fitted_order": worst.fitted_order,
            "pass": worst.passed,
        }
        _write_report(report, args.out)
        return PASS if worst.passed else FAIL

    obj = serialize.tagged_from_json(_load_json(args.input))
    if isinstance(obj, Measurement):
        print("error: check expects a unitary/matrix file", file=sys.stderr)
        return USAGE
    m = obj if isinstance(obj, DCMatrix) else DCMatrix(obj.vec.sig.reshape(-1, 1))

    if args.what == "unitary":
        ok, residual = _check_unitary(m, args.rtol)
    elif args.what == "hermitian":
        ok, residual = _check_hermitian(m, args.rtol)
    elif args.what == "spectrum":
        ok, residual = _check_spectrum(m, args.rtol, delta)
    elif args.what == "semipositive":
        rep = check_appreciably_semipositive(m, trials=args.trials, seed=args.seed,
                                             tau=args.tau)
        ok, residual = rep.passed, rep.worst_violation
    else:  # unreachable; argparse restricts choices
        return USAGE

    report = {"check": args.what, "pass": bool(ok), "worst_residual": residual}
    _write_report(report, args.out)
    return PASS if ok else FAIL


# ---------------------------------------------------------------------------
# translate
# ---------------------------------------------------------------------------


def _extend_from_family(data, step_default: float):
    """Family file: matrices sampled at -step, 0, +step.  One operator
    per slot means a unitary family; several mean a measurement."""
    step = float(data.get("step", step_default))
    zero = [serialize.matrix_from_json(m) for m in data["at_zero"]]
    plus = [serialize.matrix_from_json(m) for m in data["at_plus"]]
    minus = [serialize.matrix_from_json(m) for m in data["at_minus"]]
    if len(zero) == 1:
        grid = {0.0: zero[0].sig, step: plus[0].sig, -step: minus[0].sig}
        fam = ParamUnitary(evaluate=lambda h: grid[h])
        return serialize.unitary_to_json(dc_extend_unitary(fam, step=step))
    ops = tuple(
        DCMatrix(z.sig, (p.sig - m.sig) / (2.0 * step))
        for z, p, m in zip(zero, plus, minus)
    )
    return serialize.measurement_to_json(Measurement(ops))


def cmd_translate(args) -> int:
    data = _load_json(args.input)
    if args.extend:
        if data.get("kind") != "family":
            print("error: --extend expects a family file", file=sys.stderr)
            return USAGE
        out = _extend_from_family(data, args.h or 1e-6)
        serialize.dump_json(out, args.out)
        return PASS

    obj = serialize.tagged_from_json(data)
    if isinstance(obj, DCMatrix):
        corrected = complex_correct_unitary(obj, args.h)
        out = serialize.unitary_to_json(DCMatrix(corrected))
    elif isinstance(obj, Measurement):
        mats = complex_correct_measurement(obj, args.h)
        out = serialize.measurement_to_json(
            Measurement(tuple(DCMatrix(m) for m in mats), obj.labels)
        )
    else:
        print("error: translate expects a unitary or measurement file", file=sys.stderr)
        return USAGE
    serialize.dump_json(out, args.out)
    return PASS


# ---------------------------------------------------------------------------
# convergence
# ---------------------------------------------------------------------------


def _gate_residual(h: float, mass: float) -> float:
    u_eps = dirac_gate(mass)
    approx = u_eps.sig + h * u_eps.inf
    exact = complex_correct_unitary(u_eps, h)
    return float(np.abs(approx - exact).max())


def cmd_convergence(args) -> int:
    if args.walk:
        def task(n):
            err, h, t_end = walk_vs_continuum_error(n, k=args.wavenumber, m=args.mass)
            return {"sites": n, "h": h, "time": t_end, "l2_error": err}

        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(task, args.sites))
        errors = [r["l2_error"] for r in results]
    else:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            resids = list(pool.map(lambda h: _gate_residual(h, args.mass), args.h_list))
        results = [{"h": h, "residual": r} for h, r in zip(args.h_list, resids)]
        errors = resids

    ratios = [a / b for a, b in zip(errors, errors[1:]) if b > 0]
    report = {"results": results, "ratios": ratios}
    _write_report(report, args.out)
    return PASS


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dcq",
                                     description="dual-complex quantum toolkit")
    parser.add_argument("--tau", type=float, default=scalar.TAU,
                        help="appreciability cutoff")
    parser.add_argument("--delta", type=float, default=1e-8,
                        help="eigenvalue clustering threshold")
    parser.add_argument("--rtol", type=float, default=1e-8,
                        help="residual tolerance for checks")
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("walk", help="run the Dirac quantum walk")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--sites", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--record-every", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("check", help="verify operator properties")
    p.add_argument("what", choices=["unitary", "hermitian", "spectrum",
                                    "semipositive", "covariance"])
    p.add_argument("--in", dest="input", help="tagged JSON input file")
    p.add_argument("--out")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--beta", type=int, default=1)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--mode", choices=["dual", "corrected"], default="dual")
    p.add_argument("--h", type=float, default=1e-2)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("translate", help="dual-complex extension / complex correction")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--extend", action="store_true")
    group.add_argument("--correct", action="store_true")
    p.add_argument("--h", type=float, default=0.0)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("convergence", help="order-of-accuracy studies")
    p.add_argument("--h-list", type=float, nargs="+",
                   default=[1e-2, 5e-3, 2.5e-3])
    p.add_argument("--walk", action="store_true",
                   help="walk-vs-continuum study instead of the gate study")
    p.add_argument("--sites", type=int, nargs="+", default=[256, 512, 1024])
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--wavenumber", type=float, default=1.0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_convergence)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DCError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
