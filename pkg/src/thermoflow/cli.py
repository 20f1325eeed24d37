"""Command-line front end.

Exit-code protocol: 0 means success (and "feasible" for decision
commands), 1 means a well-formed infeasible verdict, 2 means usage or
input errors.  All numeric output is printed with ``repr``, which
round-trips doubles exactly; CSV uses '.' decimals and LF endings
regardless of locale.

The order grid of the second-law checks can be overridden with the
``THERMOFLOW_ALPHA_GRID`` environment variable (comma-separated reals).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import engine as engine_mod
from . import oracle as oracle_mod
from . import work as work_mod
from .divergence import (
    check_cto_transition,
    check_cto_with_ancilla,
    iid_extend,
    smooth_free_energy,
)
from .order import check_noisy_transition
from .states import IncoherentState, load_state_file, state_to_json_dict
from .thermo_curve import check_thermal_transition, curve
from .verdicts import TransitionVerdict

__all__ = ["main"]


class CliError(Exception):
    """Usage or input problem; maps to exit code 2."""


def _fmt(value: float) -> str:
    return repr(float(value))


def _alpha_grid_override() -> tuple[float, ...] | None:
    raw = os.environ.get("THERMOFLOW_ALPHA_GRID")
    if raw is None:
        return None
    try:
        return tuple(float(tok) for tok in raw.split(",") if tok.strip())
    except ValueError as exc:
        raise CliError(f"THERMOFLOW_ALPHA_GRID: {exc}") from exc


def _load_state(path: str) -> tuple[IncoherentState, float]:
    try:
        return load_state_file(path)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    except (OSError, ValueError) as exc:
        raise CliError(f"{path}: {exc}") from exc


def _resolve_beta(betas: list[float], override: float | None) -> float:
    if override is not None:
        if override <= 0:
            raise CliError("--beta must be > 0")
        return override
    if not betas:
        raise CliError("no inverse temperature available")
    if any(abs(b - betas[0]) > 1e-12 for b in betas):
        raise CliError("state files disagree on beta; pass --beta to override")
    return betas[0]


def _parse_floats(raw: str, flag: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in raw.split(",") if tok.strip())
    except ValueError as exc:
        raise CliError(f"{flag}: {exc}") from exc
    if not values:
        raise CliError(f"{flag}: empty list")
    return values


# --- curve -------------------------------------------------------------------

_SVG_SIZE = (800, 600)
_SVG_MARGIN = 60


def _svg_document(curves) -> str:
    width, height = _SVG_SIZE
    margin = _SVG_MARGIN
    x_max = max(c.right_endpoint[0] for c in curves)
    span_x = (width - 2 * margin) / x_max
    span_y = height - 2 * margin

    def to_user(x: float, y: float) -> tuple[float, float]:
        return margin + x * span_x, height - margin - y * span_y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    x0, y0 = to_user(0.0, 0.0)
    x1, _ = to_user(x_max, 0.0)
    _, y1 = to_user(0.0, 1.0)
    parts.append(
        f'<path d="M {x0:.4f} {y1:.4f} L {x0:.4f} {y0:.4f} L {x1:.4f} {y0:.4f}" '
        'fill="none" stroke="black" stroke-width="1"/>'
    )
    styles = ['stroke="#1f77b4"', 'stroke="#d62728" stroke-dasharray="6 3"']
    for c, style in zip(curves, styles):
        pts = list(c.vertices)
        if pts[-1][0] < x_max:
            pts.append((x_max, pts[-1][1]))
        coords = " ".join(f"{to_user(x, y)[0]:.4f},{to_user(x, y)[1]:.4f}" for x, y in pts)
        parts.append(f'<polyline points="{coords}" fill="none" {style} stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cmd_curve(args) -> int:
    loaded = [_load_state(p) for p in args.states]
    beta = _resolve_beta([b for _s, b in loaded], args.beta)
    curves = [curve(s, beta) for s, _b in loaded]
    blocks = []
    for c in curves:
        rows = ["x,y"] + [f"{_fmt(x)},{_fmt(y)}" for x, y in c.vertices]
        blocks.append("\n".join(rows))
    sys.stdout.write("\n\n".join(blocks) + "\n")
    if args.svg:
        Path(args.svg).write_text(_svg_document(curves), encoding="utf-8")
    return 0


# --- check -------------------------------------------------------------------

def _run_check(model: str, rho, rho_prime, beta: float) -> TransitionVerdict:
    alphas = _alpha_grid_override()
    if model == "noisy":
        return check_noisy_transition(rho, rho_prime)
    if model == "thermal":
        return check_thermal_transition(rho, rho_prime, beta)
    if model == "catalytic":
        return check_cto_transition(rho, rho_prime, beta, alphas=alphas)
    if model == "catalytic-ancilla":
        return check_cto_with_ancilla(rho, rho_prime, beta, alphas=alphas)
    raise CliError(f"unknown model {model!r}")


def _cmd_check(args) -> int:
    rho, beta_a = _load_state(args.initial)
    rho_prime, beta_b = _load_state(args.target)
    beta = _resolve_beta([beta_a, beta_b], args.beta)
    try:
        verdict = _run_check(args.model, rho, rho_prime, beta)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    print(json.dumps(verdict.to_json_dict()))
    return 0 if verdict.feasible else 1


# --- work --------------------------------------------------------------------

def _cmd_work(args) -> int:
    if args.quantity == "fixed":
        if args.target is None:
            raise CliError("work fixed requires two state files")
        rho, beta_a = _load_state(args.state)
        rho_prime, beta_b = _load_state(args.target)
        beta = _resolve_beta([beta_a, beta_b], args.beta)
        value = work_mod.work_fixed_output(rho, rho_prime, beta, alphas=_alpha_grid_override())
    else:
        rho, beta_a = _load_state(args.state)
        beta = _resolve_beta([beta_a], args.beta)
        fn = work_mod.distillable_work if args.quantity == "distill" else work_mod.work_of_formation
        value = fn(rho, beta)
    print(
        json.dumps(
            {
                "kind": value.kind,
                "value": value.value,
                "minimizing_alpha": value.minimizing_alpha,
            }
        )
    )
    return 0


# --- smooth ------------------------------------------------------------------

def _cmd_smooth(args) -> int:
    rho, beta_file = _load_state(args.state)
    beta = _resolve_beta([beta_file], args.beta)
    ns = tuple(int(n) for n in _parse_floats(args.n, "--n"))
    alphas = {"0": (0.0,), "inf": (math.inf,), "both": (0.0, math.inf)}[args.alpha]
    lines = ["n,alpha,epsilon,value"]
    for n in ns:
        extended = iid_extend(rho, n)
        for alpha in alphas:
            value = smooth_free_energy(extended, beta, alpha, args.epsilon)
            label = "inf" if alpha == math.inf else _fmt(alpha)
            lines.append(f"{n},{label},{_fmt(args.epsilon)},{_fmt(value)}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


# --- engine ------------------------------------------------------------------

def _cmd_engine(args) -> int:
    if args.calculation == "carnot":
        print(_fmt(engine_mod.carnot(args.beta_hot, args.beta_cold)))
        return 0
    if args.calculation == "eta":
        if args.omega is None:
            raise CliError("engine eta requires --omega")
        print(_fmt(engine_mod.eta_nano(args.omega, args.beta_hot, args.beta_cold)))
        return 0
    if args.gaps is None:
        raise CliError(f"engine {args.calculation} requires --gaps")
    spec = engine_mod.EngineSpec(
        beta_hot=args.beta_hot,
        beta_cold=args.beta_cold,
        gaps=_parse_floats(args.gaps, "--gaps"),
        epsilon=args.epsilon,
    )
    if args.calculation == "omega":
        print(_fmt(engine_mod.omega(spec, convention=args.omega_convention)))
        return 0
    grid = _parse_floats(args.grid, "--grid") if args.grid else None
    points = engine_mod.quasi_static_estimate(spec, beta_prime_grid=grid)
    lines = ["beta_prime,w_ext,delta_h,efficiency"]
    for pt in points:
        lines.append(
            f"{_fmt(pt.beta_prime)},{_fmt(pt.work)},{_fmt(pt.heat_drawn)},{_fmt(pt.efficiency)}"
        )
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


# --- oracle ------------------------------------------------------------------

def _cmd_oracle(args) -> int:
    rho, beta_a = _load_state(args.initial)
    rho_prime, beta_b = _load_state(args.target)
    beta = _resolve_beta([beta_a, beta_b], args.beta)
    if args.probe == "lp":
        from .states import gibbs

        if rho.hamiltonian != rho_prime.hamiltonian:
            raise CliError("lp probe requires a shared Hamiltonian")
        q = gibbs(rho.hamiltonian, beta).expanded_probabilities()
        p = rho.expanded_probabilities()
        p_target = rho_prime.expanded_probabilities()
        feasible, witness = oracle_mod.feasibility_lp(p, q, p_target)
        payload = {
            "feasible": feasible,
            "witness": None if witness is None else [list(map(float, row)) for row in witness],
        }
        print(json.dumps(payload))
        return 0 if feasible else 1
    catalyst = oracle_mod.catalyst_search(
        rho,
        rho_prime,
        beta,
        resolution=args.resolution,
        gap_max=args.gap_max,
    )
    if catalyst is None:
        print(json.dumps({"found": False, "catalyst": None}))
        return 1
    print(json.dumps({"found": True, "catalyst": state_to_json_dict(catalyst, beta)}))
    return 0


# --- batch -------------------------------------------------------------------

def _cmd_batch(args) -> int:
    root = Path(args.directory)
    if not root.is_dir():
        raise CliError(f"{args.directory}: not a directory")
    stems = sorted(p.name[: -len(".in.json")] for p in root.glob("*.in.json"))
    print("pair,result")
    for stem in stems:
        in_path = root / f"{stem}.in.json"
        out_path = root / f"{stem}.out.json"
        try:
            if not out_path.exists():
                raise CliError(f"missing {out_path.name}")
            rho, beta_a = _load_state(str(in_path))
            rho_prime, beta_b = _load_state(str(out_path))
            beta = _resolve_beta([beta_a, beta_b], args.beta)
            verdict = _run_check(args.model, rho, rho_prime, beta)
        except (CliError, ValueError) as exc:
            print(f"{stem},error: {exc}")
            continue
        print(f"{stem},{'feasible' if verdict.feasible else 'infeasible'}")
    return 0


# --- parser ------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermoflow",
        description=(
            "Transition checks, work quantifiers and engine bounds for "
            "energy-incoherent states. Exit codes: 0 feasible/success, "
            "1 infeasible, 2 usage or input error."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_curve = sub.add_parser("curve", help="emit curve vertices as CSV, optionally SVG")
    p_curve.add_argument("states", nargs="+", metavar="STATE.json")
    p_curve.add_argument("--svg", metavar="PATH", help="write an SVG rendering")
    p_curve.add_argument("--beta", type=float, default=None)
    p_curve.set_defaults(handler=_cmd_curve)

    p_check = sub.add_parser("check", help="decide a state transition")
    p_check.add_argument(
        "--model",
        required=True,
        choices=["noisy", "thermal", "catalytic", "catalytic-ancilla"],
    )
    p_check.add_argument("initial", metavar="INITIAL.json")
    p_check.add_argument("target", metavar="TARGET.json")
    p_check.add_argument("--beta", type=float, default=None)
    p_check.set_defaults(handler=_cmd_check)

    p_work = sub.add_parser("work", help="single-shot work quantifiers")
    p_work.add_argument("quantity", choices=["distill", "formation", "fixed"])
    p_work.add_argument("state", metavar="STATE.json")
    p_work.add_argument("target", nargs="?", default=None, metavar="TARGET.json")
    p_work.add_argument("--beta", type=float, default=None)
    p_work.set_defaults(handler=_cmd_work)

    p_smooth = sub.add_parser("smooth", help="smoothed free-energy table")
    p_smooth.add_argument("state", metavar="STATE.json")
    p_smooth.add_argument("--epsilon", type=float, required=True)
    p_smooth.add_argument("--n", default="1", help="comma-separated copy counts")
    p_smooth.add_argument("--alpha", choices=["0", "inf", "both"], default="both")
    p_smooth.add_argument("--beta", type=float, default=None)
    p_smooth.set_defaults(handler=_cmd_smooth)

    p_engine = sub.add_parser("engine", help="heat-engine bounds")
    p_engine.add_argument("calculation", choices=["carnot", "omega", "eta", "quasistatic"])
    p_engine.add_argument("--beta-hot", type=float, required=True, dest="beta_hot")
    p_engine.add_argument("--beta-cold", type=float, required=True, dest="beta_cold")
    p_engine.add_argument("--gaps", default=None, help="comma-separated qubit gaps")
    p_engine.add_argument("--epsilon", type=float, default=0.0)
    p_engine.add_argument("--omega", type=float, default=None)
    p_engine.add_argument(
        "--omega-convention",
        choices=list(engine_mod.OMEGA_CONVENTIONS),
        default="verbatim",
        dest="omega_convention",
    )
    p_engine.add_argument("--grid", default=None, help="comma-separated beta-prime values")
    p_engine.set_defaults(handler=_cmd_engine)

    p_oracle = sub.add_parser("oracle", help="brute-force verification probes")
    p_oracle.add_argument("probe", choices=["lp", "catalyst"])
    p_oracle.add_argument("initial", metavar="INITIAL.json")
    p_oracle.add_argument("target", metavar="TARGET.json")
    p_oracle.add_argument("--beta", type=float, default=None)
    p_oracle.add_argument("--resolution", type=int, default=40)
    p_oracle.add_argument("--gap-max", type=float, default=None, dest="gap_max")
    p_oracle.set_defaults(handler=_cmd_oracle)

    p_batch = sub.add_parser("batch", help="run a model over a directory of state pairs")
    p_batch.add_argument("directory")
    p_batch.add_argument(
        "--model",
        required=True,
        choices=["noisy", "thermal", "catalytic", "catalytic-ancilla"],
    )
    p_batch.add_argument("--beta", type=float, default=None)
    p_batch.set_defaults(handler=_cmd_batch)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
