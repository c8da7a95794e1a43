"""Command-line front end.

Subcommands: ``payoff``, ``nash``, ``threshold``, ``classify`` and ``sweep``.
Exit status is 0 on success, 2 on usage errors and 1 when a computation
fails (for example a threshold scan whose interval does not bracket a
boundary, or an unwritable output file).
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from typing import Sequence

from qpd import classify, closedform, equilibria, game
from qpd.game import HALF_PI, ClassicalPayoffMatrix, EntanglementConfig, GameConfig, StrategyParams

MEASUREMENTS = ("entangled", "product", "general")


class UsageError(ValueError):
    pass


def _fmt(value: float) -> str:
    # cos(pi/2) residue would otherwise print as 1e-33
    if abs(value) < 1e-12:
        value = 0.0
    return f"{value:.12g}"


def _fmt_tol(tol: float) -> str:
    mantissa, exponent = f"{tol:.0e}".split("e")
    return f"{mantissa}e{int(exponent)}"


def parse_strategy(text: str) -> tuple[StrategyParams, str | None]:
    """``"C"``, ``"D"``, ``"Q"`` or a raw ``"theta,phi"`` pair in radians."""
    text = text.strip()
    if text.upper() in ("C", "D", "Q"):
        return game.as_strategy(text), text.upper()
    try:
        theta, phi = (float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"strategy must be C, D, Q or 'theta,phi', got {text!r}") from None
    return StrategyParams(theta, phi), None


def parse_matrix(text: str) -> ClassicalPayoffMatrix:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"matrix must be 'R,S,T,U', got {text!r}") from None
    if len(values) != 4:
        raise UsageError(f"matrix must have four entries R,S,T,U, got {len(values)}")
    return ClassicalPayoffMatrix(*values)


@dataclass(frozen=True)
class RunSpec:
    subcommand: str
    measurement: str
    delta: float
    xi: float | None
    payoffs: ClassicalPayoffMatrix
    grid: int
    tol: float
    samples: int
    output: str | None
    method: str

    @property
    def config(self) -> GameConfig:
        if self.xi is None:
            raise UsageError("this subcommand needs one of --xi, --sin-xi or --x")
        return GameConfig(EntanglementConfig(self.xi, self.delta), self.payoffs)

    @property
    def param_name(self) -> str:
        return "x" if self.measurement == "product" else "sin_xi"

    def family(self):
        if self.measurement == "product":
            return lambda x: equilibria.product_family(x, self.payoffs)
        return lambda s: GameConfig(EntanglementConfig(game.xi_from_sin(s), self.delta), self.payoffs)

    def sweep_param(self) -> float:
        cfg = self.config
        return cfg.entanglement.x if self.measurement == "product" else cfg.entanglement.sin_xi


def _add_common(p: argparse.ArgumentParser, needs_xi: bool) -> None:
    p.add_argument("--measurement", choices=MEASUREMENTS, default="entangled")
    p.add_argument("--delta", type=float, help="measurement entanglement in radians (general only)")
    if needs_xi:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--xi", type=float, help="initial-state entanglement in radians")
        g.add_argument("--sin-xi", type=float, help="sin(xi)")
        g.add_argument("--x", type=float, help="sin^2(xi/2)")
    p.add_argument("--matrix", type=parse_matrix, default=ClassicalPayoffMatrix(),
                   help="classical payoffs R,S,T,U (default 3,0,5,1)")
    p.add_argument("--grid", type=int, default=equilibria.DEFAULT_GRID)
    p.add_argument("--tol", type=float, default=equilibria.NE_TOL)
    p.add_argument("--method", choices=("auto", "closed_form", "simulation"), default="auto")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpd", description="Quantum Prisoners' Dilemma toolkit")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("payoff", help="both players' payoffs for a strategy pair")
    _add_common(p, needs_xi=True)
    p.add_argument("--a", required=True, help="Alice's strategy: C, D, Q or theta,phi")
    p.add_argument("--b", required=True, help="Bob's strategy: C, D, Q or theta,phi")

    p = sub.add_parser("nash", help="certify a strategy profile as a Nash equilibrium")
    _add_common(p, needs_xi=True)
    p.add_argument("--profile", help="two-letter profile such as QQ or CD")
    p.add_argument("--a")
    p.add_argument("--b")

    p = sub.add_parser("threshold", help="locate where a profile stops being an NE")
    _add_common(p, needs_xi=False)
    p.add_argument("--profile", required=True)
    p.add_argument("--lo", type=float, default=0.0)
    p.add_argument("--hi", type=float, default=1.0)
    p.add_argument("--precision", type=float, default=1e-6)

    p = sub.add_parser("classify", help="strategic form and NE set at one entanglement")
    _add_common(p, needs_xi=True)
    p.add_argument("--eps", type=float, default=classify.DEFAULT_EPS)

    p = sub.add_parser("sweep", help="CSV of payoff elements, game class and NE set")
    _add_common(p, needs_xi=False)
    p.add_argument("--samples", type=int, default=classify.DEFAULT_SAMPLES)
    p.add_argument("--eps", type=float, default=classify.DEFAULT_EPS)
    p.add_argument("--output", "-o", help="CSV path (default: standard output)")
    return parser


def _resolve_xi(args: argparse.Namespace) -> float | None:
    if getattr(args, "xi", None) is not None:
        return args.xi
    if getattr(args, "sin_xi", None) is not None:
        return game.xi_from_sin(args.sin_xi)
    if getattr(args, "x", None) is not None:
        return game.xi_from_x(args.x)
    return None


def _resolve_delta(args: argparse.Namespace) -> float:
    if args.measurement == "general":
        if args.delta is None:
            raise UsageError("--measurement general requires --delta")
        return args.delta
    if args.delta is not None:
        raise UsageError("--delta is only valid with --measurement general")
    return HALF_PI if args.measurement == "entangled" else 0.0


def spec_from_args(args: argparse.Namespace) -> RunSpec:
    delta = _resolve_delta(args)
    xi = _resolve_xi(args)
    spec = RunSpec(
        subcommand=args.subcommand,
        measurement=args.measurement,
        delta=delta,
        xi=xi,
        payoffs=args.matrix,
        grid=args.grid,
        tol=args.tol,
        samples=getattr(args, "samples", classify.DEFAULT_SAMPLES),
        output=getattr(args, "output", None),
        method=args.method,
    )
    if spec.grid < 16:
        raise UsageError("--grid must be at least 16")
    if xi is not None:
        spec.config  # validates angle ranges
    return spec


def _profile_from_args(args) -> equilibria.StrategyProfile:
    if args.profile:
        if args.a or args.b:
            raise UsageError("use either --profile or --a/--b, not both")
        return equilibria.StrategyProfile.named(args.profile)
    if not (args.a and args.b):
        raise UsageError("nash needs --profile or both --a and --b")
    (a, na), (b, nb) = parse_strategy(args.a), parse_strategy(args.b)
    return equilibria.StrategyProfile(a, b, na, nb)


def cmd_payoff(spec: RunSpec, args, out) -> None:
    (a, _), (b, _) = parse_strategy(args.a), parse_strategy(args.b)
    cfg = spec.config
    sim = game.payoff_pair(cfg, a, b)
    print(f"A={_fmt(sim[0])} B={_fmt(sim[1])}", file=out)
    closed = None
    if cfg.payoffs.is_default and spec.delta == HALF_PI:
        closed = closedform.payoff_entangled(cfg.xi, a, b)
    elif cfg.payoffs.is_default and spec.delta == 0.0:
        closed = closedform.payoff_product(cfg.xi, a, b)
    if closed is not None:
        print(f"closed_form A={_fmt(closed[0])} B={_fmt(closed[1])}", file=out)
        print(f"difference A={abs(sim[0] - closed[0]):.3g} B={abs(sim[1] - closed[1]):.3g}", file=out)


def cmd_nash(spec: RunSpec, args, out) -> None:
    profile = _profile_from_args(args)
    cert = equilibria.certify(spec.config, profile, grid=spec.grid, tol=spec.tol, method=spec.method)
    status = "NE" if cert.is_ne else "not NE"
    if cert.is_ne:
        status += " (strict)" if cert.is_strict else " (non-strict)"
    print(f"profile {profile.label}: {status}", file=out)
    print(f"margin_a={cert.margin_a:.6g} margin_b={cert.margin_b:.6g} method={cert.method}", file=out)
    for who, dev in (("A", cert.deviation_a), ("B", cert.deviation_b)):
        print(f"best deviation {who}: theta={_fmt(dev[0])} phi={_fmt(dev[1])}", file=out)


def cmd_threshold(spec: RunSpec, args, out) -> None:
    profile = equilibria.StrategyProfile.named(args.profile)
    value = equilibria.threshold_scan(spec.family(), profile, args.lo, args.hi, tol=args.precision,
                                      ne_tol=spec.tol, grid=spec.grid, method=spec.method)
    print(f"{spec.param_name} = {value:.6f} ± {_fmt_tol(args.precision)}", file=out)


def _ne_label(ne) -> str:
    return ", ".join(sorted(ne)) if ne else "none"


def _classify_at(spec: RunSpec, eps: float):
    """Class, quad and NE set for the configured point."""
    cfg = spec.config
    closed = cfg.payoffs.is_default and spec.measurement in ("entangled", "product")
    if closed:
        return classify.describe(spec.measurement, spec.sweep_param(), eps)
    quad = classify.quad_from_config(cfg)
    candidates = equilibria.CLASSICAL_PROFILES if spec.delta == 0.0 else equilibria.NAMED_PROFILES
    ne = equilibria.numeric_ne_set(cfg, candidates, grid=spec.grid, tol=spec.tol, method=spec.method)
    return classify.classify_quad(quad, eps), quad, ne


def cmd_classify(spec: RunSpec, args, out) -> None:
    cls, quad, ne = _classify_at(spec, args.eps)
    print(f"{cls}; NE: {_ne_label(ne)}", file=out)
    print(" ".join(f"{k}={_fmt(v)}" for k, v in quad.as_dict().items()), file=out)


def sweep_rows(spec: RunSpec, eps: float) -> list[list[str]]:
    if spec.measurement == "general":
        raise UsageError("sweep supports --measurement entangled or product")
    rows = []
    closed = spec.payoffs.is_default
    for param in classify.sweep_quads(spec.measurement, spec.samples)[:, 0]:
        param = float(param)
        if closed:
            cls, quad, ne = classify.describe(spec.measurement, param, eps)
        else:
            cfg = spec.family()(param)
            quad = classify.quad_from_config(cfg)
            cls = classify.classify_quad(quad, eps)
            ne = equilibria.numeric_ne_set(cfg, classify.candidate_profiles(spec.measurement),
                                           grid=spec.grid, tol=spec.tol, method=spec.method)
        rows.append([_fmt(param), *(_fmt(v) for v in quad.as_tuple()), str(cls), " ".join(sorted(ne))])
    return rows


def cmd_sweep(spec: RunSpec, args, out) -> None:
    if spec.samples < 2:
        raise UsageError("--samples must be at least 2")
    rows = sweep_rows(spec, args.eps)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["param", "R", "S", "T", "U", "class", "ne_set"])
    writer.writerows(rows)
    if spec.output:
        with open(spec.output, "w", newline="", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())


COMMANDS = {
    "payoff": cmd_payoff,
    "nash": cmd_nash,
    "threshold": cmd_threshold,
    "classify": cmd_classify,
    "sweep": cmd_sweep,
}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        spec = spec_from_args(args)
    except ValueError as exc:
        print(f"qpd: error: {exc}", file=err)
        return 2
    try:
        COMMANDS[spec.subcommand](spec, args, out)
    except UsageError as exc:
        print(f"qpd: error: {exc}", file=err)
        return 2
    except equilibria.ThresholdError as exc:
        print(f"qpd: {exc}", file=err)
        return 1
    except ValueError as exc:
        # angle or strategy validation that only surfaces inside a subcommand
        print(f"qpd: error: {exc}", file=err)
        return 2
    except (OSError, ArithmeticError) as exc:
        print(f"qpd: {exc}", file=err)
        return 1
    return 0


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
