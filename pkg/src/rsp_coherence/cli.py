"""Command-line front end.

Exit status: 0 on success, 1 when ``verify`` finds a failing suite, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import harness, suites
from .sampling import DEFAULT_SHOTS, ShotConfig


def _add_common(p, *, n_default=8):
    p.add_argument("--state", choices=("psi-minus", "rho-p"), default="rho-p")
    p.add_argument("--p1", type=float, default=0.1)
    p.add_argument("--p2", type=float, default=0.2)
    p.add_argument("--phi-deg", type=float, default=0.0)
    p.add_argument("--n", type=int, default=n_default)
    p.add_argument("--p-step", type=float, default=0.05)
    p.add_argument("--shots", type=int, nargs="?", const=DEFAULT_SHOTS, default=None,
                   help=f"photon pairs per setting; bare flag means {DEFAULT_SHOTS}; omit for exact values")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--channel", choices=("u-dagger", "hadamard"), default="hadamard")
    p.add_argument("--q", type=int, choices=(0, 1), default=None)
    p.add_argument("--discord", action="store_true", help="add the geometric discord column")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser():
    parser = argparse.ArgumentParser(prog="rsp-coherence", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("table1", help="fidelities and witnesses at the eight tabulated phases"))
    _add_common(sub.add_parser("sweep-phi", help="payoff, enhancement and one-sided benefits vs target phase"))
    _add_common(sub.add_parser("sweep-noise", help="enhancement and discord over the (p1, p2) noise grid"))
    v = sub.add_parser("verify", help="run every property suite and emit a JSON report")
    _add_common(v)
    v.add_argument("--inject-fault", choices=suites.FAULTS, default=None)
    return parser


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = ShotConfig(args.shots, args.seed) if args.shots is not None else None
        if args.command == "verify":
            report = suites.run_all(seed=args.seed, shots=args.shots or 1_000_000,
                                    fault=args.inject_fault)
            _emit(json.dumps(report, indent=2) + "\n", args.out)
            return 0 if report["passed"] else 1
        if args.command == "table1":
            table = harness.cmd_table1(cfg, args.state, args.p1, args.p2)
        elif args.command == "sweep-phi":
            qs = (0, 1) if args.q is None else (args.q,)
            table = harness.cmd_sweep_phi(args.state, args.p1, args.p2, args.n, cfg,
                                          args.channel, qs, args.discord)
        else:
            table = harness.cmd_sweep_noise(args.p_step, np.deg2rad(args.phi_deg), cfg)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    text = harness.to_csv(table) if args.format == "csv" else harness.to_json(table)
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
