"""Command-line front end: analyze / simulate / plan / verify.

Exit codes: 0 success, 2 usage or parse error, 3 wall-clock budget hit
(partial results written), 4 target unreachable / no schedule found.
An optional --config file holds key=value pairs that map onto long flag
names; explicit flags always win.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import datetime, timezone

from .graphs import parse_edge_list, to_dot
from .montecarlo import DetectorModel, SourceModel, run_campaign
from .planner import (
    brute_force_schedule_search,
    execute_schedule,
    execute_schedule_fock,
    parse_schedule,
    plan_join_sequence,
    plan_tree_protocol,
    schedule_text,
)
from .fock import fidelity, qubit_statevector_from_stabilizers
from .scaling import (
    ProtocolParams,
    csv_table,
    naive_time_log10,
    scaling_table,
    total_time_approx,
    total_time_approx_log10,
    total_time_exact_log10,
)

_ORACLE_QUBIT_CAP = 8


def _build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="pbsgraph",
        description="Fusion-based graph-state toolkit: scaling analytics, "
        "pulse-level Monte Carlo, schedule planning and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers: dict[str, argparse.ArgumentParser] = {}

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="key=value file mapped onto flags; flags take precedence")
        subparsers[name] = p
        return p

    # "Required" flags stay optional at the argparse level so a --config
    # file can supply them; _require checks presence after the merge.
    p = add("analyze", "tabulate success probabilities and preparation times")
    p.add_argument("--eta-s", type=float, help="source efficiency in (0, 1]")
    p.add_argument("--eta-d", type=float, help="detector efficiency in (0, 1]")
    p.add_argument("--m", type=int, help="number of doubling levels (target size n = 2^m)")
    p.add_argument("--naive", action="store_true", help="report the direct-generation baseline instead")
    p.add_argument("--n", type=int, help="target qubit count for --naive (even)")
    p.add_argument("--rep-rate-hz", type=float, help="pulse rate; enables times in seconds")
    p.add_argument("--t0-seconds", type=float, help="pulse period; overrides --rep-rate-hz")
    p.add_argument("--csv", help="write the per-level table to this path")

    p = add("simulate", "run the pulse-level Monte Carlo campaign")
    p.add_argument("--m", type=int, help="doubling levels, >= 1")
    p.add_argument("--eta-s", type=float, help="source efficiency in (0, 1]")
    p.add_argument("--eta-d", type=float, help="detector efficiency in (0, 1]")
    p.add_argument("--trials", type=int, default=1000, help="independent full-build trials")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dark", type=float, default=0.0, help="per-pulse dark count probability")
    p.add_argument("--number-resolving", action="store_true",
                   help="accept only exactly-one-photon detector counts")
    p.add_argument("--policy", choices=("both", "kept"), default="both",
                   help="which inputs to rebuild after a rejected connection")
    p.add_argument("--no-final-measurement", action="store_true",
                   help="skip the confirmation measurement of the last connection qubit")
    p.add_argument("--threads", type=int, default=1,
                   help="worker processes; never changes results")
    p.add_argument("--max-seconds", type=float, help="wall-clock budget; partial results exit 3")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")

    p = add("plan", "synthesize a schedule for a target graph")
    p.add_argument("target", nargs="?", help="edge-list file of the target graph")
    p.add_argument("--protocol", action="store_true", help="emit the doubling-protocol schedule")
    p.add_argument("--m", type=int, help="levels for --protocol")
    p.add_argument("--brute-force", action="store_true",
                   help="exhaustive search instead of tree planning (<= 8 vertices)")
    p.add_argument("--allow-intra", action="store_true",
                   help="brute force may fuse qubits already in one cluster")
    p.add_argument("--allow-hadamard", action="store_true",
                   help="brute force may insert bare Hadamards")
    p.add_argument("--max-gates", type=int, help="gate cap for the brute-force search")
    p.add_argument("--out", help="write the schedule here instead of stdout")
    p.add_argument("--dot", help="also write the target graph in DOT format")

    p = add("verify", "execute a schedule file and report what it builds")
    p.add_argument("schedule", help="schedule file (PAIR/PBS/H/MEASURE lines)")
    p.add_argument("--oracle", action="store_true",
                   help=f"cross-check in second quantization (<= {_ORACLE_QUBIT_CAP} qubits)")

    return parser, subparsers


def _parse_config_value(raw: str):
    lowered = raw.strip().lower()
    if lowered in ("true", "yes", "on"):
        return True
    if lowered in ("false", "no", "off"):
        return False
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            continue
    return raw


def _load_config(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.rstrip()!r}")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = _parse_config_value(value)
    return values


def _apply_config(argv: list[str], subparsers: dict[str, argparse.ArgumentParser]) -> None:
    """Pre-scan argv for --config and install its values as defaults on
    the chosen subcommand, so explicit flags keep precedence."""
    path = None
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif token.startswith("--config="):
            path = token.split("=", 1)[1]
    if path is None:
        return
    command = next((t for t in argv if not t.startswith("-")), None)
    sub = subparsers.get(command)
    if sub is None:
        return
    values = _load_config(path)
    known = {action.dest for action in sub._actions}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config keys for {command}: {', '.join(sorted(unknown))}")
    sub.set_defaults(**values)


def _require(args, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError(f"missing required options: {', '.join(missing)}")


def _resolve_t0(args) -> float | None:
    if args.t0_seconds is not None:
        if args.t0_seconds <= 0:
            raise ValueError("t0 must be positive")
        return args.t0_seconds
    if args.rep_rate_hz is not None:
        if args.rep_rate_hz <= 0:
            raise ValueError("repetition rate must be positive")
        return 1.0 / args.rep_rate_hz
    return None


def cmd_analyze(args) -> int:
    _require(args, "eta_s", "eta_d")
    t0 = _resolve_t0(args)
    if args.naive:
        if args.n is None:
            raise ValueError("--naive requires --n")
        log10_t = naive_time_log10(args.n, args.eta_s, args.eta_d)
        print(f"direct generation of n={args.n} at eta_s={args.eta_s:g} eta_d={args.eta_d:g}:")
        print(f"log10(T/t0) = {log10_t:.6g}  (T/t0 ~ 10^{log10_t:.1f})")
        if t0 is not None:
            print(f"log10(T/seconds) = {log10_t + math.log10(t0):.6g}")
        return 0

    if args.m is None:
        raise ValueError("analyze needs --m (or --naive with --n)")
    params = ProtocolParams(m=args.m, eta_s=args.eta_s, eta_d=args.eta_d)
    rows = scaling_table(args.m, args.eta_s, args.eta_d)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as handle:
            handle.write(csv_table(rows))
        print(f"wrote {args.csv} ({len(rows)} rows)")
    head = rows[-1]
    exact_log10 = total_time_exact_log10(params) + 0.0
    approx_log10 = total_time_approx_log10(params.n, args.eta_s, args.eta_d) + 0.0
    print(f"m={params.m} n={params.n} eta_s={args.eta_s:g} eta_d={args.eta_d:g}")
    print(f"a_m = {head.a_m:.12g}   p_m = {head.p_m:.12g}")
    if math.isfinite(head.t_exact_over_t0):
        print(f"T_exact/t0  = {head.t_exact_over_t0:.12g}  (log10 = {exact_log10:.6g})")
    else:
        print(f"T_exact/t0  = 10^{exact_log10:.6g}")
    print(f"T_approx/t0 = {head.t_approx_over_t0:.12g}  (log10 = {approx_log10:.6g})")
    if t0 is not None:
        if math.isfinite(head.t_exact_over_t0):
            print(f"T_exact  = {head.t_exact_over_t0 * t0:.6g} s at t0 = {t0:.4g} s")
        t_approx = total_time_approx(params.n, args.eta_s, args.eta_d)
        print(f"T_approx = {t_approx * t0:.6g} s at t0 = {t0:.4g} s")
    return 0


def cmd_simulate(args) -> int:
    _require(args, "m", "eta_s", "eta_d")
    params = ProtocolParams(m=args.m, eta_s=args.eta_s, eta_d=args.eta_d)
    source = SourceModel(eta_s=args.eta_s)
    detector = DetectorModel(
        eta_d=args.eta_d,
        dark_count_prob=args.dark,
        number_resolving=args.number_resolving,
    )
    result = run_campaign(
        params,
        source,
        detector,
        trials=args.trials,
        seed=args.seed,
        threads=args.threads,
        final_measurement=not args.no_final_measurement,
        policy=args.policy,
        max_seconds=args.max_seconds,
    )
    stamp = None
    if not args.no_timestamp:
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    text = json.dumps(result.to_json_dict(timestamp=stamp), indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"wrote {args.out} ({result.trials_completed}/{result.trials} trials)")
    else:
        sys.stdout.write(text)
    if result.partial:
        print("time budget exceeded: results are partial", file=sys.stderr)
        return 3
    return 0


def cmd_plan(args) -> int:
    if args.protocol:
        if args.m is None:
            raise ValueError("--protocol requires --m")
        sched = plan_tree_protocol(args.m)
        verdict = (
            f"# protocol schedule: {args.m} levels, {sched.pair_count()} pairs, "
            f"{sched.gate_count()} gates"
        )
    else:
        if args.target is None:
            raise ValueError("plan needs a target edge-list file or --protocol")
        with open(args.target, encoding="utf-8") as handle:
            target = parse_edge_list(handle.read())
        if args.brute_force:
            sched = brute_force_schedule_search(
                target,
                allow_intra=args.allow_intra,
                allow_hadamard=args.allow_hadamard,
                max_gates=args.max_gates,
            )
            if sched is None:
                print("no schedule found within the gate limit", file=sys.stderr)
                return 4
            verdict = (
                f"# found by search: {sched.pair_count()} pairs, {sched.gate_count()} gates"
            )
        else:
            sched = plan_join_sequence(target)
            if sched is None:
                print("target is unreachable by joins", file=sys.stderr)
                return 4
            verdict = f"# reachable: {sched.pair_count()} pairs, {sched.gate_count()} gates"

    body = verdict + "\n" + schedule_text(sched)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(body)
        print(verdict.lstrip("# "))
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(body)
    if args.dot:
        target_graph = sched.target
        if target_graph is not None:
            with open(args.dot, "w", encoding="utf-8") as handle:
                handle.write(to_dot(target_graph))
            print(f"wrote {args.dot}")
    return 0


def cmd_verify(args) -> int:
    with open(args.schedule, encoding="utf-8") as handle:
        sched = parse_schedule(handle.read())
    prob, group, graph = execute_schedule(sched)
    print(f"instructions: {len(sched.instructions)} "
          f"({sched.pair_count()} pairs, {sched.gate_count()} gates)")
    print(f"probability: {prob!r}")
    if graph is None:
        print("graph: not in graph form")
    else:
        edges = " ".join(f"{u}-{v}" for u, v in graph.sorted_edges())
        print(f"graph: {graph.num_vertices} vertices; edges: {edges if edges else '(none)'}")
    if args.oracle:
        n = group.num_qubits
        if n > _ORACLE_QUBIT_CAP:
            print(f"oracle: skipped ({n} qubits exceeds the {_ORACLE_QUBIT_CAP}-qubit cap)")
        elif prob == 0.0:
            print("oracle: skipped (impossible postselection)")
        else:
            fock_prob, state = execute_schedule_fock(sched)
            reference = qubit_statevector_from_stabilizers(group, ports=sorted(sched.qubit_ids()))
            fid = fidelity(state, reference)
            print(f"oracle probability: {fock_prob!r}")
            print(f"oracle fidelity: {fid:.12f}")
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = _build_parser()
    try:
        _apply_config(argv, subparsers)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    args = parser.parse_args(argv)
    handlers = {
        "analyze": cmd_analyze,
        "simulate": cmd_simulate,
        "plan": cmd_plan,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
