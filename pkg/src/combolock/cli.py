"""Command-line front end.

Subcommands: ``simulate`` replays a scenario file to a trace, ``table1``
replays the built-in bench-test table, ``analyze`` audits the key-sequence
space, ``circuit`` prints the timing and driver calculations, and ``repl``
drives a lock interactively on a virtual clock.  Report commands can
render a matplotlib figure next to their delimited output via ``--plot``.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import circuit as ckt
from .core import ConfigError, LockConfig, validate_config
from .keyspace import LengthOutOfRange, analyze_range, stats_to_csv, stats_to_text
from .sim import (
    ScenarioError,
    ScenarioParseError,
    TimerMode,
    VirtualLock,
    load_scenario,
    run_scenario,
)
from .table1 import reproduce_table1

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2


def parse_digits(text: str) -> tuple[int, ...]:
    """Accept '9502', '9,5,0,2', or '9 5 0 2'."""
    cleaned = text.replace(",", " ").split() or [text]
    digits: list[int] = []
    for chunk in cleaned:
        for ch in chunk:
            if not ch.isdigit():
                raise argparse.ArgumentTypeError(f"{text!r} is not a list of keypad digits")
            digits.append(int(ch))
    return tuple(digits)


def _add_lock_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("lock configuration")
    g.add_argument("--code", type=parse_digits, default=None,
                   help="code sequence, e.g. 9502 or 9,5,0,2")
    g.add_argument("--reset-keys", type=parse_digits, default=None,
                   help="reset keys, e.g. 3478")
    g.add_argument("--dummy-keys", type=parse_digits, default=None,
                   help="dummy (decoy) keys, e.g. 16")
    g.add_argument("--hold-ms", type=int, default=None,
                   help="auto-relock window in milliseconds (default 4700)")
    g.add_argument("--timer-mode", choices=[m.value for m in TimerMode],
                   default=TimerMode.ON_UNLOCK.value,
                   help="when the relock window is armed (default on_unlock)")


def _add_output_options(p: argparse.ArgumentParser, default_format: str) -> None:
    g = p.add_argument_group("output")
    g.add_argument("--format", choices=["text", "csv"], default=default_format,
                   help=f"output format (default {default_format})")
    g.add_argument("--out", default=None, metavar="PATH",
                   help="write the report to PATH instead of stdout")
    g.add_argument("--plot", default=None, metavar="PATH",
                   help="also render a figure to PATH (png/pdf/svg)")


def _add_circuit_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("circuit parameters")
    for name, help_text in [
        ("r5", "latch-output divider lower leg, ohms (default 680k)"),
        ("r6", "hold-timer resistor, ohms (default 470k)"),
        ("r8", "reset-input divider lower leg, ohms (default 10M)"),
        ("r9", "latch-output divider upper leg, ohms (default 10k)"),
        ("r10", "driver base resistor, ohms (default 4.7k)"),
        ("c1", "hold-timer capacitor, farads (default 10u)"),
        ("c2", "smoothing capacitor, farads (default 470u)"),
        ("vcc", "supply rail, volts (default 12)"),
        ("vbe", "driver base-emitter drop, volts (default 0.7)"),
        ("hfe", "driver current gain (default 320)"),
    ]:
        g.add_argument(f"--{name}", type=float, default=None, help=help_text)
    g.add_argument("--i-load", type=float, default=0.5,
                   help="load current for the ripple estimate, amperes (default 0.5)")


def build_lock_config(args: argparse.Namespace) -> LockConfig:
    cfg = LockConfig()
    if args.code is not None:
        cfg = replace(cfg, code=args.code)
        # Default role sets yield to an explicit code override; explicit
        # role overrides below still win and are validated as given.
        cfg = replace(
            cfg,
            reset_keys=cfg.reset_keys - set(cfg.code),
            dummy_keys=cfg.dummy_keys - set(cfg.code),
        )
    if args.reset_keys is not None:
        cfg = replace(cfg, reset_keys=frozenset(args.reset_keys))
    if args.dummy_keys is not None:
        cfg = replace(cfg, dummy_keys=frozenset(args.dummy_keys))
    if args.hold_ms is not None:
        cfg = replace(cfg, hold_time_ms=args.hold_ms)
    return validate_config(cfg)


def build_circuit_params(args: argparse.Namespace) -> ckt.CircuitParams:
    overrides = {
        name: getattr(args, name)
        for name in ("r5", "r6", "r8", "r9", "r10", "c1", "c2", "vcc", "vbe", "hfe")
        if getattr(args, name) is not None
    }
    return ckt.CircuitParams(**overrides)


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _trace_text(trace) -> str:
    lines = [f"{'t_ms':>8}  {'stimulus':<14} {'latches':<24} {'solenoid':<8} green red"]
    for rec in trace.records:
        levels = " ".join("HIGH" if b else "LOW" for b in rec.latches)
        lines.append(
            f"{rec.t_ms:>8}  {rec.stimulus:<14} {levels:<24} "
            f"{rec.outputs.solenoid:<8} {rec.outputs.green:<5} {rec.outputs.red}"
        )
    return "\n".join(lines) + "\n"


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        events = load_scenario(args.scenario)
    except FileNotFoundError:
        print(f"error: scenario file not found: {args.scenario}", file=sys.stderr)
        return EXIT_PARSE
    except ScenarioParseError as exc:
        print(f"error: {args.scenario}: {exc}", file=sys.stderr)
        return EXIT_PARSE

    try:
        cfg = build_lock_config(args)
        t_end = args.t_end_ms
        if t_end is None:
            t_end = events[-1].t_ms + cfg.hold_time_ms if events else 0
        trace = run_scenario(cfg, events, t_end, TimerMode(args.timer_mode))
    except (ConfigError, ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE

    _emit(trace.to_csv() if args.format == "csv" else _trace_text(trace), args.out)
    if args.plot:
        from .plots import save_trace_figure

        save_trace_figure(trace, args.plot)
    return EXIT_OK


def cmd_table1(args: argparse.Namespace) -> int:
    try:
        cfg = build_lock_config(args)
        report = reproduce_table1(cfg)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE

    _emit(report.to_csv() if args.format == "csv" else report.to_text(), args.out)
    if args.plot:
        from .plots import save_table1_figure

        save_table1_figure(report, args.plot)
    return EXIT_OK if report.outputs_all_match else EXIT_FAILURE


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        cfg = build_lock_config(args)
        stats = analyze_range(cfg, args.l_min, args.l_max)
    except LengthOutOfRange as exc:
        print(f"error: length out of range: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE

    _emit(stats_to_csv(stats) if args.format == "csv" else stats_to_text(stats), args.out)
    if args.plot:
        from .plots import save_keyspace_figure

        save_keyspace_figure(stats, args.plot)
    return EXIT_OK


def _circuit_report(params: ckt.CircuitParams, i_load: float, fmt: str) -> str:
    tau = ckt.time_constant(params.r6, params.c1)
    hold_ms = ckt.derive_hold_time(params)
    op = ckt.bjt_operating_point(params.vcc, params.vbe, params.r10, params.hfe)
    v_latch_rest = ckt.divider_out(params.vcc, params.r9, params.r5)
    v_reset_rest = ckt.divider_out(params.vcc, params.r5, params.r8)
    ripple = ckt.ripple_estimate(i_load, params.mains_f, params.c2)
    reg_min_in = params.regulator_out_v + params.regulator_dropout_v

    if fmt == "csv":
        rows = [
            ("tau_s", tau, "s"),
            ("hold_time_ms", hold_ms, "ms"),
            ("v_drive", op.v_q3, "V"),
            ("i_b", op.i_b, "A"),
            ("i_c", op.i_c, "A"),
            ("i_e", op.i_e, "A"),
            ("v_latch_divider", v_latch_rest, "V"),
            ("v_reset_divider", v_reset_rest, "V"),
            ("ripple_pp", ripple, "V"),
            ("regulator_min_in", reg_min_in, "V"),
        ]
        out = ["quantity,value,unit"]
        out += [f"{name},{value!r},{unit}" for name, value, unit in rows]
        return "\n".join(out) + "\n"

    return (
        "Circuit calculations\n"
        "\n"
        f"Hold timer (R6 = {params.r6:.0f} ohm, C1 = {params.c1:.3e} F):\n"
        f"  tau = R6*C1 = {tau:.3f} s  ->  hold window {hold_ms} ms\n"
        "\n"
        f"Relay driver (vcc = {params.vcc:g} V, vbe = {params.vbe:g} V, "
        f"rb = R10 = {params.r10:.0f} ohm, hfe = {params.hfe:g}):\n"
        f"  drive voltage = vcc - vbe = {op.v_q3:.3f} V\n"
        f"  I_B = {op.i_b * 1e3:.3f} mA\n"
        f"  I_C = {op.i_c:.3f} A\n"
        f"  I_E = {op.i_e:.3f} A\n"
        "\n"
        "Divider nodes at rest:\n"
        f"  first-latch output (R9 = {params.r9:.0f} over R5 = {params.r5:.0f}): {v_latch_rest:.3f} V\n"
        f"  reset input (R5 = {params.r5:.0f} over R8 = {params.r8:.0f}): {v_reset_rest:.3f} V\n"
        "\n"
        "Supply:\n"
        f"  ripple at {i_load:.3f} A load, {params.mains_f:g} Hz, "
        f"C2 = {params.c2:.3e} F: {ripple:.3f} V peak-to-peak\n"
        f"  regulator: {params.regulator_out_v:g} V out, needs >= {reg_min_in:g} V in "
        f"({params.regulator_dropout_v:g} V dropout)\n"
    )


def cmd_circuit(args: argparse.Namespace) -> int:
    try:
        params = build_circuit_params(args)
        report = _circuit_report(params, args.i_load, args.format)
    except ckt.CircuitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE

    _emit(report, args.out)
    if args.plot:
        from .plots import save_discharge_figure

        save_discharge_figure(params, args.plot)
    return EXIT_OK


def _repl_state_line(lock: VirtualLock) -> str:
    levels = " ".join(
        f"Q{i}={'HIGH' if b else 'LOW'}" for i, b in enumerate(lock.state)
    )
    o = lock.outputs
    return (
        f"t={lock.now_ms}ms  {levels}  solenoid={o.solenoid} "
        f"green={o.green} red={o.red}"
    )


def cmd_repl(args: argparse.Namespace) -> int:
    try:
        cfg = build_lock_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE

    lock = VirtualLock(cfg, TimerMode(args.timer_mode))
    print("virtual lock ready; commands: press <digits>, wait <ms>, state, quit")
    print(_repl_state_line(lock))
    while True:
        try:
            line = input("> ")
        except EOFError:
            break
        parts = line.strip().split(None, 1)
        if not parts:
            continue
        cmd, arg = parts[0].lower(), parts[1] if len(parts) > 1 else ""
        if cmd in ("quit", "exit"):
            break
        if cmd == "state":
            print(_repl_state_line(lock))
            continue
        if cmd == "press":
            try:
                digits = parse_digits(arg)
            except argparse.ArgumentTypeError as exc:
                print(f"error: {exc}")
                continue
            if not digits:
                print("error: press needs at least one digit")
                continue
            for d in digits:
                lock.press(d)
            print(_repl_state_line(lock))
            continue
        if cmd == "wait":
            try:
                ms = int(arg)
            except ValueError:
                print(f"error: wait needs a whole number of ms, got {arg!r}")
                continue
            if ms < 0:
                print("error: wait must be non-negative")
                continue
            expired = lock.wait(ms)
            if expired:
                print("hold window expired; latches cleared")
            print(_repl_state_line(lock))
            continue
        print(f"unknown command {cmd!r}; try press/wait/state/quit")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="combolock",
        description="Simulate and audit a latch-cascade keypad combination lock.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="replay a scenario file to a trace")
    p_sim.add_argument("scenario", help="scenario file: one '<t_ms> <key>' per line")
    p_sim.add_argument("--t-end-ms", type=int, default=None,
                       help="observation horizon (default: last event + hold window)")
    _add_lock_options(p_sim)
    _add_output_options(p_sim, default_format="csv")
    p_sim.set_defaults(func=cmd_simulate)

    p_tbl = sub.add_parser("table1", help="replay the 20-row bench-test table")
    _add_lock_options(p_tbl)
    _add_output_options(p_tbl, default_format="text")
    p_tbl.set_defaults(func=cmd_table1)

    p_an = sub.add_parser("analyze", help="audit the key-sequence space")
    p_an.add_argument("l_min", type=int, help="shortest sequence length")
    p_an.add_argument("l_max", type=int, help="longest sequence length")
    _add_lock_options(p_an)
    _add_output_options(p_an, default_format="text")
    p_an.set_defaults(func=cmd_analyze)

    p_ck = sub.add_parser("circuit", help="print timing and driver calculations")
    _add_circuit_options(p_ck)
    _add_output_options(p_ck, default_format="text")
    p_ck.set_defaults(func=cmd_circuit)

    p_repl = sub.add_parser("repl", help="drive a lock interactively (virtual clock)")
    _add_lock_options(p_repl)
    p_repl.set_defaults(func=cmd_repl)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
