"""Figure rendering for traces, audits, and the hold-timer curve.

Each function draws one figure and writes it straight to a file, so the
CLI can drop a PNG next to its delimited output.  The Agg backend is
forced; nothing here ever opens a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .circuit import CircuitParams, discharge_voltage, time_constant
from .keyspace import KeyspaceStats
from .sim import SimTrace
from .table1 import Table1Report


def save_trace_figure(trace: SimTrace, path: str) -> None:
    """Timing diagram: one lane per latch plus the solenoid, vs time."""
    n = trace.cfg.n
    times = [rec.t_ms for rec in trace.records] + [trace.t_end_ms]
    lanes: list[list[int]] = []
    for i in range(n):
        levels = [int(rec.latches[i]) for rec in trace.records]
        lanes.append(levels + [levels[-1]])
    sol = [int(rec.outputs.solenoid_open) for rec in trace.records]
    sol = sol + [sol[-1]]

    fig, ax = plt.subplots(figsize=(9, 1.0 * (n + 1) + 1.2))
    offset = 0.0
    for i, levels in enumerate(lanes):
        ax.step(times, [v * 0.8 + offset for v in levels], where="post", lw=1.5)
        ax.text(-0.01, offset + 0.4, f"Q{i}", transform=ax.get_yaxis_transform(),
                ha="right", va="center")
        offset += 1.0
    ax.step(times, [v * 0.8 + offset for v in sol], where="post", lw=2.0, color="crimson")
    ax.text(-0.01, offset + 0.4, "solenoid", transform=ax.get_yaxis_transform(),
            ha="right", va="center")

    for rec in trace.records:
        if rec.kind.value == "press":
            ax.axvline(rec.t_ms, color="0.85", lw=0.7, zorder=0)
            ax.annotate(str(rec.key), (rec.t_ms, offset + 1.0),
                        ha="center", fontsize=8, color="0.4")
        elif rec.kind.value == "hold_expired":
            ax.axvline(rec.t_ms, color="orange", lw=1.0, ls="--", zorder=0)

    ax.set_xlabel("time (ms)")
    ax.set_yticks([])
    ax.set_xlim(0, max(trace.t_end_ms, 1))
    ax.set_ylim(-0.5, offset + 1.6)
    ax.set_title("Lock scenario trace")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_keyspace_figure(stats: list[KeyspaceStats], path: str) -> None:
    """Unlocking counts per sequence length, with the nominal figure inset."""
    lengths = [s.length for s in stats]
    counts = [s.unlocking for s in stats]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    ax1.bar(lengths, counts, color="steelblue")
    for x, c in zip(lengths, counts):
        ax1.annotate(str(c), (x, c), ha="center", va="bottom", fontsize=8)
    ax1.set_xlabel("sequence length")
    ax1.set_ylabel("unlocking sequences")
    ax1.set_title("Unlocking sequences by length")
    ax1.set_xticks(lengths)

    probs = [s.probability_decimal for s in stats]
    ax2.plot(lengths, probs, "o-", color="steelblue", label="measured (ordered)")
    if stats:
        nominal_p = 1.0 / stats[0].nominal_claim
        ax2.axhline(nominal_p, color="crimson", ls="--",
                    label=f"1 / {stats[0].nominal_claim} nominal")
    ax2.set_yscale("log")
    ax2.set_xlabel("sequence length")
    ax2.set_ylabel("random-guess probability")
    ax2.set_title("Guess probability")
    ax2.set_xticks(lengths)
    ax2.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_table1_figure(report: Table1Report, path: str) -> None:
    """Agreement grid: rows vs columns (Q0..Q3, solenoid), green = match."""
    n_rows = len(report.rows)
    cols = ["Q0", "Q1", "Q2", "Q3", "solenoid"]
    grid = []
    for r in report.rows:
        grid.append([1 if ok else 0 for ok in r.q_matches] + [1 if r.solenoid_match else 0])

    fig, ax = plt.subplots(figsize=(4.5, 0.32 * n_rows + 1.5))
    ax.imshow(grid, cmap="RdYlGn", vmin=0, vmax=1, aspect="auto")
    ax.set_xticks(range(len(cols)), cols)
    ax.set_yticks(range(n_rows), [str(r.published.index) for r in report.rows])
    ax.set_ylabel("test row")
    ax.set_title("Replay agreement with recorded outputs")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_discharge_figure(params: CircuitParams, path: str) -> None:
    """Hold-capacitor discharge curve with the time constant marked."""
    tau = time_constant(params.r6, params.c1)
    steps = 400
    t_max = 3.0 * tau
    ts = [t_max * i / steps for i in range(steps + 1)]
    vs = [discharge_voltage(params.vcc, params.r6, params.c1, t) for t in ts]

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(ts, vs, color="steelblue")
    v_tau = discharge_voltage(params.vcc, params.r6, params.c1, tau)
    ax.axvline(tau, color="crimson", ls="--", lw=1.0)
    ax.annotate(f"tau = {tau:.3g} s\nV = {v_tau:.2f} V", (tau, v_tau),
                xytext=(tau * 1.1, v_tau * 1.2), fontsize=9)
    ax.set_xlabel("time (s)")
    ax.set_ylabel("capacitor voltage (V)")
    ax.set_title("Hold-timer discharge")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
