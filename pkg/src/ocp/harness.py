"""Greedy-versus-optimal gap experiment."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .core import OcpInstance
from .cost import BigCost
from .errors import OcpError
from .solvers import solve_exact_dp, solve_greedy

__all__ = ["GapRow", "GapReport", "run_gap_experiment", "gap_ratio"]

# Exact rationals only while both costs fit in this many bits.
_EXACT_RATIO_BITS = 4096


@dataclass(frozen=True)
class GapRow:
    instance_id: str
    greedy_cost: BigCost | None
    optimal_cost: BigCost | None
    ratio: Fraction | None = None
    log2_gap: float | None = None
    error: str | None = None

    def record(self) -> dict:
        return {
            "instance": self.instance_id,
            "greedy": None if self.greedy_cost is None else str(self.greedy_cost),
            "optimal": None if self.optimal_cost is None else str(self.optimal_cost),
            "ratio": None if self.ratio is None else f"{self.ratio.numerator}/{self.ratio.denominator}",
            "log2_gap": self.log2_gap,
            "error": self.error,
        }


@dataclass(frozen=True)
class GapReport:
    rows: tuple[GapRow, ...] = field(default_factory=tuple)

    @property
    def solved(self) -> list[GapRow]:
        return [r for r in self.rows if r.error is None]

    @property
    def mean_ratio(self) -> float | None:
        rs = [float(r.ratio) for r in self.solved if r.ratio is not None]
        return sum(rs) / len(rs) if rs else None

    @property
    def max_ratio(self) -> Fraction | None:
        rs = [r.ratio for r in self.solved if r.ratio is not None]
        return max(rs) if rs else None

    @property
    def mean_log2_gap(self) -> float | None:
        gs = [r.log2_gap for r in self.solved]
        return sum(gs) / len(gs) if gs else None

    def table(self) -> str:
        lines = [f"{'instance':<24} {'greedy':>14} {'optimal':>14} {'ratio':>10} {'log2 gap':>9}"]
        for r in self.rows:
            if r.error is not None:
                lines.append(f"{r.instance_id:<24} error: {r.error}")
                continue
            ratio = f"{float(r.ratio):.4f}" if r.ratio is not None else "-"
            lines.append(
                f"{r.instance_id:<24} {str(r.greedy_cost):>14} {str(r.optimal_cost):>14} "
                f"{ratio:>10} {r.log2_gap:>9.4f}"
            )
        mean = self.mean_ratio
        mx = self.max_ratio
        lines.append(
            f"solved {len(self.solved)}/{len(self.rows)}  "
            f"mean ratio {'undefined' if mean is None else f'{mean:.4f}'}  "
            f"max ratio {'undefined' if mx is None else f'{float(mx):.4f}'}"
        )
        return "\n".join(lines)

    def records(self) -> list[dict]:
        return [r.record() for r in self.rows]


def gap_ratio(greedy: BigCost, optimal: BigCost) -> tuple[Fraction | None, float]:
    """Exact ratio when representable, plus the base-2 log difference."""
    if optimal.is_zero():
        return (Fraction(1) if greedy.is_zero() else None), (0.0 if greedy.is_zero() else math.inf)
    ratio = None
    if greedy.bit_length() <= _EXACT_RATIO_BITS:
        ratio = Fraction(greedy.to_int(), optimal.to_int())
    return ratio, greedy.log2() - optimal.log2()


def _row(item) -> GapRow:
    name, instance, max_universe = item
    try:
        g = solve_greedy(instance).cost
        o = solve_exact_dp(instance, max_universe=max_universe).cost
    except OcpError as exc:
        return GapRow(name, None, None, error=f"{type(exc).__name__}: {exc}")
    ratio, lg = gap_ratio(g, o)
    return GapRow(name, g, o, ratio, lg)


def run_gap_experiment(batch, max_universe: int | None = None, workers: int = 1) -> GapReport:
    """Greedy and exact DP on every instance of ``batch``.

    ``batch`` is an iterable of ``(name, OcpInstance)`` pairs or bare
    instances.  Solver failures become error rows.  With ``workers > 1`` rows
    are computed in a process pool; row order always follows input order.
    """
    items = []
    for k, entry in enumerate(batch):
        if isinstance(entry, OcpInstance):
            entry = (f"instance-{k}", entry)
        name, inst = entry
        items.append((name, inst, max_universe))
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, items))
    else:
        rows = [_row(it) for it in items]
    return GapReport(tuple(rows))
