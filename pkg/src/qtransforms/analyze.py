"""Gate counting and checks of the divide-and-conquer cost recurrences.

Three counting modes:

``high-level``
    gates as synthesized.  Wire-permutation macros cost their number of wire
    swaps times ``swap_cost`` (bit reversal on ``m`` qubits is ``m // 2`` swaps,
    a wire rotation ``m - 1``); two's complement and transposition macros
    count 1.
``lowered``
    a relaxed lowered circuit (see :mod:`qtransforms.lower`), one per gate.
``strict-elementary``
    a strictly elementary circuit, one per gate.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ir import (
    BitReversal,
    Circuit,
    RotateWires,
    SingleQubitGate,
    Transposition,
    TwosComplement,
    WireSwap,
)
from .lower import lower_circuit
from .synth import BUILDERS
from .transforms import canonical_name

MODES = ("high-level", "lowered", "strict-elementary")


def _high_level_cost(g, swap_cost: int) -> int:
    if isinstance(g, SingleQubitGate):
        return 1
    if isinstance(g, BitReversal):
        return (g.width // 2) * swap_cost
    if isinstance(g, RotateWires):
        return (g.width - 1) * swap_cost
    if isinstance(g, WireSwap):
        return swap_cost
    if isinstance(g, (TwosComplement, Transposition)):
        return 1
    raise TypeError(f"unknown gate {g!r}")


def count_gates(circuit: Circuit, mode: str = "high-level", swap_cost: int = 1) -> int:
    """Exact gate count of ``circuit`` in ``mode``.

    Raises ValueError when the circuit has gates the mode does not admit,
    e.g. a macro in ``lowered`` mode.
    """
    if mode == "high-level":
        return sum(_high_level_cost(g, swap_cost) for g in circuit.gates)
    if mode == "lowered":
        for pos, g in enumerate(circuit.gates):
            ok = isinstance(g, SingleQubitGate) and not g.zeros and (
                len(g.ones) <= 1 or (len(g.ones) == 2 and g.is_x))
            if not ok:
                raise ValueError(f"gate {pos} is not admissible in a lowered circuit")
        return len(circuit.gates)
    if mode == "strict-elementary":
        if not circuit.is_strict_elementary:
            raise ValueError("circuit is not strictly elementary")
        return len(circuit.gates)
    raise ValueError(f"unknown mode {mode!r}; choose from {MODES}")


def level_cost(transform: str, n: int, swap_cost: int = 1) -> int:
    """High-level gates added when going from ``n - 1`` to ``n`` qubits.

    Walsh adds one ``H``.  The Fourier level is an ``H`` plus ``n - 1``
    controlled phases, plus the growth of the trailing bit reversal.  A Slant
    level is five conditioned gates and one ``H``.  A Hartley level is the
    even/odd wire rotation (``n - 1`` swaps), the cross block (two two's
    complements, two sign gates, ``n - 2`` rotations) and one ``H``.
    """
    t = canonical_name(transform)
    if n == 1:
        return 1
    if t == "walsh":
        return 1
    if t == "dft":
        return n + (n // 2 - (n - 1) // 2) * swap_cost
    if t == "slant":
        return 6
    if n == 2:
        return swap_cost + 1
    return (n - 1) * swap_cost + (n + 2) + 1


def fit_power_law(ns, counts) -> tuple[float, float, float]:
    """Least-squares fit of ``log count = log c + p log n``; returns ``(p, c, rms residual)``."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(counts, dtype=float))
    p, logc = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (p * x + logc)) ** 2)))
    return float(p), float(np.exp(logc)), resid


def quadratic_constant(ns, counts) -> float:
    """Smallest ``C`` with ``count(n) <= C n**2`` over the given points."""
    return max(c / n ** 2 for n, c in zip(ns, counts))


def transform_counts(transform: str, n: int) -> dict[str, int]:
    """Counts of the synthesized circuit in all three modes."""
    c = BUILDERS[canonical_name(transform)](n)
    relaxed, _ = lower_circuit(c)
    strict, _ = lower_circuit(c, strict=True)
    return {
        "high-level": count_gates(c),
        "lowered": count_gates(relaxed, "lowered"),
        "strict-elementary": count_gates(strict, "strict-elementary"),
    }


@dataclass
class CountProfile:
    transform: str
    mode: str
    table: dict[int, int]
    fit: tuple[float, float, float]
    quadratic_constant: float
    level_mismatches: list[int] = field(default_factory=list)

    @property
    def recurrence_holds(self) -> bool:
        return not self.level_mismatches


def check_recurrence(transform: str, n_max: int, mode: str = "high-level",
                     n_min: int = 1, fit_from: int = 2) -> CountProfile:
    """Count gates for ``n = n_min..n_max`` and check the per-level cost.

    In high-level mode every increment ``count(n) - count(n-1)`` must equal
    :func:`level_cost` exactly.  The power-law fit and the quadratic constant
    use the points with ``n >= fit_from``.
    """
    t = canonical_name(transform)
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode != "high-level" and n_max > 10:
        raise ValueError("lowered counting is limited to n <= 10")
    table = {}
    for n in range(n_min, n_max + 1):
        c = BUILDERS[t](n)
        if mode == "lowered":
            c, _ = lower_circuit(c)
        elif mode == "strict-elementary":
            c, _ = lower_circuit(c, strict=True)
        table[n] = count_gates(c, mode)
    mismatches = []
    if mode == "high-level":
        for n in table:
            prev = table.get(n - 1, 0 if n == 1 else None)
            if prev is not None and table[n] - prev != level_cost(t, n):
                mismatches.append(n)
    ns = [n for n in table if n >= fit_from]
    counts = [table[n] for n in ns]
    fit = fit_power_law(ns, counts) if len(ns) >= 2 else (float("nan"), float("nan"), 0.0)
    C = quadratic_constant(ns, counts) if ns else float("nan")
    return CountProfile(t, mode, table, fit, C, mismatches)


def count_table(transform: str, n_max: int, n_min: int = 1) -> str:
    """Tab-separated table with columns n, N, high_level, lowered, strict_elementary."""
    rows = ["n\tN\thigh_level\tlowered\tstrict_elementary"]
    for n in range(n_min, n_max + 1):
        c = transform_counts(transform, n)
        rows.append(f"{n}\t{1 << n}\t{c['high-level']}\t{c['lowered']}\t{c['strict-elementary']}")
    return "\n".join(rows) + "\n"
