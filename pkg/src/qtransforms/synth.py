"""Recursive circuit builders for the four transforms.

Each builder emits a macro-bearing circuit whose gates follow the recursive
factorization level by level, in time order (rightmost matrix factor first).
Pass the result through :func:`qtransforms.lower.lower_circuit` to get
elementary gates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .ir import (
    BitReversal,
    Circuit,
    Gate,
    RotateWires,
    TwosComplement,
    h_gate,
    phase_gate,
    rot_gate,
    u_gate,
    x_gate,
    z_gate,
)
from .transforms import canonical_name, check_qubits, slant_block


def build_walsh(n: int) -> Circuit:
    """``H`` on the top qubit, then the half-size transform below it."""
    n = check_qubits("walsh", n)
    return Circuit(n, gates=tuple(h_gate(q) for q in reversed(range(n))),
                   label=f"walsh n={n}")


def _qft_level(m: int) -> list[Gate]:
    # butterfly on qubit m, then the twiddle diag(1, w^(2^j)) on each lower qubit j
    gates: list[Gate] = [h_gate(m)]
    for j in reversed(range(m)):
        gates.append(phase_gate(j, math.pi * 2.0 ** (j - m), ones=(m,)))
    return gates


def build_qft(n: int, defer_permutations: bool = True) -> Circuit:
    """Quantum Fourier transform on ``n`` qubits.

    The per-level wire rotations (top qubit moved to the bottom) all commute
    past the later levels, so by default they are merged into a single
    trailing :class:`BitReversal`.  With ``defer_permutations=False`` each
    level's :class:`RotateWires` is emitted instead.
    """
    n = check_qubits("dft", n)
    gates: list[Gate] = []
    for m in reversed(range(n)):
        gates += _qft_level(m)
    if n > 1:
        if defer_permutations:
            gates.append(BitReversal(0, n - 1))
        else:
            gates += [RotateWires(0, m, "left") for m in range(1, n)]
    return Circuit(n, gates=tuple(gates), label=f"dft n={n}")


def slant_level(n: int) -> list[Gate]:
    """The six gates realizing ``Q_N`` on qubits ``0..n-1`` (``n >= 2``)."""
    top, middle = n - 1, tuple(range(1, n - 1))
    return [
        z_gate(0, ones=(top,), zeros=middle),
        h_gate(top),
        u_gate(0, slant_block(1 << n), ones=(top,), zeros=middle),
        x_gate(top, ones=(0,), zeros=middle),
        x_gate(0, ones=(top,), zeros=middle),
        x_gate(top, ones=(0,), zeros=middle),
    ]


def build_slant(n: int) -> Circuit:
    """Slant transform: half-size transform on the low qubits, then ``Q_N``."""
    n = check_qubits("slant", n)
    gates: list[Gate] = [h_gate(0)]
    for k in range(2, n + 1):
        gates += slant_level(k)
    return Circuit(n, gates=tuple(gates), label=f"slant n={n}")


def build_bc(n: int) -> Circuit:
    """Cross block of the size-``2**n`` Hartley recursion on ``n - 1`` qubits.

    Qubit ``n - 2`` is the local sign bit ``b``; qubits ``0..n-3`` hold ``x``.
    Steps: conditional two's complement of ``x``, sign flip when ``b = 1`` and
    ``x != 0``, the rotation cascade on ``b`` driven by the bits of ``x``, and
    a second conditional two's complement.
    """
    if n < 3:
        raise ValueError(f"build_bc needs n >= 3, got {n}")
    N = 1 << n
    b, xs = n - 2, tuple(range(n - 2))
    gates: list[Gate] = [
        TwosComplement(0, n - 3, ones=frozenset({b})),
        z_gate(b),
        z_gate(b, zeros=xs),
    ]
    gates += [rot_gate(b, 2 * math.pi * (1 << k) / N, ones=(k,)) for k in xs]
    gates.append(TwosComplement(0, n - 3, ones=frozenset({b})))
    return Circuit(n - 1, gates=tuple(gates), label=f"bc n={n}")


def build_hartley(n: int) -> Circuit:
    """Hartley transform: even/odd split, half-size transform, cross block, butterfly."""
    n = check_qubits("hartley", n)
    gates: list[Gate] = [h_gate(0)]
    for k in range(2, n + 1):
        # the lower levels act first, so the new level wraps around them
        level_head: list[Gate] = [RotateWires(0, k - 1, "right")]
        level_tail: list[Gate] = []
        if k >= 3:
            level_tail += [g.with_conditions(ones=(k - 1,)) for g in build_bc(k).gates]
        level_tail.append(h_gate(k - 1))
        gates = level_head + gates + level_tail
    return Circuit(n, gates=tuple(gates), label=f"hartley n={n}")


BUILDERS = {"dft": build_qft, "walsh": build_walsh, "slant": build_slant, "hartley": build_hartley}


@dataclass(frozen=True)
class SynthRequest:
    transform: str
    n: int
    lower: bool = False
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "transform", canonical_name(self.transform))
        check_qubits(self.transform, self.n)


def synthesize(transform: str, n: int, lower: bool = False, strict: bool = False) -> Circuit:
    """Build the circuit for ``transform``, optionally lowered to elementary gates."""
    req = SynthRequest(transform, n, lower, strict)
    circuit = BUILDERS[req.transform](req.n)
    if req.lower or req.strict:
        from .lower import lower_circuit

        circuit, _ = lower_circuit(circuit, strict=req.strict)
    return circuit
