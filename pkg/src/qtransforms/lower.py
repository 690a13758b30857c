"""Lowering of macros and multiply conditioned gates to elementary gates.

Two output levels:

* relaxed (default): single-qubit gates with at most one one-condition, plus
  Toffoli gates (``X`` with two one-conditions);
* strict: only unconditioned single-qubit gates and controlled NOTs.  Toffolis
  become the textbook 6-CNOT sequence and controlled ``U`` gates the
  ``A X B X C`` construction.

Constructions:

* zero-conditions are turned into one-conditions by ``X`` on both sides;
* ``k >= 2`` conditions: an AND ladder of Toffolis computes the conjunction
  into ``k - 1`` clean workbits, a singly controlled ``U`` fires from the
  last one, and the ladder is undone (an ``X`` with two conditions stays a
  plain Toffoli);
* wire swaps are three CNOTs, conditioned like the macro; bit reversal and
  wire rotation are sequences of swaps;
* two's complement is a conditioned bitwise NOT followed by a conditioned
  increment whose carries are accumulated in workbits, linear in the width.

Workbits are appended after the input circuit's qubits, start and end in
``|0>``, and are reused gate after gate; the report gives the peak count.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .ir import (
    BitReversal,
    Circuit,
    Gate,
    Macro,
    RotateWires,
    SingleQubitGate,
    Transposition,
    TwosComplement,
    WireSwap,
    h_gate,
    phase_gate,
    u_gate,
    x_gate,
)

DEFAULT_MAX_ANCILLAS = 64


class LoweringError(RuntimeError):
    """The ancilla budget was exceeded."""


@dataclass
class LoweringReport:
    input_gate_count: int
    output_gate_count: int
    ancillas_used: int
    strict: bool
    expansions: list[tuple[int, str, int]] = field(default_factory=list)

    def table(self) -> str:
        return "\n".join(f"{pos}\t{count}\t{text}" for pos, text, count in self.expansions)


class _Workbits:
    """LIFO allocator of clean ancilla qubits."""

    def __init__(self, first: int, cap: int):
        self.first, self.cap = first, cap
        self.in_use = 0
        self.peak = 0

    def take(self) -> int:
        if self.in_use >= self.cap:
            raise LoweringError(f"ancilla budget of {self.cap} exceeded")
        q = self.first + self.in_use
        self.in_use += 1
        self.peak = max(self.peak, self.in_use)
        return q

    def release(self, count: int = 1) -> None:
        self.in_use -= count
        assert self.in_use >= 0


def _toffoli(a: int, b: int, target: int) -> SingleQubitGate:
    return x_gate(target, ones=(a, b))


def _flip(out: list, target: int, control: int | None) -> None:
    out.append(x_gate(target) if control is None else x_gate(target, ones=(control,)))


def _and_ladder(controls: list[int], pool: _Workbits) -> tuple[list, list[int]]:
    """Gates computing AND(controls) into the last of ``len(controls) - 1`` workbits."""
    anc = [pool.take() for _ in range(len(controls) - 1)]
    gates = [_toffoli(controls[0], controls[1], anc[0])]
    for i in range(1, len(anc)):
        gates.append(_toffoli(anc[i - 1], controls[i + 1], anc[i]))
    return gates, anc


def _combine_conditions(ones, zeros, pool: _Workbits, out: list):
    """Emit gates reducing a condition set to one control qubit.

    Returns ``(control, undo, held)``: ``control`` is None when there are no
    conditions; ``undo`` restores the condition qubits and workbits and must be
    emitted after the conditioned action; ``held`` workbits are still taken.
    """
    flips = [x_gate(q) for q in sorted(zeros)]
    out += flips
    controls = sorted(set(ones) | set(zeros))
    if not controls:
        return None, [], 0
    if len(controls) == 1:
        return controls[0], flips, 0
    ladder, anc = _and_ladder(controls, pool)
    out += ladder
    return anc[-1], list(reversed(ladder)) + flips, len(anc)


def lower_multicontrol(gate: SingleQubitGate, pool: _Workbits | None = None) -> list[SingleQubitGate]:
    """Relaxed lowering of one conditioned single-qubit gate."""
    if pool is None:
        pool = _Workbits(1 + max(gate.qubits), DEFAULT_MAX_ANCILLAS)
    out: list[SingleQubitGate] = []
    plain = SingleQubitGate(gate.target, gate.entries, name=gate.name, param=gate.param)
    k = gate.num_conditions
    if k == 2 and gate.is_x:
        flips = [x_gate(q) for q in sorted(gate.zeros)]
        a, b = sorted(gate.ones | gate.zeros)
        return flips + [_toffoli(a, b, gate.target)] + flips
    control, undo, held = _combine_conditions(gate.ones, gate.zeros, pool, out)
    out.append(plain if control is None else plain.with_conditions(ones=(control,)))
    out += undo
    pool.release(held)
    return out


def lower_tcomp(gate: TwosComplement, pool: _Workbits | None = None) -> list[SingleQubitGate]:
    """Conditioned ``x -> -x mod 2**m``: bitwise NOT, then a ripple increment."""
    if pool is None:
        pool = _Workbits(1 + max(gate.qubits), DEFAULT_MAX_ANCILLAS)
    out: list[SingleQubitGate] = []
    enable, undo, held = _combine_conditions(gate.ones, gate.zeros, pool, out)
    bits = list(range(gate.lo, gate.hi + 1))
    for q in bits:
        _flip(out, q, enable)
    # carry[i] = enable AND bits[0..i-1]; carries that reduce to a single
    # qubit alias it instead of taking a workbit
    carries: list[int | None] = [enable]
    computed: list[bool] = [False]
    for i in range(1, len(bits)):
        prev = carries[-1]
        if prev is None:
            carries.append(bits[i - 1])
            computed.append(False)
        else:
            a = pool.take()
            out.append(_toffoli(prev, bits[i - 1], a))
            carries.append(a)
            computed.append(True)
    for i in range(len(bits) - 1, 0, -1):
        _flip(out, bits[i], carries[i])
        if computed[i]:
            out.append(_toffoli(carries[i - 1], bits[i - 1], carries[i]))
            pool.release()
    _flip(out, bits[0], carries[0])
    out += undo
    pool.release(held)
    return out


def _swap_gates(i: int, j: int, ones, zeros) -> list[SingleQubitGate]:
    return [x_gate(j, ones={i} | set(ones), zeros=zeros),
            x_gate(i, ones={j} | set(ones), zeros=zeros),
            x_gate(j, ones={i} | set(ones), zeros=zeros)]


def _transposition_gates(g: Transposition) -> list[SingleQubitGate]:
    # conjugate so that the two states differ in one bit, then flip that bit
    # when every other register bit matches
    a, b = g.a, g.b
    diff = [i for i in range(g.width) if (a ^ b) >> i & 1]
    d = diff[0]
    pivot = g.lo + d
    b_d = (b >> d) & 1
    conj = []
    for e in diff[1:]:
        cond = {"ones": (pivot,)} if b_d else {"zeros": (pivot,)}
        conj.append(x_gate(g.lo + e, **cond))
    others = [i for i in range(g.width) if i != d]
    ones = {g.lo + i for i in others if (a >> i) & 1} | set(g.ones)
    zeros = {g.lo + i for i in others if not (a >> i) & 1} | set(g.zeros)
    return conj + [x_gate(pivot, ones=ones, zeros=zeros)] + conj[::-1]


def lower_perm(gate: Macro) -> list[SingleQubitGate]:
    """Wire permutations and transpositions as (conditioned) NOT gates."""
    if isinstance(gate, WireSwap):
        return _swap_gates(gate.i, gate.j, gate.ones, gate.zeros)
    if isinstance(gate, BitReversal):
        out = []
        for i in range(gate.width // 2):
            out += _swap_gates(gate.lo + i, gate.hi - i, gate.ones, gate.zeros)
        return out
    if isinstance(gate, RotateWires):
        pairs = [(q, q + 1) for q in range(gate.lo, gate.hi)]
        if gate.direction == "left":
            pairs.reverse()
        out = []
        for i, j in pairs:
            out += _swap_gates(i, j, gate.ones, gate.zeros)
        return out
    if isinstance(gate, Transposition):
        return _transposition_gates(gate)
    raise TypeError(f"not a permutation macro: {gate!r}")


# ---------------------------------------------------------------------------
# strict expansion

def _rz(theta: float) -> np.ndarray:
    return np.diag([cmath.exp(-0.5j * theta), cmath.exp(0.5j * theta)])


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def zyz_angles(u) -> tuple[float, float, float, float]:
    """``(alpha, beta, gamma, delta)`` with ``u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)``."""
    u = np.asarray(u, dtype=complex)
    alpha = cmath.phase(np.linalg.det(u)) / 2
    v = u * cmath.exp(-1j * alpha)
    c, s = abs(v[0, 0]), abs(v[1, 0])
    gamma = 2 * math.atan2(s, c)
    plus = 2 * cmath.phase(v[1, 1]) if c > 1e-14 else 0.0
    minus = 2 * cmath.phase(v[1, 0]) if s > 1e-14 else 0.0
    return alpha, (plus + minus) / 2, gamma, (plus - minus) / 2


def _is_identity(m: np.ndarray) -> bool:
    return bool(np.max(np.abs(m - np.eye(2))) < 1e-15)


def controlled_u(control: int, target: int, u) -> list[SingleQubitGate]:
    """Controlled ``u`` from CNOTs and single-qubit gates (``A X B X C`` form)."""
    alpha, beta, gamma, delta = zyz_angles(u)
    A = _rz(beta) @ _ry(gamma / 2)
    B = _ry(-gamma / 2) @ _rz(-(delta + beta) / 2)
    C = _rz((delta - beta) / 2)
    out = []
    if not _is_identity(C):
        out.append(u_gate(target, C))
    out.append(x_gate(target, ones=(control,)))
    if not _is_identity(B):
        out.append(u_gate(target, B))
    out.append(x_gate(target, ones=(control,)))
    if not _is_identity(A):
        out.append(u_gate(target, A))
    if abs(cmath.exp(1j * alpha) - 1) > 1e-15:
        out.append(phase_gate(control, alpha))
    return out


def toffoli_gates(a: int, b: int, c: int) -> list[SingleQubitGate]:
    """Textbook Toffoli: 6 CNOTs, 2 H and 7 T/T-dagger gates."""
    t, td = math.pi / 4, -math.pi / 4

    def cx(ctrl, tgt):
        return x_gate(tgt, ones=(ctrl,))

    return [
        h_gate(c),
        cx(b, c), phase_gate(c, td), cx(a, c), phase_gate(c, t),
        cx(b, c), phase_gate(c, td), cx(a, c), phase_gate(b, t), phase_gate(c, t),
        h_gate(c),
        cx(a, b), phase_gate(a, t), phase_gate(b, td), cx(a, b),
    ]


def strictify(gates: list[SingleQubitGate]) -> list[SingleQubitGate]:
    """Expand relaxed-level gates into CNOTs and single-qubit gates."""
    out = []
    for g in gates:
        if not g.ones:
            out.append(g)
        elif len(g.ones) == 1 and g.is_x:
            out.append(g)
        elif len(g.ones) == 1:
            (ctrl,) = g.ones
            out += controlled_u(ctrl, g.target, g.matrix)
        else:
            a, b = sorted(g.ones)
            out += toffoli_gates(a, b, g.target)
    return out


# ---------------------------------------------------------------------------

def lower_gate(gate: Gate, pool: _Workbits) -> list[SingleQubitGate]:
    """Relaxed lowering of any IR gate."""
    if isinstance(gate, SingleQubitGate):
        return lower_multicontrol(gate, pool)
    if isinstance(gate, TwosComplement):
        return lower_tcomp(gate, pool)
    out = []
    for g in lower_perm(gate):
        out += lower_multicontrol(g, pool)
    return out


def lower_circuit(circuit: Circuit, strict: bool = False,
                  max_ancillas: int = DEFAULT_MAX_ANCILLAS) -> tuple[Circuit, LoweringReport]:
    """Lower ``circuit`` to elementary gates.

    On the subspace where the new workbits are ``|0>`` the result acts like
    ``circuit`` and returns the workbits to ``|0>``.  Workbits are added
    after the existing qubits and counted in ``ancilla_qubits``.
    """
    from .qctext import format_gate

    pool = _Workbits(circuit.num_qubits, max_ancillas)
    gates: list[SingleQubitGate] = []
    expansions = []
    for pos, g in enumerate(circuit.gates):
        emitted = lower_gate(g, pool)
        if strict:
            emitted = strictify(emitted)
        expansions.append((pos, format_gate(g, circuit.data_qubits), len(emitted)))
        gates += emitted
    out = Circuit(circuit.data_qubits, circuit.ancilla_qubits + pool.peak, tuple(gates),
                  label=f"{circuit.label} lowered{' strict' if strict else ''}".strip())
    report = LoweringReport(len(circuit.gates), len(gates), pool.peak, strict, expansions)
    return out, report


def multicontrol_cost(k: int, strict: bool = False) -> int:
    """Emitted gate count for a non-``X`` gate with ``k >= 2`` one-conditions.

    Relaxed: ``2(k-1)`` Toffolis plus one controlled gate, ``2k - 1``.  Strict:
    each Toffoli is 15 gates and the controlled gate at most 6, ``30k - 24``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    return 30 * k - 24 if strict else 2 * k - 1
