"""Gate-level circuit representation.

Basis-state convention used by every module: on ``m`` qubits the state index
``k`` stands for the bit string ``x_{m-1} ... x_1 x_0`` with
``k = sum(x_i * 2**i)``.  Qubit 0 is the least significant qubit and qubit
``m - 1`` the most significant one, so ``|10>`` on two qubits is index 2 and a
gate on qubit ``m - 1`` acts as ``U (x) 1`` in Kronecker-product order.

A circuit holds ``data_qubits`` data qubits (indices ``0 .. n-1``) followed by
``ancilla_qubits`` workbits (indices ``n .. n+a-1``).  Condition sets may name
ancilla qubits; the lowering pass relies on that.

Gates are immutable.  A :class:`SingleQubitGate` applies a 2x2 unitary to its
target when every qubit in ``ones`` is 1 and every qubit in ``zeros`` is 0.
Macros (:class:`BitReversal`, :class:`RotateWires`, :class:`WireSwap`,
:class:`Transposition`, :class:`TwosComplement`) are conditioned basis-state
permutations.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Union

import numpy as np

UNITARY_ATOL = 1e-12


class CircuitError(ValueError):
    """Raised for malformed gates or circuits."""


# ---------------------------------------------------------------------------
# basis-state convention

def basis_index(bits: str) -> int:
    """Index of the basis state written as ``x_{m-1}...x_0`` (``"10"`` -> 2)."""
    if not bits or set(bits) - {"0", "1"}:
        raise CircuitError(f"not a bit string: {bits!r}")
    return int(bits, 2)


def basis_label(index: int, num_qubits: int) -> str:
    """Inverse of :func:`basis_index` for a fixed qubit count."""
    if not 0 <= index < 1 << num_qubits:
        raise CircuitError(f"index {index} out of range for {num_qubits} qubits")
    return format(index, f"0{num_qubits}b") if num_qubits else ""


def qubit_value(index, qubit: int):
    """Value of ``qubit`` in basis state ``index`` (works on int arrays too)."""
    return (index >> qubit) & 1


# ---------------------------------------------------------------------------
# 2x2 unitaries

_NAMED = {
    "X": ((0, 1), (1, 0)),
    "Z": ((1, 0), (0, -1)),
    "H": ((1 / math.sqrt(2), 1 / math.sqrt(2)), (1 / math.sqrt(2), -1 / math.sqrt(2))),
}


def as_unitary2(matrix, atol: float = UNITARY_ATOL) -> np.ndarray:
    """Validate and return ``matrix`` as a complex 2x2 unitary array."""
    u = np.asarray(matrix, dtype=complex)
    if u.shape != (2, 2):
        raise CircuitError(f"expected a 2x2 matrix, got shape {u.shape}")
    if not np.all(np.isfinite(u)):
        raise CircuitError("matrix has non-finite entries")
    err = np.max(np.abs(u @ u.conj().T - np.eye(2)))
    if err > atol:
        raise CircuitError(f"matrix is not unitary (deviation {err:.3g})")
    return u


def make_named_gate(name: str) -> np.ndarray:
    """The matrices ``X``, ``Z`` and ``H`` (with its ``1/sqrt(2)`` factor)."""
    try:
        return np.array(_NAMED[name.upper()], dtype=complex)
    except KeyError:
        raise CircuitError(f"unknown gate name {name!r}") from None


def phase_matrix(theta: float) -> np.ndarray:
    """``diag(1, exp(i theta))``."""
    return np.array([[1, 0], [0, cmath.exp(1j * theta)]], dtype=complex)


def rotation_matrix(theta: float) -> np.ndarray:
    """Real plane rotation ``[[cos, -sin], [sin, cos]]``."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=complex)


# ---------------------------------------------------------------------------
# gates

def _qubit_set(qubits: Iterable[int]) -> frozenset[int]:
    out = frozenset(int(q) for q in qubits)
    if any(q < 0 for q in out):
        raise CircuitError(f"negative qubit index in {sorted(out)}")
    return out


class _Conditioned:
    """Shared handling of the ``ones``/``zeros`` condition sets."""

    ones: frozenset[int]
    zeros: frozenset[int]

    def _init_conditions(self) -> None:
        object.__setattr__(self, "ones", _qubit_set(self.ones))
        object.__setattr__(self, "zeros", _qubit_set(self.zeros))
        if self.ones & self.zeros:
            raise CircuitError(
                f"qubits {sorted(self.ones & self.zeros)} are both one- and zero-conditions")
        clash = (self.ones | self.zeros) & frozenset(self.targets)
        if clash:
            raise CircuitError(f"condition qubits {sorted(clash)} overlap the targets")

    @property
    def targets(self) -> tuple[int, ...]:
        raise NotImplementedError

    @property
    def conditions(self) -> frozenset[int]:
        return self.ones | self.zeros

    @property
    def qubits(self) -> frozenset[int]:
        """Every qubit the gate reads or writes."""
        return frozenset(self.targets) | self.ones | self.zeros

    def with_conditions(self, ones: Iterable[int] = (), zeros: Iterable[int] = ()):
        """Copy of this gate with extra conditions added."""
        return replace(self, ones=self.ones | _qubit_set(ones),
                       zeros=self.zeros | _qubit_set(zeros))


@dataclass(frozen=True)
class SingleQubitGate(_Conditioned):
    """Conditioned 2x2 unitary on one target qubit.

    ``name`` and ``param`` only drive serialization (``X``, ``Z``, ``H``,
    ``PHASE``, ``ROT`` or generic ``U``); ``entries`` is the row-major matrix.
    """

    target: int
    entries: tuple[complex, complex, complex, complex]
    ones: frozenset[int] = field(default=frozenset())
    zeros: frozenset[int] = field(default=frozenset())
    name: str = "U"
    param: float | None = None

    def __post_init__(self):
        if self.target < 0:
            raise CircuitError(f"negative target {self.target}")
        u = as_unitary2(np.reshape(self.entries, (2, 2)))
        object.__setattr__(self, "entries", tuple(complex(v) for v in u.ravel()))
        self._init_conditions()

    @property
    def targets(self) -> tuple[int, ...]:
        return (self.target,)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.entries, dtype=complex).reshape(2, 2)

    @property
    def num_conditions(self) -> int:
        return len(self.ones) + len(self.zeros)

    @property
    def is_x(self) -> bool:
        return self.entries == (0j, 1 + 0j, 1 + 0j, 0j)

    def inverse(self) -> "SingleQubitGate":
        if self.name in ("X", "Z", "H"):
            return self
        if self.name in ("PHASE", "ROT"):
            return _named_param(self.name, self.target, -self.param, self.ones, self.zeros)
        return u_gate(self.target, self.matrix.conj().T, self.ones, self.zeros)


def u_gate(target: int, matrix, ones: Iterable[int] = (), zeros: Iterable[int] = ()) -> SingleQubitGate:
    u = as_unitary2(matrix)
    return SingleQubitGate(target, tuple(u.ravel()), frozenset(ones), frozenset(zeros))


def _named(name: str, target, ones, zeros) -> SingleQubitGate:
    return SingleQubitGate(target, tuple(make_named_gate(name).ravel()),
                           frozenset(ones), frozenset(zeros), name=name)


def _named_param(name: str, target, theta, ones, zeros) -> SingleQubitGate:
    m = phase_matrix(theta) if name == "PHASE" else rotation_matrix(theta)
    return SingleQubitGate(target, tuple(m.ravel()), frozenset(ones), frozenset(zeros),
                           name=name, param=float(theta))


def x_gate(target: int, ones: Iterable[int] = (), zeros: Iterable[int] = ()) -> SingleQubitGate:
    return _named("X", target, ones, zeros)


def z_gate(target: int, ones: Iterable[int] = (), zeros: Iterable[int] = ()) -> SingleQubitGate:
    return _named("Z", target, ones, zeros)


def h_gate(target: int, ones: Iterable[int] = (), zeros: Iterable[int] = ()) -> SingleQubitGate:
    return _named("H", target, ones, zeros)


def phase_gate(target: int, theta: float, ones: Iterable[int] = (),
               zeros: Iterable[int] = ()) -> SingleQubitGate:
    return _named_param("PHASE", target, theta, ones, zeros)


def rot_gate(target: int, theta: float, ones: Iterable[int] = (),
             zeros: Iterable[int] = ()) -> SingleQubitGate:
    return _named_param("ROT", target, theta, ones, zeros)


def cnot(control: int, target: int) -> SingleQubitGate:
    return x_gate(target, ones=(control,))


class Macro(_Conditioned):
    """Conditioned permutation of basis states."""

    def permute(self, index: np.ndarray) -> np.ndarray:
        """Image of each basis index, ignoring the conditions."""
        raise NotImplementedError

    def inverse(self) -> "Macro":
        return self


class _RegisterMacro(Macro):
    """Macro acting on the contiguous register ``lo..hi`` (inclusive)."""

    lo: int
    hi: int

    def _check_range(self):
        if not 0 <= self.lo <= self.hi:
            raise CircuitError(f"bad qubit range {self.lo}..{self.hi}")

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    @property
    def targets(self) -> tuple[int, ...]:
        return tuple(range(self.lo, self.hi + 1))

    def map_register(self, r: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def permute(self, index):
        index = np.asarray(index, dtype=np.int64)
        mask = (1 << self.width) - 1
        r = (index >> self.lo) & mask
        return (index & ~(mask << self.lo)) | (self.map_register(r) << self.lo)


@dataclass(frozen=True)
class BitReversal(_RegisterMacro):
    """Reverse the order of the qubits ``lo..hi``."""

    lo: int
    hi: int
    ones: frozenset[int] = field(default=frozenset())
    zeros: frozenset[int] = field(default=frozenset())

    def __post_init__(self):
        self._check_range()
        self._init_conditions()

    def map_register(self, r):
        out = np.zeros_like(r)
        for i in range(self.width):
            out |= ((r >> i) & 1) << (self.width - 1 - i)
        return out


@dataclass(frozen=True)
class RotateWires(_RegisterMacro):
    """Cyclic rotation of the qubits ``lo..hi``.

    ``"right"`` sends ``|x b> -> |b x>`` (the low bit becomes the high bit);
    ``"left"`` is the inverse, ``|b x> -> |x b>``.
    """

    lo: int
    hi: int
    direction: str = "right"
    ones: frozenset[int] = field(default=frozenset())
    zeros: frozenset[int] = field(default=frozenset())

    def __post_init__(self):
        self._check_range()
        if self.direction not in ("left", "right"):
            raise CircuitError(f"direction must be 'left' or 'right', got {self.direction!r}")
        self._init_conditions()

    def map_register(self, r):
        w = self.width
        mask = (1 << w) - 1
        if self.direction == "right":
            return (r >> 1) | ((r & 1) << (w - 1))
        return ((r << 1) & mask) | (r >> (w - 1))

    def inverse(self):
        return replace(self, direction="left" if self.direction == "right" else "right")


@dataclass(frozen=True)
class WireSwap(Macro):
    """Exchange the states of qubits ``i`` and ``j``."""

    i: int
    j: int
    ones: frozenset[int] = field(default=frozenset())
    zeros: frozenset[int] = field(default=frozenset())

    def __post_init__(self):
        if self.i == self.j or min(self.i, self.j) < 0:
            raise CircuitError(f"bad wire pair ({self.i}, {self.j})")
        self._init_conditions()

    @property
    def targets(self):
        return (self.i, self.j)

    def permute(self, index):
        index = np.asarray(index, dtype=np.int64)
        diff = ((index >> self.i) ^ (index >> self.j)) & 1
        return index ^ ((diff << self.i) | (diff << self.j))


@dataclass(frozen=True)
class Transposition(_RegisterMacro):
    """Exchange register values ``a`` and ``b`` of the qubits ``lo..hi``."""

    lo: int
    hi: int
    a: int
    b: int
    ones: frozenset[int] = field(default=frozenset())
    zeros: frozenset[int] = field(default=frozenset())

    def __post_init__(self):
        self._check_range()
        size = 1 << self.width
        if not (0 <= self.a < size and 0 <= self.b < size) or self.a == self.b:
            raise CircuitError(f"bad transposition ({self.a}, {self.b}) on {self.width} qubits")
        self._init_conditions()

    def map_register(self, r):
        return np.where(r == self.a, self.b, np.where(r == self.b, self.a, r))


@dataclass(frozen=True)
class TwosComplement(_RegisterMacro):
    """``|x> -> |(2**m - x) mod 2**m>`` on the register ``lo..hi``."""

    lo: int
    hi: int
    ones: frozenset[int] = field(default=frozenset())
    zeros: frozenset[int] = field(default=frozenset())

    def __post_init__(self):
        self._check_range()
        self._init_conditions()

    def map_register(self, r):
        return (-r) & ((1 << self.width) - 1)


Gate = Union[SingleQubitGate, Macro]


# ---------------------------------------------------------------------------
# circuits

@dataclass(frozen=True)
class Circuit:
    """Ordered gate sequence on ``data_qubits`` data qubits plus ancillas."""

    data_qubits: int
    ancilla_qubits: int = 0
    gates: tuple[Gate, ...] = ()
    label: str = ""

    def __post_init__(self):
        if self.data_qubits < 0 or self.ancilla_qubits < 0:
            raise CircuitError("qubit counts must be non-negative")
        object.__setattr__(self, "gates", tuple(self.gates))
        total = self.num_qubits
        for pos, g in enumerate(self.gates):
            if not isinstance(g, (SingleQubitGate, Macro)):
                raise CircuitError(f"gate {pos} is not a gate: {g!r}")
            if g.qubits and max(g.qubits) >= total:
                raise CircuitError(
                    f"gate {pos} touches qubit {max(g.qubits)} but the circuit has {total}")

    @property
    def num_qubits(self) -> int:
        return self.data_qubits + self.ancilla_qubits

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    @property
    def is_elementary(self) -> bool:
        """Only single-qubit gates with at most one one-condition."""
        return all(
            isinstance(g, SingleQubitGate) and not g.zeros and len(g.ones) <= 1
            for g in self.gates)

    @property
    def is_strict_elementary(self) -> bool:
        """Only unconditioned single-qubit gates and singly controlled NOTs."""
        return all(
            isinstance(g, SingleQubitGate) and not g.zeros
            and (not g.ones or (len(g.ones) == 1 and g.is_x))
            for g in self.gates)

    def append(self, gate: Gate) -> "Circuit":
        return replace(self, gates=self.gates + (gate,))

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        return replace(self, gates=self.gates + tuple(gates))

    def inverse(self) -> "Circuit":
        return replace(self, gates=tuple(g.inverse() for g in reversed(self.gates)),
                       label=f"{self.label} inverse".strip())


def append_gate(circuit: Circuit, gate: Gate) -> Circuit:
    """Return ``circuit`` with ``gate`` appended (validated against its size)."""
    return circuit.append(gate)
