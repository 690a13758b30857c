"""Dense state-vector simulation, matrix extraction and measurement sampling.

States are flat complex arrays indexed by the basis convention of
:mod:`qtransforms.ir`.  Every function also accepts a 2-D array whose columns
are independent states; :func:`extract_matrix` uses that to push all basis
columns through the circuit at once.
"""
from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import numpy as np

from .ir import Circuit, CircuitError, Gate, Macro, SingleQubitGate

NORM_ATOL = 1e-10
MAX_DATA_QUBITS = 12


class AncillaLeakError(RuntimeError):
    """Amplitude left the ancilla-zero subspace during matrix extraction."""


def _condition_ok(index: np.ndarray, ones, zeros) -> np.ndarray:
    one_mask = sum(1 << q for q in ones)
    zero_mask = sum(1 << q for q in zeros)
    return ((index & one_mask) == one_mask) & ((index & zero_mask) == 0)


@lru_cache(maxsize=4096)
def _pair_indices(num_qubits: int, target: int, ones: frozenset, zeros: frozenset):
    index = np.arange(1 << num_qubits, dtype=np.int64)
    keep = (((index >> target) & 1) == 0) & _condition_ok(index, ones, zeros)
    i0 = index[keep]
    return i0, i0 | (1 << target)


@lru_cache(maxsize=4096)
def _perm_indices(num_qubits: int, gate: Macro):
    index = np.arange(1 << num_qubits, dtype=np.int64)
    src = index[_condition_ok(index, gate.ones, gate.zeros)]
    dst = gate.permute(src)
    moved = src != dst
    return src[moved], dst[moved]


def _num_qubits_of(state: np.ndarray) -> int:
    dim = state.shape[0]
    m = dim.bit_length() - 1
    if dim < 1 or 1 << m != dim:
        raise CircuitError(f"state dimension {dim} is not a power of two")
    return m


def _apply_inplace(state: np.ndarray, gate: Gate, num_qubits: int) -> None:
    if gate.qubits and max(gate.qubits) >= num_qubits:
        raise CircuitError(f"gate touches qubit {max(gate.qubits)} of a {num_qubits}-qubit state")
    if isinstance(gate, SingleQubitGate):
        i0, i1 = _pair_indices(num_qubits, gate.target, gate.ones, gate.zeros)
        (u00, u01, u10, u11) = gate.entries
        a0, a1 = state[i0], state[i1]
        state[i0] = u00 * a0 + u01 * a1
        state[i1] = u10 * a0 + u11 * a1
    elif isinstance(gate, Macro):
        src, dst = _perm_indices(num_qubits, gate)
        state[dst] = state[src]
    else:
        raise CircuitError(f"not a gate: {gate!r}")


def apply_gate(state, gate: Gate) -> np.ndarray:
    """Return a new state with ``gate`` applied.

    A single-qubit gate updates every amplitude pair (target bit 0 / 1) whose
    index satisfies the conditions; macros move amplitudes by their permutation.
    """
    out = np.array(state, dtype=complex, copy=True)
    _apply_inplace(out, gate, _num_qubits_of(out))
    return out


def run(circuit: Circuit, state) -> np.ndarray:
    """Apply the gates of ``circuit`` in order.

    ``state`` may cover only the data qubits, in which case ancillas start
    in ``|0>`` and the returned state covers all qubits.
    """
    state = np.asarray(state, dtype=complex)
    m = circuit.num_qubits
    dim = 1 << m
    if state.shape[0] == 1 << circuit.data_qubits and state.shape[0] != dim:
        full = np.zeros((dim,) + state.shape[1:], dtype=complex)
        full[: state.shape[0]] = state
        state = full
    elif state.shape[0] != dim:
        raise CircuitError(
            f"state dimension {state.shape[0]} does not match the circuit "
            f"({1 << circuit.data_qubits} data or {dim} total)")
    else:
        state = state.copy()
    for g in circuit.gates:
        _apply_inplace(state, g, m)
    return state


def extract_matrix(circuit: Circuit, leak_tol: float = NORM_ATOL,
                   return_residual: bool = False):
    """Matrix of ``circuit`` on the data qubits, ancillas held at ``|0>``.

    Column ``k`` is the simulated image of basis state ``k``.  Raises
    :class:`AncillaLeakError` when more than ``leak_tol`` of amplitude ends
    outside the ancilla-zero subspace.
    """
    n = circuit.data_qubits
    if n > MAX_DATA_QUBITS:
        raise CircuitError(f"matrix extraction supports at most {MAX_DATA_QUBITS} data qubits")
    D = 1 << n
    out = run(circuit, np.eye(D, dtype=complex))
    residual = float(np.max(np.abs(out[D:]))) if out.shape[0] > D else 0.0
    if residual > leak_tol:
        raise AncillaLeakError(f"ancilla leak: residual amplitude {residual:.3g}")
    M = out[:D]
    return (M, residual) if return_residual else M


def basis_state(index: int, num_qubits: int) -> np.ndarray:
    if not 0 <= index < 1 << num_qubits:
        raise CircuitError(f"basis index {index} out of range for {num_qubits} qubits")
    psi = np.zeros(1 << num_qubits, dtype=complex)
    psi[index] = 1.0
    return psi


def measure_all(state, seed=None, shots: int | None = None):
    """Sample basis indices with probability ``|psi_k|^2 / ||psi||^2``.

    Returns one ``int`` (``shots=None``) or an array of ``shots`` samples.
    The state is not modified.
    """
    psi = np.asarray(state, dtype=complex).ravel()
    p = np.abs(psi) ** 2
    total = p.sum()
    if not total > 0:
        raise ValueError("cannot sample from the zero vector")
    rng = np.random.default_rng(seed)
    draws = rng.choice(psi.shape[0], size=1 if shots is None else shots, p=p / total)
    return int(draws[0]) if shots is None else draws


def histogram(samples, num_qubits: int) -> dict[str, int]:
    """Counts keyed by bit string, sorted by basis index."""
    idx, counts = np.unique(np.asarray(samples), return_counts=True)
    return {format(int(i), f"0{num_qubits}b"): int(c) for i, c in zip(idx, counts)}


# ---------------------------------------------------------------------------
# vec-text v1

VEC_HEADER = "vec-text v1"


def format_vector(psi) -> str:
    psi = np.asarray(psi, dtype=complex).ravel()
    lines = [VEC_HEADER, f"dim {psi.shape[0]}"]
    lines += [f"{v.real:.17g} {v.imag:.17g}" for v in psi]
    return "\n".join(lines) + "\n"


def parse_vector(text: str) -> np.ndarray:
    from .qctext import ParseError

    lines = text.splitlines()
    if not lines or lines[0].strip() != VEC_HEADER:
        raise ParseError(f"missing header {VEC_HEADER!r}", 1)
    head = lines[1].split() if len(lines) > 1 else []
    if len(head) != 2 or head[0] != "dim" or not head[1].isdigit():
        raise ParseError("expected 'dim <2^m>'", 2)
    dim = int(head[1])
    if dim < 1 or dim & (dim - 1):
        raise ParseError(f"dimension {dim} is not a power of two", 2)
    psi = np.empty(dim, dtype=complex)
    rows = [(i, ln) for i, ln in enumerate(lines[2:], start=3) if ln.strip()]
    if len(rows) != dim:
        raise ParseError(f"expected {dim} amplitudes, got {len(rows)}",
                         rows[-1][0] if rows else 3)
    for k, (lineno, ln) in enumerate(rows):
        toks = ln.split()
        try:
            if len(toks) != 2:
                raise ValueError(f"expected 're im', got {len(toks)} tokens")
            psi[k] = complex(float(toks[0]), float(toks[1]))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from exc
    return psi


def save_vector(psi, path) -> None:
    Path(path).write_text(format_vector(psi))


def load_vector(path) -> np.ndarray:
    return parse_vector(Path(path).read_text())
