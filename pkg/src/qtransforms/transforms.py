"""Dense reference matrices for the four transforms.

These are the ground truth every synthesized circuit is compared against.
The Fourier, Walsh-Hadamard and Hartley matrices are built straight from
their entry formulas; the Slant matrix has no closed form and is built from
its block recursion with explicit permutation, sign and rotation factors.
"""
from __future__ import annotations

import math
import threading
from pathlib import Path

import numpy as np

from .ir import make_named_gate

MAX_QUBITS = {"dft": 12, "walsh": 12, "slant": 10, "hartley": 12}

_ALIASES = {
    "dft": "dft", "qft": "dft", "fourier": "dft",
    "walsh": "walsh", "wht": "walsh", "hadamard": "walsh",
    "slant": "slant",
    "hartley": "hartley", "dht": "hartley",
}

TRANSFORMS = ("dft", "walsh", "slant", "hartley")


def canonical_name(transform: str) -> str:
    """Map aliases such as ``qft``, ``wht`` or ``dht`` to the canonical name."""
    try:
        return _ALIASES[transform.lower()]
    except KeyError:
        raise ValueError(f"unknown transform {transform!r}; "
                         f"choose from {sorted(_ALIASES)}") from None


def check_qubits(transform: str, n: int) -> int:
    transform = canonical_name(transform)
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"qubit count must be an int, got {type(n).__name__}")
    hi = MAX_QUBITS[transform]
    if not 1 <= n <= hi:
        raise ValueError(f"{transform}: qubit count must be in 1..{hi}, got {n}")
    return int(n)


def dft_matrix(n: int) -> np.ndarray:
    """``F[j, k] = w**(j k) / sqrt(N)`` with ``w = exp(2 pi i / N)``."""
    n = check_qubits("dft", n)
    N = 1 << n
    j = np.arange(N)
    # reduce the exponent mod N before exponentiating to keep full precision
    return np.exp(2j * np.pi * (np.outer(j, j) % N) / N) / math.sqrt(N)


def wht_matrix(n: int) -> np.ndarray:
    """Walsh-Hadamard matrix by ``W_N = (1_2 (x) W_{N/2}) (H (x) 1_{N/2})``."""
    n = check_qubits("walsh", n)
    H = make_named_gate("H")
    W = H
    for k in range(2, n + 1):
        half = 1 << (k - 1)
        W = np.kron(np.eye(2), W) @ np.kron(H, np.eye(half))
    return W


_slant_lock = threading.Lock()
_slant_table: dict[int, tuple[float, float | None]] = {2: (1.0, None)}


def slant_coeffs(N: int) -> tuple[float, float | None]:
    """``(a_N, b_N)`` of the Slant rotation block; ``b_2`` is undefined (None).

    ``a_2 = 1``, ``b_N = 1 / sqrt(1 + 4 a_{N/2}**2)``, ``a_N = 2 b_N a_{N/2}``.
    """
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or N < 2 or N & (N - 1):
        raise ValueError(f"N must be a power of two >= 2, got {N!r}")
    N = int(N)
    with _slant_lock:
        if N not in _slant_table:
            k = max(m for m in _slant_table if m < N)
            while k < N:
                a_half = _slant_table[k][0]
                b = 1.0 / math.sqrt(1.0 + 4.0 * a_half * a_half)
                k *= 2
                _slant_table[k] = (2.0 * b * a_half, b)
        return _slant_table[N]


def slant_block(N: int) -> np.ndarray:
    """The 2x2 block ``A_N = [[a, b], [-b, a]]`` for ``N >= 4``."""
    a, b = slant_coeffs(N)
    if b is None:
        raise ValueError("A_N is only defined for N >= 4")
    return np.array([[a, b], [-b, a]])


def slant_stage(N: int) -> np.ndarray:
    """``Q_N = P^a (1 (+) Qhat) (H (x) 1) P^b`` as a dense N x N matrix."""
    half = N // 2
    swap = np.eye(N)
    swap[[1, half]] = swap[[half, 1]]
    sign = np.eye(N)
    sign[half + 1, half + 1] = -1.0
    rot = np.eye(N)
    rot[half:half + 2, half:half + 2] = slant_block(N)
    butterfly = np.kron(make_named_gate("H").real, np.eye(half))
    return swap @ rot @ butterfly @ sign


def slant_matrix(n: int) -> np.ndarray:
    """Slant matrix via ``S_2 = H``, ``S_N = Q_N (1_2 (x) S_{N/2})``."""
    n = check_qubits("slant", n)
    S = make_named_gate("H").real
    for k in range(2, n + 1):
        S = slant_stage(1 << k) @ np.kron(np.eye(2), S)
    return S.astype(complex)


def dht_matrix(n: int) -> np.ndarray:
    """Hartley matrix ``(cos(2 pi k l / N) + sin(2 pi k l / N)) / sqrt(N)``."""
    n = check_qubits("hartley", n)
    N = 1 << n
    k = np.arange(N)
    arg = 2 * np.pi * (np.outer(k, k) % N) / N
    return ((np.cos(arg) + np.sin(arg)) / math.sqrt(N)).astype(complex)


def bc_matrix(n: int) -> np.ndarray:
    """The ``N/2 x N/2`` cross block of the Hartley recursion (``N = 2**n``).

    Index 0 is fixed; on indices ``1 .. N/2-1`` rows ``i < N/4`` carry
    ``cos(2 pi i/N)`` on the diagonal and ``sin(2 pi i/N)`` at column
    ``N/2 - i``; row ``N/4`` is 1; rows ``i > N/4`` carry ``-cos(2 pi (N/2-i)/N)``
    on the diagonal and ``sin(2 pi (N/2-i)/N)`` at column ``N/2 - i``.
    """
    if n < 2:
        raise ValueError(f"bc_matrix needs n >= 2, got {n}")
    N = 1 << n
    half, quarter = N // 2, N // 4
    BC = np.zeros((half, half))
    BC[0, 0] = 1.0
    BC[quarter, quarter] = 1.0
    for i in range(1, quarter):
        c, s = math.cos(2 * math.pi * i / N), math.sin(2 * math.pi * i / N)
        BC[i, i] = c
        BC[i, half - i] = s
        BC[half - i, i] = s
        BC[half - i, half - i] = -c
    return BC


def oracle_matrix(transform: str, n: int) -> np.ndarray:
    """Reference matrix for ``transform`` on ``n`` qubits."""
    builders = {"dft": dft_matrix, "walsh": wht_matrix,
                "slant": slant_matrix, "hartley": dht_matrix}
    return builders[canonical_name(transform)](n)


# ---------------------------------------------------------------------------
# mat-text v1

MAT_HEADER = "mat-text v1"


def format_matrix(M: np.ndarray) -> str:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    lines = [MAT_HEADER, f"dim {M.shape[0]}"]
    for row in M:
        lines.append(" ".join(f"{v.real:.17g} {v.imag:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    from .qctext import ParseError

    lines = text.splitlines()
    if not lines or lines[0].strip() != MAT_HEADER:
        raise ParseError(f"missing header {MAT_HEADER!r}", 1)
    head = lines[1].split() if len(lines) > 1 else []
    if len(head) != 2 or head[0] != "dim" or not head[1].isdigit():
        raise ParseError("expected 'dim <N>'", 2)
    N = int(head[1])
    rows = [ln for ln in lines[2:] if ln.strip()]
    if len(rows) != N:
        raise ParseError(f"expected {N} rows, got {len(rows)}", 3 + min(len(rows), N))
    M = np.empty((N, N), dtype=complex)
    for i, ln in enumerate(rows):
        try:
            vals = [float(t) for t in ln.split()]
        except ValueError as exc:
            raise ParseError(str(exc), 3 + i) from exc
        if len(vals) != 2 * N:
            raise ParseError(f"expected {2 * N} numbers, got {len(vals)}", 3 + i)
        M[i] = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    return M


def save_matrix(M: np.ndarray, path) -> None:
    Path(path).write_text(format_matrix(M))


def load_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text())
