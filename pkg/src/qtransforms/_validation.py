"""Input checks shared by the estimator and the CLI."""
from __future__ import annotations

import numpy as np


def check_signals(X, allow_complex: bool = True) -> np.ndarray:
    """Return ``X`` as a 2-D float or complex array of shape ``(n_samples, 2**n)``."""
    X = np.asarray(X)
    if X.ndim == 1:
        raise ValueError("expected a 2-D array of signals; reshape a single signal "
                         "with X.reshape(1, -1)")
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D array, got {X.ndim} dimensions")
    if X.shape[0] == 0:
        raise ValueError("no samples")
    if np.iscomplexobj(X):
        if not allow_complex:
            raise ValueError("complex input is not supported here")
        X = X.astype(complex)
    elif X.dtype.kind in "biuf":
        X = X.astype(float)
    else:
        raise ValueError(f"unsupported dtype {X.dtype}")
    if not np.all(np.isfinite(X)):
        raise ValueError("input contains NaN or infinity")
    return X


def signal_qubits(length: int) -> int:
    """``n`` with ``length == 2**n``; rejects lengths that are not powers of two."""
    n = int(length).bit_length() - 1
    if length < 2 or 1 << n != length:
        raise ValueError(f"signal length must be a power of two >= 2, got {length}")
    return n
