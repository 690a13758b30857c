"""scikit-learn transformer that runs a synthesized circuit on signal vectors.

``QuantumTransform`` treats each row of ``X`` as the amplitude vector of an
``n``-qubit register and returns the simulated output amplitudes, so the
circuit drops into pipelines and grid searches like any other transformer::

    >>> import numpy as np
    >>> from qtransforms import QuantumTransform
    >>> qt = QuantumTransform("walsh").fit(np.eye(4))
    >>> qt.transform([[1.0, 0.0, 0.0, 0.0]]).round(3)
    array([[0.5, 0.5, 0.5, 0.5]])
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_signals, signal_qubits
from .lower import lower_circuit
from .simulate import run
from .synth import BUILDERS
from .transforms import canonical_name, check_qubits


class QuantumTransform(TransformerMixin, BaseEstimator):
    """Apply the circuit of a fast unitary transform to each row of ``X``.

    Parameters
    ----------
    kind : {"dft", "walsh", "slant", "hartley"}
        Which transform to synthesize.  Aliases such as ``"qft"``, ``"wht"``
        and ``"dht"`` are accepted.  (The name ``transform`` is taken by the
        scikit-learn method.)
    lower : bool
        Simulate the lowered circuit instead of the macro-level one.
    strict : bool
        With ``lower``, expand down to CNOTs and single-qubit gates.

    Attributes
    ----------
    n_qubits_ : int
    circuit_ : Circuit
        The circuit that ``transform`` simulates.
    n_features_in_ : int
    """

    def __init__(self, kind="dft", lower=False, strict=False):
        self.kind = kind
        self.lower = lower
        self.strict = strict

    def fit(self, X, y=None):
        X = check_signals(X)
        name = canonical_name(self.kind)
        n = check_qubits(name, signal_qubits(X.shape[1]))
        circuit = BUILDERS[name](n)
        if self.lower or self.strict:
            circuit, self.lowering_report_ = lower_circuit(circuit, strict=self.strict)
        self.transform_name_ = name
        self.n_qubits_ = n
        self.circuit_ = circuit
        self.n_features_in_ = X.shape[1]
        return self

    def _run(self, X, circuit):
        X = check_signals(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, but {type(self).__name__} "
                             f"was fitted with {self.n_features_in_}")
        out = run(circuit, X.T.astype(complex))[: self.n_features_in_].T
        # only the Fourier matrix is complex; the others map real input to real output
        if self.transform_name_ != "dft" and not np.iscomplexobj(X):
            return np.ascontiguousarray(out.real)
        return out

    def transform(self, X):
        check_is_fitted(self, "circuit_")
        return self._run(X, self.circuit_)

    def inverse_transform(self, X):
        check_is_fitted(self, "circuit_")
        return self._run(X, self.circuit_.inverse())
