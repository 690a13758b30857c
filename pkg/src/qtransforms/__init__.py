"""Recursive quantum circuits for the Fourier, Walsh-Hadamard, Slant and Hartley transforms."""
from .estimator import QuantumTransform
from .ir import Circuit, SingleQubitGate
from .lower import lower_circuit
from .simulate import extract_matrix, measure_all, run
from .synth import build_hartley, build_qft, build_slant, build_walsh, synthesize
from .transforms import dft_matrix, dht_matrix, oracle_matrix, slant_matrix, wht_matrix

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "QuantumTransform",
    "SingleQubitGate",
    "build_hartley",
    "build_qft",
    "build_slant",
    "build_walsh",
    "dft_matrix",
    "dht_matrix",
    "extract_matrix",
    "lower_circuit",
    "measure_all",
    "oracle_matrix",
    "run",
    "slant_matrix",
    "synthesize",
    "wht_matrix",
]
