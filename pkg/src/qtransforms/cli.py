"""Command-line interface.

Exit codes: 0 success, 1 internal failure, 2 usage or input error,
3 verification mismatch.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import analyze, qctext
from .ir import CircuitError
from .lower import LoweringError, lower_circuit
from .qctext import ParseError
from .simulate import (
    AncillaLeakError,
    basis_state,
    extract_matrix,
    format_vector,
    histogram,
    load_vector,
    measure_all,
    run,
)
from .synth import BUILDERS
from .transforms import canonical_name, check_qubits, format_matrix, oracle_matrix

DEFAULT_TOL = 1e-10
DEFAULT_SEED = 20240917

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _transform_arg(value: str) -> str:
    try:
        return canonical_name(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _build(args):
    n = check_qubits(args.transform, args.n)
    circuit = BUILDERS[args.transform](n)
    if args.lower or args.strict_elementary:
        circuit, _ = lower_circuit(circuit, strict=args.strict_elementary)
    return circuit


def cmd_synth(args) -> int:
    base = BUILDERS[args.transform](check_qubits(args.transform, args.n))
    circuit = _build(args)
    _emit(qctext.dumps(circuit), args.output)
    counts = [f"high-level {analyze.count_gates(base)}"]
    relaxed, _ = lower_circuit(base)
    strict, _ = lower_circuit(base, strict=True)
    counts.append(f"lowered {analyze.count_gates(relaxed, 'lowered')}")
    counts.append(f"strict-elementary {analyze.count_gates(strict, 'strict-elementary')}")
    print("# gate counts: " + ", ".join(counts), file=sys.stdout if args.output else sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    n = check_qubits(args.transform, args.n)
    if args.circuit:
        circuit = qctext.load(args.circuit)
        if args.lower or args.strict_elementary:
            circuit, _ = lower_circuit(circuit, strict=args.strict_elementary)
    else:
        circuit = _build(args)
    if circuit.data_qubits != n:
        print(f"circuit has {circuit.data_qubits} data qubits, expected {n}")
        return EXIT_MISMATCH
    try:
        M, residual = extract_matrix(circuit, leak_tol=args.tol, return_residual=True)
    except AncillaLeakError as exc:
        print(f"FAIL {exc}")
        return EXIT_MISMATCH
    O = oracle_matrix(args.transform, n)
    diff = np.abs(M - O)
    err = float(diff.max())
    print(f"transform {args.transform} n={n} gates={len(circuit)} "
          f"ancillas={circuit.ancilla_qubits}")
    print(f"max entry error {err:.3e} (tolerance {args.tol:.1e}), ancilla residual {residual:.3e}")
    if err < args.tol:
        print("OK")
        return EXIT_OK
    i, j = np.unravel_index(int(diff.argmax()), diff.shape)
    print(f"FAIL worst entry ({i}, {j}): circuit {M[i, j]:.17g} oracle {O[i, j]:.17g}")
    return EXIT_MISMATCH


def cmd_matrix(args) -> int:
    if args.circuit:
        circuit = qctext.load(args.circuit)
        M = extract_matrix(circuit)
    elif args.transform and args.n is not None:
        M = oracle_matrix(args.transform, check_qubits(args.transform, args.n))
    else:
        raise UsageError("matrix needs --circuit or both --transform and --n")
    _emit(format_matrix(M), args.output)
    return EXIT_OK


def cmd_sim(args) -> int:
    circuit = qctext.load(args.circuit)
    if args.input is not None:
        psi = load_vector(args.input)
    elif args.basis is not None:
        psi = basis_state(args.basis, circuit.data_qubits)
    else:
        raise UsageError("sim needs --input or --basis")
    out = run(circuit, psi)
    if args.shots:
        samples = measure_all(out, seed=args.seed, shots=args.shots)
        for bits, count in histogram(samples, circuit.num_qubits).items():
            print(f"{bits}\t{count}")
        if args.output:
            _emit(format_vector(out), args.output)
    else:
        _emit(format_vector(out), args.output)
    return EXIT_OK


def cmd_count(args) -> int:
    if args.n_max > 10 or args.n_min < 1 or args.n_min > args.n_max:
        raise UsageError("count needs 1 <= n-min <= n-max <= 10")
    check_qubits(args.transform, args.n_max)
    sys.stdout.write(analyze.count_table(args.transform, args.n_max, args.n_min))
    for mode in analyze.MODES:
        prof = analyze.check_recurrence(args.transform, args.n_max, mode, n_min=args.n_min)
        p, c, resid = prof.fit
        line = (f"# {mode}: fit count ~ {c:.6g} * n^{p:.4f} (rms log residual {resid:.3g}), "
                f"count <= {prof.quadratic_constant:.6g} * n^2")
        if mode == "high-level":
            line += ", per-level cost " + ("matches" if prof.recurrence_holds
                                           else f"MISMATCH at n={prof.level_mismatches}")
        print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtransforms",
        description="Synthesize, lower, simulate and verify fast quantum transform circuits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def transform_flags(p, required=True):
        p.add_argument("--transform", type=_transform_arg, required=required,
                       help="dft|qft, walsh|wht, slant, hartley|dht")
        p.add_argument("--n", type=int, required=required, help="number of data qubits")

    def lower_flags(p):
        p.add_argument("--lower", action="store_true", help="lower to elementary gates")
        p.add_argument("--strict-elementary", action="store_true",
                       help="lower all the way to CNOTs and single-qubit gates")

    p = sub.add_parser("synth", help="write a circuit in qc-text format")
    transform_flags(p)
    lower_flags(p)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="compare a circuit's matrix with the reference")
    transform_flags(p)
    lower_flags(p)
    p.add_argument("--circuit", help="verify this qc-text file instead of synthesizing")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("matrix", help="dump a reference or circuit matrix in mat-text format")
    transform_flags(p, required=False)
    p.add_argument("--circuit")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("sim", help="run a circuit on a state")
    p.add_argument("--circuit", required=True)
    p.add_argument("--basis", type=int)
    p.add_argument("--input", help="vec-text input state")
    p.add_argument("--shots", type=int, default=0)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("count", help="gate-count table and growth fit")
    p.add_argument("--transform", type=_transform_arg, required=True)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--n-min", type=int, default=1)
    p.set_defaults(func=cmd_count)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError, CircuitError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LoweringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - map anything unexpected to exit 1
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
