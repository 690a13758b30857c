"""Reader and writer for the ``qc-text v1`` circuit format.

Layout::

    qc-text v1
    qubits <n>
    ancillas <a>
    # label: <text>            (optional; restores Circuit.label)
    <one gate per line>

Conditions are trailing tokens ``+q`` (one-condition) or ``-q``
(zero-condition).  Gate lines::

    U <t> [c] <re> <im> <re> <im> <re> <im> <re> <im>
    X|Z|H <t> [c]
    PHASE|ROT <t> <theta> [c]
    BITREV [<lo>..<hi>] [c]
    ROTWIRES left|right [<lo>..<hi>] [c]
    SWAPQ <i> <j> [c]
    TCOMP <lo>..<hi> [c]
    TRANSP <a> <b> <lo>..<hi> [c]

``BITREV`` and ``ROTWIRES`` default to the full data register.
Floats are written with 17 significant digits.
"""
from __future__ import annotations

from pathlib import Path

from .ir import (
    BitReversal,
    Circuit,
    CircuitError,
    Gate,
    RotateWires,
    SingleQubitGate,
    Transposition,
    TwosComplement,
    WireSwap,
    h_gate,
    phase_gate,
    rot_gate,
    u_gate,
    x_gate,
    z_gate,
)

HEADER = "qc-text v1"
LABEL_PREFIX = "# label:"


class ParseError(ValueError):
    """Malformed input file; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_conditions(g: Gate) -> list[str]:
    return [f"+{q}" for q in sorted(g.ones)] + [f"-{q}" for q in sorted(g.zeros)]


def _fmt_range(lo: int, hi: int) -> str:
    return f"{lo}..{hi}"


def format_gate(g: Gate, data_qubits: int | None = None) -> str:
    cond = _fmt_conditions(g)
    if isinstance(g, SingleQubitGate):
        if g.name in ("X", "Z", "H"):
            toks = [g.name, str(g.target)]
        elif g.name in ("PHASE", "ROT"):
            toks = [g.name, str(g.target), fmt_float(g.param)]
        else:
            nums = []
            for v in g.entries:
                nums += [fmt_float(v.real), fmt_float(v.imag)]
            return " ".join(["U", str(g.target), *cond, *nums])
        return " ".join(toks + cond)
    full = data_qubits is not None and data_qubits > 0
    if isinstance(g, BitReversal):
        toks = ["BITREV"]
        if not (full and g.lo == 0 and g.hi == data_qubits - 1):
            toks.append(_fmt_range(g.lo, g.hi))
    elif isinstance(g, RotateWires):
        toks = ["ROTWIRES", g.direction]
        if not (full and g.lo == 0 and g.hi == data_qubits - 1):
            toks.append(_fmt_range(g.lo, g.hi))
    elif isinstance(g, WireSwap):
        toks = ["SWAPQ", str(g.i), str(g.j)]
    elif isinstance(g, TwosComplement):
        toks = ["TCOMP", _fmt_range(g.lo, g.hi)]
    elif isinstance(g, Transposition):
        toks = ["TRANSP", str(g.a), str(g.b), _fmt_range(g.lo, g.hi)]
    else:  # pragma: no cover - exhaustive over ir gate types
        raise CircuitError(f"cannot serialize {g!r}")
    return " ".join(toks + cond)


def dumps(circuit: Circuit) -> str:
    lines = [HEADER, f"qubits {circuit.data_qubits}", f"ancillas {circuit.ancilla_qubits}"]
    if circuit.label:
        lines.append(f"{LABEL_PREFIX} {circuit.label}")
    lines += [format_gate(g, circuit.data_qubits) for g in circuit.gates]
    return "\n".join(lines) + "\n"


def dump(circuit: Circuit, path) -> None:
    Path(path).write_text(dumps(circuit))


# ---------------------------------------------------------------------------
# parsing

def _int(tok: str) -> int:
    if not tok.lstrip("+-").isdigit():
        raise ValueError(f"expected an integer, got {tok!r}")
    return int(tok)


def _range(tok: str) -> tuple[int, int]:
    lo, sep, hi = tok.partition("..")
    if not sep:
        raise ValueError(f"expected a range lo..hi, got {tok!r}")
    return _int(lo), _int(hi)


def _is_range(tok: str) -> bool:
    return ".." in tok


def _conditions(tokens: list[str]) -> tuple[set[int], set[int]]:
    ones, zeros = set(), set()
    for tok in tokens:
        if len(tok) < 2 or tok[0] not in "+-" or not tok[1:].isdigit():
            raise ValueError(f"bad condition token {tok!r}")
        (ones if tok[0] == "+" else zeros).add(int(tok[1:]))
    return ones, zeros


def _parse_gate(tokens: list[str], data_qubits: int) -> Gate:
    op, args = tokens[0].upper(), tokens[1:]
    if op == "U":
        if len(args) < 9:
            raise ValueError("U needs a target and 8 floats")
        nums = [float(t) for t in args[-8:]]
        ones, zeros = _conditions(args[1:-8])
        entries = [complex(nums[2 * i], nums[2 * i + 1]) for i in range(4)]
        return u_gate(_int(args[0]), [entries[:2], entries[2:]], ones, zeros)
    if op in ("X", "Z", "H"):
        if not args:
            raise ValueError(f"{op} needs a target")
        ones, zeros = _conditions(args[1:])
        make = {"X": x_gate, "Z": z_gate, "H": h_gate}[op]
        return make(_int(args[0]), ones, zeros)
    if op in ("PHASE", "ROT"):
        if len(args) < 2:
            raise ValueError(f"{op} needs a target and an angle")
        ones, zeros = _conditions(args[2:])
        make = phase_gate if op == "PHASE" else rot_gate
        return make(_int(args[0]), float(args[1]), ones, zeros)
    if op in ("BITREV", "ROTWIRES"):
        rest = list(args)
        direction = None
        if op == "ROTWIRES":
            if not rest or rest[0] not in ("left", "right"):
                raise ValueError("ROTWIRES needs a direction left|right")
            direction = rest.pop(0)
        if rest and _is_range(rest[0]):
            lo, hi = _range(rest.pop(0))
        else:
            if data_qubits < 1:
                raise ValueError(f"{op} without a range needs data qubits")
            lo, hi = 0, data_qubits - 1
        ones, zeros = _conditions(rest)
        if op == "BITREV":
            return BitReversal(lo, hi, ones=frozenset(ones), zeros=frozenset(zeros))
        return RotateWires(lo, hi, direction, ones=frozenset(ones), zeros=frozenset(zeros))
    if op == "SWAPQ":
        if len(args) < 2:
            raise ValueError("SWAPQ needs two qubits")
        ones, zeros = _conditions(args[2:])
        return WireSwap(_int(args[0]), _int(args[1]), frozenset(ones), frozenset(zeros))
    if op == "TCOMP":
        if not args:
            raise ValueError("TCOMP needs a range")
        lo, hi = _range(args[0])
        ones, zeros = _conditions(args[1:])
        return TwosComplement(lo, hi, frozenset(ones), frozenset(zeros))
    if op == "TRANSP":
        if len(args) < 3:
            raise ValueError("TRANSP needs two states and a range")
        lo, hi = _range(args[2])
        ones, zeros = _conditions(args[3:])
        return Transposition(lo, hi, _int(args[0]), _int(args[1]),
                             frozenset(ones), frozenset(zeros))
    raise ValueError(f"unknown gate {tokens[0]!r}")


def loads(text: str) -> Circuit:
    """Parse qc-text; raises :class:`ParseError` carrying the line number."""
    raw = text.splitlines()
    body: list[tuple[int, list[str]]] = []
    label = ""
    for lineno, line in enumerate(raw, start=1):
        if line.strip().startswith(LABEL_PREFIX) and not label:
            label = line.strip()[len(LABEL_PREFIX):].strip()
            continue
        tokens = line.split("#", 1)[0].split()
        if tokens:
            body.append((lineno, tokens))
    if not body or body[0][1] != HEADER.split():
        raise ParseError(f"missing header {HEADER!r}", body[0][0] if body else 1)
    header = {}
    for key in ("qubits", "ancillas"):
        if len(body) < 2 + len(header):
            raise ParseError(f"missing '{key}' line", len(raw) or 1)
        lineno, toks = body[1 + len(header)]
        if len(toks) != 2 or toks[0] != key or not toks[1].isdigit():
            raise ParseError(f"expected '{key} <count>'", lineno)
        header[key] = int(toks[1])
    n, a = header["qubits"], header["ancillas"]
    gates = []
    for lineno, toks in body[3:]:
        try:
            g = _parse_gate(toks, n)
        except (ValueError, CircuitError) as exc:
            raise ParseError(str(exc), lineno) from exc
        if max(g.qubits, default=-1) >= n + a:
            raise ParseError(f"qubit {max(g.qubits)} out of range ({n + a} qubits)", lineno)
        gates.append(g)
    return Circuit(n, a, tuple(gates), label)


def load(path) -> Circuit:
    return loads(Path(path).read_text())
