"""Text formats for explicit matrices, set systems and flow networks.

Blank lines and ``#`` comments are ignored everywhere.

matrix::

    m n
    <m rows of n numbers>
    b: <m numbers>          (optional)

set system::

    n
    <one line per set: 1-based element ids, or "-" for the empty set>

flow::

    source <node>
    sink <node>
    <one line per arc: tail head capacity>
"""

from __future__ import annotations

from .errors import DimensionError, InstanceFormatError
from .oracles import ExplicitInstance, FlowInstance
from .setcover import SetSystem


def _content_lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _number(token, line, kind=float):
    try:
        return kind(token)
    except ValueError:
        raise InstanceFormatError(f"cannot read {token!r} as {kind.__name__}", line) from None


def detect_format(text):
    lines = list(_content_lines(text))
    if not lines:
        raise InstanceFormatError("empty instance file")
    if any(tokens[0] in ("source", "sink") for _, tokens in lines):
        return "flow"
    return "sets" if len(lines[0][1]) == 1 else "matrix"


def parse_matrix(text) -> ExplicitInstance:
    lines = list(_content_lines(text))
    if not lines:
        raise InstanceFormatError("empty instance file")
    number, header = lines[0]
    if len(header) != 2:
        raise InstanceFormatError("header must be 'm n'", number)
    m, n = (_number(t, number, int) for t in header)
    if m < 1 or n < 1:
        raise DimensionError(f"matrix dimensions must be positive, got {m} x {n}")
    rows, b = [], None
    for number, tokens in lines[1:]:
        if tokens[0] == "b:":
            if b is not None:
                raise InstanceFormatError("duplicate 'b:' row", number)
            if len(tokens) - 1 != m:
                raise DimensionError(f"line {number}: b has {len(tokens) - 1} entries, expected {m}")
            b = [_number(t, number) for t in tokens[1:]]
            continue
        if b is not None:
            raise InstanceFormatError("matrix rows must precede the 'b:' row", number)
        if len(tokens) != n:
            raise DimensionError(f"line {number}: row has {len(tokens)} entries, expected {n}")
        rows.append([_number(t, number) for t in tokens])
    if len(rows) != m:
        raise DimensionError(f"expected {m} rows, found {len(rows)}")
    return ExplicitInstance(rows, b)


def format_matrix(inst: ExplicitInstance) -> str:
    out = [f"{inst.m} {inst.n}"]
    out += [" ".join(repr(float(v)) for v in row) for row in inst.A]
    if inst.b.any():
        out.append("b: " + " ".join(repr(float(v)) for v in inst.b))
    return "\n".join(out) + "\n"


def parse_set_system(text) -> SetSystem:
    lines = list(_content_lines(text))
    if not lines:
        raise InstanceFormatError("empty instance file")
    number, header = lines[0]
    if len(header) != 1:
        raise InstanceFormatError("header must be the universe size 'n'", number)
    n = _number(header[0], number, int)
    family = []
    for number, tokens in lines[1:]:
        if tokens == ["-"]:
            family.append(())
            continue
        members = [_number(t, number, int) for t in tokens]
        bad = [j for j in members if not 1 <= j <= n]
        if bad:
            raise DimensionError(f"line {number}: elements outside 1..{n}: {bad}")
        family.append(members)
    return SetSystem(n, tuple(family))


def format_set_system(system: SetSystem) -> str:
    out = [str(system.n)]
    out += [" ".join(str(j) for j in sorted(s)) or "-" for s in system.family]
    return "\n".join(out) + "\n"


def parse_flow(text) -> FlowInstance:
    source = sink = None
    nodes, arcs = {}, []
    for number, tokens in _content_lines(text):
        if tokens[0] in ("source", "sink"):
            if len(tokens) != 2:
                raise InstanceFormatError(f"expected '{tokens[0]} <node>'", number)
            if tokens[0] == "source":
                source = tokens[1]
            else:
                sink = tokens[1]
            continue
        if len(tokens) != 3:
            raise InstanceFormatError("arc lines must read 'tail head capacity'", number)
        u, v = tokens[0], tokens[1]
        arcs.append((u, v, _number(tokens[2], number)))
        nodes.setdefault(u, None)
        nodes.setdefault(v, None)
    if source is None or sink is None:
        raise InstanceFormatError("flow file needs 'source' and 'sink' lines")
    nodes.setdefault(source, None)
    nodes.setdefault(sink, None)
    return FlowInstance(tuple(nodes), tuple(arcs), source, sink)


def format_flow(inst: FlowInstance) -> str:
    out = [f"source {inst.source}", f"sink {inst.sink}"]
    out += [f"{u} {v} {c!r}" for u, v, c in inst.arcs]
    return "\n".join(out) + "\n"


_PARSERS = {"matrix": parse_matrix, "sets": parse_set_system, "flow": parse_flow}


def parse_text(text, kind=None):
    kind = kind or detect_format(text)
    return kind, _PARSERS[kind](text)
