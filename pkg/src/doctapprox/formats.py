"""Line-oriented text formats for labeled digraphs, parity instances and pattern instances.

Vertex ids are 0-based. Permutation rows in ``.lgr`` files list the images of 1..L.
"""

from __future__ import annotations

from typing import Iterator

from .instances import ParityInstance, PsiInstance
from .perm import LabeledDigraph


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


def _records(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body.split()


def _ints(no: int, fields: list[str], count: int | None = None) -> list[int]:
    if count is not None and len(fields) != count:
        raise ParseError(no, f"expected {count} fields, got {len(fields)}")
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise ParseError(no, f"expected integers, got {' '.join(fields)!r}") from None


def _header(recs: Iterator[tuple[int, list[str]]], magic: str) -> None:
    try:
        no, fields = next(recs)
    except StopIteration:
        raise ParseError(1, f"malformed header: empty input, expected '{magic} 1'") from None
    if fields != [magic, "1"]:
        raise ParseError(no, f"malformed header: expected '{magic} 1', got {' '.join(fields)!r}")


def _vertex(no: int, v: int, n: int | None, what: str = "vertex") -> int:
    if n is None:
        raise ParseError(no, "record appears before the node count")
    if not 0 <= v < n:
        raise ParseError(no, f"{what} id {v} out of range [0,{n})")
    return v


def detect_format(text: str) -> str:
    for _, fields in _records(text):
        return fields[0]
    raise ParseError(1, "malformed header: empty input")


def parse_lgr(text: str) -> LabeledDigraph:
    recs = _records(text)
    _header(recs, "lgr")
    ell = n = None
    arcs = []
    for no, fields in recs:
        key, rest = fields[0], fields[1:]
        if key == "ell":
            (ell,) = _ints(no, rest, 1)
            if ell < 1:
                raise ParseError(no, f"ell must be positive, got {ell}")
        elif key == "nodes":
            (n,) = _ints(no, rest, 1)
            if n < 0:
                raise ParseError(no, f"node count must be non-negative, got {n}")
        elif key == "arc":
            if ell is None:
                raise ParseError(no, "arc appears before 'ell'")
            vals = _ints(no, rest, 2 + ell)
            u, v = _vertex(no, vals[0], n), _vertex(no, vals[1], n)
            row = vals[2:]
            if sorted(row) != list(range(1, ell + 1)):
                raise ParseError(no, f"permutation row {' '.join(map(str, row))} is not a bijection on 1..{ell}")
            arcs.append((u, v, tuple(i - 1 for i in row)))
        else:
            raise ParseError(no, f"unknown record {key!r}")
    if ell is None or n is None:
        raise ParseError(0, "missing 'ell' or 'nodes' record")
    return LabeledDigraph(n, ell, tuple(arcs))


def emit_lgr(D: LabeledDigraph) -> str:
    lines = ["lgr 1", f"ell {D.ell}", f"nodes {D.vertex_count}"]
    for u, v, p in sorted(D.arcs):
        lines.append(f"arc {u} {v} " + " ".join(str(i + 1) for i in p))
    return "\n".join(lines) + "\n"


def parse_adoct(text: str) -> ParityInstance:
    recs = _records(text)
    _header(recs, "adoct")
    n = k = None
    weights: dict[int, tuple[int, int]] = {}
    arcs = []
    for no, fields in recs:
        key, rest = fields[0], fields[1:]
        if key == "nodes":
            (n,) = _ints(no, rest, 1)
            if n < 0:
                raise ParseError(no, f"node count must be non-negative, got {n}")
        elif key == "budget":
            (k,) = _ints(no, rest, 1)
            if k < 0:
                raise ParseError(no, f"budget must be non-negative, got {k}")
        elif key == "node":
            v, w = _ints(no, rest, 2)
            _vertex(no, v, n)
            if v in weights:
                raise ParseError(no, f"duplicate weight for vertex {v}")
            weights[v] = (w, no)
        elif key == "arc":
            u, v, b = _ints(no, rest, 3)
            _vertex(no, u, n)
            _vertex(no, v, n)
            if b not in (0, 1):
                raise ParseError(no, f"arc label {b} not in {{0,1}}")
            arcs.append((u, v, b))
        else:
            raise ParseError(no, f"unknown record {key!r}")
    if n is None or k is None:
        raise ParseError(0, "missing 'nodes' or 'budget' record")
    for v, (w, no) in weights.items():
        if not 1 <= w <= 2 * k + 1:
            raise ParseError(no, f"weight {w} of vertex {v} outside [1,{2 * k + 1}]")
    ws = tuple(weights.get(v, (1, 0))[0] for v in range(n))
    return ParityInstance(n, tuple(arcs), ws, k)


def emit_adoct(inst: ParityInstance) -> str:
    lines = ["adoct 1", f"nodes {inst.vertex_count}", f"budget {inst.budget}"]
    lines += [f"node {v} {w}" for v, w in enumerate(inst.weights)]
    lines += [f"arc {u} {v} {b}" for u, v, b in sorted(inst.arcs)]
    return "\n".join(lines) + "\n"


def parse_psi(text: str) -> PsiInstance:
    recs = _records(text)
    _header(recs, "psi")
    gn = None
    g_edges = []
    color: dict[int, int] = {}
    h_edges = []
    for no, fields in recs:
        key, rest = fields[0], fields[1:]
        if key == "gnodes":
            (gn,) = _ints(no, rest, 1)
            if gn < 0:
                raise ParseError(no, f"pattern node count must be non-negative, got {gn}")
        elif key == "gedge":
            a, b = _ints(no, rest, 2)
            _vertex(no, a, gn, "pattern vertex")
            _vertex(no, b, gn, "pattern vertex")
            if a == b:
                raise ParseError(no, "pattern self-loop")
            g_edges.append(frozenset((a, b)))
        elif key == "hnode":
            h, c = _ints(no, rest, 2)
            _vertex(no, c, gn, "color")
            if h in color:
                raise ParseError(no, f"duplicate host vertex {h}")
            color[h] = c
        elif key == "hedge":
            a, b = _ints(no, rest, 2)
            for x in (a, b):
                if x not in color:
                    raise ParseError(no, f"host vertex {x} used before its 'hnode' record")
            if a == b:
                raise ParseError(no, "host self-loop")
            h_edges.append(frozenset((a, b)))
        else:
            raise ParseError(no, f"unknown record {key!r}")
    if gn is None:
        raise ParseError(0, "missing 'gnodes' record")
    return PsiInstance(gn, frozenset(g_edges), color, frozenset(h_edges))


def emit_psi(inst: PsiInstance) -> str:
    lines = ["psi 1", f"gnodes {inst.g_count}"]
    lines += [f"gedge {a} {b}" for a, b in sorted(tuple(sorted(e)) for e in inst.g_edges)]
    lines += [f"hnode {h} {c}" for h, c in sorted(inst.h_color.items())]
    lines += [f"hedge {a} {b}" for a, b in sorted(tuple(sorted(e)) for e in inst.h_edges)]
    return "\n".join(lines) + "\n"


def parse_vertex_list(text: str) -> frozenset[int]:
    """Vertex ids separated by whitespace or commas; ``#`` starts a comment."""
    out = set()
    for no, fields in _records(text.replace(",", " ")):
        out.update(_ints(no, fields))
    return frozenset(out)
