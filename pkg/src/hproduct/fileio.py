"""Text formats and DOT emission.

All formats are line oriented and 1-based; every writer's output reads
back identically. Formats:

* digraph:   ``digraph <order>`` then ``u v [mult]`` lines
* graph:     ``graph <order>`` then ``u v`` lines
* family:    ``family <n>``, then per member ``member <name>`` + arc lines
* assignment: ``u v -> <name>`` lines, in host arc order
* labeling:  ``labeling p q sum [super]``, then ``v <vertex> <label>`` and
  ``e <u> <v> <label>`` lines
* form:      ``form <m>``, then one nested-parenthesis rooted tree per slot
  (the outer pair is the root, e.g. ``(()())`` is a path rooted centrally)
"""

from __future__ import annotations

from typing import NamedTuple

from .digraph import Digraph, Graph
from .errors import ParseError
from .labeling import MagicCertificate, TotalLabeling
from .product import Family, HAssignment
from .rainbow import ColoredMultiDigraph
from .unicyclic import RootedTree, UnicyclicForm


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            out.append((i, stripped))
    return out


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {token!r}") from None


def _header(lines: list[tuple[int, str]], keyword: str) -> int:
    if not lines:
        raise ParseError(f"empty input; expected a '{keyword}' header")
    lineno, text = lines[0]
    parts = text.split()
    if len(parts) != 2 or parts[0] != keyword:
        raise ParseError(f"line {lineno}: expected '{keyword} <count>', got {text!r}")
    return _int(parts[1], lineno)


def dumps_digraph(d: Digraph) -> str:
    out = [f"digraph {d.order}"]
    for (u, v), mult in d.arc_items():
        suffix = f" {mult}" if mult > 1 else ""
        out.append(f"{u + 1} {v + 1}{suffix}")
    return "\n".join(out) + "\n"


def loads_digraph(text: str) -> Digraph:
    lines = _lines(text)
    order = _header(lines, "digraph")
    arcs = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"line {lineno}: expected 'u v [mult]', got {line!r}")
        u, v = _int(parts[0], lineno), _int(parts[1], lineno)
        mult = _int(parts[2], lineno) if len(parts) == 3 else 1
        if not (1 <= u <= order and 1 <= v <= order):
            raise ParseError(f"line {lineno}: vertex outside 1..{order}")
        arcs.append((u - 1, v - 1, mult))
    return Digraph(order, arcs, allow_loops=True)


def dumps_graph(g: Graph) -> str:
    out = [f"graph {g.order}"]
    out.extend(f"{u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def loads_graph(text: str) -> Graph:
    lines = _lines(text)
    order = _header(lines, "graph")
    edges = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = _int(parts[0], lineno), _int(parts[1], lineno)
        if not (1 <= u <= order and 1 <= v <= order):
            raise ParseError(f"line {lineno}: vertex outside 1..{order}")
        edges.append((u - 1, v - 1))
    return Graph(order, edges)


def dumps_family(fam: Family) -> str:
    out = [f"family {fam.carrier_order}"]
    for name, member in fam.items():
        out.append(f"member {name}")
        for (u, v), mult in member.arc_items():
            suffix = f" {mult}" if mult > 1 else ""
            out.append(f"{u + 1} {v + 1}{suffix}")
    return "\n".join(out) + "\n"


def loads_family(text: str) -> Family:
    lines = _lines(text)
    n = _header(lines, "family")
    members: list[tuple[str, list]] = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if parts[0] == "member":
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'member <name>'")
            members.append((parts[1], []))
            continue
        if not members:
            raise ParseError(f"line {lineno}: arc line before any 'member' header")
        if len(parts) not in (2, 3):
            raise ParseError(f"line {lineno}: expected 'u v [mult]', got {line!r}")
        u, v = _int(parts[0], lineno), _int(parts[1], lineno)
        mult = _int(parts[2], lineno) if len(parts) == 3 else 1
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"line {lineno}: vertex outside 1..{n}")
        members[-1][1].append((u - 1, v - 1, mult))
    return Family(
        n, [(name, Digraph(n, arcs, allow_loops=True)) for name, arcs in members]
    )


def dumps_assignment(h: HAssignment) -> str:
    out = [f"{u + 1} {v + 1} -> {h.name_for((u, v))}" for u, v in h.arcs]
    return "\n".join(out) + "\n"


def loads_assignment(text: str, host_order: int) -> HAssignment:
    pairs = []
    for lineno, line in _lines(text):
        parts = line.split()
        if len(parts) != 4 or parts[2] != "->":
            raise ParseError(f"line {lineno}: expected 'u v -> <name>', got {line!r}")
        u, v = _int(parts[0], lineno), _int(parts[1], lineno)
        if not (1 <= u <= host_order and 1 <= v <= host_order):
            raise ParseError(f"line {lineno}: vertex outside 1..{host_order}")
        pairs.append((((u - 1), (v - 1)), parts[3]))
    return HAssignment(host_order, pairs)


class LabelingFile(NamedTuple):
    labeling: TotalLabeling
    magic_sum: int
    is_super: bool


def dumps_labeling(cert: MagicCertificate) -> str:
    lab = cert.labeling
    head = f"labeling {lab.p} {lab.q} {cert.magic_sum}"
    if cert.is_super:
        head += " super"
    out = [head]
    out.extend(f"v {v + 1} {label}" for v, label in lab.vertex_labels.items())
    out.extend(f"e {u + 1} {v + 1} {label}" for (u, v), label in lab.edge_labels.items())
    return "\n".join(out) + "\n"


def loads_labeling(text: str) -> LabelingFile:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input; expected a 'labeling' header")
    lineno, head = lines[0]
    parts = head.split()
    if parts[0] != "labeling" or len(parts) not in (4, 5):
        raise ParseError(f"line {lineno}: expected 'labeling p q sum [super]'")
    p, q, magic_sum = (_int(t, lineno) for t in parts[1:4])
    is_super = len(parts) == 5 and parts[4] == "super"
    vertex_labels: dict[int, int] = {}
    edge_labels: dict[tuple[int, int], int] = {}
    edges = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if parts[0] == "v" and len(parts) == 3:
            vertex_labels[_int(parts[1], lineno) - 1] = _int(parts[2], lineno)
        elif parts[0] == "e" and len(parts) == 4:
            u, v = _int(parts[1], lineno) - 1, _int(parts[2], lineno) - 1
            edges.append((u, v))
            edge_labels[(u, v)] = _int(parts[3], lineno)
        else:
            raise ParseError(f"line {lineno}: expected 'v <v> <label>' or 'e <u> <v> <label>'")
    if len(vertex_labels) != p or len(edges) != q:
        raise ParseError(f"header promised {p} vertices and {q} edges")
    graph = Graph(p, edges)
    return LabelingFile(TotalLabeling(graph, vertex_labels, edge_labels), magic_sum, is_super)


def _parse_tree(encoded: str, lineno: int) -> RootedTree:
    if not encoded or encoded[0] != "(" or encoded[-1] != ")":
        raise ParseError(f"line {lineno}: tree encoding must be wrapped in parentheses")
    edges: list[tuple[int, int]] = []
    counter = 0
    stack: list[int] = []
    for ch in encoded:
        if ch == "(":
            node = counter
            counter += 1
            if stack:
                edges.append((stack[-1], node))
            stack.append(node)
        elif ch == ")":
            if not stack:
                raise ParseError(f"line {lineno}: unbalanced parentheses")
            stack.pop()
        elif not ch.isspace():
            raise ParseError(f"line {lineno}: unexpected character {ch!r} in tree encoding")
    if stack:
        raise ParseError(f"line {lineno}: unbalanced parentheses")
    if counter == 0:
        raise ParseError(f"line {lineno}: empty tree encoding")
    return RootedTree(Graph(counter, edges), 0)


def dumps_form(form: UnicyclicForm) -> str:
    out = [f"form {form.length}"]
    out.extend(t.canon() for t in form.trees)
    return "\n".join(out) + "\n"


def loads_form(text: str) -> UnicyclicForm:
    lines = _lines(text)
    m = _header(lines, "form")
    trees = [_parse_tree(line, lineno) for lineno, line in lines[1:]]
    if len(trees) != m:
        raise ParseError(f"header promised {m} slots, found {len(trees)}")
    return UnicyclicForm(trees)


def dot_digraph(d: Digraph, name: str = "D") -> str:
    out = [f"digraph {name} {{"]
    for v in range(d.order):
        out.append(f'  {v + 1} [label="{v + 1}"];')
    for (u, v), mult in d.arc_items():
        out.extend(f"  {u + 1} -> {v + 1};" for _ in range(mult))
    out.append("}")
    return "\n".join(out) + "\n"


def dot_graph(g: Graph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    for v in range(g.order):
        out.append(f'  {v + 1} [label="{v + 1}"];')
    out.extend(f"  {u + 1} -- {v + 1};" for u, v in g.edges())
    out.append("}")
    return "\n".join(out) + "\n"


_DOT_STYLES = ("dashed", "solid", "dotted", "bold")
_DOT_COLORS = ("black", "firebrick", "royalblue", "forestgreen", "darkorange", "purple")


def dot_colored(m: ColoredMultiDigraph, circuits=None, name: str = "M") -> str:
    """Styled multidigraph; with circuits given, arcs carry their walk position.

    Color index c renders with a cycling line style and color, echoing the
    dash/line/dots convention for small instances.
    """
    position: dict[tuple[int, int, int], int] = {}
    if circuits:
        counter = 1
        seq = tuple(range(m.num_colors))
        for walk in circuits:
            for t, u in enumerate(walk):
                v = walk[(t + 1) % len(walk)]
                position[(u, v, seq[t % m.num_colors])] = counter
                counter += 1
    out = [f"digraph {name} {{"]
    for v in range(m.order):
        out.append(f'  {v + 1} [label="{v + 1}"];')
    for u, v, c in m.arc_copies():
        style = _DOT_STYLES[c % len(_DOT_STYLES)]
        color = _DOT_COLORS[c % len(_DOT_COLORS)]
        attrs = f'style={style}, color={color}'
        if (u, v, c) in position:
            attrs += f', label="{position[(u, v, c)]}"'
        out.append(f"  {u + 1} -> {v + 1} [{attrs}];")
    out.append("}")
    return "\n".join(out) + "\n"
