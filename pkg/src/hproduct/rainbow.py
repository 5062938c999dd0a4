"""Arc-colored union multidigraphs and rainbow circuit enumeration.

For an assignment h over the forward cycle on m vertices into a family of
1-regular digraphs, the union multidigraph stacks the arcs of all assigned
members onto the carrier vertex set, coloring each copy by the index of
the host arc it came from (arc (a_i, a_{i+1}) carries color i, 0-based).
Rainbow circuits, walks whose colors repeat the sequence s_1..s_m forever,
are then in bijection with the strongly connected components of the
product, and a single all-covering rainbow circuit is equivalent to the
product being one strongly oriented cycle of length m*n.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterator, Sequence

from .digraph import Digraph
from .errors import RegularityError, ShapeError
from .permutations import Permutation, product_of
from .product import Family, HAssignment, _check_assignment


class ColoredMultiDigraph:
    """A multidigraph whose arc copies each carry one color index."""

    __slots__ = ("_order", "_colors", "_num_colors")

    def __init__(
        self,
        order: int,
        colored_arcs: Sequence[tuple[int, int, int]],
        num_colors: int,
    ):
        by_arc: dict[tuple[int, int], list[int]] = {}
        for u, v, color in colored_arcs:
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"arc ({u}, {v}) out of range for order {order}")
            if not (0 <= color < num_colors):
                raise ValueError(f"color {color} out of range 0..{num_colors - 1}")
            by_arc.setdefault((u, v), []).append(color)
        self._order = order
        self._colors = {arc: tuple(sorted(cols)) for arc, cols in sorted(by_arc.items())}
        self._num_colors = num_colors

    @property
    def order(self) -> int:
        return self._order

    @property
    def num_colors(self) -> int:
        return self._num_colors

    @property
    def size(self) -> int:
        return sum(len(cols) for cols in self._colors.values())

    def arc_copies(self) -> Iterator[tuple[int, int, int]]:
        """Every arc copy as (tail, head, color), sorted."""
        for (u, v), cols in self._colors.items():
            for c in cols:
                yield (u, v, c)

    def colors_of(self, u: int, v: int) -> tuple[int, ...]:
        return self._colors.get((u, v), ())

    def base(self) -> Digraph:
        """The uncolored multidigraph; copy counts become multiplicities."""
        return Digraph(
            self._order,
            (((u, v, len(cols)) for (u, v), cols in self._colors.items())),
            allow_loops=True,
        )

    def __repr__(self) -> str:
        return (
            f"ColoredMultiDigraph(order={self._order}, size={self.size}, "
            f"colors={self._num_colors})"
        )


def forward_cycle_arcs(h: HAssignment) -> list[tuple[int, int]]:
    """The assignment's host arcs in traversal order, starting at vertex 0.

    The host must be one directed cycle through all its vertices; the
    returned order is what the head-to-tail coloring rule and the factor
    composition both follow, independent of how the arcs were listed.
    """
    succ: dict[int, int] = {}
    for u, v in h.arcs:
        if u in succ:
            raise ShapeError(f"vertex {u + 1} has two out-arcs; host is not a directed cycle")
        succ[u] = v
    vertices = set(range(h.host_order))
    if set(succ) != vertices or set(succ.values()) != vertices:
        raise ShapeError("assignment host must be one directed cycle through every vertex")
    order = []
    cur = 0
    for _ in range(h.host_order):
        order.append((cur, succ[cur]))
        cur = succ[cur]
    if cur != 0 or len(set(order)) != h.host_order:
        raise ShapeError("assignment host splits into several directed cycles")
    return order


def union_multidigraph(m: int, gamma: Family, h: HAssignment) -> ColoredMultiDigraph:
    """Stack the assigned members over the carrier set, coloring by host arc.

    The host must be a forward cycle on ``m`` vertices; the i-th arc in
    traversal order from vertex 0 contributes its member's arcs with color
    i. An arc appearing in r assigned members shows up with multiplicity r.
    """
    if h.host_order != m:
        raise ShapeError(f"assignment host has {h.host_order} vertices, expected {m}")
    arcs_in_order = forward_cycle_arcs(h)
    _check_assignment(h.host_digraph(), gamma, h)
    colored = []
    for i, arc in enumerate(arcs_in_order):
        member = gamma.member(h.name_for(arc))
        for (x, y), mult in member.arc_items():
            colored.extend([(x, y, i)] * mult)
    return ColoredMultiDigraph(gamma.carrier_order, colored, m)


def _color_maps(colored: ColoredMultiDigraph) -> list[Permutation]:
    """Per color, the vertex successor map; errors unless each is 1-regular."""
    n = colored.order
    maps: list[list[int]] = [[-1] * n for _ in range(colored.num_colors)]
    for u, v, c in colored.arc_copies():
        if maps[c][u] != -1:
            raise RegularityError(
                f"vertex {u + 1} has two out-arcs of color {c}; members must be 1-regular"
            )
        maps[c][u] = v
    perms = []
    for c, image in enumerate(maps):
        if -1 in image:
            raise RegularityError(
                f"vertex {image.index(-1) + 1} has no out-arc of color {c}"
            )
        if len(set(image)) != n:
            raise RegularityError(f"color {c} arcs do not form a 1-regular digraph")
        perms.append(Permutation(image))
    return perms


def _check_sequence(colored: ColoredMultiDigraph, seq: Sequence[int] | None) -> tuple[int, ...]:
    m = colored.num_colors
    if seq is None:
        return tuple(range(m))
    seq = tuple(seq)
    if sorted(seq) != list(range(m)):
        raise ValueError(f"color sequence must order the colors 0..{m - 1} exactly once")
    return seq


def find_rainbow_circuits(
    colored: ColoredMultiDigraph, seq: Sequence[int] | None = None
) -> list[tuple[int, ...]]:
    """All circuits whose arc colors repeat ``seq`` around and around.

    With 1-regular members the walk is forced: from the vertex at position
    t, follow the unique out-arc of color seq[t mod m]. Each circuit is
    reported as its vertex sequence (closed implicitly), starting from the
    smallest vertex occupying a position of color seq[0]; together the
    circuits use every arc copy exactly once.
    """
    seq = _check_sequence(colored, seq)
    color_maps = _color_maps(colored)
    around = product_of([color_maps[c] for c in seq])

    circuits = []
    for orbit in around.cycles().cycles:
        walk = []
        v = orbit[0]
        for _ in range(len(orbit)):
            for c in seq:
                walk.append(v)
                v = color_maps[c](v)
        circuits.append(tuple(walk))
    return circuits


def is_rainbow_eulerian(
    colored: ColoredMultiDigraph, seq: Sequence[int] | None = None
) -> bool:
    """True iff one rainbow circuit covers every arc copy of the multidigraph."""
    circuits = find_rainbow_circuits(colored, seq)
    return len(circuits) == 1 and len(circuits[0]) == colored.size


def circuit_arc_lengths(circuits: Sequence[tuple[int, ...]]) -> list[int]:
    """Arc lengths of the given circuits, sorted (vertex count = arc count)."""
    return sorted(len(c) for c in circuits)


def circuits_partition_arcs(
    colored: ColoredMultiDigraph, circuits: Sequence[tuple[int, ...]],
    seq: Sequence[int] | None = None,
) -> bool:
    """Check the circuits use each arc copy of the multidigraph exactly once."""
    seq = _check_sequence(colored, seq)
    m = colored.num_colors
    used: Counter = Counter()
    for walk in circuits:
        for t, u in enumerate(walk):
            v = walk[(t + 1) % len(walk)]
            used[(u, v, seq[t % m])] += 1
    have: Counter = Counter(colored.arc_copies())
    return used == have
