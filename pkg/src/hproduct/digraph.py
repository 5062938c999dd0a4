"""Immutable digraphs and simple graphs with the structural queries the
rest of the package is built on.

Vertices are dense 0-based integers internally; all text I/O renders them
1-based (see :mod:`hproduct.fileio`). Arc multisets are stored as a
pair-to-count map so that multidigraph multiplicities are exact.
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Iterable, Iterator

from .errors import NotSimpleError, RegularityError


class Digraph:
    """A directed graph on vertices ``0..order-1`` with arc multiplicities.

    Values are immutable after construction and safe to share between
    threads. Loops are rejected unless ``allow_loops=True``; a permutation
    with fixed points is 1-regular only by way of loops, so several
    constructors in this package pass the flag explicitly.
    """

    __slots__ = ("_order", "_arcs")

    def __init__(self, order: int, arcs: Iterable = (), *, allow_loops: bool = False):
        if order < 0:
            raise ValueError(f"order must be nonnegative, got {order}")
        counts: Counter = Counter()
        for arc in arcs:
            if len(arc) == 2:
                u, v = arc
                mult = 1
            else:
                u, v, mult = arc
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"arc ({u}, {v}) out of range for order {order}")
            if mult < 1:
                raise ValueError(f"arc ({u}, {v}) has multiplicity {mult}")
            if u == v and not allow_loops:
                raise ValueError(f"loop at vertex {u} not allowed here")
            counts[(u, v)] += mult
        self._order = order
        self._arcs = dict(sorted(counts.items()))

    @property
    def order(self) -> int:
        return self._order

    @property
    def size(self) -> int:
        """Number of arcs, counting multiplicity."""
        return sum(self._arcs.values())

    def arcs(self) -> Iterator[tuple[int, int]]:
        """Distinct arcs in sorted order (ignores multiplicity)."""
        return iter(self._arcs)

    def arc_items(self) -> Iterator[tuple[tuple[int, int], int]]:
        """Pairs ``((tail, head), multiplicity)`` in sorted order."""
        return iter(self._arcs.items())

    def multiplicity(self, u: int, v: int) -> int:
        return self._arcs.get((u, v), 0)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arcs

    @property
    def has_loops(self) -> bool:
        return any(u == v for u, v in self._arcs)

    @property
    def is_multiplicity_free(self) -> bool:
        return all(m == 1 for m in self._arcs.values())

    def out_degrees(self) -> list[int]:
        degs = [0] * self._order
        for (u, _), m in self._arcs.items():
            degs[u] += m
        return degs

    def in_degrees(self) -> list[int]:
        degs = [0] * self._order
        for (_, v), m in self._arcs.items():
            degs[v] += m
        return degs

    def reverse(self) -> "Digraph":
        """The digraph obtained by reversing every arc. Involution."""
        return Digraph(
            self._order,
            (((v, u, m) for (u, v), m in self._arcs.items())),
            allow_loops=True,
        )

    def is_one_regular(self) -> bool:
        """True iff every vertex has indegree = outdegree = 1 (with multiplicity)."""
        return (
            self.size == self._order
            and all(d == 1 for d in self.out_degrees())
            and all(d == 1 for d in self.in_degrees())
        )

    def successors(self) -> list[int]:
        """For a 1-regular digraph, the unique out-neighbor of each vertex."""
        if not self.is_one_regular():
            raise RegularityError("digraph is not 1-regular")
        succ = [0] * self._order
        for u, v in self._arcs:
            succ[u] = v
        return succ

    def underlying(self) -> "Graph":
        """The underlying simple graph: edge {u,v} iff (u,v) or (v,u) is an arc.

        A directed 2-cycle collapses onto a single edge. Loops have no
        simple-graph counterpart and are rejected.
        """
        edges = set()
        for u, v in self._arcs:
            if u == v:
                raise NotSimpleError(f"loop at vertex {u} has no underlying edge")
            edges.add((min(u, v), max(u, v)))
        return Graph(self._order, edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._order == other._order and self._arcs == other._arcs

    def __hash__(self) -> int:
        return hash((self._order, tuple(self._arcs.items())))

    def __repr__(self) -> str:
        return f"Digraph(order={self._order}, size={self.size})"


class Graph:
    """An immutable simple graph: no loops, no multi-edges."""

    __slots__ = ("_order", "_edges")

    def __init__(self, order: int, edges: Iterable[tuple[int, int]] = ()):
        if order < 0:
            raise ValueError(f"order must be nonnegative, got {order}")
        normalized = set()
        for u, v in edges:
            if u == v:
                raise NotSimpleError(f"loop at vertex {u} in a simple graph")
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge ({u}, {v}) out of range for order {order}")
            e = (min(u, v), max(u, v))
            if e in normalized:
                raise NotSimpleError(f"duplicate edge {e} in a simple graph")
            normalized.add(e)
        self._order = order
        self._edges = frozenset(normalized)

    @property
    def order(self) -> int:
        return self._order

    @property
    def size(self) -> int:
        return len(self._edges)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edges

    def neighbors(self, v: int) -> list[int]:
        out = [b if a == v else a for a, b in self._edges if v in (a, b)]
        return sorted(out)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self._order)]
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for a, b in self._edges if v in (a, b))

    def degree_sequence(self) -> list[int]:
        degs = [0] * self._order
        for u, v in self._edges:
            degs[u] += 1
            degs[v] += 1
        return sorted(degs)

    def connected_components(self) -> list[list[int]]:
        """Vertex classes, each sorted, ordered by smallest member."""
        adj = self.adjacency()
        seen = [False] * self._order
        comps = []
        for start in range(self._order):
            if seen[start]:
                continue
            queue = deque([start])
            seen[start] = True
            comp = []
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._order == other._order and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._order, self._edges))

    def __repr__(self) -> str:
        return f"Graph(order={self._order}, size={self.size})"


def disjoint_union(graphs: Iterable[Graph]) -> Graph:
    """The disjoint union, vertices renumbered block by block."""
    offset = 0
    edges = []
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.order
    return Graph(offset, edges)


def oriented_cycle(m: int, direction: str = "forward") -> Digraph:
    """One of the two strong orientations of the cycle on ``m`` vertices.

    ``forward`` has arcs (i, i+1 mod m); ``backward`` is its reverse.
    """
    if m < 2:
        raise ValueError(f"cycle order must be at least 2, got {m}")
    if direction == "forward":
        arcs = [(i, (i + 1) % m) for i in range(m)]
    elif direction == "backward":
        arcs = [((i + 1) % m, i) for i in range(m)]
    else:
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    return Digraph(m, arcs)


def weak_components(d: Digraph) -> list[list[int]]:
    """Connectivity classes ignoring arc direction; sorted by smallest member."""
    adj: list[set[int]] = [set() for _ in range(d.order)]
    for u, v in d.arcs():
        adj[u].add(v)
        adj[v].add(u)
    seen = [False] * d.order
    comps = []
    for start in range(d.order):
        if seen[start]:
            continue
        queue = deque([start])
        seen[start] = True
        comp = []
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def strong_components(d: Digraph) -> list[list[int]]:
    """Maximal mutually-reachable classes (iterative Tarjan).

    Classes are returned sorted internally and ordered by smallest member,
    so the output is deterministic.
    """
    n = d.order
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in d.arcs():
        adj[u].append(v)

    index = [-1] * n
    lowlink = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    comps: list[list[int]] = []

    for root in range(n):
        if index[root] != -1:
            continue
        # work items: (vertex, iterator position into adj[vertex])
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for i in range(pi, len(adj[v])):
                w = adj[v][i]
                if index[w] == -1:
                    work.append((v, i + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    lowlink[v] = min(lowlink[v], index[w])
            if recurse:
                continue
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
    comps.sort(key=lambda c: c[0])
    return comps


def cycle_length_multiset(d: Digraph) -> list[int]:
    """Lengths of the disjoint directed cycles of a 1-regular digraph, sorted.

    Loops count as cycles of length 1.
    """
    succ = d.successors()
    seen = [False] * d.order
    lengths = []
    for start in range(d.order):
        if seen[start]:
            continue
        length = 0
        v = start
        while not seen[v]:
            seen[v] = True
            v = succ[v]
            length += 1
        lengths.append(length)
    return sorted(lengths)


def is_eulerian(d: Digraph) -> bool:
    """True iff ``d`` is weakly connected and every vertex balances in/out degree.

    A one-vertex digraph with no arcs counts as eulerian (empty circuit).
    """
    if d.in_degrees() != d.out_degrees():
        return False
    return len(weak_components(d)) <= 1
