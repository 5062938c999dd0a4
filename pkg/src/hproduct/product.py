"""The arc-assigned direct product of digraphs.

Given a host digraph D, a family of digraphs on a common vertex set V, and
an assignment h from the arcs of D into the family, the product has vertex
set V(D) x V and an arc ((a,x),(b,y)) exactly when (a,b) is an arc of D and
(x,y) is an arc of the member assigned to (a,b). With a constant
assignment this is the classical Kronecker (direct) product.

Product vertices are flattened as ``host * n + fiber``; use
:func:`flatten` / :func:`unflatten` to move between the two views.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .digraph import Digraph
from .errors import AssignmentError, ShapeError


class Family:
    """A named list of digraphs sharing one carrier vertex set ``{0..n-1}``."""

    __slots__ = ("_n", "_members")

    def __init__(self, carrier_order: int, members: Iterable[tuple[str, Digraph]]):
        self._n = carrier_order
        out: dict[str, Digraph] = {}
        for name, dg in members:
            if name in out:
                raise ValueError(f"duplicate member name {name!r}")
            if dg.order != carrier_order:
                raise ValueError(
                    f"member {name!r} has order {dg.order}, carrier is {carrier_order}"
                )
            out[name] = dg
        self._members = out

    @property
    def carrier_order(self) -> int:
        return self._n

    @property
    def names(self) -> list[str]:
        return list(self._members)

    def member(self, name: str) -> Digraph:
        try:
            return self._members[name]
        except KeyError:
            raise AssignmentError(f"unknown family member {name!r}") from None

    def items(self) -> Iterable[tuple[str, Digraph]]:
        return self._members.items()

    def __contains__(self, name: str) -> bool:
        return name in self._members

    def __len__(self) -> int:
        return len(self._members)

    def __repr__(self) -> str:
        return f"Family(n={self._n}, members={self.names})"


class HAssignment:
    """A total map from the arcs of a host digraph to family member names.

    The arc order is preserved: for a cycle host listed in traversal order
    it is exactly the factor order of the induced permutation product.
    """

    __slots__ = ("_host_order", "_arcs", "_mapping")

    def __init__(
        self,
        host_order: int,
        pairs: Iterable[tuple[tuple[int, int], str]],
    ):
        arcs: list[tuple[int, int]] = []
        mapping: dict[tuple[int, int], str] = {}
        for arc, name in pairs:
            arc = (arc[0], arc[1])
            if arc in mapping:
                raise AssignmentError(f"arc {arc} assigned twice")
            arcs.append(arc)
            mapping[arc] = name
        self._host_order = host_order
        self._arcs = tuple(arcs)
        self._mapping = mapping

    @classmethod
    def constant(cls, host: Digraph, name: str) -> "HAssignment":
        return cls(host.order, ((arc, name) for arc in host.arcs()))

    @property
    def host_order(self) -> int:
        return self._host_order

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return self._arcs

    def name_for(self, arc: tuple[int, int]) -> str:
        try:
            return self._mapping[arc]
        except KeyError:
            raise AssignmentError(f"no assignment for arc {arc}") from None

    def names_in_arc_order(self) -> list[str]:
        return [self._mapping[a] for a in self._arcs]

    def host_digraph(self) -> Digraph:
        return Digraph(self._host_order, self._arcs)

    def items(self) -> Iterable[tuple[tuple[int, int], str]]:
        return ((a, self._mapping[a]) for a in self._arcs)

    def __repr__(self) -> str:
        return f"HAssignment({len(self._arcs)} arcs on {self._host_order} vertices)"


def flatten(host: int, fiber: int, n: int) -> int:
    return host * n + fiber

def unflatten(vertex: int, n: int) -> tuple[int, int]:
    """Recover the (host, fiber) coordinates of a flattened product vertex."""
    return divmod(vertex, n)


def _check_assignment(d: Digraph, gamma: Family, h: HAssignment) -> None:
    if h.host_order != d.order:
        raise AssignmentError(
            f"assignment host order {h.host_order} != digraph order {d.order}"
        )
    host_arcs = set(d.arcs())
    assigned = set(h.arcs)
    missing = sorted(host_arcs - assigned)
    if missing:
        rendered = ", ".join(f"({u + 1}, {v + 1})" for u, v in missing)
        raise AssignmentError(f"unassigned host arcs: {rendered}")
    stray = sorted(assigned - host_arcs)
    if stray:
        rendered = ", ".join(f"({u + 1}, {v + 1})" for u, v in stray)
        raise AssignmentError(f"assignment names arcs absent from the host: {rendered}")
    for arc in h.arcs:
        gamma.member(h.name_for(arc))


def otimes_h(d: Digraph, gamma: Family, h: HAssignment) -> Digraph:
    """The arc-assigned product of ``d`` against ``gamma`` under ``h``.

    The host must be multiplicity-free and ``h`` total on its arcs. The
    result lives on ``d.order * n`` vertices, flattened host-major.
    """
    if not d.is_multiplicity_free:
        raise ShapeError("host digraph must be multiplicity-free")
    _check_assignment(d, gamma, h)
    n = gamma.carrier_order
    arcs = []
    for (a, b) in d.arcs():
        member = gamma.member(h.name_for((a, b)))
        for (x, y), mult in member.arc_items():
            arcs.append((flatten(a, x, n), flatten(b, y, n), mult))
    return Digraph(d.order * n, arcs, allow_loops=True)


def otimes(d: Digraph, f: Digraph) -> Digraph:
    """Constant-assignment special case: the classical direct product."""
    gamma = Family(f.order, [("F", f)])
    return otimes_h(d, gamma, HAssignment.constant(d, "F"))


def adjacency_matrix(d: Digraph) -> np.ndarray:
    """Adjacency counts as a dense integer matrix."""
    a = np.zeros((d.order, d.order), dtype=np.int64)
    for (u, v), m in d.arc_items():
        a[u, v] = m
    return a


def adjacency_product_check(d: Digraph, gamma: Family, h: HAssignment) -> bool:
    """Rebuild the product by block substitution into A(D) and compare.

    Every 0 entry of A(D) is replaced by an n-by-n null block and every 1
    entry by the adjacency matrix of the assigned member; equality with
    :func:`otimes_h` is a structural self-check, and with a constant
    assignment it degenerates to the literal Kronecker product.
    """
    if not d.is_multiplicity_free:
        raise ShapeError("host digraph must be multiplicity-free")
    _check_assignment(d, gamma, h)
    n = gamma.carrier_order
    big = np.zeros((d.order * n, d.order * n), dtype=np.int64)
    for (a, b) in d.arcs():
        block = adjacency_matrix(gamma.member(h.name_for((a, b))))
        big[a * n : (a + 1) * n, b * n : (b + 1) * n] = block
    return bool(np.array_equal(big, adjacency_matrix(otimes_h(d, gamma, h))))


def _cycle_vertex_order(oriented: Digraph) -> list[int]:
    """Vertices of a cycle orientation in traversal order, deterministically.

    Starts at vertex 0 and moves toward its smallest neighbor.
    """
    und = oriented.underlying()
    if und.order < 3 or und.size != und.order:
        raise ShapeError("underlying graph is not a cycle")
    if any(und.degree(v) != 2 for v in range(und.order)):
        raise ShapeError("underlying graph is not a cycle")
    if len(und.connected_components()) != 1:
        raise ShapeError("underlying graph is not a single cycle")
    if oriented.size != und.size:
        raise ShapeError("input must orient each cycle edge exactly once")
    order = [0, und.neighbors(0)[0]]
    while len(order) < und.order:
        prev, cur = order[-2], order[-1]
        a, b = und.neighbors(cur)
        order.append(b if a == prev else a)
    return order


def star_extension(
    oriented_cycle_host: Digraph, gamma: Family, h: HAssignment
) -> tuple[Family, HAssignment]:
    """Rewrite a product over an arbitrarily oriented cycle as one over the
    forward cycle.

    Arcs that already run forward keep their member; arcs running backward
    swap in the reverse of theirs. The returned assignment lives on the
    forward orientation of the same cycle (reachable via
    ``HAssignment.host_digraph``), and the underlying graphs of the two
    products coincide, so rainbow circuits of the rewritten instance
    enumerate the weakly connected components of the original product.
    """
    _check_assignment(oriented_cycle_host, gamma, h)
    order = _cycle_vertex_order(oriented_cycle_host)
    m = len(order)

    members = dict(gamma.items())
    pairs = []
    for i in range(m):
        u, v = order[i], order[(i + 1) % m]
        if oriented_cycle_host.has_arc(u, v):
            pairs.append(((u, v), h.name_for((u, v))))
            continue
        base = h.name_for((v, u))
        reversed_member = gamma.member(base).reverse()
        name = _ensure_member(members, base + "^-", reversed_member)
        pairs.append(((u, v), name))

    extended = Family(gamma.carrier_order, members.items())
    return extended, HAssignment(oriented_cycle_host.order, pairs)


def _ensure_member(members: dict[str, Digraph], name: str, dg: Digraph) -> str:
    # reuse a structurally equal member under the same name; never clobber
    while name in members and members[name] != dg:
        name += "-"
    members[name] = dg
    return name
