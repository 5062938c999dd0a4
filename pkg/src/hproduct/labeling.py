"""Edge-magic and super edge-magic total labelings.

A total labeling assigns the integers 1..p+q bijectively to the p vertices
and q edges of a graph; it is edge-magic when every edge's label plus its
endpoints' labels gives one constant (the magic sum), and super edge-magic
when the vertex labels are exactly 1..p.

The centerpiece is the product construction: a labeled host digraph
multiplied against a family of super edge-magic labeled digraphs of order
and size n yields a labeled graph whose magic sum is an affine function of
the host's. Vertex (i, j) gets n(i-1) + j and the arc over host edge e and
member arc (j, j') gets n(e-1) + k - n - (j + j'); the ``- n`` shift is
forced by bijectivity, because member edge labels live in {n+1..2n} and
the arc block over e must tile {n(e-1)+1 .. ne}.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .digraph import Digraph, Graph
from .errors import LabelingError
from .product import Family, HAssignment, flatten, otimes_h
from .unicyclic import UnicyclicForm, assemble_all, orient_components


class TotalLabeling:
    """Integer labels on every vertex and edge of a graph.

    The constructor only checks coverage (each vertex and each edge gets
    exactly one label); bijectivity onto 1..p+q is :func:`verify`'s job.
    """

    __slots__ = ("graph", "vertex_labels", "edge_labels")

    def __init__(
        self,
        graph: Graph,
        vertex_labels: Mapping[int, int],
        edge_labels: Mapping[tuple[int, int], int],
    ):
        normalized = {
            (min(u, v), max(u, v)): lab for (u, v), lab in edge_labels.items()
        }
        if set(vertex_labels) != set(range(graph.order)):
            raise LabelingError("vertex labels must cover every vertex exactly once")
        if set(normalized) != set(graph.edges()):
            raise LabelingError("edge labels must cover every edge exactly once")
        self.graph = graph
        self.vertex_labels = dict(sorted(vertex_labels.items()))
        self.edge_labels = dict(sorted(normalized.items()))

    @property
    def p(self) -> int:
        return self.graph.order

    @property
    def q(self) -> int:
        return self.graph.size

    def all_labels(self) -> list[int]:
        return list(self.vertex_labels.values()) + list(self.edge_labels.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, TotalLabeling):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.vertex_labels == other.vertex_labels
            and self.edge_labels == other.edge_labels
        )

    def __repr__(self) -> str:
        return f"TotalLabeling(p={self.p}, q={self.q})"


class MagicCertificate:
    """A verified edge-magic labeling with its magic sum."""

    __slots__ = ("labeling", "magic_sum", "is_super")

    def __init__(self, labeling: TotalLabeling, magic_sum: int, is_super: bool):
        self.labeling = labeling
        self.magic_sum = magic_sum
        self.is_super = is_super

    def __repr__(self) -> str:
        kind = "super edge-magic" if self.is_super else "edge-magic"
        return f"MagicCertificate(sum={self.magic_sum}, {kind})"


def verify(labeling: TotalLabeling) -> MagicCertificate | None:
    """Certify a labeling, or return None when the edge sums disagree.

    Raises :class:`LabelingError` when the labels are not a bijection onto
    1..p+q; a malformed labeling is an input error, not a failed check.
    """
    total = labeling.p + labeling.q
    labels = labeling.all_labels()
    if sorted(labels) != list(range(1, total + 1)):
        raise LabelingError(f"labels are not a bijection onto 1..{total}")
    sums = {
        labeling.vertex_labels[u] + labeling.vertex_labels[v] + lab
        for (u, v), lab in labeling.edge_labels.items()
    }
    if len(sums) != 1:
        return None
    is_super = set(labeling.vertex_labels.values()) == set(range(1, labeling.p + 1))
    return MagicCertificate(labeling, sums.pop(), is_super)


def _search_order(g: Graph) -> list[int]:
    """Vertex order that keeps each new vertex adjacent to labeled ones."""
    adj = g.adjacency()
    order: list[int] = []
    placed = [False] * g.order
    for _ in range(g.order):
        best, best_key = -1, (-1, 0)
        for v in range(g.order):
            if placed[v]:
                continue
            key = (sum(placed[w] for w in adj[v]), -v)
            if key > best_key:
                best, best_key = v, key
        order.append(best)
        placed[best] = True
    return order


def search_labelings(
    g: Graph,
    *,
    super_only: bool = False,
    limit: int | None = None,
    max_size: int = 20,
) -> list[MagicCertificate]:
    """Exhaustive backtracking search for (super) edge-magic labelings.

    Searches all labelings when ``limit`` is None, else stops after that
    many; results come back sorted by magic sum, then by vertex labels.
    The super search assigns vertex labels 1..p and prunes on the endpoint
    sums staying distinct inside one window of width q, which forces them
    consecutive on completion; the general search tries every candidate
    magic sum with edge labels derived and checked for clashes.
    """
    p, q = g.order, g.size
    if p + q > max_size:
        raise LabelingError(
            f"search guard: p+q = {p + q} exceeds {max_size}; "
            "raise max_size explicitly if you really want this"
        )
    if q == 0:
        return []
    order = _search_order(g)
    adj = g.adjacency()
    found: list[MagicCertificate] = []

    def full(assignment: dict[int, int], magic_sum: int) -> None:
        edge_labels = {
            (u, v): magic_sum - assignment[u] - assignment[v] for u, v in g.edges()
        }
        cert = verify(TotalLabeling(g, assignment, edge_labels))
        if cert is None or cert.magic_sum != magic_sum:
            raise AssertionError("search produced a labeling that does not verify")
        found.append(cert)

    if super_only:
        sums_seen: set[int] = set()
        used: set[int] = set()

        def backtrack_super(pos: int, assignment: dict[int, int]) -> bool:
            if limit is not None and len(found) >= limit:
                return True
            if pos == len(order):
                full(assignment, p + q + min(sums_seen))
                return limit is not None and len(found) >= limit
            v = order[pos]
            for label in range(1, p + 1):
                if label in used:
                    continue
                new_sums = [label + assignment[w] for w in adj[v] if w in assignment]
                if len(set(new_sums)) != len(new_sums):
                    continue
                if any(s in sums_seen for s in new_sums):
                    continue
                window = sums_seen.union(new_sums)
                if window and max(window) - min(window) > q - 1:
                    continue
                assignment[v] = label
                used.add(label)
                sums_seen.update(new_sums)
                if backtrack_super(pos + 1, assignment):
                    return True
                del assignment[v]
                used.discard(label)
                sums_seen.difference_update(new_sums)
            return False

        backtrack_super(0, {})
    else:
        for magic_sum in range(6, 3 * (p + q) - 2):

            def backtrack(pos: int, assignment: dict[int, int], used: set[int]) -> bool:
                if limit is not None and len(found) >= limit:
                    return True
                if pos == len(order):
                    full(assignment, magic_sum)
                    return limit is not None and len(found) >= limit
                v = order[pos]
                for label in range(1, p + q + 1):
                    if label in used:
                        continue
                    edge_labs = [
                        magic_sum - label - assignment[w]
                        for w in adj[v]
                        if w in assignment
                    ]
                    claimed = used | {label}
                    ok = True
                    for el in edge_labs:
                        if el < 1 or el > p + q or el in claimed:
                            ok = False
                            break
                        claimed.add(el)
                    if not ok or len(claimed) != len(used) + 1 + len(edge_labs):
                        continue
                    assignment[v] = label
                    if backtrack(pos + 1, assignment, claimed):
                        return True
                    del assignment[v]
                return False

            if backtrack(0, {}, set()):
                break

    found.sort(key=lambda c: (c.magic_sum, tuple(c.labeling.vertex_labels.values())))
    return found


_SEM_CYCLE_CACHE: dict[int, "SemDigraph"] = {}


class SemDigraph:
    """A super edge-magic labeled digraph of equal order and size, with each
    vertex renamed by its label (vertex i carries label i+1).

    Construction re-derives the implied labeling and verifies it, so a
    SemDigraph is super edge-magic by construction.
    """

    __slots__ = ("digraph", "magic_sum")

    def __init__(self, digraph: Digraph, magic_sum: int):
        if digraph.order != digraph.size:
            raise LabelingError(
                f"order {digraph.order} != size {digraph.size}; need an equal pair"
            )
        und = digraph.underlying()
        if und.size != digraph.size:
            raise LabelingError("arcs collapse in the underlying graph (2-cycles present)")
        vertex_labels = {v: v + 1 for v in range(digraph.order)}
        edge_labels = {
            (u, v): magic_sum - (u + 1) - (v + 1) for u, v in digraph.arcs()
        }
        cert = verify(TotalLabeling(und, vertex_labels, edge_labels))
        if cert is None or not cert.is_super or cert.magic_sum != magic_sum:
            raise LabelingError("digraph is not super edge-magic under its vertex names")
        self.digraph = digraph
        self.magic_sum = magic_sum

    @property
    def n(self) -> int:
        return self.digraph.order

    def reverse(self) -> "SemDigraph":
        return SemDigraph(self.digraph.reverse(), self.magic_sum)

    def certificate(self) -> MagicCertificate:
        und = self.digraph.underlying()
        vertex_labels = {v: v + 1 for v in range(self.n)}
        edge_labels = {
            (u, v): self.magic_sum - (u + 1) - (v + 1) for u, v in self.digraph.arcs()
        }
        cert = verify(TotalLabeling(und, vertex_labels, edge_labels))
        assert cert is not None
        return cert

    def __repr__(self) -> str:
        return f"SemDigraph(n={self.n}, sum={self.magic_sum})"


def _label_cycle_order(n: int) -> list[int] | None:
    """First cyclic order of the labels 1..n whose consecutive sums are the
    consecutive integers (n+3)/2 .. (3n+1)/2.

    That window is forced, not chosen: around a cycle every label is
    counted in two sums, so the n distinct sums total n(n+1), and n
    consecutive integers with that total start at (n+3)/2. Starting the
    walk at label 1 costs nothing (the cycle is vertex-transitive), and
    reflections are broken at closure; the generic labeling searcher can
    assume none of this, which is why this search is separate.
    """
    lo, hi = (n + 3) // 2, (3 * n + 1) // 2
    sums: set[int] = set()
    walk = [1]
    used = {1}

    def extend() -> bool:
        if len(walk) == n:
            if walk[1] > walk[-1]:
                return False  # reflection symmetry: keep the smaller neighbor of 1 first
            closing = walk[-1] + walk[0]
            return lo <= closing <= hi and closing not in sums
        for label in range(2, n + 1):
            if label in used:
                continue
            s = walk[-1] + label
            if s < lo or s > hi or s in sums:
                continue
            walk.append(label)
            used.add(label)
            sums.add(s)
            if extend():
                return True
            walk.pop()
            used.discard(label)
            sums.discard(s)
        return False

    return walk if extend() else None


def sem_odd_cycle(n: int) -> SemDigraph:
    """A super edge-magic labeled forward cycle of odd order n.

    Found by bounded search (results memoized for n <= 15); the magic sum
    of any super edge-magic labeling of an order=size graph is forced to
    (5n+3)/2, and even cycles admit none.
    """
    if n % 2 == 0 or n < 3:
        raise LabelingError(f"no super edge-magic labeling exists for a cycle of order {n}")
    if n > 15:
        raise LabelingError("search is bounded to cycle orders up to 15")
    if n not in _SEM_CYCLE_CACHE:
        order = _label_cycle_order(n)
        if order is None:
            raise LabelingError(f"search found no super edge-magic labeling of C_{n}")
        pair_sums = [a + b for a, b in zip(order, order[1:] + order[:1])]
        magic_sum = 2 * n + min(pair_sums)
        arcs = [(a - 1, b - 1) for a, b in zip(order, order[1:] + order[:1])]
        _SEM_CYCLE_CACHE[n] = SemDigraph(Digraph(n, arcs), magic_sum)
    return _SEM_CYCLE_CACHE[n]


def product_magic_sum(sigma_f: int, n: int, k: int) -> int:
    """Magic sum of a product labeling: n(sigma_f - 3) + k - n.

    The shift is pinned down by arithmetic: with host magic sum sigma_f
    and members of order/size n and sum k, the induced sum is
    n(i + i' + e - 3) + (k - (j + j')) - n + (j + j') over any product arc.
    """
    return n * (sigma_f - 3) + k - n


def _common_n_k(members: Mapping[str, SemDigraph]) -> tuple[int, int]:
    pairs = {(sd.n, sd.magic_sum) for sd in members.values()}
    if len(pairs) != 1:
        raise LabelingError(f"family members disagree on (order, magic sum): {sorted(pairs)}")
    return pairs.pop()


def product_labeling(
    host: Digraph,
    cert: MagicCertificate,
    members: Mapping[str, SemDigraph],
    h: HAssignment,
) -> TotalLabeling:
    """Label the underlying graph of the product of a certified host.

    The host's vertices and edges are renamed internally by the
    certificate's labels; callers never pre-rename. The result verifies
    with magic sum :func:`product_magic_sum` and is super whenever the
    host certificate is.
    """
    if not members:
        raise LabelingError("empty member family")
    n, k = _common_n_k(members)
    und = host.underlying()
    if und.size != host.size:
        raise LabelingError("host arcs collapse in the underlying graph (2-cycles present)")
    if cert.labeling.graph != und:
        raise LabelingError("certificate does not label the host's underlying graph")

    fam = Family(n, [(name, sd.digraph) for name, sd in members.items()])
    prod = otimes_h(host, fam, h)

    fv = cert.labeling.vertex_labels
    fe = cert.labeling.edge_labels
    vertex_labels = {
        flatten(a, x, n): n * (fv[a] - 1) + (x + 1)
        for a in range(host.order)
        for x in range(n)
    }
    edge_labels = {}
    for a, b in host.arcs():
        e = fe[(min(a, b), max(a, b))]
        member = members[h.name_for((a, b))]
        for x, y in member.digraph.arcs():
            key = (flatten(a, x, n), flatten(b, y, n))
            edge_labels[key] = n * (e - 1) + k - n - ((x + 1) + (y + 1))
    return TotalLabeling(prod.underlying(), vertex_labels, edge_labels)


def _doubled(cert: MagicCertificate, offset: int, target_sum: int) -> MagicCertificate:
    lab = cert.labeling
    vertex_labels = {v: 2 * f - offset for v, f in lab.vertex_labels.items()}
    edge_labels = {
        (u, v): target_sum - vertex_labels[u] - vertex_labels[v]
        for (u, v) in lab.edge_labels
    }
    out = verify(TotalLabeling(lab.graph, vertex_labels, edge_labels))
    if out is None or out.magic_sum != target_sum:
        raise AssertionError("doubled labeling failed to verify")
    return out


def odd_labeling(cert: MagicCertificate) -> MagicCertificate:
    """Vertices 2f(x)-1: edge-magic with sum 2 val - 2p - 2.

    Requires a super certificate on a graph with as many edges as vertices;
    the vertex labels of the result are exactly the odd numbers in 1..2p.
    """
    lab = cert.labeling
    if not cert.is_super or lab.p != lab.q:
        raise LabelingError("odd labeling needs a super certificate with p = q")
    return _doubled(cert, 1, 2 * cert.magic_sum - 2 * lab.p - 2)


def even_labeling(cert: MagicCertificate) -> MagicCertificate:
    """Vertices 2f(x): edge-magic with sum 2 val - 2p - 1."""
    lab = cert.labeling
    if not cert.is_super or lab.p != lab.q:
        raise LabelingError("even labeling needs a super certificate with p = q")
    return _doubled(cert, 0, 2 * cert.magic_sum - 2 * lab.p - 1)


def split_product_labeling(
    components: Sequence[UnicyclicForm],
    cert: MagicCertificate,
    keep: Iterable[int],
    n: int,
) -> TotalLabeling:
    """Label the graph that replicates the kept components and repeats the rest.

    Component i in ``keep`` (0-based) turns into n disjoint copies of
    itself; every other component has its tuple repeated n times. The
    certificate must label the disjoint union of the assembled components,
    and n must be odd; kept components with an odd cycle need cycle length
    at least n for the reversal count to fit.
    """
    keep_set = set(keep)
    bad = sorted(i for i in keep_set if not (0 <= i < len(components)))
    if bad:
        raise ValueError(f"keep indices out of range: {bad}")
    sem = sem_odd_cycle(n)
    members = {"C+": sem, "C-": sem.reverse()}

    g = assemble_all(list(components))
    if cert.labeling.graph != g:
        raise LabelingError(
            "certificate does not label the disjoint union of the assembled components"
        )
    digraph, comps = orient_components(g)
    pairs = []
    for idx, comp in enumerate(comps):
        m = len(comp.cycle_vertices)
        if idx in keep_set:
            r = m // 2 if m % 2 == 0 else (m + n) // 2
            if r > m:
                raise LabelingError(
                    f"component {idx + 1}: odd cycle length {m} is below n = {n}, "
                    "so it cannot be replicated"
                )
        else:
            r = (m - 1) // 2 if m % 2 else m // 2 - 1
        for t, arc in enumerate(comp.cycle_arcs):
            pairs.append((arc, "C-" if t < r else "C+"))
        for arc in comp.tree_arcs:
            pairs.append((arc, "C+"))
    h = HAssignment(digraph.order, pairs)
    return product_labeling(digraph, cert, members, h)


def _dedupe_by_sum(certs: Iterable[MagicCertificate]) -> list[MagicCertificate]:
    seen: dict[int, MagicCertificate] = {}
    for cert in certs:
        seen.setdefault(cert.magic_sum, cert)
    return [seen[s] for s in sorted(seen)]


def amplify_magic_sums(
    seed: SemDigraph,
    steps: int,
    n: int = 3,
    members: Mapping[str, SemDigraph] | None = None,
) -> list[MagicCertificate]:
    """Grow a stock of distinct magic sums by repeated products.

    Every certificate of the current digraph maps to one of the product
    (sums spread apart by at least n), and the product of the super
    certificate stays super, so its doubled odd/even labelings add sums as
    well; after ``steps`` products the final graph carries at least
    steps + 2 certificates with distinct sums. All intermediate labelings
    are re-verified; a failure here is a bug, not an input error.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if members is None:
        sem = sem_odd_cycle(n)
        members = {"C+": sem, "C-": sem.reverse()}
    _common_n_k(members)

    current = seed.digraph
    base = seed.certificate()
    certs = _dedupe_by_sum([base, odd_labeling(base), even_labeling(base)])

    for _ in range(steps):
        arcs = sorted(current.arcs())
        names = sorted(members)
        h = HAssignment(
            current.order,
            ((arc, names[i % len(names)]) for i, arc in enumerate(arcs)),
        )
        produced = []
        super_cert = None
        for cert in certs:
            new = verify(product_labeling(current, cert, members, h))
            if new is None:
                raise AssertionError("product labeling failed to verify")
            produced.append(new)
            if new.is_super:
                super_cert = new
        if super_cert is None:
            raise AssertionError("no super certificate survived the product step")
        produced.extend([odd_labeling(super_cert), even_labeling(super_cert)])
        certs = _dedupe_by_sum(produced)
        fam = Family(next(iter(members.values())).n, [(nm, sd.digraph) for nm, sd in members.items()])
        current = otimes_h(current, fam, h)

    if len(certs) < steps + 2:
        raise AssertionError(
            f"expected at least {steps + 2} distinct magic sums, found {len(certs)}"
        )
    return certs
