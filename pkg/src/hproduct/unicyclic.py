"""Unicyclic components as cyclic tuples of rooted trees.

A connected graph with exactly one cycle (edges = vertices) is described
by the tuple of rooted trees hanging at its cycle vertices, read around
the cycle. Products against families of 1-regular digraphs act on such
components in a predictable way: each component either replicates or has
its tuple repeated, and both predictions are implemented here alongside a
planner that drives a graph to a prescribed disjoint union through a
sequence of products.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .digraph import Digraph, Graph, disjoint_union, oriented_cycle
from .errors import InfeasiblePlanError, ShapeError, SizeMismatchError
from .permutations import Permutation, product_of
from .product import Family, HAssignment, otimes_h


class RootedTree:
    """A tree (as a 0-indexed Graph) together with a distinguished root.

    Equality and hashing go through the canonical encoding, so two trees
    compare equal exactly when they are isomorphic as rooted trees.
    """

    __slots__ = ("graph", "root", "_canon")

    def __init__(self, graph: Graph, root: int):
        if graph.order < 1:
            raise ShapeError("a tree has at least one vertex")
        if graph.size != graph.order - 1:
            raise ShapeError(
                f"not a tree: {graph.size} edges on {graph.order} vertices"
            )
        if len(graph.connected_components()) != 1:
            raise ShapeError("not a tree: graph is disconnected")
        if not (0 <= root < graph.order):
            raise ValueError(f"root {root} out of range")
        self.graph = graph
        self.root = root
        self._canon: str | None = None

    @classmethod
    def single(cls) -> "RootedTree":
        return cls(Graph(1), 0)

    @property
    def size(self) -> int:
        return self.graph.order

    def canon(self) -> str:
        """Canonical nested-parenthesis encoding (children sorted recursively)."""
        if self._canon is None:
            adj = self.graph.adjacency()

            def encode(v: int, parent: int) -> str:
                subs = sorted(encode(w, v) for w in adj[v] if w != parent)
                return "(" + "".join(subs) + ")"

            self._canon = encode(self.root, -1)
        return self._canon

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.canon() == other.canon()

    def __hash__(self) -> int:
        return hash(self.canon())

    def __repr__(self) -> str:
        return f"RootedTree({self.canon()})"


class UnicyclicForm:
    """A cyclic tuple of rooted trees.

    Tuples of length >= 3 assemble into a unicyclic simple graph; shorter
    tuples arise only as the base of a periodic form.
    """

    __slots__ = ("trees",)

    def __init__(self, trees: Iterable[RootedTree]):
        self.trees = tuple(trees)
        if not self.trees:
            raise ShapeError("a form needs at least one slot")

    @property
    def length(self) -> int:
        return len(self.trees)

    @property
    def order(self) -> int:
        return sum(t.size for t in self.trees)

    def slot_canons(self) -> tuple[str, ...]:
        return tuple(t.canon() for t in self.trees)

    def power(self, k: int) -> "UnicyclicForm":
        """The tuple repeated ``k`` times around a cycle ``k`` times as long."""
        if k < 1:
            raise ValueError(f"exponent must be positive, got {k}")
        return UnicyclicForm(self.trees * k)

    def canonical_key(self) -> tuple[str, ...]:
        """Minimal slot sequence over rotations and reflection.

        Two forms assemble into isomorphic graphs iff their keys agree.
        """
        slots = self.slot_canons()
        best = slots
        for candidate in (slots, slots[::-1]):
            for i in range(len(candidate)):
                rotated = candidate[i:] + candidate[:i]
                if rotated < best:
                    best = rotated
        return best

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnicyclicForm):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def __repr__(self) -> str:
        return f"UnicyclicForm({' '.join(self.slot_canons())})"


@dataclass(frozen=True)
class PeriodicForm:
    """A form written as a base tuple repeated ``multiplicity`` times."""

    base: UnicyclicForm
    multiplicity: int

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError(f"multiplicity must be positive, got {self.multiplicity}")

    def expand(self) -> UnicyclicForm:
        return self.base.power(self.multiplicity)

    def canonical_key(self) -> tuple[str, ...]:
        return self.expand().canonical_key()


def form_multiset(forms: Iterable) -> Counter:
    """Multiset of canonical keys; accepts UnicyclicForm and PeriodicForm."""
    return Counter(f.canonical_key() for f in forms)


def assemble(form: UnicyclicForm) -> Graph:
    """The unicyclic graph with the form's trees attached around its cycle.

    Vertices are numbered tree by tree in tuple order, so the roots sit at
    the running offsets; the result always has exactly as many edges as
    vertices.
    """
    if form.length < 3:
        raise ShapeError(
            f"cannot assemble a cycle of length {form.length}; simple cycles need length >= 3"
        )
    edges = []
    roots = []
    offset = 0
    for tree in form.trees:
        roots.append(offset + tree.root)
        edges.extend((offset + u, offset + v) for u, v in tree.graph.edges())
        offset += tree.size
    for i in range(form.length):
        edges.append((roots[i], roots[(i + 1) % form.length]))
    return Graph(offset, edges)


def assemble_all(forms: Sequence[UnicyclicForm]) -> Graph:
    return disjoint_union([assemble(f) for f in forms])


def _component_structure(g: Graph, comp: list[int], adj: list[list[int]]):
    """Cycle order and attached-tree structure of one unicyclic component.

    Returns (cycle_order, trees) with trees a list, per cycle vertex, of
    (global tree vertices, parent-to-child tree arcs) discovered by BFS
    away from the cycle.
    """
    comp_set = set(comp)
    edge_count = sum(1 for v in comp for w in adj[v] if w in comp_set) // 2
    if edge_count != len(comp):
        raise ShapeError(
            f"component containing vertex {comp[0] + 1} is not unicyclic "
            f"({edge_count} edges on {len(comp)} vertices)"
        )

    # peel leaves; what survives is exactly the cycle
    deg = {v: len(adj[v]) for v in comp}
    stack = [v for v in comp if deg[v] == 1]
    removed = set()
    while stack:
        v = stack.pop()
        removed.add(v)
        for w in adj[v]:
            if w not in removed:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    cycle_set = {v for v in comp if v not in removed}

    start = min(cycle_set)
    first = min(w for w in adj[start] if w in cycle_set)
    cycle_order = [start, first]
    while len(cycle_order) < len(cycle_set):
        prev, cur = cycle_order[-2], cycle_order[-1]
        a, b = (w for w in adj[cur] if w in cycle_set)
        cycle_order.append(b if a == prev else a)

    cycle_edges = {
        (min(a, b), max(a, b))
        for a, b in zip(cycle_order, cycle_order[1:] + cycle_order[:1])
    }

    trees = []
    for w in cycle_order:
        vertices = [w]
        arcs = []
        queue = [w]
        seen = {w}
        while queue:
            x = queue.pop(0)
            for y in adj[x]:
                if (min(x, y), max(x, y)) in cycle_edges or y in seen:
                    continue
                seen.add(y)
                vertices.append(y)
                arcs.append((x, y))
                queue.append(y)
        trees.append((vertices, arcs))
    return cycle_order, trees


def recognize(g: Graph) -> list[UnicyclicForm]:
    """Read each component back as a cyclic tuple of rooted trees.

    Inverse of :func:`assemble` up to rotation/reflection of the tuple and
    rooted-tree isomorphism. Components are reported in order of their
    smallest vertex.
    """
    adj = g.adjacency()
    forms = []
    for comp in g.connected_components():
        cycle_order, tree_data = _component_structure(g, comp, adj)
        slots = []
        for w, (vertices, arcs) in zip(cycle_order, tree_data):
            index = {v: i for i, v in enumerate(sorted(vertices))}
            tree_graph = Graph(len(vertices), [(index[a], index[b]) for a, b in arcs])
            slots.append(RootedTree(tree_graph, index[w]))
        forms.append(UnicyclicForm(slots))
    return forms


def detect_period(form: UnicyclicForm) -> PeriodicForm:
    """The maximal multiplicity k such that the tuple repeats k times."""
    slots = form.slot_canons()
    m = form.length
    for d in range(1, m + 1):
        if m % d:
            continue
        if all(slots[i] == slots[(i + d) % m] for i in range(m)):
            return PeriodicForm(UnicyclicForm(form.trees[:d]), m // d)
    raise AssertionError("unreachable: d = m always matches")


@dataclass(frozen=True)
class OrientedComponent:
    """Orientation bookkeeping for one unicyclic component (global ids)."""

    cycle_vertices: tuple[int, ...]
    cycle_arcs: tuple[tuple[int, int], ...]
    tree_arcs: tuple[tuple[int, int], ...]


def orient_components(g: Graph) -> tuple[Digraph, list[OrientedComponent]]:
    """A fixed orientation of a disjoint union of unicyclic graphs.

    Each cycle is strongly oriented along its traversal order and tree
    edges point away from the cycle. The choice of tree orientation never
    affects product structure, but fixing one keeps outputs deterministic.
    """
    adj = g.adjacency()
    arcs = []
    comps = []
    for comp in g.connected_components():
        cycle_order, tree_data = _component_structure(g, comp, adj)
        cyc_arcs = tuple(
            (a, b) for a, b in zip(cycle_order, cycle_order[1:] + cycle_order[:1])
        )
        t_arcs = tuple(arc for _, tarcs in tree_data for arc in tarcs)
        arcs.extend(cyc_arcs)
        arcs.extend(t_arcs)
        comps.append(OrientedComponent(tuple(cycle_order), cyc_arcs, t_arcs))
    return Digraph(g.order, arcs), comps


def predict_from_reversals(
    forms: Sequence[UnicyclicForm], n: int, reversed_counts: Sequence[int]
) -> list[PeriodicForm]:
    """Component structure of a product against the two n-cycle orientations.

    For a component with cycle length m whose cycle arcs receive r
    backward members, let k be the additive order of m - 2r in Z_n; the
    component contributes n/k copies of its tuple repeated k times.
    """
    if len(forms) != len(reversed_counts):
        raise SizeMismatchError("one reversed count per component is required")
    out = []
    for form, r in zip(forms, reversed_counts):
        if not (0 <= r <= form.length):
            raise ValueError(f"reversed count {r} outside 0..{form.length}")
        g = (form.length - 2 * r) % n
        copies = math.gcd(g, n)
        k = n // copies
        out.extend([PeriodicForm(form, k)] * copies)
    return out


def predict_from_factors(
    forms: Sequence[UnicyclicForm],
    factors_per_form: Sequence[Sequence[Permutation]],
) -> list[PeriodicForm]:
    """Component structure under an arbitrary 1-regular family.

    The factors are the fiber permutations read off each component's cycle
    arcs in traversal order; every cycle of their composition contributes
    one copy of the tuple repeated by that cycle's length.
    """
    if len(forms) != len(factors_per_form):
        raise SizeMismatchError("one factor sequence per component is required")
    out = []
    for form, factors in zip(forms, factors_per_form):
        if len(factors) != form.length:
            raise SizeMismatchError(
                f"component of length {form.length} got {len(factors)} factors"
            )
        composed = product_of(list(factors))
        for cycle in composed.cycles().cycles:
            out.append(PeriodicForm(form, len(cycle)))
    return out


def _advance_reversals(cycle_len: int) -> int:
    # m - 2r ends up 1 (odd m) or 2 (even m); both generate Z_n for odd n
    return (cycle_len - 1) // 2 if cycle_len % 2 else (cycle_len - 2) // 2


def _stay_reversals(cycle_len: int, n: int) -> int:
    # m - 2r ends up 0 or -n: the trivial subgroup, so the component replicates
    return cycle_len // 2 if cycle_len % 2 == 0 else (cycle_len + n) // 2


@dataclass(frozen=True)
class DecompositionPlan:
    """A schedule of products turning one unicyclic graph into a target union.

    ``r_values`` holds the reversed-arc counts for the single-component
    steps (the first s multiply the period by n, step s+1 replicates);
    afterwards ``stay_schedule[u-1]`` components of the original period are
    held back at phase-2 step u and everything else advances. ``j_values``
    records the solved coefficients behind that schedule.
    """

    l: int
    m: int
    n: int
    s: int
    a_seq: tuple[int, ...]
    r_values: tuple[int, ...]
    stay_schedule: tuple[int, ...]
    j_values: dict[tuple[int, int], int] = field(compare=False)

    @property
    def total_steps(self) -> int:
        return self.l + self.s + 1

    def reversal_counts(self, step: int, comps: Sequence[OrientedComponent]) -> list[int]:
        """Backward-member counts per component for the given 1-based step.

        Steps 1..s advance the single component (period times n), step s+1
        replicates it, and each later step holds back its scheduled number
        of components still at the original period while the rest advance.
        """
        if not (1 <= step <= self.total_steps):
            raise ValueError(f"step must be in 1..{self.total_steps}, got {step}")
        lengths = [len(c.cycle_vertices) for c in comps]
        if step <= self.s:
            return [_advance_reversals(m) for m in lengths]
        if step == self.s + 1:
            return [_stay_reversals(m, self.n) for m in lengths]
        u = step - self.s - 1
        stay = self.stay_schedule[u - 1]
        base_len = self.m * self.n**self.s
        base_positions = [i for i, m in enumerate(lengths) if m == base_len]
        if stay > len(base_positions):
            raise InfeasiblePlanError(
                f"step {step}: schedule holds {stay} components at the base period "
                f"but only {len(base_positions)} exist"
            )
        held = set(base_positions[:stay])
        return [
            _stay_reversals(m, self.n) if i in held else _advance_reversals(m)
            for i, m in enumerate(lengths)
        ]

    def expected_summands(self, form: UnicyclicForm) -> Counter:
        """Multiset of canonical keys of the target disjoint union."""
        if form.length != self.m:
            raise ShapeError(
                f"plan was made for cycle length {self.m}, form has {form.length}"
            )
        out: Counter = Counter()
        for i, count in enumerate(self.a_seq):
            if count:
                key = PeriodicForm(form, self.n ** (self.s + i)).canonical_key()
                out[key] += count
        return out


def plan_decomposition(
    l: int,
    m: int,
    n: int,
    s: int,
    a_seq: Sequence[int],
    *,
    divisibility: str = "full",
) -> DecompositionPlan:
    """Validate a coefficient sequence and derive the product schedule.

    The target is ``sum_i a_i * form^(n^(s+i))``. Feasibility amounts to
    the partial sums S_k = (a_{k-1} + S_{k-1}) / n being nonnegative
    integers with a_l + S_l = n; ``divisibility="inner"`` skips the
    integrality check on the final S_l (the two readings coincide whenever
    the closing balance condition holds).
    """
    if n < 3 or n % 2 == 0:
        raise InfeasiblePlanError(f"n must be an odd integer >= 3, got {n}")
    if m < 1:
        raise InfeasiblePlanError(f"m must be >= 1, got {m}")
    if m % 2 and m < n:
        raise InfeasiblePlanError(f"odd m requires m >= n, got m={m} < n={n}")
    if l < 0 or s < 0:
        raise InfeasiblePlanError("l and s must be nonnegative")
    if divisibility not in ("full", "inner"):
        raise ValueError(f"divisibility must be 'full' or 'inner', got {divisibility!r}")
    a = tuple(a_seq)
    if len(a) != l + 1:
        raise InfeasiblePlanError(f"expected {l + 1} coefficients, got {len(a)}")
    if any(x < 0 for x in a):
        raise InfeasiblePlanError("coefficients must be nonnegative")

    if l == 0:
        if a[0] != n:
            raise InfeasiblePlanError(f"with l = 0 the single coefficient must be n, got {a[0]}")
        partial = []
    else:
        partial = []
        running = 0
        for k in range(1, l + 1):
            numerator = a[k - 1] + running
            if numerator % n:
                if divisibility == "full" or k < l:
                    raise InfeasiblePlanError(
                        f"partial sum S_{k} = (a_{k - 1} + S_{k - 1})/n is not an "
                        f"integer ({numerator}/{n})"
                    )
            running = numerator // n
            partial.append(running)
        if a[l] + partial[-1] != n:
            raise InfeasiblePlanError(
                f"balance condition fails: a_l + S_l = {a[l] + partial[-1]} != n = {n}"
            )

    r_values = [_advance_reversals(m * n**i) for i in range(s)]
    r_values.append(_stay_reversals(m * n**s, n))

    # only components still at the original period are ever held back
    stay_schedule = tuple(partial[l - u] for u in range(1, l + 1))
    j_values = {
        (k, t): (partial[l - t] if k == 1 else 0)
        for t in range(1, l + 1)
        for k in range(1, t + 1)
    }
    return DecompositionPlan(
        l=l,
        m=m,
        n=n,
        s=s,
        a_seq=a,
        r_values=tuple(r_values),
        stay_schedule=stay_schedule,
        j_values=j_values,
    )


def reversal_assignment(
    digraph: Digraph,
    comps: Sequence[OrientedComponent],
    counts: Sequence[int],
    forward: str = "C+",
    backward: str = "C-",
) -> HAssignment:
    """Assign the backward member to the first ``counts[i]`` cycle arcs of
    each component and the forward member everywhere else."""
    pairs = []
    for idx, (comp, r) in enumerate(zip(comps, counts)):
        if not (0 <= r <= len(comp.cycle_arcs)):
            raise InfeasiblePlanError(
                f"component {idx + 1}: cannot reverse {r} of {len(comp.cycle_arcs)} cycle arcs"
            )
        for t, arc in enumerate(comp.cycle_arcs):
            pairs.append((arc, backward if t < r else forward))
        for arc in comp.tree_arcs:
            pairs.append((arc, forward))
    return HAssignment(digraph.order, pairs)


def execute_plan(
    plan: DecompositionPlan, form: UnicyclicForm, *, keep_intermediates: bool = False
) -> Graph | list[Graph]:
    """Run the plan's products on the assembled form.

    Returns the final graph, or every intermediate (including the final)
    when ``keep_intermediates`` is set. The result's recognized structure
    matches ``plan.expected_summands(form)``.
    """
    if form.length != plan.m:
        raise ShapeError(
            f"plan was made for cycle length {plan.m}, form has {form.length}"
        )
    n = plan.n
    fam = Family(
        n, [("C+", oriented_cycle(n, "forward")), ("C-", oriented_cycle(n, "backward"))]
    )
    g = assemble(form)
    stages = []
    for step in range(1, plan.total_steps + 1):
        digraph, comps = orient_components(g)
        counts = plan.reversal_counts(step, comps)
        h = reversal_assignment(digraph, comps, counts)
        g = otimes_h(digraph, fam, h).underlying()
        stages.append(g)
    return stages if keep_intermediates else g
