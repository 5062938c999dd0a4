"""Permutations of ``{0..n-1}`` and their identification with 1-regular digraphs.

The composition convention is the single most bug-prone choice in this
package, so it is pinned here once: ``compose(outer, inner)`` applies
``inner`` first, and ``product_of(factors)`` applies the FIRST list element
first. A regression test guards the convention against the worked
six-element example whose published decompositions are (1 4 2 6)(3 5) and
(1)(2 3 4 5 6).
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .digraph import Digraph
from .errors import RegularityError, SizeMismatchError


class Permutation:
    """A bijection of ``{0..n-1}``, stored as the image tuple."""

    __slots__ = ("_map",)

    def __init__(self, mapping: Sequence[int]):
        image = tuple(mapping)
        n = len(image)
        if sorted(image) != list(range(n)):
            raise ValueError("mapping is not a bijection of 0..n-1")
        self._map = image

    @property
    def n(self) -> int:
        return len(self._map)

    def __call__(self, i: int) -> int:
        return self._map[i]

    @property
    def mapping(self) -> tuple[int, ...]:
        return self._map

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        """Build from 0-based cycles; elements not mentioned are fixed."""
        image = list(range(n))
        seen: set[int] = set()
        for cycle in cycles:
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                if a in seen:
                    raise ValueError(f"element {a} appears in two cycles")
                seen.add(a)
                image[a] = b
        return cls(image)

    @classmethod
    def from_cycle_string(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse 1-based cycle notation such as ``(1 4 2 6)(3 5)``.

        Fixed points may be omitted; ``n`` gives the domain size when the
        largest element alone does not determine it.
        """
        cycles = parse_cycle_string(text)
        highest = max((max(c) for c in cycles), default=0)
        if n is None:
            n = highest
        elif highest > n:
            raise ValueError(f"cycle element {highest} exceeds domain size {n}")
        zero_based = [[x - 1 for x in c] for c in cycles]
        return cls.from_cycles(zero_based, n)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self._map):
            inv[j] = i
        return Permutation(inv)

    def power(self, e: int) -> "Permutation":
        """``e``-fold composition; 0 gives the identity, negatives invert."""
        base = self if e >= 0 else self.inverse()
        result = Permutation.identity(self.n)
        for _ in range(abs(e)):
            result = compose(base, result)
        return result

    def cycles(self) -> "CycleDecomposition":
        return CycleDecomposition.of(self)

    def to_cycle_string(self) -> str:
        """Canonical 1-based cycle notation; fixed points are printed."""
        return str(self.cycles())

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Juxtaposition product: ``(p * q)(x) = p(q(x))``."""
        return compose(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._map == other._map

    def __hash__(self) -> int:
        return hash(self._map)

    def __repr__(self) -> str:
        return f"Permutation({self.to_cycle_string()})"


class CycleDecomposition:
    """Disjoint cycles of a permutation in canonical form.

    Each cycle is rotated so its minimum element comes first, and cycles
    are sorted by those minima; fixed points appear as length-1 cycles.
    Equality is therefore structural.
    """

    __slots__ = ("_cycles",)

    def __init__(self, cycles: Iterable[Sequence[int]]):
        canon = []
        for cycle in cycles:
            cycle = list(cycle)
            k = cycle.index(min(cycle))
            canon.append(tuple(cycle[k:] + cycle[:k]))
        canon.sort(key=lambda c: c[0])
        self._cycles = tuple(canon)

    @classmethod
    def of(cls, p: Permutation) -> "CycleDecomposition":
        seen = [False] * p.n
        cycles = []
        for start in range(p.n):
            if seen[start]:
                continue
            cycle = []
            v = start
            while not seen[v]:
                seen[v] = True
                cycle.append(v)
                v = p(v)
            cycles.append(cycle)
        return cls(cycles)

    @property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        return self._cycles

    def one_based(self) -> list[list[int]]:
        return [[x + 1 for x in c] for c in self._cycles]

    def lengths(self) -> list[int]:
        """Multiset of cycle lengths, sorted."""
        return sorted(len(c) for c in self._cycles)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycleDecomposition):
            return NotImplemented
        return self._cycles == other._cycles

    def __hash__(self) -> int:
        return hash(self._cycles)

    def __str__(self) -> str:
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in self._cycles)

    def __repr__(self) -> str:
        return f"CycleDecomposition({self})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycle_string(text: str) -> list[list[int]]:
    """Split ``(1 4 2 6)(3 5)`` into 1-based cycles; commas also accepted."""
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty cycle string")
    body = _CYCLE_RE.sub("", stripped)
    if body.strip():
        raise ValueError(f"unbalanced or stray text in cycle string: {text!r}")
    cycles = []
    for match in _CYCLE_RE.finditer(stripped):
        inner = match.group(1).replace(",", " ").split()
        if not inner:
            continue
        cycle = [int(tok) for tok in inner]
        if min(cycle) < 1:
            raise ValueError("cycle notation is 1-based; got a value below 1")
        if len(set(cycle)) != len(cycle):
            raise ValueError(f"repeated element inside cycle {match.group(0)}")
        cycles.append(cycle)
    return cycles


def compose(outer: Permutation, inner: Permutation) -> Permutation:
    """``result(x) = outer(inner(x))``: the rightmost factor acts first."""
    if outer.n != inner.n:
        raise SizeMismatchError(f"domain sizes differ: {outer.n} vs {inner.n}")
    return Permutation(tuple(outer(inner(i)) for i in range(inner.n)))


def product_of(factors: Sequence[Permutation]) -> Permutation:
    """Compose a chain of permutations with the FIRST factor applied first.

    For factors read off the arcs of a forward cycle host in arc order,
    this is the composition that the strongly connected components of the
    product obey.
    """
    if not factors:
        raise ValueError("product of an empty factor list")
    result = factors[0]
    for f in factors[1:]:
        result = compose(f, result)
    return result


def from_one_regular(d: Digraph) -> Permutation:
    """The permutation with p(i) = j iff (i, j) is an arc; inverse of
    :func:`to_one_regular`."""
    if not d.is_one_regular():
        raise RegularityError("digraph is not 1-regular")
    return Permutation(d.successors())


def to_one_regular(p: Permutation) -> Digraph:
    """The 1-regular digraph with arcs (i, p(i)); fixed points become loops."""
    return Digraph(p.n, ((i, p(i)) for i in range(p.n)), allow_loops=True)


def predict_components(m: int, p: Permutation) -> list[int]:
    """Cycle lengths of the product of a forward m-cycle host against a
    1-regular family whose around-the-cycle composition is ``p``.

    Each cycle of ``p`` of length L yields one strongly connected component
    of length m*L; the returned multiset is sorted.
    """
    if m < 2:
        raise ValueError(f"cycle order must be at least 2, got {m}")
    return sorted(m * length for length in p.cycles().lengths())
