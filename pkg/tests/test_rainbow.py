import random

import pytest

from hproduct import (
    Family,
    HAssignment,
    RegularityError,
    ShapeError,
    cycle_length_multiset,
    find_rainbow_circuits,
    from_one_regular,
    is_eulerian,
    is_rainbow_eulerian,
    otimes_h,
    oriented_cycle,
    product_of,
    strong_components,
    union_multidigraph,
)
from hproduct.rainbow import circuits_partition_arcs

from .conftest import cycle_assignment, random_one_regular


class TestUnionMultidigraph:
    def test_twelve_cycle_instance_is_eulerian(self, twelve_family, twelve_h):
        colored = union_multidigraph(3, twelve_family, twelve_h)
        base = colored.base()
        assert is_eulerian(base)
        assert base.in_degrees() == [3] * 4
        assert base.out_degrees() == [3] * 4

    def test_constant_assignment_stacks_every_color(self, ex_family):
        h = cycle_assignment(["F1"] * 5)
        colored = union_multidigraph(5, ex_family, h)
        member = ex_family.member("F1")
        for u, v in member.arcs():
            assert colored.colors_of(u, v) == (0, 1, 2, 3, 4)
            assert colored.base().multiplicity(u, v) == 5

    def test_multiplicity_counts_shared_arcs(self, ex_family):
        # F1 and F3 share no arcs; F1 twice does
        h = cycle_assignment(["F1", "F1", "F3"])
        colored = union_multidigraph(3, ex_family, h)
        assert colored.base().multiplicity(0, 1) == 2  # arc 1->2 of F1

    def test_rejects_non_cycle_host(self, ex_family):
        h = HAssignment(4, [(((0, 1)), "F1"), (((1, 0)), "F2")])
        with pytest.raises(ShapeError):
            union_multidigraph(4, ex_family, h)

    def test_rejects_split_cycles(self, ex_family):
        h = HAssignment(
            4,
            [(((0, 1)), "F1"), (((1, 0)), "F1"), (((2, 3)), "F2"), (((3, 2)), "F2")],
        )
        with pytest.raises(ShapeError, match="several"):
            union_multidigraph(4, ex_family, h)

    def test_arc_listing_order_is_irrelevant(self, ex_family, ex_h):
        # the same assignment with shuffled lines colors identically
        shuffled = HAssignment(4, list(reversed(list(ex_h.items()))))
        a = union_multidigraph(4, ex_family, ex_h)
        b = union_multidigraph(4, ex_family, shuffled)
        assert list(a.arc_copies()) == list(b.arc_copies())

    def test_nonstandard_cycle_layout(self, ex_family):
        # host visits 0 -> 2 -> 1 -> 3 -> 0; colors follow the traversal
        h = HAssignment(
            4,
            [(((0, 2)), "F1"), (((2, 1)), "F2"), (((1, 3)), "F1r"), (((3, 0)), "F3")],
        )
        colored = union_multidigraph(4, ex_family, h)
        member = ex_family.member("F2")
        for x, y in member.arcs():
            assert 1 in colored.colors_of(x, y)


class TestRainbowCircuits:
    def test_single_circuit_of_length_twelve(self, twelve_family, twelve_h):
        colored = union_multidigraph(3, twelve_family, twelve_h)
        circuits = find_rainbow_circuits(colored)
        assert [len(c) for c in circuits] == [12]
        assert is_rainbow_eulerian(colored)
        assert circuits_partition_arcs(colored, circuits)

    def test_worked_example_two_circuits(self, ex_family, ex_h):
        colored = union_multidigraph(4, ex_family, ex_h)
        circuits = find_rainbow_circuits(colored)
        assert sorted(len(c) for c in circuits) == [8, 16]
        assert not is_rainbow_eulerian(colored)
        assert circuits_partition_arcs(colored, circuits)
        # start vertices are the cycle minima of the around-the-cycle composition
        assert sorted(c[0] for c in circuits) == [0, 2]

    def test_identity_family_gives_n_loops_per_color(self):
        from hproduct import Permutation, to_one_regular

        n, m = 4, 3
        ident = to_one_regular(Permutation.identity(n))
        fam = Family(n, [("I", ident)])
        colored = union_multidigraph(m, fam, cycle_assignment(["I"] * m))
        circuits = find_rainbow_circuits(colored)
        assert [len(c) for c in circuits] == [m] * n

    def test_rejects_non_one_regular(self):
        from hproduct import Digraph

        fam = Family(3, [("bad", Digraph(3, [(0, 1), (0, 2), (1, 0)]))])
        colored = union_multidigraph(
            2, Family(3, list(fam.items())), cycle_assignment(["bad", "bad"])
        )
        with pytest.raises(RegularityError):
            find_rainbow_circuits(colored)

    def test_coprime_generator_is_rainbow_eulerian(self):
        # m=4, r=0 against the two 3-cycle orientations: 4 mod 3 generates Z_3
        fam = Family(
            3,
            [("C+", oriented_cycle(3)), ("C-", oriented_cycle(3, "backward"))],
        )
        colored = union_multidigraph(4, fam, cycle_assignment(["C+"] * 4))
        assert is_rainbow_eulerian(colored)
        prod = otimes_h(oriented_cycle(4), fam, cycle_assignment(["C+"] * 4))
        assert cycle_length_multiset(prod) == [12]

    def test_rotated_sequence_same_partition(self, ex_family, ex_h):
        colored = union_multidigraph(4, ex_family, ex_h)
        base_lengths = sorted(len(c) for c in find_rainbow_circuits(colored))
        for shift in range(1, 4):
            seq = tuple((c + shift) % 4 for c in range(4))
            circuits = find_rainbow_circuits(colored, seq)
            assert sorted(len(c) for c in circuits) == base_lengths
            assert circuits_partition_arcs(colored, circuits, seq)


class TestAgreementProperties:
    def test_random_instances(self, ex_family):
        rng = random.Random(99)
        for _ in range(200):
            m = rng.randint(2, 6)
            n = rng.randint(2, 8)
            members = [
                (f"F{i}", random_one_regular(rng, n)) for i in range(rng.randint(1, 3))
            ]
            fam = Family(n, members)
            names = [name for name, _ in members]
            h = cycle_assignment([rng.choice(names) for _ in range(m)])

            colored = union_multidigraph(m, fam, h)
            circuits = find_rainbow_circuits(colored)
            perm = product_of([from_one_regular(fam.member(x)) for x in h.names_in_arc_order()])
            prod = otimes_h(oriented_cycle(m), fam, h)

            assert sorted(len(c) // m for c in circuits) == perm.cycles().lengths()
            assert circuits_partition_arcs(colored, circuits)
            assert sorted(len(c) for c in circuits) == cycle_length_multiset(prod)
            assert is_rainbow_eulerian(colored) == (len(strong_components(prod)) == 1)
