"""Presented abelian groups, maps, and Frobenius modules."""

import pytest
from hypothesis import given, settings, strategies as st

from snckit.errors import WellDefinednessError
from snckit.groups import (
    FgAbelianGroup,
    GaloisModule,
    ModuleMap,
    coinvariants,
    cokernel,
    image_subgroup,
    is_prime,
    torsion_and_primary,
)
from snckit.matrices import IntMatrix


def group_of(*relations, generators=None):
    gens = generators if generators is not None else (len(relations[0]) if relations else 0)
    return FgAbelianGroup(gens, IntMatrix.from_columns([list(r) for r in relations], rows=gens))


class TestFgAbelianGroup:
    def test_trivial_and_free(self):
        assert FgAbelianGroup.trivial().is_trivial()
        g = FgAbelianGroup.free(3)
        assert g.free_rank == 3 and g.invariant_factors == ()
        assert g.describe() == "Z^3"

    def test_cyclic(self):
        g = FgAbelianGroup.cyclic(6)
        assert g.invariant_factors == (6,)
        assert g.order() == 6
        assert g.describe() == "Z/6"

    def test_unit_relations_collapse(self):
        g = group_of([1, 0], [0, 2], generators=2)
        assert g.iso_type().torsion == (2,)
        assert g.free_rank == 0

    def test_divisibility_order(self):
        g = group_of([4, 0], [0, 6], generators=2)
        assert g.invariant_factors == (2, 12)

    def test_describe_mixed(self):
        g = FgAbelianGroup.from_invariants([2, 4], 1)
        assert g.describe() == "Z ⊕ Z/2 ⊕ Z/4"
        assert g.order() is None

    def test_in_relation_lattice(self):
        g = FgAbelianGroup.cyclic(5)
        assert g.in_relation_lattice([10])
        assert not g.in_relation_lattice([3])

    def test_element_order(self):
        g = FgAbelianGroup.from_invariants([2, 4], 0)
        assert g.element_order([0, 0]) == 1
        assert g.element_order([1, 0]) == 2
        assert g.element_order([0, 1]) == 4
        assert g.element_order([1, 2]) == 2
        free = FgAbelianGroup.free(1)
        assert free.element_order([1]) is None

    def test_elements_enumeration(self):
        g = FgAbelianGroup.from_invariants([2, 3], 0)
        elems = list(g.elements())
        assert len(elems) == 6
        orders = sorted(g.element_order(e) for e in elems)
        assert orders == [1, 2, 2, 3, 3, 6] or sorted(set(orders)) == [1, 2, 3, 6]

    def test_smith_form_maps_are_inverse_isomorphisms(self):
        g = group_of([4, 2], [0, 6], generators=2)
        sm = g.smith()
        both = sm.from_smith.compose(sm.to_smith)
        assert both.equals_mod_relations(ModuleMap.identity(g))
        back = sm.to_smith.compose(sm.from_smith)
        assert back.equals_mod_relations(ModuleMap.identity(sm.group))


class TestModuleMap:
    def test_well_definedness_enforced(self):
        z4 = FgAbelianGroup.cyclic(4)
        z2 = FgAbelianGroup.cyclic(2)
        ModuleMap(z4, z2, IntMatrix.from_rows([[1]]))  # fine: 4 | 1*4 mod 2
        with pytest.raises(WellDefinednessError):
            ModuleMap(z2, z4, IntMatrix.from_rows([[1]]))  # 2 does not die in Z/4

    def test_compose(self):
        z8 = FgAbelianGroup.cyclic(8)
        z4 = FgAbelianGroup.cyclic(4)
        z2 = FgAbelianGroup.cyclic(2)
        f = ModuleMap(z8, z4, IntMatrix.from_rows([[1]]))
        g = ModuleMap(z4, z2, IntMatrix.from_rows([[1]]))
        assert g.compose(f).matrix.to_rows() == [[1]]

    def test_cokernel(self):
        z = FgAbelianGroup.free(1)
        times3 = ModuleMap(z, z, IntMatrix.from_rows([[3]]))
        coker, proj = cokernel(times3)
        assert coker.invariant_factors == (3,)
        assert proj.matrix.is_identity()

    def test_image_subgroup(self):
        z = FgAbelianGroup.free(1)
        z12 = FgAbelianGroup.cyclic(12)
        f = ModuleMap(z, z12, IntMatrix.from_rows([[4]]))
        image, incl = image_subgroup(f)
        assert image.iso_type().torsion == (3,)
        assert incl.matrix.to_rows() == [[4]]

    def test_injective_surjective(self):
        z = FgAbelianGroup.free(1)
        z6 = FgAbelianGroup.cyclic(6)
        onto = ModuleMap(z, z6, IntMatrix.from_rows([[1]]))
        assert onto.is_surjective() and not onto.is_injective()
        doubling = ModuleMap(z, z, IntMatrix.from_rows([[2]]))
        assert doubling.is_injective() and not doubling.is_surjective()

    def test_injectivity_catches_torsion_kernel(self):
        z4 = FgAbelianGroup.cyclic(4)
        z2 = FgAbelianGroup.cyclic(2)
        f = ModuleMap(z4, z2, IntMatrix.from_rows([[1]]))
        assert not f.is_injective()


class TestTorsionAndPrimary:
    def test_primary_extraction(self):
        g = FgAbelianGroup.from_invariants([6, 12], 2)
        torsion, two_part = torsion_and_primary(g, 2)
        assert torsion.invariant_factors == (6, 12)
        assert two_part.invariant_factors == (2, 4)
        _, three_part = torsion_and_primary(g, 3)
        assert three_part.invariant_factors == (3, 3)
        _, five_part = torsion_and_primary(g, 5)
        assert five_part.is_trivial()

    def test_requires_prime(self):
        with pytest.raises(ValueError):
            torsion_and_primary(FgAbelianGroup.cyclic(4), 4)


class TestGaloisModule:
    def test_order_validation(self):
        z5 = FgAbelianGroup.cyclic(5)
        GaloisModule(z5, IntMatrix.from_rows([[2]]), 4)  # 2^4 = 16 = 1 mod 5
        with pytest.raises(WellDefinednessError):
            GaloisModule(z5, IntMatrix.from_rows([[2]]), 3)

    def test_power(self):
        z5 = FgAbelianGroup.cyclic(5)
        m = GaloisModule(z5, IntMatrix.from_rows([[2]]), 4)
        assert m.power(2).frobenius.to_rows() == [[4]]
        assert m.power(2).order == 2
        assert m.power(4).acts_trivially()

    def test_torsion_submodule(self):
        g = FgAbelianGroup.from_invariants([3], 1)
        frob = IntMatrix.from_rows([[2, 0], [0, 1]])  # -1 on Z/3, identity on Z
        m = GaloisModule(g, frob, 2)
        tors, incl = m.torsion_submodule()
        assert tors.group.invariant_factors == (3,)
        assert not tors.acts_trivially()
        assert tors.power(2).acts_trivially()
        # inclusion really lands on the torsion generator
        image = incl.matrix.col(0)
        assert g.element_order(image) == 3

    def test_localized(self):
        g = FgAbelianGroup.from_invariants([12], 1)
        m = GaloisModule(g, IntMatrix.identity(2), 1)
        at2, _ = m.localized(2)
        assert at2.group.iso_type().torsion == (4,)
        assert at2.group.free_rank == 1
        at3, _ = m.localized(3)
        assert at3.group.iso_type().torsion == (3,)
        at5, _ = m.localized(5)
        assert at5.group.iso_type().torsion == ()

    def test_coinvariants(self):
        z = FgAbelianGroup.free(1)
        m = GaloisModule(z, IntMatrix.from_rows([[-1]]), 2)
        coinv, _ = coinvariants(m)
        assert coinv.invariant_factors == (2,)
        trivial = GaloisModule(z, IntMatrix.identity(1), 1)
        coinv2, _ = coinvariants(trivial)
        assert coinv2.free_rank == 1


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4),
       st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4),
                min_size=0, max_size=4))
@settings(max_examples=60, deadline=None)
def test_quotient_order_equals_det_magnitude(diag_extra, rel_vectors):
    """|Z^n / L| equals |det| of a full-rank relation matrix."""
    rels = [list(r) for r in rel_vectors]
    n = 4
    square = IntMatrix.from_columns(rels, rows=n) if rels else IntMatrix.zeros(n, 0)
    g = FgAbelianGroup(n, square)
    if square.cols == n and square.det() != 0:
        assert g.order() == abs(square.det())


def test_is_prime():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
