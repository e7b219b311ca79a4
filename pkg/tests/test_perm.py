import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orelat.errors import (
    CapExceeded,
    DegreeMismatch,
    ElementOutsideGroup,
    NotASubgroup,
    ParseError,
)
from orelat.perm import (
    Permutation,
    element_orders,
    generate,
    index,
    intersect,
    is_normal,
    join,
    normal_core,
    conjugate,
    product_set_size,
    right_cosets,
    subgroup_generated,
    trivial_group,
)
from orelat import catalog as cat


def s3():
    return cat.symmetric(3)


def a3_in(group):
    return subgroup_generated(group, [Permutation([1, 2, 0])])


class TestPermutation:
    def test_identity_and_composition(self):
        e = Permutation.identity(4)
        p = Permutation.from_cycles("(1 2 3)", 4)
        assert p * e == p
        assert p * p.inverse() == e
        assert p.order() == 3

    def test_composition_applies_right_factor_first(self):
        p = Permutation.from_cycles("(1 2)", 3)
        q = Permutation.from_cycles("(2 3)", 3)
        assert (p * q)(1) == 2  # q: 1->2 (0-based), p fixes 2

    def test_cycle_parsing(self):
        assert Permutation.from_cycles("(1 2)(3 4)", 4).images == (1, 0, 3, 2)
        assert Permutation.from_cycles("()", 5) == Permutation.identity(5)
        assert Permutation.from_cycles("(1,2,3)", 3).images == (1, 2, 0)

    @pytest.mark.parametrize("bad", ["(1 2", "(0 1)", "(1 2)(2 3)", "(1 1)", "(1 9)"])
    def test_cycle_parse_errors(self, bad):
        with pytest.raises(ParseError):
            Permutation.from_cycles(bad, 4)

    def test_cycle_roundtrip(self):
        p = Permutation.from_cycles("(1 2 3)(4 5)", 6)
        assert Permutation.from_cycles(p.to_cycles(), 6) == p

    def test_not_a_bijection(self):
        with pytest.raises(ParseError):
            Permutation([0, 0, 1])

    @given(st.permutations(list(range(5))), st.permutations(list(range(5))),
           st.permutations(list(range(5))))
    @settings(max_examples=50, deadline=None)
    def test_associativity(self, a, b, c):
        pa, pb, pc = Permutation(a), Permutation(b), Permutation(c)
        assert (pa * pb) * pc == pa * (pb * pc)

    @given(st.permutations(list(range(6))))
    @settings(max_examples=50, deadline=None)
    def test_inverse_cancels(self, imgs):
        p = Permutation(imgs)
        assert p * p.inverse() == Permutation.identity(6)
        assert p.inverse() * p == Permutation.identity(6)


class TestGenerate:
    def test_s3(self):
        assert s3().order == 6

    def test_trivial(self):
        assert generate(1, []).order == 1

    def test_psl_2_7_order_matches_formula(self):
        group = cat.psl2_7()
        assert group.order == (7 ** 3 - 7) // 2 == 168

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            generate(3, [Permutation.identity(4)])

    def test_cap(self):
        with pytest.raises(CapExceeded):
            generate(5, list(cat.symmetric(5).generators), cap=10)

    def test_idempotent_on_closed_set(self):
        group = s3()
        again = generate(3, list(group.elements))
        assert again.element_set() == group.element_set()

    def test_element_orders_psl(self):
        # orders 1,2,3,4,7 with classical multiplicities
        counts = element_orders(cat.psl2_7())
        assert counts == {1: 1, 2: 21, 3: 56, 4: 42, 7: 48}


class TestSubgroups:
    def test_subgroup_generated(self):
        group = s3()
        assert a3_in(group).order == 3
        assert subgroup_generated(group, []).order == 1

    def test_seed_outside(self):
        with pytest.raises(ElementOutsideGroup):
            subgroup_generated(a3_in(s3()), [Permutation.from_cycles("(1 2)", 3)])

    def test_sylow_two_of_psl(self):
        # |G| = 168 = 8 * 21, so a Sylow 2-subgroup has order 8
        assert cat.psl2_7_d8().order == 8

    def test_intersect(self):
        group = s3()
        a = subgroup_generated(group, [Permutation.from_cycles("(1 2)", 3)])
        b = subgroup_generated(group, [Permutation.from_cycles("(1 3)", 3)])
        assert intersect(a, a) == a
        assert intersect(a, b).order == 1

    def test_intersect_psl_overgroups(self):
        from orelat.intervals import minimal_overgroups, overgroup_interval
        interval = overgroup_interval(cat.psl2_7(), cat.psl2_7_d8())
        k, ell = minimal_overgroups(interval)
        assert intersect(k, ell).order == 8
        assert join(k, ell).order == 168

    def test_join(self):
        group = s3()
        a = subgroup_generated(group, [Permutation.from_cycles("(1 2)", 3)])
        assert join(a, trivial_group(3)) == a
        assert join(a, a3_in(group)).order == 6

    def test_index(self):
        group = s3()
        assert index(group, a3_in(group)) == 2
        assert index(group, group) == 1
        assert index(cat.psl2_7(), cat.psl2_7_d8()) == 168 // 8 == 21

    def test_index_multiplicative(self):
        group = cat.symmetric(4)
        a4 = subgroup_generated(group, [Permutation([1, 2, 0, 3]), Permutation([0, 2, 3, 1])])
        v4 = subgroup_generated(group, [Permutation([1, 0, 3, 2]), Permutation([2, 3, 0, 1])])
        assert index(group, v4) == index(group, a4) * index(a4, v4)

    def test_not_a_subgroup(self):
        with pytest.raises(NotASubgroup):
            index(a3_in(s3()), s3())


class TestNormality:
    def test_core_of_normal_subgroup(self):
        group = s3()
        a3 = a3_in(group)
        assert normal_core(group, a3) == a3
        assert is_normal(group, a3)

    def test_core_free(self):
        group = s3()
        z2 = subgroup_generated(group, [Permutation.from_cycles("(1 2)", 3)])
        assert normal_core(group, z2).order == 1
        assert not is_normal(group, z2)

    def test_psl_is_simple_so_core_trivial(self):
        group = cat.psl2_7()
        d8 = cat.psl2_7_d8()
        # independent simplicity check: the conjugates of any single
        # nontrivial element already generate the whole group
        g = group.elements[1]
        conjugates = {x * g * x.inverse() for x in group.elements}
        assert subgroup_generated(group, sorted(conjugates)).order == group.order
        assert normal_core(group, d8).order == 1

    def test_conjugate(self):
        group = s3()
        sub = subgroup_generated(group, [Permutation.from_cycles("(1 2)", 3)])
        moved = conjugate(group, sub, Permutation.from_cycles("(2 3)", 3))
        assert Permutation.from_cycles("(1 3)", 3) in moved

    def test_right_cosets(self):
        group = s3()
        reps = right_cosets(group, a3_in(group))
        assert len(reps) == 2
        cosets = [{h * g for h in a3_in(group).elements} for g in reps]
        assert set().union(*cosets) == group.element_set()
        assert cosets[0].isdisjoint(cosets[1])


class TestProductFormula:
    @pytest.mark.parametrize("name", ["s3", "d4", "a4", "z12"])
    def test_product_formula(self, name):
        from orelat.intervals import full_subgroup_lattice
        full = full_subgroup_lattice(cat.catalog_group(name))
        members = full.members
        for a in members:
            for b in members:
                lhs = a.order * b.order
                assert lhs == product_set_size(a, b) * intersect(a, b).order
                assert lhs <= join(a, b).order * intersect(a, b).order
