import itertools

import pytest

from ktcheck.fincat import (
    ArTuple,
    BasedCat,
    FinCat,
    Functor,
    NatTrans,
    arrow_category,
    based_wedge_smash,
    commuting_cocones,
    connected_components,
    find_mediating,
    find_pushout,
    iso_classes,
    product_category,
    pushout_cocones,
    terminal_category,
    validate_fincat,
)


def chain_category(m):
    # the poset [m] as a category: a unique morphism i -> j for i <= j
    objs = list(range(m + 1))
    mors = [(i, j) for i in objs for j in objs if i <= j]
    src = {f: f[0] for f in mors}
    tgt = {f: f[1] for f in mors}
    ident = {i: (i, i) for i in objs}
    compose = {((b, c), (a, b2)): (a, c) for (b, c) in mors for (a, b2) in mors if b == b2}
    return FinCat(objs, mors, src, tgt, ident, compose)


def pointed_subsets_category(N):
    # pointed subsets of {*, 1..N} with based maps; small inline model used
    # before the shipped fixtures exist in the test
    from ktcheck.fixtures import pointed_sets_category

    return pointed_sets_category(N)


class TestValidateFincat:
    def test_terminal_passes(self):
        assert validate_fincat(terminal_category()).ok

    def test_poset_2_passes(self):
        assert validate_fincat(chain_category(2)).ok

    def test_corrupted_composition_caught(self):
        C = chain_category(2)
        bad = dict(C.compose_table)
        bad[((1, 2), (0, 1))] = (0, 0)
        broken = FinCat(C.objects, C.morphisms, C.src, C.tgt, C.identity, bad)
        rep = validate_fincat(broken)
        assert not rep.ok
        codes = {e["code"] for e in rep.failures}
        assert codes & {"law.closure", "law.assoc", "law.identity"}

    def test_every_single_table_corruption_detected(self):
        # mutation oracle: redirect each composition entry of a non-trivial
        # composable pair and demand detection
        C = chain_category(2)
        for key, val in C.compose_table.items():
            for other in C.morphisms:
                if other == val:
                    continue
                bad = dict(C.compose_table)
                bad[key] = other
                broken = FinCat(C.objects, C.morphisms, C.src, C.tgt, C.identity, bad)
                assert not validate_fincat(broken).ok

    def test_dangling_id_is_structural(self):
        C = chain_category(1)
        bad = dict(C.compose_table)
        bad[((0, 1), (0, 0))] = "ghost"
        broken = FinCat(C.objects, C.morphisms, C.src, C.tgt, C.identity, bad)
        rep = validate_fincat(broken)
        assert any(e["code"].startswith("structure.") for e in rep.failures)

    def test_empty_category_is_legal(self):
        assert validate_fincat(FinCat([], [], {}, {}, {}, {})).ok


class TestArrowCategory:
    def test_m0_terminal(self):
        A = arrow_category(0)
        assert len(A.objects) == 1 and len(A.morphisms) == 1

    def test_m1_counts(self):
        A = arrow_category(1)
        assert sorted(A.objects) == [(0, 0), (0, 1), (1, 1)]
        assert len(A.morphisms) == 6

    def test_m2_counts_against_pair_oracle(self):
        A = arrow_category(2)
        pairs = [(i, j) for i in range(3) for j in range(i, 3)]
        oracle = sum(
            1
            for a in pairs
            for b in pairs
            if a[0] <= b[0] and a[1] <= b[1]
        )
        assert len(A.objects) == 6
        assert len(A.morphisms) == oracle == 20

    def test_is_a_category(self):
        assert validate_fincat(arrow_category(2)).ok

    def test_object_count_formula(self):
        for m in range(4):
            A = arrow_category(m)
            assert len(A.objects) == (m + 1) * (m + 2) // 2


class TestProductCategory:
    def test_empty_product_terminal(self):
        P = product_category([])
        assert len(P.objects) == 1 and len(P.morphisms) == 1
        assert validate_fincat(P).ok

    def test_ar1_squared_counts(self):
        P = product_category([arrow_category(1), arrow_category(1)])
        assert len(P.objects) == 9
        assert len(P.morphisms) == 36
        assert validate_fincat(P).ok

    def test_unit_law(self):
        C = chain_category(2)
        P = product_category([C, terminal_category()])
        assert len(P.objects) == len(C.objects)
        assert len(P.morphisms) == len(C.morphisms)

    def test_ar_tuple_object_count_formula(self):
        for shape in [(), (1,), (2, 1), (1, 1)]:
            T = ArTuple(shape)
            want = 1
            for m in shape:
                want *= (m + 1) * (m + 2) // 2
            assert len(T.cat.objects) == want


class TestPushout:
    def test_identity_span_in_pointed_sets(self):
        C = pointed_subsets_category(2).cat
        b = "*"
        idb = C.identity[b]
        P = find_pushout(C, idb, idb)
        assert P is not None and P[0] == "*"

    def test_pushout_along_identity_leg(self):
        C = pointed_subsets_category(2).cat
        idb = C.identity["*"]
        (incl,) = [f for f in C.hom("*", "*1")]
        cone = find_pushout(C, idb, incl)
        assert cone is not None and cone[0] == "*1"

    def test_wedge_of_two_singletons(self):
        C = pointed_subsets_category(2).cat
        (f,) = C.hom("*", "*1")
        (g,) = C.hom("*", "*2")
        cone = find_pushout(C, f, g)
        assert cone is not None
        P, pY, pZ = cone
        assert P == "*12"
        # legs are the two inclusions
        assert C.src[pY] == "*1" and C.src[pZ] == "*2"

    def test_universal_property_oracle(self):
        # independent check: the returned cocone admits a unique mediating
        # morphism to every commuting cocone
        C = pointed_subsets_category(2).cat
        (f,) = C.hom("*", "*1")
        (g,) = C.hom("*", "*2")
        P, pY, pZ = find_pushout(C, f, g)
        for (Q, qY, qZ) in commuting_cocones(C, f, g):
            assert len(find_mediating(C, P, pY, pZ, Q, qY, qZ)) == 1

    def test_apex_unique_up_to_iso(self):
        C = pointed_subsets_category(2).cat
        (f,) = C.hom("*", "*1")
        (g,) = C.hom("*", "*2")
        cocones = pushout_cocones(C, f, g)
        assert len(cocones) >= 1
        P0, pY0, pZ0 = cocones[0]
        for (P, pY, pZ) in cocones[1:]:
            (u,) = find_mediating(C, P0, pY0, pZ0, P, pY, pZ)
            assert C.is_iso(u)

    def test_absent_pushout_is_none(self):
        # in the bounded fixture of subsets of {*,1}, the wedge of the
        # 2-element object with itself needs 3 elements and does not exist
        C = pointed_subsets_category(1).cat
        (f,) = C.hom("*", "*1")
        assert find_pushout(C, f, f) is None

    def test_deterministic(self):
        C = pointed_subsets_category(2).cat
        (f,) = C.hom("*", "*1")
        (g,) = C.hom("*", "*2")
        assert find_pushout(C, f, g) == find_pushout(C, f, g)


class TestPartitions:
    def test_discrete_iso_classes(self):
        objs = ["a", "b", "c"]
        C = FinCat(
            objs,
            [f"id{o}" for o in objs],
            {f"id{o}": o for o in objs},
            {f"id{o}": o for o in objs},
            {o: f"id{o}" for o in objs},
            {(f"id{o}", f"id{o}"): f"id{o}" for o in objs},
        )
        assert len(iso_classes(C)) == 3
        assert len(connected_components(C)) == 3

    def test_pointed_subsets_iso_classes_by_size(self):
        B = pointed_subsets_category(2)
        classes = iso_classes(B.cat)
        assert sorted(len(c) for c in classes) == [1, 1, 2]

    def test_chain_connected(self):
        assert len(connected_components(chain_category(2))) == 1

    def test_iso_refines_components(self):
        B = pointed_subsets_category(2)
        comp = {frozenset(c) for c in connected_components(B.cat)}
        for cls in iso_classes(B.cat):
            assert any(set(cls) <= c for c in comp)


class TestFunctorNatTrans:
    def test_identity_functor_valid(self):
        C = chain_category(2)
        assert Functor.identity(C).validate().ok

    def test_broken_functor_caught(self):
        C = chain_category(1)
        F = Functor.identity(C)
        F.mor[((0, 1))] = (0, 0)
        assert not F.validate().ok

    def test_nat_trans_identity(self):
        C = chain_category(1)
        F = Functor.identity(C)
        eta = NatTrans(F, F, {x: C.identity[x] for x in C.objects})
        assert eta.validate().ok

    def test_nat_trans_square_failure(self):
        C = chain_category(1)
        F = Functor.identity(C)
        # constant functor at 1
        G = Functor(C, C, {x: 1 for x in C.objects}, {f: (1, 1) for f in C.morphisms})
        assert G.validate().ok
        # wrong component: use 0 -> 1 at object 1? endpoints force (1,1); use
        # a broken component at 0 instead
        eta = NatTrans(F, G, {0: (0, 0), 1: (1, 1)})
        assert not eta.validate().ok


class TestWedgeSmash:
    def base_interval(self):
        return BasedCat(chain_category(1), 0)

    def test_smash_with_terminal_is_terminal(self):
        T = BasedCat(terminal_category(), "*")
        S = based_wedge_smash([self.base_interval(), T], "smash")
        assert len(S.cat.objects) == 1

    def test_wedge_of_intervals(self):
        W = based_wedge_smash([self.base_interval(), self.base_interval()], "wedge")
        assert len(W.cat.objects) == 3
        assert validate_fincat(W.cat).ok

    def test_smash_of_intervals(self):
        S = based_wedge_smash([self.base_interval(), self.base_interval()], "smash")
        assert len(S.cat.objects) == 2
        assert validate_fincat(S.cat).ok
