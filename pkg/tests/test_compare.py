import functools

import pytest

from ktcheck.compare import (
    AbGroupInvariants,
    check_e_naturality,
    check_modification,
    check_multinaturality,
    entry_tuple,
    interval,
    iso_classes,
    k0,
    k0_presentation,
    phi_functor,
    phi_morphism,
    phi_object,
    pi0_comparison,
    split_cofibrations,
)
from ktcheck.fincat import ArTuple
from ktcheck.fixtures import (
    _ps_mor,
    _ps_obj,
    pointed_sets_category,
    pointed_sets_cofibrations,
    smash_multifunctor,
    vect_f2_category,
    vect_f2_cofibrations,
)
from ktcheck.sdot import enumerate_sdot, extension_iso
from ktcheck.segal import enumerate_segal, segal_extension_iso
from ktcheck.wald import MultiFunctor, WaldStruct, lambda_smc


@functools.lru_cache(maxsize=None)
def ps_wald(n):
    B = pointed_sets_category(n)
    cofibs = pointed_sets_cofibrations(B)
    weqs = [m for m in B.cat.morphisms if B.cat.is_iso(m)]
    return WaldStruct(B, cofibs, weqs)


@functools.lru_cache(maxsize=None)
def vf_wald(n):
    B = vect_f2_category(n)
    cofibs = vect_f2_cofibrations(B)
    weqs = [m for m in B.cat.morphisms if B.cat.is_iso(m)]
    return WaldStruct(B, cofibs, weqs)


@functools.lru_cache(maxsize=None)
def smc(which):
    return lambda_smc(ps_wald(3) if which == "ps" else vf_wald(2))


@functools.lru_cache(maxsize=None)
def seg_level(which, ctx, mors="weq"):
    return enumerate_segal(smc(which), ctx, mors=mors)


@functools.lru_cache(maxsize=None)
def sd_level(which, ctx, mors="weq"):
    W = ps_wald(3) if which == "ps" else vf_wald(2)
    return enumerate_sdot(W, ctx, mors=mors)


def ps_twist(B):
    """The componentwise symmetry comparing the smash with its swap."""
    C = B.cat

    def mu(xs):
        X, Y = xs
        px = [(x, y) for x in C.carrier[X] for y in C.carrier[Y]]
        py = [(y, x) for y in C.carrier[Y] for x in C.carrier[X]]
        if len(px) > max(len(c) for c in C.carrier.values()):
            return None
        S = _ps_obj(frozenset(str(i) for i in range(1, len(px) + 1)))
        images = tuple(str(py.index((y, x)) + 1) for (x, y) in px)
        return _ps_mor(S, S, images)

    return mu


class TestInterval:
    def test_half_open_sets(self):
        assert interval(0, 0) == frozenset()
        assert interval(1, 2) == frozenset({2})
        assert interval(0, 3) == frozenset({1, 2, 3})

    def test_entry_tuple(self):
        assert entry_tuple(((0, 2), (1, 1))) == (frozenset({1, 2}), frozenset())


class TestPhiObject:
    def test_single_slot_flag_is_forced(self):
        S = smc("vf")
        for sys in seg_level("vf", (1,)).systems:
            r = phi_object(S, sys)
            assert r.ok
            X = sys.cvals[(frozenset({1}),)]
            assert r.diagram.ob[((0, 0),)] == S.unit
            assert r.diagram.ob[((0, 1),)] == X
            assert r.diagram.ob[((1, 1),)] == S.unit

    def test_two_slot_output_is_wedge_flag(self):
        # a system with identity gluing maps out of the chosen wedge turns
        # into the inclusion / projection flag
        W = ps_wald(3)
        S = smc("ps")
        C = S.cat
        one, two = frozenset({1}), frozenset({2})
        found = 0
        for sys in seg_level("ps", (2,)).systems:
            X, Y = sys.cvals[(one,)], sys.cvals[(two,)]
            glue = sys.rho[((interval(0, 2),), 0, one, two)]
            if glue != C.identity[S.ob(X, Y)] or X == S.unit or Y == S.unit:
                continue
            found += 1
            r = phi_object(S, sys)
            assert r.ok
            assert r.diagram.ob[((0, 2),)] == S.ob(X, Y)
            assert r.diagram.mor[(((0, 1), (0, 2)),)] == S.incl1(X, Y)
            assert r.diagram.mor[(((0, 2), (1, 2)),)] == S.proj2(X, Y)
        assert found > 0

    def test_appended_slot_matches_extension(self):
        W = vf_wald(2)
        S = smc("vf")
        for sys in seg_level("vf", (2,)).systems:
            ext = segal_extension_iso(S, sys)
            lhs = phi_object(S, ext).diagram
            rhs = extension_iso(W, phi_object(S, sys).diagram)
            assert lhs == rhs

    @pytest.mark.parametrize("ctx", [(1,), (2,), (1, 1), (2, 1)])
    def test_well_defined_on_all_systems(self, ctx):
        S = smc("vf")
        for sys in seg_level("vf", ctx).systems:
            r = phi_object(S, sys)
            assert r.ok and not r.report.indeterminates

    def test_basepoint_system_to_basepoint_diagram(self):
        S = smc("vf")
        lv = seg_level("vf", (2,))
        base = lv.systems[lv.basepoint]
        r = phi_object(S, base)
        assert all(v == S.unit for v in r.diagram.ob.values())


class TestPhiMorphism:
    def test_identity_gives_identity_transformation(self):
        S = smc("vf")
        sys = seg_level("vf", (2,)).systems[1]
        r = phi_object(S, sys)
        C = S.cat
        comps = {T: C.identity[sys.cvals[T]] for T in sys.cvals}
        nat = phi_morphism(S, r, r, comps)
        assert nat.validate().ok
        assert all(
            nat.components[o] == C.identity[r.diagram.ob[o]]
            for o in nat.components
        )

    def test_weq_morphisms_map_to_weq_components(self):
        S = smc("vf")
        lv = seg_level("vf", (2,))
        tgt = sd_level("vf", (2,))
        F = phi_functor(S, lv, tgt)
        for f in lv.weqs:
            assert F.mor[f] in tgt.weqs

    def test_functoriality_on_enumerated_morphisms(self):
        S = smc("vf")
        lv = seg_level("vf", (2,))
        tgt = sd_level("vf", (2,))
        F = phi_functor(S, lv, tgt)
        ct1, ct2 = lv.cat.compose_table, tgt.cat.compose_table
        for (g, f), gf in ct1.items():
            assert ct2[(F.mor[g], F.mor[f])] == F.mor[gf]

    def test_naturality_of_components(self):
        S = smc("vf")
        lv = seg_level("vf", (2,))
        for f in list(lv.cat.morphisms)[:40]:
            a, b = lv.systems[f[0]], lv.systems[f[1]]
            ra, rb = phi_object(S, a), phi_object(S, b)
            comps = {T: lv.component(f, T) for T in a.cvals}
            assert phi_morphism(S, ra, rb, comps).validate().ok


class TestENaturality:
    def test_vf2_window(self):
        rep = check_e_naturality(vf_wald(2))
        assert rep.ok and not rep.indeterminates

    def test_ps2_window(self):
        rep = check_e_naturality(ps_wald(2))
        assert rep.ok and not rep.indeterminates


class TestMultinaturality:
    def test_identity_unary(self):
        W = vf_wald(2)
        C = W.cat
        ident = MultiFunctor([C], C, lambda xs: xs[0], lambda fs: fs[0])
        rep = check_multinaturality(W, ident, [(1,)])
        assert rep.ok and not rep.indeterminates

    def test_nullary_choice(self):
        W = vf_wald(2)
        C = W.cat
        choice = MultiFunctor([], C, lambda xs: "d1", lambda fs: C.identity["d1"])
        rep = check_multinaturality(W, choice, [])
        assert rep.ok and not rep.indeterminates

    def test_smash_binary(self):
        W = ps_wald(3)
        rep = check_multinaturality(W, smash_multifunctor(W.base), [(1,), (1,)])
        assert rep.ok
        assert all(
            e["code"] == "multiphi.bounded" for e in rep.indeterminates
        )


class TestModification:
    def test_identity_modification(self):
        W = vf_wald(2)
        C = W.cat
        ident = MultiFunctor([C], C, lambda xs: xs[0], lambda fs: fs[0])
        rep = check_modification(W, ident, ident, lambda xs: C.identity[xs[0]], [(1,)])
        assert rep.ok

    def test_unary_transformation(self):
        # collapse-to-basepoint endofunctor with the zero transformation
        W = vf_wald(2)
        C = W.cat
        ident = MultiFunctor([C], C, lambda xs: xs[0], lambda fs: fs[0])
        zero = MultiFunctor(
            [C], C, lambda xs: W.basepoint,
            lambda fs: C.identity[W.basepoint],
        )
        rep = check_modification(W, ident, zero, lambda xs: W.to_zero(xs[0]), [(1,)])
        assert rep.ok

    def test_smash_symmetry_twist(self):
        W = ps_wald(3)
        F = smash_multifunctor(W.base)
        G = smash_multifunctor(W.base, order=(1, 0))
        rep = check_modification(W, F, G, ps_twist(W.base), [(1,), (1,)])
        assert rep.ok
        assert not rep.failures


class TestPi0:
    def test_degree_zero_components_are_iso_classes(self):
        # the empty slot tuple evaluates to the input category itself
        for W in [ps_wald(2), vf_wald(2)]:
            rep = pi0_comparison(W, 0)
            assert rep.ok
            (info,) = rep.infos
            assert info["witness"]["systems"] == len(iso_classes(W))
            assert info["witness"]["diagrams"] == len(iso_classes(W))

    def test_degree_one_components_are_iso_classes(self):
        W = vf_wald(2)
        rep = pi0_comparison(W, 1)
        assert rep.ok
        (info,) = rep.infos
        assert info["witness"]["systems"] == len(iso_classes(W))

    @pytest.mark.parametrize("mk", [lambda: ps_wald(2), lambda: vf_wald(2)])
    def test_degree_two_bijection(self, mk):
        rep = pi0_comparison(mk(), 2)
        assert rep.ok and not rep.indeterminates

    def test_split_precondition(self):
        W = ps_wald(2)
        assert split_cofibrations(W)
        bad = WaldStruct(W.base, W.cat.morphisms, W.weqs)
        rep = pi0_comparison(bad, 1)
        assert rep.ok
        assert {e["code"] for e in rep.indeterminates} == {"pi0.split"}


class TestK0:
    def test_terminal_category(self):
        assert k0(ps_wald(0)) == AbGroupInvariants(0, [])

    def test_pointed_sets(self):
        assert k0(ps_wald(3)) == AbGroupInvariants(1, [])

    def test_vector_spaces(self):
        assert k0(vf_wald(2)) == AbGroupInvariants(1, [])

    def test_presentation_shape(self):
        W = vf_wald(2)
        pres = k0_presentation(W)
        assert len(pres.generators) == len(iso_classes(W))
        assert all(len(r) == len(pres.generators) for r in pres.relations)
        # the basepoint class is killed
        assert pres.relations[0][0] == 1
        # cofiber relations: [middle] = [sub] + [quotient], here additive
        # in dimensions, so every relation vector sums against dims to 0
        dims = [int(cl[0][1:]) for cl in iso_classes(W)]
        for r in pres.relations[1:]:
            assert sum(c * d for c, d in zip(r, dims)) == 0
