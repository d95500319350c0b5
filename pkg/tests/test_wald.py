import functools

import pytest

from ktcheck.fincat import (
    BasedCat,
    Functor,
    chain_category,
    product_category,
    pushout_cocones,
    terminal_category,
)
from ktcheck.fixtures import (
    pointed_sets_category,
    pointed_sets_cofibrations,
    smash_multifunctor,
    tensor_multifunctor,
    vect_f2_category,
    vect_f2_cofibrations,
)
from ktcheck.wald import (
    KLinearData,
    MultiFunctor,
    WaldStruct,
    assoc_iso,
    comb_object,
    compose_klinear,
    default_wedge_choice,
    is_cubically_cofibrant,
    lambda_on_multiexact,
    lambda_smc,
    perm_iso,
    validate_k_exact,
    validate_klinear,
    validate_smc,
    validate_waldhausen,
    validate_wedge_choice,
    wedge_choice_comparison,
    weq_wedge_closure,
)


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
def ps_smc(n):
    return lambda_smc(ps_wald(n))


@functools.lru_cache(maxsize=None)
def vf_smc(n):
    return lambda_smc(vf_wald(n))


def ps_incl(C, X, Y):
    # the inclusion of a pointed subset into a larger one
    return f"{X}>{Y}|" + "".join(C.carrier[X])


class TestValidateWaldhausen:
    def test_pointed_sets_passes(self):
        rep = validate_waldhausen(ps_wald(2))
        assert rep.ok and not rep.failures

    def test_vect_passes(self):
        rep = validate_waldhausen(vf_wald(2))
        assert rep.ok and not rep.failures

    def test_truncation_reported_as_indeterminate(self):
        rep = validate_waldhausen(ps_wald(2))
        assert any(e["code"] == "axiom3.bounded" for e in rep.indeterminates)

    def test_terminal_complete(self):
        T = terminal_category()
        W = WaldStruct(BasedCat(T, T.objects[0]), T.morphisms, T.morphisms)
        rep = validate_waldhausen(W)
        assert rep.ok and not rep.indeterminates

    def test_dropped_zero_cofibration_caught(self):
        W = ps_wald(2)
        drop = W.zero_to("*12")
        W2 = WaldStruct(W.base, W.cofibrations - {drop}, W.weqs)
        rep = validate_waldhausen(W2)
        assert any(e["code"] == "axiom2.zero_cofib" for e in rep.failures)

    def test_missing_iso_weq_caught(self):
        W = ps_wald(2)
        C = W.cat
        swap = next(
            m for m in W.weqs if C.src[m] == "*12" and m != C.identity["*12"]
        )
        W2 = WaldStruct(W.base, W.cofibrations, W.weqs - {swap})
        rep = validate_waldhausen(W2)
        assert any(e["code"] == "axiom1.iso_weq" for e in rep.failures)

    def test_unpointed_category_caught(self):
        I = chain_category(1)
        W = WaldStruct(BasedCat(I, 0), I.morphisms, I.morphisms)
        rep = validate_waldhausen(W)
        assert any(e["code"] == "pointed.final" for e in rep.failures)


class TestCubicalCofibrancy:
    def cube_functor(self, C, ob, mor):
        n = len(next(iter(ob)))
        src = product_category([chain_category(1)] * n)
        return Functor(src, C, ob, mor)

    def test_single_cofibration(self):
        W = ps_wald(2)
        C = W.cat
        ob = {(0,): "*", (1,): "*1"}
        mor = {
            ((0, 0),): C.identity["*"],
            ((1, 1),): C.identity["*1"],
            ((0, 1),): W.zero_to("*1"),
        }
        verdict, rep = is_cubically_cofibrant(W, self.cube_functor(C, ob, mor))
        assert verdict is True and rep.ok

    def test_wedge_square(self):
        W = ps_wald(2)
        C = W.cat
        ob = {(0, 0): "*", (1, 0): "*1", (0, 1): "*2", (1, 1): "*12"}
        mor = {}
        for a in ob:
            for b in ob:
                if all(x <= y for x, y in zip(a, b)):
                    mor[tuple(zip(a, b))] = ps_incl(C, ob[a], ob[b])
        verdict, rep = is_cubically_cofibrant(W, self.cube_functor(C, ob, mor))
        assert verdict is True and rep.ok

    def test_collapsed_corner_caught(self):
        # every edge is a cofibration but the square is not cocartesian
        # enough: the corner map folds the wedge onto one summand
        W = ps_wald(2)
        C = W.cat
        idx = C.identity["*1"]
        ob = {(0, 0): "*", (1, 0): "*1", (0, 1): "*1", (1, 1): "*1"}
        mor = {
            ((0, 0), (0, 0)): C.identity["*"],
            ((1, 1), (0, 0)): idx,
            ((0, 0), (1, 1)): idx,
            ((1, 1), (1, 1)): idx,
            ((0, 1), (0, 0)): W.zero_to("*1"),
            ((0, 0), (0, 1)): W.zero_to("*1"),
            ((0, 1), (0, 1)): W.zero_to("*1"),
            ((0, 1), (1, 1)): idx,
            ((1, 1), (0, 1)): idx,
        }
        verdict, rep = is_cubically_cofibrant(W, self.cube_functor(C, ob, mor))
        assert verdict is False
        assert any(e["code"] == "cubical.corner" for e in rep.failures)

    def test_three_cube_of_inclusions(self):
        W = ps_wald(3)
        C = W.cat

        def name(bits):
            elems = [str(i + 1) for i, b in enumerate(bits) if b]
            return "*" + "".join(elems)

        ob, mor = {}, {}
        bits3 = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
        for a in bits3:
            ob[a] = name(a)
        for a in bits3:
            for b in bits3:
                if all(x <= y for x, y in zip(a, b)):
                    mor[tuple(zip(a, b))] = ps_incl(C, ob[a], ob[b])
        verdict, rep = is_cubically_cofibrant(W, self.cube_functor(C, ob, mor))
        assert verdict is True and rep.ok


class TestMultiFunctor:
    def test_identity_valid(self):
        C = ps_wald(2).cat
        assert MultiFunctor.identity(C).validate().ok

    def test_constant_valid(self):
        C = ps_wald(2).cat
        F = MultiFunctor.constant(C, "*")
        assert F.validate().ok

    def test_smash_valid_with_bound(self):
        F = smash_multifunctor(pointed_sets_category(2))
        rep = F.validate()
        assert rep.ok and not rep.failures
        assert any(e["code"] == "mf.bounded" for e in rep.indeterminates)

    def test_smash_objects(self):
        F = smash_multifunctor(pointed_sets_category(2))
        assert F.ob(("*1", "*1")) == "*1"
        assert F.ob(("*1", "*")) == "*"
        assert F.ob(("*12", "*12")) is None
        assert F.ob(("*12", "*1")) == "*12"

    def test_tensor_objects(self):
        F = tensor_multifunctor(vect_f2_category(2))
        assert F.ob(("d1", "d2")) == "d2"
        assert F.ob(("d2", "d2")) is None
        assert F.ob(("d0", "d2")) == "d0"

    def test_broken_endpoints_caught(self):
        C = ps_wald(2).cat
        F = MultiFunctor([C], C, lambda xs: xs[0], lambda fs: C.identity[C.src[fs[0]]])
        rep = F.validate()
        assert any(e["code"] == "mf.endpoints" for e in rep.failures)


class TestKExact:
    def test_identity_exact(self):
        W = ps_wald(2)
        rep = validate_k_exact(MultiFunctor.identity(W.cat), [W], W)
        assert rep.ok and not rep.failures

    def test_nullary(self):
        W = ps_wald(2)
        rep = validate_k_exact(MultiFunctor.constant(W.cat, "*"), [], W)
        assert rep.ok

    def test_smash_biexact(self):
        W = ps_wald(2)
        rep = validate_k_exact(smash_multifunctor(W.base), [W, W], W)
        assert rep.ok and not rep.failures

    def test_tensor_biexact(self):
        W = vf_wald(2)
        rep = validate_k_exact(tensor_multifunctor(W.base), [W, W], W)
        assert rep.ok and not rep.failures

    def test_weq_loss_caught(self):
        W = ps_wald(2)
        C = W.cat
        Wt = WaldStruct(W.base, W.cofibrations, [C.identity[X] for X in C.objects])
        rep = validate_k_exact(MultiFunctor.identity(C), [W], Wt)
        assert any(e["code"] == "kexact.weq" for e in rep.failures)

    def test_basepoint_violation_caught(self):
        W = ps_wald(2)
        # arity-one functor constant at a nonzero object
        F1 = MultiFunctor([W.cat], W.cat, lambda xs: "*1", lambda fs: W.cat.identity["*1"])
        rep = validate_k_exact(F1, [W], W)
        assert any(e["code"] == "kexact.zero" for e in rep.failures)


class TestWedgeChoice:
    def test_default_valid(self):
        W = ps_wald(2)
        wc = default_wedge_choice(W)
        assert validate_wedge_choice(W, wc).ok

    def test_unit_squares_strict(self):
        W = ps_wald(2)
        wc = default_wedge_choice(W)
        C = W.cat
        for X in C.objects:
            Z, i1, i2 = wc.get(X, "*")
            assert Z == X and i1 == C.identity[X]
            Z, i1, i2 = wc.get("*", X)
            assert Z == X and i2 == C.identity[X]

    def test_apex_sizes(self):
        W = ps_wald(2)
        wc = default_wedge_choice(W)
        assert wc.get("*1", "*1")[0] == "*12"
        assert wc.get("*1", "*2")[0] == "*12"

    def test_missing_pairs(self):
        W = ps_wald(2)
        wc = default_wedge_choice(W)
        assert wc.missing == {
            ("*1", "*12"),
            ("*12", "*1"),
            ("*12", "*12"),
            ("*12", "*2"),
            ("*2", "*12"),
        }

    def test_vect_default_valid(self):
        W = vf_wald(2)
        wc = default_wedge_choice(W)
        assert validate_wedge_choice(W, wc).ok
        assert wc.get("d1", "d1")[0] == "d2"

    def test_corrupt_square_caught(self):
        W = ps_wald(2)
        wc = default_wedge_choice(W)
        C = W.cat
        wc.squares[("*1", "*1")] = ("*1", C.identity["*1"], C.identity["*1"])
        rep = validate_wedge_choice(W, wc)
        assert any(e["code"] == "wedge.pushout" for e in rep.failures)


class TestSMC:
    def test_pointed_sets_coherent(self):
        rep = validate_smc(ps_smc(2))
        assert rep.ok and not rep.failures

    def test_vect_coherent(self):
        rep = validate_smc(vf_smc(2))
        assert rep.ok and not rep.failures

    def test_strict_unit_on_morphisms(self):
        S = ps_smc(2)
        C = S.cat
        for f in C.morphisms:
            assert S.tensor_mor(f, C.identity["*"]) == f
            assert S.tensor_mor(C.identity["*"], f) == f

    def test_gamma_involution(self):
        S = ps_smc(2)
        C = S.cat
        g = S.gamma("*1", "*2")
        g2 = S.gamma("*2", "*1")
        assert C.comp(g2, g) == C.identity[S.ob("*1", "*2")]

    def test_projections_retract(self):
        S = ps_smc(2)
        C = S.cat
        assert C.comp(S.proj1("*1", "*2"), S.incl1("*1", "*2")) == C.identity["*1"]
        assert C.comp(S.proj2("*1", "*2"), S.incl2("*1", "*2")) == C.identity["*2"]

    def test_alpha_with_unit_is_identity(self):
        S = ps_smc(2)
        a = S.alpha("*1", "*", "*2")
        assert a == S.cat.identity[S.ob("*1", "*2")]

    def test_weq_closure(self):
        assert weq_wedge_closure(ps_smc(2)).ok
        assert weq_wedge_closure(vf_smc(2)).ok

    def test_alternative_choice_equivalent(self):
        W = ps_wald(2)
        wc1 = default_wedge_choice(W)
        wc2 = default_wedge_choice(W)
        # a second valid square for the same pair: either another cocone
        # verifying the universal property, or the legs swapped
        Z, i1, i2 = wc1.get("*1", "*2")
        alts = [
            sq
            for sq in pushout_cocones(W.cat, W.zero_to("*1"), W.zero_to("*2"))
            if sq != (Z, i1, i2)
        ]
        wc2.squares[("*1", "*2")] = alts[0] if alts else (Z, i2, i1)
        assert validate_wedge_choice(W, wc2).ok
        rep = wedge_choice_comparison(W, wc1, wc2)
        assert rep.ok and not rep.failures


class TestCoherenceTrees:
    def test_assoc_iso_is_alpha(self):
        S = ps_smc(3)
        a, b, c = "*1", "*1", "*1"
        t1 = ("n", ("n", a, b), c)
        t2 = ("n", a, ("n", b, c))
        assert assoc_iso(S, t1, t2) == S.alpha(a, b, c)

    def test_assoc_iso_identity_on_same_tree(self):
        S = ps_smc(3)
        t = ("n", ("n", "*1", "*2"), "*3")
        u = assoc_iso(S, t, t)
        C = S.cat
        assert u == C.identity[comb_object(S, ["*1", "*2", "*3"])]

    def test_perm_identity(self):
        S = ps_smc(2)
        u = perm_iso(S, ["*1", "*2"], [0, 1])
        assert u == S.cat.identity[S.ob("*1", "*2")]

    def test_perm_swap_is_gamma(self):
        S = ps_smc(2)
        assert perm_iso(S, ["*1", "*2"], [1, 0]) == S.gamma("*1", "*2")

    def test_perm_three_cycle_iso(self):
        S = ps_smc(3)
        C = S.cat
        leaves = ["*1", "*2", "*3"]
        u = perm_iso(S, leaves, [1, 2, 0])
        assert u is not None and C.is_iso(u)
        assert C.src[u] == comb_object(S, leaves)
        assert C.tgt[u] == comb_object(S, ["*2", "*3", "*1"])


class TestKLinear:
    def test_identity_deltas_trivial(self):
        W = ps_wald(2)
        K = lambda_on_multiexact(MultiFunctor.identity(W.cat), [W], W)
        S = K.sources[0]
        d = K.delta(0, ("*1",), "*2")
        assert d == W.cat.identity[S.ob("*1", "*2")]
        assert validate_klinear(K).ok

    def test_smash_coherent(self):
        W = ps_wald(2)
        K = lambda_on_multiexact(smash_multifunctor(W.base), [W, W], W)
        rep = validate_klinear(K)
        assert rep.ok and not rep.failures

    def test_tensor_coherent(self):
        W = vf_wald(2)
        K = lambda_on_multiexact(tensor_multifunctor(W.base), [W, W], W)
        rep = validate_klinear(K)
        assert rep.ok and not rep.failures

    def test_composite_coherent(self):
        W = ps_wald(2)
        Gd = lambda_on_multiexact(smash_multifunctor(W.base), [W, W], W)
        Fd = lambda_on_multiexact(MultiFunctor.identity(W.cat), [W], W)
        H = compose_klinear(Gd, [Fd, Fd])
        assert H.k() == 2
        assert H.F.ob(("*1", "*1")) == "*1"
        rep = validate_klinear(H)
        assert rep.ok and not rep.failures

    def test_corrupt_delta_caught(self):
        W = ps_wald(2)
        F = smash_multifunctor(W.base)
        S = lambda_smc(W)

        def bad_delta(i, xs, alt):
            t = F.ob(tuple("*12" if j == i else x for j, x in enumerate(xs)))
            return None if t is None else W.cat.identity[t]

        K = KLinearData(F, [S, S], S, delta_fun=bad_delta)
        rep = validate_klinear(K)
        assert any(e["code"] == "klinear.delta" for e in rep.failures)
