"""System categories over a strictly unital symmetric monoidal category:
objects indexed by tuples of basepoint-free subsets with gluing
isomorphisms, their axioms, enumeration, functoriality in pointed maps
and permutations, the extension isomorphism, and the K-theory levels."""

from __future__ import annotations

import itertools

from .fincat import FinCat, Functor, _skey
from .report import Report
from .simplicial import TruncSSet, circle_map
from .wald import SMCStruct, assoc_iso

_LAZY_COMPOSE_AT = 20000


def pointed_subsets(m: int):
    """All basepoint-free subsets of <m> = {0,...,m}, smallest first."""
    out = []
    for r in range(m + 1):
        for c in itertools.combinations(range(1, m + 1), r):
            out.append(frozenset(c))
    return out


def context_tuples(context):
    return [
        tuple(p)
        for p in itertools.product(*[pointed_subsets(m) for m in context])
    ]


def _put(S, i, T):
    return S[:i] + (T,) + S[i + 1 :]


def _canon(T):
    return tuple(sorted(T))


def _tkey(S):
    return tuple(_canon(T) for T in S)


def splits(Si):
    """All ordered pairs (T, U) with T and U disjoint and T | U = Si."""
    elems = sorted(Si)
    out = []
    for r in range(len(elems) + 1):
        for c in itertools.combinations(elems, r):
            T = frozenset(c)
            out.append((T, Si - T))
    return out


def rho_keys(context):
    keys = []
    for S in context_tuples(context):
        for i in range(len(context)):
            for T, U in splits(S[i]):
                keys.append((S, i, T, U))
    return keys


class SegalSystem:
    """An object assignment over tuples of basepoint-free subsets together
    with a gluing isomorphism for every ordered split of every slot."""

    def __init__(self, context, cvals, rho):
        self.context = tuple(context)
        self.cvals = dict(cvals)
        self.rho = dict(rho)

    def key(self):
        return (
            self.context,
            tuple(sorted(((_tkey(S), v) for S, v in self.cvals.items()), key=_skey)),
            tuple(
                sorted(
                    (((_tkey(S), i, _canon(T), _canon(U)), v) for (S, i, T, U), v in self.rho.items()),
                    key=_skey,
                )
            ),
        )

    def __eq__(self, other):
        return isinstance(other, SegalSystem) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def validate_segal_system(S: SMCStruct, sys: SegalSystem) -> Report:
    """All five axioms plus invertibility of the gluing maps; tensor data
    outside the fixture bound is reported as indeterminate."""
    rep = Report("segal")
    C = S.cat
    context = sys.context
    n = len(context)
    obset = set(C.objects)
    tuples = context_tuples(context)

    for T in tuples:
        if sys.cvals.get(T) not in obset:
            rep.add("segal.structure", "missing or dangling object entry", entry=_tkey(T))
    if not rep.ok:
        return rep

    # axiom: entries with an empty slot are the unit; checked before the
    # gluing endpoints since those are meaningless on a bad object table
    for T in tuples:
        if any(not Tk for Tk in T) and sys.cvals[T] != S.unit:
            rep.add("segal.unit", "entry with empty slot not the unit", entry=_tkey(T))
    if not rep.ok:
        return rep

    for key in rho_keys(context):
        Sx, i, T, U = key
        r = sys.rho.get(key)
        if r is None:
            rep.add(
                "segal.structure", "missing gluing morphism",
                entry=_tkey(Sx), slot=i, left=_canon(T), right=_canon(U),
            )
            continue
        src = S.ob(sys.cvals[_put(Sx, i, T)], sys.cvals[_put(Sx, i, U)])
        if src is None:
            rep.add_indeterminate(
                "segal.bounded", "gluing source out of bound",
                entry=_tkey(Sx), slot=i, left=_canon(T), right=_canon(U),
            )
            continue
        if C.src.get(r) != src or C.tgt.get(r) != sys.cvals[Sx]:
            rep.add(
                "segal.structure", "gluing morphism endpoints wrong",
                entry=_tkey(Sx), slot=i, left=_canon(T), right=_canon(U),
            )
        elif not C.is_iso(r):
            rep.add(
                "segal.iso", "gluing morphism not invertible",
                entry=_tkey(Sx), slot=i, left=_canon(T), right=_canon(U),
            )
    if not rep.ok:
        return rep

    ct = C.compose_table

    # axiom: gluing along an empty piece is the identity
    for key in rho_keys(context):
        Sx, i, T, U = key
        if (not T or not U or any(not Sk for Sk in Sx)) and sys.rho[key] != C.identity[sys.cvals[Sx]]:
            rep.add(
                "segal.degenerate", "degenerate gluing not the identity",
                entry=_tkey(Sx), slot=i, left=_canon(T), right=_canon(U),
            )

    # axiom: the two orientations of a split differ by the symmetry
    for key in rho_keys(context):
        Sx, i, T, U = key
        a = sys.cvals[_put(Sx, i, T)]
        b = sys.cvals[_put(Sx, i, U)]
        g = S.gamma(a, b)
        if g is None:
            rep.add_indeterminate("segal.bounded", "symmetry out of bound", entry=_tkey(Sx), slot=i)
            continue
        if ct.get((sys.rho[(Sx, i, U, T)], g)) != sys.rho[key]:
            rep.add(
                "segal.symmetry", "orientation not symmetry-compatible",
                entry=_tkey(Sx), slot=i, left=_canon(T), right=_canon(U),
            )

    # axiom: gluing three disjoint pieces is associative
    for Sx in tuples:
        for i in range(n):
            for T, rest in splits(Sx[i]):
                for U, V in splits(rest):
                    a = sys.cvals[_put(Sx, i, T)]
                    b = sys.cvals[_put(Sx, i, U)]
                    c = sys.cvals[_put(Sx, i, V)]
                    al = S.alpha(a, b, c)
                    top = S.tensor_mor(sys.rho[(_put(Sx, i, T | U), i, T, U)], C.identity[c])
                    mid = S.tensor_mor(C.identity[a], sys.rho[(_put(Sx, i, U | V), i, U, V)])
                    if al is None or top is None or mid is None:
                        rep.add_indeterminate(
                            "segal.bounded", "associativity instance out of bound",
                            entry=_tkey(Sx), slot=i,
                        )
                        continue
                    lhs = ct.get((sys.rho[(Sx, i, T | U, V)], top))
                    rhs = ct.get((sys.rho[(Sx, i, T, U | V)], ct.get((mid, al))))
                    if lhs is None or lhs != rhs:
                        rep.add(
                            "segal.assoc", "associativity diagram fails",
                            entry=_tkey(Sx), slot=i,
                            pieces=[_canon(T), _canon(U), _canon(V)],
                        )

    # axiom: gluings in two different slots interchange
    for Sx in tuples:
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for T, U in splits(Sx[i]):
                    for V, W in splits(Sx[j]):
                        _coherence_instance(S, sys, rep, Sx, i, j, T, U, V, W)
    return rep


def _coherence_instance(S: SMCStruct, sys, rep, Sx, i, j, T, U, V, W):
    C = S.cat
    ct = C.compose_table
    x = sys.cvals[_put(_put(Sx, i, T), j, V)]
    y = sys.cvals[_put(_put(Sx, i, U), j, V)]
    z = sys.cvals[_put(_put(Sx, i, T), j, W)]
    w = sys.cvals[_put(_put(Sx, i, U), j, W)]
    tA = ("n", ("n", x, ("n", y, z)), w)
    tB = ("n", ("n", x, y), ("n", z, w))
    tC = ("n", ("n", x, ("n", z, y)), w)
    tD = ("n", ("n", x, z), ("n", y, w))
    a_top = assoc_iso(S, tA, tB)
    g = S.gamma(y, z)
    a_bot = assoc_iso(S, tC, tD)
    glue_top = (
        None
        if a_top is None
        else S.tensor_mor(
            sys.rho[(_put(Sx, j, V), i, T, U)], sys.rho[(_put(Sx, j, W), i, T, U)]
        )
    )
    glue_bot = (
        None
        if a_bot is None
        else S.tensor_mor(
            sys.rho[(_put(Sx, i, T), j, V, W)], sys.rho[(_put(Sx, i, U), j, V, W)]
        )
    )
    swap = None
    if g is not None:
        inner = S.tensor_mor(C.identity[x], g)
        if inner is not None:
            swap = S.tensor_mor(inner, C.identity[w])
    if a_top is None or a_bot is None or glue_top is None or glue_bot is None or swap is None:
        rep.add_indeterminate(
            "segal.bounded", "interchange instance out of bound",
            entry=_tkey(Sx), slots=[i, j],
        )
        return
    lhs = ct.get((sys.rho[(Sx, j, V, W)], ct.get((glue_top, a_top))))
    rhs = ct.get(
        (sys.rho[(Sx, i, T, U)], ct.get((glue_bot, ct.get((a_bot, swap)))))
    )
    if lhs is None or lhs != rhs:
        rep.add(
            "segal.interchange", "two-slot interchange diagram fails",
            entry=_tkey(Sx), slots=[i, j],
            pieces=[_canon(T), _canon(U), _canon(V), _canon(W)],
        )


def system_morphism_ok(S: SMCStruct, A: SegalSystem, B: SegalSystem, comps) -> bool:
    """Whether components (a dict over index tuples) form a morphism of
    systems: identities at empty-slot tuples, gluing squares commute."""
    C = S.cat
    ct = C.compose_table
    for T in context_tuples(A.context):
        f = comps.get(T)
        if f is None or C.src.get(f) != A.cvals[T] or C.tgt.get(f) != B.cvals[T]:
            return False
        if any(not Tk for Tk in T) and f != C.identity[S.unit]:
            return False
    for key in rho_keys(A.context):
        Sx, i, T, U = key
        pair = S.tensor_mor(comps[_put(Sx, i, T)], comps[_put(Sx, i, U)])
        if pair is None:
            return False
        if ct.get((comps[Sx], A.rho[key])) != ct.get((B.rho[key], pair)):
            return False
    return True


class SegalLevel:
    """One system category: its objects, the category with system
    morphisms, and the componentwise weak equivalences."""

    def __init__(self, S, context, systems, free, cat, weqs):
        self.S = S
        self.context = tuple(context)
        self.systems = list(systems)
        self.free = list(free)
        self.cat = cat
        self.weqs = frozenset(weqs)
        unit = S.unit
        self.basepoint = next(
            i for i, A in enumerate(self.systems) if all(v == unit for v in A.cvals.values())
        )

    @property
    def index(self):
        if not hasattr(self, "_index"):
            self._index = {A.key(): i for i, A in enumerate(self.systems)}
        return self._index

    def component(self, m, T):
        if T in self._freepos:
            return m[2][self._freepos[T]]
        return self.S.cat.identity[self.S.unit]

    @property
    def _freepos(self):
        if not hasattr(self, "_fp"):
            self._fp = {e: p for p, e in enumerate(self.free)}
        return self._fp


def _tuple_order(T):
    return (sum(len(Tk) for Tk in T), _skey(_tkey(T)))


def _canonical_split(Si):
    t = frozenset([min(Si)])
    return t, Si - t


def _interchange_rho(S: SMCStruct, cv, rh, E, i0, j):
    """The gluing for slot j of E forced, via the two-slot interchange
    diagram, by the already chosen gluing at slot i0; None out of bound."""
    C = S.cat
    T0, U0 = _canonical_split(E[i0])
    Tj, Uj = _canonical_split(E[j])
    x = cv[_put(_put(E, i0, T0), j, Tj)]
    y = cv[_put(_put(E, i0, U0), j, Tj)]
    z = cv[_put(_put(E, i0, T0), j, Uj)]
    w = cv[_put(_put(E, i0, U0), j, Uj)]
    a_top = assoc_iso(S, ("n", ("n", x, ("n", y, z)), w), ("n", ("n", x, y), ("n", z, w)))
    a_bot = assoc_iso(S, ("n", ("n", x, ("n", z, y)), w), ("n", ("n", x, z), ("n", y, w)))
    g = S.gamma(y, z)
    if a_top is None or a_bot is None or g is None:
        return None
    glue_top = S.tensor_mor(rh[(_put(E, j, Tj), i0, T0, U0)], rh[(_put(E, j, Uj), i0, T0, U0)])
    glue_bot = S.tensor_mor(rh[(_put(E, i0, T0), j, Tj, Uj)], rh[(_put(E, i0, U0), j, Tj, Uj)])
    inner = S.tensor_mor(C.identity[x], g)
    if glue_top is None or glue_bot is None or inner is None:
        return None
    swap = S.tensor_mor(inner, C.identity[w])
    if swap is None or not C.is_iso(glue_top):
        return None
    r0 = rh[(E, i0, T0, U0)]
    out = r0
    for step in (glue_bot, a_bot, swap, C.inverse(a_top), C.inverse(glue_top)):
        out = C.comp(out, step)
    if C.src[out] != S.ob(cv[_put(E, j, Tj)], cv[_put(E, j, Uj)]):
        return None
    return out


def _complete_system(S: SMCStruct, context, cv, rh):
    """Fill in the reversed and degenerate gluings; None out of bound."""
    C = S.cat
    rho = {}
    for key in rho_keys(context):
        Sx, i, T, U = key
        if key in rh:
            rho[key] = rh[key]
        elif not T or not U or any(not Sk for Sk in Sx):
            rho[key] = C.identity[cv[Sx]]
        else:
            # the reversed orientation, forced by the symmetry axiom
            base = rh.get((Sx, i, U, T))
            g = S.gamma(cv[_put(Sx, i, T)], cv[_put(Sx, i, U)])
            if base is None or g is None:
                return None
            rho[key] = C.comp(base, g)
    return SegalSystem(context, cv, rho)


def free_tuples(context):
    """The all-nonempty index tuples, smallest first; these carry the free
    component data of systems and of their morphisms."""
    return sorted(
        [T for T in context_tuples(context) if all(Tk for Tk in T)],
        key=_tuple_order,
    )


def iter_segal_systems(S: SMCStruct, context, validate: bool = True):
    """Stream all valid systems in a deterministic order: free object
    choices at singleton tuples, one free gluing isomorphism per composite
    tuple (later slots forced by interchange), symmetry-forced reversals,
    then the full axiom filter."""
    context = tuple(context)
    C = S.cat
    unit = S.unit
    nonempty = free_tuples(context)
    n = len(context)
    base_cv = {T: unit for T in context_tuples(context) if any(not Tk for Tk in T)}

    def rec(k, cv, rh):
        if k == len(nonempty):
            sys = _complete_system(S, context, cv, rh)
            if sys is not None and (not validate or validate_segal_system(S, sys).ok):
                yield sys
            return
        E = nonempty[k]
        big = [i for i in range(n) if len(E[i]) >= 2]
        if not big:
            for X in C.sorted_objects():
                cv[E] = X
                yield from rec(k + 1, cv, rh)
            del cv[E]
            return
        i0 = big[0]
        T0, U0 = _canonical_split(E[i0])
        w0 = S.ob(cv[_put(E, i0, T0)], cv[_put(E, i0, U0)])
        if w0 is None:
            return
        key0 = (E, i0, T0, U0)
        for Q in C.sorted_objects():
            for r0 in C.isos(w0, Q):
                cv[E] = Q
                rh[key0] = r0
                added = [key0]
                ok = True
                for j in big[1:]:
                    rj = _interchange_rho(S, cv, rh, E, i0, j)
                    if rj is None:
                        ok = False
                        break
                    kj = (E, j) + _canonical_split(E[j])
                    rh[kj] = rj
                    added.append(kj)
                if ok:
                    yield from rec(k + 1, cv, rh)
                for kk in added:
                    rh.pop(kk, None)
        cv.pop(E, None)

    yield from rec(0, dict(base_cv), {})


def _enumerate_systems(S: SMCStruct, context, cap=None):
    out = []
    for sys in iter_segal_systems(S, context):
        out.append(sys)
        if cap is not None and len(out) > cap:
            raise ValueError(
                f"context {tuple(context)} has more than {cap} systems; "
                f"use the streaming iterator instead of a materialized level"
            )
    return out, free_tuples(context)


def enumerate_segal(S: SMCStruct, context, bound: int = 2, mors: str = "all") -> SegalLevel:
    """All valid systems over the context, with the category of system
    morphisms; mors as in the level enumeration: "all", "weq" or "none"."""
    context = tuple(context)
    if mors not in ("all", "weq", "none"):
        raise ValueError(f"unknown morphism mode {mors!r}")
    if len(context) > 2 or any(m > bound for m in context):
        raise ValueError(
            f"context {context} exceeds the enumeration bound (entries <= {bound}, "
            f"at most 2 slots); the object search alone is on the order of "
            f"|Ob|^(singleton tuples) * |Iso|^(composite tuples) states"
        )
    cache = getattr(S, "_segal_cache", None)
    if cache is None:
        cache = S._segal_cache = {}
    if (context, mors) in cache:
        return cache[(context, mors)]
    if (context, "all") in cache and mors != "all":
        return cache[(context, "all")]

    C = S.cat
    systems, free = _enumerate_systems(S, context, cap=50000)
    N = len(systems)
    weqset = S.wald.weqs

    if mors == "none":
        level = SegalLevel(S, context, systems, free, None, ())
        cache[(context, mors)] = level
        return level

    ct = C.compose_table
    n = len(context)
    names, src, tgt = [], {}, {}
    for ai, A in enumerate(systems):
        for bi, B in enumerate(systems):
            partial = [{}]
            for E in free:
                big = [i for i in range(n) if len(E[i]) >= 2]
                new = []
                for comps in partial:
                    if not big:
                        cand = C.hom(A.cvals[E], B.cvals[E])
                        if mors == "weq":
                            cand = [u for u in cand if u in weqset]
                    else:
                        # forced by the gluing square along the first split
                        i0 = big[0]
                        T0, U0 = _canonical_split(E[i0])
                        key = (E, i0, T0, U0)
                        pair = S.tensor_mor(comps[_put(E, i0, T0)], comps[_put(E, i0, U0)])
                        if pair is None:
                            cand = []
                        else:
                            u = ct.get((B.rho[key], ct.get((pair, C.inverse(A.rho[key])))))
                            cand = [u] if u is not None else []
                            if mors == "weq":
                                cand = [v for v in cand if v in weqset]
                    for u in cand:
                        new.append({**comps, E: u})
                partial = new
            for comps in partial:
                full = dict(comps)
                for T in context_tuples(context):
                    if any(not Tk for Tk in T):
                        full[T] = C.identity[S.unit]
                if system_morphism_ok(S, A, B, full):
                    name = (ai, bi, tuple(comps[E] for E in free))
                    names.append(name)
                    src[name], tgt[name] = ai, bi

    ident = {
        i: (i, i, tuple(C.identity[A.cvals[E]] for E in free))
        for i, A in enumerate(systems)
    }
    if len(names) > _LAZY_COMPOSE_AT:
        from .sdot import _LevelCompose

        compose = _LevelCompose(ct)
    else:
        by_src = {}
        for m in names:
            by_src.setdefault(src[m], []).append(m)
        compose = {}
        for f in names:
            for g in by_src.get(tgt[f], ()):
                comps = tuple(ct[(u, v)] for u, v in zip(g[2], f[2]))
                compose[(g, f)] = (f[0], g[1], comps)
    cat = FinCat(list(range(N)), names, src, tgt, ident, compose)
    if mors == "weq":
        weqs = names
    else:
        weqs = [m for m in names if all(u in weqset for u in m[2])]
    level = SegalLevel(S, context, systems, free, cat, weqs)
    cache[(context, mors)] = level
    return level


class _WeqSMC:
    """The symmetric monoidal structure restricted to the subcategory of
    weak equivalences: same objects and tensor data, morphisms cut down.
    Enumerating systems over this shim realizes the construction applied
    to the weq subcategory directly."""

    def __init__(self, S: SMCStruct):
        base = S.cat
        weqs = S.wald.weqs
        mors = [m for m in base.morphisms if m in weqs]
        compose = {
            (g, f): h
            for (g, f), h in base.compose_table.items()
            if g in weqs and f in weqs
        }
        self.base = S
        self.cat = FinCat(base.objects, mors,
                          {m: base.src[m] for m in mors},
                          {m: base.tgt[m] for m in mors},
                          base.identity, compose)
        self.unit = S.unit
        self.wald = S.wald

    def ob(self, X, Y):
        return self.base.ob(X, Y)

    def gamma(self, X, Y):
        return self.base.gamma(X, Y)

    def alpha(self, X, Y, Z):
        return self.base.alpha(X, Y, Z)

    def tensor_mor(self, f, g):
        return self.base.tensor_mor(f, g)


def weq_smc(S: SMCStruct) -> _WeqSMC:
    return _WeqSMC(S)


# -- functoriality ----------------------------------------------------------


def _preimage(beta, T):
    return frozenset(x for x in range(1, len(beta)) if beta[x] in T)


def reindex_system(S: SMCStruct, betas, A: SegalSystem, context2) -> SegalSystem:
    """Precompose with preimages of pointed maps, one per slot."""
    cvals = {
        T: A.cvals[tuple(_preimage(b, Tk) for b, Tk in zip(betas, T))]
        for T in context_tuples(context2)
    }
    rho = {}
    for (Sx, i, T, U) in rho_keys(context2):
        back = tuple(_preimage(b, Tk) for b, Tk in zip(betas, Sx))
        rho[(Sx, i, T, U)] = A.rho[(back, i, _preimage(betas[i], T), _preimage(betas[i], U))]
    return SegalSystem(context2, cvals, rho)


def segal_functoriality(betas, source: SegalLevel, target: SegalLevel) -> Functor:
    """The functor induced by pointed maps of the context sets (one value
    tuple per slot, basepoint to basepoint); raises when an image system
    is missing from the target level."""
    betas = tuple(tuple(b) for b in betas)
    if len(betas) != len(source.context):
        raise ValueError("one pointed map per slot required")
    for b, m1, m2 in zip(betas, source.context, target.context):
        if len(b) != m1 + 1 or b[0] != 0 or any(not (0 <= v <= m2) for v in b):
            raise ValueError("not a pointed map into the target context")
    S = source.S
    ob = {}
    for i, A in enumerate(source.systems):
        R = reindex_system(S, betas, A, target.context)
        if R.key() not in target.index:
            raise ValueError(f"reindexed system missing from target level: {i}")
        ob[i] = target.index[R.key()]
    mor = {}
    for m in source.cat.morphisms:
        comps = tuple(
            source.component(m, tuple(_preimage(b, Tk) for b, Tk in zip(betas, T)))
            for T in target.free
        )
        mor[m] = (ob[m[0]], ob[m[1]], comps)
    return Functor(source.cat, target.cat, ob, mor)


def segal_permute(sigma, source: SegalLevel, target: SegalLevel) -> Functor:
    """Relabel the slots: slot r of the image reads slot sigma[r]."""
    sigma = tuple(sigma)
    n = len(source.context)
    if sorted(sigma) != list(range(n)):
        raise ValueError("not a permutation")
    if target.context != tuple(source.context[s] for s in sigma):
        raise ValueError("target context does not match the permutation")
    inv = [0] * n
    for r, s in enumerate(sigma):
        inv[s] = r

    def apply(T):
        return tuple(T[inv[k]] for k in range(n))

    S = source.S
    ob = {}
    for i, A in enumerate(source.systems):
        cvals = {T: A.cvals[apply(T)] for T in context_tuples(target.context)}
        rho = {
            (Sx, k, T, U): A.rho[(apply(Sx), inv[k], T, U)]
            for (Sx, k, T, U) in rho_keys(target.context)
        }
        R = SegalSystem(target.context, cvals, rho)
        if R.key() not in target.index:
            raise ValueError(f"permuted system missing from target level: {i}")
        ob[i] = target.index[R.key()]
    mor = {}
    for m in source.cat.morphisms:
        comps = tuple(source.component(m, apply(T)) for T in target.free)
        mor[m] = (ob[m[0]], ob[m[1]], comps)
    return Functor(source.cat, target.cat, ob, mor)


# -- the extension isomorphism ---------------------------------------------


def segal_extension_iso(S: SMCStruct, A: SegalSystem) -> SegalSystem:
    """Append a <1> slot: the old system sits at {1} in the new slot, the
    unit at the empty set."""
    C = S.cat
    context2 = A.context + (1,)
    one = frozenset([1])
    cvals = {}
    for T in context_tuples(context2):
        cvals[T] = A.cvals[T[:-1]] if T[-1] == one else S.unit
    rho = {}
    for key in rho_keys(context2):
        Sx, i, T, U = key
        if Sx[-1] != one:
            rho[key] = C.identity[S.unit]
        elif i == len(A.context):
            # splitting the new singleton slot is degenerate
            rho[key] = C.identity[cvals[Sx]]
        else:
            rho[key] = A.rho[(Sx[:-1], i, T, U)]
    return SegalSystem(context2, cvals, rho)


def segal_extension_restrict(S: SMCStruct, B: SegalSystem) -> SegalSystem:
    """Inverse of the extension: fix {1} in the last slot."""
    context = B.context[:-1]
    one = frozenset([1])
    cvals = {T: B.cvals[T + (one,)] for T in context_tuples(context)}
    rho = {
        (Sx, i, T, U): B.rho[(Sx + (one,), i, T, U)]
        for (Sx, i, T, U) in rho_keys(context)
    }
    return SegalSystem(context, cvals, rho)


# -- the K-theory level -----------------------------------------------------


def _coface(i, q):
    return tuple(t if t < i else t + 1 for t in range(q))


def _codegen(i, q):
    return tuple(t if t <= i else t - 1 for t in range(q + 2))


def segal_k_level(S: SMCStruct, n: int, d: int, bound: int = 2) -> TruncSSet:
    """The diagonal of nerves of the system categories over circle
    contexts, truncated at d; one slot per spectrum direction."""
    from .simplicial import nerve

    if n > 1 or d > bound:
        raise ValueError("level parameters exceed the bound")
    if n == 0:
        ctx = {q: (1,) for q in range(d + 1)}
    else:
        ctx = {q: (q,) * n for q in range(d + 1)}
    levels = {q: enumerate_segal(S, ctx[q], bound) for q in range(d + 1)}
    nerves = {q: nerve(levels[q].cat, d) for q in range(d + 1)}

    def circle_betas(beta, q, q2):
        # the pointed maps induced on each circle slot, or identities for
        # the constant spectrum level 0
        if n == 0:
            return (tuple(range(2)),)
        return (circle_map(beta, q),) * n

    def level_map(betas, q, q2):
        F = segal_functoriality(betas, levels[q], levels[q2])
        return F

    simplices = {q: nerves[q].simplices[q] for q in range(d + 1)}
    faces, degens = {}, {}
    for q in range(1, d + 1):
        for i in range(q + 1):
            F = level_map(circle_betas(_coface(i, q), q, q - 1), q, q - 1)
            tab = {}
            for ch in simplices[q]:
                mid = nerves[q].faces[(q, i)][ch]
                if q - 1 == 0:
                    tab[ch] = F.ob[mid]
                else:
                    tab[ch] = tuple(F.mor[f] for f in mid)
            faces[(q, i)] = tab
    for q in range(0, d):
        for i in range(q + 1):
            G = level_map(circle_betas(_codegen(i, q), q, q + 1), q, q + 1)
            tab = {}
            for ch in simplices[q]:
                mid = nerves[q].degens[(q, i)][ch]
                tab[ch] = tuple(G.mor[f] for f in mid)
            degens[(q, i)] = tab
    base = {}
    for q in range(d + 1):
        b = levels[q].basepoint
        if q == 0:
            base[q] = b
        else:
            base[q] = (levels[q].cat.identity[b],) * q
    return TruncSSet(d, simplices, faces, degens, base)
