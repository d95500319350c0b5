"""Iterated S-construction levels over a Waldhausen structure: diagram
validation, exhaustive enumeration, multisimplicial structure maps, the
extension isomorphism, coordinate permutation, and agreement with the
iterated one-variable construction."""

from __future__ import annotations

import itertools

from .fincat import (
    ArTuple,
    FinCat,
    Functor,
    _skey,
    find_mediating,
    is_pushout_square,
    pushout_cocones,
)
from .report import Report
from .simplicial import TruncSSet
from .wald import WaldStruct, _check_cube


_AR_CACHE: dict = {}


def _ar(shape) -> ArTuple:
    shape = tuple(shape)
    if shape not in _AR_CACHE:
        _AR_CACHE[shape] = ArTuple(shape)
    return _AR_CACHE[shape]


def _is_star(entry) -> bool:
    return any(i == j for (i, j) in entry)


def _entry_order(entry):
    return (sum(i for (i, _) in entry), sum(j for (_, j) in entry), repr(entry))


class SdotDiagram:
    """Functor data on a product of arrow categories with values in a
    pointed category: ob maps index tuples of pairs to objects, mor maps
    the (unique) arrows between comparable index tuples to morphisms."""

    def __init__(self, shape, ob, mor):
        self.shape = tuple(shape)
        self.ob = dict(ob)
        self.mor = dict(mor)
        self._k = None

    def key(self):
        if self._k is None:
            # index keys and entry names are plain tuples and strings, so
            # the default ordering is total here
            self._k = (
                self.shape,
                tuple(sorted(self.ob.items())),
                tuple(sorted(self.mor.items())),
            )
        return self._k

    def __eq__(self, other):
        return isinstance(other, SdotDiagram) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def validate_sdot(A: SdotDiagram, W: WaldStruct) -> Report:
    """Functoriality plus the three level conditions: degenerate entries
    are the basepoint, the restriction cube is cubically cofibrant, and
    the quotient squares are pushouts."""
    rep = Report("sdot")
    C, star = W.cat, W.basepoint
    ar = _ar(A.shape)
    obset = set(C.objects)

    for o in ar.cat.objects:
        if A.ob.get(o) not in obset:
            rep.add("sdot.functor", "entry missing or dangling", entry=o)
    if not rep.ok:
        return rep
    for m in ar.cat.morphisms:
        f = A.mor.get(m)
        a, b = ar.cat.src[m], ar.cat.tgt[m]
        if f is None or C.src.get(f) != A.ob[a] or C.tgt.get(f) != A.ob[b]:
            rep.add("sdot.functor", "arrow image missing or mismatched", arrow=m)
    if not rep.ok:
        return rep
    for o in ar.cat.objects:
        if A.mor[ar.cat.identity[o]] != C.identity[A.ob[o]]:
            rep.add("sdot.functor", "identity not preserved", entry=o)
    ct = C.compose_table
    for (g, f), gf in ar.cat.compose_table.items():
        if A.mor[gf] != ct.get((A.mor[g], A.mor[f])):
            rep.add("sdot.functor", "composite not preserved", g=g, f=f)
    if not rep.ok:
        return rep

    # condition: degenerate entries collapse to the basepoint
    for o in ar.cat.objects:
        if _is_star(o) and A.ob[o] != star:
            rep.add("sdot.zero", "degenerate entry not the basepoint", entry=o)
    if not rep.ok:
        return rep

    # condition: the restriction cube is cubically cofibrant
    n = len(A.shape)
    if n:
        ob_at = lambda js: A.ob[tuple((0, j) for j in js)]
        mor_at = lambda a, b: A.mor[tuple(((0, x), (0, y)) for x, y in zip(a, b))]
        _check_cube(W, A.shape, ob_at, mor_at, rep, "sdot.cube")

    # condition: quotient squares are pushouts (exact, no search bound:
    # the candidate square is given, only its universality is verified)
    for o in ar.cat.objects:
        for k in range(n):
            i, j = o[k]
            for r in range(j, A.shape[k] + 1):
                top = o[:k] + ((i, r),) + o[k + 1 :]
                left = o[:k] + ((j, j),) + o[k + 1 :]
                bot = o[:k] + ((j, r),) + o[k + 1 :]
                ok = is_pushout_square(
                    C,
                    A.mor[ar.mor(o, top)],
                    A.mor[ar.mor(o, left)],
                    A.ob[bot],
                    A.mor[ar.mor(top, bot)],
                    A.mor[ar.mor(left, bot)],
                )
                if not ok:
                    rep.add("sdot.pushout", "quotient square not a pushout", entry=o, slot=k, r=r)
    return rep


# -- enumeration ------------------------------------------------------------


class SdotLevel:
    """One level of the iterated construction: the list of valid diagrams,
    the category with natural transformations as morphisms, and the
    componentwise weak equivalences."""

    def __init__(self, W, shape, diagrams, free, cat, weqs):
        self.W = W
        self.shape = tuple(shape)
        self.diagrams = list(diagrams)
        self.free = list(free)
        self.cat = cat
        self.weqs = frozenset(weqs)
        self.index = {A.key(): i for i, A in enumerate(self.diagrams)}
        star = W.basepoint
        self.basepoint = next(
            i for i, A in enumerate(self.diagrams) if all(v == star for v in A.ob.values())
        )

    def component(self, m, entry):
        """The component of a level morphism at any index entry."""
        if entry in self._freepos:
            return m[2][self._freepos[entry]]
        return self.W.cat.identity[self.W.basepoint]

    @property
    def _freepos(self):
        if not hasattr(self, "_fp"):
            self._fp = {e: p for p, e in enumerate(self.free)}
        return self._fp


def _flag_entry(entry):
    return all(i == 0 for (i, _) in entry)


class _LevelCompose:
    """Lazy composition for a level category: morphisms are
    (src, tgt, components) triples and compose componentwise, so the
    quadratic table is never materialized."""

    def __init__(self, base_ct):
        self.base_ct = base_ct

    def __getitem__(self, key):
        g, f = key
        if f[1] != g[0]:
            raise KeyError(key)
        ct = self.base_ct
        return (f[0], g[1], tuple(ct[(u, v)] for u, v in zip(g[2], f[2])))

    def get(self, key, default=None):
        g, f = key
        if f[1] != g[0]:
            return default
        ct = self.base_ct
        return (f[0], g[1], tuple(ct[(u, v)] for u, v in zip(g[2], f[2])))

    def __contains__(self, key):
        return key[1][1] == key[0][0]


def _enumerate_diagrams(W: WaldStruct, shape, ar: ArTuple):
    """All assignments of objects and canonical maps; each candidate is
    completed to full functor data and then filtered by validate_sdot."""
    C, star = W.cat, W.basepoint
    objs = sorted(ar.cat.objects, key=_skey)
    free = sorted([o for o in objs if not _is_star(o)], key=_entry_order)
    n = len(shape)

    def covers(entry):
        # lower one coordinate of one slot by 1
        out = []
        for k in range(n):
            i, j = entry[k]
            if i > 0:
                out.append(entry[:k] + ((i - 1, j),) + entry[k + 1 :])
            if j > i:
                out.append(entry[:k] + ((i, j - 1),) + entry[k + 1 :])
        return [c for c in out if all(x <= y for (x, y) in c)]

    def leq(a, b):
        return all(p[0] <= q[0] and p[1] <= q[1] for p, q in zip(a, b))

    cofib_from = {}
    for c in sorted(W.cofibrations, key=_skey):
        cofib_from.setdefault(C.src[c], []).append(c)

    # states: (ob, fmor, legs); fmor maps flag pairs, legs maps completion
    # entries to their chosen cocone legs (pY from the 0-source, pZ from *)
    states = [({o: star for o in objs if _is_star(o)}, {}, {})]
    for e in free:
        nxt = []
        if _flag_entry(e):
            fcov = [c for c in covers(e) if not _is_star(c)]
            for ob, fmor, legs in states:
                earlier = [a for a in ob if not _is_star(a) and _flag_entry(a) and leq(a, e) and a != e]
                if not fcov:
                    for X in C.sorted_objects():
                        nxt.append(({**ob, e: X}, dict(fmor), dict(legs)))
                    continue
                c0 = fcov[0]
                for m0 in cofib_from.get(ob[c0], []):
                    X = C.tgt[m0]
                    cand = [{c0: m0}]
                    for c in fcov[1:]:
                        cand2 = []
                        for ch in cand:
                            for m in cofib_from.get(ob[c], []):
                                if C.tgt[m] != X:
                                    continue
                                good = True
                                for a in earlier:
                                    if leq(a, c0) and leq(a, c):
                                        lhs = m0 if a == c0 else C.comp(m0, fmor[(a, c0)])
                                        rhs = m if a == c else C.comp(m, fmor[(a, c)])
                                        if lhs != rhs:
                                            good = False
                                            break
                                if good:
                                    cand2.append({**ch, c: m})
                        cand = cand2
                    for ch in cand:
                        fm = dict(fmor)
                        bad = False
                        for a in earlier:
                            vals = set()
                            for c, m in ch.items():
                                if leq(a, c):
                                    vals.add(C.comp(m, fm[(a, c)]) if a != c else m)
                            zc = [c for c in covers(e) if _is_star(c) and leq(a, c)]
                            if zc:
                                vals.add(W.zero_map(ob[a], X))
                            if len(vals) != 1:
                                bad = True
                                break
                            fm[(a, e)] = vals.pop()
                        if bad:
                            continue
                        nxt.append(({**ob, e: X}, fm, dict(legs)))
        else:
            k = next(k for k in range(n) if e[k][0] > 0)
            i, j = e[k]
            ea = e[:k] + ((0, i),) + e[k + 1 :]
            eb = e[:k] + ((0, j),) + e[k + 1 :]
            for ob, fmor, legs in states:
                f = _partial_map(W, ob, fmor, legs, ea, eb)
                if f is None:
                    continue
                g = W.to_zero(ob[ea])
                for (Q, pY, pZ) in pushout_cocones(C, f, g):
                    nxt.append(({**ob, e: Q}, dict(fmor), {**legs, e: (eb, pY, pZ)}))
        states = nxt

    out = []
    for ob, fmor, legs in states:
        mor = {}
        ok = True
        for m in ar.cat.morphisms:
            v = _partial_map(W, ob, fmor, legs, ar.cat.src[m], ar.cat.tgt[m])
            if v is None:
                ok = False
                break
            mor[m] = v
        if not ok:
            continue
        A = SdotDiagram(shape, ob, mor)
        if validate_sdot(A, W).ok:
            out.append(A)
    seen, dedup = set(), []
    for A in out:
        if A.key() not in seen:
            seen.add(A.key())
            dedup.append(A)
    return sorted(dedup, key=lambda A: _skey(A.key())), free


def _partial_map(W: WaldStruct, ob, fmor, legs, a, b):
    """The forced functor value on the arrow a -> b given the chosen flag
    maps and completion legs; None when a universal property fails."""
    C = W.cat
    if a == b:
        return C.identity[ob[a]]
    if _is_star(a):
        return W.zero_to(ob[b])
    if _is_star(b):
        return W.to_zero(ob[a])
    if a in legs:
        eb, pY, pZ = legs[a]
        q1 = _partial_map(W, ob, fmor, legs, eb, b)
        if q1 is None:
            return None
        us = find_mediating(C, ob[a], pY, pZ, ob[b], q1, W.zero_to(ob[b]))
        return us[0] if len(us) == 1 else None
    if b in legs:
        eb, pY, pZ = legs[b]
        sub = _partial_map(W, ob, fmor, legs, a, eb)
        return None if sub is None else C.comp(pY, sub)
    return fmor.get((a, b))


_LAZY_COMPOSE_AT = 20000


def enumerate_sdot(W: WaldStruct, shape, bound: int = 2, mors: str = "all") -> SdotLevel:
    """All valid diagrams of the given shape, with the level category of
    natural transformations and its componentwise weak equivalences.

    mors selects how much of the level category is built: "all" (every
    natural transformation), "weq" (only those with weak-equivalence
    components, enough for nerves of w-levels), or "none" (objects only).
    """
    shape = tuple(shape)
    if mors not in ("all", "weq", "none"):
        raise ValueError(f"unknown morphism mode {mors!r}")
    if len(shape) > 2 or any(m > bound for m in shape):
        raise ValueError(
            f"shape {shape} exceeds the enumeration bound (entries <= {bound}, "
            f"at most 2 directions); the flag search alone is on the order of "
            f"|Ob|^(free entries) * |cofibrations|^(cube edges) states"
        )
    cache = getattr(W, "_sdot_cache", None)
    if cache is None:
        cache = W._sdot_cache = {}
    if (shape, mors) in cache:
        return cache[(shape, mors)]
    if (shape, "all") in cache and mors != "all":
        return cache[(shape, "all")]

    C = W.cat
    ar = _ar(shape)
    diagrams, free = _enumerate_diagrams(W, shape, ar)
    N = len(diagrams)
    weqset = W.weqs

    if mors == "none":
        level = SdotLevel(W, shape, diagrams, free, None, ())
        cache[(shape, mors)] = level
        return level

    # natural transformations: components at the free entries; components
    # at degenerate entries are forced identities of the basepoint
    ct = C.compose_table
    names, src, tgt = [], {}, {}
    ups_for = {
        p: [
            q
            for q, e2 in enumerate(free[:p])
            if all(x[0] <= y[0] and x[1] <= y[1] for x, y in zip(e2, e))
        ]
        for p, e in enumerate(free)
    }
    for ai, A in enumerate(diagrams):
        for bi, B in enumerate(diagrams):
            partial = [()]
            for p, e in enumerate(free):
                new = []
                ups = ups_for[p]
                for comps in partial:
                    if ups:
                        q0 = ups[0]
                        m0 = A.mor[ar.mor(free[q0], e)]
                        rhs0 = ct[(B.mor[ar.mor(free[q0], e)], comps[q0])]
                        cand = C.post_index(m0).get(rhs0, ())
                    else:
                        cand = C.hom(A.ob[e], B.ob[e])
                    if mors == "weq":
                        cand = [u for u in cand if u in weqset]
                    for u in cand:
                        good = True
                        for q in ups[1:]:
                            m = A.mor[ar.mor(free[q], e)]
                            if ct[(u, m)] != ct[(B.mor[ar.mor(free[q], e)], comps[q])]:
                                good = False
                                break
                        if good:
                            new.append(comps + (u,))
                partial = new
            for comps in partial:
                name = (ai, bi, comps)
                names.append(name)
                src[name], tgt[name] = ai, bi

    ident = {
        i: (i, i, tuple(C.identity[A.ob[e]] for e in free))
        for i, A in enumerate(diagrams)
    }
    if len(names) > _LAZY_COMPOSE_AT:
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
    level = SdotLevel(W, shape, diagrams, free, cat, weqs)
    cache[(shape, mors)] = level
    return level


# -- structure maps ---------------------------------------------------------


def _restrict_diagram(A: SdotDiagram, betas) -> SdotDiagram:
    """Precompose with the index reindexing induced by monotone maps, one
    per direction (given as value tuples)."""
    shape2 = tuple(len(b) - 1 for b in betas)
    ar2 = _ar(shape2)

    def apply(o):
        return tuple((b[i], b[j]) for b, (i, j) in zip(betas, o))

    ob = {o: A.ob[apply(o)] for o in ar2.cat.objects}
    mor = {
        m: A.mor[tuple(
            ((b[p[0]], b[p[1]]), (b[q[0]], b[q[1]]))
            for b, (p, q) in zip(betas, m)
        )]
        for m in ar2.cat.morphisms
    }
    return SdotDiagram(shape2, ob, mor)


def _structure_tables(betas, source: SdotLevel, target: SdotLevel):
    """Object table and per-morphism image for the reindexing functor;
    raises if a restricted diagram is missing from the target level."""
    if tuple(len(b) - 1 for b in betas) != target.shape:
        raise ValueError("betas do not match the target shape")
    ob = {}
    for i, A in enumerate(source.diagrams):
        R = _restrict_diagram(A, betas)
        if R.key() not in target.index:
            raise ValueError(f"restricted diagram missing from target level: {i}")
        ob[i] = target.index[R.key()]

    def apply(o):
        return tuple((b[i], b[j]) for b, (i, j) in zip(betas, o))

    def mor_of(m):
        comps = tuple(source.component(m, apply(e)) for e in target.free)
        return (ob[m[0]], ob[m[1]], comps)

    return ob, mor_of


class _LazyMor:
    """An on-demand morphism table for a functor out of a large level;
    entries are computed from the per-morphism rule and memoized."""

    def __init__(self, fn):
        self.fn = fn
        self.cache = {}

    def __getitem__(self, m):
        if m not in self.cache:
            self.cache[m] = self.fn(m)
        return self.cache[m]

    def get(self, m, default=None):
        try:
            return self[m]
        except Exception:
            return default

    def __contains__(self, m):
        return True


def sdot_structure_map(betas, W: WaldStruct, source: SdotLevel, target: SdotLevel) -> Functor:
    """The level functor induced by precomposition with the reindexing;
    raises if a restricted diagram is missing from the target level."""
    betas = tuple(tuple(b) for b in betas)
    ob, mor_of = _structure_tables(betas, source, target)
    if len(source.cat.morphisms) > _LAZY_COMPOSE_AT:
        mor = _LazyMor(mor_of)
    else:
        mor = {m: mor_of(m) for m in source.cat.morphisms}
    return Functor(source.cat, target.cat, ob, mor)


def permute_level(sigma, W: WaldStruct, source: SdotLevel, target: SdotLevel) -> Functor:
    """Relabel the directions: slot r of the image reads slot sigma[r] of
    the input; an isomorphism of level categories."""
    sigma = tuple(sigma)
    n = len(source.shape)
    if sorted(sigma) != list(range(n)):
        raise ValueError("not a permutation")
    if target.shape != tuple(source.shape[s] for s in sigma):
        raise ValueError("target shape does not match the permutation")
    inv = [0] * n
    for r, s in enumerate(sigma):
        inv[s] = r

    def apply(o):
        # the source entry read off by a target entry
        return tuple(o[inv[k]] for k in range(n))

    ob, mor = {}, {}
    ar_s = _ar(source.shape)
    for i, A in enumerate(source.diagrams):
        ob2 = {o: A.ob[apply(o)] for o in _ar(target.shape).cat.objects}
        mor2 = {}
        for m in _ar(target.shape).cat.morphisms:
            a, b = _ar(target.shape).cat.src[m], _ar(target.shape).cat.tgt[m]
            mor2[m] = A.mor[ar_s.mor(apply(a), apply(b))]
        R = SdotDiagram(target.shape, ob2, mor2)
        if R.key() not in target.index:
            raise ValueError(f"permuted diagram missing from target level: {i}")
        ob[i] = target.index[R.key()]
    for m in source.cat.morphisms:
        comps = tuple(source.component(m, apply(e)) for e in target.free)
        mor[m] = (ob[m[0]], ob[m[1]], comps)
    return Functor(source.cat, target.cat, ob, mor)


# -- the extension isomorphism ---------------------------------------------


def extension_iso(W: WaldStruct, A: SdotDiagram) -> SdotDiagram:
    """Add a final direction of length 1: the old diagram sits at index
    01 of the new direction, the basepoint everywhere else."""
    C = W.cat
    shape2 = A.shape + (1,)
    ar2 = _ar(shape2)
    ob = {}
    for o in ar2.cat.objects:
        ob[o] = A.ob[o[:-1]] if o[-1] == (0, 1) else W.basepoint
    mor = {}
    for m in ar2.cat.morphisms:
        a, b = ar2.cat.src[m], ar2.cat.tgt[m]
        if _is_star(a):
            mor[m] = W.zero_to(ob[b])
        elif _is_star(b):
            mor[m] = W.to_zero(ob[a])
        else:
            # both entries have 01 in the last direction
            mor[m] = A.mor[_ar(A.shape).mor(a[:-1], b[:-1])]
    return SdotDiagram(shape2, ob, mor)


def extension_restrict(W: WaldStruct, B: SdotDiagram) -> SdotDiagram:
    """Inverse of the extension: fix 01 in the last direction."""
    shape = B.shape[:-1]
    ar = _ar(shape)
    ob = {o: B.ob[o + ((0, 1),)] for o in ar.cat.objects}
    mor = {}
    for m in ar.cat.morphisms:
        a, b = ar.cat.src[m], ar.cat.tgt[m]
        mor[m] = B.mor[_ar(B.shape).mor(a + ((0, 1),), b + ((0, 1),))]
    return SdotDiagram(shape, ob, mor)


# -- agreement with the iterated one-variable construction ------------------


def _weq_cat(level: SdotLevel) -> FinCat:
    """The weak-equivalence subcategory of a level as an explicit FinCat;
    composition is componentwise, so the subset is closed under it."""
    C = level.cat
    ct = level.W.cat.compose_table
    mors = sorted(level.weqs, key=_skey)
    src = {m: m[0] for m in mors}
    tgt = {m: m[1] for m in mors}
    by_src = {}
    for m in mors:
        by_src.setdefault(m[0], []).append(m)
    compose = {}
    for f in mors:
        for g in by_src.get(f[1], ()):
            comps = tuple(ct[(u, v)] for u, v in zip(g[2], f[2]))
            compose[(g, f)] = (f[0], g[1], comps)
    return FinCat(C.objects, mors, src, tgt, C.identity, compose)


def level_wald_struct(level: SdotLevel) -> WaldStruct:
    """The levelwise Waldhausen structure on a one-direction level:
    cofibrations have cofibration components on the 0-row and cofibration
    corner maps into the next 0-row entry; weak equivalences are
    componentwise."""
    from .fincat import BasedCat, find_pushout

    W = level.W
    C = W.cat
    (m,) = level.shape
    cofibs = []
    for t in level.cat.morphisms:
        ai, bi, comps = t
        A, B = level.diagrams[ai], level.diagrams[bi]
        ok = True
        for j in range(1, m + 1):
            if level.component(t, ((0, j),)) not in W.cofibrations:
                ok = False
                break
        if ok:
            ar = _ar(level.shape)
            for j in range(2, m + 1):
                f = A.mor[ar.mor(((0, j - 1),), ((0, j),))]
                g = level.component(t, ((0, j - 1),))
                po = find_pushout(C, f, g)
                if po is None:
                    ok = False
                    break
                P, pY, pZ = po
                us = find_mediating(
                    C, P, pY, pZ,
                    B.ob[((0, j),)],
                    level.component(t, ((0, j),)),
                    B.mor[ar.mor(((0, j - 1),), ((0, j),))],
                )
                if len(us) != 1 or us[0] not in W.cofibrations:
                    ok = False
                    break
        if ok:
            cofibs.append(t)
    return WaldStruct(BasedCat(level.cat, level.basepoint), cofibs, level.weqs)


def iterated_agreement(W: WaldStruct, m1: int, m2: int, bound: int = 2) -> Report:
    """Builds the one-variable construction of the one-variable level and
    matches its objects with the two-direction level by uncurrying."""
    rep = Report("iterated")
    if m1 > bound or m2 > bound:
        raise ValueError("sizes exceed the agreement bound")
    # the inner level needs its full morphism category (it is the value
    # category of the outer construction); the outer and joint levels are
    # compared on objects only
    inner = enumerate_sdot(W, (m2,), bound, mors="all")
    Wi = level_wald_struct(inner)
    outer = enumerate_sdot(Wi, (m1,), bound, mors="none")
    both = enumerate_sdot(W, (m1, m2), bound, mors="none")

    ar1 = _ar((m1,))
    ar2 = _ar((m2,))
    arb = _ar((m1, m2))
    hit = {}
    for oi, B in enumerate(outer.diagrams):
        ob, mor = {}, {}
        for o in arb.cat.objects:
            p1, p2 = o
            ob[o] = inner.diagrams[B.ob[(p1,)]].ob[(p2,)]
        good = True
        for m in arb.cat.morphisms:
            a, b = arb.cat.src[m], arb.cat.tgt[m]
            eta = B.mor[ar1.mor((a[0],), (b[0],))]
            comp = inner.component(eta, (a[1],))
            rest = inner.diagrams[B.ob[(b[0],)]].mor[ar2.mor((a[1],), (b[1],))]
            v = W.cat.compose_table.get((rest, comp))
            if v is None:
                good = False
                break
            mor[m] = v
        if not good:
            rep.add("iter.uncurry", "uncurried data not composable", outer=oi)
            continue
        A = SdotDiagram((m1, m2), ob, mor)
        if A.key() not in both.index:
            rep.add("iter.missing", "uncurried diagram missing from the joint level", outer=oi)
            continue
        hit[oi] = both.index[A.key()]
    if len(set(hit.values())) != len(hit):
        rep.add("iter.bijection", "uncurrying not injective")
    if len(outer.diagrams) != len(both.diagrams):
        rep.add(
            "iter.count", "level sizes differ",
            outer=len(outer.diagrams), joint=len(both.diagrams),
        )
    rep.add_info(
        "iter.sizes", "level sizes and matched objects",
        outer=len(outer.diagrams), joint=len(both.diagrams), matched=len(hit),
    )
    return rep


# -- the K-theory level -----------------------------------------------------


def _coface(i, q):
    # the injection [q-1] -> [q] skipping i, as a value tuple
    return tuple(t if t < i else t + 1 for t in range(q))


def _codegen(i, q):
    # the surjection [q+1] -> [q] repeating i
    return tuple(t if t <= i else t - 1 for t in range(q + 2))


def wald_k_level(W: WaldStruct, n: int, d: int, bound: int = 2) -> TruncSSet:
    """The diagonal simplicial set of nerves of the weak-equivalence
    subcategories of the n-direction levels, truncated at d."""
    from .simplicial import nerve

    if n > 2 or d > bound:
        raise ValueError("level parameters exceed the bound")
    levels = {q: enumerate_sdot(W, (q,) * n, bound, mors="weq") for q in range(d + 1)}
    wcats = {q: _weq_cat(levels[q]) for q in range(d + 1)}
    nerves = {q: nerve(wcats[q], d) for q in range(d + 1)}

    simplices = {q: nerves[q].simplices[q] for q in range(d + 1)}
    faces, degens = {}, {}
    for q in range(1, d + 1):
        for i in range(q + 1):
            ob, mor_of = _structure_tables((_coface(i, q),) * n, levels[q], levels[q - 1])
            tab = {}
            for ch in simplices[q]:
                mid = nerves[q].faces[(q, i)][ch]
                if q - 1 == 0:
                    tab[ch] = ob[mid]
                else:
                    tab[ch] = tuple(mor_of(f) for f in mid)
            faces[(q, i)] = tab
    for q in range(0, d):
        for i in range(q + 1):
            ob, mor_of = _structure_tables((_codegen(i, q),) * n, levels[q], levels[q + 1])
            tab = {}
            for ch in simplices[q]:
                mid = nerves[q].degens[(q, i)][ch]
                tab[ch] = tuple(mor_of(f) for f in mid)
            degens[(q, i)] = tab
    base = {}
    for q in range(d + 1):
        b = levels[q].basepoint
        if q == 0:
            base[q] = b
        else:
            base[q] = (wcats[q].identity[b],) * q
    return TruncSSet(d, simplices, faces, degens, base)
