"""Explicit finite categories given by tables, plus the searches every other
module computes with: functors, natural transformations, products, arrow
categories, pushouts by universal-property search, iso classes and
connected components."""

from __future__ import annotations

import itertools

from .report import Report


def _skey(x):
    # deterministic sort key for heterogeneous identifiers
    return repr(x)


class FinCat:
    """A finite category as explicit tables.

    Morphisms are globally identified; composition is one flat partial map
    (g, f) -> g.f defined exactly when target(f) = source(g).
    """

    def __init__(self, objects, morphisms, src, tgt, identity, compose):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.identity = dict(identity)
        # a non-dict mapping is kept as-is so large categories can compose
        # lazily; it must support __getitem__ and get
        self.compose_table = dict(compose) if isinstance(compose, dict) else compose
        self._hom = None
        self._from = None
        self._inverse = None
        self._iso_classes = None
        self._pushout_cache = {}
        self._mediating_cache = {}
        self._post_index = {}

    # -- basic accessors -------------------------------------------------

    def comp(self, g, f):
        """g after f; KeyError when not composable."""
        return self.compose_table[(g, f)]

    def id_of(self, x):
        return self.identity[x]

    def _build_hom(self):
        hom = {}
        out = {}
        for f in self.morphisms:
            hom.setdefault((self.src[f], self.tgt[f]), []).append(f)
            out.setdefault(self.src[f], []).append(f)
        for v in hom.values():
            v.sort(key=_skey)
        for v in out.values():
            v.sort(key=_skey)
        self._hom, self._from = hom, out

    def hom(self, x, y):
        if self._hom is None:
            self._build_hom()
        return self._hom.get((x, y), [])

    def mors_from(self, x):
        if self._from is None:
            self._build_hom()
        return self._from.get(x, [])

    def sorted_objects(self):
        return sorted(self.objects, key=_skey)

    # -- isomorphisms ----------------------------------------------------

    def _build_inverses(self):
        inv = {}
        ct = self.compose_table
        for f in self.morphisms:
            x, y = self.src[f], self.tgt[f]
            idx, idy = self.identity.get(x), self.identity.get(y)
            for g in self.hom(y, x):
                if ct.get((g, f)) == idx and ct.get((f, g)) == idy:
                    inv[f] = g
                    break
        self._inverse = inv

    def is_iso(self, f):
        if self._inverse is None:
            self._build_inverses()
        return f in self._inverse

    def inverse(self, f):
        if self._inverse is None:
            self._build_inverses()
        return self._inverse[f]

    def isos(self, x, y):
        return [f for f in self.hom(x, y) if self.is_iso(f)]

    def post_index(self, f):
        """Index of composites: maps h to the list of u with u.f = h, over
        all u leaving target(f)."""
        d = self._post_index.get(f)
        if d is None:
            d = {}
            ct = self.compose_table
            for u in self.mors_from(self.tgt[f]):
                d.setdefault(ct[(u, f)], []).append(u)
            self._post_index[f] = d
        return d


def validate_fincat(C: FinCat) -> Report:
    """Exhaustive check of the category laws; empty report iff C is a
    category with well-formed tables."""
    rep = Report("fincat")
    obset, morset = set(C.objects), set(C.morphisms)
    for f in C.morphisms:
        if C.src.get(f) not in obset or C.tgt.get(f) not in obset:
            rep.add("structure.endpoints", "morphism with dangling endpoint", mor=f)
    for x in C.objects:
        i = C.identity.get(x)
        if i not in morset:
            rep.add("structure.identity", "object without listed identity", obj=x)
        elif C.src[i] != x or C.tgt[i] != x:
            rep.add("structure.identity", "identity with wrong endpoints", obj=x, mor=i)
    if not rep.ok:
        return rep

    ct = C.compose_table
    for (g, f), h in ct.items():
        if g not in morset or f not in morset or h not in morset:
            rep.add("structure.compose", "composition entry with dangling id", g=g, f=f, gf=h)
        elif C.tgt[f] != C.src[g]:
            rep.add("structure.compose", "composition defined on non-composable pair", g=g, f=f)
        elif C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
            rep.add("law.closure", "composite has wrong endpoints", g=g, f=f, gf=h)
    for f in C.morphisms:
        for g in C.mors_from(C.tgt[f]):
            if (g, f) not in ct:
                rep.add("structure.compose", "composable pair missing from table", g=g, f=f)
    if not rep.ok:
        return rep

    for f in C.morphisms:
        if ct[(f, C.identity[C.src[f]])] != f:
            rep.add("law.identity", "right identity law fails", mor=f)
        if ct[(C.identity[C.tgt[f]], f)] != f:
            rep.add("law.identity", "left identity law fails", mor=f)
    for (g, f), gf in ct.items():
        for h in C.mors_from(C.tgt[g]):
            if ct[(h, gf)] != ct[(ct[(h, g)], f)]:
                rep.add("law.assoc", "associativity fails", h=h, g=g, f=f)
    return rep


# -- functors and natural transformations --------------------------------


class Functor:
    def __init__(self, source: FinCat, target: FinCat, ob: dict, mor: dict):
        self.source = source
        self.target = target
        self.ob = dict(ob)
        # non-dict mappings (lazy tables for large levels) pass through
        self.mor = dict(mor) if isinstance(mor, dict) else mor

    @staticmethod
    def identity(C: FinCat) -> "Functor":
        return Functor(C, C, {x: x for x in C.objects}, {f: f for f in C.morphisms})

    def on_obj(self, x):
        return self.ob[x]

    def on_mor(self, f):
        return self.mor[f]

    def then(self, other: "Functor") -> "Functor":
        """self followed by other."""
        return Functor(
            self.source,
            other.target,
            {x: other.ob[y] for x, y in self.ob.items()},
            {f: other.mor[g] for f, g in self.mor.items()},
        )

    def validate(self) -> Report:
        rep = Report("functor")
        S, T = self.source, self.target
        for x in S.objects:
            if x not in self.ob or self.ob[x] not in set(T.objects):
                rep.add("functor.obj", "object image missing or dangling", obj=x)
        for f in S.morphisms:
            if f not in self.mor:
                rep.add("functor.mor", "morphism image missing", mor=f)
        if not rep.ok:
            return rep
        for f in S.morphisms:
            Ff = self.mor[f]
            if T.src[Ff] != self.ob[S.src[f]] or T.tgt[Ff] != self.ob[S.tgt[f]]:
                rep.add("functor.endpoints", "image endpoints wrong", mor=f)
        for x in S.objects:
            if self.mor[S.identity[x]] != T.identity[self.ob[x]]:
                rep.add("functor.identity", "identity not preserved", obj=x)
        for (g, f), gf in S.compose_table.items():
            if T.compose_table.get((self.mor[g], self.mor[f])) != self.mor[gf]:
                rep.add("functor.compose", "composite not preserved", g=g, f=f)
        return rep

    def equals(self, other: "Functor") -> bool:
        return self.ob == other.ob and self.mor == other.mor


class NatTrans:
    def __init__(self, source: Functor, target: Functor, components: dict):
        self.source = source
        self.target = target
        self.components = dict(components)

    def validate(self) -> Report:
        rep = Report("nattrans")
        F, G = self.source, self.target
        C, D = F.source, F.target
        for x in C.objects:
            a = self.components.get(x)
            if a is None:
                rep.add("nat.component", "missing component", obj=x)
                continue
            if D.src[a] != F.ob[x] or D.tgt[a] != G.ob[x]:
                rep.add("nat.component", "component endpoints wrong", obj=x)
        if not rep.ok:
            return rep
        for f in C.morphisms:
            x, y = C.src[f], C.tgt[f]
            left = D.compose_table.get((self.components[y], F.mor[f]))
            right = D.compose_table.get((G.mor[f], self.components[x]))
            if left != right or left is None:
                rep.add("nat.square", "naturality square fails", mor=f)
        return rep


# -- standard constructions ----------------------------------------------


def terminal_category() -> FinCat:
    return FinCat(["*"], ["id*"], {"id*": "*"}, {"id*": "*"}, {"*": "id*"}, {("id*", "id*"): "id*"})


def chain_category(m: int) -> FinCat:
    """The poset 0 <= 1 <= ... <= m as a category; morphisms are pairs."""
    objs = list(range(m + 1))
    mors = [(i, j) for i in objs for j in objs if i <= j]
    src = {f: f[0] for f in mors}
    tgt = {f: f[1] for f in mors}
    ident = {i: (i, i) for i in objs}
    compose = {
        ((b, c), (a, b2)): (a, c) for (b, c) in mors for (a, b2) in mors if b == b2
    }
    return FinCat(objs, mors, src, tgt, ident, compose)


def arrow_category(m: int) -> FinCat:
    """Ar[m]: objects are pairs (i, j) with 0 <= i <= j <= m; a unique
    morphism (i, j) -> (i', j') exactly when i <= i' and j <= j'."""
    objs = [(i, j) for i in range(m + 1) for j in range(i, m + 1)]
    mors, src, tgt = [], {}, {}
    for a in objs:
        for b in objs:
            if a[0] <= b[0] and a[1] <= b[1]:
                mors.append((a, b))
                src[(a, b)] = a
                tgt[(a, b)] = b
    ident = {a: (a, a) for a in objs}
    compose = {}
    for (b1, c) in mors:
        for (a, b2) in mors:
            if b2 == b1:
                compose[((b1, c), (a, b2))] = (a, c)
    return FinCat(objs, mors, src, tgt, ident, compose)


def product_category(Cs: list[FinCat]) -> FinCat:
    """Objects and morphisms are tuples, componentwise structure; the empty
    product is the terminal category with object ()."""
    objs = [tuple(p) for p in itertools.product(*[C.objects for C in Cs])]
    mors = [tuple(p) for p in itertools.product(*[C.morphisms for C in Cs])]
    src = {m: tuple(C.src[f] for C, f in zip(Cs, m)) for m in mors}
    tgt = {m: tuple(C.tgt[f] for C, f in zip(Cs, m)) for m in mors}
    ident = {x: tuple(C.identity[c] for C, c in zip(Cs, x)) for x in objs}
    compose = {}
    for g in mors:
        for f in mors:
            if src[g] == tgt[f]:
                compose[(g, f)] = tuple(
                    C.compose_table[(gc, fc)] for C, gc, fc in zip(Cs, g, f)
                )
    return FinCat(objs, mors, src, tgt, ident, compose)


class ArTuple:
    """The product Ar[m1] x ... x Ar[mn]; objects are n-tuples of pairs
    (i_k, j_k). The empty shape yields the terminal category."""

    def __init__(self, shape: tuple):
        self.shape = tuple(shape)
        self.cat = product_category([arrow_category(m) for m in self.shape])

    def objects(self):
        return self.cat.objects

    def mor(self, a, b):
        """The unique morphism a -> b, or None."""
        if all(p[0] <= q[0] and p[1] <= q[1] for p, q in zip(a, b)):
            return tuple((p, q) for p, q in zip(a, b))
        return None


# -- pushouts by universal-property search --------------------------------


def commuting_cocones(C: FinCat, f, g):
    """All (Q, qY, qZ) with qY.f = qZ.g for the span Y <-f- X -g-> Z,
    in deterministic order."""
    ct = C.compose_table
    Y, Z = C.tgt[f], C.tgt[g]
    out = []
    for Q in C.sorted_objects():
        by_leg = {}
        for qZ in C.hom(Z, Q):
            by_leg.setdefault(ct[(qZ, g)], []).append(qZ)
        for qY in C.hom(Y, Q):
            for qZ in by_leg.get(ct[(qY, f)], ()):
                out.append((Q, qY, qZ))
    return out


def _is_universal(C, cand, cocones):
    P, pY, pZ = cand
    ct = C.compose_table
    idx = C.post_index(pY)
    for (Q, qY, qZ) in cocones:
        # u.pY = qY already forces u: P -> Q
        n = 0
        for u in idx.get(qY, ()):
            if ct[(u, pZ)] == qZ:
                n += 1
                if n > 1:
                    break
        if n != 1:
            return False
    return True


def pushout_cocones(C: FinCat, f, g):
    """Every cocone of the span Y <-f- X -g-> Z satisfying the universal
    property, in deterministic order (the first element is the canonical
    representative used by find_pushout)."""
    key = ("all", f, g)
    if key in C._pushout_cache:
        return C._pushout_cache[key]
    cocones = span_cocones(C, f, g)
    valid = [c for c in cocones if _is_universal(C, c, cocones)]
    C._pushout_cache[key] = valid
    return valid


def span_cocones(C: FinCat, f, g):
    """Cached commuting cocones of the span."""
    key = ("cones", f, g)
    if key not in C._pushout_cache:
        C._pushout_cache[key] = commuting_cocones(C, f, g)
    return C._pushout_cache[key]


def is_pushout_square(C: FinCat, f, g, P, pY, pZ) -> bool:
    """Whether the given cocone of the span Y <-f- X -g-> Z is universal."""
    key = ("sq", f, g, P, pY, pZ)
    if key not in C._pushout_cache:
        ct = C.compose_table
        ok = ct.get((pY, f)) is not None and ct[(pY, f)] == ct.get((pZ, g))
        if ok:
            ok = _is_universal(C, (P, pY, pZ), span_cocones(C, f, g))
        C._pushout_cache[key] = ok
    return C._pushout_cache[key]


def find_pushout(C: FinCat, f, g):
    """The canonical pushout cocone (P, Y->P, Z->P) of Y <-f- X -g-> Z, or
    None when no object of C satisfies the universal property.  Determinism:
    candidates are scanned by sorted apex identifier, then sorted legs."""
    key = ("one", f, g)
    if key in C._pushout_cache:
        return C._pushout_cache[key]
    result = None
    if ("all", f, g) in C._pushout_cache:
        valid = C._pushout_cache[("all", f, g)]
        result = valid[0] if valid else None
    else:
        cocones = span_cocones(C, f, g)
        for cand in cocones:
            if _is_universal(C, cand, cocones):
                result = cand
                break
    C._pushout_cache[key] = result
    return result


def find_mediating(C: FinCat, P, pY, pZ, Q, qY, qZ):
    """The morphisms u: P -> Q with u.pY = qY and u.pZ = qZ (typically the
    unique mediating morphism out of a pushout)."""
    key = (P, pY, pZ, Q, qY, qZ)
    if key in C._mediating_cache:
        return C._mediating_cache[key]
    ct = C.compose_table
    out = [u for u in C.post_index(pY).get(qY, ()) if ct[(u, pZ)] == qZ]
    C._mediating_cache[key] = out
    return out


# -- object partitions ---------------------------------------------------


def iso_classes(C: FinCat):
    """Partition of objects under isomorphism, as a sorted list of sorted
    lists."""
    if C._iso_classes is not None:
        return C._iso_classes
    parent = {x: x for x in C.objects}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for f in C.morphisms:
        if C.is_iso(f):
            ra, rb = find(C.src[f]), find(C.tgt[f])
            if ra != rb:
                parent[ra] = rb
    groups = {}
    for x in C.objects:
        groups.setdefault(find(x), []).append(x)
    out = sorted((sorted(g, key=_skey) for g in groups.values()), key=lambda g: _skey(g[0]))
    C._iso_classes = out
    return out


def connected_components(C: FinCat):
    """Partition of objects under the equivalence generated by the
    existence of a morphism."""
    parent = {x: x for x in C.objects}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for f in C.morphisms:
        ra, rb = find(C.src[f]), find(C.tgt[f])
        if ra != rb:
            parent[ra] = rb
    groups = {}
    for x in C.objects:
        groups.setdefault(find(x), []).append(x)
    return sorted((sorted(g, key=_skey) for g in groups.values()), key=lambda g: _skey(g[0]))


# -- based categories, wedge and smash -----------------------------------


class BasedCat:
    def __init__(self, cat: FinCat, base):
        if base not in set(cat.objects):
            raise ValueError("base object not in category")
        self.cat = cat
        self.base = base


def _wedge_of_based(Cs: list[BasedCat]) -> BasedCat:
    # Disjoint union with all base objects identified.  Gluing forces
    # formal composites (g after f) whenever f ends at the base in one
    # component and g leaves it in another; those close at word length two
    # provided no base object carries a non-identity endomorphism, which is
    # the supported shape.
    BASE = "*wedge*"
    for B in Cs:
        for e in B.cat.hom(B.base, B.base):
            if e != B.cat.identity[B.base]:
                raise ValueError("wedge undefined: base has non-identity endomorphisms")
    objs = [BASE]
    obmap = {}
    for k, B in enumerate(Cs):
        for x in B.cat.objects:
            obmap[(k, x)] = BASE if x == B.base else (k, x)
            if x != B.base:
                objs.append((k, x))
    mors = [("id", BASE)]
    src = {("id", BASE): BASE}
    tgt = {("id", BASE): BASE}
    ident = {BASE: ("id", BASE)}
    for k, B in enumerate(Cs):
        for f in B.cat.morphisms:
            if f == B.cat.identity[B.base]:
                continue
            m = (k, f)
            mors.append(m)
            src[m] = obmap[(k, B.cat.src[f])]
            tgt[m] = obmap[(k, B.cat.tgt[f])]
    into_base = [m for m in mors if m != ("id", BASE) and tgt[m] == BASE]
    out_of_base = [m for m in mors if m != ("id", BASE) and src[m] == BASE]
    for f in into_base:
        for g in out_of_base:
            if f[0] != g[0]:
                m = ("c", g, f)
                mors.append(m)
                src[m] = src[f]
                tgt[m] = tgt[g]
    for x in objs:
        if x != BASE:
            k, c = x
            ident[x] = (k, Cs[k].cat.identity[c])

    def norm(g, f):
        # the word g.f reduced to a component morphism or a formal pair
        if g == ("id", BASE):
            return f
        if f == ("id", BASE):
            return g
        if g[0] == "c":
            return norm(g[1], norm(g[2], f))
        if f[0] == "c":
            return norm(norm(g, f[1]), f[2])
        if g[0] == f[0]:
            k = g[0]
            gf = Cs[k].cat.compose_table[(g[1], f[1])]
            if gf == Cs[k].cat.identity[Cs[k].base]:
                return ("id", BASE)
            return (k, gf)
        return ("c", g, f)

    compose = {}
    for g in mors:
        for f in mors:
            if tgt[f] == src[g]:
                gf = norm(g, f)
                if gf not in src:
                    raise ValueError("wedge composition did not close")
                compose[(g, f)] = gf
    return BasedCat(FinCat(objs, mors, src, tgt, ident, compose), BASE)


def _smash_of_based(Cs: list[BasedCat]) -> BasedCat:
    # Product with every object having a base coordinate collapsed to one
    # base object; morphisms factoring through a collapsed object become a
    # single zero morphism per hom-set (quotient by the two-sided ideal).
    P = product_category([B.cat for B in Cs])
    BASE = "*smash*"
    collapsed = {
        x for x in P.objects if any(c == B.base for c, B in zip(x, Cs))
    }

    def co(x):
        return BASE if x in collapsed else x

    objs = [BASE] + sorted((x for x in P.objects if x not in collapsed), key=_skey)

    # the ideal: morphisms factoring through a collapsed object
    ideal = {f for f in P.morphisms if P.src[f] in collapsed or P.tgt[f] in collapsed}
    for (g, h), gh in P.compose_table.items():
        if P.tgt[h] in collapsed:
            ideal.add(gh)

    def cm(f):
        a, b = co(P.src[f]), co(P.tgt[f])
        if f in ideal:
            return ("id", BASE) if a == b == BASE else ("zero", a, b)
        return ("m", f)

    mors = {("id", BASE)}
    src = {("id", BASE): BASE}
    tgt = {("id", BASE): BASE}
    mmap = {}
    for f in P.morphisms:
        m = cm(f)
        mmap[f] = m
        mors.add(m)
        src[m] = co(P.src[f])
        tgt[m] = co(P.tgt[f])
    ident = {BASE: ("id", BASE)}
    for x in objs:
        if x != BASE:
            ident[x] = mmap[P.identity[x]]
    compose = {}
    for (g, f), gf in P.compose_table.items():
        compose[(mmap[g], mmap[f])] = mmap[gf]
    # composable class pairs with no composable representatives involve a
    # zero morphism; their composite is zero
    for g in sorted(mors, key=_skey):
        for f in sorted(mors, key=_skey):
            if tgt[f] == src[g] and (g, f) not in compose:
                a, b = src[f], tgt[g]
                compose[(g, f)] = ("id", BASE) if a == b == BASE else ("zero", a, b)
                mors.add(compose[(g, f)])
                src[compose[(g, f)]] = a
                tgt[compose[(g, f)]] = b
    return BasedCat(FinCat(objs, sorted(mors, key=_skey), src, tgt, ident, compose), BASE)


def based_wedge_smash(Cs: list[BasedCat], mode: str) -> BasedCat:
    if mode == "wedge":
        return _wedge_of_based(Cs)
    if mode == "smash":
        return _smash_of_based(Cs)
    raise ValueError(f"unknown mode {mode!r}")
