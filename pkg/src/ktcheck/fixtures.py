"""Shipped fixtures: small pointed categories with enough structure to
exercise every check, plus mutation generators for the negative tests."""

from __future__ import annotations

import itertools

from .fincat import BasedCat, FinCat
from .wald import MultiFunctor

# -- pointed finite sets --------------------------------------------------


def _ps_obj(elems: frozenset) -> str:
    return "*" + "".join(sorted(elems))


def _ps_mor(src: str, tgt: str, images: tuple) -> str:
    # images: tuple of image element (digit or "*") per non-base element of
    # src in sorted order
    return f"{src}>{tgt}|{''.join(images)}"


def pointed_sets_category(N: int) -> BasedCat:
    """Pointed subsets of {*, 1, .., N} and based maps.

    Objects are strings like "*12"; a morphism records its source, target
    and the tuple of images of the non-base elements.
    """
    ground = [str(i) for i in range(1, N + 1)]
    subsets = []
    for r in range(N + 1):
        subsets.extend(frozenset(c) for c in itertools.combinations(ground, r))
    subsets.sort(key=lambda s: (len(s), sorted(s)))
    objects = [_ps_obj(s) for s in subsets]
    carrier = {_ps_obj(s): sorted(s) for s in subsets}

    mors, src, tgt, mapping = [], {}, {}, {}
    for X in objects:
        xs = carrier[X]
        for Y in objects:
            codomain = ["*"] + carrier[Y]
            for images in itertools.product(codomain, repeat=len(xs)):
                m = _ps_mor(X, Y, images)
                mors.append(m)
                src[m], tgt[m] = X, Y
                mapping[m] = dict(zip(xs, images))

    ident = {X: _ps_mor(X, X, tuple(carrier[X])) for X in objects}
    compose = {}
    for f in mors:
        for g in mors:
            if tgt[f] != src[g]:
                continue
            fm, gm = mapping[f], mapping[g]
            images = tuple(
                "*" if fm[e] == "*" else gm[fm[e]] for e in carrier[src[f]]
            )
            compose[(g, f)] = _ps_mor(src[f], tgt[g], images)
    C = FinCat(objects, mors, src, tgt, ident, compose)
    C.mapping = mapping
    C.carrier = carrier
    return BasedCat(C, "*")


def pointed_sets_cofibrations(B: BasedCat) -> list:
    """Injective based maps: non-base elements map injectively into the
    non-base part of the target."""
    C = B.cat
    out = []
    for m in C.morphisms:
        images = list(C.mapping[m].values())
        if "*" not in images and len(set(images)) == len(images):
            out.append(m)
    return out


# -- F2 vector spaces -----------------------------------------------------


def _mat_mor(a: int, b: int, entries: tuple) -> str:
    # entries: b x a matrix flattened row-major
    return f"d{a}>d{b}|{''.join(str(e) for e in entries)}"


def _mat_rank_f2(rows: list[list[int]]) -> int:
    m = [row[:] for row in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                m[r] = [(x + y) % 2 for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def vect_f2_category(N: int) -> BasedCat:
    """Skeleton of finite dimensional F2 vector spaces with dimensions
    0..N; morphisms are matrices over F2."""
    objects = [f"d{a}" for a in range(N + 1)]
    mors, src, tgt, matrix = [], {}, {}, {}
    for a in range(N + 1):
        for b in range(N + 1):
            for entries in itertools.product((0, 1), repeat=a * b):
                m = _mat_mor(a, b, entries)
                mors.append(m)
                src[m], tgt[m] = f"d{a}", f"d{b}"
                matrix[m] = [list(entries[r * a : (r + 1) * a]) for r in range(b)]
    ident = {}
    for a in range(N + 1):
        eye = tuple(1 if r == c else 0 for r in range(a) for c in range(a))
        ident[f"d{a}"] = _mat_mor(a, a, eye)
    compose = {}
    for f in mors:
        for g in mors:
            if tgt[f] != src[g]:
                continue
            A, Bm = matrix[f], matrix[g]
            a = len(A[0]) if A else int(src[f][1:])
            rows_out = len(Bm)
            inner = len(A)
            prod = tuple(
                sum(Bm[r][k] * A[k][c] for k in range(inner)) % 2
                for r in range(rows_out)
                for c in range(a)
            )
            compose[(g, f)] = _mat_mor(a, rows_out, prod)
    C = FinCat(objects, mors, src, tgt, ident, compose)
    C.matrix = matrix
    return BasedCat(C, "d0")


def smash_multifunctor(B: BasedCat, order=None) -> MultiFunctor:
    """Smash product on pointed sets, landing in the canonical object of
    the right size; None on tuples whose product size exceeds the fixture.
    order swaps the slots when given as (1, 0)."""
    C = B.cat
    order = tuple(order) if order is not None else (0, 1)
    N = max(len(c) for c in C.carrier.values())

    def pairs(X, Y):
        return [
            (x, y) for x in C.carrier[X] for y in C.carrier[Y]
        ]

    def ob_fun(xs):
        X, Y = xs[order[0]], xs[order[1]]
        p = len(C.carrier[X]) * len(C.carrier[Y])
        if p > N:
            return None
        return _ps_obj(frozenset(str(i) for i in range(1, p + 1)))

    def mor_fun(fs):
        f, g = fs[order[0]], fs[order[1]]
        S = ob_fun((C.src[fs[0]], C.src[fs[1]]))
        T = ob_fun((C.tgt[fs[0]], C.tgt[fs[1]]))
        if S is None or T is None:
            return None
        tgt_pairs = pairs(C.tgt[f], C.tgt[g])
        fm, gm = C.mapping[f], C.mapping[g]
        images = []
        for (x, y) in pairs(C.src[f], C.src[g]):
            fx, gy = fm[x], gm[y]
            if fx == "*" or gy == "*":
                images.append("*")
            else:
                images.append(str(tgt_pairs.index((fx, gy)) + 1))
        return _ps_mor(S, T, tuple(images))

    return MultiFunctor([C, C], C, ob_fun, mor_fun)


def tensor_multifunctor(B: BasedCat, order=None) -> MultiFunctor:
    """Tensor product of F2 vector spaces via the Kronecker product of
    matrices; None above the dimension bound.  order swaps the slots when
    given as (1, 0)."""
    C = B.cat
    order = tuple(order) if order is not None else (0, 1)
    N = max(int(o[1:]) for o in C.objects)

    def dim(X):
        return int(X[1:])

    def ob_fun(xs):
        p = dim(xs[order[0]]) * dim(xs[order[1]])
        return None if p > N else f"d{p}"

    def mor_fun(fs):
        f, g = fs[order[0]], fs[order[1]]
        S = ob_fun((C.src[fs[0]], C.src[fs[1]]))
        T = ob_fun((C.tgt[fs[0]], C.tgt[fs[1]]))
        if S is None or T is None:
            return None
        A, Bm = C.matrix[f], C.matrix[g]
        a, a2 = dim(C.src[f]), dim(C.tgt[f])
        b, b2 = dim(C.src[g]), dim(C.tgt[g])
        entries = tuple(
            A[i][j] * Bm[kk][ll]
            for i in range(a2)
            for kk in range(b2)
            for j in range(a)
            for ll in range(b)
        )
        return _mat_mor(a * b, a2 * b2, entries)

    return MultiFunctor([C, C], C, ob_fun, mor_fun)


def vect_f2_cofibrations(B: BasedCat) -> list:
    C = B.cat
    out = []
    for m in C.morphisms:
        a = int(C.src[m][1:])
        if _mat_rank_f2(C.matrix[m]) == a:
            out.append(m)
    return out
