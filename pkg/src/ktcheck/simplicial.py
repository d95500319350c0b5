"""Truncated simplicial sets, the simplicial circle, nerves, and diagonals
of multisimplicial data."""

from __future__ import annotations

import itertools

from .fincat import FinCat
from .report import Report


class TruncSSet:
    """A simplicial set truncated at dimBound.

    simplices[k] lists the k-simplices; faces[(k, i)] maps k-simplices to
    (k-1)-simplices and degens[(k, i)] maps k-simplices to (k+1)-simplices.
    basepoint[k], when present, is a distinguished simplex per dimension.
    """

    def __init__(self, dimBound, simplices, faces, degens, basepoint=None):
        self.dimBound = dimBound
        self.simplices = {k: list(v) for k, v in simplices.items()}
        self.faces = {k: dict(v) for k, v in faces.items()}
        self.degens = {k: dict(v) for k, v in degens.items()}
        self.basepoint = dict(basepoint) if basepoint else {}


def validate_simplicial(X: TruncSSet) -> Report:
    """All simplicial identities that fit under the dimension bound."""
    rep = Report("simplicial")
    d = X.dimBound
    sets = {k: set(X.simplices.get(k, [])) for k in range(d + 1)}

    # structural: tables total and landing in listed simplices
    for k in range(1, d + 1):
        for i in range(k + 1):
            tab = X.faces.get((k, i))
            if tab is None:
                rep.add("structure.face", "missing face table", dim=k, i=i)
                continue
            for x in sets[k]:
                if x not in tab:
                    rep.add("structure.face", "face undefined", dim=k, i=i, simplex=x)
                elif tab[x] not in sets[k - 1]:
                    rep.add("structure.face", "face lands outside level", dim=k, i=i, simplex=x)
    for k in range(0, d):
        for i in range(k + 1):
            tab = X.degens.get((k, i))
            if tab is None:
                rep.add("structure.degen", "missing degeneracy table", dim=k, i=i)
                continue
            for x in sets[k]:
                if x not in tab:
                    rep.add("structure.degen", "degeneracy undefined", dim=k, i=i, simplex=x)
                elif tab[x] not in sets[k + 1]:
                    rep.add("structure.degen", "degeneracy lands outside level", dim=k, i=i, simplex=x)
    if not rep.ok:
        return rep

    fc, dg = X.faces, X.degens
    for k in range(2, d + 1):
        for j in range(k + 1):
            for i in range(j):
                # d_i d_j = d_{j-1} d_i for i < j
                for x in sets[k]:
                    if fc[(k - 1, i)][fc[(k, j)][x]] != fc[(k - 1, j - 1)][fc[(k, i)][x]]:
                        rep.add("identity.dd", "d_i d_j = d_(j-1) d_i fails", dim=k, i=i, j=j, simplex=x)
    for k in range(0, d - 1):
        for i in range(k + 1):
            for j in range(i, k + 1):
                # s_i s_j = s_{j+1} s_i for i <= j
                for x in sets[k]:
                    if dg[(k + 1, i)][dg[(k, j)][x]] != dg[(k + 1, j + 1)][dg[(k, i)][x]]:
                        rep.add("identity.ss", "s_i s_j = s_(j+1) s_i fails", dim=k, i=i, j=j, simplex=x)
    for k in range(0, d):
        for j in range(k + 1):
            for i in range(k + 2):
                for x in sets[k]:
                    y = dg[(k, j)][x]
                    if i == j or i == j + 1:
                        if fc[(k + 1, i)][y] != x:
                            rep.add("identity.ds", "d_i s_j = id fails", dim=k, i=i, j=j, simplex=x)
                    elif i < j:
                        if k >= 1 and fc[(k + 1, i)][y] != dg[(k - 1, j - 1)][fc[(k, i)][x]]:
                            rep.add("identity.ds", "d_i s_j = s_(j-1) d_i fails", dim=k, i=i, j=j, simplex=x)
                    else:
                        if k >= 1 and fc[(k + 1, i)][y] != dg[(k - 1, j)][fc[(k, i - 1)][x]]:
                            rep.add("identity.ds", "d_i s_j = s_j d_(i-1) fails", dim=k, i=i, j=j, simplex=x)

    # basepoint closed under degeneracy
    for k in range(0, d):
        b = X.basepoint.get(k)
        if b is not None:
            if b not in sets[k]:
                rep.add("structure.base", "basepoint not a listed simplex", dim=k)
            elif X.basepoint.get(k + 1) is not None and dg[(k, 0)][b] != X.basepoint[k + 1]:
                rep.add("structure.base", "basepoint not closed under degeneracy", dim=k)
    return rep


# -- the simplicial circle ------------------------------------------------


def is_monotone(beta: tuple) -> bool:
    return all(beta[i] <= beta[i + 1] for i in range(len(beta) - 1))


def circle_map(beta: tuple, m: int) -> tuple:
    """The pointed map <m> -> <n> induced on circle levels by the monotone
    beta: [n] -> [m] (given as its tuple of values).  Element i goes to j
    when beta(j-1) < i <= beta(j), and to the basepoint 0 otherwise."""
    if not is_monotone(beta) or any(not (0 <= b <= m) for b in beta):
        raise ValueError("beta must be monotone into [m]")
    n = len(beta) - 1
    out = [0] * (m + 1)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if beta[j - 1] < i <= beta[j]:
                out[i] = j
                break
    return tuple(out)


def monotone_maps(n: int, m: int):
    """All monotone [n] -> [m], as value tuples, in lexicographic order."""
    return [
        b
        for b in itertools.product(range(m + 1), repeat=n + 1)
        if is_monotone(b)
    ]


def circle_trunc_sset(d: int) -> TruncSSet:
    """Circle levels <q> for q <= d assembled via circle_map of the coface
    and codegeneracy maps."""
    simplices = {q: list(range(q + 1)) for q in range(d + 1)}
    faces, degens = {}, {}
    for q in range(1, d + 1):
        for i in range(q + 1):
            delta = tuple(t if t < i else t + 1 for t in range(q))  # [q-1] -> [q]
            cm = circle_map(delta, q)
            faces[(q, i)] = {x: cm[x] for x in range(q + 1)}
    for q in range(0, d):
        for i in range(q + 1):
            sigma = tuple(t if t <= i else t - 1 for t in range(q + 2))  # [q+1] -> [q]
            cm = circle_map(sigma, q)
            degens[(q, i)] = {x: cm[x] for x in range(q + 1)}
    base = {q: 0 for q in range(d + 1)}
    return TruncSSet(d, simplices, faces, degens, base)


# -- nerves ---------------------------------------------------------------


def nerve(C: FinCat, d: int) -> TruncSSet:
    """Composable chains of morphisms; 0-simplices are objects."""
    simplices = {0: list(C.objects)}
    for k in range(1, d + 1):
        level = []
        for prev in simplices[k - 1]:
            start = prev if k == 1 else C.tgt[prev[-1]]
            for f in C.mors_from(start):
                level.append((f,) if k == 1 else prev + (f,))
        simplices[k] = level
    faces, degens = {}, {}
    for k in range(1, d + 1):
        for i in range(k + 1):
            tab = {}
            for ch in simplices[k]:
                if k == 1:
                    tab[ch] = C.tgt[ch[0]] if i == 0 else C.src[ch[0]]
                elif i == 0:
                    tab[ch] = ch[1:]
                elif i == k:
                    tab[ch] = ch[:-1]
                else:
                    tab[ch] = ch[: i - 1] + (C.compose_table[(ch[i], ch[i - 1])],) + ch[i + 1 :]
            faces[(k, i)] = tab
    for k in range(0, d):
        for i in range(k + 1):
            tab = {}
            for ch in simplices[k]:
                if k == 0:
                    tab[ch] = (C.identity[ch],)
                else:
                    x = C.src[ch[0]] if i == 0 else C.tgt[ch[i - 1]]
                    tab[ch] = ch[:i] + (C.identity[x],) + ch[i:]
            degens[(k, i)] = tab
    return TruncSSet(d, simplices, faces, degens)


# -- multisimplicial data and diagonals -----------------------------------


class MultiSSet:
    """Multisimplicial data in r directions, stored sparsely on the cube of
    multi-indices with entries <= dimBound.

    faces[(qs, dir, i)] and degens[(qs, dir, i)] are per-level tables; the
    face lowers coordinate dir of qs by one, the degeneracy raises it.
    """

    def __init__(self, r, dimBound, levels, faces, degens, basepoint=None):
        self.r = r
        self.dimBound = dimBound
        self.levels = {tuple(k): list(v) for k, v in levels.items()}
        self.faces = {k: dict(v) for k, v in faces.items()}
        self.degens = {k: dict(v) for k, v in degens.items()}
        self.basepoint = dict(basepoint) if basepoint else {}


def diagonal(X: MultiSSet, d: int) -> TruncSSet:
    """Level q is X(q, .., q); faces and degeneracies act simultaneously in
    every direction."""
    simplices = {}
    for q in range(d + 1):
        key = (q,) * X.r
        if key not in X.levels:
            raise ValueError(f"missing multi-index data at {key}")
        simplices[q] = list(X.levels[key])
    faces, degens = {}, {}
    for q in range(1, d + 1):
        for i in range(q + 1):
            tab = {}
            for x in simplices[q]:
                cur = x
                qs = [q] * X.r
                for direction in range(X.r):
                    cur = X.faces[(tuple(qs), direction, i)][cur]
                    qs[direction] -= 1
                tab[x] = cur
            faces[(q, i)] = tab
    for q in range(0, d):
        for i in range(q + 1):
            tab = {}
            for x in simplices[q]:
                cur = x
                qs = [q] * X.r
                for direction in range(X.r):
                    cur = X.degens[(tuple(qs), direction, i)][cur]
                    qs[direction] += 1
                tab[x] = cur
            degens[(q, i)] = tab
    base = {}
    for q in range(d + 1):
        key = (q,) * X.r
        if key in X.basepoint:
            base[q] = X.basepoint[key]
    return TruncSSet(d, simplices, faces, degens, base)
