"""The comparison functor from system categories to the levels of the
iterated construction: entrywise object formula, the four-step morphism
composites, naturality in the tuple indexing category, compatibility
with multifunctors and their transformations, and component-level and
class-group diagnostics."""

from __future__ import annotations

import itertools

from .fincat import ArTuple, FinCat, Functor, NatTrans
from .report import Report
from .sdot import (
    SdotDiagram,
    _restrict_diagram,
    enumerate_sdot,
    extension_iso,
    permute_level,
    sdot_structure_map,
    validate_sdot,
)
from .segal import (
    SegalSystem,
    _put,
    context_tuples,
    enumerate_segal,
    reindex_system,
    segal_extension_iso,
    segal_functoriality,
    segal_permute,
)
from .simplicial import circle_map, monotone_maps
from .wald import MultiFunctor, SMCStruct, WaldStruct, lambda_smc


def interval(i: int, j: int) -> frozenset:
    """The basepoint-free subset {i+1, ..., j} of <m>."""
    return frozenset(range(i + 1, j + 1))


def entry_tuple(o):
    """The tuple of subsets read off an index entry of pairs."""
    return tuple(interval(i, j) for (i, j) in o)


class PhiResult:
    def __init__(self, system, diagram, report):
        self.system = system
        self.diagram = diagram
        self.report = report

    @property
    def ok(self):
        return self.report.ok


def _coord_step(S: SMCStruct, sys: SegalSystem, base, k, i, j, i2, j2, rep):
    """The composite C_(i,j] -> C_(i',j'] in slot k with the other slots
    frozen at base: include into the wedge with C_(j,j'], glue, unglue
    along the other split, project onto C_(i',j']."""
    C = S.cat
    Tij, Tjj2 = interval(i, j), interval(j, j2)
    Tii2, Ti2j2 = interval(i, i2), interval(i2, j2)
    Tij2 = interval(i, j2)
    X = sys.cvals[_put(base, k, Tij)]
    Y = sys.cvals[_put(base, k, Tjj2)]
    A = sys.cvals[_put(base, k, Tii2)]
    B = sys.cvals[_put(base, k, Ti2j2)]
    inc = S.incl1(X, Y)
    p2 = S.proj2(A, B)
    if inc is None or p2 is None:
        rep.add_indeterminate(
            "phi.bounded", "wedge for a morphism composite out of bound",
            slot=k, move=[[i, j], [i2, j2]],
        )
        return None
    glue = sys.rho[(_put(base, k, Tij2), k, Tij, Tjj2)]
    unglue = C.inverse(sys.rho[(_put(base, k, Tij2), k, Tii2, Ti2j2)])
    return C.comp(p2, C.comp(unglue, C.comp(glue, inc)))


def _phi_mor(S: SMCStruct, sys: SegalSystem, m, order, rep):
    """The image of an index morphism, applying the slot moves in the
    given order."""
    C = S.cat
    src = tuple(p for p, _ in m)
    cur = list(src)
    out = C.identity[sys.cvals[entry_tuple(src)]]
    for k in order:
        (i, j), (i2, j2) = m[k]
        if (i, j) == (i2, j2):
            continue
        base = entry_tuple(tuple(cur))
        step = _coord_step(S, sys, base, k, i, j, i2, j2, rep)
        if step is None:
            return None
        out = C.comp(step, out)
        cur[k] = (i2, j2)
    return out


def phi_object(S: SMCStruct, sys: SegalSystem, validate: bool = True) -> PhiResult:
    """The functor-on-objects: the diagram with entry C at the tuple of
    half-open subsets, morphisms by slotwise composites; factorization
    independence across slot orders is checked, not assumed."""
    rep = Report("phi")
    W = S.wald
    shape = sys.context
    ar = ArTuple(shape)
    ob = {o: sys.cvals[entry_tuple(o)] for o in ar.cat.objects}
    mor = {}
    for m in ar.cat.morphisms:
        moving = [k for k in range(len(shape)) if m[k][0] != m[k][1]]
        f = _phi_mor(S, sys, m, range(len(shape)), rep)
        if f is None:
            return PhiResult(sys, None, rep)
        if len(moving) >= 2:
            orders = (
                itertools.permutations(moving)
                if len(moving) <= 3
                else [tuple(moving), tuple(reversed(moving))]
            )
            for order in orders:
                g = _phi_mor(S, sys, m, order, rep)
                if g != f:
                    rep.add(
                        "phi.factorization", "slot orders disagree",
                        mor=[list(map(list, p)) for p in m], order=list(order),
                    )
        mor[m] = f
    out = SdotDiagram(shape, ob, mor)
    if validate:
        sub = validate_sdot(out, W)
        for e in sub.failures:
            rep.add("phi.sdot", "image fails a level condition", inner=e)
        for e in sub.indeterminates:
            rep.add_indeterminate("phi.bounded", "image condition out of bound", inner=e)
    return PhiResult(sys, out, rep)


def _diagram_functor(W: WaldStruct, A: SdotDiagram) -> Functor:
    ar = ArTuple(A.shape)
    return Functor(ar.cat, W.cat, A.ob, A.mor)


def phi_morphism(S: SMCStruct, src: PhiResult, tgt: PhiResult, components) -> NatTrans:
    """The transformation between two images with the stated entrywise
    components: a mapping from subset tuples to morphisms of the base."""
    W = S.wald
    comps = {
        o: components[entry_tuple(o)]
        for o in ArTuple(src.diagram.shape).cat.objects
    }
    return NatTrans(
        _diagram_functor(W, src.diagram), _diagram_functor(W, tgt.diagram), comps
    )


def phi_functor(S: SMCStruct, source, target) -> Functor:
    """The comparison as a functor between enumerated levels with the
    same context; raises if an image diagram is missing from the target
    level."""
    W = S.wald
    ob = {}
    for idx, sys in enumerate(source.systems):
        res = phi_object(S, sys, validate=False)
        if res.diagram is None:
            raise ValueError(f"image out of bound for system {idx}")
        key = res.diagram.key()
        if key not in target.index:
            raise ValueError(f"image diagram missing from target level: {idx}")
        ob[idx] = target.index[key]
    mor = {}
    for f in source.cat.morphisms:
        comps = tuple(
            source.component(f, entry_tuple(e)) for e in target.free
        )
        mor[f] = (ob[f[0]], ob[f[1]], comps)
    return Functor(source.cat, target.cat, ob, mor)


# -- naturality in the indexing category -----------------------------------


def _preimage_identity_ok(b, m):
    """(beta*)^{-1}(i, j] = (beta(i), beta(j)] for the circle map of a
    monotone b: [n] -> [m]."""
    n = len(b) - 1
    cm = circle_map(b, m)
    for i in range(n + 1):
        for j in range(i, n + 1):
            pre = frozenset(s for s in range(1, m + 1) if cm[s] in interval(i, j))
            if pre != interval(b[i], b[j]):
                return False
    return True


def check_e_naturality(W: WaldStruct, R: int = 2, D: int = 2, mors: str = "weq") -> Report:
    """Commutation of the comparison with the generator morphisms of the
    tuple indexing category inside the window: slot appends on up to two
    slots, both permutations of two slots, and all slotwise monotone maps
    between [1] and [2]."""
    from .ecat import _sdot_extension_functor, _segal_extension_functor

    rep = Report("e-naturality")
    S = lambda_smc(W)

    seg = {}
    sd = {}

    def levels(ctx):
        if ctx not in seg:
            seg[ctx] = enumerate_segal(S, ctx, mors=mors)
            sd[ctx] = enumerate_sdot(W, ctx, mors=mors)
        return seg[ctx], sd[ctx]

    phis = {}

    def phi(ctx):
        if ctx not in phis:
            phis[ctx] = phi_functor(S, seg[ctx], sd[ctx])
        return phis[ctx]

    def square(name, ctx1, ctx2, f_seg, f_sd):
        lhs = f_seg.then(phi(ctx2))
        rhs = phi(ctx1).then(f_sd)
        if not lhs.equals(rhs):
            bad = next(
                (x for x in lhs.ob if lhs.ob[x] != rhs.ob[x]), None
            )
            rep.add(
                "e-nat.square", "comparison square fails", gen=name,
                source=list(ctx1), target=list(ctx2), obj=bad,
            )

    # slot appends
    appends = [()] + [(m,) for m in range(1, min(D, 2) + 1)]
    for ctx in appends:
        if len(ctx) + 1 > R:
            break
        ctx2 = ctx + (1,)
        l1, d1 = levels(ctx)
        l2, d2 = levels(ctx2)
        square(
            f"append@{ctx}", ctx, ctx2,
            _segal_extension_functor(S, l1, l2),
            _sdot_extension_functor(W, d1, d2),
        )

    # both permutations of two slots
    if R >= 2:
        for ctx in [(1, 1), (2, 1)]:
            if max(ctx) > D:
                continue
            for sigma in [(0, 1), (1, 0)]:
                ctx2 = tuple(ctx[s] for s in sigma)
                l1, d1 = levels(ctx)
                l2, d2 = levels(ctx2)
                square(
                    f"permute{sigma}@{ctx}", ctx, ctx2,
                    segal_permute(sigma, l1, l2),
                    permute_level(sigma, W, d1, d2),
                )

    # slotwise monotone maps between [1] and [2], plus one mixed-slot case
    singles = []
    if D >= 2:
        singles += [((b,), (2,), (1,)) for b in monotone_maps(1, 2)]
        singles += [((b,), (1,), (2,)) for b in monotone_maps(2, 1)]
    singles += [((b,), (1,), (1,)) for b in monotone_maps(1, 1)]
    if R >= 2 and D >= 2:
        singles += [
            ((b, (0, 1)), (2, 1), (1, 1)) for b in monotone_maps(1, 2)
        ]
    for betas, ctx1, ctx2 in singles:
        for b, m in zip(betas, ctx1):
            if not _preimage_identity_ok(b, m):
                rep.add("e-nat.preimage", "interval preimage identity fails", map=list(b))
        l1, d1 = levels(ctx1)
        l2, d2 = levels(ctx2)
        pointed = tuple(circle_map(b, m) for b, m in zip(betas, ctx1))
        square(
            f"beta{betas}@{ctx1}", ctx1, ctx2,
            segal_functoriality(pointed, l1, l2),
            sdot_structure_map(betas, W, d1, d2),
        )
    return rep


# -- multifunctors and their transformations -------------------------------


def _distribute(S: SMCStruct, F: MultiFunctor, xs, k, X, Y):
    """The canonical map F(..., X, ...) v F(..., Y, ...) ->
    F(..., X v Y, ...) mediated by the images of the two inclusions;
    None out of bound."""
    C = S.cat
    XY = S.ob(X, Y)
    if XY is None:
        return None
    left = F.ob(_put(xs, k, X))
    right = F.ob(_put(xs, k, Y))
    i1, i2 = S.incl1(X, Y), S.incl2(X, Y)
    if left is None or right is None or i1 is None or i2 is None:
        return None
    idm = [C.identity[x] for x in xs]
    f1 = F.mor(tuple(idm[:k] + [i1] + idm[k + 1 :]))
    f2 = F.mor(tuple(idm[:k] + [i2] + idm[k + 1 :]))
    Q = F.ob(_put(xs, k, XY))
    if f1 is None or f2 is None or Q is None:
        return None
    return S._mediate(left, right, Q, f1, f2)


def multifunctor_system(S: SMCStruct, F: MultiFunctor, systems):
    """The induced system on the concatenated context: entries are F of
    the blockwise entries, gluings are F of the blockwise gluing after
    the distributivity map.  Returns (system, report); out-of-bound data
    leaves gaps recorded as indeterminate."""
    rep = Report("multiphi")
    C = S.cat
    context = tuple(x for A in systems for x in A.context)
    blocks = []
    off = 0
    for A in systems:
        blocks.append((off, off + len(A.context)))
        off += len(A.context)

    def split(T):
        return [T[a:b] for (a, b) in blocks]

    cvals = {}
    for T in context_tuples(context):
        v = F.ob(tuple(A.cvals[p] for A, p in zip(systems, split(T))))
        if v is None:
            rep.add_indeterminate("multiphi.bounded", "entry out of bound")
            return None, rep
        cvals[T] = v
    rho = {}
    from .segal import rho_keys

    for key in rho_keys(context):
        Sx, i, T, U = key
        blk = next(b for b, (a, c) in enumerate(blocks) if a <= i < c)
        a, _ = blocks[blk]
        parts = split(Sx)
        A = systems[blk]
        xs = tuple(B.cvals[p] for B, p in zip(systems, parts))
        X = A.cvals[_put(parts[blk], i - a, T)]
        Y = A.cvals[_put(parts[blk], i - a, U)]
        dist = _distribute(S, F, xs, blk, X, Y)
        inner = A.rho[(parts[blk], i - a, T, U)]
        idm = [C.identity[x] for x in xs]
        glue = F.mor(tuple(idm[:blk] + [inner] + idm[blk + 1 :]))
        if dist is None or glue is None:
            rep.add_indeterminate("multiphi.bounded", "gluing out of bound")
            return None, rep
        rho[key] = C.comp(glue, dist)
    return SegalSystem(context, cvals, rho), rep


def check_multinaturality(W: WaldStruct, F: MultiFunctor, contexts) -> Report:
    """For every tuple of enumerated systems over the given contexts, the
    image system's comparison diagram equals the entrywise application of
    the multifunctor to the separate comparison diagrams."""
    rep = Report("multinaturality")
    S = lambda_smc(W)
    levels = [enumerate_segal(S, c, mors="none") for c in contexts]
    cat = tuple(x for c in contexts for x in c)
    ar = ArTuple(cat)
    blocks = []
    off = 0
    for c in contexts:
        blocks.append((off, off + len(c)))
        off += len(c)
    for combo in itertools.product(*[range(len(l.systems)) for l in levels]):
        systems = [l.systems[i] for l, i in zip(levels, combo)]
        D, drep = multifunctor_system(S, F, systems)
        if D is None:
            for e in drep.indeterminates:
                rep.add_indeterminate(e["code"], e["message"], systems=list(combo))
            continue
        top = phi_object(S, D, validate=False)
        parts = [phi_object(S, A, validate=False) for A in systems]
        if top.diagram is None or any(p.diagram is None for p in parts):
            rep.add_indeterminate("multiphi.bounded", "comparison out of bound", systems=list(combo))
            continue
        for o in ar.cat.objects:
            direct = F.ob(tuple(
                p.diagram.ob[o[a:b]] for p, (a, b) in zip(parts, blocks)
            ))
            if direct is None:
                rep.add_indeterminate("multiphi.bounded", "entry out of bound", systems=list(combo))
            elif top.diagram.ob[o] != direct:
                rep.add(
                    "multinat.object", "entrywise images differ",
                    systems=list(combo), entry=[list(map(list, p)) for p in [o]],
                )
        for m in ar.cat.morphisms:
            direct = F.mor(tuple(
                p.diagram.mor[m[a:b]] for p, (a, b) in zip(parts, blocks)
            ))
            if direct is None:
                continue
            if top.diagram.mor[m] != direct:
                rep.add(
                    "multinat.morphism", "entrywise morphism images differ",
                    systems=list(combo),
                )
    return rep


def check_modification(W: WaldStruct, F: MultiFunctor, G: MultiFunctor, mu, contexts) -> Report:
    """mu gives a morphism F(xs) -> G(xs) per object tuple.  Both induced
    transformations between the comparison composites have component mu
    at the blockwise entry values; we verify they agree and are natural
    against both image diagrams."""
    rep = Report("modification")
    S = lambda_smc(W)
    C = S.cat
    levels = [enumerate_segal(S, c, mors="none") for c in contexts]
    cat = tuple(x for c in contexts for x in c)
    ar = ArTuple(cat)
    blocks = []
    off = 0
    for c in contexts:
        blocks.append((off, off + len(c)))
        off += len(c)
    for combo in itertools.product(*[range(len(l.systems)) for l in levels]):
        systems = [l.systems[i] for l, i in zip(levels, combo)]
        DF, rf = multifunctor_system(S, F, systems)
        DG, rg = multifunctor_system(S, G, systems)
        if DF is None or DG is None:
            rep.add_indeterminate("modif.bounded", "image system out of bound", systems=list(combo))
            continue
        pf = phi_object(S, DF, validate=False)
        pg = phi_object(S, DG, validate=False)
        if pf.diagram is None or pg.diagram is None:
            rep.add_indeterminate("modif.bounded", "comparison out of bound", systems=list(combo))
            continue
        comps = {}
        bounded = False
        for o in ar.cat.objects:
            vals = tuple(
                A.cvals[entry_tuple(o[a:b])] for A, (a, b) in zip(systems, blocks)
            )
            c = mu(vals)
            if c is None:
                bounded = True
                break
            comps[o] = c
            if C.src[c] != pf.diagram.ob[o] or C.tgt[c] != pg.diagram.ob[o]:
                rep.add("modif.component", "component endpoints differ", systems=list(combo))
        if bounded:
            rep.add_indeterminate("modif.bounded", "component out of bound", systems=list(combo))
            continue
        nat = NatTrans(
            _diagram_functor(W, pf.diagram), _diagram_functor(W, pg.diagram), comps
        ).validate()
        for e in nat.failures:
            rep.add("modif.nat", "whiskered transformations differ", systems=list(combo), inner=e)
    return rep


# -- component-level diagnostics -------------------------------------------


def split_cofibrations(W: WaldStruct) -> bool:
    """Every cofibration admits a retraction in the fixture."""
    C = W.cat
    for c in W.cofibrations:
        X, Y = C.src[c], C.tgt[c]
        if not any(C.comp(r, c) == C.identity[X] for r in C.hom(Y, X)):
            return False
    return True


def _components(cat: FinCat):
    parent = {x: x for x in cat.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in cat.morphisms:
        a, b = find(cat.src[f]), find(cat.tgt[f])
        if a != b:
            parent[a] = b
    return {x: find(x) for x in cat.objects}


def pi0_comparison(W: WaldStruct, m: int) -> Report:
    """Connected components of the weak-equivalence subcategories on both
    sides of the comparison at a single slot of size m; the comparison
    must induce a bijection.  Requires split cofibrations."""
    rep = Report("pi0")
    if not split_cofibrations(W):
        rep.add_indeterminate("pi0.split", "cofibrations are not split; check skipped")
        return rep
    S = lambda_smc(W)
    ctx = () if m == 0 else (m,)
    seg = enumerate_segal(S, ctx, mors="weq")
    sd = enumerate_sdot(W, ctx, mors="weq")
    F = phi_functor(S, seg, sd)
    cs = _components(seg.cat)
    cd = _components(sd.cat)
    image = {}
    for x in seg.cat.objects:
        a, b = cs[x], cd[F.ob[x]]
        if a in image and image[a] != b:
            rep.add("pi0.map", "comparison not constant on a component")
        image[a] = b
    if len(set(image.values())) != len(set(image.keys())):
        rep.add("pi0.injective", "components merged by the comparison",
                left=len(set(image.keys())), right=len(set(image.values())))
    missed = set(cd.values()) - set(image.values())
    if missed:
        rep.add("pi0.surjective", "components not hit by the comparison",
                count=len(missed))
    rep.add_info(
        "pi0.counts", "component counts",
        systems=len(set(cs.values())), diagrams=len(set(cd.values())),
    )
    return rep


# -- class-group invariants ------------------------------------------------


class MonoidPresentation:
    def __init__(self, generators, relations):
        self.generators = list(generators)
        self.relations = [list(r) for r in relations]


class AbGroupInvariants:
    def __init__(self, rank, torsion):
        self.rank = rank
        self.torsion = list(torsion)

    def __eq__(self, other):
        return (
            isinstance(other, AbGroupInvariants)
            and (self.rank, self.torsion) == (other.rank, other.torsion)
        )

    def __repr__(self):
        return f"AbGroupInvariants(rank={self.rank}, torsion={self.torsion})"


def iso_classes(W: WaldStruct):
    """Objects partitioned by isomorphism, basepoint class first."""
    C = W.cat
    classes = []
    seen = {}
    for x in C.sorted_objects():
        for rep_x, members in seen.items():
            if any(C.is_iso(f) for f in C.hom(rep_x, x)):
                members.append(x)
                break
        else:
            seen[x] = [x]
    base = next(r for r in seen if W.basepoint in seen[r])
    order = [base] + [r for r in seen if r != base]
    return [seen[r] for r in order]


def k0_presentation(W: WaldStruct) -> MonoidPresentation:
    """Generators are iso classes; relations kill the basepoint class and
    say the middle class of each cofiber sequence is the sum of the ends."""
    classes = iso_classes(W)
    index = {x: i for i, cl in enumerate(classes) for x in cl}
    gens = [cl[0] for cl in classes]
    rels = []
    base = [0] * len(gens)
    base[0] = 1
    rels.append(base)
    level = enumerate_sdot(W, (2,), mors="none")
    seen = set()
    for A in level.diagrams:
        v = [0] * len(gens)
        v[index[A.ob[((0, 2),)]]] += 1
        v[index[A.ob[((0, 1),)]]] -= 1
        v[index[A.ob[((1, 2),)]]] -= 1
        t = tuple(v)
        if any(t) and t not in seen:
            seen.add(t)
            rels.append(v)
    return MonoidPresentation(gens, rels)


def k0(W: WaldStruct) -> AbGroupInvariants:
    """Smith normal form of the relation matrix of the cofiber-sequence
    presentation."""
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_form

    pres = k0_presentation(W)
    n = len(pres.generators)
    M = Matrix(pres.relations)
    snf = smith_normal_form(M)
    divisors = [snf[i, i] for i in range(min(snf.rows, snf.cols))]
    divisors = [abs(int(d)) for d in divisors if d != 0]
    rank = n - len(divisors)
    torsion = [d for d in divisors if d > 1]
    return AbGroupInvariants(rank, torsion)
