import itertools

from ktcheck.fincat import product_category, terminal_category
from ktcheck.simplicial import (
    MultiSSet,
    circle_map,
    circle_trunc_sset,
    diagonal,
    monotone_maps,
    nerve,
    validate_simplicial,
)
from tests.test_fincat import chain_category


def quotient_circle_oracle(beta, m):
    # independent model: the circle level <n> as monotone maps [n] -> [1]
    # modulo the constant maps, with i <-> the step map jumping at i; the
    # induced map is precomposition with beta
    n = len(beta) - 1

    def step_class(chi):
        # chi: tuple of 0/1 values on [k]; constant maps are the basepoint
        if all(v == 0 for v in chi) or all(v == 1 for v in chi):
            return 0
        return next(t for t, v in enumerate(chi) if v == 1)

    out = [0] * (m + 1)
    for i in range(1, m + 1):
        chi = tuple(1 if t >= i else 0 for t in range(m + 1))
        out[i] = step_class(tuple(chi[beta[t]] for t in range(n + 1)))
    return tuple(out)


class TestCircleMap:
    def test_identity(self):
        for m in range(4):
            beta = tuple(range(m + 1))
            assert circle_map(beta, m) == tuple(range(m + 1))

    def test_example_0_2(self):
        assert circle_map((0, 2), 2) == (0, 1, 1)

    def test_example_1_2(self):
        assert circle_map((1, 2), 2) == (0, 0, 1)

    def test_against_quotient_oracle(self):
        for n in range(4):
            for m in range(4):
                for beta in monotone_maps(n, m):
                    assert circle_map(beta, m) == quotient_circle_oracle(beta, m)

    def test_contravariance_exhaustive(self):
        # circle_map(beta . gamma) = circle_map(gamma) . circle_map(beta)
        for m, n, p in itertools.product(range(4), repeat=3):
            for beta in monotone_maps(n, m):
                for gamma in monotone_maps(p, n):
                    bg = tuple(beta[g] for g in gamma)
                    lhs = circle_map(bg, m)
                    cb, cg = circle_map(beta, m), circle_map(gamma, n)
                    rhs = tuple(cg[cb[i]] for i in range(m + 1))
                    assert lhs == rhs

    def test_basepoint_preserved(self):
        for n in range(3):
            for m in range(3):
                for beta in monotone_maps(n, m):
                    assert circle_map(beta, m)[0] == 0


class TestValidateSimplicial:
    def test_nerve_of_terminal(self):
        assert validate_simplicial(nerve(terminal_category(), 3)).ok

    def test_circle_levels(self):
        assert validate_simplicial(circle_trunc_sset(3)).ok

    def test_mutated_face_table_caught(self):
        X = circle_trunc_sset(3)
        X.faces[(2, 1)][2] = 0 if X.faces[(2, 1)][2] != 0 else 1
        rep = validate_simplicial(X)
        assert not rep.ok
        assert any(e["code"].startswith("identity.") for e in rep.failures)

    def test_dangling_reference_is_structural(self):
        X = circle_trunc_sset(2)
        X.faces[(1, 0)][1] = 99
        rep = validate_simplicial(X)
        assert any(e["code"].startswith("structure.") for e in rep.failures)


class TestNerve:
    def test_terminal_one_simplex_per_dim(self):
        X = nerve(terminal_category(), 2)
        assert all(len(X.simplices[k]) == 1 for k in range(3))

    def test_interval_counts(self):
        X = nerve(chain_category(1), 1)
        assert len(X.simplices[0]) == 2
        assert len(X.simplices[1]) == 3

    def test_discrete_degenerate_above_zero(self):
        from ktcheck.fincat import FinCat

        objs = ["a", "b"]
        D = FinCat(
            objs,
            [f"id{o}" for o in objs],
            {f"id{o}": o for o in objs},
            {f"id{o}": o for o in objs},
            {o: f"id{o}" for o in objs},
            {(f"id{o}", f"id{o}"): f"id{o}" for o in objs},
        )
        X = nerve(D, 2)
        degenerate = set(X.degens[(1, 0)].values()) | set(X.degens[(1, 1)].values())
        assert set(X.simplices[2]) == degenerate

    def test_nerve_always_validates(self):
        for C in [chain_category(2), product_category([chain_category(1), chain_category(1)])]:
            assert validate_simplicial(nerve(C, 3)).ok

    def test_nerve_of_product_counts(self):
        C, D = chain_category(1), chain_category(2)
        P = product_category([C, D])
        NX, NC, ND = nerve(P, 2), nerve(C, 2), nerve(D, 2)
        for k in range(3):
            assert len(NX.simplices[k]) == len(NC.simplices[k]) * len(ND.simplices[k])


class TestDiagonal:
    def bisimplicial_from_nerves(self, C, D, d):
        # X(p, q) = N(C)_p x N(D)_q
        NC, ND = nerve(C, d + 1), nerve(D, d + 1)
        levels, faces, degens = {}, {}, {}
        for p in range(d + 2):
            for q in range(d + 2):
                levels[(p, q)] = [(a, b) for a in NC.simplices[p] for b in ND.simplices[q]]
        for p in range(d + 2):
            for q in range(d + 2):
                for i in range(max(p, q) + 1):
                    if i <= p and p >= 1:
                        faces[((p, q), 0, i)] = {
                            (a, b): (NC.faces[(p, i)][a], b) for (a, b) in levels[(p, q)]
                        }
                    if i <= q and q >= 1:
                        faces[((p, q), 1, i)] = {
                            (a, b): (a, ND.faces[(q, i)][b]) for (a, b) in levels[(p, q)]
                        }
                    if i <= p and p <= d:
                        degens[((p, q), 0, i)] = {
                            (a, b): (NC.degens[(p, i)][a], b) for (a, b) in levels[(p, q)]
                        }
                    if i <= q and q <= d:
                        degens[((p, q), 1, i)] = {
                            (a, b): (a, ND.degens[(q, i)][b]) for (a, b) in levels[(p, q)]
                        }
        return MultiSSet(2, d + 1, levels, faces, degens)

    def test_r1_is_identity(self):
        N = nerve(chain_category(1), 2)
        levels = {(q,): N.simplices[q] for q in range(3)}
        faces = {((q,), 0, i): N.faces[(q, i)] for q in range(1, 3) for i in range(q + 1)}
        degens = {((q,), 0, i): N.degens[(q, i)] for q in range(2) for i in range(q + 1)}
        X = MultiSSet(1, 2, levels, faces, degens)
        D = diagonal(X, 2)
        assert D.simplices == N.simplices
        assert validate_simplicial(D).ok

    def test_diagonal_of_nerve_product(self):
        C, D = chain_category(1), chain_category(1)
        X = self.bisimplicial_from_nerves(C, D, 2)
        DG = diagonal(X, 2)
        assert validate_simplicial(DG).ok
        # oracle: the diagonal of the nerve bisimplicial set is the nerve of
        # the product category
        NP = nerve(product_category([C, D]), 2)
        for k in range(3):
            assert len(DG.simplices[k]) == len(NP.simplices[k])

    def test_constant_multisimplicial(self):
        pt = nerve(terminal_category(), 2)
        levels = {(p, q): pt.simplices[0] for p in range(3) for q in range(3)}
        ident = {x: x for x in pt.simplices[0]}
        faces = {
            ((p, q), d, i): ident
            for p in range(3)
            for q in range(3)
            for d in range(2)
            for i in range(max(p, q) + 1)
        }
        degens = faces
        X = MultiSSet(2, 2, levels, faces, degens)
        DG = diagonal(X, 2)
        assert all(len(DG.simplices[k]) == 1 for k in range(3))
