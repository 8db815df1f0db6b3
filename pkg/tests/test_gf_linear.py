import itertools
import random

import pytest

from guessnum import cyclic
from guessnum import digraph as dg
from guessnum import gf_linear as gl
from guessnum import solvers
from guessnum.errors import NonPrimeField

from oracles import random_digraph


def paley7():
    return cyclic.digraph_from_polynomial(cyclic.parse_poly("11101"), 7)


class TestRank:
    def test_identity(self):
        assert gl.rank_gfp(gl.GfMatrix.identity(5, 2)) == 5
        assert gl.rank_gfp(gl.GfMatrix.identity(4, 3)) == 4

    def test_cycle_parity_matrix(self):
        h = gl.identity_plus(dg.cycle(3), 2).transpose()
        assert gl.rank_gfp(h) == 2

    def test_all_ones(self):
        m = gl.GfMatrix([[1] * 3 for _ in range(3)], 2)
        assert gl.rank_gfp(m) == 1

    def test_non_prime_rejected(self):
        with pytest.raises(NonPrimeField):
            gl.GfMatrix([[1]], 4)

    def test_gf3_rank(self):
        m = gl.GfMatrix([[1, 2, 0], [0, 1, 2], [0, 0, 1]], 3)
        assert gl.rank_gfp(m) == 3
        m = gl.GfMatrix([[1, 2], [2, 4]], 3)  # second row = 2 * first
        assert gl.rank_gfp(m) == 1

    def test_nullspace_dimension(self):
        m = gl.identity_plus(dg.cycle(3), 2).transpose()
        basis = gl.nullspace_gfp(m)
        assert len(basis) == 3 - gl.rank_gfp(m)
        for vec in basis:
            assert m.mul_vec(vec) == (0, 0, 0)


class TestParityCheck:
    def test_cycle_repetition_code(self):
        res = gl.parity_check_protocol(dg.cycle(3))
        assert res.dimension == 1
        assert res.basis == (7,)  # the all-ones word

    def test_paley_gives_a_7_4_distance_3_code(self):
        res = gl.parity_check_protocol(paley7())
        assert res.dimension == 4
        space = {0}
        for b in res.basis:
            space |= {x ^ b for x in space}
        assert len(space) == 16
        assert min(x.bit_count() for x in space if x) == 3

    def test_empty_digraph(self):
        res = gl.parity_check_protocol(dg.Digraph(4))
        assert res.dimension == 0

    def test_basis_vectors_are_fixed_points(self):
        rng = random.Random(40)
        for _ in range(20):
            d = random_digraph(rng, rng.randint(1, 6))
            res = gl.parity_check_protocol(d)
            for code in res.basis:
                bits = [(code >> v) & 1 for v in range(d.n)]
                for v in range(d.n):
                    assert bits[v] == sum(bits[u] for u in d.in_adj[v]) % 2


class TestLinearGuessingNumber:
    def test_clique_exhaustive(self):
        res = gl.linear_guessing_number(dg.clique(3), 2, exhaustive=True)
        assert res.value == 2
        assert res.provenance == ("exhaustive", "exhaustive")
        eye_plus = gl.GfMatrix.identity(3, 2).add(res.witness)
        assert gl.rank_gfp(eye_plus) == 1

    def test_paley(self):
        assert gl.linear_guessing_number(paley7(), 2).value == 4

    def test_product_of_triangles(self):
        d = dg.strong_product(dg.cycle(3), dg.cycle(3))
        assert gl.linear_guessing_number(d, 2).value == 5

    def test_acyclic_is_zero(self):
        for d in (dg.path(4), dg.Digraph(3), dg.from_edge_list(3, [(0, 1), (0, 2)])):
            res = gl.linear_guessing_number(d, 2, exhaustive=True)
            assert res.value == 0

    def test_witness_support_and_fixed_space(self):
        rng = random.Random(41)
        for _ in range(15):
            d = random_digraph(rng, rng.randint(1, 4))
            p = rng.choice([2, 3])
            res = gl.linear_guessing_number(d, p)
            support = res.witness.support()
            assert all(d.has_edge(u, v) for u, v in support)
            basis = gl.fixed_space_basis(d, p, res.witness)
            assert len(basis) >= res.lower

    def test_exhaustive_matches_pinched_on_small_digraphs(self):
        rng = random.Random(42)
        for _ in range(12):
            d = random_digraph(rng, rng.randint(1, 4))
            forced = gl.linear_guessing_number(d, 2, exhaustive=True)
            auto = gl.linear_guessing_number(d, 2)
            assert forced.exact
            assert auto.lower <= forced.value <= auto.upper
            if auto.exact:
                assert auto.value == forced.value

    def test_never_exceeds_guessing_number(self):
        rng = random.Random(43)
        for _ in range(12):
            d = random_digraph(rng, rng.randint(1, 4))
            lin = gl.linear_guessing_number(d, 2, exhaustive=True)
            g = solvers.guessing_number(d, 2)
            assert lin.value <= g.value + 1e-9

    def test_unidirectional_union_adds(self):
        rng = random.Random(44)
        for _ in range(8):
            d1 = random_digraph(rng, rng.randint(1, 3))
            d2 = random_digraph(rng, rng.randint(1, 3))
            g1 = gl.linear_guessing_number(d1, 2, exhaustive=True).value
            g2 = gl.linear_guessing_number(d2, 2, exhaustive=True).value
            u = dg.unidirectional_union(d1, d2)
            total = gl.linear_guessing_number(u, 2, exhaustive=True).value
            assert total == g1 + g2

    def test_bidirectional_union_min_law(self):
        rng = random.Random(45)
        for _ in range(6):
            d1 = random_digraph(rng, 2)
            d2 = random_digraph(rng, 2)
            g1 = gl.linear_guessing_number(d1, 2, exhaustive=True).value
            g2 = gl.linear_guessing_number(d2, 2, exhaustive=True).value
            u = dg.bidirectional_union(d1, d2)
            total = gl.linear_guessing_number(u, 2, exhaustive=True).value
            assert total == min(g1 + d2.n, g2 + d1.n)

    def test_row_count_uppers_hold_on_families(self):
        for fam_kind, params in [("three_t", dict(t=5)), ("even_half", dict(p=5))]:
            fam = cyclic.family_unidirectional(fam_kind, **params)
            d = fam.digraph
            value = gl.linear_guessing_number(d, 2).lower
            for bound, _ in gl._sparse_linear_uppers(d, 2):
                assert value <= bound + 1e-9


class TestProductLower:
    def test_triangle_square(self):
        bound, witness = gl.linear_product_lower(dg.cycle(3), dg.cycle(3), 2)
        assert bound == 5
        prod = dg.strong_product(dg.cycle(3), dg.cycle(3))
        assert all(prod.has_edge(u, v) for u, v in witness.support())

    def test_mixed_cycles(self):
        bound, witness = gl.linear_product_lower(dg.cycle(4), dg.cycle(3), 2)
        assert bound == 12 - 3 * 2
        eye_plus = gl.GfMatrix.identity(12, 2).add(witness)
        assert gl.rank_gfp(eye_plus) == 6

    def test_identity_factor(self):
        d = dg.cycle(4)
        bound, _ = gl.linear_product_lower(dg.clique(1), d, 2)
        assert bound == gl.linear_guessing_number(d, 2).value


class TestMatrixText:
    def test_round_trip(self):
        m = gl.GfMatrix([[0, 1, 2], [2, 0, 1]], 3)
        again = gl.matrix_from_text(gl.matrix_to_text(m))
        assert again == m

    def test_kron(self):
        a = gl.GfMatrix([[1, 1], [0, 1]], 2)
        b = gl.GfMatrix([[1, 0], [1, 1]], 2)
        k = a.kron(b)
        assert k.rows == k.cols == 4
        assert gl.rank_gfp(k) == gl.rank_gfp(a) * gl.rank_gfp(b)
