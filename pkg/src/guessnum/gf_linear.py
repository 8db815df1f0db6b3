"""Prime-field linear algebra and the linear guessing number.

A linear strategy assigns each vertex a linear combination of its
in-neighbours' values.  Its fixed configurations form the nullspace of
``I - C^T`` for the coefficient matrix ``C``, so the best linear
strategy is found by minimizing ``rank(I + A)`` over all matrices ``A``
whose support lies inside the adjacency support (the two minimizations
coincide under ``A <-> -A``).

GF(2) matrices use machine-word bit rows; other primes use tuples.
Diagonal entries are never allowed in support-respecting matrices
(loops are excluded from adjacency).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import digraph as dg
from .errors import BadParams, NonPrimeField

DEFAULT_LINEAR_BUDGET = 1 << 24


def _is_prime(p):
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _check_prime(p):
    if not _is_prime(p):
        raise NonPrimeField(f"{p} is not prime")


class GfMatrix:
    """Immutable matrix over GF(p), p prime."""

    __slots__ = ("rows", "cols", "p", "entries")

    def __init__(self, entries, p):
        _check_prime(p)
        entries = tuple(tuple(int(e) % p for e in row) for row in entries)
        if entries and any(len(row) != len(entries[0]) for row in entries):
            raise BadParams("ragged matrix")
        self.entries = entries
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        self.p = p

    @classmethod
    def identity(cls, n, p):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], p)

    @classmethod
    def zeros(cls, rows, cols, p):
        return cls([[0] * cols for _ in range(rows)], p)

    def transpose(self):
        return GfMatrix(list(zip(*self.entries)) if self.entries else [], self.p)

    def add(self, other):
        if (self.rows, self.cols, self.p) != (other.rows, other.cols, other.p):
            raise BadParams("shape or field mismatch")
        return GfMatrix(
            [
                [(a + b) % self.p for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            self.p,
        )

    def neg(self):
        return GfMatrix([[(-a) % self.p for a in row] for row in self.entries], self.p)

    def kron(self, other):
        if self.p != other.p:
            raise BadParams("field mismatch")
        out = []
        for ra in self.entries:
            for rb in other.entries:
                out.append([(a * b) % self.p for a in ra for b in rb])
        return GfMatrix(out, self.p)

    def mul_vec(self, vec):
        return tuple(
            sum(a * x for a, x in zip(row, vec)) % self.p for row in self.entries
        )

    def support(self):
        return {(i, j) for i, row in enumerate(self.entries) for j, e in enumerate(row) if e}

    def rank(self):
        return rank_gfp(self)

    def __eq__(self, other):
        return (
            isinstance(other, GfMatrix)
            and self.p == other.p
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"GfMatrix({self.rows}x{self.cols}, p={self.p})"


def _rank_bits(rows):
    rank = 0
    pivots = []
    for row in rows:
        for prow in pivots:
            low = prow & -prow
            if row & low:
                row ^= prow
        if row:
            pivots.append(row)
            rank += 1
    return rank


def rank_gfp(matrix):
    """Row-echelon rank over GF(p)."""
    p = matrix.p
    if p == 2:
        return _rank_bits([sum(e << j for j, e in enumerate(row)) for row in matrix.entries])
    work = [list(row) for row in matrix.entries]
    rank = 0
    rows, cols = matrix.rows, matrix.cols
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = pow(work[r][c], p - 2, p)
        work[r] = [(e * inv) % p for e in work[r]]
        for i in range(rows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[r])]
        rank += 1
        r += 1
        if r == rows:
            break
    return rank


def nullspace_gfp(matrix):
    """Basis of the right nullspace over GF(p), as coordinate tuples."""
    p = matrix.p
    rows, cols = matrix.rows, matrix.cols
    work = [list(row) for row in matrix.entries]
    pivot_cols = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = pow(work[r][c], p - 2, p)
        work[r] = [(e * inv) % p for e in work[r]]
        for i in range(rows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[r])]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [0] * cols
        vec[fc] = 1
        for i, pc in enumerate(pivot_cols):
            vec[pc] = (-work[i][fc]) % p
        basis.append(tuple(vec))
    return basis


# -- digraph-shaped matrices ------------------------------------------


def adjacency_matrix(d, p=2):
    return GfMatrix(
        [[1 if v in d.out_adj[u] else 0 for v in range(d.n)] for u in range(d.n)], p
    )


def identity_plus(d, p=2):
    m = adjacency_matrix(d, p)
    return GfMatrix(
        [
            [(1 if i == j else 0) + m.entries[i][j] for j in range(d.n)]
            for i in range(d.n)
        ],
        p,
    )


@dataclass(frozen=True)
class ParityCheckResult:
    dimension: int
    basis: tuple  # configuration codes (bit i = coordinate i)


def parity_check_protocol(d):
    """Fixed space of the all-ones GF(2) strategy: x_v = sum of in-values.

    Returns the nullspace of I + A^T over GF(2) as configuration codes;
    every basis vector is re-verified as a literal fixed point.
    """
    n = d.n
    h = identity_plus(d, 2).transpose()
    basis = nullspace_gfp(h)
    codes = []
    for vec in basis:
        for v in range(n):
            total = sum(vec[u] for u in d.in_adj[v]) % 2
            if total != vec[v]:
                raise AssertionError("parity basis vector is not fixed")
        codes.append(sum(b << i for i, b in enumerate(vec)))
    return ParityCheckResult(len(codes), tuple(sorted(codes)))


def _full_support_matrix(d, p):
    # I - A^T: row v encodes x_v - sum of v's in-neighbours' values
    return GfMatrix(
        [
            [
                ((1 if i == j else 0) - (1 if i in d.in_adj[j] else 0)) % p
                for i in range(d.n)
            ]
            for j in range(d.n)
        ],
        p,
    )


def full_support_fixed_dimension(d, p):
    """Fixed-space dimension of the all-ones strategy over GF(p)."""
    _check_prime(p)
    return d.n - rank_gfp(_full_support_matrix(d, p))


def full_support_fixed_basis(d, p):
    """Fixed-space basis of the all-ones strategy, as coordinate tuples."""
    _check_prime(p)
    basis = nullspace_gfp(_full_support_matrix(d, p))
    for vec in basis:
        for v in range(d.n):
            total = sum(vec[u] for u in d.in_adj[v]) % p
            if total != vec[v] % p:
                raise AssertionError("all-ones basis vector is not fixed")
    return basis


# -- linear guessing number -------------------------------------------


@dataclass(frozen=True)
class LinearGuessingResult:
    lower: int
    upper: int
    witness: GfMatrix  # minimizes rank(I + A) among inspected matrices
    exact: bool
    provenance: tuple  # (lower tag, upper tag)

    @property
    def value(self):
        return self.lower if self.exact else None


def _rank_of_support(d, p, coeffs):
    # coeffs: {(u, v): value} on edges
    n = d.n
    entries = [[0] * n for _ in range(n)]
    for i in range(n):
        entries[i][i] = 1
    for (u, v), val in coeffs.items():
        entries[u][v] = val % p
    return rank_gfp(GfMatrix(entries, p)), GfMatrix(entries, p)


def _matrix_from_coeffs(d, p, coeffs):
    n = d.n
    entries = [[0] * n for _ in range(n)]
    for (u, v), val in coeffs.items():
        entries[u][v] = val % p
    return GfMatrix(entries, p)


def _descend(d, p, coeffs):
    """Greedy coordinate descent on rank(I + A), zeroing entries."""
    best_rank, _ = _rank_of_support(d, p, coeffs)
    improved = True
    while improved:
        improved = False
        for edge in sorted(coeffs):
            if coeffs[edge] == 0:
                continue
            saved = coeffs[edge]
            coeffs[edge] = 0
            r, _ = _rank_of_support(d, p, coeffs)
            if r < best_rank:
                best_rank = r
                improved = True
            else:
                coeffs[edge] = saved
    return best_rank, dict(coeffs)


def _bounded_lower(d, p):
    """Best fixed-space dimension found by cheap candidate strategies.

    Candidates: the all-ones strategy, greedy descent from it, a few
    seeded random descents, and the all-ones-per-clique strategy from a
    clique partition (each clique block of I + A collapses to rank 1).
    Returns (dimension, witness, tag).
    """
    edges = d.edges()
    candidates = []
    full = {e: 1 for e in edges}
    r, _ = _rank_of_support(d, p, full)
    candidates.append((d.n - r, dict(full), "all-ones"))
    r, coeffs = _descend(d, p, dict(full))
    candidates.append((d.n - r, coeffs, "support-descent"))
    rng = random.Random(0)
    for _ in range(4):
        sample = {e: rng.randrange(p) for e in edges}
        r, coeffs = _descend(d, p, sample)
        candidates.append((d.n - r, coeffs, "support-descent"))
    partition = dg.clique_partition_number(d)
    part_coeffs = {}
    for part in partition.parts:
        for u in part:
            for v in part:
                if u != v:
                    part_coeffs[(u, v)] = 1
    r, _ = _rank_of_support(d, p, part_coeffs)
    candidates.append((d.n - r, part_coeffs, "clique-partition"))
    dim, coeffs, tag = max(candidates, key=lambda t: t[0])
    return dim, _matrix_from_coeffs(d, p, coeffs), tag


def _min_rank_exhaustive(d, p, budget):
    """Minimum rank(I + A) over every support-respecting A.

    Depth-first over vertices in ascending order; each vertex's row is
    e_v plus coefficients on its out-neighbours, enumerated with zero
    first, so the returned witness is the lexicographically first
    optimal coefficient pattern.
    """
    n = d.n
    outs = [sorted(d.out_adj[v]) for v in range(n)]
    total = p ** d.edge_count()
    if total > budget:
        raise BadParams("pattern space exceeds budget")
    best = [n + 1, None]

    if p == 2:
        pivots = []

        def reduce_row(vec):
            for prow in pivots:
                low = prow & -prow
                if vec & low:
                    vec ^= prow
            return vec

        def dfs(v, rank, chosen):
            if rank >= best[0]:
                return
            if v == n:
                best[0] = rank
                best[1] = dict(chosen)
                return
            base = 1 << v
            for combo in itertools.product((0, 1), repeat=len(outs[v])):
                vec = base
                for j, bit in zip(outs[v], combo):
                    if bit:
                        vec |= 1 << j
                red = reduce_row(vec)
                for j, bit in zip(outs[v], combo):
                    chosen[(v, j)] = bit
                if red:
                    pivots.append(red)
                    dfs(v + 1, rank + 1, chosen)
                    pivots.pop()
                else:
                    dfs(v + 1, rank, chosen)
            for j in outs[v]:
                chosen.pop((v, j), None)

        dfs(0, 0, {})
    else:
        pivots = []  # list of (pivot_col, normalized row tuple)

        def reduce_row(vec):
            vec = list(vec)
            for col, row in pivots:
                f = vec[col]
                if f:
                    vec = [(a - f * b) % p for a, b in zip(vec, row)]
            return vec

        def dfs(v, rank, chosen):
            if rank >= best[0]:
                return
            if v == n:
                best[0] = rank
                best[1] = chosen.copy()
                return
            for combo in itertools.product(range(p), repeat=len(outs[v])):
                vec = [0] * n
                vec[v] = 1
                for j, val in zip(outs[v], combo):
                    vec[j] = val
                red = reduce_row(vec)
                for j, val in zip(outs[v], combo):
                    chosen[(v, j)] = val
                lead = next((c for c in range(n) if red[c]), None)
                if lead is not None:
                    inv = pow(red[lead], p - 2, p)
                    norm = tuple((e * inv) % p for e in red)
                    pivots.append((lead, norm))
                    dfs(v + 1, rank + 1, chosen)
                    pivots.pop()
                else:
                    dfs(v + 1, rank, chosen)
            for j in outs[v]:
                chosen.pop((v, j), None)

        dfs(0, 0, {})

    coeffs = best[1] if best[1] is not None else {}
    return best[0], _matrix_from_coeffs(d, p, coeffs)


def linear_guessing_number(d, p, budget=DEFAULT_LINEAR_BUDGET, exhaustive=None):
    """n minus the minimum rank of I + A over support-respecting A.

    With ``exhaustive=None`` the pattern search only runs when cheap
    lower and upper bounds fail to pinch the value and the pattern space
    fits the budget; ``exhaustive=True`` forces the search (budget
    permitting), ``exhaustive=False`` forbids it.  Inexact calls return
    the bracketing interval with a witness for the lower end.
    """
    _check_prime(p)
    n = d.n
    lower, witness, lower_tag = _bounded_lower(d, p)
    scc = dg.strong_components(d)
    mas = dg.mas_exact(d)
    uppers = [(n - mas.size, "acyclic-set")]
    uppers.append((n - len(scc.components), "component-count"))
    if n > 0 and not d.bidirectional_pairs():
        from math import floor

        for value, tag in _sparse_linear_uppers(d, p):
            uppers.append((floor(value + 1e-9), tag))
    upper, upper_tag = min(uppers, key=lambda t: t[0])
    exact = lower >= upper
    if exact:
        upper = lower
    run_search = exhaustive is True or (exhaustive is None and not exact)
    if run_search and p ** d.edge_count() <= budget:
        min_rank, witness = _min_rank_exhaustive(d, p, budget)
        lower = upper = n - min_rank
        lower_tag = upper_tag = "exhaustive"
        exact = True
    return LinearGuessingResult(lower, upper, witness, exact, (lower_tag, upper_tag))


def _johnson_pair_overlap(n, max_in):
    """Largest d with binom(n, max_in-d+2)/binom(max_in+1, max_in-d+2) >= n."""
    from math import comb

    best = None
    for dd in range(1, max_in + 3):
        k = max_in - dd + 2
        if k < 0 or k > max_in + 1:
            continue
        denom = comb(max_in + 1, k)
        if denom == 0:
            continue
        if comb(n, k) >= n * denom:
            best = dd
    return best


def _sparse_linear_uppers(d, p):
    """Row-space counting bounds (real-valued); need no bidirectional edges."""
    from math import log

    n = d.n
    degs = [d.in_degree(v) for v in range(n)]
    delta, max_in = min(degs), max(degs)
    out = []
    if n - delta >= 1:
        out.append((n - 1 - log(n - delta, p), "row-count-min-degree"))
    e = _johnson_pair_overlap(n, max_in)
    if e is not None and n - max_in - e >= 1:
        out.append((n - 2 - log(n - max_in - e, p), "row-count-max-degree"))
    return out


def linear_product_lower(d1, d2, p, budget=DEFAULT_LINEAR_BUDGET):
    """Product lower bound with an explicit Kronecker witness.

    Returns (bound, witness A) where I + A is the Kronecker product of
    the factor witnesses; the witness rank is re-verified.
    """
    r1 = linear_guessing_number(d1, p, budget=budget)
    r2 = linear_guessing_number(d2, p, budget=budget)
    n1, n2 = d1.n, d2.n
    bound = n1 * n2 - (n1 - r1.lower) * (n2 - r2.lower)
    eye1 = GfMatrix.identity(n1, p)
    eye2 = GfMatrix.identity(n2, p)
    w1 = eye1.add(r1.witness)
    w2 = eye2.add(r2.witness)
    prod = w1.kron(w2)
    expected = (n1 - r1.lower) * (n2 - r2.lower)
    if rank_gfp(prod) != expected:
        raise AssertionError("Kronecker witness rank mismatch")
    witness = prod.add(GfMatrix.identity(n1 * n2, p).neg())
    return bound, witness


def fixed_space_basis(d, p, witness):
    """Fixed-space basis of the strategy carried by a witness matrix.

    The witness minimizes rank(I + A); the induced strategy uses
    coefficients -A, so its fixed space is the nullspace of I + A^T.
    Each basis vector is re-verified against the local functions.
    """
    n = d.n
    eye = GfMatrix.identity(n, p)
    mat = eye.add(witness).transpose()
    basis = nullspace_gfp(mat)
    for vec in basis:
        for v in range(n):
            acc = 0
            for u in d.in_adj[v]:
                acc += (-witness.entries[u][v]) * vec[u]
            if acc % p != vec[v] % p:
                raise AssertionError("witness basis vector is not fixed")
    return basis


# -- text format -------------------------------------------------------


def matrix_to_text(m):
    lines = [f"{m.rows} {m.cols} {m.p}"]
    lines += [" ".join(str(e) for e in row) for row in m.entries]
    return "\n".join(lines) + "\n"


def matrix_from_text(text):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    rows, cols, p = (int(t) for t in lines[0].split())
    entries = [[int(t) for t in ln.split()] for ln in lines[1 : 1 + rows]]
    m = GfMatrix(entries, p)
    if m.rows != rows or m.cols != cols:
        raise BadParams("matrix text shape mismatch")
    return m
