"""Exact solvers on configuration graphs: independent sets, colorings,
guessing numbers, information defects, protocols and bound chains.

All solvers are pure given immutable inputs and deterministic: searches
branch on the lowest configuration code first, so witnesses are the
lexicographically smallest optima.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

from . import _search
from . import digraph as dg
from . import gf_linear
from .errors import BadParams, NotIndependent, SizeGuard
from .guessing_graph import (
    DEFAULT_GUARD,
    GuessingGraph,
    add_codes,
    decode,
    degree_closed_form,
    encode,
)

DEFAULT_CODE_SEARCH_GUARD = 1 << 7
_LEXICODE_CAP = 1 << 10
_SEED_CAP = 1 << 16


# -- protocols ----------------------------------------------------------


@dataclass(frozen=True)
class Protocol:
    """One local lookup table per vertex.

    ``inputs[v]`` lists v's in-neighbours in ascending order;
    ``tables[v]`` has s^len(inputs[v]) entries indexed by the mixed-radix
    code of the observed word (first listed neighbour least significant).
    """

    n: int
    s: int
    inputs: tuple
    tables: tuple

    def word_index(self, symbols, v):
        idx = 0
        for j in reversed(self.inputs[v]):
            idx = idx * self.s + symbols[j]
        return idx

    def evaluate(self, code):
        symbols = decode(code, self.n, self.s)
        out = tuple(
            self.tables[v][self.word_index(symbols, v)] for v in range(self.n)
        )
        return encode(out, self.s)

    def fixes(self, code):
        return self.evaluate(code) == code


def _protocol_inputs(d):
    return tuple(tuple(sorted(d.in_adj[v])) for v in range(d.n))


def protocol_to_text(protocol):
    """Per-vertex truth tables: ``v: inputs | table`` lines."""
    lines = [f"n {protocol.n} s {protocol.s}"]
    for v in range(protocol.n):
        ins = ",".join(str(u) for u in protocol.inputs[v]) or "-"
        table = "".join(str(e) for e in protocol.tables[v])
        lines.append(f"{v}: {ins} | {table}")
    return "\n".join(lines) + "\n"


def protocol_from_independent_set(d, s, configs):
    """Protocol fixing every configuration of a non-conflicting set.

    Conflicts (two configurations agreeing on some vertex's
    in-neighbourhood but not on the vertex) are exactly the adjacent
    pairs, so table filling doubles as the independence check; unset
    entries default to symbol 0.
    """
    n = d.n
    inputs = _protocol_inputs(d)
    tables = [[None] * (s ** len(inputs[v])) for v in range(n)]
    writers = [dict() for _ in range(n)]
    proto = Protocol(n, s, inputs, ())  # word_index helper only
    for code in configs:
        symbols = decode(code, n, s)
        for v in range(n):
            idx = proto.word_index(symbols, v)
            cur = tables[v][idx]
            if cur is None:
                tables[v][idx] = symbols[v]
                writers[v][idx] = code
            elif cur != symbols[v]:
                raise NotIndependent(
                    f"configurations {writers[v][idx]} and {code} conflict at vertex {v}",
                    pair=(writers[v][idx], code),
                )
    tables = tuple(tuple(0 if e is None else e for e in row) for row in tables)
    return Protocol(n, s, inputs, tables)


def fixed_configurations(d, s, protocol, guard=DEFAULT_GUARD):
    """All configuration codes mapped to themselves by the protocol."""
    if protocol.n != d.n or protocol.s != s:
        raise BadParams("protocol shape does not match digraph/alphabet")
    if protocol.inputs != _protocol_inputs(d):
        raise BadParams("protocol inputs do not match the digraph")
    total = s**d.n
    if total > guard:
        raise SizeGuard(
            f"fixed-point enumeration needs {total} configurations",
            needed=total,
            guard=guard,
        )
    return tuple(code for code in range(total) if protocol.fixes(code))


def exhaustive_best_protocol(d, s, limit=10_000_000):
    """Maximum fixed-configuration count over every protocol.

    Independent brute-force oracle: per-vertex acceptance bitmasks over
    all configurations, one per candidate local table, combined by AND.
    Guarded by the product of per-vertex table-space sizes.
    """
    n = d.n
    total = 1
    for v in range(n):
        total *= s ** (s ** d.in_degree(v))
        if total > limit:
            raise SizeGuard(
                "protocol space exceeds the exhaustive-search limit",
                needed=total,
                guard=limit,
            )
    n_configs = s**n
    inputs = _protocol_inputs(d)
    helper = Protocol(n, s, inputs, ())
    all_symbols = [decode(x, n, s) for x in range(n_configs)]
    word_of = [
        [helper.word_index(all_symbols[x], v) for x in range(n_configs)]
        for v in range(n)
    ]
    per_vertex = []
    for v in range(n):
        size = s ** len(inputs[v])
        options = []
        for table in itertools.product(range(s), repeat=size):
            mask = 0
            for x in range(n_configs):
                if table[word_of[v][x]] == all_symbols[x][v]:
                    mask |= 1 << x
            options.append((mask, table))
        per_vertex.append(options)

    best = [0, None]

    def dfs(v, acc, chosen):
        if acc.bit_count() <= best[0]:
            return
        if v == n:
            best[0] = acc.bit_count()
            best[1] = tuple(chosen)
            return
        for mask, table in per_vertex[v]:
            chosen.append(table)
            dfs(v + 1, acc & mask, chosen)
            chosen.pop()

    dfs(0, (1 << n_configs) - 1, [])
    protocol = Protocol(n, s, inputs, best[1]) if best[1] is not None else None
    return best[0], protocol


# -- maximum independent set -------------------------------------------


@dataclass(frozen=True)
class MisResult:
    alpha: int
    witness: tuple
    exact: bool
    upper: int | None = None


def _exterior_clique_cover(handle, mas_witness):
    """Partition configurations by their word outside an acyclic set.

    Configurations agreeing outside an acyclic induced set mutually
    conflict, so each class is a clique of size s^len(set).
    """
    n, s = handle.n, handle.s
    exterior = [v for v in range(n) if v not in set(mas_witness)]
    buckets = {}
    for x in range(handle.n_configs):
        symbols = decode(x, n, s)
        key = 0
        for j in reversed(exterior):
            key = key * s + symbols[j]
        buckets[key] = buckets.get(key, 0) | (1 << x)
    return list(buckets.values())


def _linear_seed_codes(d, s):
    """Fixed space of the all-ones strategy over GF(s), as codes."""
    if not gf_linear._is_prime(s):
        return ()
    basis = gf_linear.full_support_fixed_basis(d, s)
    if s ** len(basis) > _SEED_CAP:
        return ()
    codes = []
    for combo in itertools.product(range(s), repeat=len(basis)):
        vec = [0] * d.n
        for coeff, bvec in zip(combo, basis):
            for i, e in enumerate(bvec):
                vec[i] = (vec[i] + coeff * e) % s
        codes.append(encode(tuple(vec), s))
    return tuple(sorted(set(codes)))


def max_independent_set(handle, mode="exact", guard=DEFAULT_GUARD, node_budget=None):
    """Largest set of mutually fixable configurations.

    Exact mode materializes the graph (guarded) and runs branch and
    bound, bounded by the clique cover induced by a maximum acyclic set
    and seeded by the all-ones linear strategy when the alphabet is
    prime.  Bounded mode reports a bracketing interval without
    materializing.
    """
    d, s = handle.digraph, handle.s
    mas = dg.mas_exact(d)
    if mode == "bounded":
        seed = _linear_seed_codes(d, s)
        lower = max(1, len(seed))
        witness = seed if seed else (0,)
        return MisResult(lower, witness, False, upper=s ** (d.n - mas.size))
    handle.materialize(guard=guard)
    cover = _exterior_clique_cover(handle, mas.witness)
    seed_mask = 0
    for code in _linear_seed_codes(d, s):
        seed_mask |= 1 << code
    size, mask, exact = _search.max_independent_set(
        handle.rows, handle.n_configs, cover_masks=cover,
        seed_mask=seed_mask, node_budget=node_budget,
    )
    witness = []
    m = mask
    while m:
        low = m & -m
        witness.append(low.bit_length() - 1)
        m ^= low
    for x in witness:
        if handle.rows[x] & mask:
            raise AssertionError("independent-set witness fails re-verification")
    return MisResult(size, tuple(witness), exact)


# -- guessing number -----------------------------------------------------


@dataclass(frozen=True)
class GuessingNumberResult:
    alpha: int
    value: float
    integral: bool
    protocol: Protocol | None
    components: tuple  # ((vertices, alpha_i), ...)
    exact: bool

    @property
    def g(self):
        return self.value


def _log_value(alpha, s):
    if alpha < 1:
        raise BadParams("alpha must be positive")
    k = round(math.log(alpha, s))
    if s**k == alpha:
        return float(k), True
    return math.log(alpha, s), False


def guessing_number(d, s, guard=DEFAULT_GUARD, witness_cap=_SEED_CAP):
    """log_s of the maximum number of simultaneously fixable configurations.

    Solved per strongly connected component (the quantity is additive
    across them) and recombined; the witness protocol fixes the product
    of the per-component witnesses.  Protocol construction is skipped
    when the combined witness would exceed ``witness_cap``.
    """
    if s < 2:
        raise BadParams("alphabet size must be at least 2")
    scc = dg.strong_components(d)
    alpha = 1
    per_component = []
    exact = True
    for comp in scc.components:
        sub, vertices = dg.induced_subdigraph(d, comp)
        handle = GuessingGraph(sub, s)
        mis = max_independent_set(handle, guard=guard)
        exact = exact and mis.exact
        alpha *= mis.alpha
        per_component.append((vertices, mis))
    value, integral = _log_value(alpha, s)
    protocol = None
    if alpha <= witness_cap:
        combined = []
        for combo in itertools.product(
            *[[decode(c, len(vs), s) for c in mis.witness] for vs, mis in per_component]
        ):
            symbols = [0] * d.n
            for (vertices, _), word in zip(per_component, combo):
                for v, sym in zip(vertices, word):
                    symbols[v] = sym
            combined.append(encode(tuple(symbols), s))
        protocol = protocol_from_independent_set(d, s, sorted(combined))
    components = tuple((vs, mis.alpha) for vs, mis in per_component)
    return GuessingNumberResult(alpha, value, integral, protocol, components, exact)


# -- coloring and information defect -------------------------------------


@dataclass(frozen=True)
class ChromaticResult:
    chi: int
    coloring: tuple
    exact: bool


def _is_subgroup(codes, n, s):
    codes_set = set(codes)
    if 0 not in codes_set or len(codes_set) > 4096:
        return False
    return all(
        add_codes(a, b, n, s) in codes_set for a in codes_set for b in codes_set
    )


def _coset_coloring(handle, subgroup_codes):
    total = handle.n_configs
    colors = [-1] * total
    nxt = 0
    for x in range(total):
        if colors[x] != -1:
            continue
        for g in subgroup_codes:
            y = add_codes(x, g, handle.n, handle.s)
            if colors[y] != -1:
                return None
            colors[y] = nxt
        nxt += 1
    return colors


def _proper(handle, colors):
    masks = {}
    for x, c in enumerate(colors):
        masks[c] = masks.get(c, 0) | (1 << x)
    return all(handle.rows[x] & masks[colors[x]] == 0 for x in range(handle.n_configs))


def chromatic_number(handle, mis_witness=None, guard=DEFAULT_GUARD, node_budget=None):
    """Minimum number of fixable classes covering every configuration.

    Lower bound: the clique of configurations agreeing outside a maximum
    acyclic set.  Upper candidates: coset colorings from subgroup
    independent sets (the all-ones linear strategy's fixed space, and
    the supplied witness when it is a subgroup) and greedy DSATUR.  Any
    gap is closed by iterative-deepening backtracking.
    """
    handle.materialize(guard=guard)
    d, s, total = handle.digraph, handle.s, handle.n_configs
    mas = dg.mas_exact(d)
    lower = s**mas.size
    candidates = []
    for codes in filter(None, [_linear_seed_codes(d, s), mis_witness]):
        if _is_subgroup(codes, handle.n, s):
            colors = _coset_coloring(handle, codes)
            if colors is not None and _proper(handle, colors):
                candidates.append(colors)
    greedy = _search.greedy_dsatur(handle.rows, total)
    candidates.append(greedy)
    initial = min(candidates, key=lambda c: max(c) + 1)
    chi, coloring, exact = _search.exact_chromatic(
        handle.rows, total, lower, initial, node_budget=node_budget
    )
    if not _proper(handle, coloring):
        raise AssertionError("coloring fails re-verification")
    return ChromaticResult(chi, tuple(coloring), exact)


@dataclass(frozen=True)
class DefectResult:
    chi: int
    value: float
    integral: bool
    classes: tuple
    exact: bool

    @property
    def b(self):
        return self.value


def information_defect(d, s, guard=DEFAULT_GUARD):
    """log_s of the chromatic number, with the class partition.

    Every color class is a valid simultaneously-fixable set, so the
    partition doubles as a public-message assignment.
    """
    handle = GuessingGraph(d, s).materialize(guard=guard)
    mis = max_independent_set(handle, guard=guard)
    chrom = chromatic_number(handle, mis_witness=mis.witness, guard=guard)
    classes = {}
    for x, c in enumerate(chrom.coloring):
        classes.setdefault(c, []).append(x)
    partition = tuple(tuple(v) for _, v in sorted(classes.items()))
    value, integral = _log_value(chrom.chi, s)
    return DefectResult(chrom.chi, value, integral, partition, chrom.exact)


# -- code sizes ----------------------------------------------------------


@dataclass(frozen=True)
class CodeSizeResult:
    n: int
    d: int
    s: int
    exact: bool
    value: int | None
    lower: int
    lower_witness: tuple
    singleton: int
    sphere: int

    @property
    def upper(self):
        return self.value if self.exact else min(self.singleton, self.sphere)

    @property
    def best_lower(self):
        return self.value if self.exact else self.lower


def _hamming(x, y, n, s):
    xs, ys = decode(x, n, s), decode(y, n, s)
    return sum(1 for a, b in zip(xs, ys) if a != b)


def _lexicode(n, d, s, cap=_LEXICODE_CAP):
    total = s**n
    if total > cap:
        # repetition code: s words, pairwise distance n >= d
        return tuple(encode((v,) * n, s) for v in range(s)) if d <= n else (0,)
    chosen = []
    for x in range(total):
        if all(_hamming(x, y, n, s) >= d for y in chosen):
            chosen.append(x)
    return tuple(chosen)


@lru_cache(maxsize=None)
def a_s_exact(n, d, s, search_guard=DEFAULT_CODE_SEARCH_GUARD):
    """Maximum size of a length-n code over [s] with minimum distance d.

    Pinches a greedy lexicographic code against the Singleton and
    sphere-packing bounds; if a gap remains and s^n fits the guard, an
    exact independent-set search over the distance-conflict graph
    settles it (one codeword fixed to 0 by translation invariance).
    """
    if n < 1 or s < 2:
        raise BadParams("need n >= 1 and s >= 2")
    if d < 1:
        raise BadParams("distance must be >= 1")
    total = s**n
    if d > n:
        return CodeSizeResult(n, d, s, True, 1, 1, (0,), 1, 1)
    singleton = s ** (n - d + 1)
    radius = (d - 1) // 2
    ball = sum(math.comb(n, i) * (s - 1) ** i for i in range(radius + 1))
    sphere = total // ball
    if d == 1:
        return CodeSizeResult(n, d, s, True, total, total, (), singleton, sphere)
    witness = _lexicode(n, d, s)
    lower = len(witness)
    upper = min(singleton, sphere)
    if lower == upper:
        return CodeSizeResult(n, d, s, True, lower, lower, witness, singleton, sphere)
    if total > search_guard:
        return CodeSizeResult(n, d, s, False, None, lower, witness, singleton, sphere)
    allowed = [x for x in range(1, total) if _hamming(0, x, n, s) >= d]
    index = {x: i for i, x in enumerate(allowed)}
    rows = [0] * len(allowed)
    for i, x in enumerate(allowed):
        for j in range(i + 1, len(allowed)):
            if _hamming(x, allowed[j], n, s) < d:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    seed_mask = 0
    for c in witness:
        if c in index:
            seed_mask |= 1 << index[c]
    size, mask, _ = _search.max_independent_set(
        rows, len(allowed), seed_mask=seed_mask
    )
    codewords = [0]
    m = mask
    while m:
        low = m & -m
        codewords.append(allowed[low.bit_length() - 1])
        m ^= low
    value = size + 1
    return CodeSizeResult(
        n, d, s, True, value, value, tuple(sorted(codewords)), singleton, sphere
    )


# -- bound chains --------------------------------------------------------


@dataclass(frozen=True)
class Bound:
    name: str
    target: str  # "g", "g_linear" or "b"
    kind: str  # "lower" or "upper"
    value: float
    method: str


@dataclass(frozen=True)
class BoundsReport:
    n: int
    s: int
    mas: dg.MasResult
    girth: int | None
    bidirectional_edge_count: int
    min_in_degree: int
    max_in_degree: int
    components: tuple
    bounds: tuple
    skipped: tuple = field(default_factory=tuple)

    def _values(self, kinds, targets):
        return [
            b.value for b in self.bounds if b.kind in kinds and b.target in targets
        ]

    @property
    def g_lower(self):
        # a linear lower bound also bounds the general quantity
        vals = self._values({"lower"}, {"g", "g_linear"})
        return max(vals, default=0.0)

    @property
    def g_upper(self):
        vals = self._values({"upper"}, {"g"})
        return min(vals, default=float(self.n))

    @property
    def g_linear_lower(self):
        vals = self._values({"lower"}, {"g_linear"})
        return max(vals, default=0.0)

    @property
    def g_linear_upper(self):
        vals = self._values({"upper"}, {"g", "g_linear"})
        return min(vals, default=float(self.n))

    @property
    def b_upper(self):
        vals = self._values({"upper"}, {"b"})
        return min(vals, default=float(self.n))

    def to_records(self):
        recs = [
            ("n", self.n),
            ("s", self.s),
            ("mas", self.mas.size),
            ("mas_exact", self.mas.exact),
            ("girth", "acyclic" if self.girth is None else self.girth),
            ("components", len(self.components)),
        ]
        for b in sorted(self.bounds, key=lambda b: (b.target, b.kind, b.name)):
            recs.append((f"{b.target}_{b.kind}.{b.name}", round(b.value, 6)))
        recs += [
            ("g_lower", round(self.g_lower, 6)),
            ("g_upper", round(self.g_upper, 6)),
            ("g_linear_lower", round(self.g_linear_lower, 6)),
            ("g_linear_upper", round(self.g_linear_upper, 6)),
            ("b_upper", round(self.b_upper, 6)),
        ]
        for name, reason in self.skipped:
            recs.append((f"skipped.{name}", reason))
        return recs


def bounds_report(d, s, mas_budget=dg.DEFAULT_MAS_BUDGET,
                  code_guard=DEFAULT_CODE_SEARCH_GUARD, degree_cap=1 << 22):
    """Every applicable bound on g, g_linear and b, with provenance.

    Inapplicable bounds are listed under ``skipped`` with the reason.
    Lower/upper consistency is asserted; a violation would be an
    implementation bug, not a property of the instance.
    """
    if s < 2:
        raise BadParams("alphabet size must be at least 2")
    n = d.n
    report = dg.structure_report(d)
    mas = dg.mas_exact(d, budget=mas_budget)
    scc = dg.strong_components(d)
    bounds = []
    skipped = []
    log_s = lambda x: math.log(x, s)

    bounds.append(Bound("mas_cover", "g", "upper", n - mas.size,
                        "clique cover from a maximum acyclic set"))
    bounds.append(Bound("component_count", "g", "upper",
                        n - len(scc.components),
                        "one short of each strong component"))
    acyclic = report.girth is None
    if report.bidirectional_edge_count == 0 and n >= 1:
        bounds.append(Bound("no_bidirectional_sphere", "g", "upper",
                            n - log_s((s - 1) * n + 1),
                            "sphere packing at distance 3"))
    else:
        skipped.append(("no_bidirectional_sphere", "bidirectional edges present"))
    if not acyclic:
        girth_code = a_s_exact(n, report.girth, s, search_guard=code_guard)
        bounds.append(Bound("code_girth", "g", "upper",
                            log_s(girth_code.upper),
                            f"codes of distance girth={report.girth}"))
    else:
        skipped.append(("code_girth", "digraph is acyclic"))
    dist = n - report.min_in_degree + 1
    dist_code = a_s_exact(n, dist, s, search_guard=code_guard)
    if dist_code.best_lower >= 1:
        bounds.append(Bound("code_distance", "g", "lower",
                            log_s(dist_code.best_lower),
                            f"codes of distance n-delta+1={dist}"))
    if not acyclic:
        bounds.append(Bound("min_indegree", "g", "lower",
                            report.min_in_degree - log_s(n),
                            "degree of the configuration graph"))
        try:
            deg = degree_closed_form(d, s, node_cap=degree_cap)
            bounds.append(Bound("graph_degree", "g", "lower",
                                n - log_s(deg + 1),
                                "regular-graph independence bound"))
            inner = 1 - math.sqrt(max(0.0, 1 - 4 / (3 * (deg + 1))))
            if inner > 0:
                bounds.append(Bound("transitive_connectivity", "g", "lower",
                                    n + log_s(1.5) + log_s(inner),
                                    "connectivity of vertex-transitive graphs"))
        except SizeGuard:
            skipped.append(("graph_degree", "degree enumeration over cap"))
    else:
        skipped.append(("min_indegree", "digraph is acyclic"))
        skipped.append(("graph_degree", "digraph is acyclic"))
        skipped.append(("transitive_connectivity", "digraph is acyclic"))
    partition = dg.clique_partition_number(d)
    bounds.append(Bound("clique_partition", "g_linear", "lower",
                        n - partition.count,
                        "all-ones strategy per clique class"))
    if gf_linear._is_prime(s):
        dim = gf_linear.full_support_fixed_dimension(d, s)
        bounds.append(Bound("full_support_linear", "g_linear", "lower",
                            dim, "all-ones linear strategy"))
    else:
        skipped.append(("full_support_linear", "alphabet is not prime"))
    if report.bidirectional_edge_count == 0 and n >= 1:
        for value, tag in gf_linear._sparse_linear_uppers(d, s):
            bounds.append(Bound(tag.replace("-", "_"), "g_linear", "upper",
                                value, "row-space counting"))
    else:
        skipped.append(("row_count", "bidirectional edges present"))
    g_lower_now = max(
        [b.value for b in bounds if b.kind == "lower" and b.target in {"g", "g_linear"}],
        default=0.0,
    )
    alpha_lb = s ** max(0.0, g_lower_now)
    bounds.append(Bound("defect_partition", "b", "upper",
                        log_s((1 + math.log(alpha_lb)) * s**n / alpha_lb),
                        "covering a vertex-transitive graph by one class"))

    result = BoundsReport(
        n=n, s=s, mas=mas, girth=report.girth,
        bidirectional_edge_count=report.bidirectional_edge_count,
        min_in_degree=report.min_in_degree,
        max_in_degree=report.max_in_degree,
        components=scc.components,
        bounds=tuple(bounds), skipped=tuple(skipped),
    )
    eps = 1e-9
    if result.g_lower > result.g_upper + eps:
        raise AssertionError("bound chain inconsistent on g")
    if result.g_linear_lower > result.g_linear_upper + eps:
        raise AssertionError("bound chain inconsistent on g_linear")
    return result


# -- alphabet composition -------------------------------------------------


@dataclass(frozen=True)
class CompositionBounds:
    alphabet: int
    lower: float
    upper: float
    refinements: tuple  # ((base, lower, upper), ...)


def alphabet_composition_bounds(g_s, g_t, n, s, t):
    """Bracket for the guessing number over [s*t] from the factor values.

    The interval mixes the two known values log-proportionally; the
    refinements entry carries the single-base power bounds for each of
    s and t.
    """
    if s < 2 or t < 2:
        raise BadParams("alphabet sizes must be at least 2")
    ls, lt = math.log(s), math.log(t)
    lst = ls + lt
    lower = (g_s * ls + g_t * lt) / lst
    upper = min((g_s * ls + n * lt) / lst, (g_t * lt + n * ls) / lst)
    refinements = []
    target = s * t
    for base, g_base in ((s, g_s), (t, g_t)):
        ratio = math.log(target) / math.log(base)
        m = math.floor(ratio + 1e-12)
        refinements.append((base, g_base * m / ratio, (g_base + m * n) / ratio))
    return CompositionBounds(target, lower, upper, tuple(refinements))
