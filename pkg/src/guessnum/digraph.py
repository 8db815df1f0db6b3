"""Simple directed graphs and the combinators used throughout the toolkit.

Vertices are dense integers ``0..n-1``.  Digraphs are immutable once
constructed; every combinator returns a fresh object.  Bidirectional edges
are allowed, loops and repeated edges are not.

Index conventions used by the combinators (cross-module tests rely on
them):

* ``union``: the first operand keeps ids ``0..n1-1``, the second is
  shifted by ``n1``.
* ``strong_product``: vertex ``(u1, u2)`` has id ``u1*n2 + u2``.
* ``k_expand``: copy ``i`` of vertex ``v`` has id ``v*k + i``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _search
from .errors import BadParams, LoopEdge, NotAcyclic, VertexOutOfRange

DEFAULT_MAS_BUDGET = 1 << 25
DEFAULT_PARTITION_BUDGET = 1 << 22


class Digraph:
    """Immutable simple digraph with mirrored in/out adjacency sets."""

    __slots__ = ("n", "out_adj", "in_adj")

    def __init__(self, n, edges=()):
        if n < 0:
            raise BadParams("vertex count must be non-negative")
        out_adj = [set() for _ in range(n)]
        in_adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise LoopEdge(f"loop at vertex {u} rejected")
            out_adj[u].add(v)
            in_adj[v].add(u)
        self.n = n
        self.out_adj = tuple(frozenset(s) for s in out_adj)
        self.in_adj = tuple(frozenset(s) for s in in_adj)

    # -- basic queries -------------------------------------------------

    def edges(self):
        """Sorted list of all edges as (u, v) pairs."""
        return [(u, v) for u in range(self.n) for v in sorted(self.out_adj[u])]

    def edge_count(self):
        return sum(len(s) for s in self.out_adj)

    def has_edge(self, u, v):
        return v in self.out_adj[u]

    def in_degree(self, v):
        return len(self.in_adj[v])

    def out_degree(self, v):
        return len(self.out_adj[v])

    def out_rows(self):
        """Out-adjacency as one bitmask int per vertex."""
        return [sum(1 << v for v in s) for s in self.out_adj]

    def in_rows(self):
        return [sum(1 << v for v in s) for s in self.in_adj]

    def bidirectional_pairs(self):
        """Unordered pairs joined by edges in both directions."""
        return [
            (u, v)
            for u in range(self.n)
            for v in sorted(self.out_adj[u])
            if u < v and u in self.out_adj[v]
        ]

    def __eq__(self, other):
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self.out_adj == other.out_adj
        )

    def __hash__(self):
        return hash((self.n, self.out_adj))

    def __repr__(self):
        return f"Digraph(n={self.n}, edges={self.edge_count()})"


def from_edge_list(n, edges):
    """Build a digraph from an explicit edge list, collapsing duplicates."""
    return Digraph(n, edges)


# -- standard families ------------------------------------------------


def clique(n):
    """Complete digraph K_n: every pair joined in both directions."""
    if n < 1:
        raise BadParams("clique needs n >= 1")
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def cycle(n):
    """Directed cycle C_n with edges v_i -> v_{i+1 mod n}."""
    if n < 2:
        raise BadParams("cycle needs n >= 2")
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    """Directed path P_n with edges v_i -> v_{i+1}."""
    if n < 1:
        raise BadParams("path needs n >= 1")
    return Digraph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(m, n):
    """All edges in both directions between the two parts, none within."""
    if m < 1 or n < 1:
        raise BadParams("complete_bipartite needs both part sizes >= 1")
    edges = []
    for u in range(m):
        for v in range(m, m + n):
            edges.append((u, v))
            edges.append((v, u))
    return Digraph(m + n, edges)


def standard(kind, *sizes):
    """Dispatch to a standard family by name."""
    builders = {
        "clique": clique,
        "cycle": cycle,
        "path": path,
        "complete_bipartite": complete_bipartite,
    }
    if kind not in builders:
        raise BadParams(f"unknown standard family {kind!r}")
    return builders[kind](*sizes)


# -- structure --------------------------------------------------------


@dataclass(frozen=True)
class StructureReport:
    min_in_degree: int
    max_in_degree: int
    regular_in_out: bool
    bidirectional_edge_count: int
    is_tournament: bool
    girth: int | None  # None means acyclic
    strong: bool
    component_count: int

    @property
    def acyclic(self):
        return self.girth is None


@dataclass(frozen=True)
class SccResult:
    components: tuple  # tuples of vertex ids, reverse topological order
    condensation: "Digraph"
    component_of: tuple  # vertex id -> component index


def strong_components(d):
    """Strongly connected components plus the (acyclic) condensation.

    Components come out in reverse topological order of the condensation:
    every condensation edge points from a higher component index to a
    lower one.
    """
    n = d.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(sorted(d.out_adj[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(sorted(d.out_adj[w]))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))
    comp_of = [0] * n
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    cond_edges = set()
    for u in range(n):
        for v in d.out_adj[u]:
            if comp_of[u] != comp_of[v]:
                cond_edges.add((comp_of[u], comp_of[v]))
    return SccResult(tuple(comps), Digraph(len(comps), cond_edges), tuple(comp_of))


def girth(d):
    """Length of a shortest directed cycle, or None if acyclic."""
    if d.bidirectional_pairs():
        return 2
    best = None
    for v in range(d.n):
        dist = {v: 0}
        frontier = [v]
        while frontier:
            nxt = []
            for u in frontier:
                for w in d.out_adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        for u in d.in_adj[v]:
            if u in dist:
                cand = dist[u] + 1
                if best is None or cand < best:
                    best = cand
    return best


def is_acyclic(d):
    return girth(d) is None


def topological_order(d):
    """Topological order of an acyclic digraph (NotAcyclic otherwise)."""
    indeg = [d.in_degree(v) for v in range(d.n)]
    ready = sorted(v for v in range(d.n) if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in sorted(d.out_adj[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    if len(order) != d.n:
        raise NotAcyclic("digraph contains a directed cycle")
    return order


def structure_report(d):
    n = d.n
    in_degs = [d.in_degree(v) for v in range(n)]
    out_degs = [d.out_degree(v) for v in range(n)]
    bidir = len(d.bidirectional_pairs())
    m = d.edge_count()
    tournament = n >= 1 and bidir == 0 and m == n * (n - 1) // 2
    scc = strong_components(d)
    comp_count = len(scc.components)
    regular = (
        n > 0
        and len(set(in_degs)) == 1
        and len(set(out_degs)) == 1
        and in_degs[0] == out_degs[0]
    )
    return StructureReport(
        min_in_degree=min(in_degs, default=0),
        max_in_degree=max(in_degs, default=0),
        regular_in_out=regular,
        bidirectional_edge_count=bidir,
        is_tournament=tournament,
        girth=girth(d),
        strong=(comp_count == 1 and n >= 1),
        component_count=comp_count,
    )


def induced_subdigraph(d, vertices):
    """Subgraph induced by ``vertices``; returns (digraph, sorted ids)."""
    vs = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(vs)}
    edges = [
        (pos[u], pos[v]) for u in vs for v in d.out_adj[u] if v in pos
    ]
    return Digraph(len(vs), edges), tuple(vs)


# -- maximum induced acyclic subgraph ---------------------------------


@dataclass(frozen=True)
class MasResult:
    size: int
    witness: tuple
    exact: bool


def _greedy_acyclic_set(d):
    # Pick ascending ids, discarding each pick's in-neighbourhood; edges
    # inside the result then all point forward, so it induces an acyclic
    # subgraph of size >= n/(max in-degree + 1).
    alive = set(range(d.n))
    chosen = []
    while alive:
        v = min(alive)
        chosen.append(v)
        alive.discard(v)
        alive -= d.in_adj[v]
    return tuple(chosen)


def mas_exact(d, budget=DEFAULT_MAS_BUDGET):
    """Largest vertex set inducing an acyclic subgraph.

    Branch and bound over subsets in ascending vertex order, pruning
    inclusions that close a directed cycle.  Within budget the result is
    exact and the witness is the lexicographically smallest optimum;
    once the budget is exhausted the best set found so far is returned
    with ``exact=False`` (still a valid acyclic witness).
    """
    n = d.n
    if n == 0:
        return MasResult(0, (), True)
    out_rows = d.out_rows()
    best_size = 0
    best = ()
    members = []
    nodes = 0
    exhausted = False

    def closes_cycle(mask, v):
        # v rejoins itself through the already-chosen vertices?
        new_mask = mask | (1 << v)
        seen = 0
        frontier = out_rows[v] & new_mask
        while frontier:
            if (frontier >> v) & 1:
                return True
            seen |= frontier
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= out_rows[low.bit_length() - 1]
                m ^= low
            frontier = nxt & new_mask & ~seen
        return False

    def dfs(idx, mask, count):
        nonlocal best_size, best, nodes, exhausted
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        if count + (n - idx) <= best_size:
            return
        if idx == n:
            return
        if not closes_cycle(mask, idx):
            members.append(idx)
            if count + 1 > best_size:
                best_size = count + 1
                best = tuple(members)
            dfs(idx + 1, mask | (1 << idx), count + 1)
            members.pop()
        if exhausted:
            return
        dfs(idx + 1, mask, count)

    dfs(0, 0, 0)
    if exhausted:
        fallback = _greedy_acyclic_set(d)
        if len(fallback) > best_size:
            best_size, best = len(fallback), fallback
        return MasResult(best_size, best, False)
    return MasResult(best_size, best, True)


# -- clique partition -------------------------------------------------


@dataclass(frozen=True)
class CliquePartitionResult:
    count: int
    parts: tuple
    exact: bool


def clique_partition_number(d, budget=DEFAULT_PARTITION_BUDGET):
    """Minimum number of bidirectionally-complete classes covering V.

    Equals the chromatic number of the complement of the bidirectional
    graph.  Budget exhaustion degrades to an upper bound (flagged).
    """
    n = d.n
    if n == 0:
        return CliquePartitionResult(0, (), True)
    full = (1 << n) - 1
    bidir_rows = [0] * n
    for u, v in d.bidirectional_pairs():
        bidir_rows[u] |= 1 << v
        bidir_rows[v] |= 1 << u
    comp_rows = [full & ~bidir_rows[v] & ~(1 << v) for v in range(n)]
    greedy = _search.greedy_dsatur(comp_rows, n)
    lower = _search.max_clique_size_lower(comp_rows, n)
    count, coloring, exact = _search.exact_chromatic(
        comp_rows, n, lower, greedy, node_budget=budget
    )
    parts = [[] for _ in range(count)]
    for v, c in enumerate(coloring):
        parts[c].append(v)
    parts = tuple(tuple(p) for p in sorted(parts))
    return CliquePartitionResult(count, parts, exact)


# -- unions, products, expansions -------------------------------------


def disjoint_union(d1, d2):
    """Place the two digraphs next to each other without new edges."""
    n1 = d1.n
    edges = d1.edges() + [(u + n1, v + n1) for u, v in d2.edges()]
    return Digraph(n1 + d2.n, edges)


def unidirectional_union(d1, d2):
    """Disjoint union plus every edge from the first part to the second."""
    n1, n2 = d1.n, d2.n
    out = disjoint_union(d1, d2)
    edges = out.edges()
    edges += [(u, v + n1) for u in range(n1) for v in range(n2)]
    return Digraph(n1 + n2, edges)


def bidirectional_union(d1, d2):
    """Disjoint union plus all cross edges in both directions."""
    n1, n2 = d1.n, d2.n
    edges = disjoint_union(d1, d2).edges()
    for u in range(n1):
        for v in range(n2):
            edges.append((u, v + n1))
            edges.append((v + n1, u))
    return Digraph(n1 + n2, edges)


def union(kind, d1, d2):
    builders = {
        "disjoint": disjoint_union,
        "unidirectional": unidirectional_union,
        "bidirectional": bidirectional_union,
    }
    if kind not in builders:
        raise BadParams(f"unknown union kind {kind!r}")
    return builders[kind](d1, d2)


def strong_product(d1, d2):
    """Product where a coordinate may either stay put or follow an edge.

    Vertex (u1, u2) has id u1*n2 + u2.  Construction is cross-checked
    against the equivalent reflexive-adjacency product rule.
    """
    n1, n2 = d1.n, d2.n
    edges = []
    for u1 in range(n1):
        for u2 in range(n2):
            src = u1 * n2 + u2
            for v2 in d2.out_adj[u2]:
                edges.append((src, u1 * n2 + v2))
            for v1 in d1.out_adj[u1]:
                edges.append((src, v1 * n2 + u2))
                for v2 in d2.out_adj[u2]:
                    edges.append((src, v1 * n2 + v2))
    prod = Digraph(n1 * n2, edges)
    if n1 * n2 <= 128:
        for u1 in range(n1):
            for u2 in range(n2):
                for v1 in range(n1):
                    for v2 in range(n2):
                        expect = (
                            (v1 == u1 or v1 in d1.out_adj[u1])
                            and (v2 == u2 or v2 in d2.out_adj[u2])
                            and not (v1 == u1 and v2 == u2)
                        )
                        got = prod.has_edge(u1 * n2 + u2, v1 * n2 + v2)
                        if got != expect:
                            raise AssertionError("strong product rule violated")
    return prod


def k_expand(d, k):
    """k interlinked copies: ((u,i),(v,j)) is an edge iff (u,v) is one."""
    if k < 1:
        raise BadParams("k_expand needs k >= 1")
    edges = []
    for u, v in d.edges():
        for i in range(k):
            for j in range(k):
                edges.append((u * k + i, v * k + j))
    return Digraph(d.n * k, edges)


def cycle_power_ring(cycle_len, power, copies):
    """Disjoint copies of a strong power of a cycle, tied into a ring.

    Builds ``copies`` copies of cycle(cycle_len) raised to ``power`` under
    the strong product, then adds one edge per copy from its numerically
    last vertex to the numerically first vertex of the next copy (wrapping
    around).  Successive vertices inside a copy are already joined by the
    power construction, so the added edges close a single ring through all
    vertices and the result is strong.

    CLI alias: ``thm3``.
    """
    if cycle_len < 3 or power < 1 or copies < 1:
        raise BadParams("cycle_power_ring needs cycle_len >= 3, power >= 1, copies >= 1")
    block = cycle(cycle_len)
    for _ in range(power - 1):
        block = strong_product(block, cycle(cycle_len))
    size = block.n
    for i in range(size):
        if not block.has_edge(i, (i + 1) % size):
            raise AssertionError("cycle power lost its successor edges")
    edges = []
    for a in range(copies):
        base = a * size
        edges += [(base + u, base + v) for u, v in block.edges()]
        edges.append((base + size - 1, ((a + 1) % copies) * size))
    return Digraph(copies * size, edges)


# -- text and DOT formats ---------------------------------------------


def to_text(d):
    lines = [str(d.n)]
    lines += [f"{u} {v}" for u, v in d.edges()]
    return "\n".join(lines) + "\n"


def from_text(text):
    """Parse the digraph text format: first line n, then 'u v' lines.

    Lines starting with '#' are comments; duplicate edges collapse.
    """
    n = None
    edges = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            n = int(line)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BadParams(f"malformed edge line {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise BadParams("empty digraph file")
    return Digraph(n, edges)


def write_digraph(d, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_text(d))


def read_digraph(path):
    with open(path, "r", encoding="utf-8") as fh:
        return from_text(fh.read())


def to_dot(d, name="D"):
    """DOT export; a bidirectional pair becomes one edge with dir=both."""
    lines = [f"digraph {name} {{"]
    seen_bidir = set()
    for u, v in d.edges():
        if u in d.out_adj[v]:
            if (min(u, v), max(u, v)) in seen_bidir:
                continue
            seen_bidir.add((min(u, v), max(u, v)))
            lines.append(f"  {min(u, v)} -> {max(u, v)} [dir=both];")
        else:
            lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
