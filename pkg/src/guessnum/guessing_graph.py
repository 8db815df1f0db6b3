"""The configuration graph of a digraph over a finite alphabet.

A configuration assigns one symbol from ``[s] = {0..s-1}`` to every
vertex and travels across module boundaries as a mixed-radix integer
code ``sum(x_i * s**i)`` (coordinate 0 least significant).  Two
configurations are adjacent when some vertex sees identical
in-neighbourhood values in both but holds different symbols, i.e. no
single strategy of local guessing functions can fix both.

The graph is available lazily through an adjacency oracle and eagerly
through :func:`materialize`, which stores one neighbour bitmask per
configuration.
"""

from __future__ import annotations

import itertools

from .errors import AlphabetMismatch, BadParams, SizeGuard

DEFAULT_GUARD = 1 << 22


def encode(symbols, s):
    """Mixed-radix code of a symbol word (coordinate 0 least significant)."""
    code = 0
    for x in reversed(symbols):
        if not 0 <= x < s:
            raise AlphabetMismatch(f"symbol {x} outside alphabet of size {s}")
        code = code * s + x
    return code


def decode(code, n, s):
    """Inverse of :func:`encode` for words of length n."""
    if not 0 <= code < s**n:
        raise AlphabetMismatch(f"code {code} outside [0, {s}^{n})")
    out = []
    for _ in range(n):
        code, r = divmod(code, s)
        out.append(r)
    return tuple(out)


def add_codes(a, b, n, s):
    """Coordinatewise sum mod s of two configuration codes."""
    if s == 2:
        return a ^ b
    xa, xb = decode(a, n, s), decode(b, n, s)
    return encode(tuple((u + v) % s for u, v in zip(xa, xb)), s)


def negate_code(a, n, s):
    if s == 2:
        return a
    return encode(tuple((-u) % s for u in decode(a, n, s)), s)


class GuessingGraph:
    """Handle on the configuration graph of ``digraph`` over ``[s]``.

    The oracle methods work at any size; ``materialize`` additionally
    stores explicit adjacency rows for the exact solvers, guarded by a
    configuration-count limit.
    """

    def __init__(self, digraph, s):
        if s < 2:
            raise BadParams("alphabet size must be at least 2")
        self.digraph = digraph
        self.s = s
        self.n = digraph.n
        self.n_configs = s**digraph.n
        self.rows = None
        self._zero_neighbors = None

    # -- oracle --------------------------------------------------------

    def _check(self, code):
        if not 0 <= code < self.n_configs:
            raise AlphabetMismatch(
                f"code {code} outside [0, {self.s}^{self.n})"
            )

    def adjacent(self, x, y):
        """True iff some vertex agrees on its in-neighbourhood but not itself."""
        self._check(x)
        self._check(y)
        if x == y:
            return False
        xs = decode(x, self.n, self.s)
        ys = decode(y, self.n, self.s)
        for i in range(self.n):
            if xs[i] == ys[i]:
                continue
            if all(xs[j] == ys[j] for j in self.digraph.in_adj[i]):
                return True
        return False

    def neighbors(self, x, guard=DEFAULT_GUARD):
        """Exact neighbour set of a configuration code."""
        self._check(x)
        if self.n_configs > guard:
            raise SizeGuard(
                f"neighbour enumeration needs {self.s}^{self.n} configurations"
                f" (> guard {guard})",
                needed=self.n_configs,
                guard=guard,
            )
        if self.rows is not None:
            return _mask_to_set(self.rows[x])
        s, n = self.s, self.n
        xs = decode(x, n, s)
        out = set()
        for i in range(n):
            fixed = set(self.digraph.in_adj[i]) | {i}
            free = [j for j in range(n) if j not in fixed]
            for yi in range(s):
                if yi == xs[i]:
                    continue
                base = list(xs)
                base[i] = yi
                for combo in itertools.product(range(s), repeat=len(free)):
                    word = list(base)
                    for j, val in zip(free, combo):
                        word[j] = val
                    out.add(encode(word, s))
        out.discard(x)
        return out

    def zero_neighbors(self, guard=DEFAULT_GUARD):
        if self._zero_neighbors is None:
            self._zero_neighbors = tuple(sorted(self.neighbors(0, guard=guard)))
        return self._zero_neighbors

    def degree(self, guard=DEFAULT_GUARD):
        """Common degree (the graph is regular by translation)."""
        return len(self.zero_neighbors(guard=guard))

    # -- materialization ----------------------------------------------

    def materialize(self, guard=DEFAULT_GUARD):
        """Build explicit adjacency rows; translation of the zero row."""
        if self.rows is not None:
            return self
        if self.n_configs > guard:
            raise SizeGuard(
                f"materialization needs {self.s}^{self.n} = {self.n_configs}"
                f" configurations (> guard {guard})",
                needed=self.n_configs,
                guard=guard,
            )
        zero = self.zero_neighbors(guard=guard)
        n, s, total = self.n, self.s, self.n_configs
        rows = [0] * total
        if s == 2:
            for x in range(total):
                row = 0
                for z in zero:
                    row |= 1 << (x ^ z)
                rows[x] = row
        else:
            zero_words = [decode(z, n, s) for z in zero]
            weights = [s**i for i in range(n)]
            for x in range(total):
                xw = decode(x, n, s)
                row = 0
                for zw in zero_words:
                    y = 0
                    for i in range(n):
                        y += ((xw[i] + zw[i]) % s) * weights[i]
                    row |= 1 << y
                rows[x] = row
        self.rows = rows
        return self

    @property
    def materialized(self):
        return self.rows is not None


def _mask_to_set(mask):
    out = set()
    while mask:
        low = mask & -mask
        out.add(low.bit_length() - 1)
        mask ^= low
    return out


def adjacent(handle, x, y):
    return handle.adjacent(x, y)


def neighbors(handle, x, guard=DEFAULT_GUARD):
    return handle.neighbors(x, guard=guard)


def materialize(digraph, s, guard=DEFAULT_GUARD):
    return GuessingGraph(digraph, s).materialize(guard=guard)


def degree_closed_form(digraph, s, node_cap=1 << 22):
    """Degree of the configuration graph without touching configurations.

    Inclusion-exclusion over the digraph's independent sets (sets with no
    edge between members in either direction): each set I contributes
    (-1)^(|I|-1) * (s-1)^|I| * s^(n - |in_nbhd(I)| - |I|).
    """
    n = digraph.n
    in_rows = digraph.in_rows()
    out_rows = digraph.out_rows()
    blocked = [in_rows[v] | out_rows[v] for v in range(n)]
    total = 0
    visited = 0

    def extend(start, size, in_union, forbidden):
        nonlocal total, visited
        for v in range(start, n):
            if (forbidden >> v) & 1:
                continue
            visited += 1
            if visited > node_cap:
                raise SizeGuard(
                    "independent-set enumeration exceeded its cap",
                    needed=visited,
                    guard=node_cap,
                )
            union = in_union | in_rows[v]
            card = size + 1
            exponent = n - union.bit_count() - card
            term = (s - 1) ** card * s**exponent
            total += term if card % 2 == 1 else -term
            extend(v + 1, card, union, forbidden | blocked[v] | (1 << v))

    extend(0, 0, 0, 0)
    return total


def write_edge_list(handle, path=None):
    """Plain edge list of the materialized graph (vertices = codes)."""
    if not handle.materialized:
        raise BadParams("materialize the handle before exporting")
    lines = [f"# configs={handle.n_configs} n={handle.n} s={handle.s}"]
    for x in range(handle.n_configs):
        mask = handle.rows[x] & ~((1 << (x + 1)) - 1)
        while mask:
            low = mask & -mask
            lines.append(f"{x} {low.bit_length() - 1}")
            mask ^= low
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
