"""Cycle codes of graphs: binary LRCs with availability 2.

A reduced graph's edges are the code's variables and its vertices the
parity constraints, so the parity-check matrix is the vertex-edge incidence
matrix and the code is the cycle space. Minimum distance equals the girth;
each variable has two disjoint repair groups, one per endpoint.
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .algebra import Matrix, PrimeField, rank_nullspace
from .code import LinearCode

GF2 = PrimeField(2)
DISTANCE_K_GUARD = 24


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices 0..m-1; edge j is ``edges[j]``."""

    m: int
    edges: tuple[tuple[int, int], ...]
    name: str = ""

    def __post_init__(self):
        seen = set()
        norm = []
        for u, v in self.edges:
            if not (0 <= u < self.m and 0 <= v < self.m):
                raise GraphError(f"edge ({u}, {v}) out of range for {self.m} vertices")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"repeated edge {key}")
            seen.add(key)
            norm.append((u, v))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def E(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.m)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(x) for x in nb)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.m)]
        for j, (u, v) in enumerate(self.edges):
            inc[u].append(j)
            inc[v].append(j)
        return tuple(tuple(x) for x in inc)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def regular_degree(self) -> int | None:
        d = set(self.degrees())
        return d.pop() if len(d) == 1 else None

    def components(self) -> int:
        seen = [False] * self.m
        count = 0
        for s in range(self.m):
            if seen[s]:
                continue
            count += 1
            seen[s] = True
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
        return count

    def is_connected(self) -> bool:
        return self.m > 0 and self.components() == 1

    def to_text(self) -> str:
        return f"{self.m} {self.E}\n" + "".join(f"{u} {v}\n" for u, v in self.edges)

    @classmethod
    def from_text(cls, text: str, name: str = "") -> SimpleGraph:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        try:
            m, e = (int(t) for t in lines[0].split())
            edges = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
        except (IndexError, ValueError):
            raise GraphError("graph file must be 'V E' then E lines 'u v'") from None
        if len(edges) != e or any(len(x) != 2 for x in edges):
            raise GraphError(f"expected {e} edge lines of two integers")
        return cls(m, tuple(edges), name)


def girth(g: SimpleGraph) -> int:
    """Length of a shortest cycle, 0 if the graph is acyclic.

    BFS from every vertex; a non-tree edge (x, y) closes a cycle of length
    at most dist[x] + dist[y] + 1, and the minimum over all roots is exact.
    """
    best = 0
    for root in range(g.m):
        dist = [-1] * g.m
        parent = [-1] * g.m
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if best and 2 * dist[x] >= best:
                break
            for y in g.adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x]:
                    c = dist[x] + dist[y] + 1
                    if not best or c < best:
                        best = c
    return best


def edge_cycle_lengths(g: SimpleGraph) -> list[int | None]:
    """Shortest cycle through each edge (None for bridges)."""
    out = []
    for j, (u, v) in enumerate(g.edges):
        dist = {u: 0}
        queue = deque([u])
        found = None
        while queue and found is None:
            x = queue.popleft()
            for k in g.incident[x]:
                if k == j:
                    continue
                a, b = g.edges[k]
                y = b if a == x else a
                if y in dist:
                    continue
                dist[y] = dist[x] + 1
                if y == v:
                    found = dist[y] + 1
                    break
                queue.append(y)
        out.append(found)
    return out


def moore_lower_bound(degree: int, girth_: int) -> int:
    """Fewest vertices a degree-regular graph of the given girth can have."""
    if degree < 2 or girth_ < 3:
        raise ValueError("need degree >= 2 and girth >= 3")
    d = degree
    if girth_ % 2:
        t = (girth_ - 1) // 2
        return 1 + d * sum((d - 1) ** i for i in range(t))
    t = girth_ // 2
    return 2 * sum((d - 1) ** i for i in range(t))


# -- named graphs ----------------------------------------------------------


def lcf_graph(m: int, shifts: list[int], repeats: int, name: str = "") -> SimpleGraph:
    edges = {(i, (i + 1) % m) for i in range(m)}
    seq = shifts * repeats
    for i, s in enumerate(seq):
        j = (i + s) % m
        edges.add((min(i, j), max(i, j)))
    norm = sorted({(min(a, b), max(a, b)) for a, b in edges})
    return SimpleGraph(m, tuple(norm), name)


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return SimpleGraph(n, tuple((i, (i + 1) % n) for i in range(n)), f"cycle({n})")


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)), f"complete({n})")


def k33() -> SimpleGraph:
    """K_{3,3} with constraints c1..c6 -> 0..5 and edge j = variable x_(j+1),
    so its incidence matrix is exactly the 6 x 9 example matrix."""
    edges = ((0, 3), (1, 4), (2, 5), (0, 5), (1, 3), (2, 4), (0, 4), (1, 5), (2, 3))
    return SimpleGraph(6, edges, "k33")


def petersen() -> SimpleGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SimpleGraph(10, tuple(outer + spokes + inner), "petersen")


# name -> (builder, degree, girth) checked on load
_NAMED = {
    "k33": (k33, 3, 4),
    "k4": (lambda: complete_graph(4), 3, 3),
    "petersen": (petersen, 3, 5),
    "heawood": (lambda: lcf_graph(14, [5, -5], 7, "heawood"), 3, 6),
    "mcgee": (lambda: lcf_graph(24, [12, 7, -7], 8, "mcgee"), 3, 7),
    "tutte_coxeter": (lambda: lcf_graph(30, [-13, -9, 7, -7, 9, 13], 5, "tutte_coxeter"), 3, 8),
}


def named_graph(name: str) -> SimpleGraph:
    m = re.fullmatch(r"(cycle|complete)\((\d+)\)", name)
    if m:
        n = int(m.group(2))
        g = cycle_graph(n) if m.group(1) == "cycle" else complete_graph(n)
        return g
    if name not in _NAMED:
        raise GraphError(f"unknown graph {name!r}; known: {', '.join(sorted(_NAMED))}, cycle(n), complete(n)")
    build, deg, gi = _NAMED[name]
    g = build()
    if g.regular_degree() != deg or girth(g) != gi:
        raise AssertionError(f"{name}: expected {deg}-regular girth {gi}")
    return SimpleGraph(g.m, g.edges, name)


# -- Tanner extension and the cycle code -----------------------------------


@dataclass(frozen=True)
class TannerCode:
    graph: SimpleGraph
    H: Matrix
    code: LinearCode
    girth: int

    @property
    def n(self) -> int:
        return self.graph.E

    @property
    def k(self) -> int:
        return self.code.k


def incidence_matrix(g: SimpleGraph) -> Matrix:
    rows = [[0] * g.E for _ in range(g.m)]
    for j, (u, v) in enumerate(g.edges):
        rows[u][j] = 1
        rows[v][j] = 1
    return Matrix.from_rows(GF2, rows, g.E)


def extend_to_tanner(g: SimpleGraph) -> TannerCode:
    """Constraints are vertices, variables are edges; the code is ker H over GF(2)."""
    H = incidence_matrix(g)
    return TannerCode(g, H, LinearCode.from_parity(H, name=g.name or "graph"), girth(g))


def is_cycle_codeword(g: SimpleGraph, word) -> bool:
    """Even degree at every vertex in the edge subgraph selected by ``word``."""
    deg = [0] * g.m
    for j, bit in enumerate(word):
        if bit:
            u, v = g.edges[j]
            deg[u] += 1
            deg[v] += 1
    return all(d % 2 == 0 for d in deg)


def repair_groups(t: TannerCode, j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The other edges at each endpoint of edge j; each XORs to bit j."""
    g = t.graph
    if not 0 <= j < g.E:
        raise IndexError(f"edge index {j} out of range")
    u, v = g.edges[j]
    return (
        tuple(e for e in g.incident[u] if e != j),
        tuple(e for e in g.incident[v] if e != j),
    )


@dataclass(frozen=True)
class CycleCodeParams:
    n: int
    k: int
    d: int
    locality: int
    availability: int
    d_provenance: str  # "brute-force" or "by-theorem"

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.n, self.k, self.d, self.locality, self.availability)


def cycle_code_params(t: TannerCode, k_guard: int = DISTANCE_K_GUARD) -> CycleCodeParams:
    from .verify import brute_min_distance

    g = t.graph
    deg = g.regular_degree()
    if t.girth < 3:
        raise GraphError("acyclic graph: the cycle code is trivial")
    if deg is None:
        raise GraphError("cycle_code_params expects a regular graph")
    rank, _ = rank_nullspace(t.H)
    k = g.E - rank
    if k <= k_guard:
        d = brute_min_distance(t.code, guard=2**k_guard)
        if d != t.girth:
            raise AssertionError(f"measured distance {d} != girth {t.girth}")
        prov = "brute-force"
    else:
        d = t.girth
        prov = "by-theorem"
    for j in range(g.E):
        a, b = repair_groups(t, j)
        if set(a) & set(b) or len(a) > deg - 1 or len(b) > deg - 1:
            raise AssertionError(f"edge {j} lacks two disjoint repair groups")
    return CycleCodeParams(g.E, k, d, deg - 1, 2, prov)


# -- girth-targeted generation ---------------------------------------------


@dataclass(frozen=True)
class GeneratedGraph:
    graph: SimpleGraph
    girth: int
    target: int
    met: bool
    iterations: int


def _random_regular(m: int, d: int, rng: random.Random) -> list[tuple[int, int]]:
    """Configuration model, retried until the pairing is simple."""
    while True:
        stubs = [v for v in range(m) for _ in range(d)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for a, b in zip(stubs[::2], stubs[1::2]):
            e = (min(a, b), max(a, b))
            if a == b or e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return sorted(edges)


def _score(m: int, edges: list[tuple[int, int]], target: int) -> tuple[int, SimpleGraph]:
    g = SimpleGraph(m, tuple(edges))
    pen = 0
    for c in edge_cycle_lengths(g):
        if c is not None and c < target:
            pen += target - c
    # disconnected graphs are never accepted as final
    pen += 10 * target * (g.components() - 1)
    return pen, g


def generate_regular_girth(degree: int, girth_target: int, vertex_budget: int, seed: int,
                           max_iterations: int | None = None) -> GeneratedGraph:
    """Random degree-regular graph on ``vertex_budget`` vertices, improved by
    double-edge swaps that remove edges lying on short cycles.

    Swaps never increase the short-cycle penalty except through restarts,
    which reseed from a fresh configuration-model graph. Deterministic for a
    fixed seed.
    """
    d, m = degree, vertex_budget
    if d < 2 or girth_target < 3:
        raise ValueError("need degree >= 2 and girth target >= 3")
    if (d * m) % 2:
        raise ValueError(f"degree * vertices = {d * m} must be even")
    if m <= d:
        raise ValueError("need more vertices than the degree")
    lower = moore_lower_bound(d, girth_target)
    if m < lower:
        raise ValueError(f"infeasible: girth {girth_target} at degree {d} needs >= {lower} vertices")
    if d == 2:
        g = cycle_graph(m)
        return GeneratedGraph(g, m, girth_target, m >= girth_target, 0)

    rng = random.Random(seed)
    E = d * m // 2
    cap = max_iterations if max_iterations is not None else 10_000 * E
    restart_after = 40 * E
    edges = _random_regular(m, d, rng)
    pen, g = _score(m, edges, girth_target)
    best = (pen, g)
    stale = 0
    it = 0
    while pen > 0 and it < cap:
        it += 1
        cyc = edge_cycle_lengths(g)
        bad = [j for j, c in enumerate(cyc) if c is not None and c < girth_target]
        if not bad:
            bad = list(range(E))  # only disconnectedness left
        j1 = rng.choice(bad)
        j2 = rng.randrange(E)
        (a, b), (c, e) = edges[j1], edges[j2]
        if len({a, b, c, e}) < 4:
            continue
        if rng.random() < 0.5:
            new1, new2 = (a, c), (b, e)
        else:
            new1, new2 = (a, e), (b, c)
        new1 = (min(new1), max(new1))
        new2 = (min(new2), max(new2))
        present = set(edges)
        if new1 in present or new2 in present:
            continue
        cand = [x for k, x in enumerate(edges) if k not in (j1, j2)] + [new1, new2]
        cand.sort()
        cpen, cg = _score(m, cand, girth_target)
        if cpen <= pen:
            stale = 0 if cpen < pen else stale + 1
            edges, pen, g = cand, cpen, cg
            if pen < best[0]:
                best = (pen, g)
        else:
            stale += 1
        if stale > restart_after:
            edges = _random_regular(m, d, rng)
            pen, g = _score(m, edges, girth_target)
            stale = 0
    final = g if pen == 0 else best[1]
    gi = girth(final)
    met = gi >= girth_target and final.is_connected()
    name = f"gen:{d},{girth_target},{m},{seed}"
    return GeneratedGraph(SimpleGraph(final.m, final.edges, name), gi, girth_target, met, it)


# -- graph source specs ----------------------------------------------------


def load_graph(spec: str) -> SimpleGraph:
    """Resolve ``name:<id>``, ``file:<path>`` or ``gen:<degree>,<girth>,<budget>,<seed>``."""
    kind, _, arg = spec.partition(":")
    if kind == "name":
        return named_graph(arg)
    if kind == "file":
        path = Path(arg)
        return SimpleGraph.from_text(path.read_text(), name=path.stem)
    if kind == "gen":
        try:
            deg, gi, budget, seed = (int(x) for x in arg.split(","))
        except ValueError:
            raise GraphError("gen spec is gen:<degree>,<girth>,<budget>,<seed>") from None
        return generate_regular_girth(deg, gi, budget, seed).graph
    raise GraphError(f"unknown graph source {spec!r}")
