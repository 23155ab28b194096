"""Deterministic random instances: planar digraphs, update traces, test pieces.

Traces are self-contained op streams over a fixed vertex set [0, n): they
start from the empty graph and the first block of `add` commands builds the
initial subgraph. Every `add` is drawn from a seed-derived triangulation
template, so planarity holds by construction and never needs re-checking
during generation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graphcore import EmbeddedGraph, PlanarDigraph, planarity_embed


# ---------------------------------------------------------------------------
# Templates and whole-graph generation
# ---------------------------------------------------------------------------


def rand_triangulation_pairs(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Maximal planar simple graph on n >= 3 vertices (random stacked build)."""
    if n < 3:
        return [(0, 1)][: max(0, n - 1)]
    pairs = [(0, 1), (0, 2), (1, 2)]
    faces = [(0, 1, 2), (0, 1, 2)]  # both sides of the starting triangle
    for v in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        pairs += [(min(a, v), max(a, v)), (min(b, v), max(b, v)), (min(c, v), max(c, v))]
        faces += [(a, b, v), (a, c, v), (b, c, v)]
    return pairs


def _template(n: int, seed: int) -> list[tuple[int, int]]:
    return rand_triangulation_pairs(n, random.Random(("template", n, seed).__repr__()))


def gen_planar(n: int, density: float, seed: int) -> PlanarDigraph:
    """Random planar digraph: an oriented subset of a seed-derived triangulation."""
    rng = random.Random(("graph", n, seed, density).__repr__())
    edges = []
    for u, v in _template(n, seed):
        if rng.random() < density:
            edges.append((u, v) if rng.random() < 0.5 else (v, u))
    return PlanarDigraph.from_edges(n, edges)


@dataclass
class Trace:
    n: int
    seed: int
    mode: str  # scc | sc | ssr
    commands: list[tuple] = field(default_factory=list)

    def updates(self):
        return [c for c in self.commands if c[0] in ("add", "del")]

    def format(self) -> str:
        lines = [f"trace {self.n} {self.seed} {self.mode}"]
        for c in self.commands:
            lines.append(" ".join(str(x) for x in c))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Trace":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("trace "):
            raise ValueError("missing trace header")
        _, n, seed, mode = lines[0].split()
        if mode not in ("scc", "sc", "ssr"):
            raise ValueError(f"unknown mode {mode!r}")
        tr = cls(int(n), int(seed), mode)
        for ln in lines[1:]:
            parts = ln.split()
            op = parts[0]
            if op in ("add", "del"):
                tr.commands.append((op, int(parts[1]), int(parts[2])))
            elif op == "q":
                if parts[1] in ("nsccs", "largest", "sc"):
                    tr.commands.append(("q", parts[1]))
                elif parts[1] in ("sccof", "ssr"):
                    tr.commands.append(("q", parts[1], int(parts[2])))
                else:
                    raise ValueError(f"unknown query {parts[1]!r}")
            else:
                raise ValueError(f"unknown command {op!r}")
        return tr


def gen_trace(n: int, steps: int, seed: int, mode: str = "scc",
              density: float = 0.55, query_rate: float = 0.08) -> Trace:
    """Trace with exactly `steps` update commands plus interleaved queries.

    The first ~density*|template| updates build the initial graph; afterwards
    adds and deletes are balanced so the edge count hovers. Deletes always
    target a present edge and adds always stay inside the template.
    """
    if mode not in ("scc", "sc", "ssr"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(("trace", n, seed, mode, steps).__repr__())
    template = _template(n, seed)
    tr = Trace(n, seed, mode)
    alive: list[tuple[int, int]] = []
    updates = 0

    def emit_add():
        nonlocal updates
        u, v = template[rng.randrange(len(template))]
        if rng.random() < 0.5:
            u, v = v, u
        tr.commands.append(("add", u, v))
        alive.append((u, v))
        updates += 1

    def emit_del():
        nonlocal updates
        i = rng.randrange(len(alive))
        u, v = alive[i]
        alive[i] = alive[-1]
        alive.pop()
        tr.commands.append(("del", u, v))
        updates += 1

    def emit_query():
        if mode == "scc":
            kind = rng.choice(("nsccs", "largest", "sccof"))
            if kind == "sccof":
                tr.commands.append(("q", "sccof", rng.randrange(n)))
            else:
                tr.commands.append(("q", kind))
        elif mode == "sc":
            tr.commands.append(("q", "sc"))
        else:
            tr.commands.append(("q", "ssr", rng.randrange(n)))

    initial = min(steps, int(density * len(template)))
    for _ in range(initial):
        emit_add()
    target = max(1, initial)
    while updates < steps:
        if rng.random() < query_rate:
            emit_query()
            continue
        # drift toward the target edge count so dels and adds stay balanced
        p_del = 0.5 if len(alive) >= target else 0.35
        if alive and rng.random() < p_del:
            emit_del()
        else:
            emit_add()
    return tr


# ---------------------------------------------------------------------------
# Embedded pieces for path-net tests
# ---------------------------------------------------------------------------


def embedded_triangulation(n: int, rng: random.Random) -> EmbeddedGraph:
    """Stacked triangulation built directly on the rotation system."""
    g = planarity_embed(3, [(0, 1), (1, 2), (2, 0)])
    walks, _ = g.faces()
    faces = [list(w) for w in walks]
    for _ in range(3, n):
        idx = rng.randrange(len(faces))
        d0, d1, d2 = faces.pop(idx)
        x, e1 = g.insert_vertex_in_face(d0)
        p, q = 2 * e1, 2 * e1 + 1
        v1, v2 = g.orig[d1], g.orig[d2]
        e2 = g.add_edge_before(x, q, v1, d1)
        e3 = g.add_edge_before(x, 2 * e2, v2, d2)
        faces += [[q, d0, 2 * e2 + 1], [2 * e2, d1, 2 * e3 + 1], [d2, p, 2 * e3]]
    g._faces = None
    return g


@dataclass
class TestPiece:
    """Bare piece-shaped bundle: embedding + holes + boundary + real digraph."""

    emb: EmbeddedGraph
    holes: list[list[int]]          # dart walks
    boundary: set[int]
    name: str = "testpiece"

    def real_edges(self):
        return [e for e in range(len(self.emb.e_tail))
                if self.emb.e_alive[e] and self.emb.e_real[e]]

    def vertices(self):
        return [v for v in range(self.emb.nv) if self.emb.vdart[v] >= 0]


def random_piece(n: int, n_holes: int, seed: int, acyclic: bool = False,
                 real_density: float = 0.8) -> TestPiece:
    """Random embedded piece: triangulation with `n_holes` carved-out vertices.

    Hole walks are the links of the deleted vertices; every hole-walk vertex
    is boundary (hole purity). Real edges are a random oriented subset; with
    acyclic=True orientations follow a random vertex ranking.
    """
    rng = random.Random(("piece", n, n_holes, seed).__repr__())
    for attempt in range(60):
        g = embedded_triangulation(n, rng)
        degs = [(g.degree(v), v) for v in range(g.nv)]
        candidates = [v for d, v in sorted(degs, reverse=True) if d >= 4]
        rng.shuffle(candidates)
        centers: list[int] = []
        for v in candidates:
            if len(centers) == n_holes:
                break
            if all(g.other_end(d) not in centers for d in g.darts_at(v)) and \
               not any(_share_face(g, v, c) for c in centers):
                centers.append(v)
        if len(centers) < n_holes:
            continue
        for v in centers:
            for d in list(g.darts_at(v)):
                g.delete_edge(d >> 1)
        walks, _ = g.faces()
        holes = [list(w) for w in walks if len(w) > 3]
        if len(holes) != n_holes:
            continue
        rank = list(range(g.nv))
        rng.shuffle(rank)
        for e in range(len(g.e_tail)):
            if not g.e_alive[e]:
                continue
            if rng.random() >= real_density:
                g.e_real[e] = False
                continue
            g.e_real[e] = True
            u, v = g.e_tail[e], g.e_head[e]
            if acyclic:
                if rank[u] > rank[v]:
                    g.e_tail[e], g.e_head[e] = v, u
            elif rng.random() < 0.5:
                g.e_tail[e], g.e_head[e] = v, u
        boundary = {g.orig[d] for w in holes for d in w}
        return TestPiece(g, holes, boundary, name=f"piece-{n}-{n_holes}-{seed}")
    raise RuntimeError(f"could not carve {n_holes} holes from n={n} (seed {seed})")


def _share_face(g: EmbeddedGraph, u: int, v: int) -> bool:
    _, face_of = g.faces()
    fu = {face_of[d] for d in g.darts_at(u)}
    return any(face_of[d] in fu for d in g.darts_at(v))
