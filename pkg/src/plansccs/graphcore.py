"""Embedded planar digraphs and the classic primitives built on them.

The embedding is a rotation system over *darts*: edge e owns darts 2e (at the
tail) and 2e+1 (at the head). Faces are orbits of d -> next_at_vertex[twin(d)].
Everything else in the library (divisions, holes, path nets) is derived from
this structure, so the mutation operations here (chord insertion, contraction,
deletion) are the only places where embeddings change.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx


class NonPlanar(Exception):
    """The (undirected skeleton of the) graph admits no planar embedding."""


class NonPlanarInsert(NonPlanar):
    """An edge insertion would destroy planarity."""


class SelfLoopError(ValueError):
    """Self-loops are rejected at input; they never affect SCCs."""


class UnknownEdge(KeyError):
    pass


class UnknownVertex(KeyError):
    pass


# ---------------------------------------------------------------------------
# Rotation-system embedding
# ---------------------------------------------------------------------------


class EmbeddedGraph:
    """Mutable combinatorial embedding of a multigraph (no self-loops).

    Vertex ids are dense 0..nv-1. Edge ids are dense and stable; deleted edges
    keep their id with alive=False. Directions are carried (tail/head) but the
    embedding itself is undirected; `real` flags separate payload edges from
    synthetic supergraph edges (connectors, triangulation chords).
    """

    def __init__(self, nv: int):
        self.nv = nv
        self.e_tail: list[int] = []
        self.e_head: list[int] = []
        self.e_real: list[bool] = []
        self.e_alive: list[bool] = []
        self.orig: list[int] = []   # dart -> origin vertex
        self.nxt: list[int] = []    # dart -> next dart in rotation at origin
        self.prv: list[int] = []
        self.vdart: list[int] = [-1] * nv
        self._faces = None          # (list[list[dart]], dart -> face index)

    # -- basic accessors ----------------------------------------------------

    def n_alive_edges(self) -> int:
        return sum(self.e_alive)

    def alive_edges(self):
        return [e for e in range(len(self.e_tail)) if self.e_alive[e]]

    def darts_at(self, v: int) -> list[int]:
        d0 = self.vdart[v]
        if d0 < 0:
            return []
        out = [d0]
        d = self.nxt[d0]
        while d != d0:
            out.append(d)
            d = self.nxt[d]
        return out

    def degree(self, v: int) -> int:
        return len(self.darts_at(v))

    def other_end(self, dart: int) -> int:
        return self.orig[dart ^ 1]

    # -- mutation -----------------------------------------------------------

    def _new_vertex(self) -> int:
        self.vdart.append(-1)
        self.nv += 1
        return self.nv - 1

    def _insert_dart_before(self, v: int, d: int, ref: int | None):
        """Insert dart d into v's rotation immediately before dart ref."""
        self.orig[d] = v
        if ref is None or self.vdart[v] < 0:
            if self.vdart[v] < 0:
                self.vdart[v] = d
                self.nxt[d] = d
                self.prv[d] = d
            else:
                ref = self.vdart[v]
                self._insert_dart_before(v, d, ref)
            return
        p = self.prv[ref]
        self.nxt[p] = d
        self.prv[d] = p
        self.nxt[d] = ref
        self.prv[ref] = d

    def _remove_dart(self, d: int):
        v = self.orig[d]
        if self.nxt[d] == d:
            self.vdart[v] = -1
        else:
            p, n = self.prv[d], self.nxt[d]
            self.nxt[p] = n
            self.prv[n] = p
            if self.vdart[v] == d:
                self.vdart[v] = n
        self.nxt[d] = self.prv[d] = -1

    def _alloc_edge(self, u: int, v: int, real: bool) -> int:
        e = len(self.e_tail)
        self.e_tail.append(u)
        self.e_head.append(v)
        self.e_real.append(real)
        self.e_alive.append(True)
        self.orig.extend((u, v))
        self.nxt.extend((-1, -1))
        self.prv.extend((-1, -1))
        return e

    def add_edge_before(self, u: int, ref_u: int | None, v: int, ref_v: int | None,
                        real: bool = False) -> int:
        """Add edge u->v, inserting its darts before the given reference darts.

        Inserting a chord between walk positions i and j of one face (refs =
        the walk darts w_i and w_j) splits that face in two.
        """
        if u == v:
            raise SelfLoopError(f"self-loop at {u}")
        e = self._alloc_edge(u, v, real)
        self._insert_dart_before(u, 2 * e, ref_u)
        self._insert_dart_before(v, 2 * e + 1, ref_v)
        self._faces = None
        return e

    def insert_vertex_in_face(self, ref_dart: int, real: bool = False) -> tuple[int, int]:
        """Create a fresh vertex joined to orig(ref_dart), inside the face left
        of the walk position ref_dart. Returns (vertex, edge)."""
        u = self.orig[ref_dart]
        x = self._new_vertex()
        e = self._alloc_edge(u, x, real)
        self._insert_dart_before(u, 2 * e, ref_dart)
        self._insert_dart_before(x, 2 * e + 1, None)
        self._faces = None
        return x, e

    def delete_edge(self, e: int):
        if not self.e_alive[e]:
            raise UnknownEdge(e)
        self._remove_dart(2 * e)
        self._remove_dart(2 * e + 1)
        self.e_alive[e] = False
        self._faces = None

    def contract_edge(self, e: int) -> int:
        """Contract edge e, merging head into tail; returns the survivor.

        Parallel edges become self-loops only from the caller's perspective
        (orig of both darts equal); the caller is expected to delete those.
        """
        if not self.e_alive[e]:
            raise UnknownEdge(e)
        p, q = 2 * e, 2 * e + 1
        u, v = self.orig[p], self.orig[q]
        if u == v:
            self.delete_edge(e)
            return u
        for d in self.darts_at(v):
            self.orig[d] = u
        a, b = self.prv[p], self.nxt[p]
        c, d2 = self.prv[q], self.nxt[q]
        only_p = (b == p)
        only_q = (d2 == q)
        if only_p and only_q:
            self.vdart[u] = -1
        elif only_q:
            self.nxt[a] = b
            self.prv[b] = a
            if self.vdart[u] == p:
                self.vdart[u] = b
        elif only_p:
            self.nxt[c] = d2
            self.prv[d2] = c
            self.vdart[u] = d2
        else:
            self.nxt[a] = d2
            self.prv[d2] = a
            self.nxt[c] = b
            self.prv[b] = c
            if self.vdart[u] == p:
                self.vdart[u] = b
        self.nxt[p] = self.prv[p] = self.nxt[q] = self.prv[q] = -1
        self.vdart[v] = -1
        self.e_alive[e] = False
        self._faces = None
        return u

    # -- faces ----------------------------------------------------------------

    def faces(self) -> tuple[list[list[int]], dict[int, int]]:
        """All face walks as dart cycles, plus dart -> face index."""
        if self._faces is not None:
            return self._faces
        face_of: dict[int, int] = {}
        walks: list[list[int]] = []
        nxt = self.nxt
        for e in range(len(self.e_tail)):
            if not self.e_alive[e]:
                continue
            for d0 in (2 * e, 2 * e + 1):
                if d0 in face_of:
                    continue
                fid = len(walks)
                walk = []
                d = d0
                while True:
                    face_of[d] = fid
                    walk.append(d)
                    d = nxt[d ^ 1]
                    if d == d0:
                        break
                walks.append(walk)
        self._faces = (walks, face_of)
        return self._faces

    def euler_check(self) -> bool:
        """V - E + F == 2 on every connected component with at least one edge."""
        seen = [False] * self.nv
        walks, face_of = self.faces()
        for v in range(self.nv):
            if seen[v] or self.vdart[v] < 0:
                continue
            comp_v, comp_e, comp_f = 0, set(), set()
            stack = [v]
            seen[v] = True
            while stack:
                x = stack.pop()
                comp_v += 1
                for d in self.darts_at(x):
                    comp_e.add(d >> 1)
                    comp_f.add(face_of[d])
                    y = self.orig[d ^ 1]
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            if comp_v - len(comp_e) + len(comp_f) != 2:
                return False
        return True

    def subgraph_on_edges(self, edge_ids) -> tuple["EmbeddedGraph", list[int], dict[int, int], list[int]]:
        """Induced sub-embedding on an edge subset.

        Returns (graph, local->global vertices, global->local vertices,
        local edge -> global edge). Rotations are the induced cyclic orders.
        """
        keep = set(edge_ids)
        verts = sorted({self.e_tail[e] for e in keep} | {self.e_head[e] for e in keep})
        g2l = {g: i for i, g in enumerate(verts)}
        sub = EmbeddedGraph(len(verts))
        emap: dict[int, int] = {}
        for e in sorted(keep):
            le = sub._alloc_edge(g2l[self.e_tail[e]], g2l[self.e_head[e]], self.e_real[e])
            emap[e] = le
        for g in verts:
            lv = g2l[g]
            kept = [d for d in self.darts_at(g) if (d >> 1) in keep]
            if not kept:
                continue
            local = [2 * emap[d >> 1] + (d & 1) for d in kept]
            sub.vdart[lv] = local[0]
            k = len(local)
            for i, d in enumerate(local):
                sub.nxt[d] = local[(i + 1) % k]
                sub.prv[d] = local[(i - 1) % k]
                sub.orig[d] = lv
        le2ge = [0] * len(emap)
        for g, l in emap.items():
            le2ge[l] = g
        return sub, verts, g2l, le2ge


# ---------------------------------------------------------------------------
# Embedding-level helpers shared by the division and path-net layers
# ---------------------------------------------------------------------------


def triangulate(g: EmbeddedGraph, real: bool = False) -> list[int]:
    """Add chords until every face has <= 3 darts or <= 3 distinct vertices.

    Faces with repeated vertices that cannot be chorded further (all would be
    self-loops) are left as-is; they behave like triangles for separator and
    hole purposes. Returns the new edge ids.
    """
    added: list[int] = []
    walks, _ = g.faces()
    pending = [list(w) for w in walks]
    while pending:
        walk = pending.pop()
        k = len(walk)
        if k <= 3:
            continue
        origs = [g.orig[d] for d in walk]
        if len(set(origs)) <= 3:
            continue
        pair = None
        for i in range(k):
            j = (i + 2) % k
            if origs[i] != origs[j] and (j + 1) % k != i:
                pair = (i, j) if i < j else (j, i)
                break
        if pair is None:
            # fall back to any non-adjacent pair with distinct endpoints
            for i in range(k):
                for j in range(i + 2, k):
                    if (j + 1) % k == i:
                        continue
                    if origs[i] != origs[j]:
                        pair = (i, j)
                        break
                if pair:
                    break
        if pair is None:
            continue
        i, j = pair
        e = g.add_edge_before(origs[i], walk[i], origs[j], walk[j], real=real)
        added.append(e)
        pending.append(walk[i:j] + [2 * e + 1])
        pending.append(walk[j:] + walk[:i] + [2 * e])
    g._faces = None
    return added


def connect_components(g: EmbeddedGraph, real: bool = False) -> list[int]:
    """Add synthetic edges until the embedding is connected (incl. isolated
    vertices). Each connector lands in arbitrary face corners, which is always
    planar across distinct components."""
    if g.nv == 0:
        return []
    parent = list(range(g.nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(len(g.e_tail)):
        if g.e_alive[e]:
            a, b = find(g.e_tail[e]), find(g.e_head[e])
            if a != b:
                parent[a] = b
    added = []
    reps = sorted({find(v) for v in range(g.nv)})
    for a, b in zip(reps, reps[1:]):
        ru = g.vdart[a] if g.vdart[a] >= 0 else None
        rv = g.vdart[b] if g.vdart[b] >= 0 else None
        e = g.add_edge_before(a, ru, b, rv, real=real)
        added.append(e)
        parent[find(a)] = find(b)
    return added


def face_classes(g: EmbeddedGraph, blocked_edges) -> tuple[list[int], int]:
    """Union faces across every live edge not in `blocked_edges`.

    Two faces end up in one class iff a curve can travel between them without
    crossing a blocked edge (vertex pass-throughs are free exactly when the
    vertex has an unblocked incident edge on the route, which edge-unions
    capture). Returns (class id per face, number of classes).
    """
    walks, face_of = g.faces()
    nf = len(walks)
    parent = list(range(nf))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    blocked = blocked_edges if isinstance(blocked_edges, set) else set(blocked_edges)
    for e in range(len(g.e_tail)):
        if not g.e_alive[e] or e in blocked:
            continue
        a, b = find(face_of[2 * e]), find(face_of[2 * e + 1])
        if a != b:
            parent[a] = b
    classes = [0] * nf
    remap: dict[int, int] = {}
    for f in range(nf):
        r = find(f)
        if r not in remap:
            remap[r] = len(remap)
        classes[f] = remap[r]
    return classes, len(remap)


# ---------------------------------------------------------------------------
# Planarity testing and embedding construction
# ---------------------------------------------------------------------------


def planarity_embed(n: int, edges) -> EmbeddedGraph:
    """Embed a directed multigraph given as [(tail, head), ...].

    Raises NonPlanar if the undirected skeleton is not planar, SelfLoopError
    on self-loops. Edge ids of the result equal input indices; all edges are
    flagged real. The embedding choice is whatever the LR test produces;
    parallel edges are nested next to their skeleton sibling.
    """
    for u, v in edges:
        if u == v:
            raise SelfLoopError(f"self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise UnknownVertex((u, v))
    skel = nx.Graph()
    skel.add_nodes_from(range(n))
    by_pair: dict[tuple[int, int], list[int]] = {}
    for i, (u, v) in enumerate(edges):
        key = (u, v) if u < v else (v, u)
        by_pair.setdefault(key, []).append(i)
    skel.add_edges_from(by_pair)
    ok, emb = nx.check_planarity(skel)
    if not ok:
        raise NonPlanar(f"graph with {n} vertices, {len(edges)} edges is not planar")
    return _embedding_from_rotations(n, edges, by_pair, emb.get_data())


def _embedding_from_rotations(n, edges, by_pair, rot) -> EmbeddedGraph:
    g = EmbeddedGraph(n)
    for u, v in edges:
        g._alloc_edge(u, v, True)
    for v in range(n):
        darts: list[int] = []
        for w in rot.get(v, []):
            key = (v, w) if v < w else (w, v)
            group = by_pair[key]
            # nest parallels: ascending at the lower endpoint, descending at the other
            ordered = sorted(group) if v == key[0] else sorted(group, reverse=True)
            for e in ordered:
                darts.append(2 * e if edges[e][0] == v else 2 * e + 1)
        if not darts:
            continue
        g.vdart[v] = darts[0]
        k = len(darts)
        for i, d in enumerate(darts):
            g.orig[d] = v
            g.nxt[d] = darts[(i + 1) % k]
            g.prv[d] = darts[(i - 1) % k]
    return g


class PlanarityGate:
    """Exact planarity gate for edge insertions, amortized via a witness.

    Maintains a planar supergraph W of the current skeleton. {u,v} already in
    W accepts immediately (parallel edges keep planarity). Otherwise W+uv is
    tested; if even the current graph plus uv is non-planar the insert is
    rejected. W only grows until a reset, so repeated toggling of the same
    adjacency never re-runs the LR test.
    """

    def __init__(self, n: int, adjacencies):
        self.n = n
        self.wadj: set[tuple[int, int]] = set()
        for u, v in adjacencies:
            self.wadj.add((u, v) if u < v else (v, u))
        self._embedding = None
        self._base = None

    def _key(self, u, v):
        return (u, v) if u < v else (v, u)

    def admits(self, u: int, v: int, current_adjacencies=None) -> bool:
        if u == v:
            raise SelfLoopError(f"self-loop at {u}")
        key = self._key(u, v)
        if key in self.wadj:
            return True
        if self._try_common_face(key):
            return True
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.wadj)
        g.add_edge(*key)
        ok, nxemb = nx.check_planarity(g)
        if ok:
            self.wadj.add(key)
            self._store_embedding(nxemb)
            return True
        if current_adjacencies is None:
            return False
        # stale witness edges can block a legal insert; retry from scratch
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self._key(a, b) for a, b in current_adjacencies)
        g.add_edge(*key)
        ok, nxemb = nx.check_planarity(g)
        if not ok:
            return False
        self.wadj = {self._key(a, b) for a, b in g.edges()}
        self._store_embedding(nxemb)
        return True

    def _store_embedding(self, nxemb):
        pairs = sorted(self.wadj)
        by_pair = {p: [i] for i, p in enumerate(pairs)}
        emb = _embedding_from_rotations(self.n, pairs, by_pair, nxemb.get_data())
        for e in range(len(pairs)):
            emb.e_real[e] = False
        self._embedding = (emb, pairs)
        self._base = None

    def _try_common_face(self, key) -> bool:
        """Insert key into the witness embedding in place when its endpoints
        share a face (or one endpoint is still isolated). Avoids the LR run."""
        if self._embedding is None:
            return False
        emb, pairs = self._embedding
        u, v = key
        du0, dv0 = emb.vdart[u], emb.vdart[v]
        if du0 < 0 or dv0 < 0:
            ref_u = du0 if du0 >= 0 else None
            ref_v = dv0 if dv0 >= 0 else None
            emb.add_edge_before(u, ref_u, v, ref_v)
        else:
            _, face_of = emb.faces()
            at_v: dict[int, int] = {}
            d = dv0
            while True:
                at_v.setdefault(face_of[d], d)
                d = emb.nxt[d]
                if d == dv0:
                    break
            hit = None
            d = du0
            while True:
                f = face_of[d]
                if f in at_v:
                    hit = (d, at_v[f])
                    break
                d = emb.nxt[d]
                if d == du0:
                    break
            if hit is None:
                return False
            emb.add_edge_before(u, hit[0], v, hit[1])
        pairs.append(key)
        self.wadj.add(key)
        self._base = None
        return True

    def witness_embedding(self) -> EmbeddedGraph:
        """Embedding of W itself (edges in sorted adjacency order, synthetic)."""
        if self._embedding is None:
            pairs = sorted(self.wadj)
            emb = planarity_embed(self.n, pairs)
            for e in range(len(pairs)):
                emb.e_real[e] = False
            self._embedding = (emb, pairs)
        return self._embedding[0]

    def witness_pairs(self) -> list[tuple[int, int]]:
        self.witness_embedding()
        return self._embedding[1]

    def base_supergraph(self) -> tuple[EmbeddedGraph, dict[tuple[int, int], int]]:
        """Connected triangulated supergraph of W (all edges synthetic), cached.

        Returns the embedding plus pair -> witness edge id, so callers can
        nest real parallel edges next to their witness siblings.
        """
        emb = self.witness_embedding()
        if getattr(self, "_base", None) is None or self._base[2] is not emb:
            H = EmbeddedGraph(self.n)
            H.e_tail = list(emb.e_tail)
            H.e_head = list(emb.e_head)
            H.e_real = [False] * len(emb.e_tail)
            H.e_alive = list(emb.e_alive)
            H.orig = list(emb.orig)
            H.nxt = list(emb.nxt)
            H.prv = list(emb.prv)
            H.vdart = list(emb.vdart)
            connect_components(H)
            triangulate(H)
            pair_edge = {pair: i for i, pair in enumerate(self.witness_pairs())}
            self._base = (H, pair_edge, emb)
        return self._base[0], self._base[1]


# ---------------------------------------------------------------------------
# The mutable planar digraph
# ---------------------------------------------------------------------------


class PlanarDigraph:
    """Planar digraph with stable dense ids; parallel edges ok, no self-loops.

    Mutations go through add_edge/delete_edge; inserts are planarity-gated.
    Deleted edge ids are never reused. The rotation system / face table views
    are derived from the gate's witness embedding restricted to live edges.
    """

    def __init__(self, n: int):
        self.n = n
        self.edges: list[tuple[int, int]] = []
        self.alive: list[bool] = []
        self._by_pair: dict[tuple[int, int], list[int]] = {}
        self.gate = PlanarityGate(n, [])
        self._m_alive = 0

    @classmethod
    def from_edges(cls, n: int, edges) -> "PlanarDigraph":
        planarity_embed(n, edges)  # validates planarity, raises NonPlanar
        g = cls(n)
        for u, v in edges:
            g._install_edge(u, v)
        g.gate = PlanarityGate(n, [(u, v) for u, v in edges])
        return g

    def _install_edge(self, u, v) -> int:
        eid = len(self.edges)
        self.edges.append((u, v))
        self.alive.append(True)
        key = (u, v) if u < v else (v, u)
        self._by_pair.setdefault(key, []).append(eid)
        self._m_alive += 1
        return eid

    # -- views ---------------------------------------------------------------

    def alive_edges(self) -> list[int]:
        return [e for e in range(len(self.edges)) if self.alive[e]]

    def m(self) -> int:
        return self._m_alive

    def adjacency(self) -> list[list[int]]:
        adj = [[] for _ in range(self.n)]
        for e in self.alive_edges():
            u, v = self.edges[e]
            adj[u].append(v)
        return adj

    def radjacency(self) -> list[list[int]]:
        radj = [[] for _ in range(self.n)]
        for e in self.alive_edges():
            u, v = self.edges[e]
            radj[v].append(u)
        return radj

    def undirected_pairs(self) -> set[tuple[int, int]]:
        out = set()
        for e in self.alive_edges():
            u, v = self.edges[e]
            out.add((u, v) if u < v else (v, u))
        return out

    def embedding(self) -> EmbeddedGraph:
        """Fresh embedding of the live edges (edge ids = positions in alive_edges)."""
        ids = self.alive_edges()
        return planarity_embed(self.n, [self.edges[e] for e in ids])

    def rotation_system(self) -> dict[int, list[int]]:
        emb = self.embedding()
        return {v: emb.darts_at(v) for v in range(self.n) if emb.vdart[v] >= 0}

    def face_walks(self) -> list[list[int]]:
        """Faces as alternating vertex walks (vertex sequence per face)."""
        emb = self.embedding()
        walks, _ = emb.faces()
        return [[emb.orig[d] for d in w] for w in walks]

    # -- mutation --------------------------------------------------------------

    def add_vertex(self) -> int:
        self.n += 1
        self.gate.n = self.n
        return self.n - 1

    def add_edge(self, u: int, v: int) -> int:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise UnknownVertex((u, v))
        if u == v:
            raise SelfLoopError(f"self-loop at {u}")
        if not self.gate.admits(u, v, current_adjacencies=self.undirected_pairs()):
            raise NonPlanarInsert((u, v))
        return self._install_edge(u, v)

    def delete_edge(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        for eid in self._by_pair.get(key, ()):  # smallest id first: deterministic
            if self.alive[eid] and self.edges[eid] == (u, v):
                self.alive[eid] = False
                self._m_alive -= 1
                return eid
        raise UnknownEdge((u, v))


# ---------------------------------------------------------------------------
# SCCs and reachability
# ---------------------------------------------------------------------------


@dataclass
class SccPartition:
    """Partition of a vertex set into strongly connected components.

    Components are numbered by their smallest contained vertex id, so the
    numbering is reproducible across runs and implementations.
    """

    comp_of: dict[int, int]
    members: list[list[int]]
    count: int = field(default=0)

    def __post_init__(self):
        self.count = len(self.members)

    def same(self, u: int, v: int) -> bool:
        return self.comp_of[u] == self.comp_of[v]


def tarjan_scc(vertices, adj) -> SccPartition:
    """Iterative Tarjan over `vertices` with adjacency `adj[v] -> iterable`.

    Vertices missing from adj are treated as sinks. Works on any sub-digraph;
    at n=300 this doubles as the from-scratch oracle primitive.
    """
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comp_of: dict[int, int] = {}
    comps: list[list[int]] = []
    counter = 0
    for root in vertices:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            advanced = False
            neigh = adj.get(v, ()) if isinstance(adj, dict) else adj[v]
            for i in range(pi, len(neigh)):
                w = neigh[i]
                if w not in index:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if w in on_stack and low[w] < low[v]:
                    low[v] = low[w]
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                cid = len(comps)
                comps.append(comp)
                for w in comp:
                    comp_of[w] = cid
            elif work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
    # renumber components by smallest member
    order = sorted(range(len(comps)), key=lambda c: min(comps[c]))
    remap = {old: new for new, old in enumerate(order)}
    members = [sorted(comps[c]) for c in order]
    return SccPartition({v: remap[c] for v, c in comp_of.items()}, members)


def reach_sets(vertices, adj, sources, direction: str = "forward") -> set[int]:
    """Vertices reachable from `sources` (forward) or reaching them (backward)."""
    if direction == "backward":
        radj = {v: [] for v in vertices}
        for v in vertices:
            neigh = adj.get(v, ()) if isinstance(adj, dict) else adj[v]
            for w in neigh:
                radj.setdefault(w, []).append(v)
        adj = radj
    elif direction != "forward":
        raise ValueError(direction)
    seen = set(s for s in sources)
    stack = list(seen)
    while stack:
        v = stack.pop()
        neigh = adj.get(v, ()) if isinstance(adj, dict) else adj[v]
        for w in neigh:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


# ---------------------------------------------------------------------------
# Perturbed weights and canonical shortest paths in DAGs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PerturbedWeight:
    """Edge-count length plus an edge-set fingerprint, compared length-major.

    With edge i weighted 2^m + 2^i, a path of k edges with edge set F weighs
    k*2^m + sum(2^i for i in F); two simple paths coincide iff their weights
    do, and comparison never ties between distinct paths.
    """

    length: int
    fingerprint: int

    def key(self, m: int) -> int:
        return (self.length << m) + self.fingerprint

    def __lt__(self, other: "PerturbedWeight") -> bool:
        return (self.length, self.fingerprint) < (other.length, other.fingerprint)


def topological_order(vertices, adj) -> list[int] | None:
    indeg = {v: 0 for v in vertices}
    for v in vertices:
        neigh = adj.get(v, ()) if isinstance(adj, dict) else adj[v]
        for w in neigh:
            indeg[w] += 1
    ready = sorted(v for v in vertices if indeg[v] == 0)
    out = []
    import heapq

    heapq.heapify(ready)
    while ready:
        v = heapq.heappop(ready)
        out.append(v)
        neigh = adj.get(v, ()) if isinstance(adj, dict) else adj[v]
        for w in neigh:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(out) != len(list(vertices)):
        return None
    return out


def dag_sp_tree(vertices, eadj, root: int, m: int,
                order: list[int] | None = None) -> tuple[dict[int, int], dict[int, int]]:
    """Perturbed-shortest-path tree from root in a DAG.

    eadj[v] -> list of (w, edge_id). Returns (parent_edge, weight_key) where
    weight keys are the exact integers (len << m) + fingerprint; absent
    vertices are unreachable. Subpaths of returned paths are themselves the
    canonical paths for their endpoints (optimal substructure + uniqueness).
    """
    if order is None:
        plain = {v: [w for w, _ in (eadj.get(v, ()) if isinstance(eadj, dict) else eadj[v])]
                 for v in vertices}
        order = topological_order(vertices, plain)
        if order is None:
            raise ValueError("graph has a directed cycle")
    wkey: dict[int, int] = {root: 0}
    parent: dict[int, int] = {}
    unit = 1 << m
    for v in order:
        if v not in wkey:
            continue
        base = wkey[v]
        neigh = eadj.get(v, ()) if isinstance(eadj, dict) else eadj[v]
        for w, eid in neigh:
            cand = base + unit + (1 << eid)
            if w not in wkey or cand < wkey[w]:
                wkey[w] = cand
                parent[w] = eid
    return parent, wkey


def unique_shortest_path(vertices, eadj, edge_ends, u: int, v: int,
                         m: int | None = None) -> list[int] | None:
    """The canonical (perturbed-unique) shortest u->v path in an acyclic piece.

    edge_ends[eid] = (tail, head). Returns the vertex sequence or None when v
    is unreachable from u.
    """
    if m is None:
        m = len(edge_ends)
    parent, wkey = dag_sp_tree(vertices, eadj, u, m)
    if v not in wkey:
        return None
    path = [v]
    x = v
    while x != u:
        eid = parent[x]
        x = edge_ends[eid][0]
        path.append(x)
    path.reverse()
    return path
