"""r-divisions with few holes: construction, validation, dynamic maintenance.

A division partitions the live edges of a PlanarDigraph into pieces. Each
piece carries a connected plane supergraph P+ (its region of the global
triangulated witness supergraph) whose designated faces are the piece's
holes. Every vertex on a hole walk is boundary ("hole purity"), which keeps
downstream reporting over V(P) \\ boundary exact without a residue layer.

Deletions keep P+ intact (the deleted edge just turns synthetic). Insertions
become two-vertex mini-pieces; an endpoint interior to an existing piece is
promoted into that piece's boundary along one incident (triangle) face. A
full rebuild runs when the fresh-edge buffer overflows or a promotion would
break the hole/boundary bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphcore import EmbeddedGraph, PlanarDigraph


class InvalidR(ValueError):
    pass


@dataclass
class DivisionConfig:
    c1: float = 2.0            # piece size bound: |V(P)| <= c1 * r
    c2: float = 4.0            # boundary bound: |bnd P| <= c2 * sqrt(r)
    c3: float = 8.0            # piece count bound: |pieces| <= c3 * n / r + |F|
    h_max: int = 5             # holes per piece
    f_max: int | None = None   # fresh-edge buffer; default max(8, ceil(sqrt(r)))
    separator_tries: int = 10
    seed: int = 0

    def fresh_cap(self, r: int) -> int:
        return self.f_max if self.f_max is not None else max(8, math.isqrt(max(0, r - 1)) + 1)


@dataclass
class Hole:
    walk: list[int]                 # darts of the bounding face walk (piece-local)
    order: list[int]                # deduplicated local vertex order around the walk
    occ_index: dict[int, int]       # chosen occurrence index per vertex
    walk_edges: list[int]           # local edge per walk position (dart >> 1)
    walk_origins: list[int]         # local vertex per walk position

    @classmethod
    def from_walk(cls, emb: EmbeddedGraph, walk_darts: list[int]) -> "Hole":
        origins = [emb.orig[d] for d in walk_darts]
        order, occ = [], {}
        for i, v in enumerate(origins):
            if v not in occ:
                occ[v] = i
                order.append(v)
        return cls(list(walk_darts), order, occ, [d >> 1 for d in walk_darts], origins)

    def vertex_set(self) -> set[int]:
        return set(self.order)


class Piece:
    """One piece: global vertex/edge content plus its embedded supergraph."""

    def __init__(self, pid: int, emb: EmbeddedGraph, l2g: list[int],
                 le2ge: list[int | None], holes: list[Hole], boundary_l: set[int],
                 is_mini: bool = False):
        self.id = pid
        self.emb = emb
        self.l2g = l2g
        self.g2l = {g: l for l, g in enumerate(l2g)}
        self.le2ge = le2ge
        self.ge2le = {ge: le for le, ge in enumerate(le2ge) if ge is not None}
        self.holes = holes
        self.boundary_l = boundary_l
        self.is_mini = is_mini
        self.version = 0
        self.aux: dict = {}

    # -- global views ------------------------------------------------------

    def vertices_g(self) -> list[int]:
        return [self.l2g[l] for l in range(len(self.l2g))]

    def boundary_g(self) -> set[int]:
        return {self.l2g[l] for l in self.boundary_l}

    def edge_ids_g(self) -> list[int]:
        return [self.le2ge[le] for le in range(len(self.le2ge))
                if self.le2ge[le] is not None and self.emb.e_alive[le] and self.emb.e_real[le]]

    def size(self) -> int:
        return len(self.l2g)

    # -- local views ---------------------------------------------------------

    def real_edges_l(self) -> list[int]:
        emb = self.emb
        return [e for e in range(len(emb.e_tail)) if emb.e_alive[e] and emb.e_real[e]]

    def real_eadj_l(self) -> list[list[tuple[int, int]]]:
        adj = [[] for _ in range(self.emb.nv)]
        for e in self.real_edges_l():
            adj[self.emb.e_tail[e]].append((self.emb.e_head[e], e))
        return adj

    def hole_vertex_union_l(self) -> set[int]:
        out: set[int] = set()
        for h in self.holes:
            out |= h.vertex_set()
        return out

    def drop_real_edge(self, ge: int):
        le = self.ge2le.pop(ge)
        self.emb.e_real[le] = False
        self.le2ge[le] = None
        self.version += 1
        self.aux.clear()

    def touch(self):
        self.version += 1
        self.aux.clear()


def _mini_piece(pid: int, ge: int, u: int, v: int) -> Piece:
    emb = EmbeddedGraph(2)
    e = emb._alloc_edge(0, 1, True)
    for d, vert in ((0, 0), (1, 1)):
        emb.vdart[vert] = d
        emb.nxt[d] = emb.prv[d] = d
        emb.orig[d] = vert
    walk = emb.faces()[0][0]
    hole = Hole.from_walk(emb, walk)
    return Piece(pid, emb, [u, v], [ge], [hole], {0, 1}, is_mini=True)


def _vertex_piece(pid: int, u: int) -> Piece:
    return Piece(pid, EmbeddedGraph(1), [u], [], [], set(), is_mini=True)


class RDivision:
    def __init__(self, g: PlanarDigraph, r: int, cfg: DivisionConfig):
        self.g = g
        self.r = r
        self.cfg = cfg
        self.pieces: dict[int, Piece] = {}
        self.next_pid = 0
        self.fresh: list[int] = []          # mini-piece ids in insertion order
        self.v2p: list[list[int]] = []
        self.e2p: dict[int, int] = {}
        self.epoch = 0
        self.last_rebuilt: list[int] = []   # piece ids touched by the last update
        self.full_rebuilds = 0

    # -- derived maps ----------------------------------------------------------

    def _register(self, piece: Piece) -> int:
        pid = self.next_pid
        self.next_pid += 1
        piece.id = pid
        self.pieces[pid] = piece
        for gv in piece.l2g:
            self.v2p[gv].append(pid)
        for ge in piece.edge_ids_g():
            self.e2p[ge] = pid
        return pid

    def _unregister(self, pid: int):
        piece = self.pieces.pop(pid)
        for gv in piece.l2g:
            self.v2p[gv].remove(pid)
        for ge in piece.edge_ids_g():
            self.e2p.pop(ge, None)

    def boundary_union_g(self) -> set[int]:
        out: set[int] = set()
        for p in self.pieces.values():
            out |= p.boundary_g()
        return out

    def piece_of_edge(self, ge: int) -> Piece:
        return self.pieces[self.e2p[ge]]

    # -- updates -----------------------------------------------------------------

    def apply_update(self, op: str, u: int, v: int):
        """insert/delete one edge; returns the list of touched piece ids."""
        self.last_rebuilt = []
        if op == "insert":
            ge = self.g.add_edge(u, v)  # raises NonPlanarInsert / SelfLoopError
            if not self._promote_endpoints(u, v):
                self._full_rebuild()
                return self.last_rebuilt
            pid = self._register(_mini_piece(0, ge, u, v))
            self.fresh.append(pid)
            self.last_rebuilt.append(pid)
            if len(self.fresh) > self.cfg.fresh_cap(self.r):
                self._full_rebuild()
        elif op == "delete":
            ge = self.g.delete_edge(u, v)  # raises UnknownEdge
            pid = self.e2p.pop(ge)
            piece = self.pieces[pid]
            if piece.is_mini:
                self.fresh.remove(pid)
                self._unregister_mini(pid)
            else:
                piece.drop_real_edge(ge)
                self.last_rebuilt.append(pid)
        else:
            raise ValueError(op)
        return self.last_rebuilt

    def _unregister_mini(self, pid: int):
        piece = self.pieces.pop(pid)
        for gv in piece.l2g:
            self.v2p[gv].remove(pid)

    def add_vertex(self) -> int:
        gv = self.g.add_vertex()
        self.v2p.append([])
        self._register(_vertex_piece(0, gv))
        return gv

    def _promote_endpoints(self, u: int, v: int) -> bool:
        for x in (u, v):
            for pid in list(self.v2p[x]):
                piece = self.pieces[pid]
                if piece.is_mini:
                    continue
                lx = piece.g2l[x]
                if lx in piece.boundary_l:
                    continue
                if not self._promote(piece, lx):
                    return False
                self.last_rebuilt.append(pid)
        return True

    def _promote(self, piece: Piece, lx: int) -> bool:
        dart = piece.emb.vdart[lx]
        walks, face_of = piece.emb.faces()
        hole = Hole.from_walk(piece.emb, walks[face_of[dart]])
        new_boundary = piece.boundary_l | hole.vertex_set()
        if len(piece.holes) + 1 > self.cfg.h_max:
            return False
        if len(new_boundary) > self.cfg.c2 * math.sqrt(self.r):
            return False
        piece.holes.append(hole)
        piece.boundary_l = new_boundary
        piece.touch()
        return True

    def _full_rebuild(self):
        fresh_div = build_rdivision(self.g, self.r, self.cfg)
        self.pieces = fresh_div.pieces
        self.next_pid = fresh_div.next_pid
        self.fresh = []
        self.v2p = fresh_div.v2p
        self.e2p = fresh_div.e2p
        self.epoch += 1
        self.full_rebuilds += 1
        self.last_rebuilt = list(self.pieces.keys())


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def build_rdivision(g: PlanarDigraph, r: int, cfg: DivisionConfig | None = None) -> RDivision:
    cfg = cfg or DivisionConfig()
    if r < 1 or (g.n > 0 and r > g.n):
        raise InvalidR(f"r={r} outside [1, {g.n}]")
    H, h2g = _supergraph(g)
    div = RDivision(g, r, cfg)
    div.v2p = [[] for _ in range(g.n)]

    deg_h = [0] * H.nv
    for e in H.alive_edges():
        deg_h[H.e_tail[e]] += 1
        deg_h[H.e_head[e]] += 1

    sc = _Scratch(H)
    max_v = cfg.c1 * r
    max_b = cfg.c2 * math.sqrt(r)
    stack: list[list[int]] = list(sc.components(H.alive_edges()))
    while stack:
        region = stack.pop()
        if not region:
            continue
        verts = sc.prepare(region)
        piece = None
        if len(verts) <= max_v:
            piece = _finalize_region(H, h2g, region, verts, deg_h, max_b, cfg.h_max)
        if piece is not None:
            div._register(piece)
            continue
        parts = sc.split(region)
        if parts is None:
            half = max(1, len(region) // 2)
            parts = [region[:half], region[half:]]
        for part in parts:
            stack.extend(sc.components(part))
    # vertices with no region (possible only if H had no edges at all)
    covered = {gv for p in div.pieces.values() for gv in p.l2g}
    for gv in range(g.n):
        if gv not in covered:
            div._register(_vertex_piece(0, gv))
    return div


def _supergraph(g: PlanarDigraph) -> tuple[EmbeddedGraph, list[int | None]]:
    """Connected triangulated plane supergraph: cached synthetic base + real
    parallel edges nested next to their witness siblings."""
    base, pair_edge = g.gate.base_supergraph()
    H = EmbeddedGraph(base.nv)
    H.e_tail = list(base.e_tail)
    H.e_head = list(base.e_head)
    H.e_real = list(base.e_real)
    H.e_alive = list(base.e_alive)
    H.orig = list(base.orig)
    H.nxt = list(base.nxt)
    H.prv = list(base.prv)
    H.vdart = list(base.vdart)
    h2g: list[int | None] = [None] * len(H.e_tail)
    for ge in g.alive_edges():
        u, v = g.edges[ge]
        sib = pair_edge[(u, v) if u < v else (v, u)]
        du = 2 * sib if base.e_tail[sib] == u else 2 * sib + 1
        dv = du ^ 1
        he = H._alloc_edge(u, v, True)
        H._insert_dart_before(u, 2 * he, du)
        H._insert_dart_before(v, 2 * he + 1, H.nxt[dv])
        h2g.append(ge)
    H._faces = None
    return H, h2g


def _finalize_region(H, h2g, region, verts, deg_h, max_b, h_max) -> Piece | None:
    sub, l2g, g2l, le2he = H.subgraph_on_edges(region)
    deg_r = [0] * sub.nv
    for le in range(len(le2he)):
        deg_r[sub.e_tail[le]] += 1
        deg_r[sub.e_head[le]] += 1
    shared_l = {l for l, gv in enumerate(l2g) if deg_r[l] < deg_h[gv]}
    walks, face_of = sub.faces()
    hole_faces = _greedy_hole_cover(sub, walks, shared_l)
    if hole_faces is None or len(hole_faces) > h_max:
        return None
    holes = [Hole.from_walk(sub, walks[f]) for f in sorted(hole_faces)]
    boundary_l: set[int] = set()
    for h in holes:
        boundary_l |= h.vertex_set()
    if len(boundary_l) > max_b:
        return None
    le2ge = [h2g[le2he[le]] for le in range(len(le2he))]
    for le in range(len(le2ge)):
        sub.e_real[le] = le2ge[le] is not None
    return Piece(0, sub, l2g, le2ge, holes, boundary_l)


def _greedy_hole_cover(sub, walks, shared_l) -> list[int] | None:
    if not shared_l:
        return []
    face_verts = [set(sub.orig[d] for d in w) for w in walks]
    uncovered = set(shared_l)
    chosen: list[int] = []
    while uncovered:
        best, best_gain = None, 0
        for f, fv in enumerate(face_verts):
            gain = len(fv & uncovered)
            if gain > best_gain:
                best, best_gain = f, gain
        if best is None:
            return None  # a shared vertex on no face: cannot happen with edges
        chosen.append(best)
        uncovered -= face_verts[best]
    return chosen


class _Scratch:
    """Timestamped work arrays over H for the split recursion.

    Regions are edge-id lists into H; nothing is copied per region. prepare()
    marks a region and threads its induced rotation, after which faces,
    spanning trees and components run as flat array loops.
    """

    def __init__(self, H: EmbeddedGraph):
        nd = 2 * len(H.e_tail)
        self.H = H
        self.t = 0
        self.vstamp = [0] * H.nv
        self.vfirst = [-1] * H.nv
        self.estamp = [0] * len(H.e_tail)
        self.nxt_r = [-1] * nd
        self.fstamp = [0] * nd
        self.fid = [0] * nd
        self.vis = [0] * H.nv
        self.vis_t = 0
        self.depth = [0] * H.nv
        self.parent_e = [0] * H.nv
        self.parent_v = [0] * H.nv
        self.tstamp = [0] * len(H.e_tail)

    def prepare(self, region) -> list[int]:
        H = self.H
        self.t += 1
        t = self.t
        estamp, vstamp = self.estamp, self.vstamp
        verts: list[int] = []
        for e in region:
            estamp[e] = t
            for v in (H.e_tail[e], H.e_head[e]):
                if vstamp[v] != t:
                    vstamp[v] = t
                    verts.append(v)
        nxt_r, nxt_h = self.nxt_r, H.nxt
        for v in verts:
            d0 = H.vdart[v]
            d = d0
            first = prev = -1
            while True:
                if estamp[d >> 1] == t:
                    if first < 0:
                        first = d
                    else:
                        nxt_r[prev] = d
                    prev = d
                d = nxt_h[d]
                if d == d0:
                    break
            nxt_r[prev] = first
            self.vfirst[v] = first
        return verts

    def _region_darts_at(self, v):
        d0 = self.vfirst[v]
        d = d0
        while True:
            yield d
            d = self.nxt_r[d]
            if d == d0:
                break

    def components(self, edges) -> list[list[int]]:
        if not edges:
            return []
        H = self.H
        self.prepare(edges)
        self.vis_t += 1
        vt = self.vis_t
        vis = self.vis
        comp_of: dict[int, int] = {}
        ncomp = 0
        nxt_r, vfirst, orig = self.nxt_r, self.vfirst, H.orig
        for e in edges:
            v = H.e_tail[e]
            if vis[v] == vt:
                continue
            vis[v] = vt
            stack = [v]
            while stack:
                x = stack.pop()
                comp_of[x] = ncomp
                d0 = vfirst[x]
                d = d0
                while True:
                    y = orig[d ^ 1]
                    if vis[y] != vt:
                        vis[y] = vt
                        stack.append(y)
                    d = nxt_r[d]
                    if d == d0:
                        break
            ncomp += 1
        if ncomp == 1:
            return [edges]
        groups: list[list[int]] = [[] for _ in range(ncomp)]
        for e in edges:
            groups[comp_of[H.e_tail[e]]].append(e)
        return groups

    def split(self, region) -> list[list[int]] | None:
        """Fundamental-cycle split of a connected, prepare()d region.

        Candidates are scored O(1) each through the interdigitating dual
        spanning tree; only the winner pays for the exact face-class split.
        Returns None when no usable cycle exists.
        """
        H = self.H
        t = self.t
        estamp, nxt_r = self.estamp, self.nxt_r
        self.vis_t += 1
        vt = self.vis_t
        vis, depth, parent_e, parent_v = self.vis, self.depth, self.parent_e, self.parent_v
        tstamp = self.tstamp
        root = H.e_tail[region[0]]
        vis[root] = vt
        depth[root] = 0
        queue = [root]
        qi = 0
        vfirst, orig = self.vfirst, H.orig
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            dx = depth[x] + 1
            d0 = vfirst[x]
            d = d0
            while True:
                y = orig[d ^ 1]
                if vis[y] != vt:
                    vis[y] = vt
                    depth[y] = dx
                    parent_e[y] = d >> 1
                    parent_v[y] = x
                    tstamp[d >> 1] = vt
                    queue.append(y)
                d = nxt_r[d]
                if d == d0:
                    break
        nontree = [e for e in region if tstamp[e] != vt]
        if not nontree:
            return None
        # faces of the region
        fstamp, fid = self.fstamp, self.fid
        nf = 0
        for e in region:
            for d0 in (2 * e, 2 * e + 1):
                if fstamp[d0] == t:
                    continue
                d = d0
                while fstamp[d] != t:
                    fstamp[d] = t
                    fid[d] = nf
                    d = nxt_r[d ^ 1]
                nf += 1
        # interdigitating dual tree over non-tree edges
        fadj: list[list[int]] = [[] for _ in range(nf)]
        for e in nontree:
            f1, f2 = fid[2 * e], fid[2 * e + 1]
            fadj[f1].append(f2)
            fadj[f2].append(f1)
        fdepth = [-1] * nf
        fdepth[0] = 0
        forder = [0]
        qi = 0
        while qi < len(forder):
            f = forder[qi]
            qi += 1
            for f2 in fadj[f]:
                if fdepth[f2] < 0:
                    fdepth[f2] = fdepth[f] + 1
                    forder.append(f2)
        subtree = [1] * nf
        parent_f = [-1] * nf
        for e in nontree:
            f1, f2 = fid[2 * e], fid[2 * e + 1]
            if fdepth[f1] > fdepth[f2]:
                parent_f[f1] = f2
            else:
                parent_f[f2] = f1
        for f in reversed(forder):
            if parent_f[f] >= 0:
                subtree[parent_f[f]] += subtree[f]
        best_e, best_score = None, None
        for e in nontree:
            f1, f2 = fid[2 * e], fid[2 * e + 1]
            child = f1 if fdepth[f1] > fdepth[f2] else f2
            k = subtree[child]
            score = max(k, nf - k)
            if best_score is None or score < best_score:
                best_e, best_score = e, score
        # exact split along the winner's fundamental cycle
        cyc = {best_e}
        a, b = H.e_tail[best_e], H.e_head[best_e]
        while depth[a] > depth[b]:
            cyc.add(parent_e[a])
            a = parent_v[a]
        while depth[b] > depth[a]:
            cyc.add(parent_e[b])
            b = parent_v[b]
        while a != b:
            cyc.add(parent_e[a])
            cyc.add(parent_e[b])
            a, b = parent_v[a], parent_v[b]
        dsu = list(range(nf))
        for e in region:
            if e in cyc:
                continue
            x = fid[2 * e]
            while dsu[x] != x:
                dsu[x] = dsu[dsu[x]]
                x = dsu[x]
            y = fid[2 * e + 1]
            while dsu[y] != y:
                dsu[y] = dsu[dsu[y]]
                y = dsu[y]
            if x != y:
                dsu[x] = y
        groups: dict[int, list[int]] = {}
        for e in region:
            x = fid[2 * e]
            while dsu[x] != x:
                dsu[x] = dsu[dsu[x]]
                x = dsu[x]
            groups.setdefault(x, []).append(e)
        parts = [grp for grp in groups.values() if grp]
        if len(parts) < 2 or any(len(p) == len(region) for p in parts):
            return None
        return parts


# ---------------------------------------------------------------------------
# Validation and dumping
# ---------------------------------------------------------------------------


def validate_rdivision(d: RDivision) -> str:
    """First violated invariant as text, or "OK"."""
    g = d.g
    cfg = d.cfg
    seen_edges: dict[int, int] = {}
    for pid, p in d.pieces.items():
        for ge in p.edge_ids_g():
            if ge in seen_edges:
                return f"edge {ge} in pieces {seen_edges[ge]} and {pid}"
            seen_edges[ge] = pid
    for ge in g.alive_edges():
        if ge not in seen_edges:
            return f"edge {ge} in no piece"
    if len(seen_edges) != g.m():
        return "piece edges do not partition E(G)"

    owners: dict[int, list[int]] = {}
    for pid, p in d.pieces.items():
        for gv in p.l2g:
            owners.setdefault(gv, []).append(pid)
    for gv, pids in owners.items():
        if len(pids) >= 2:
            for pid in pids:
                p = d.pieces[pid]
                if p.g2l[gv] not in p.boundary_l:
                    return f"shared vertex {gv} not in boundary of piece {pid}"

    max_v = cfg.c1 * d.r
    max_b = cfg.c2 * math.sqrt(d.r)
    for pid, p in d.pieces.items():
        if p.is_mini:
            if p.le2ge and (len(p.boundary_l) != 2 or len(p.holes) != 1):
                return f"mini piece {pid} malformed"
            continue
        if p.size() > max_v:
            return f"piece {pid} too large: {p.size()} > {max_v:.1f}"
        if len(p.boundary_l) > max_b:
            return f"piece {pid} boundary too large: {len(p.boundary_l)} > {max_b:.1f}"
        if len(p.holes) > cfg.h_max:
            return f"piece {pid} has {len(p.holes)} holes > {cfg.h_max}"
        hole_verts = p.hole_vertex_union_l()
        if not p.boundary_l <= hole_verts:
            return f"piece {pid}: boundary vertex off every hole walk"
        if not hole_verts <= p.boundary_l:
            return f"piece {pid}: hole walk vertex outside boundary"
        # P+ never mutates structurally after construction: check once
        if not hasattr(p, "_connected_ok"):
            p._connected_ok = _connected(p.emb)
        if not p._connected_ok:
            return f"piece {pid}: supergraph closure disconnected"
    n_regular = sum(1 for p in d.pieces.values() if not p.is_mini)
    if g.n > 0 and n_regular > cfg.c3 * g.n / d.r + len(d.fresh) + 1:
        return f"too many pieces: {n_regular}"
    return "OK"


def _connected(emb: EmbeddedGraph) -> bool:
    start = next((v for v in range(emb.nv) if emb.vdart[v] >= 0), None)
    if start is None:
        return emb.nv <= 1
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for dd in emb.darts_at(x):
            y = emb.orig[dd ^ 1]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == sum(1 for v in range(emb.nv) if emb.vdart[v] >= 0)


def dump_rdivision(d: RDivision) -> str:
    lines = []
    for pid in sorted(d.pieces):
        p = d.pieces[pid]
        vs = ",".join(str(v) for v in sorted(p.vertices_g()))
        bs = ",".join(str(v) for v in sorted(p.boundary_g()))
        lines.append(f"piece {pid} V:{vs} B:{bs} H:{len(p.holes)}")
    return "\n".join(lines) + "\n"
