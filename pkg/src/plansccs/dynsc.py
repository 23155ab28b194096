"""Dynamic single-SCC monitor.

Verdict after each update is the conjunction of three conditions: the graph
is connected in the undirected sense, the division boundary is strongly
connected in the certificate union X, and every piece P stays strongly
connected once a synthetic directed cycle through its boundary is added.
"""

from __future__ import annotations

import math

from .certificates import CertUnion, build_certificate
from .graphcore import PlanarDigraph, tarjan_scc
from .rdivision import DivisionConfig, RDivision, build_rdivision


class DynamicConnectivity:
    """Undirected connectivity under edge updates: spanning forest plus a
    replacement-edge search on deletions. Two-method contract: update/query."""

    def __init__(self, n: int, pairs=()):
        self.n = n
        self.count: dict[tuple[int, int], int] = {}
        self.tree: set[tuple[int, int]] = set()
        self.tadj: list[set[int]] = [set() for _ in range(n)]
        self.nadj: list[dict[int, int]] = [{} for _ in range(n)]  # non-tree multiplicity
        self.ncomp = n
        for u, v in pairs:
            self.insert(u, v)

    @staticmethod
    def _key(u, v):
        return (u, v) if u < v else (v, u)

    def _forest_component(self, s: int) -> set[int]:
        seen = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in self.tadj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def insert(self, u: int, v: int):
        key = self._key(u, v)
        self.count[key] = self.count.get(key, 0) + 1
        if self.count[key] > 1:
            self.nadj[u][v] = self.nadj[u].get(v, 0) + 1
            self.nadj[v][u] = self.nadj[v].get(u, 0) + 1
            return
        if v in self._forest_component(u):
            self.nadj[u][v] = self.nadj[u].get(v, 0) + 1
            self.nadj[v][u] = self.nadj[v].get(u, 0) + 1
        else:
            self.tree.add(key)
            self.tadj[u].add(v)
            self.tadj[v].add(u)
            self.ncomp -= 1

    def delete(self, u: int, v: int):
        key = self._key(u, v)
        if self.count.get(key, 0) <= 0:
            raise KeyError(key)
        self.count[key] -= 1
        if self.nadj[u].get(v, 0) > 0:
            self.nadj[u][v] -= 1
            self.nadj[v][u] -= 1
            if self.nadj[u][v] == 0:
                del self.nadj[u][v]
                del self.nadj[v][u]
            return
        # deleting the tree copy: search one side for a replacement
        self.tree.discard(key)
        self.tadj[u].discard(v)
        self.tadj[v].discard(u)
        side = self._forest_component(u)
        repl = None
        for x in side:
            for y in self.nadj[x]:
                if y not in side:
                    repl = (x, y)
                    break
            if repl:
                break
        if repl is None:
            self.ncomp += 1
            return
        x, y = repl
        self.nadj[x][y] -= 1
        self.nadj[y][x] -= 1
        if self.nadj[x][y] == 0:
            del self.nadj[x][y]
            del self.nadj[y][x]
        self.tree.add(self._key(x, y))
        self.tadj[x].add(y)
        self.tadj[y].add(x)

    def connected(self) -> bool:
        return self.ncomp <= 1


def _boundary_cycle_order(piece) -> list[int]:
    """Boundary vertices in concatenated hole order (local ids, deduped)."""
    seen: set[int] = set()
    order: list[int] = []
    for hole in piece.holes:
        for v in hole.order:
            if v not in seen:
                seen.add(v)
                order.append(v)
    for v in sorted(piece.boundary_l):
        if v not in seen:
            seen.add(v)
            order.append(v)
    return order


def piece_sc_with_cycle(piece) -> bool:
    """Is P with a directed cycle through its boundary strongly connected?"""
    nv = piece.emb.nv
    adj: dict[int, list[int]] = {v: [] for v in range(nv)}
    for e in piece.real_edges_l():
        adj[piece.emb.e_tail[e]].append(piece.emb.e_head[e])
    cyc = _boundary_cycle_order(piece)
    if len(cyc) >= 2:
        for i, v in enumerate(cyc):
            adj[v].append(cyc[(i + 1) % len(cyc)])
    part = tarjan_scc(range(nv), adj)
    return part.count == 1


class ScMonitor:
    """Maintains whether the graph has a single SCC under edge updates."""

    def __init__(self, g: PlanarDigraph, r: int | None = None,
                 cfg: DivisionConfig | None = None):
        self.g = g
        if r is None:
            r = max(1, min(g.n, round(g.n ** (2.0 / 3.0))))
        self.r = r
        self.div: RDivision = build_rdivision(g, r, cfg)
        self.conn = DynamicConnectivity(g.n, (g.edges[e] for e in g.alive_edges()))
        self._verdict: bool | None = None
        self._refresh()

    # -- per-piece slots ------------------------------------------------------

    def _piece_slots(self, piece):
        slot = piece.aux.get("sc")
        if slot is None or slot[0] != piece.version:
            slot = (piece.version, build_certificate(piece), piece_sc_with_cycle(piece))
            piece.aux["sc"] = slot
        return slot

    def _refresh(self):
        certs = []
        bits_ok = True
        versions = {}
        for piece in self.div.pieces.values():
            _, cert, bit = self._piece_slots(piece)
            certs.append(cert)
            versions[piece.id] = piece.version
            bits_ok = bits_ok and bit
        if not self.conn.connected():
            self._verdict = False
            return
        if not bits_ok:
            self._verdict = False
            return
        union = CertUnion(certs, versions)
        self._verdict = union.sccs.count <= 1

    # -- updates ---------------------------------------------------------------

    def insert_edge(self, u: int, v: int) -> bool:
        self.div.apply_update("insert", u, v)
        self.conn.insert(u, v)
        self._refresh()
        return self._verdict

    def delete_edge(self, u: int, v: int) -> bool:
        self.div.apply_update("delete", u, v)
        self.conn.delete(u, v)
        self._refresh()
        return self._verdict

    def is_strongly_connected(self) -> bool:
        return bool(self._verdict)
