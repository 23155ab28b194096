"""Boundary reachability certificates per piece, and their union X.

The dense variant is used throughout: X_P is the transitive-closure digraph
on the piece boundary, O(|bnd|^2) edges, computed by |bnd| graph searches.
It satisfies the same contract as a sparsified certificate (boundary u
reaches boundary v in X_P iff it does in P), and the union over all pieces
preserves reachability between all boundary vertices of the division.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphcore import SccPartition, tarjan_scc


class StaleCertificate(Exception):
    pass


def boundary_reach_rows(piece) -> tuple[list[int], list[int], list[int]]:
    """(boundary locals sorted, fwd rows, bwd rows) as vertex bitsets.

    fwd[i] = bitset of local vertices reachable from boundary vertex i in the
    piece's real digraph; bwd[i] = bitset of vertices that reach it.
    """
    emb = piece.emb
    nv = emb.nv
    adj = [[] for _ in range(nv)]
    radj = [[] for _ in range(nv)]
    for e in range(len(emb.e_tail)):
        if emb.e_alive[e] and emb.e_real[e]:
            adj[emb.e_tail[e]].append(emb.e_head[e])
            radj[emb.e_head[e]].append(emb.e_tail[e])
    bnd = sorted(piece.boundary_l)
    fwd, bwd = [], []
    for b in bnd:
        for rows, a in ((fwd, adj), (bwd, radj)):
            seen = 1 << b
            stack = [b]
            while stack:
                x = stack.pop()
                for y in a[x]:
                    bit = 1 << y
                    if not seen & bit:
                        seen |= bit
                        stack.append(y)
            rows.append(seen)
    return bnd, fwd, bwd


@dataclass
class Certificate:
    piece_id: int
    version: int
    boundary_g: list[int]           # global ids, sorted by local index
    closure: list[int]              # closure[i] bit j: boundary i reaches boundary j
    size_record: dict

    def edges(self):
        out = []
        k = len(self.boundary_g)
        for i in range(k):
            row = self.closure[i]
            for j in range(k):
                if i != j and (row >> j) & 1:
                    out.append((self.boundary_g[i], self.boundary_g[j]))
        return out


def build_certificate(piece) -> Certificate:
    bnd, fwd, _ = boundary_reach_rows(piece)
    k = len(bnd)
    pos = {b: i for i, b in enumerate(bnd)}
    closure = []
    for i, b in enumerate(bnd):
        row = 0
        m = fwd[i]
        for j, c in enumerate(bnd):
            if (m >> c) & 1:
                row |= 1 << j
        closure.append(row)
    nedges = sum(r.bit_count() for r in closure) - k
    return Certificate(
        piece.id, piece.version, [piece.l2g[b] for b in bnd], closure,
        {"boundary": k, "edges": nedges, "dense_bound": k * (k - 1)},
    )


class CertUnion:
    """X = union of the piece certificates, with its SCC partition on the
    boundary of the division."""

    def __init__(self, certs: list[Certificate], piece_versions: dict[int, int]):
        for c in certs:
            if piece_versions.get(c.piece_id) != c.version:
                raise StaleCertificate(f"piece {c.piece_id} changed since its certificate")
        verts: set[int] = set()
        adj: dict[int, list[int]] = {}
        for c in certs:
            verts.update(c.boundary_g)
            k = len(c.boundary_g)
            for i in range(k):
                row = c.closure[i]
                src = c.boundary_g[i]
                lst = adj.setdefault(src, [])
                for j in range(k):
                    if i != j and (row >> j) & 1:
                        lst.append(c.boundary_g[j])
        self.vertices = sorted(verts)
        self.adj = adj
        self.sccs: SccPartition = tarjan_scc(self.vertices, adj)

    def class_of(self, v: int) -> int:
        return self.sccs.comp_of[v]

    def classes(self) -> list[list[int]]:
        return self.sccs.members
