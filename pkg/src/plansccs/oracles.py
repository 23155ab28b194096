"""Brute-force oracles for differential testing.

Everything here is deliberately independent of the dynamic structures: SCCs
come from Kosaraju's two-pass algorithm (not the library's Tarjan), closures
from bitset Warshall, path nets from two plain multi-source searches. Only
plain containers are shared with the rest of the package.
"""

from __future__ import annotations


def kosaraju_scc(n: int, edges) -> tuple[int, list[int], list[list[int]]]:
    """(count, comp id per vertex, members per comp), comps numbered by min member."""
    adj = [[] for _ in range(n)]
    radj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        radj[v].append(u)
    order = []
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        stack = [(root, 0)]
        seen[root] = True
        while stack:
            v, i = stack[-1]
            if i < len(adj[v]):
                stack[-1] = (v, i + 1)
                w = adj[v][i]
                if not seen[w]:
                    seen[w] = True
                    stack.append((w, 0))
            else:
                stack.pop()
                order.append(v)
    comp = [-1] * n
    comps: list[list[int]] = []
    for root in reversed(order):
        if comp[root] >= 0:
            continue
        cid = len(comps)
        comps.append([root])
        comp[root] = cid
        stack = [root]
        while stack:
            v = stack.pop()
            for w in radj[v]:
                if comp[w] < 0:
                    comp[w] = cid
                    comps[cid].append(w)
                    stack.append(w)
    perm = sorted(range(len(comps)), key=lambda c: min(comps[c]))
    remap = {old: new for new, old in enumerate(perm)}
    members = [sorted(comps[c]) for c in perm]
    return len(members), [remap[c] for c in comp], members


def warshall_closure(n: int, edges) -> list[int]:
    """Reachability closure as bitset rows (row[v] bit w set iff v reaches w)."""
    rows = [1 << v for v in range(n)]
    for u, v in edges:
        rows[u] |= 1 << v
    changed = True
    while changed:
        changed = False
        for v in range(n):
            acc = rows[v]
            m = acc
            while m:
                b = m & -m
                m ^= b
                acc |= rows[b.bit_length() - 1]
            if acc != rows[v]:
                rows[v] = acc
                changed = True
    return rows


def closure_partition(n: int, edges) -> list[list[int]]:
    """SCC members from the closure rows (the O(n^3) oracle for tiny graphs)."""
    rows = warshall_closure(n, edges)
    comp_of = {}
    members = []
    for v in range(n):
        if v in comp_of:
            continue
        grp = [w for w in range(n) if (rows[v] >> w) & 1 and (rows[w] >> v) & 1]
        cid = len(members)
        members.append(grp)
        for w in grp:
            comp_of[w] = cid
    return members


def bfs_forward(n: int, edges, source: int) -> set[int]:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
    seen = {source}
    stack = [source]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def multi_reach(vertices, edges, sources, backward: bool = False) -> set[int]:
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in edges:
        if backward:
            u, v = v, u
        adj.setdefault(u, []).append(v)
    seen = set(sources)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def pathnet_oracle(vertices, edges, boundary, A) -> set[int]:
    """{v not in boundary : A reaches v and v reaches A} via two searches."""
    if not A:
        return set()
    fwd = multi_reach(vertices, edges, A)
    bwd = multi_reach(vertices, edges, A, backward=True)
    return {v for v in fwd & bwd if v not in set(boundary)}


def closed_boundary_sets(vertices, edges, boundary, seed_set) -> frozenset:
    """Close a boundary seed set under the path-net relation (fixpoint)."""
    A = set(seed_set)
    boundary = set(boundary)
    while True:
        fwd = multi_reach(vertices, edges, A)
        bwd = multi_reach(vertices, edges, A, backward=True)
        nxt = (fwd & bwd & boundary) | A
        if nxt == A:
            return frozenset(A)
        A = nxt
