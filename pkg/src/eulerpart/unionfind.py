"""Union-find helpers: plain disjoint sets and a sign-tracking variant."""

from __future__ import annotations


class UnionFind:
    """Disjoint sets over integers 0..n-1 with path compression and ranks."""

    __slots__ = ("parent", "rank")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return ra


class ParityUnionFind:
    """Disjoint sets where each element carries a sign relative to its root.

    ``union(a, b, rel)`` merges the sets of ``a`` and ``b`` under the
    constraint sign(a) * sign(b) == rel and returns False when that
    contradicts the relations recorded so far (an odd cycle).  Merging the
    faces of a surface patch across sign-labelled adjacencies this way
    detects orientation-reversing loops: the patch is orientable iff no
    union ever fails.
    """

    __slots__ = ("parent", "rank", "sign")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.sign = [1] * n  # sign relative to parent

    def find(self, x: int) -> tuple[int, int]:
        """Return (root, sign of x relative to root), compressing the path."""
        parent, sign = self.parent, self.sign
        path = []
        while parent[x] != x:
            path.append(x)
            x = parent[x]
        root = x
        acc = 1
        for y in reversed(path):
            acc *= sign[y]
            parent[y] = root
            sign[y] = acc
        return root, acc

    def union(self, a: int, b: int, rel: int) -> bool:
        """Merge enforcing sign(a)*sign(b) == rel; False on contradiction."""
        ra, sa = self.find(a)
        rb, sb = self.find(b)
        if ra == rb:
            return sa * sb == rel
        t = rel * sa * sb  # sign of rb relative to ra (and vice versa)
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.sign[rb] = t
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True
