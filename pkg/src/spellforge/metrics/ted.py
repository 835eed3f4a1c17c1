"""Exact tree edit distance for ordered labeled trees, unit costs.

``ted`` is the production path: the Zhang-Shasha keyroot dynamic program,
O(n^2) space and fast enough for every script this project compares.
``ted_oracle`` is an independent check used only by tests: a memoized
exhaustive forest-distance recursion with none of the keyroot machinery.
Insert and delete cost 1; renaming costs 1 when labels differ, else 0.
"""

from __future__ import annotations

from .tree import LabeledTree


def _postorder(root: LabeledTree) -> tuple[list[LabeledTree], list[int]]:
    """Post-order nodes plus, per node, the index of its leftmost leaf."""
    nodes: list[LabeledTree] = []
    lmds: list[int] = []

    def walk(node: LabeledTree) -> int:
        first_leaf = None
        for child in node.children:
            leaf = walk(child)
            if first_leaf is None:
                first_leaf = leaf
        index = len(nodes)
        nodes.append(node)
        lmds.append(first_leaf if first_leaf is not None else index)
        return lmds[index]

    walk(root)
    return nodes, lmds


def _keyroots(lmds: list[int]) -> list[int]:
    seen: dict[int, int] = {}
    for i, lmd in enumerate(lmds):
        seen[lmd] = i  # the last (highest) node for each leftmost leaf
    return sorted(seen.values())


def ted(a: LabeledTree, b: LabeledTree) -> int:
    """Minimum-cost edit script length between two ordered labeled trees."""
    an, albl = _postorder(a)
    bn, blbl = _postorder(b)
    al, bl = albl, blbl
    n, m = len(an), len(bn)
    dist = [[0] * m for _ in range(n)]

    def rename(x: LabeledTree, y: LabeledTree) -> int:
        return 0 if x.label == y.label else 1

    for i in _keyroots(al):
        for j in _keyroots(bl):
            # Forest distance over the subforests rooted at keyroots i, j.
            ioff = al[i] - 1
            joff = bl[j] - 1
            rows = i - al[i] + 2
            cols = j - bl[j] + 2
            fd = [[0] * cols for _ in range(rows)]
            for x in range(1, rows):
                fd[x][0] = fd[x - 1][0] + 1
            for y in range(1, cols):
                fd[0][y] = fd[0][y - 1] + 1
            for x in range(1, rows):
                for y in range(1, cols):
                    if al[i] == al[x + ioff] and bl[j] == bl[y + joff]:
                        fd[x][y] = min(
                            fd[x - 1][y] + 1,
                            fd[x][y - 1] + 1,
                            fd[x - 1][y - 1] + rename(an[x + ioff], bn[y + joff]),
                        )
                        dist[x + ioff][y + joff] = fd[x][y]
                    else:
                        p = al[x + ioff] - 1 - ioff
                        q = bl[y + joff] - 1 - joff
                        fd[x][y] = min(
                            fd[x - 1][y] + 1,
                            fd[x][y - 1] + 1,
                            fd[p][q] + dist[x + ioff][y + joff],
                        )
    return dist[n - 1][m - 1]


ORACLE_MAX_NODES = 14


def ted_oracle(a: LabeledTree, b: LabeledTree) -> int:
    """Exhaustive forest-distance recursion; exact but only for tiny trees."""
    if a.size() + b.size() > ORACLE_MAX_NODES:
        raise ValueError(f"oracle limited to {ORACLE_MAX_NODES} total nodes")

    memo: dict[tuple, int] = {}

    def forest_size(forest: tuple) -> int:
        return sum(1 + forest_size(t[1]) for t in forest)

    def dist(fa: tuple, fb: tuple) -> int:
        if not fa:
            return forest_size(fb)
        if not fb:
            return forest_size(fa)
        key = (fa, fb)
        if key in memo:
            return memo[key]
        (la, ca) = fa[-1]
        (lb, cb) = fb[-1]
        delete = dist(fa[:-1] + ca, fb) + 1
        insert = dist(fa, fb[:-1] + cb) + 1
        match = dist(fa[:-1], fb[:-1]) + dist(ca, cb) + (0 if la == lb else 1)
        memo[key] = best = min(delete, insert, match)
        return best

    return dist((a.as_tuple(),), (b.as_tuple(),))
