"""
Hopcroft-Karp maximum matching on implicitly given bipartite graphs.

Left vertices are 0..num_left-1, right vertices 0..num_right-1. Neighbour
lists come from a callable and are materialized only for the left vertices
the search actually visits.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

NIL = -1


class BipartiteGraph:
    def __init__(self, num_left: int, num_right: int, neighbors: Callable[[int], Iterable[int]]):
        if num_left < 1 or num_right < 1:
            raise ValueError(f"bipartite graph needs both sides nonempty: {num_left} x {num_right}")
        self.num_left = num_left
        self.num_right = num_right
        self._neighbors = neighbors
        self._adj: Dict[int, Tuple[int, ...]] = {}

    def adj(self, u: int) -> Tuple[int, ...]:
        found = self._adj.get(u)
        if found is None:
            found = tuple(self._neighbors(u))
            self._adj[u] = found
        return found


@dataclass
class HallWitness:
    """Left vertices whose joint neighbourhood is smaller than the set."""

    left: List[int]
    right: List[int]

    @property
    def deficiency(self) -> int:
        return len(self.left) - len(self.right)


class HopcroftKarp:
    """Maximum matching; ``order`` fixes the left-vertex processing order."""

    def __init__(self, graph: BipartiteGraph, order: Optional[Sequence[int]] = None):
        self.graph = graph
        self.order = list(order) if order is not None else list(range(graph.num_left))
        self.match_left = [NIL] * graph.num_left
        self.match_right = [NIL] * graph.num_right
        self._dist: List[float] = []

    def seed(self, pairs: Iterable[Tuple[int, int]]) -> None:
        """Start from a partial matching (for example a greedy one)."""
        for u, v in pairs:
            if self.match_left[u] != NIL or self.match_right[v] != NIL:
                raise ValueError(f"seed pair ({u}, {v}) reuses a matched vertex")
            self.match_left[u] = v
            self.match_right[v] = u

    def _layer(self) -> bool:
        inf = float("inf")
        dist = [inf] * self.graph.num_left
        queue = deque()
        for u in self.order:
            if self.match_left[u] == NIL:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in self.graph.adj(u):
                nxt = self.match_right[v]
                if nxt == NIL:
                    found = True
                elif dist[nxt] == inf:
                    dist[nxt] = dist[u] + 1
                    queue.append(nxt)
        self._dist = dist
        return found

    def _augment(self, root: int) -> bool:
        dist = self._dist
        stack = [root]
        iters = [iter(self.graph.adj(root))]
        via: List[int] = []
        while stack:
            u = stack[-1]
            for v in iters[-1]:
                nxt = self.match_right[v]
                if nxt == NIL:
                    via.append(v)
                    for uu, vv in zip(stack, via):
                        self.match_left[uu] = vv
                        self.match_right[vv] = uu
                    return True
                if dist[nxt] == dist[u] + 1:
                    via.append(v)
                    stack.append(nxt)
                    iters.append(iter(self.graph.adj(nxt)))
                    break
            else:
                # dead end for this phase
                dist[u] = float("inf")
                stack.pop()
                iters.pop()
                if via:
                    via.pop()
        return False

    def __call__(self) -> List[Tuple[int, int]]:
        while self._layer():
            for u in self.order:
                if self.match_left[u] == NIL:
                    self._augment(u)
        return [(u, v) for u, v in enumerate(self.match_left) if v != NIL]

    @property
    def unmatched_left(self) -> List[int]:
        return [u for u in self.order if self.match_left[u] == NIL]

    def hall_witness(self, root: int) -> HallWitness:
        """
        Alternating-path closure of an unmatched left vertex. On a maximum
        matching its neighbourhood has exactly one vertex fewer than itself.
        """
        if self.match_left[root] != NIL:
            raise ValueError(f"left vertex {root} is matched")
        left, right = {root}, set()
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in self.graph.adj(u):
                if v in right:
                    continue
                right.add(v)
                nxt = self.match_right[v]
                if nxt != NIL and nxt not in left:
                    left.add(nxt)
                    queue.append(nxt)
        return HallWitness(sorted(left), sorted(right))


__all__ = ["NIL", "BipartiteGraph", "HallWitness", "HopcroftKarp"]
