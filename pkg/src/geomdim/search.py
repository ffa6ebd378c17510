"""Exact metric dimension by pruned subset search, plus a greedy upper bound.

The search enumerates landmark k-subsets depth-first in lexicographic vertex
order while maintaining the partition of all vertices by their partial
signatures.  Pruning rule: a landmark splits any signature class into at most
D parts, where D = diameter + 1 is the number of possible distance values, so
a branch with r picks left is abandoned as soon as some class holds more than
D**r vertices.  This never discards a resolving superset (each of the
remaining r landmarks can at best multiply the class count by D), so the
first k-subset that makes the partition discrete is the lexicographically
smallest resolving set of size k.  A pruning-free enumerator in the test
suite anchors correctness on small structures.

With ``threads > 1`` the choice of the first landmark is statically
partitioned across a thread pool; merging takes the basis from the smallest
first element, so results are bit-identical for every thread count.
"""

from __future__ import annotations

import itertools
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .geometry import Incidence
from .metric import VertexSet, distance_matrix, is_resolving


class BudgetExceededError(RuntimeError):
    """Raised when a search exhausts its node or time budget."""


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exact metric-dimension search.

    ``mu``/``basis`` are set when the search completed; otherwise
    ``lower_bound`` is the largest size fully refuted plus one and
    ``exhausted`` tells whether a budget ran out (True) or ``max_k`` was
    reached (False).
    """

    mu: int | None
    basis: VertexSet | None
    lower_bound: int
    exhausted: bool = False


class _Budget:
    def __init__(self, seconds: float | None, nodes: int | None):
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self.max_nodes = nodes
        self.nodes = 0
        self._lock = threading.Lock()

    def spend(self, n: int) -> None:
        with self._lock:
            self.nodes += n
            if self.max_nodes is not None and self.nodes > self.max_nodes:
                raise BudgetExceededError(f"node budget exhausted ({self.nodes} nodes)")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceededError("time budget exhausted")


class _Abort(Exception):
    """Internal: another worker already found a basis with a smaller root."""


class _Searcher:
    """Shared state for one structure: distances, split base, partition ops."""

    _CHECK_EVERY = 256

    def __init__(self, inc: Incidence, budget: _Budget):
        self.inc = inc
        self.n = inc.n_vertices
        self.dist = np.asarray(distance_matrix(inc), dtype=np.int64)
        self.base = int(self.dist.max()) + 2  # strictly above any distance value
        self.budget = budget
        self.found_root = self.n  # smallest first element known to carry a solution
        self._lock = threading.Lock()
        self._pending = 0

    def _tick(self, my_root: int) -> None:
        self._pending += 1
        if self._pending >= self._CHECK_EVERY:
            self.budget.spend(self._pending)
            self._pending = 0
            if my_root > self.found_root:
                raise _Abort

    def refine(self, labels: np.ndarray, v: int) -> tuple[np.ndarray, int]:
        """Split the signature partition by the distances to vertex v."""
        combined = labels * self.base + self.dist[v]
        _, new = np.unique(combined, return_inverse=True)
        return new, int(new.max()) + 1

    def dfs(self, labels, n_classes, start, remaining, prefix, my_root):
        """Lexicographic DFS; returns the first resolving completion or None."""
        if n_classes == self.n:
            # already discrete: pad with the smallest unused vertices
            pad = [v for v in range(start, self.n) if v not in prefix][:remaining]
            if len(pad) < remaining:
                return None
            return prefix + pad
        if remaining == 0:
            return None
        # D = diameter + 1 distance values: one landmark splits a class into
        # at most D parts, so r picks cannot shatter a class above D**r
        max_class = int(np.bincount(labels).max())
        if max_class > (self.base - 1) ** remaining:
            return None
        if remaining == 1:
            cands = np.arange(start, self.n)
            if len(cands) == 0:
                return None
            self._tick(my_root)
            self.budget.spend(len(cands))
            rows = labels[None, :] * self.base + self.dist[cands]
            rows.sort(axis=1)
            distinct = ~(np.diff(rows, axis=1) == 0).any(axis=1)
            hits = np.nonzero(distinct)[0]
            if len(hits) == 0:
                return None
            return prefix + [int(cands[hits[0]])]
        for v in range(start, self.n - remaining + 1):
            self._tick(my_root)
            new_labels, nc = self.refine(labels, v)
            sol = self.dfs(new_labels, nc, v + 1, remaining - 1, prefix + [v], my_root)
            if sol is not None:
                return sol
        return None

    def feasible(self, k: int, threads: int = 1) -> list[int] | None:
        """Lexicographically first resolving k-subset, or None."""
        if k == 0:
            return [] if self.n <= 1 else None
        labels0 = np.zeros(self.n, dtype=np.int64)
        if threads <= 1:
            return self.dfs(labels0, 1, 0, k, [], my_root=self.n)

        self.found_root = self.n
        results: dict[int, list[int] | None] = {}

        def worker(root: int):
            if root > self.found_root:
                return None
            labels, nc = self.refine(labels0, root)
            try:
                sol = self.dfs(labels, nc, root + 1, k - 1, [root], my_root=root)
            except _Abort:
                return None
            if sol is not None:
                with self._lock:
                    self.found_root = min(self.found_root, root)
            return sol

        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = {root: pool.submit(worker, root) for root in range(self.n - k + 1)}
            for root, fut in futures.items():
                results[root] = fut.result()
        for root in sorted(results):
            if results[root] is not None:
                return results[root]
        return None


def _to_vertex_set(inc: Incidence, vertices: list[int]) -> VertexSet:
    return VertexSet(
        tuple(v for v in vertices if v < inc.n_points),
        tuple(v - inc.n_points for v in vertices if v >= inc.n_points),
    )


def exact_mu(
    inc: Incidence,
    max_k: int | None = None,
    budget_seconds: float | None = None,
    budget_nodes: int | None = None,
    threads: int = 1,
) -> SearchResult:
    """Exact metric dimension with the lexicographically first basis.

    Tries k = 0, 1, 2, ... in turn; the first feasible k is the metric
    dimension, and every smaller size has been exhaustively refuted.  On
    budget exhaustion returns the certified lower bound reached so far.
    """
    budget = _Budget(budget_seconds, budget_nodes)
    searcher = _Searcher(inc, budget)
    top = inc.n_vertices if max_k is None else min(max_k, inc.n_vertices)
    k = 0
    try:
        while k <= top:
            sol = searcher.feasible(k, threads=threads)
            if sol is not None:
                basis = _to_vertex_set(inc, sol)
                assert is_resolving(inc, basis), "search returned a non-resolving basis"
                return SearchResult(mu=k, basis=basis, lower_bound=k)
            k += 1
    except BudgetExceededError:
        return SearchResult(mu=None, basis=None, lower_bound=k, exhausted=True)
    return SearchResult(mu=None, basis=None, lower_bound=top + 1, exhausted=False)


def certify_lower(
    inc: Incidence,
    k: int,
    budget_seconds: float | None = None,
    budget_nodes: int | None = None,
    threads: int = 1,
) -> bool:
    """True iff no k-subset of vertices resolves the structure.

    Budget exhaustion raises BudgetExceededError: an aborted search is never
    reported as a certificate.
    """
    budget = _Budget(budget_seconds, budget_nodes)
    searcher = _Searcher(inc, budget)
    return searcher.feasible(k, threads=threads) is None


def greedy_upper(inc: Incidence, threads: int = 1) -> VertexSet:
    """Greedy resolving set: repeatedly add the vertex separating the most
    still-unseparated vertex pairs (ties to the lowest index)."""
    n = inc.n_vertices
    if n <= 1:
        return VertexSet()
    dist = np.asarray(distance_matrix(inc), dtype=np.int64)
    base = int(dist.max()) + 2
    labels = np.zeros(n, dtype=np.int64)
    chosen: list[int] = []
    chosen_set: set[int] = set()

    def unseparated(lbl) -> int:
        counts = np.bincount(lbl)
        return int((counts * (counts - 1) // 2).sum())

    while unseparated(labels) > 0:
        best = None
        for v in range(n):
            if v in chosen_set:
                continue
            combined = labels * base + dist[v]
            _, new = np.unique(combined, return_inverse=True)
            score = unseparated(new)
            if best is None or score < best[0]:
                best = (score, v, new)
        _, v, labels = best
        chosen.append(v)
        chosen_set.add(v)
    S = _to_vertex_set(inc, chosen)
    verdict = is_resolving(inc, S, threads=threads)
    assert verdict, "greedy produced a non-resolving set"
    return S
