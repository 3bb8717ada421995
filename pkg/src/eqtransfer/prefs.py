"""Outcomes, preference relations, and the power-set lift.

Outcomes are dense indices ``0..n-1``; optional labels are display-only.
A preference is an arbitrary binary relation over outcome indices, where
``(x, y)`` reads "x is strictly less preferred than y".
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import CyclicPreferenceError


@dataclass(frozen=True)
class OutcomeSet:
    """A finite, non-empty set of outcomes, indexed 0..size-1."""

    size: int
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("outcome set must be non-empty")
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise ValueError("label count must equal size")
            if len(set(self.labels)) != self.size:
                raise ValueError("labels must be distinct")

    def label(self, index: int) -> str:
        if self.labels is not None:
            return self.labels[index]
        return str(index)


@dataclass(frozen=True)
class Preference:
    """A binary relation over the indices of an outcome set."""

    outcomes: OutcomeSet
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        n = self.outcomes.size
        for x, y in self.pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"pair ({x}, {y}) out of range for {n} outcomes")

    @staticmethod
    def from_pairs(n: int, pairs: Iterable[tuple[int, int]],
                   labels: Optional[Sequence[str]] = None) -> "Preference":
        outs = OutcomeSet(n, tuple(labels) if labels is not None else None)
        return Preference(outs, frozenset((int(x), int(y)) for x, y in pairs))

    @staticmethod
    def from_ranking(ranking: Sequence[int],
                     labels: Optional[Sequence[str]] = None) -> "Preference":
        """Strict linear order: ranking lists outcomes from least to most preferred."""
        n = len(ranking)
        pairs = {(ranking[i], ranking[j]) for i in range(n) for j in range(i + 1, n)}
        return Preference.from_pairs(n, pairs, labels)

    def less(self, x: int, y: int) -> bool:
        return (x, y) in self.pairs

    def successors(self, x: int) -> list[int]:
        return [y for (a, y) in self.pairs if a == x]

    def inverse(self) -> "Preference":
        return Preference(self.outcomes, frozenset((y, x) for (x, y) in self.pairs))


@dataclass(frozen=True)
class PreferenceProfile:
    """One preference per player, all over a shared outcome set."""

    prefs: tuple[Preference, ...]

    def __post_init__(self):
        if not self.prefs:
            raise ValueError("profile must contain at least one preference")
        first = self.prefs[0].outcomes
        for p in self.prefs[1:]:
            if p.outcomes != first:
                raise ValueError("all preferences must share one outcome set")

    @property
    def outcomes(self) -> OutcomeSet:
        return self.prefs[0].outcomes

    @property
    def players(self) -> int:
        return len(self.prefs)

    def __getitem__(self, player: int) -> Preference:
        return self.prefs[player]


@dataclass(frozen=True)
class RankFunction:
    """Monotone labelling of outcomes: x less-preferred than y forces a lower rank."""

    ranks: tuple[int, ...]

    def __call__(self, outcome: int) -> int:
        return self.ranks[outcome]


def _adjacency(p: Preference) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(p.outcomes.size)]
    for x, y in p.pairs:
        adj[x].append(y)
    return adj


def is_acyclic(p: Preference) -> bool:
    """True iff the directed graph of the relation has no cycle (self-loops count)."""
    n = p.outcomes.size
    adj = _adjacency(p)
    state = [0] * n  # 0 unvisited, 1 on stack, 2 done
    for root in range(n):
        if state[root]:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        state[root] = 1
        while stack:
            v, i = stack[-1]
            if i < len(adj[v]):
                stack[-1] = (v, i + 1)
                w = adj[v][i]
                if state[w] == 1:
                    return False
                if state[w] == 0:
                    state[w] = 1
                    stack.append((w, 0))
            else:
                state[v] = 2
                stack.pop()
    return True


def height(p: Preference) -> Optional[int]:
    """Number of outcomes in the longest strict chain, or None when cyclic.

    An empty relation (antichain) has height 1; a single edge gives height 2.
    """
    if not is_acyclic(p):
        return None
    order = linear_extension(p)
    chain = {v: 1 for v in order}
    adj = _adjacency(p)
    for v in order:
        for w in adj[v]:
            if chain[v] + 1 > chain[w]:
                chain[w] = chain[v] + 1
    return max(chain.values())


def rank(p: Preference) -> RankFunction:
    """Minimal monotone ranks: rank(x) = longest chain ending at x, in edges."""
    if not is_acyclic(p):
        raise CyclicPreferenceError("rank requires an acyclic preference")
    order = linear_extension(p)
    ranks = [0] * p.outcomes.size
    adj = _adjacency(p)
    for v in order:
        for w in adj[v]:
            if ranks[v] + 1 > ranks[w]:
                ranks[w] = ranks[v] + 1
    return RankFunction(tuple(ranks))


def linear_extension(p: Preference) -> list[int]:
    """Stable topological order: ties broken by ascending outcome index."""
    n = p.outcomes.size
    indeg = [0] * n
    adj = _adjacency(p)
    for x, y in p.pairs:
        indeg[y] += 1
    ready = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(ready)
    out: list[int] = []
    while ready:
        v = heapq.heappop(ready)
        out.append(v)
        for w in adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(out) != n:
        raise CyclicPreferenceError("linear extension requires an acyclic preference")
    return out


def is_strict_linear(p: Preference) -> bool:
    """True iff the relation is a strict linear order (irreflexive, transitive, total)."""
    n = p.outcomes.size
    if not is_acyclic(p):
        return False
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            if ((x, y) in p.pairs) == ((y, x) in p.pairs):
                return False
    # acyclic + total on distinct elements forces transitivity, but check anyway
    for x, y in p.pairs:
        for z in range(n):
            if (y, z) in p.pairs and (x, z) not in p.pairs:
                return False
    return True


def lift_less(linear: Sequence[int], a: Iterable[int], b: Iterable[int]) -> bool:
    """Power-set lift of a strict linear order, finite-linear form.

    ``linear`` lists the outcomes from least to most preferred.  A is below B
    iff they differ and the least element of the symmetric difference lies in A.
    """
    sa, sb = set(a), set(b)
    if sa == sb:
        return False
    diff = sa ^ sb
    position = {o: i for i, o in enumerate(linear)}
    least = min(diff, key=position.__getitem__)
    return least in sa


def lift_less_existential(p: Preference, a: Iterable[int], b: Iterable[int]) -> bool:
    """Power-set lift in its general existential form, on any relation.

    A is below B iff some element of A-minus-B sits below every element of
    B-minus-A.  Only on strict linear input does this obey any order laws.
    """
    sa, sb = set(a), set(b)
    only_a = sa - sb
    only_b = sb - sa
    return any(all((x, y) in p.pairs for y in only_b) for x in only_a)


def upward_cone(p: Preference, seeds: Iterable[int]) -> set[int]:
    """Closure of ``seeds`` under the reflexive-transitive preference relation."""
    cone = set(seeds)
    frontier = list(cone)
    adj = _adjacency(p)
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in cone:
                cone.add(w)
                frontier.append(w)
    return cone
