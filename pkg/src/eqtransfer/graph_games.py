"""Arenas, parity and Muller solvers, and multi-outcome graph-game equilibria.

Player 1 wins a parity play iff the minimum colour occurring infinitely
often is even.  Muller games are solved through a latest-appearance-record
reduction to parity, which yields explicit finite-memory machines.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Optional

from .errors import (CyclicPreferenceError, NotDeterminedError,
                     UnboundedHeightError)
from .normal_form import SubsetWord
from .prefs import OutcomeSet, PreferenceProfile, height, is_acyclic
from .transfer import (CallCounter, OracleStrategy, WinLoseOracle,
                       run_transfer)


class Arena:
    """A finite sink-free coloured graph with a vertex partition.

    ``owned`` lists the vertices where player 1 moves; everything else
    belongs to player 2.
    """

    def __init__(self, num_vertices: int, owned: Iterable[int],
                 edges: Iterable[tuple[int, int]], colors: Iterable[int]):
        self.num_vertices = int(num_vertices)
        self.owned = frozenset(int(v) for v in owned)
        self.edges = tuple((int(u), int(v)) for u, v in edges)
        self.colors = tuple(int(c) for c in colors)
        if self.num_vertices < 1:
            raise ValueError("arena needs at least one vertex")
        if len(self.colors) != self.num_vertices:
            raise ValueError("one colour per vertex required")
        if any(not (0 <= v < self.num_vertices) for v in self.owned):
            raise ValueError("owned vertex out of range")
        succ: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for u, v in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if v not in succ[u]:
                succ[u].append(v)
        for u, out in enumerate(succ):
            if not out:
                raise ValueError(f"vertex {u} is a sink; arenas must be sink-free")
        self.succ = tuple(tuple(s) for s in succ)

    def owner(self, v: int) -> int:
        return 1 if v in self.owned else 2

    def color_set(self) -> frozenset[int]:
        return frozenset(self.colors)


@dataclass(eq=True)
class PositionalStrategy:
    """History-free choice: one successor per vertex of the strategy's player."""

    player: int
    moves: dict[int, int]


class FiniteMemoryStrategy:
    """A strategy machine: memory updates on every visited vertex (including
    the start), the move depends on memory and current vertex only."""

    def __init__(self, player: int, initial: Hashable,
                 update: Callable[[Hashable, int], Hashable],
                 choice: Callable[[Hashable, int], int],
                 num_states: Optional[int] = None):
        self.player = player
        self.initial = initial
        self.update = update
        self.choice = choice
        self.num_states = num_states

    @staticmethod
    def from_positional(pos: PositionalStrategy) -> "FiniteMemoryStrategy":
        return FiniteMemoryStrategy(
            pos.player, 0, lambda m, v: 0,
            lambda m, v: pos.moves[v], num_states=1)

    @staticmethod
    def from_tables(player: int, n_states: int, initial: int,
                    update_table: Mapping[tuple[int, int], int],
                    choice_table: Mapping[tuple[int, int], int]
                    ) -> "FiniteMemoryStrategy":
        return FiniteMemoryStrategy(
            player, initial,
            lambda m, v: update_table[(m, v)],
            lambda m, v: choice_table[(m, v)],
            num_states=n_states)


def as_finite_memory(s) -> FiniteMemoryStrategy:
    if isinstance(s, FiniteMemoryStrategy):
        return s
    if isinstance(s, PositionalStrategy):
        return FiniteMemoryStrategy.from_positional(s)
    raise TypeError(f"not a strategy: {s!r}")


@dataclass(frozen=True)
class Play:
    """An eventually periodic play in lasso form."""

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def cluster_colors(self, arena: Arena) -> frozenset[int]:
        return frozenset(arena.colors[v] for v in self.cycle)


def play_of(arena: Arena, start: int, s1, s2) -> Play:
    """Walk the strategy-product graph until a state repeats."""
    f1, f2 = as_finite_memory(s1), as_finite_memory(s2)
    if f1.player != 1 or f2.player != 2:
        raise ValueError("play_of expects a player-1 and a player-2 strategy")
    state = (start, f1.update(f1.initial, start), f2.update(f2.initial, start))
    seen: dict[tuple, int] = {}
    trail: list[int] = []
    while state not in seen:
        seen[state] = len(trail)
        v, m1, m2 = state
        trail.append(v)
        nxt = f1.choice(m1, v) if arena.owner(v) == 1 else f2.choice(m2, v)
        if nxt not in arena.succ[v]:
            raise ValueError(f"strategy moved along a non-edge ({v}, {nxt})")
        state = (nxt, f1.update(m1, nxt), f2.update(m2, nxt))
    cut = seen[state]
    return Play(tuple(trail[:cut]), tuple(trail[cut:]))


# ---------------------------------------------------------------------------
# Parity: recursive attractor decomposition.

def _attractor(succ, owner, region: set[int], target: set[int],
               player: int) -> tuple[set[int], dict[int, int]]:
    """Player's attractor to ``target`` inside ``region``, with the forced
    moves for the player's vertices outside the target."""
    attr = set(target)
    strategy: dict[int, int] = {}
    changed = True
    while changed:
        changed = False
        for v in region - attr:
            inside = [w for w in succ[v] if w in region]
            if owner(v) == player:
                hit = next((w for w in inside if w in attr), None)
                if hit is not None:
                    attr.add(v)
                    strategy[v] = hit
                    changed = True
            else:
                if all(w in attr for w in inside):
                    attr.add(v)
                    changed = True
    return attr, strategy


def parity_regions(arena: Arena) -> tuple[set[int], set[int],
                                          dict[int, int], dict[int, int]]:
    """Winning regions and positional winning strategies for both players."""
    succ = arena.succ
    owner = arena.owner
    colors = arena.colors

    def solve(region: set[int]):
        if not region:
            return set(), set(), {}, {}
        p = min(colors[v] for v in region)
        i = 1 if p % 2 == 0 else 2
        opp = 2 if i == 1 else 1
        target = {v for v in region if colors[v] == p}
        attr, astrat = _attractor(succ, owner, region, target, i)
        w1, w2, s1, s2 = solve(region - attr)
        wi, wo = (w1, w2) if i == 1 else (w2, w1)
        si, so = (s1, s2) if i == 1 else (s2, s1)
        if not wo:
            strat = dict(si)
            strat.update(astrat)
            for v in target:
                if owner(v) == i:
                    strat.setdefault(v, next(w for w in succ[v] if w in region))
            if i == 1:
                return set(region), set(), strat, {}
            return set(), set(region), {}, strat
        battr, bstrat = _attractor(succ, owner, region, wo, opp)
        w1c, w2c, s1c, s2c = solve(region - battr)
        woc = w2c if i == 1 else w1c
        soc = s2c if i == 1 else s1c
        opp_region = woc | battr
        opp_strat = {v: so[v] for v in so}
        opp_strat.update(bstrat)
        opp_strat.update(soc)
        if i == 1:
            return w1c, opp_region, s1c, opp_strat
        return opp_region, w2c, opp_strat, s2c

    return solve(set(range(arena.num_vertices)))


def _complete_positional(arena: Arena, player: int,
                         partial: dict[int, int]) -> PositionalStrategy:
    moves = dict(partial)
    mine = arena.owned if player == 1 else \
        set(range(arena.num_vertices)) - arena.owned
    for v in mine:
        moves.setdefault(v, arena.succ[v][0])
    return PositionalStrategy(player, moves)


def solve_parity(arena: Arena, start: int) -> tuple[int, PositionalStrategy]:
    """Winner from ``start`` plus a positional winning strategy for them."""
    w1, w2, s1, s2 = parity_regions(arena)
    winner = 1 if start in w1 else 2
    partial = s1 if winner == 1 else s2
    return winner, _complete_positional(arena, winner, partial)


def parity_winner_of_play(arena: Arena, play: Play) -> int:
    cluster = play.cluster_colors(arena)
    return 1 if min(cluster) % 2 == 0 else 2


def all_positional_strategies(arena: Arena, player: int
                              ) -> Iterator[PositionalStrategy]:
    mine = sorted(arena.owned if player == 1 else
                  set(range(arena.num_vertices)) - arena.owned)
    for picks in itertools.product(*(arena.succ[v] for v in mine)):
        yield PositionalStrategy(player, dict(zip(mine, picks)))


# ---------------------------------------------------------------------------
# Muller: latest-appearance-record reduction to parity.

def lar_update(perm: tuple[int, ...], color: int) -> tuple[tuple[int, ...], int]:
    """Move the colour to the back; the hit is its old 1-based position."""
    j = perm.index(color)
    return perm[:j] + perm[j + 1:] + (color,), j + 1


def muller_memory_bound(arena: Arena) -> int:
    c = len(arena.color_set())
    return math.factorial(c) * c


def _lar_product(arena: Arena, start: int, win_sets: frozenset[frozenset[int]]):
    """Reachable LAR product arena as index-based structures."""
    base = tuple(sorted(arena.color_set()))
    init = (start, lar_update(base, arena.colors[start]))
    index: dict[tuple, int] = {}
    nodes: list[tuple] = []
    succ: list[list[int]] = []
    stack = [init]
    index[init] = 0
    nodes.append(init)
    succ.append([])
    while stack:
        node = stack.pop()
        v, (perm, hit) = node
        out = []
        for w in arena.succ[v]:
            nxt = (w, lar_update(perm, arena.colors[w]))
            if nxt not in index:
                index[nxt] = len(nodes)
                nodes.append(nxt)
                succ.append([])
                stack.append(nxt)
            out.append(index[nxt])
        succ[index[node]] = out
    owned = [i for i, (v, _) in enumerate(nodes) if v in arena.owned]
    colors = []
    for v, (perm, hit) in nodes:
        suffix = frozenset(perm[hit - 1:])
        colors.append(2 * hit if suffix in win_sets else 2 * hit + 1)
    edges = [(u, w) for u, out in enumerate(succ) for w in out]
    product = Arena(len(nodes), owned, edges, colors)
    return product, nodes, index[init]


def solve_muller(arena: Arena, start: int,
                 win_sets: Iterable[Iterable[int]]
                 ) -> tuple[int, FiniteMemoryStrategy]:
    """Winner (player 1 wins iff the cluster set is a winning set) and a
    finite-memory winning strategy with at most |C|!*|C| states."""
    wsets = frozenset(frozenset(s) for s in win_sets)
    product, nodes, init = _lar_product(arena, start, wsets)
    w1, w2, s1, s2 = parity_regions(product)
    winner = 1 if init in w1 else 2
    partial = s1 if winner == 1 else s2
    complete = _complete_positional(product, winner, partial)
    # project the positional product strategy back onto a memory machine
    move_of: dict[tuple, int] = {}
    for i, (v, lar) in enumerate(nodes):
        if (v in arena.owned) == (winner == 1):
            target_v = nodes[complete.moves[i]][0]
            move_of[(lar, v)] = target_v
    base = tuple(sorted(arena.color_set()))

    def update(mem, vertex):
        perm = mem[0] if mem is not None else base
        return lar_update(perm, arena.colors[vertex])

    def choice(mem, vertex):
        return move_of.get((mem, vertex), arena.succ[vertex][0])

    machine = FiniteMemoryStrategy(winner, None, update, choice,
                                   num_states=muller_memory_bound(arena) + 1)
    return winner, machine


def muller_winner_of_play(arena: Arena, play: Play,
                          win_sets: Iterable[Iterable[int]]) -> int:
    wsets = {frozenset(s) for s in win_sets}
    return 1 if play.cluster_colors(arena) in wsets else 2


# ---------------------------------------------------------------------------
# Multi-outcome games on arenas.

PRIORITY = "priority"
MULLER = "muller"


@dataclass
class MultiOutcomeGraphGame:
    """A two-player graph game whose plays map to abstract outcomes.

    Priority kind: the outcome is read off the minimum colour occurring
    infinitely often (the bottom outcome stands in for an empty cluster set,
    which never happens on finite arenas).  Muller kind: the outcome is read
    off the cluster set itself.
    """

    arena: Arena
    start: int
    kind: str
    outcomes: OutcomeSet
    preferences: PreferenceProfile
    priority_map: Optional[dict[int, int]] = None
    bottom_outcome: Optional[int] = None
    muller_map: Optional[dict[frozenset[int], int]] = None

    def __post_init__(self):
        if self.kind not in (PRIORITY, MULLER):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.preferences.players != 2:
            raise ValueError("two players required")
        occurring = self.arena.color_set()
        if self.kind == PRIORITY:
            if self.priority_map is None:
                raise ValueError("priority games need a colour-to-outcome map")
            missing = occurring - set(self.priority_map)
            if missing:
                raise ValueError(f"no outcome for colours {sorted(missing)}")
        else:
            if self.muller_map is None:
                raise ValueError("Muller games need a cluster-set-to-outcome map")
            for r in range(1, len(occurring) + 1):
                for combo in itertools.combinations(sorted(occurring), r):
                    if frozenset(combo) not in self.muller_map:
                        raise ValueError(f"no outcome for cluster set {set(combo)}")

    def outcome_of_cluster(self, cluster: frozenset[int]) -> int:
        if not cluster:
            raise NotDeterminedError("empty cluster set on a finite arena")
        if self.kind == PRIORITY:
            return self.priority_map[min(cluster)]
        return self.muller_map[cluster]

    def outcome_of_play(self, play: Play) -> int:
        return self.outcome_of_cluster(play.cluster_colors(self.arena))


class PriorityOracle(WinLoseOracle):
    """Win-lose oracle for a multi-outcome priority game.

    Renames each colour c to 2c or 2c+1 so that even colours are exactly the
    ones whose outcome the label grants to player 1, then solves the parity
    game.  Strategies are positional.
    """

    def __init__(self, game: MultiOutcomeGraphGame):
        if game.kind != PRIORITY:
            raise ValueError("priority oracle needs a priority game")
        self.game = game

    @property
    def n_outcomes(self) -> int:
        return self.game.outcomes.size

    def _solve(self, label: SubsetWord) -> tuple[int, PositionalStrategy]:
        arena = self.game.arena
        renamed_colors = [
            2 * c if self.game.priority_map[c] in label else 2 * c + 1
            for c in arena.colors]
        renamed = Arena(arena.num_vertices, arena.owned, arena.edges,
                        renamed_colors)
        return solve_parity(renamed, self.game.start)

    def winner(self, label: SubsetWord) -> int:
        return self._solve(label)[0]

    def strategy(self, label: SubsetWord) -> OracleStrategy:
        winner, strat = self._solve(label)
        return OracleStrategy(winner, strat, True)


class MullerOracle(WinLoseOracle):
    """Win-lose oracle for a multi-outcome Muller game, via the LAR reduction.

    Strategies are finite-memory machines.
    """

    def __init__(self, game: MultiOutcomeGraphGame):
        if game.kind != MULLER:
            raise ValueError("Muller oracle needs a Muller game")
        self.game = game

    @property
    def n_outcomes(self) -> int:
        return self.game.outcomes.size

    def _win_sets(self, label: SubsetWord) -> list[frozenset[int]]:
        return [s for s, o in self.game.muller_map.items() if o in label]

    def winner(self, label: SubsetWord) -> int:
        return solve_muller(self.game.arena, self.game.start,
                            self._win_sets(label))[0]

    def strategy(self, label: SubsetWord) -> OracleStrategy:
        winner, strat = solve_muller(self.game.arena, self.game.start,
                                     self._win_sets(label))
        return OracleStrategy(winner, strat, True)


def _tarjan_sccs(n: int, succ: list[list[int]]) -> list[list[int]]:
    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    visited = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = itertools.count(1)

    def strongconnect(root: int) -> None:
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                visited[v] = True
                index[v] = low[v] = next(counter)
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for i in range(pi, len(succ[v])):
                w = succ[v][i]
                if not visited[w]:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)

    for v in range(n):
        if not visited[v]:
            strongconnect(v)
    return sccs


def _residual_graph(game: MultiOutcomeGraphGame, fixed, deviator: int):
    """One-player product graph: the fixed player's moves are forced by their
    machine, every other choice belongs to the deviator."""
    arena = game.arena
    fm = as_finite_memory(fixed)
    fixed_player = fm.player
    if fixed_player == deviator:
        raise ValueError("fixed player and deviator must differ")
    init = (game.start, fm.update(fm.initial, game.start))
    index: dict[tuple, int] = {init: 0}
    nodes: list[tuple] = [init]
    succ: list[list[int]] = [[]]
    stack = [init]
    while stack:
        node = stack.pop()
        v, mem = node
        if arena.owner(v) == fixed_player:
            targets = [fm.choice(mem, v)]
        else:
            targets = list(arena.succ[v])
        out = []
        for w in targets:
            nxt = (w, fm.update(mem, w))
            if nxt not in index:
                index[nxt] = len(nodes)
                nodes.append(nxt)
                succ.append([])
                stack.append(nxt)
            out.append(index[nxt])
        succ[index[node]] = out
    return nodes, succ


def achievable_deviation_outcomes(game: MultiOutcomeGraphGame, fixed,
                                  deviator: int) -> set[int]:
    """Every outcome the deviator can reach against the fixed strategy.

    Exact over all (arbitrary-memory) deviations: an outcome is achievable
    iff some reachable cycle of the residual one-player graph induces it.
    """
    nodes, succ = _residual_graph(game, fixed, deviator)
    arena = game.arena
    node_colors = [arena.colors[v] for v, _ in nodes]
    achievable: set[int] = set()
    occurring = sorted(set(node_colors))
    if game.kind == PRIORITY:
        for c in occurring:
            keep = [i for i, col in enumerate(node_colors) if col >= c]
            if _has_cycle_through_color(keep, succ, node_colors, {c},
                                        require_exact=False):
                achievable.add(game.priority_map[c])
        return achievable
    for r in range(1, len(occurring) + 1):
        for combo in itertools.combinations(occurring, r):
            colors = set(combo)
            keep = [i for i, col in enumerate(node_colors) if col in colors]
            if _has_cycle_through_color(keep, succ, node_colors, colors,
                                        require_exact=True):
                achievable.add(game.muller_map[frozenset(colors)])
    return achievable


def _has_cycle_through_color(keep: list[int], succ: list[list[int]],
                             node_colors: list[int], colors: set[int],
                             require_exact: bool) -> bool:
    """Does the subgraph induced by ``keep`` contain a cycle whose colour set
    covers ``colors`` (exactly, when required)?"""
    keep_set = set(keep)
    remap = {v: i for i, v in enumerate(keep)}
    sub_succ = [[remap[w] for w in succ[v] if w in keep_set] for v in keep]
    for comp in _tarjan_sccs(len(keep), sub_succ):
        comp_set = set(comp)
        has_edge = any(w in comp_set for v in comp for w in sub_succ[v])
        if not has_edge:
            continue
        comp_colors = {node_colors[keep[v]] for v in comp}
        if require_exact:
            if colors <= comp_colors:
                return True
        else:
            if colors & comp_colors:
                return True
    return False


@dataclass
class GraphEquilibrium:
    strategy_1: FiniteMemoryStrategy | PositionalStrategy
    strategy_2: FiniteMemoryStrategy | PositionalStrategy
    outcome: int
    counter: CallCounter
    restricted: bool


def multi_outcome_ne(game: MultiOutcomeGraphGame) -> GraphEquilibrium:
    """Nash equilibrium of a multi-outcome priority or Muller game.

    Priority games yield positional profiles (preferences of finite height);
    Muller games yield finite-memory profiles (acyclic preferences).  The
    result is verified exactly against all deviations via the residual-graph
    cycle analysis.
    """
    for p in game.preferences.prefs:
        if game.kind == PRIORITY:
            if height(p) is None:
                raise UnboundedHeightError(
                    "priority transfer needs finite-height preferences")
        elif not is_acyclic(p):
            raise CyclicPreferenceError(
                "Muller transfer needs acyclic preferences")
    oracle = PriorityOracle(game) if game.kind == PRIORITY else MullerOracle(game)
    result = run_transfer(oracle, game.preferences)
    s1, s2 = result.strategy_1.handle, result.strategy_2.handle
    play = play_of(game.arena, game.start, s1, s2)
    played = game.outcome_of_play(play)
    if played != result.outcome:
        raise NotDeterminedError(
            f"profile plays outcome {played}, transfer promised {result.outcome}")
    for deviator, fixed in ((1, s2), (2, s1)):
        pref = game.preferences[deviator - 1]
        for alt in achievable_deviation_outcomes(game, fixed, deviator):
            if pref.less(played, alt):
                raise NotDeterminedError(
                    f"player {deviator} can deviate to a preferred outcome {alt}")
    restricted = result.strategy_1.restricted and result.strategy_2.restricted
    return GraphEquilibrium(s1, s2, played, result.counter, restricted)
