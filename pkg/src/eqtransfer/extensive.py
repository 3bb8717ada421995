"""Finite two-player extensive-form games: trees, backward induction, transfer.

Strategies are full choice functions: one child per owned internal node,
including nodes the play never reaches.  Nodes are numbered by preorder
traversal so strategy enumeration is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import TooLargeError
from .normal_form import (DEFAULT_PROFILE_CAP, GameStructure, NormalFormGame,
                          Profile, SubsetWord)
from .prefs import OutcomeSet, PreferenceProfile
from .transfer import (CallCounter, OracleStrategy, WinLoseOracle,
                       transfer_equilibrium)


@dataclass(frozen=True)
class Leaf:
    outcome: int


@dataclass(frozen=True)
class Node:
    owner: int  # 1 or 2
    children: tuple[Union["Node", Leaf], ...]

    def __post_init__(self):
        if self.owner not in (1, 2):
            raise ValueError("nodes are owned by player 1 or 2")
        if not self.children:
            raise ValueError("internal nodes need at least one child")


class GameTree:
    """A finite rooted tree with owned internal nodes and outcome-bearing leaves."""

    def __init__(self, root: Union[Node, Leaf], outcomes: OutcomeSet):
        self.root = root
        self.outcomes = outcomes
        self._nodes: list[Node] = []
        self._collect(root)
        for leaf in self.leaves():
            if not (0 <= leaf.outcome < outcomes.size):
                raise ValueError(f"leaf outcome {leaf.outcome} out of range")

    def _collect(self, t: Union[Node, Leaf]) -> None:
        if isinstance(t, Node):
            self._nodes.append(t)
            for child in t.children:
                self._collect(child)

    def internal_nodes(self) -> list[Node]:
        """Internal nodes in preorder."""
        return list(self._nodes)

    def owned_nodes(self, player: int) -> list[int]:
        """Preorder indices of the internal nodes the player owns."""
        return [i for i, n in enumerate(self._nodes) if n.owner == player]

    def leaves(self) -> list[Leaf]:
        out: list[Leaf] = []

        def walk(t):
            if isinstance(t, Leaf):
                out.append(t)
            else:
                for c in t.children:
                    walk(c)

        walk(self.root)
        return out

    def strategy_count(self, player: int) -> int:
        count = 1
        for i in self.owned_nodes(player):
            count *= len(self._nodes[i].children)
        return count


@dataclass(frozen=True)
class TreeStrategy:
    """One child index per owned node, keyed by preorder node index."""

    player: int
    choices: tuple[tuple[int, int], ...]  # (node index, child index) pairs

    def choice(self, node_index: int) -> int:
        for n, c in self.choices:
            if n == node_index:
                return c
        raise KeyError(f"no choice recorded for node {node_index}")


def strategy_from_index(t: GameTree, player: int, index: int) -> TreeStrategy:
    """Decode a strategy index (mixed radix, first owned node most significant)."""
    owned = t.owned_nodes(player)
    radices = [len(t.internal_nodes()[i].children) for i in owned]
    digits = [0] * len(owned)
    rest = index
    for pos in range(len(owned) - 1, -1, -1):
        digits[pos] = rest % radices[pos]
        rest //= radices[pos]
    if rest:
        raise ValueError(f"strategy index {index} out of range")
    return TreeStrategy(player, tuple(zip(owned, digits)))


def strategy_to_index(t: GameTree, s: TreeStrategy) -> int:
    owned = t.owned_nodes(s.player)
    radices = [len(t.internal_nodes()[i].children) for i in owned]
    index = 0
    for node, radix in zip(owned, radices):
        index = index * radix + s.choice(node)
    return index


def play_tree(t: GameTree, s1: TreeStrategy, s2: TreeStrategy) -> int:
    """Outcome at the unique leaf reached by following both strategies."""
    by_player = {1: s1, 2: s2}
    node_index = {id(n): i for i, n in enumerate(t.internal_nodes())}
    cur: Union[Node, Leaf] = t.root
    while isinstance(cur, Node):
        strat = by_player[cur.owner]
        cur = cur.children[strat.choice(node_index[id(cur)])]
    return cur.outcome


def to_normal_form(t: GameTree, cap: int = DEFAULT_PROFILE_CAP) -> GameStructure:
    """Embed the tree into a two-player structure over full choice functions."""
    n1, n2 = t.strategy_count(1), t.strategy_count(2)
    if n1 * n2 > cap:
        raise TooLargeError(f"{n1 * n2} strategy profiles exceed cap {cap}")
    table = [[play_tree(t, strategy_from_index(t, 1, i), strategy_from_index(t, 2, j))
              for j in range(n2)]
             for i in range(n1)]
    return GameStructure((n1, n2), t.outcomes, table)


def _winner_map(t: GameTree, label: SubsetWord) -> dict[int, int]:
    """Backward induction: winning player at every internal node (by preorder id)."""
    node_index = {id(n): i for i, n in enumerate(t.internal_nodes())}
    winners: dict[int, int] = {}

    def solve(sub: Union[Node, Leaf]) -> int:
        if isinstance(sub, Leaf):
            return 1 if sub.outcome in label else 2
        results = [solve(c) for c in sub.children]
        won = sub.owner if sub.owner in results else (2 if sub.owner == 1 else 1)
        winners[node_index[id(sub)]] = won
        return won

    solve(t.root)
    return winners


class TreeOracle(WinLoseOracle):
    """Backward-induction win-lose oracle over a game tree.

    Strategy handles are indices into the tree's normal-form embedding, so
    transfer results plug directly into the converted game.
    """

    def __init__(self, tree: GameTree):
        self.tree = tree
        self.structure = to_normal_form(tree)

    @property
    def n_outcomes(self) -> int:
        return self.tree.outcomes.size

    def root_winner(self, label: SubsetWord) -> int:
        root = self.tree.root
        if isinstance(root, Leaf):
            return 1 if root.outcome in label else 2
        winners = _winner_map(self.tree, label)
        return winners[0]

    def winner(self, label: SubsetWord) -> int:
        return self.root_winner(label)

    def winning_tree_strategy(self, label: SubsetWord) -> tuple[int, TreeStrategy]:
        """Full strategy for the root winner: at won nodes move to a won child,
        elsewhere default to the first child."""
        winners = _winner_map(self.tree, label)
        root = self.tree.root
        if isinstance(root, Leaf):
            champion = 1 if root.outcome in label else 2
        else:
            champion = winners[0]
        nodes = self.tree.internal_nodes()
        node_index = {id(n): i for i, n in enumerate(nodes)}
        choices = []
        for i in self.tree.owned_nodes(champion):
            node = nodes[i]
            pick = 0
            if winners[i] == champion:
                for ci, child in enumerate(node.children):
                    child_w = (1 if child.outcome in label else 2) \
                        if isinstance(child, Leaf) else winners[node_index[id(child)]]
                    if child_w == champion:
                        pick = ci
                        break
            choices.append((i, pick))
        return champion, TreeStrategy(champion, tuple(choices))

    def strategy(self, label: SubsetWord) -> OracleStrategy:
        champion, strat = self.winning_tree_strategy(label)
        return OracleStrategy(champion, strategy_to_index(self.tree, strat), True)


def backward_induction_oracle(t: GameTree) -> TreeOracle:
    return TreeOracle(t)


def kuhn_via_transfer(t: GameTree, prefs: PreferenceProfile,
                      cap: int = DEFAULT_PROFILE_CAP
                      ) -> tuple[Profile, CallCounter]:
    """Nash equilibrium of the tree game via transfer with backward induction."""
    oracle = backward_induction_oracle(t)
    if oracle.structure.profile_count > cap:
        raise TooLargeError("tree too large for normal-form verification")
    game = NormalFormGame(oracle.structure, prefs)
    return transfer_equilibrium(game, oracle)
