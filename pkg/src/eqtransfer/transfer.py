"""The equilibrium-transfer algorithm and its companion reductions.

A pluggable win-lose oracle answers, for any subset of the outcomes, which
player wins the derived win-lose game and with which strategy.  The transfer
routine turns such an oracle into a Nash equilibrium of the multi-outcome
game using at most n winner queries and 2 strategy queries.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from .errors import (CyclicPreferenceError, HypothesisViolatedError,
                     NotDeterminedError, NotZeroSumError, UnboundedHeightError)
from .normal_form import (GameStructure, NormalFormGame, Profile, SubsetWord,
                          enforcing_strategy, is_nash_equilibrium)
from .prefs import (OutcomeSet, Preference, PreferenceProfile, height,
                    is_acyclic, is_strict_linear, linear_extension, rank,
                    upward_cone)


@dataclass(frozen=True)
class OracleStrategy:
    """A winning strategy as reported by an oracle.

    ``restricted`` asserts membership in the oracle's distinguished strategy
    class (positional, finite-memory, ...).
    """

    player: int
    handle: Any
    restricted: bool


@dataclass
class CallCounter:
    winner_calls: int = 0
    strategy_calls: int = 0


class WinLoseOracle(abc.ABC):
    """Winner and winning strategy of every win-lose game derived from one
    fixed two-player structure."""

    @property
    @abc.abstractmethod
    def n_outcomes(self) -> int:
        ...

    @abc.abstractmethod
    def winner(self, label: SubsetWord) -> int:
        """1 or 2: who wins the derived game where bit 1 means player 1 wins."""

    @abc.abstractmethod
    def strategy(self, label: SubsetWord) -> OracleStrategy:
        """A winning strategy for the winner of the derived game."""


class CountingOracle(WinLoseOracle):
    """Wrapper instrumenting the call counts of another oracle."""

    def __init__(self, inner: WinLoseOracle):
        self.inner = inner
        self.counter = CallCounter()

    @property
    def n_outcomes(self) -> int:
        return self.inner.n_outcomes

    def winner(self, label: SubsetWord) -> int:
        self.counter.winner_calls += 1
        return self.inner.winner(label)

    def strategy(self, label: SubsetWord) -> OracleStrategy:
        self.counter.strategy_calls += 1
        return self.inner.strategy(label)


class StructureOracle(WinLoseOracle):
    """Brute-force oracle over a finite two-player game structure.

    On a non-determined structure some derived games have no winner; this
    oracle then reports player 2 with an arbitrary strategy, and the caller's
    equilibrium verification catches the lie.
    """

    def __init__(self, structure: GameStructure, restricted: bool = True):
        if structure.players != 2:
            raise ValueError("oracle expects a two-player structure")
        self.structure = structure
        self.restricted = restricted

    @property
    def n_outcomes(self) -> int:
        return self.structure.outcomes.size

    def winner(self, label: SubsetWord) -> int:
        return 1 if enforcing_strategy(self.structure, 1, label) is not None else 2

    def strategy(self, label: SubsetWord) -> OracleStrategy:
        row = enforcing_strategy(self.structure, 1, label)
        if row is not None:
            return OracleStrategy(1, row, self.restricted)
        col = enforcing_strategy(self.structure, 2, label.complement())
        return OracleStrategy(2, col if col is not None else 0, self.restricted)


def _label_from_linear_bits(linear: Sequence[int], bits: Sequence[int]) -> SubsetWord:
    n = len(linear)
    out = [0] * n
    for pos, b in enumerate(bits):
        out[linear[pos]] = b
    return SubsetWord(tuple(out))


def max_enforceable_word(oracle: WinLoseOracle, n: int,
                         linear: Sequence[int]) -> SubsetWord:
    """Lift-greatest subset player 1 can enforce, in exactly n winner calls.

    Bits are decided from the least linear-order position upward: a position
    is dropped whenever player 1 still wins with it dropped and every later
    position kept.
    """
    bits: list[int] = []
    for k in range(n):
        probe = bits + [0] + [1] * (n - k - 1)
        won = oracle.winner(_label_from_linear_bits(linear, probe)) == 1
        bits.append(0 if won else 1)
    return _label_from_linear_bits(linear, bits)


@dataclass(frozen=True)
class TransferResult:
    """Raw output of one transfer run, before any game-level verification."""

    strategy_1: OracleStrategy
    strategy_2: OracleStrategy
    outcome: int
    enforced: SubsetWord
    counter: CallCounter


def run_transfer(oracle: WinLoseOracle, prefs: PreferenceProfile) -> TransferResult:
    """Core of the transfer: compute the equilibrium pair of oracle strategies.

    The expected played outcome is the preferred-by-player-2 maximum of the
    lift-greatest enforceable set; the caller is responsible for verifying
    the resulting profile in its own game.
    """
    if prefs.players != 2:
        raise ValueError("transfer works on two-player games")
    for p in prefs.prefs:
        if not is_acyclic(p):
            raise CyclicPreferenceError("transfer requires acyclic preferences")
    n = oracle.n_outcomes
    if n != prefs.outcomes.size:
        raise ValueError("oracle and preferences disagree on the outcome count")
    counting = CountingOracle(oracle)
    linear = linear_extension(prefs[0])
    enforced = max_enforceable_word(counting, n, linear)
    members = enforced.indices()
    if not members:
        raise NotDeterminedError("oracle claims player 1 enforces the empty set")
    pref2 = prefs[1]
    maximal = [x for x in members
               if not any(pref2.less(x, y) for y in members)]
    m = min(maximal)
    pos = {o: i for i, o in enumerate(linear)}
    j = pos[m]
    bits = [enforced.bits[linear[i]] for i in range(n)]
    drop_bits = bits[:j] + [0] + [1] * (n - j - 1)
    drop = _label_from_linear_bits(linear, drop_bits)
    s1 = counting.strategy(enforced)
    s2 = counting.strategy(drop)
    if s1.player != 1 or s2.player != 2:
        raise NotDeterminedError(
            "oracle answers are inconsistent with a determined structure")
    return TransferResult(s1, s2, m, enforced, counting.counter)


def transfer_equilibrium(g: NormalFormGame,
                         oracle: Optional[WinLoseOracle] = None
                         ) -> tuple[Profile, CallCounter]:
    """Nash equilibrium of a two-player game via a win-lose oracle.

    Determinacy of the structure is not re-checked (that would cost 2^n
    oracle calls); instead the final profile is verified and
    NotDeterminedError is raised when it fails.
    """
    if g.structure.players != 2:
        raise ValueError("transfer works on two-player games")
    if oracle is None:
        oracle = StructureOracle(g.structure)
    result = run_transfer(oracle, g.preferences)
    profile = (result.strategy_1.handle, result.strategy_2.handle)
    if (not isinstance(profile[0], int)) or (not isinstance(profile[1], int)):
        raise ValueError("oracle handles must be strategy indices for this game")
    if g.structure.outcome(profile) != result.outcome:
        raise NotDeterminedError(
            f"profile yields outcome {g.structure.outcome(profile)}, "
            f"expected {result.outcome}")
    if not is_nash_equilibrium(g, profile):
        raise NotDeterminedError("transfer produced a non-equilibrium profile; "
                                 "the structure is not determined")
    return profile, result.counter


def enforceable_finite_cone(g: NormalFormGame, player: int) -> Optional[set[int]]:
    """Smallest-by-scan finite upward cone the player can enforce, or None.

    On finite games some cone always exists (the full outcome set); exposed so
    the general acyclic-preference applicability condition can be checked
    explicitly.
    """
    st = g.structure
    pref = g.preferences[player - 1]
    n = st.outcomes.size
    best: Optional[set[int]] = None
    table = st.table if player == 1 else st.table.T
    for i in range(table.shape[0]):
        reached = {int(o) for o in table[i]}
        cone = upward_cone(pref, reached)
        if best is None or len(cone) < len(best):
            best = cone
    return best


def eliminate_dominated_outcomes(g: NormalFormGame, e: int, o: int) -> NormalFormGame:
    """Collapse the outcomes strictly below ``o`` for player 1, given a
    player-1 strategy ``e`` excluding all of them.

    Every Nash equilibrium of the reduced game is one of the original game.
    """
    st = g.structure
    if st.players != 2:
        raise ValueError("elimination works on two-player games")
    p1, p2 = g.preferences[0], g.preferences[1]
    if not (is_strict_linear(p1) and is_strict_linear(p2)):
        raise HypothesisViolatedError("preferences must be strict linear orders")
    if not (0 <= e < st.strategy_counts[0]):
        raise HypothesisViolatedError(f"no player-1 strategy {e}")
    if not (0 <= o < st.outcomes.size):
        raise HypothesisViolatedError(f"no outcome {o}")
    for s2 in range(st.strategy_counts[1]):
        if not p1.less(o, st.outcome((e, s2))):
            raise HypothesisViolatedError(
                f"strategy {e} reaches outcome {st.outcome((e, s2))} "
                f"not above {o} for player 1")
    keep = sorted({o} | {x for x in range(st.outcomes.size) if p1.less(o, x)})
    remap = {old: new for new, old in enumerate(keep)}
    labels = None
    if st.outcomes.labels is not None:
        labels = tuple(st.outcomes.labels[old] for old in keep)
    new_outcomes = OutcomeSet(len(keep), labels)
    new_table = [[remap.get(st.outcome((i, j)), remap[o])
                  for j in range(st.strategy_counts[1])]
                 for i in range(st.strategy_counts[0])]
    new_o = remap[o]
    pairs1 = {(remap[x], remap[y]) for (x, y) in p1.pairs
              if x in remap and y in remap}
    pairs2 = set()
    for x in range(len(keep)):
        for y in range(len(keep)):
            if x == y:
                continue
            ox, oy = keep[x], keep[y]
            if x != new_o and (p2.less(ox, oy) or y == new_o):
                pairs2.add((x, y))
    prefs = PreferenceProfile((
        Preference(new_outcomes, frozenset(pairs1)),
        Preference(new_outcomes, frozenset(pairs2)),
    ))
    return NormalFormGame(GameStructure(st.strategy_counts, new_outcomes, new_table),
                          prefs)


def minimax_transfer(g: NormalFormGame) -> Profile:
    """Nash equilibrium of a determined game with inverse linear preferences.

    The equilibrium outcome is the minimum of the smallest player-1-preferred
    terminal interval player 1 can enforce; all Nash equilibria share it.
    """
    st = g.structure
    if st.players != 2:
        raise ValueError("minimax transfer works on two-player games")
    p1, p2 = g.preferences[0], g.preferences[1]
    if not is_strict_linear(p1):
        raise NotZeroSumError("player 1's preference must be a strict linear order")
    if p2.pairs != p1.inverse().pairs:
        raise NotZeroSumError("player 2's preference must be the inverse of player 1's")
    ranking = linear_extension(p1)  # least to most preferred for player 1
    n = st.outcomes.size
    chosen = 0
    for k in range(n - 1, -1, -1):
        top = SubsetWord.from_indices(n, ranking[k:])
        if enforcing_strategy(st, 1, top) is not None:
            chosen = k
            break
    s1 = enforcing_strategy(st, 1, SubsetWord.from_indices(n, ranking[chosen:]))
    assert s1 is not None
    above = SubsetWord.from_indices(n, ranking[chosen + 1:])
    s2 = enforcing_strategy(st, 2, above.complement())
    if s2 is None:
        raise NotDeterminedError("player 2 cannot exclude the unenforceable interval")
    profile = (s1, s2)
    if not is_nash_equilibrium(g, profile):
        raise NotDeterminedError("minimax profile failed verification; "
                                 "the structure is not determined")
    return profile


def finite_height_reduce(g: NormalFormGame) -> NormalFormGame:
    """Replace outcomes by rank pairs and preferences by coordinate comparisons.

    Any Nash equilibrium of the reduced game is one of the original game.
    """
    st = g.structure
    if st.players != 2:
        raise ValueError("reduction works on two-player games")
    p1, p2 = g.preferences[0], g.preferences[1]
    if height(p1) is None or height(p2) is None:
        raise UnboundedHeightError("both preferences need finite height")
    r1, r2 = rank(p1), rank(p2)
    pair_of = [(r1(o), r2(o)) for o in range(st.outcomes.size)]
    distinct = sorted(set(pair_of))
    index = {pr: i for i, pr in enumerate(distinct)}
    outcomes = OutcomeSet(len(distinct),
                          tuple(f"({a},{b})" for a, b in distinct))
    table = [[index[pair_of[st.outcome((i, j))]]
              for j in range(st.strategy_counts[1])]
             for i in range(st.strategy_counts[0])]
    pairs1 = {(index[x], index[y]) for x in distinct for y in distinct if x[0] < y[0]}
    pairs2 = {(index[x], index[y]) for x in distinct for y in distinct if x[1] < y[1]}
    prefs = PreferenceProfile((
        Preference(outcomes, frozenset(pairs1)),
        Preference(outcomes, frozenset(pairs2)),
    ))
    return NormalFormGame(GameStructure(st.strategy_counts, outcomes, table), prefs)
