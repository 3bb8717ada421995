"""Games in normal form: structures, Nash checking, determinacy, slicing.

The outcome function is stored as a dense row-major integer tensor whose
shape equals the strategy counts; entries are outcome indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import BadIndexError, TooLargeError
from .prefs import OutcomeSet, PreferenceProfile

Profile = tuple[int, ...]

DEFAULT_PROFILE_CAP = 1_000_000
DEFAULT_OUTCOME_CAP = 20


@dataclass(frozen=True)
class SubsetWord:
    """Characteristic bit word over the outcome set: bit i set iff outcome i is in."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    def __len__(self) -> int:
        return len(self.bits)

    @staticmethod
    def from_indices(n: int, members: Iterable[int]) -> "SubsetWord":
        bits = [0] * n
        for i in members:
            bits[i] = 1
        return SubsetWord(tuple(bits))

    @staticmethod
    def full(n: int) -> "SubsetWord":
        return SubsetWord((1,) * n)

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.bits) if b)

    def complement(self) -> "SubsetWord":
        return SubsetWord(tuple(1 - b for b in self.bits))

    def __contains__(self, outcome: int) -> bool:
        return self.bits[outcome] == 1


class GameStructure:
    """A game stripped of preferences: players, strategies, outcomes, outcome map."""

    def __init__(self, strategy_counts: Sequence[int], outcomes: OutcomeSet,
                 table: np.ndarray | Sequence[int]):
        counts = tuple(int(c) for c in strategy_counts)
        if not counts or any(c < 1 for c in counts):
            raise ValueError("every player needs at least one strategy")
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(counts)
        if arr.shape != counts:
            raise ValueError(f"tensor shape {arr.shape} != strategy counts {counts}")
        if arr.size and (arr.min() < 0 or arr.max() >= outcomes.size):
            raise ValueError("tensor entry out of outcome range")
        arr = arr.copy()
        arr.setflags(write=False)
        self.strategy_counts = counts
        self.outcomes = outcomes
        self.table = arr

    @property
    def players(self) -> int:
        return len(self.strategy_counts)

    @property
    def profile_count(self) -> int:
        n = 1
        for c in self.strategy_counts:
            n *= c
        return n

    def outcome(self, profile: Sequence[int]) -> int:
        return int(self.table[tuple(profile)])

    def profiles(self) -> Iterator[Profile]:
        return itertools.product(*(range(c) for c in self.strategy_counts))

    def __eq__(self, other) -> bool:
        return (isinstance(other, GameStructure)
                and self.strategy_counts == other.strategy_counts
                and self.outcomes == other.outcomes
                and np.array_equal(self.table, other.table))

    def __repr__(self) -> str:
        return (f"GameStructure(players={self.players}, "
                f"strategies={self.strategy_counts}, outcomes={self.outcomes.size})")


@dataclass(frozen=True)
class NormalFormGame:
    """A game structure together with one preference per player."""

    structure: GameStructure
    preferences: PreferenceProfile

    def __post_init__(self):
        if self.preferences.players != self.structure.players:
            raise ValueError("one preference per player required")
        if self.preferences.outcomes.size != self.structure.outcomes.size:
            raise ValueError("preferences must range over the structure's outcomes")


@dataclass(frozen=True)
class WinLoseGame:
    """Two-player structure plus a label word: bit 1 marks a player-1 win."""

    structure: GameStructure
    label: SubsetWord

    def __post_init__(self):
        if self.structure.players != 2:
            raise ValueError("win-lose games have exactly two players")
        if len(self.label) != self.structure.outcomes.size:
            raise ValueError("label length must equal the outcome count")


def deviations(structure: GameStructure, s: Profile, player: int) -> Iterator[Profile]:
    """All profiles differing from s at most in the given player's component."""
    for alt in range(structure.strategy_counts[player]):
        if alt != s[player]:
            yield s[:player] + (alt,) + s[player + 1:]


def is_nash_equilibrium(g: NormalFormGame, s: Profile) -> bool:
    """No player can unilaterally reach a strictly preferred outcome."""
    st = g.structure
    base = st.outcome(s)
    for player in range(st.players):
        pref = g.preferences[player]
        for s2 in deviations(st, s, player):
            if pref.less(base, st.outcome(s2)):
                return False
    return True


def find_all_ne(g: NormalFormGame, cap: int = DEFAULT_PROFILE_CAP) -> list[Profile]:
    """Brute-force enumeration in lexicographic profile order."""
    st = g.structure
    if st.profile_count > cap:
        raise TooLargeError(f"{st.profile_count} profiles exceed cap {cap}")
    return [s for s in st.profiles() if is_nash_equilibrium(g, s)]


def winning_strategy(w: WinLoseGame) -> Optional[tuple[int, int]]:
    """A (player, strategy) guaranteeing that player's win, or None.

    Scans player 1's strategies in ascending index order first, then player 2's.
    """
    table = w.structure.table
    bits = np.asarray(w.label.bits, dtype=bool)
    wins = bits[table]  # True where player 1 wins
    for i in range(w.structure.strategy_counts[0]):
        if wins[i, :].all():
            return (1, i)
    for j in range(w.structure.strategy_counts[1]):
        if not wins[:, j].any():
            return (2, j)
    return None


def can_enforce(st: GameStructure, player: int, subset: SubsetWord) -> bool:
    """True iff the player has a strategy keeping the outcome inside the subset."""
    return enforcing_strategy(st, player, subset) is not None


def enforcing_strategy(st: GameStructure, player: int,
                       subset: SubsetWord) -> Optional[int]:
    """Lowest-index strategy of the player enforcing the subset, or None."""
    if st.players != 2:
        raise ValueError("enforcement is defined for two-player structures")
    if player not in (1, 2):
        raise BadIndexError(f"player must be 1 or 2, got {player}")
    inside = np.asarray(subset.bits, dtype=bool)[st.table]
    axis_ok = inside.all(axis=1) if player == 1 else inside.all(axis=0)
    hits = np.flatnonzero(axis_ok)
    return int(hits[0]) if hits.size else None


def derive_win_lose(st: GameStructure, label: SubsetWord) -> WinLoseGame:
    return WinLoseGame(st, label)


def all_labels(n: int) -> Iterator[SubsetWord]:
    for bits in itertools.product((0, 1), repeat=n):
        yield SubsetWord(bits)


def is_determined(st: GameStructure, cap: int = DEFAULT_OUTCOME_CAP) -> bool:
    """Every derived win-lose game has a winning strategy.

    Exponential in the outcome count; guarded by a cap.
    """
    n = st.outcomes.size
    if st.players != 2:
        raise ValueError("determinacy is defined for two-player structures")
    if n > cap:
        raise TooLargeError(f"{n} outcomes exceed determinacy cap {cap}")
    return all(winning_strategy(derive_win_lose(st, lab)) is not None
               for lab in all_labels(n))


def is_determined_by_enforcement(st: GameStructure,
                                 cap: int = DEFAULT_OUTCOME_CAP) -> bool:
    """Equivalent characterisation: each subset is enforced by player 1 or
    its complement is enforced by player 2."""
    n = st.outcomes.size
    if n > cap:
        raise TooLargeError(f"{n} outcomes exceed determinacy cap {cap}")
    return all(can_enforce(st, 1, lab) or can_enforce(st, 2, lab.complement())
               for lab in all_labels(n))


def slice_structure(st: GameStructure, player: int, strategy: int) -> GameStructure:
    """Fix one player's strategy in a three-player structure."""
    if st.players != 3:
        raise ValueError("slicing expects a three-player structure")
    if not (0 <= player < 3):
        raise BadIndexError(f"player index {player} out of range")
    if not (0 <= strategy < st.strategy_counts[player]):
        raise BadIndexError(f"strategy index {strategy} out of range")
    table = np.take(st.table, strategy, axis=player)
    counts = tuple(c for i, c in enumerate(st.strategy_counts) if i != player)
    return GameStructure(counts, st.outcomes, table)


def merge_players(st: GameStructure, pair: tuple[int, int]) -> GameStructure:
    """Fuse two players of a three-player structure into one super-player.

    The merged player becomes player 1 with strategies flattened row-major
    over (pair[0], pair[1]); the remaining player becomes player 2.
    """
    if st.players != 3:
        raise ValueError("merging expects a three-player structure")
    a, b = pair
    if a == b or not all(0 <= p < 3 for p in pair):
        raise BadIndexError(f"bad player pair {pair}")
    other = ({0, 1, 2} - {a, b}).pop()
    table = np.transpose(st.table, (a, b, other))
    merged = table.reshape(st.strategy_counts[a] * st.strategy_counts[b],
                           st.strategy_counts[other])
    return GameStructure(merged.shape, st.outcomes, merged)
