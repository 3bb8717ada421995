"""Executable corpus of three-player counterexample games.

Each entry is a concrete game or structure together with machine-checkable
claims (no equilibrium, determinacy of all slices and mergers, specific
equilibrium lists, equilibrium existence under preference families).  Claims
over preference spaces too large to enumerate are checked by seeded sampling,
and every report says whether it was proved exhaustively or sampled.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable, Optional

import numpy as np

from .errors import UnknownNameError
from .normal_form import (GameStructure, NormalFormGame, find_all_ne,
                          is_determined, is_nash_equilibrium, merge_players,
                          slice_structure)
from .prefs import (OutcomeSet, Preference, PreferenceProfile, height,
                    is_acyclic)

X, Y, Z = 0, 1, 2
XYZ = OutcomeSet(3, ("X", "Y", "Z"))


@dataclass(frozen=True)
class ClaimReport:
    claim: str
    passed: bool
    exhaustive: bool
    detail: str


@dataclass(frozen=True)
class Claim:
    name: str
    description: str
    check: Callable[[random.Random, int], ClaimReport]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    description: str
    executable: bool
    structure: Optional[GameStructure]
    game: Optional[NormalFormGame]
    claims: tuple[Claim, ...]


def _has_ne(game: NormalFormGame) -> bool:
    return any(is_nash_equilibrium(game, s) for s in game.structure.profiles())


def _prefers_only(n: int, best: int, labels=None) -> Preference:
    """Everything else strictly below ``best``; no other comparabilities."""
    return Preference.from_pairs(
        n, [(o, best) for o in range(n) if o != best], labels)


# ---------------------------------------------------------------------------
# The 2x2x2 game with rotating preferences.

def remark_5_3_structure() -> GameStructure:
    t = np.empty((2, 2, 2), dtype=np.int64)
    l, r = 0, 1
    t[l, l, l] = t[l, r, l] = t[r, r, l] = Y
    t[r, l, l] = t[l, l, r] = t[l, r, r] = Z
    t[r, l, r] = t[r, r, r] = X
    return GameStructure((2, 2, 2), XYZ, t)


def remark_5_3_game() -> NormalFormGame:
    prefs = PreferenceProfile((
        Preference.from_ranking([Z, Y, X], XYZ.labels),
        Preference.from_ranking([X, Y, Z], XYZ.labels),
        Preference.from_ranking([X, Y, Z], XYZ.labels),
    ))
    return NormalFormGame(remark_5_3_structure(), prefs)


_BITS = OutcomeSet(8, tuple(f"{i:03b}" for i in range(8)))


def _bit_preferences() -> PreferenceProfile:
    """Outcomes are triples of win bits; each player compares their own bit."""
    prefs = []
    for player in range(3):
        shift = 2 - player
        pairs = {(o, p) for o in range(8) for p in range(8)
                 if (o >> shift) & 1 == 0 and (p >> shift) & 1 == 1}
        prefs.append(Preference(_BITS, frozenset(pairs)))
    return PreferenceProfile(tuple(prefs))


def bit_instantiation(st: GameStructure, wl: tuple[int, ...]) -> NormalFormGame:
    """Replace outcome o by the bit triple wl[o] (coded as an index 0..7)."""
    table = np.asarray(wl, dtype=np.int64)[st.table]
    return NormalFormGame(GameStructure(st.strategy_counts, _BITS, table),
                          _bit_preferences())


def _remark_5_3_claims(game: NormalFormGame) -> tuple[Claim, ...]:
    def no_ne(rng, samples):
        nes = find_all_ne(game)
        return ClaimReport("no-ne", not nes, True,
                           f"{len(nes)} equilibria found")

    def instantiations(rng, samples):
        total = ok = 0
        for wl in itertools.product(range(8), repeat=3):
            total += 1
            if _has_ne(bit_instantiation(game.structure, wl)):
                ok += 1
        return ClaimReport("bit-instantiations-have-ne", ok == total, True,
                           f"{ok}/{total} instantiations have an equilibrium")

    return (
        Claim("no-ne", "the rotating-preference game has no equilibrium", no_ne),
        Claim("bit-instantiations-have-ne",
              "every win-bit relabelling of the outcomes yields a game "
              "with an equilibrium", instantiations),
    )


# ---------------------------------------------------------------------------
# The n-strategy ladder game without equilibrium.

def prop_5_4_structure(n: int) -> GameStructure:
    if n < 2:
        raise ValueError("the ladder game needs n >= 2")
    outcomes = OutcomeSet(n + 1, tuple(str(i) for i in range(n + 1)))

    def val(a: int, b: int, c: int) -> int:  # 1-indexed strategies
        if c == n:
            if a == n:
                return 0
            if a == b:
                return a + 1
            return n
        if a == n and b == 1:
            return n
        if 1 < c < n and (a == c or b == c):
            return c
        return 1

    t = np.array([[[val(a, b, c) for c in range(1, n + 1)]
                   for b in range(1, n + 1)]
                  for a in range(1, n + 1)], dtype=np.int64)
    return GameStructure((n, n, n), outcomes, t)


def prop_5_4_game(n: int) -> NormalFormGame:
    st = prop_5_4_structure(n)
    usual = list(range(n + 1))
    prefs = PreferenceProfile((
        Preference.from_ranking(usual[::-1], st.outcomes.labels),
        Preference.from_ranking(usual, st.outcomes.labels),
        Preference.from_ranking(usual, st.outcomes.labels),
    ))
    return NormalFormGame(st, prefs)


def _short_chain_relations(size: int, max_height: int) -> list[frozenset]:
    """All acyclic relations on ``size`` outcomes with height <= max_height."""
    universe = [(x, y) for x in range(size) for y in range(size) if x != y]
    found = []
    for mask in range(1 << len(universe)):
        pairs = frozenset(p for i, p in enumerate(universe) if mask >> i & 1)
        p = Preference.from_pairs(size, pairs)
        if is_acyclic(p) and height(p) <= max_height:
            found.append(pairs)
    return found


def _random_short_chain(rng: random.Random, size: int,
                        max_height: int) -> Preference:
    while True:
        order = list(range(size))
        rng.shuffle(order)
        pairs = [(order[i], order[j])
                 for i in range(size) for j in range(i + 1, size)
                 if rng.random() < 0.3]
        p = Preference.from_pairs(size, pairs)
        if height(p) <= max_height:
            return p


def _short_chain_claim(st: GameStructure, max_height: int,
                       exhaustive_limit: int = 3) -> Claim:
    size = st.outcomes.size

    def check(rng, samples):
        if size <= exhaustive_limit:
            rels = _short_chain_relations(size, max_height)
            total = ok = 0
            for triple in itertools.product(rels, repeat=3):
                total += 1
                prefs = PreferenceProfile(tuple(
                    Preference(st.outcomes, r) for r in triple))
                if _has_ne(NormalFormGame(st, prefs)):
                    ok += 1
            return ClaimReport("short-chain-ne", ok == total, True,
                               f"{ok}/{total} short-chain preference triples "
                               f"have an equilibrium")
        ok = 0
        for _ in range(samples):
            prefs = PreferenceProfile(tuple(
                _random_short_chain(rng, size, max_height) for _ in range(3)))
            if _has_ne(NormalFormGame(st, prefs)):
                ok += 1
        return ClaimReport("short-chain-ne", ok == samples, False,
                           f"{ok}/{samples} sampled short-chain preference "
                           f"triples have an equilibrium")

    return Claim("short-chain-ne",
                 f"every preference triple without a {max_height + 1}-outcome "
                 f"chain yields a game with an equilibrium", check)


def _prop_5_4_claims(n: int, game: NormalFormGame) -> tuple[Claim, ...]:
    def no_ne(rng, samples):
        nes = find_all_ne(game)
        return ClaimReport("no-ne", not nes, True,
                           f"{len(nes)} equilibria found")

    def zero_sum(rng, samples):
        # payoffs (-2o, o, o) sum to zero and order outcomes exactly like
        # the stated preferences, so the zero-sum variant has no equilibrium
        payoffs = [(-2 * o, o, o) for o in range(n + 1)]
        balanced = all(sum(p) == 0 for p in payoffs)
        prefs = []
        for player in range(3):
            pairs = {(o, p) for o in range(n + 1) for p in range(n + 1)
                     if payoffs[o][player] < payoffs[p][player]}
            prefs.append(Preference(game.structure.outcomes, frozenset(pairs)))
        induced = NormalFormGame(game.structure, PreferenceProfile(tuple(prefs)))
        nes = find_all_ne(induced)
        return ClaimReport("zero-sum-variant", balanced and not nes, True,
                           f"payoffs balanced: {balanced}; "
                           f"{len(nes)} equilibria found")

    return (
        Claim("no-ne", "no equilibrium under the stated linear preferences",
              no_ne),
        Claim("zero-sum-variant",
              "the payoff version (-2o, o, o) is zero-sum and still has "
              "no equilibrium", zero_sum),
        _short_chain_claim(game.structure, max_height=n),
    )


# ---------------------------------------------------------------------------
# The 6x6x6 structure: determined slices/mergers, yet no equilibrium.

def prop_5_5_structure() -> GameStructure:
    t = np.full((6, 6, 6), -1, dtype=np.int64)
    latin_ab = {(1, 1): X, (2, 3): X, (3, 2): X,
                (1, 2): Y, (2, 1): Y, (3, 3): Y,
                (1, 3): Z, (2, 2): Z, (3, 1): Z}
    for (a, b), o in latin_ab.items():
        t[a - 1, b - 1, :] = o
    latin_bc = {(4, 1): X, (5, 3): X, (6, 2): X,
                (4, 2): Y, (5, 1): Y, (6, 3): Y,
                (4, 3): Z, (5, 2): Z, (6, 1): Z}
    for (b, c), o in latin_bc.items():
        t[:, b - 1, c - 1] = o
    latin_ac = {(4, 4): X, (5, 6): X, (6, 5): X,
                (4, 5): Y, (5, 4): Y, (6, 6): Y,
                (4, 6): Z, (5, 5): Z, (6, 4): Z}
    for (a, c), o in latin_ac.items():
        t[a - 1, :, c - 1] = o
    corner_ab = {(4, 1): X, (5, 3): X, (6, 2): X,
                 (4, 2): Y, (5, 1): Y, (6, 3): Y,
                 (4, 3): Z, (5, 2): Z, (6, 1): Z}
    for (a, b), o in corner_ab.items():
        t[a - 1, b - 1, 0:3] = o
    # the remaining low-a, high-b, high-c corner gets its own Latin cylinder
    # so that every slice stays determined and no new equilibrium appears
    fill_bc = {(4, 4): X, (5, 6): X, (6, 5): X,
               (4, 5): Y, (5, 4): Y, (6, 6): Y,
               (4, 6): Z, (5, 5): Z, (6, 4): Z}
    for (b, c), o in fill_bc.items():
        t[0:3, b - 1, c - 1] = o
    assert (t >= 0).all()
    return GameStructure((6, 6, 6), XYZ, t)


def unit_vector_game(st: GameStructure) -> NormalFormGame:
    """Player d prefers the outcome whose payoff vector has d's coordinate 1."""
    prefs = PreferenceProfile(tuple(
        _prefers_only(3, best, st.outcomes.labels) for best in (X, Y, Z)))
    return NormalFormGame(st, prefs)


def _all_slices(st: GameStructure):
    for player in range(3):
        for strategy in range(st.strategy_counts[player]):
            yield player, strategy, slice_structure(st, player, strategy)


def _determinacy_claims(st: GameStructure) -> tuple[Claim, Claim]:
    def slices(rng, samples):
        bad = [(p, s) for p, s, sliced in _all_slices(st)
               if not is_determined(sliced)]
        total = sum(st.strategy_counts)
        return ClaimReport("slices-determined", not bad, True,
                           f"{total - len(bad)}/{total} slices determined"
                           + (f"; failing: {bad}" if bad else ""))

    def mergers(rng, samples):
        bad = [pair for pair in ((0, 1), (0, 2), (1, 2))
               if not is_determined(merge_players(st, pair))]
        return ClaimReport("mergers-determined", not bad, True,
                           f"{3 - len(bad)}/3 mergers determined"
                           + (f"; failing: {bad}" if bad else ""))

    return (
        Claim("slices-determined",
              "fixing any single player's strategy leaves a determined "
              "two-player structure", slices),
        Claim("mergers-determined",
              "fusing any two players leaves a determined two-player "
              "structure", mergers),
    )


def _prop_5_5_claims(st: GameStructure) -> tuple[Claim, ...]:
    game = unit_vector_game(st)

    def no_ne(rng, samples):
        nes = find_all_ne(game)
        return ClaimReport("unit-vector-no-ne", not nes, True,
                           f"{len(nes)} equilibria found")

    return (
        Claim("unit-vector-no-ne",
              "the unit-payoff instantiation has no equilibrium", no_ne),
    ) + _determinacy_claims(st)


# ---------------------------------------------------------------------------
# The 4x7x7 structure: determined slices/mergers, equilibria only for
# short-chain preferences.

def prop_5_6_structure() -> GameStructure:
    t = np.full((4, 7, 7), -1, dtype=np.int64)
    tall_bc = {(5, 1): X, (6, 3): X, (7, 2): X,
               (5, 2): Y, (6, 1): Y, (7, 3): Y,
               (5, 3): Z, (6, 2): Z, (7, 1): Z}
    for (b, c), o in tall_bc.items():
        t[:, b - 1, c - 1] = o
    thin_ab = {(1, 1): X, (2, 2): X, (1, 3): X, (2, 4): X,
               (1, 2): Y, (2, 1): Y,
               (1, 4): Z, (2, 3): Z}
    for (a, b), o in thin_ab.items():
        t[a - 1, b - 1, :] = o
    thin_ac = {(3, 5): X, (4, 4): X,
               (3, 7): Y, (4, 6): Y,
               (3, 4): Z, (4, 5): Z, (3, 6): Z, (4, 7): Z}
    for (a, c), o in thin_ac.items():
        t[a - 1, :, c - 1] = o
    short_ab = {(3, 1): X, (4, 2): X, (3, 3): X, (4, 4): X,
                (3, 2): Y, (4, 1): Y,
                (3, 4): Z, (4, 3): Z}
    for (a, b), o in short_ab.items():
        t[a - 1, b - 1, 0:3] = o
    short_ac = {(1, 5): X, (2, 4): X,
                (1, 7): Y, (2, 6): Y,
                (1, 4): Z, (2, 5): Z, (1, 6): Z, (2, 7): Z}
    for (a, c), o in short_ac.items():
        t[a - 1, 4:7, c - 1] = o
    assert (t >= 0).all()
    return GameStructure((4, 7, 7), XYZ, t)


PROP_5_6_STATEMENT_PREFS = PreferenceProfile((
    Preference.from_ranking([Z, Y, X], XYZ.labels),
    Preference.from_ranking([X, Z, Y], XYZ.labels),
    Preference.from_ranking([Y, X, Z], XYZ.labels),
))

PROP_5_6_PROOF_PREFS = PreferenceProfile((
    Preference.from_ranking([Z, Y, X], XYZ.labels),
    _prefers_only(3, Y, XYZ.labels),
    _prefers_only(3, Z, XYZ.labels),
))

# six equilibria indexed by the players' distinct preferred outcomes
PROP_5_6_NE_TABLE: tuple[tuple[tuple[int, int, int], tuple[int, int, int]], ...] = (
    ((Z, X, Y), (1, 1, 1)),
    ((Z, Y, X), (1, 2, 1)),
    ((Y, X, Z), (1, 3, 1)),
    ((Y, Z, X), (1, 4, 1)),
    ((X, Y, Z), (4, 7, 7)),
    ((X, Z, Y), (4, 7, 6)),
)


def _prop_5_6_claims(st: GameStructure) -> tuple[Claim, ...]:
    def no_ne_statement(rng, samples):
        nes = find_all_ne(NormalFormGame(st, PROP_5_6_STATEMENT_PREFS))
        return ClaimReport("statement-prefs-no-ne", not nes, True,
                           f"{len(nes)} equilibria found")

    def no_ne_proof(rng, samples):
        nes = find_all_ne(NormalFormGame(st, PROP_5_6_PROOF_PREFS))
        return ClaimReport("proof-prefs-no-ne", not nes, True,
                           f"{len(nes)} equilibria found")

    def ne_table(rng, samples):
        ok = 0
        details = []
        for favourites, profile in PROP_5_6_NE_TABLE:
            prefs = PreferenceProfile(tuple(
                _prefers_only(3, best, XYZ.labels) for best in favourites))
            indexed = tuple(s - 1 for s in profile)
            good = is_nash_equilibrium(NormalFormGame(st, prefs), indexed)
            ok += good
            if not good:
                details.append(profile)
        return ClaimReport("ne-table", ok == len(PROP_5_6_NE_TABLE), True,
                           f"{ok}/{len(PROP_5_6_NE_TABLE)} listed profiles "
                           f"are equilibria"
                           + (f"; failing: {details}" if details else ""))

    return (
        Claim("statement-prefs-no-ne",
              "no equilibrium under the three stated linear preferences",
              no_ne_statement),
        Claim("proof-prefs-no-ne",
              "no equilibrium under the single-favourite variant for "
              "players 2 and 3", no_ne_proof),
        Claim("ne-table",
              "each listed profile is an equilibrium when the players "
              "favour the corresponding distinct outcomes", ne_table),
    ) + _determinacy_claims(st)


# ---------------------------------------------------------------------------
# Registry.

_DESCRIPTIONS = {
    "remark_5_3": "2x2x2 three-player game with rotating preferences: "
                  "no equilibrium, yet every win-bit relabelling has one",
    "prop_5_4": "n-strategy ladder game: linear preferences give no "
                "equilibrium, short-chain preferences always do",
    "prop_5_5": "6x6x6 structure with all slices and mergers determined "
                "but no equilibrium under unit payoffs",
    "prop_5_6": "4x7x7 structure with determined slices and mergers, "
                "equilibria exactly for short-chain preferences",
    "prop_5_1": "statement only, not executable: infinite-strategy "
                "two-player game without equilibrium",
    "prop_5_2": "statement only, not executable: infinite-strategy "
                "determinacy counterexample",
}


def list_entries() -> list[tuple[str, str]]:
    return sorted(_DESCRIPTIONS.items())


def build(name: str, n: Optional[int] = None) -> CorpusEntry:
    if name not in _DESCRIPTIONS:
        raise UnknownNameError(f"unknown corpus entry {name!r}")
    desc = _DESCRIPTIONS[name]
    if name in ("prop_5_1", "prop_5_2"):
        return CorpusEntry(name, desc, False, None, None, ())
    if name == "remark_5_3":
        game = remark_5_3_game()
        return CorpusEntry(name, desc, True, game.structure, game,
                           _remark_5_3_claims(game))
    if name == "prop_5_4":
        size = 4 if n is None else n
        game = prop_5_4_game(size)
        return CorpusEntry(name, desc, True, game.structure, game,
                           _prop_5_4_claims(size, game))
    if name == "prop_5_5":
        st = prop_5_5_structure()
        return CorpusEntry(name, desc, True, st, unit_vector_game(st),
                           _prop_5_5_claims(st))
    st = prop_5_6_structure()
    return CorpusEntry(name, desc, True, st,
                       NormalFormGame(st, PROP_5_6_STATEMENT_PREFS),
                       _prop_5_6_claims(st))


def verify(entry: CorpusEntry, seed: int = 0,
           samples: int = 1000) -> list[ClaimReport]:
    """Run every claim; sampled checks draw from a generator seeded per claim."""
    reports = []
    for i, claim in enumerate(entry.claims):
        rng = random.Random(f"{seed}:{entry.name}:{i}")
        reports.append(claim.check(rng, samples))
    return reports
