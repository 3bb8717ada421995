"""The oracle-driven transfer and its companion reductions."""

import random

import pytest

import eqtransfer as et
from conftest import (random_acyclic_preference, random_determined_structure,
                      random_structure)


def profile_for(st, rng):
    return et.PreferenceProfile(tuple(
        random_acyclic_preference(rng, st.outcomes.size)
        for _ in range(st.players)))


class TestMaxEnforceableWord:
    def test_exact_winner_call_count(self, rng):
        for _ in range(30):
            st = random_determined_structure(rng)
            counting = et.CountingOracle(et.StructureOracle(st))
            n = st.outcomes.size
            word = et.max_enforceable_word(counting, n, list(range(n)))
            assert counting.counter.winner_calls == n
            assert counting.counter.strategy_calls == 0
            assert et.can_enforce(st, 1, word)

    def test_result_is_lift_greatest(self, rng):
        for _ in range(30):
            st = random_determined_structure(rng, max_outcomes=4)
            n = st.outcomes.size
            linear = list(range(n))
            word = et.max_enforceable_word(
                et.StructureOracle(st), n, linear)
            for label in et.all_labels(n):
                if et.can_enforce(st, 1, label):
                    assert not et.lift_less(linear, word.indices(),
                                            label.indices())


class TestTransferEquilibrium:
    def test_random_determined_games(self, rng):
        for _ in range(60):
            st = random_determined_structure(rng)
            game = et.NormalFormGame(st, profile_for(st, rng))
            profile, counter = et.transfer_equilibrium(game)
            assert et.is_nash_equilibrium(game, profile)
            assert counter.winner_calls <= st.outcomes.size
            assert counter.strategy_calls <= 2

    def test_matching_pennies_not_determined(self):
        st = et.GameStructure((2, 2), et.OutcomeSet(2), [[0, 1], [1, 0]])
        prefs = et.PreferenceProfile((
            et.Preference.from_pairs(2, [(1, 0)]),
            et.Preference.from_pairs(2, [(0, 1)]),
        ))
        with pytest.raises(et.NotDeterminedError):
            et.transfer_equilibrium(et.NormalFormGame(st, prefs))

    def test_cyclic_preferences_rejected(self):
        st = et.GameStructure((2, 2), et.OutcomeSet(2), [[0, 1], [1, 0]])
        cyc = et.Preference.from_pairs(2, [(0, 1), (1, 0)])
        prefs = et.PreferenceProfile((cyc, cyc))
        with pytest.raises(et.CyclicPreferenceError):
            et.transfer_equilibrium(et.NormalFormGame(st, prefs))

    def test_three_players_rejected(self):
        game = et.remark_5_3_game()
        with pytest.raises(ValueError):
            et.transfer_equilibrium(game)


class TestEnforceableFiniteCone:
    def test_cone_is_enforceable_and_upward_closed(self, rng):
        for _ in range(30):
            st = random_determined_structure(rng)
            game = et.NormalFormGame(st, profile_for(st, rng))
            for player in (1, 2):
                cone = et.enforceable_finite_cone(game, player)
                assert cone is not None
                pref = game.preferences[player - 1]
                assert et.upward_cone(pref, cone) == cone
                word = et.SubsetWord.from_indices(st.outcomes.size, cone)
                assert et.enforcing_strategy(st, player, word) is not None


class TestMinimaxTransfer:
    def inverse_game(self, rng, st):
        ranking = list(range(st.outcomes.size))
        rng.shuffle(ranking)
        p1 = et.Preference.from_ranking(ranking)
        return et.NormalFormGame(st, et.PreferenceProfile((p1, p1.inverse())))

    def test_ne_and_unique_outcome(self, rng):
        for _ in range(60):
            st = random_determined_structure(rng)
            game = self.inverse_game(rng, st)
            profile = et.minimax_transfer(game)
            assert et.is_nash_equilibrium(game, profile)
            value = st.outcome(profile)
            for other in et.find_all_ne(game):
                assert st.outcome(other) == value

    def test_rejects_non_inverse_preferences(self):
        st = et.GameStructure((2, 2), et.OutcomeSet(2), [[0, 1], [1, 0]])
        p = et.Preference.from_ranking([0, 1])
        with pytest.raises(et.NotZeroSumError):
            et.minimax_transfer(
                et.NormalFormGame(st, et.PreferenceProfile((p, p))))

    def test_rejects_partial_order(self):
        st = et.GameStructure((2, 2), et.OutcomeSet(3), [[0, 1], [2, 0]])
        p = et.Preference.from_pairs(3, [(0, 1)])
        with pytest.raises(et.NotZeroSumError):
            et.minimax_transfer(
                et.NormalFormGame(st, et.PreferenceProfile((p, p.inverse()))))


class TestEliminateDominatedOutcomes:
    def eligible_instance(self, rng):
        """A game plus a player-1 strategy whose outcomes all sit strictly
        above some outcome o for player 1."""
        while True:
            st = random_structure(
                rng, (rng.randint(2, 4), rng.randint(2, 4)), rng.randint(2, 5))
            n = st.outcomes.size
            r1, r2 = list(range(n)), list(range(n))
            rng.shuffle(r1)
            rng.shuffle(r2)
            p1 = et.Preference.from_ranking(r1)
            p2 = et.Preference.from_ranking(r2)
            game = et.NormalFormGame(st, et.PreferenceProfile((p1, p2)))
            for e in range(st.strategy_counts[0]):
                reached = {st.outcome((e, j))
                           for j in range(st.strategy_counts[1])}
                below = [o for o in range(n)
                         if all(p1.less(o, x) for x in reached)]
                if below:
                    return game, e, rng.choice(below)

    def test_reduced_ne_are_original_ne(self, rng):
        for _ in range(100):
            game, e, o = self.eligible_instance(rng)
            reduced = et.eliminate_dominated_outcomes(game, e, o)
            assert reduced.structure.outcomes.size <= game.structure.outcomes.size
            for profile in et.find_all_ne(reduced):
                assert et.is_nash_equilibrium(game, profile)

    def test_hypothesis_violation_detected(self):
        st = et.GameStructure((2, 2), et.OutcomeSet(3), [[0, 1], [2, 0]])
        p = et.Preference.from_ranking([0, 1, 2])
        game = et.NormalFormGame(st, et.PreferenceProfile((p, p)))
        # strategy 0 reaches outcomes {0, 1}, which are not all above 1
        with pytest.raises(et.HypothesisViolatedError):
            et.eliminate_dominated_outcomes(game, 0, 1)


class TestFiniteHeightReduce:
    def test_reduced_ne_are_original_ne(self, rng):
        for _ in range(100):
            st = random_structure(
                rng, (rng.randint(1, 4), rng.randint(1, 4)), rng.randint(1, 5))
            prefs = et.PreferenceProfile((
                random_acyclic_preference(rng, st.outcomes.size),
                random_acyclic_preference(rng, st.outcomes.size)))
            game = et.NormalFormGame(st, prefs)
            reduced = et.finite_height_reduce(game)
            assert reduced.structure.strategy_counts == st.strategy_counts
            for profile in et.find_all_ne(reduced):
                assert et.is_nash_equilibrium(game, profile)

    def test_rejects_cyclic(self):
        st = et.GameStructure((2, 2), et.OutcomeSet(2), [[0, 1], [1, 0]])
        cyc = et.Preference.from_pairs(2, [(0, 1), (1, 0)])
        game = et.NormalFormGame(st, et.PreferenceProfile((cyc, cyc)))
        with pytest.raises(et.UnboundedHeightError):
            et.finite_height_reduce(game)
