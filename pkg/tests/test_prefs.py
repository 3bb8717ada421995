"""Preference relations, heights, linear extensions, and the power-set lift."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

import eqtransfer as et
from conftest import random_acyclic_preference


def subsets(n):
    for r in range(n + 1):
        yield from itertools.combinations(range(n), r)


class TestBasics:
    def test_outcome_set_validation(self):
        with pytest.raises(ValueError):
            et.OutcomeSet(0)
        with pytest.raises(ValueError):
            et.OutcomeSet(2, ("a",))
        with pytest.raises(ValueError):
            et.OutcomeSet(2, ("a", "a"))
        assert et.OutcomeSet(2).label(1) == "1"
        assert et.OutcomeSet(2, ("x", "y")).label(1) == "y"

    def test_preference_range_check(self):
        with pytest.raises(ValueError):
            et.Preference.from_pairs(2, [(0, 2)])

    def test_from_ranking(self):
        p = et.Preference.from_ranking([2, 0, 1])
        assert p.less(2, 0) and p.less(2, 1) and p.less(0, 1)
        assert not p.less(1, 0)
        assert et.is_strict_linear(p)

    def test_inverse_involution(self):
        p = et.Preference.from_pairs(3, [(0, 1), (1, 2)])
        assert p.inverse().inverse() == p

    def test_profile_requires_shared_outcomes(self):
        a = et.Preference.from_pairs(2, [])
        b = et.Preference.from_pairs(3, [])
        with pytest.raises(ValueError):
            et.PreferenceProfile((a, b))


class TestAcyclicityHeightRank:
    def test_acyclic_cases(self):
        assert et.is_acyclic(et.Preference.from_pairs(3, [(0, 1), (1, 2)]))
        assert not et.is_acyclic(et.Preference.from_pairs(2, [(0, 1), (1, 0)]))
        assert not et.is_acyclic(et.Preference.from_pairs(1, [(0, 0)]))

    def test_height_antichain_is_one(self):
        assert et.height(et.Preference.from_pairs(3, [])) == 1

    def test_height_chain_counts_outcomes(self):
        p = et.Preference.from_pairs(3, [(0, 1), (1, 2)])
        assert et.height(p) == 3

    def test_height_cyclic_is_none(self):
        assert et.height(et.Preference.from_pairs(2, [(0, 1), (1, 0)])) is None

    def test_rank_frozen_example(self):
        # both 0 and 1 sit below 2 and are mutually incomparable
        r = et.rank(et.Preference.from_pairs(3, [(0, 2), (1, 2)]))
        assert r.ranks == (0, 0, 1)
        assert r(2) == 1

    def test_rank_rejects_cycle(self):
        with pytest.raises(et.CyclicPreferenceError):
            et.rank(et.Preference.from_pairs(2, [(0, 1), (1, 0)]))

    def test_rank_monotone_random(self, rng):
        for _ in range(50):
            p = random_acyclic_preference(rng, rng.randint(1, 7))
            r = et.rank(p)
            for x, y in p.pairs:
                assert r(x) < r(y)


class TestLinearExtension:
    def test_frozen_example(self):
        # 1 and 2 are both ready at the start; the lower index goes first
        assert et.linear_extension(et.Preference.from_pairs(3, [(2, 0)])) \
            == [1, 2, 0]

    def test_rejects_cycle(self):
        with pytest.raises(et.CyclicPreferenceError):
            et.linear_extension(et.Preference.from_pairs(2, [(0, 1), (1, 0)]))

    def test_respects_relation_random(self, rng):
        for _ in range(50):
            p = random_acyclic_preference(rng, rng.randint(1, 7))
            order = et.linear_extension(p)
            pos = {o: i for i, o in enumerate(order)}
            assert sorted(order) == list(range(p.outcomes.size))
            for x, y in p.pairs:
                assert pos[x] < pos[y]

    @given(hst.permutations(list(range(6))))
    def test_recovers_linear_orders(self, ranking):
        p = et.Preference.from_ranking(ranking)
        assert et.linear_extension(p) == list(ranking)


class TestStrictLinear:
    def test_partial_is_not_linear(self):
        assert not et.is_strict_linear(et.Preference.from_pairs(3, [(0, 1)]))

    def test_cyclic_is_not_linear(self):
        assert not et.is_strict_linear(
            et.Preference.from_pairs(2, [(0, 1), (1, 0)]))


class TestLift:
    def test_worked_example_complement_words(self):
        # outcomes o1 < ... < o5 as indices 0..4
        linear = [0, 1, 2, 3, 4]
        a = {1, 2, 3, 4}
        b = {1, 3}
        word = lambda s: "".join("0" if o in s else "1" for o in linear)
        assert word(a) == "10000" and word(b) == "10101"
        assert et.lift_less(linear, a, b)
        assert not et.lift_less(linear, b, a)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_complement_lex_exhaustive(self, n):
        linear = list(range(n))
        for a in subsets(n):
            for b in subsets(n):
                lex = tuple(0 if o in a else 1 for o in linear) \
                    < tuple(0 if o in b else 1 for o in linear)
                assert et.lift_less(linear, a, b) == lex

    @pytest.mark.parametrize("n", [3, 4])
    def test_strict_total_order_exhaustive(self, n):
        linear = list(range(n))
        subs = list(subsets(n))
        for a in subs:
            assert not et.lift_less(linear, a, a)
            for b in subs:
                if set(a) != set(b):
                    assert et.lift_less(linear, a, b) \
                        != et.lift_less(linear, b, a)
                for c in subs:
                    if et.lift_less(linear, a, b) and et.lift_less(linear, b, c):
                        assert et.lift_less(linear, a, c)

    def test_existential_form_agrees_on_linear_input(self, rng):
        for _ in range(30):
            n = rng.randint(1, 5)
            ranking = list(range(n))
            rng.shuffle(ranking)
            p = et.Preference.from_ranking(ranking)
            subs = list(subsets(n))
            for _ in range(40):
                a, b = rng.choice(subs), rng.choice(subs)
                assert et.lift_less(ranking, a, b) \
                    == et.lift_less_existential(p, a, b)

    def test_existential_form_on_partial_input(self):
        p = et.Preference.from_pairs(3, [(0, 2)])
        assert et.lift_less_existential(p, {0}, {2})
        assert not et.lift_less_existential(p, {0}, {1})


class TestUpwardCone:
    def test_cone_contains_seeds_and_successors(self):
        p = et.Preference.from_pairs(4, [(0, 1), (1, 2)])
        assert et.upward_cone(p, {0}) == {0, 1, 2}
        assert et.upward_cone(p, {3}) == {3}

    @settings(max_examples=50)
    @given(hst.data())
    def test_cone_is_closed(self, data):
        n = data.draw(hst.integers(1, 6))
        pairs = data.draw(hst.lists(
            hst.tuples(hst.integers(0, n - 1), hst.integers(0, n - 1)),
            max_size=12))
        p = et.Preference.from_pairs(n, pairs)
        seeds = data.draw(hst.sets(hst.integers(0, n - 1), max_size=n))
        cone = et.upward_cone(p, seeds)
        assert seeds <= cone
        for x in cone:
            for y in p.successors(x):
                assert y in cone
