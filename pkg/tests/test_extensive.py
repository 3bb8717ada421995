"""Game trees, backward induction, and transfer over tree oracles."""

import pytest

import eqtransfer as et
from conftest import random_tree
from eqtransfer import jsonio
from conftest import fixture_path


def intro_tree(leaves, n_outcomes, labels=None):
    """The four-leaf tree shape used by the introductory examples."""
    root = et.Node(2, (
        et.Node(1, (
            et.Node(2, (et.Leaf(leaves[0]), et.Leaf(leaves[1]))),
            et.Leaf(leaves[2]),
        )),
        et.Leaf(leaves[3]),
    ))
    return et.GameTree(root, et.OutcomeSet(n_outcomes, labels))


class TestTreeBasics:
    def test_preorder_indexing(self):
        t = intro_tree([0, 1, 2, 1], 3)
        assert len(t.internal_nodes()) == 3
        assert t.owned_nodes(1) == [1]
        assert t.owned_nodes(2) == [0, 2]
        assert t.strategy_count(1) == 2
        assert t.strategy_count(2) == 4
        assert [leaf.outcome for leaf in t.leaves()] == [0, 1, 2, 1]

    def test_leaf_outcome_range_checked(self):
        with pytest.raises(ValueError):
            et.GameTree(et.Leaf(5), et.OutcomeSet(2))

    def test_node_validation(self):
        with pytest.raises(ValueError):
            et.Node(3, (et.Leaf(0),))
        with pytest.raises(ValueError):
            et.Node(1, ())

    def test_strategy_index_roundtrip(self, rng):
        for _ in range(20):
            t = random_tree(rng, 3)
            for player in (1, 2):
                for i in range(t.strategy_count(player)):
                    s = et.strategy_from_index(t, player, i)
                    assert et.strategy_to_index(t, s) == i
                with pytest.raises(ValueError):
                    et.strategy_from_index(t, player, t.strategy_count(player))


class TestNormalFormConversion:
    def test_intro_tree_table(self):
        t = intro_tree([0, 1, 2, 1], 3)
        st = et.to_normal_form(t)
        assert st.strategy_counts == (2, 4)
        # player 2's strategy index: root choice (most significant digit),
        # then the inner b-node's choice; right-right is index 3.
        # With a left: root-left reaches the inner node (X or Y), root-right
        # gives Y.  With a right: root-left gives Z, root-right gives Y.
        assert st.table.tolist() == [[0, 1, 1, 1], [2, 2, 1, 1]]

    def test_play_tree_matches_table(self, rng):
        for _ in range(20):
            t = random_tree(rng, 4)
            st = et.to_normal_form(t)
            for i in range(st.strategy_counts[0]):
                for j in range(st.strategy_counts[1]):
                    s1 = et.strategy_from_index(t, 1, i)
                    s2 = et.strategy_from_index(t, 2, j)
                    assert et.play_tree(t, s1, s2) == st.outcome((i, j))

    def test_cap(self, rng):
        t = random_tree(rng, 3)
        with pytest.raises(et.TooLargeError):
            et.to_normal_form(t, cap=1)


class TestTreeOracle:
    def test_agrees_with_brute_force_on_all_labels(self, rng):
        for _ in range(30):
            t = random_tree(rng, rng.randint(1, 4))
            oracle = et.backward_induction_oracle(t)
            st = oracle.structure
            for label in et.all_labels(t.outcomes.size):
                winner = et.winning_strategy(et.derive_win_lose(st, label))
                assert winner is not None, "tree games are determined"
                assert oracle.winner(label) == winner[0]

    def test_strategy_handles_win_in_normal_form(self, rng):
        for _ in range(20):
            t = random_tree(rng, 3)
            oracle = et.backward_induction_oracle(t)
            st = oracle.structure
            for label in et.all_labels(3):
                s = oracle.strategy(label)
                assert s.restricted
                word = label if s.player == 1 else label.complement()
                enforced = (st.table[s.handle, :] if s.player == 1
                            else st.table[:, s.handle])
                assert all(int(o) in word for o in enforced)


class TestKuhnViaTransfer:
    def test_random_trees_yield_ne(self, rng):
        for _ in range(40):
            n_out = rng.randint(1, 4)
            t = random_tree(rng, n_out)
            ranking = list(range(n_out))
            rng.shuffle(ranking)
            other = list(range(n_out))
            rng.shuffle(other)
            prefs = et.PreferenceProfile((
                et.Preference.from_ranking(ranking),
                et.Preference.from_ranking(other)))
            profile, counter = et.kuhn_via_transfer(t, prefs)
            game = et.NormalFormGame(et.to_normal_form(t), prefs)
            assert et.is_nash_equilibrium(game, profile)
            assert counter.winner_calls <= n_out
            assert counter.strategy_calls <= 2


class TestIntroductionEndToEnd:
    def test_payoff_tree_transfer(self):
        tree, prefs = jsonio.load(fixture_path("intro_payoff_tree.json"))
        profile, counter = et.kuhn_via_transfer(tree, prefs)
        game = et.NormalFormGame(et.to_normal_form(tree), prefs)
        assert et.is_nash_equilibrium(game, profile)
        assert counter.winner_calls <= 3
        assert counter.strategy_calls <= 2

    def test_right_right_equilibrium_found(self):
        # win-lose instantiation: b playing right at both owned nodes
        # (strategy index 3) against a playing left is an equilibrium
        tree, prefs = jsonio.load(fixture_path("intro_winlose_tree.json"))
        game = et.NormalFormGame(et.to_normal_form(tree), prefs)
        assert (0, 3) in et.find_all_ne(game)

    def test_all_eight_instantiations_determined(self):
        tree = jsonio.load(fixture_path("intro_structure.json"))
        st = et.to_normal_form(tree)
        assert et.is_determined(st)
        for label in et.all_labels(3):
            assert et.winning_strategy(et.derive_win_lose(st, label)) \
                is not None
