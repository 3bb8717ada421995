"""Equilibrium transfer: from win-lose determinacy to Nash equilibria.

The package turns any solver for two-player win-lose games (brute force,
backward induction on trees, parity, Muller) into a Nash-equilibrium finder
for multi-outcome games, and ships an executable corpus of three-player
counterexamples delimiting how far the technique extends.
"""

from .errors import (BadIndexError, CyclicPreferenceError, EqTransferError,
                     HypothesisViolatedError, NotDeterminedError,
                     NotZeroSumError, SchemaError, TooLargeError,
                     UnboundedHeightError, UnknownNameError)
from .prefs import (OutcomeSet, Preference, PreferenceProfile, RankFunction,
                    height, is_acyclic, is_strict_linear, lift_less,
                    lift_less_existential, linear_extension, rank, upward_cone)
from .normal_form import (DEFAULT_OUTCOME_CAP, DEFAULT_PROFILE_CAP,
                          GameStructure, NormalFormGame, Profile, SubsetWord,
                          WinLoseGame, all_labels, can_enforce, deviations,
                          derive_win_lose, enforcing_strategy, find_all_ne,
                          is_determined, is_determined_by_enforcement,
                          is_nash_equilibrium, merge_players, slice_structure,
                          winning_strategy)
from .transfer import (CallCounter, CountingOracle, OracleStrategy,
                       StructureOracle, TransferResult, WinLoseOracle,
                       eliminate_dominated_outcomes, enforceable_finite_cone,
                       finite_height_reduce, max_enforceable_word,
                       minimax_transfer, run_transfer, transfer_equilibrium)
from .extensive import (GameTree, Leaf, Node, TreeOracle, TreeStrategy,
                        backward_induction_oracle, kuhn_via_transfer,
                        play_tree, strategy_from_index, strategy_to_index,
                        to_normal_form)
from .graph_games import (Arena, FiniteMemoryStrategy, GraphEquilibrium,
                          MullerOracle, MultiOutcomeGraphGame, Play,
                          PositionalStrategy, PriorityOracle,
                          achievable_deviation_outcomes,
                          all_positional_strategies, as_finite_memory,
                          multi_outcome_ne, muller_memory_bound,
                          muller_winner_of_play, parity_regions,
                          parity_winner_of_play, play_of, solve_muller,
                          solve_parity)
from .corpus import (PROP_5_6_NE_TABLE, PROP_5_6_PROOF_PREFS,
                     PROP_5_6_STATEMENT_PREFS, Claim, ClaimReport,
                     CorpusEntry, bit_instantiation,
                     build, list_entries, prop_5_4_game, prop_5_4_structure,
                     prop_5_5_structure, prop_5_6_structure,
                     remark_5_3_game, remark_5_3_structure, unit_vector_game,
                     verify)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
