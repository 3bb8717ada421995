"""Versioned JSON interchange for games, trees, and arenas.

Every document carries ``"format": 1``.  Loaders raise SchemaError with a
human-readable reason; syntactically broken JSON keeps the parser's
line/column information.
"""

from __future__ import annotations

import json
from typing import Any, Optional, Union

from .errors import SchemaError
from .extensive import GameTree, Leaf, Node
from .graph_games import Arena, MultiOutcomeGraphGame
from .normal_form import GameStructure, NormalFormGame
from .prefs import OutcomeSet, Preference, PreferenceProfile

FORMAT = 1

Loadable = Union[GameStructure, NormalFormGame, GameTree,
                 tuple[GameTree, PreferenceProfile],
                 Arena, MultiOutcomeGraphGame]


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SchemaError(message)


def _outcome_set(obj: Any) -> OutcomeSet:
    if isinstance(obj, int):
        return OutcomeSet(obj)
    if isinstance(obj, list):
        _require(all(isinstance(s, str) for s in obj),
                 "outcome labels must be strings")
        return OutcomeSet(len(obj), tuple(obj))
    raise SchemaError(f"outcomes must be a count or a label list, got {obj!r}")


def _outcomes_obj(outs: OutcomeSet) -> Any:
    return list(outs.labels) if outs.labels is not None else outs.size


def preference_from_obj(obj: Any,
                        outcomes: Optional[OutcomeSet] = None) -> Preference:
    _require(isinstance(obj, dict), "preference must be an object")
    outs = outcomes if outcomes is not None else _outcome_set(obj.get("outcomes"))
    pairs = obj.get("pairs")
    _require(isinstance(pairs, list), "preference needs a pairs list")
    for pair in pairs:
        _require(isinstance(pair, list) and len(pair) == 2
                 and all(isinstance(x, int) for x in pair),
                 f"preference pair must be [x, y], got {pair!r}")
    try:
        return Preference(outs, frozenset((x, y) for x, y in pairs))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def preference_to_obj(p: Preference) -> dict:
    return {"outcomes": _outcomes_obj(p.outcomes),
            "pairs": sorted([x, y] for x, y in p.pairs)}


def _profile_from_obj(obj: Any, outcomes: OutcomeSet) -> PreferenceProfile:
    _require(isinstance(obj, list) and obj, "preferences must be a list")
    return PreferenceProfile(tuple(
        preference_from_obj(frag, outcomes) for frag in obj))


def game_from_obj(obj: dict) -> Union[GameStructure, NormalFormGame]:
    strategies = obj.get("strategies")
    _require(isinstance(strategies, list) and strategies
             and all(isinstance(c, int) for c in strategies),
             "strategies must be a non-empty list of counts")
    players = obj.get("players", len(strategies))
    _require(players == len(strategies),
             "players must match the strategy-count list length")
    outs = _outcome_set(obj.get("outcomes"))
    v = obj.get("v")
    _require(isinstance(v, list) and all(isinstance(x, int) for x in v),
             "v must be a flat list of outcome indices")
    expected = 1
    for c in strategies:
        expected *= c
    _require(len(v) == expected,
             f"v has {len(v)} entries, expected {expected}")
    try:
        st = GameStructure(tuple(strategies), outs, v)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    if "preferences" not in obj:
        return st
    return NormalFormGame(st, _profile_from_obj(obj["preferences"], outs))


def game_to_obj(g: Union[GameStructure, NormalFormGame]) -> dict:
    st = g.structure if isinstance(g, NormalFormGame) else g
    doc = {
        "format": FORMAT,
        "players": st.players,
        "strategies": list(st.strategy_counts),
        "outcomes": _outcomes_obj(st.outcomes),
        "v": [int(x) for x in st.table.reshape(-1)],
    }
    if isinstance(g, NormalFormGame):
        doc["preferences"] = [{"pairs": sorted([x, y] for x, y in p.pairs)}
                              for p in g.preferences.prefs]
    return doc


_OWNER_NAMES = {"a": 1, "b": 2}
_OWNER_LABELS = {1: "a", 2: "b"}


def _tree_node_from_obj(obj: Any) -> Union[Node, Leaf]:
    _require(isinstance(obj, dict), "tree node must be an object")
    if "leaf" in obj:
        _require(isinstance(obj["leaf"], int), "leaf must hold an outcome index")
        return Leaf(obj["leaf"])
    owner = obj.get("owner")
    _require(owner in _OWNER_NAMES, f"node owner must be 'a' or 'b', got {owner!r}")
    children = obj.get("children")
    _require(isinstance(children, list) and children,
             "internal node needs a non-empty children list")
    return Node(_OWNER_NAMES[owner],
                tuple(_tree_node_from_obj(c) for c in children))


def tree_from_obj(obj: dict) -> tuple[GameTree, Optional[PreferenceProfile]]:
    outs = _outcome_set(obj.get("outcomes"))
    try:
        tree = GameTree(_tree_node_from_obj(obj.get("tree")), outs)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    prefs = None
    if "preferences" in obj:
        prefs = _profile_from_obj(obj["preferences"], outs)
        _require(prefs.players == 2, "tree games take exactly two preferences")
    return tree, prefs


def _tree_node_to_obj(t: Union[Node, Leaf]) -> dict:
    if isinstance(t, Leaf):
        return {"leaf": t.outcome}
    return {"owner": _OWNER_LABELS[t.owner],
            "children": [_tree_node_to_obj(c) for c in t.children]}


def tree_to_obj(tree: GameTree,
                prefs: Optional[PreferenceProfile] = None) -> dict:
    doc = {"format": FORMAT,
           "tree": _tree_node_to_obj(tree.root),
           "outcomes": _outcomes_obj(tree.outcomes)}
    if prefs is not None:
        doc["preferences"] = [{"pairs": sorted([x, y] for x, y in p.pairs)}
                              for p in prefs.prefs]
    return doc


def arena_from_obj(obj: dict) -> Union[Arena, MultiOutcomeGraphGame]:
    for key in ("vertices", "owned", "edges", "colors", "start"):
        _require(key in obj, f"arena needs a {key!r} field")
    try:
        arena = Arena(obj["vertices"], obj["owned"],
                      [tuple(e) for e in obj["edges"]], obj["colors"])
    except (ValueError, TypeError) as exc:
        raise SchemaError(str(exc)) from exc
    start = obj["start"]
    _require(isinstance(start, int) and 0 <= start < arena.num_vertices,
             f"start vertex {start!r} out of range")
    if "kind" not in obj:
        return arena
    kind = obj["kind"]
    _require(kind in ("priority", "muller"), f"unknown kind {kind!r}")
    outs = _outcome_set(obj.get("outcomes"))
    prefs = _profile_from_obj(obj.get("preferences"), outs)
    r = obj.get("r")
    _require(isinstance(r, list), "r must be a list of mapping entries")
    priority_map = None
    muller_map = None
    if kind == "priority":
        priority_map = {}
        for entry in r:
            _require(isinstance(entry, list) and len(entry) == 2,
                     f"priority r entry must be [color, outcome], got {entry!r}")
            priority_map[entry[0]] = entry[1]
    else:
        muller_map = {}
        for entry in r:
            _require(isinstance(entry, list) and len(entry) == 2
                     and isinstance(entry[0], list),
                     f"Muller r entry must be [[colors], outcome], got {entry!r}")
            muller_map[frozenset(entry[0])] = entry[1]
    try:
        return MultiOutcomeGraphGame(
            arena=arena, start=start, kind=kind, outcomes=outs,
            preferences=prefs, priority_map=priority_map,
            muller_map=muller_map)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def arena_to_obj(obj: Union[Arena, MultiOutcomeGraphGame],
                 start: int = 0) -> dict:
    if isinstance(obj, Arena):
        arena, game = obj, None
    else:
        arena, game, start = obj.arena, obj, obj.start
    doc = {
        "format": FORMAT,
        "vertices": arena.num_vertices,
        "owned": sorted(arena.owned),
        "edges": [list(e) for e in arena.edges],
        "colors": list(arena.colors),
        "start": start,
    }
    if game is None:
        return doc
    doc["kind"] = game.kind
    doc["outcomes"] = _outcomes_obj(game.outcomes)
    if game.kind == "priority":
        doc["r"] = [[c, o] for c, o in sorted(game.priority_map.items())]
    else:
        doc["r"] = [[sorted(s), o]
                    for s, o in sorted(game.muller_map.items(),
                                       key=lambda kv: sorted(kv[0]))]
    doc["preferences"] = [{"pairs": sorted([x, y] for x, y in p.pairs)}
                          for p in game.preferences.prefs]
    return doc


def from_obj(obj: Any) -> Loadable:
    _require(isinstance(obj, dict), "top-level JSON value must be an object")
    _require(obj.get("format") == FORMAT,
             f"unsupported format {obj.get('format')!r}, expected {FORMAT}")
    if "tree" in obj:
        tree, prefs = tree_from_obj(obj)
        return (tree, prefs) if prefs is not None else tree
    if "vertices" in obj:
        return arena_from_obj(obj)
    if "v" in obj:
        return game_from_obj(obj)
    raise SchemaError("document is neither a game, a tree, nor an arena")


def to_obj(value: Loadable) -> dict:
    if isinstance(value, (GameStructure, NormalFormGame)):
        return game_to_obj(value)
    if isinstance(value, GameTree):
        return tree_to_obj(value)
    if isinstance(value, tuple) and len(value) == 2 \
            and isinstance(value[0], GameTree):
        return tree_to_obj(value[0], value[1])
    if isinstance(value, (Arena, MultiOutcomeGraphGame)):
        return arena_to_obj(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def loads(text: str) -> Loadable:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"malformed JSON: {exc.msg} at line {exc.lineno} "
            f"column {exc.colno}") from exc
    return from_obj(obj)


def load(path: str) -> Loadable:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(value: Loadable) -> str:
    return json.dumps(to_obj(value), indent=2) + "\n"


def dump(value: Loadable, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(value))
