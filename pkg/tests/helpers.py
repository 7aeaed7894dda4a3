"""Shared test utilities: random arena generation and independent oracles."""

import itertools

from tgames import GameGraph, make_game


def random_game(rng, n1, n2, alphabet1, alphabet2, objective):
    """Total bipartite arena with uniformly random edges and colors."""
    colors = (1, 2) if objective != "parity" else (0, 1, 2, 3)
    vertices = [(f"u{i}", 1, rng.choice(colors)) for i in range(n1)]
    vertices += [(f"w{i}", 2, rng.choice(colors)) for i in range(n2)]
    edges = []
    for i in range(n1):
        for a in alphabet1:
            edges.append((f"u{i}", a, f"w{rng.randrange(n2)}"))
    for j in range(n2):
        for b in alphabet2:
            edges.append((f"w{j}", b, f"u{rng.randrange(n1)}"))
    return make_game(objective, alphabet1, alphabet2, vertices, edges, "u0")


def random_one_player_game(rng, n1, n2, alphabet2, objective):
    """Player 1 has a singleton alphabet, so it never actually chooses."""
    return random_game(rng, n1, n2, ("only",), alphabet2, objective)


def play_winner(g: GameGraph, start: int, strat: dict) -> int:
    """Winner of the unique play under a full positional strategy pair."""
    seq = [start]
    seen = {start: 0}
    cur = start
    while True:
        cur = g.edges[(cur, strat[cur])]
        if cur in seen:
            cut = seen[cur]
            break
        seen[cur] = len(seq)
        seq.append(cur)
    loop_colors = [g.vertices[v].color for v in seq[cut:]]
    if g.objective in ("parity", "buchi"):
        return 2 if max(loop_colors) % 2 == 0 else 1
    head_colors = [g.vertices[v].color for v in seq[:cut]]
    return 2 if 2 in head_colors + loop_colors else 1


def brute_force_region2(g: GameGraph) -> set:
    """Player-2 winning set by exhausting positional strategy pairs.

    Positional strategies suffice for these objectives, so a vertex is
    winning for player 2 iff some positional choice of player-2 moves beats
    every positional choice of player-1 moves.
    """
    p1 = [v.id for v in g.vertices if v.owner == 1]
    p2 = [v.id for v in g.vertices if v.owner == 2]
    s1_all = [dict(zip(p1, combo)) for combo in itertools.product(g.alphabet1, repeat=len(p1))]
    s2_all = [dict(zip(p2, combo)) for combo in itertools.product(g.alphabet2, repeat=len(p2))]
    region = set()
    for v in g.vertices:
        for s2 in s2_all:
            if all(play_winner(g, v.id, {**s1, **s2}) == 2 for s1 in s1_all):
                region.add(v.id)
                break
    return region


class ScriptController:
    """Plays a fixed action script, then repeats its last action."""

    def __init__(self, actions):
        self.actions = list(actions)
        self.at = 0

    def snapshot(self):
        return min(self.at, len(self.actions))

    def next_action(self, observed: str) -> str:
        a = self.actions[min(self.at, len(self.actions) - 1)]
        self.at += 1
        return a
