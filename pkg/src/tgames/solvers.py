"""Winning-region computation.

`solve_parity` runs the classical recursive (Zielonka) algorithm and returns
positional strategies together with the two regions.  Büchi games are parity
games over colors {1, 2}; reachability games are first rewritten so that
every color-2 vertex drains into an absorbing even-colored pair, which
preserves the winner from every original vertex.

`solve_one_player` handles arenas in which player 1 has exactly one outgoing
edge per vertex (a deterministic environment), in polynomial time, and
produces a witness lasso for every vertex player 2 wins from.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass

from .graphs import (
    BUCHI,
    GameError,
    GameGraph,
    Lasso,
    PARITY,
    P2_PARADISE,
    REACHABILITY,
    make_game,
)


@dataclass
class ParitySolution:
    region1: frozenset[int]
    region2: frozenset[int]
    strategy1: dict[int, str]
    strategy2: dict[int, str]

    def winner(self, vid: int) -> int:
        return 2 if vid in self.region2 else 1


def _predecessors(g: GameGraph) -> dict[int, list[tuple[int, str]]]:
    preds: dict[int, list[tuple[int, str]]] = {v.id: [] for v in g.vertices}
    for v in g.vertices:
        for a, tgt in g.successors(v.id):
            preds[tgt].append((v.id, a))
    return preds


def _attractor(
    g: GameGraph,
    preds,
    region: set[int],
    targets: set[int],
    player: int,
) -> tuple[set[int], dict[int, str]]:
    """Player's attractor to `targets` inside `region`, with a pull strategy
    for the player's vertices added along the way."""
    attr = set(targets)
    strat: dict[int, str] = {}
    # remaining region-internal out-degree for the opponent's vertices
    degree: dict[int, int] = {}
    for vid in region:
        if g.vertices[vid].owner != player:
            degree[vid] = sum(1 for _a, t in g.successors(vid) if t in region)
    queue = deque(sorted(targets))
    while queue:
        w = queue.popleft()
        for vid, a in preds[w]:
            if vid not in region or vid in attr:
                continue
            if g.vertices[vid].owner == player:
                attr.add(vid)
                strat[vid] = a
                queue.append(vid)
            else:
                degree[vid] -= 1
                if degree[vid] == 0:
                    attr.add(vid)
                    queue.append(vid)
    return attr, strat


def _first_action_within(g: GameGraph, vid: int, region: set[int]) -> str:
    for a, tgt in g.successors(vid):
        if tgt in region:
            return a
    raise GameError(f"vertex {g.vertices[vid].name} has no successor in subgame")


def _zielonka(g: GameGraph, preds, region: set[int]):
    if not region:
        return set(), set(), {}, {}
    d = max(g.vertices[vid].color for vid in region)
    player = 2 if d % 2 == 0 else 1
    opponent = 3 - player
    targets = {vid for vid in region if g.vertices[vid].color == d}
    attr, pull = _attractor(g, preds, region, targets, player)
    w1, w2, s1, s2 = _zielonka(g, preds, region - attr)
    win_sub = w2 if player == 2 else w1
    lose_sub = w1 if player == 2 else w2
    strat_sub = (s2 if player == 2 else s1)
    if not lose_sub:
        strat = dict(strat_sub)
        strat.update(pull)
        for vid in targets:
            if g.vertices[vid].owner == player and vid not in strat:
                strat[vid] = _first_action_within(g, vid, region)
        if player == 2:
            return set(), set(region), {}, strat
        return set(region), set(), strat, {}
    opp_strat_sub = s1 if player == 2 else s2
    attr_b, pull_b = _attractor(g, preds, region, lose_sub, opponent)
    w1b, w2b, s1b, s2b = _zielonka(g, preds, region - attr_b)
    opp_strat = dict(s1b if player == 2 else s2b)
    opp_strat.update(pull_b)
    opp_strat.update(opp_strat_sub)
    opp_region = (w1b if player == 2 else w2b) | attr_b
    my_region = w2b if player == 2 else w1b
    my_strat = s2b if player == 2 else s1b
    if player == 2:
        return opp_region, my_region, opp_strat, my_strat
    return my_region, opp_region, my_strat, opp_strat


_ENCODED_SUFFIX = "~reach"


def _reach_to_parity(g: GameGraph) -> GameGraph:
    """Make color-2 vertices absorbing into a fresh even pair."""
    pa, pb = P2_PARADISE[0] + _ENCODED_SUFFIX, P2_PARADISE[1] + _ENCODED_SUFFIX
    names = [(v.name, v.owner, v.color) for v in g.vertices]
    names += [(pa, 1, 2), (pb, 2, 2)]
    edges = []
    for v in g.vertices:
        sink = pb if v.owner == 1 else pa
        for a in g.acting_alphabet(v.id):
            if v.color == 2:
                edges.append((v.name, a, sink))
            else:
                tgt = g.edges.get((v.id, a))
                if tgt is None:
                    raise GameError("solve_parity requires a total arena")
                edges.append((v.name, a, g.vertices[tgt].name))
    for a in g.alphabet1:
        edges.append((pa, a, pb))
    for b in g.alphabet2:
        edges.append((pb, b, pa))
    return make_game(
        PARITY, g.alphabet1, g.alphabet2, names, edges, g.vertices[g.initial].name
    )


def solve_parity(g: GameGraph) -> ParitySolution:
    """Regions and positional strategies for both players on a total arena."""
    if not g.is_total():
        raise GameError("solve_parity requires a total arena")
    work = g if g.objective in (PARITY, BUCHI) else _reach_to_parity(g)
    preds = _predecessors(work)
    limit = sys.getrecursionlimit()
    need = 4 * work.n + 100
    if need > limit:
        sys.setrecursionlimit(need)
    try:
        w1, w2, s1, s2 = _zielonka(work, preds, {v.id for v in work.vertices})
    finally:
        if need > limit:
            sys.setrecursionlimit(limit)
    if work is not g:
        # restrict to the original vertex set; color-2 vertices are won by
        # player 2 by definition, and any action is as good as any other there
        keep = range(g.n)
        w1 = {vid for vid in w1 if vid < g.n}
        w2 = {vid for vid in w2 if vid < g.n}
        s1 = {vid: a for vid, a in s1.items() if vid < g.n}
        s2 = {vid: a for vid, a in s2.items() if vid < g.n}
        for vid in w2:
            v = g.vertices[vid]
            if v.owner == 2 and vid not in s2:
                s2[vid] = g.acting_alphabet(vid)[0]
        del keep
    return ParitySolution(frozenset(w1), frozenset(w2), s1, s2)


def _tarjan_sccs(vertices: set[int], succ) -> list[list[int]]:
    """Iterative Tarjan over the vertex subset; succ(v) yields targets."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in sorted(vertices):
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in vertices:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


def _bfs_path(g: GameGraph, src: int, goals: set[int], allowed=None):
    """Shortest (vertex, action) path from src to any goal; ties broken by
    alphabet order.  Returns (steps, goal) or None."""
    if src in goals:
        return [], src
    parent: dict[int, tuple[int, str]] = {src: (-1, "")}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for a, t in g.successors(v):
            if allowed is not None and t not in allowed:
                continue
            if t in parent:
                continue
            parent[t] = (v, a)
            if t in goals:
                steps = []
                cur = t
                while cur != src:
                    pv, pa = parent[cur]
                    steps.append((pv, pa))
                    cur = pv
                steps.reverse()
                return steps, t
            queue.append(t)
    return None


def _shortest_cycle(g: GameGraph, u: int, allowed: set[int]):
    """Shortest nonempty (vertex, action) cycle through u inside `allowed`."""
    best = None
    for a, t in g.successors(u):
        if t not in allowed:
            continue
        if t == u:
            return [(u, a)]
        found = _bfs_path(g, t, {u}, allowed)
        if found is not None:
            steps, _ = found
            cand = [(u, a)] + steps
            if best is None or len(cand) < len(best):
                best = cand
    return best


def solve_one_player(g: GameGraph) -> tuple[frozenset[int], dict[int, Lasso]]:
    """Player-2 winning set plus witness lassos when player 1 never chooses.

    Requires every owner-1 vertex to have exactly one outgoing edge; the
    arena degenerates to a graph in which only player 2 branches, so winning
    is reachability of a suitable vertex/cycle.
    """
    for v in g.vertices:
        if v.owner == 1:
            deg = sum(1 for _ in g.successors(v.id))
            if deg != 1:
                raise GameError(
                    f"owner-1 vertex {v.name!r} has out-degree {deg}, expected 1"
                )

    all_ids = {v.id for v in g.vertices}
    good: dict[int, set[int]] = {}  # anchor vertex -> allowed set for its cycle
    if g.objective == REACHABILITY:
        for v in g.vertices:
            if v.color == 2:
                good[v.id] = all_ids
    else:
        colors = sorted({v.color for v in g.vertices if v.color % 2 == 0})
        for c in colors:
            allowed = {v.id for v in g.vertices if v.color <= c}
            sccs = _tarjan_sccs(allowed, lambda v: (t for _a, t in g.successors(v)))
            for comp in sccs:
                comp_set = set(comp)
                nontrivial = len(comp) > 1 or any(
                    t == comp[0] for _a, t in g.successors(comp[0])
                )
                if not nontrivial:
                    continue
                for u in comp:
                    if g.vertices[u].color == c and u not in good:
                        good[u] = allowed & comp_set

    goals = set(good)
    winning: set[int] = set()
    witnesses: dict[int, Lasso] = {}
    for v in g.vertices:
        found = _bfs_path(g, v.id, goals)
        if found is None:
            continue
        steps, u = found
        winning.add(v.id)
        if g.objective == REACHABILITY:
            # color 2 already reached at u; close any cycle afterwards
            tail: list[tuple[int, str]] = []
            seen_at = {u: 0}
            cur = u
            while True:
                a, t = next(iter(g.successors(cur)))
                tail.append((cur, a))
                if t in seen_at:
                    cut = seen_at[t]
                    prefix = tuple(steps) + tuple(tail[:cut])
                    cycle = tuple(tail[cut:])
                    break
                seen_at[t] = len(tail)
                cur = t
            witnesses[v.id] = Lasso(prefix, cycle)
        else:
            cyc = _shortest_cycle(g, u, good[u])
            witnesses[v.id] = Lasso(tuple(steps), tuple(cyc))
    return frozenset(winning), witnesses
