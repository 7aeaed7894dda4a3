"""Playing against an unknown bounded environment.

Two routes:

* `solve_bounded` decides outright whether player 2 can win against every
  k-state machine, via a knowledge arena whose player-1 positions carry the
  set of (machine, state) pairs still consistent with the observed play.
  Player 1's available moves at a knowledge position are exactly the labels
  some consistent pair would emit; a move both reveals information (the
  belief shrinks to the consistent subset) and advances the game.

* `adaptive_controller` produces the online strategy that wins every k-live
  game: hypothesize machines in enumeration order, track the candidate
  states consistent with observations, follow a winning lasso computed in
  the hypothesis' product, and advance the hypothesis whenever the
  environment contradicts it.

`simulate` runs a controller against a concrete hidden machine and decides
the winner either by reaching a color-2 vertex (reachability) or by closing
a lasso once the joint (vertex, machine state, controller state)
configuration repeats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .graphs import (
    GameError,
    GameGraph,
    Lasso,
    P2_PARADISE,
    REACHABILITY,
    Word,
    make_game,
    winner_of_lasso,
)
from .solvers import ParitySolution, solve_parity
from .product import ProductGame, build_product, reachable_positions, winning_lasso
from .transducers import (
    Transducer,
    canonical_ordinal,
    count,
    dedupe_behavioral,
    enumerate_transducers,
)

DEFAULT_BELIEF_CAP = 1_000_000
DEFAULT_MACHINE_CAP = 10_000_000

Belief = frozenset[tuple[int, int]]  # (machine ordinal, machine state)


@dataclass
class BeliefArena:
    graph: GameGraph
    belief_of: dict[int, tuple[int, Belief]]  # arena vid -> (base vid, belief)
    machines: dict[int, Transducer]


@dataclass
class BoundedSolveResult:
    p2_wins: Optional[bool]  # None: hit a cap, undecided
    reason: str = ""
    positions: int = 0
    strategy: dict[int, str] = field(default_factory=dict)
    arena: Optional[BeliefArena] = None
    solution: Optional[ParitySolution] = None


def solve_bounded(
    g: GameGraph,
    k: int,
    objective: Optional[str] = None,
    dedupe: bool = False,
    belief_cap: int = DEFAULT_BELIEF_CAP,
    machine_cap: int = DEFAULT_MACHINE_CAP,
) -> BoundedSolveResult:
    """Can player 2 win against every k-state machine?

    Builds the reachable knowledge arena and hands it to the parity solver.
    Beliefs only ever shrink along a play and the machine pool is finite, so
    an infinite play consistent at every prefix is consistent with one fixed
    machine: the arena decides exactly the bounded-environment question.
    """
    if not g.is_total():
        raise GameError("solve_bounded requires a total arena")
    if objective is not None and objective != g.objective:
        g = GameGraph(
            objective, g.alphabet1, g.alphabet2, g.vertices, g.edges, g.initial
        )
    if count(k, g.alphabet1, g.alphabet2) > machine_cap:
        return BoundedSolveResult(None, reason="machine count above cap")
    stream = enumerate_transducers(k, g.alphabet1, g.alphabet2)
    if dedupe:
        stream = dedupe_behavioral(stream)
    machines = {canonical_ordinal(t): t for t in stream}

    initial_belief: Belief = frozenset((o, t.initial) for o, t in machines.items())
    start = (g.initial, initial_belief)
    index: dict[tuple[int, Belief], int] = {start: 0}
    order: list[tuple[int, Belief]] = [start]
    names: list[tuple[str, int, int]] = []
    edges: list[tuple[str, str, str]] = []

    def name_of(i: int) -> str:
        return f"b{i}"

    qi = 0
    while qi < len(order):
        u, belief = order[qi]
        qi += 1
        if len(order) > belief_cap:
            return BoundedSolveResult(
                None, reason="belief position count above cap", positions=len(order)
            )
        v = g.vertices[u]
        names.append((name_of(qi - 1), v.owner, v.color))
        src = name_of(qi - 1)
        if v.owner == 1:
            groups: dict[str, list[tuple[int, int]]] = {}
            for o, m in belief:
                groups.setdefault(machines[o].labels[m], []).append((o, m))
            for a in g.alphabet1:
                if a in groups:
                    tgt = (g.edges[(u, a)], frozenset(groups[a]))
                    if tgt not in index:
                        index[tgt] = len(order)
                        order.append(tgt)
                    edges.append((src, a, name_of(index[tgt])))
                else:
                    edges.append((src, a, P2_PARADISE[1]))
        else:
            for b in g.alphabet2:
                advanced = frozenset((o, machines[o].step(m, b)) for o, m in belief)
                tgt = (g.edges[(u, b)], advanced)
                if tgt not in index:
                    index[tgt] = len(order)
                    order.append(tgt)
                edges.append((src, b, name_of(index[tgt])))

    # inconsistent player-1 actions concede: absorbing player-2 paradise
    names.append((P2_PARADISE[0], 1, 2))
    names.append((P2_PARADISE[1], 2, 2))
    for a in g.alphabet1:
        edges.append((P2_PARADISE[0], a, P2_PARADISE[1]))
    for b in g.alphabet2:
        edges.append((P2_PARADISE[1], b, P2_PARADISE[0]))

    arena_graph = make_game(
        g.objective, g.alphabet1, g.alphabet2, names, edges, name_of(0)
    )
    solution = solve_parity(arena_graph)
    belief_of = {i: pos for pos, i in index.items()}
    arena = BeliefArena(arena_graph, belief_of, machines)
    strategy = {
        vid: a for vid, a in solution.strategy2.items() if vid < len(order)
    }
    return BoundedSolveResult(
        p2_wins=0 in solution.region2,
        positions=len(order),
        strategy=strategy,
        arena=arena,
        solution=solution,
    )


def steps_bound(
    n: int, k: int, outputs: Union[int, Sequence[str]], inputs: Union[int, Sequence[str]]
) -> int:
    """Guaranteed step budget for the adaptive controller to win a k-live
    reachability game: one lasso attempt costs at most 4*n*k steps, each
    machine burns at most k candidate states, and there are count(...) machines.
    """
    return count(k, outputs, inputs) * k * (4 * n * k)


@dataclass
class HypothesisRecord:
    step: int
    ordinal: int
    candidates: int


@dataclass
class Trace:
    actions: tuple[str, ...]
    winner: Optional[int]  # 1, 2, or None when undecided at the step cap
    steps: int
    hypothesis_log: tuple[HypothesisRecord, ...]


class AdaptiveController:
    """Online player-2 strategy that learns the environment machine.

    The controller walks the machine enumeration.  For the current
    hypothesis it keeps `candidates`: machine states m such that (current
    vertex, m) is reachable in the hypothesis' product and no observation
    since has contradicted m.  It conjectures the smallest candidate,
    follows a winning lasso computed from that product position, advances
    candidate states on its own moves, and drops candidates whose predicted
    output a player-1 observation refutes.  An empty candidate set moves to
    the next machine; after the last machine the scan wraps around.

    Storage stays polynomial: one ordinal, at most k candidate states, one
    lasso with a cursor, and the current vertex.  Observation history is
    never kept.
    """

    def __init__(
        self,
        g: GameGraph,
        k: int,
        dedupe: bool = False,
        shared_cache: Optional[dict] = None,
    ):
        if not g.is_total():
            raise GameError("the controller needs a total arena")
        self.game = g
        self.k = k
        self.machines: list[Transducer] = list(
            dedupe_behavioral(enumerate_transducers(k, g.alphabet1, g.alphabet2))
            if dedupe
            else enumerate_transducers(k, g.alphabet1, g.alphabet2)
        )
        self.vertex = g.initial
        self.ordinal = 0
        self.candidates: list[int] = []
        self.conjecture: Optional[int] = None
        self.lasso: Optional[Lasso] = None
        self.cursor = 0
        self.tracking = False
        self.steps = 0
        self.log: list[HypothesisRecord] = []
        # hypothesis ordinals index the (possibly deduped) machine list, so
        # shared caches are partitioned by mode
        cache = shared_cache if shared_cache is not None else {}
        self._products: dict = cache.setdefault(("products", dedupe), {})
        self._reach: dict = cache.setdefault(("reach", dedupe), {})

    # -- product plumbing ---------------------------------------------------

    def _product(self, ordinal: int) -> ProductGame:
        if ordinal not in self._products:
            self._products[ordinal] = build_product(self.game, self.machines[ordinal])
        return self._products[ordinal]

    def _reachable(self, ordinal: int) -> frozenset[tuple[int, int]]:
        if ordinal not in self._reach:
            self._reach[ordinal] = frozenset(reachable_positions(self._product(ordinal)))
        return self._reach[ordinal]

    # -- hypothesis management ----------------------------------------------

    def _scan(self) -> bool:
        """Find the next machine with some (current vertex, m) reachable;
        initialize its candidate set.  False when a full wrap found none."""
        for _ in range(len(self.machines)):
            o = self.ordinal
            reach = self._reachable(o)
            ms = sorted(m for (v, m) in reach if v == self.vertex)
            if ms:
                self.candidates = ms
                self.tracking = True
                if self._conjecture_from_current():
                    return True
                self.tracking = False
            self.ordinal = (self.ordinal + 1) % len(self.machines)
        return False

    def _conjecture_from_current(self) -> bool:
        """Pick the least candidate with a winning lasso at the current
        vertex; drop candidates that admit none."""
        prod = self._product(self.ordinal)
        while self.candidates:
            m = self.candidates[0]
            pos = (self.vertex, m)
            if pos in prod.positions:
                try:
                    self.lasso = winning_lasso(prod, pos)
                    self.conjecture = m
                    self.cursor = 0
                    return True
                except GameError:
                    pass
            self.candidates.pop(0)
        self.conjecture = None
        self.lasso = None
        return False

    def _lasso_entry(self) -> tuple[int, str]:
        steps = self.lasso.prefix + self.lasso.cycle
        return steps[self.cursor]

    def _bump_cursor(self):
        # past the end, play continues at the cycle head; the cycle has even
        # length, so the player alternation phase is preserved
        self.cursor += 1
        if self.cursor >= len(self.lasso.prefix) + len(self.lasso.cycle):
            self.cursor = len(self.lasso.prefix)

    def _advance_hypothesis(self):
        self.tracking = False
        self.conjecture = None
        self.lasso = None
        self.candidates = []
        self.ordinal = (self.ordinal + 1) % len(self.machines)

    # -- the actual strategy -------------------------------------------------

    def next_action(self, observed: str) -> str:
        """Consume the environment's move, emit ours."""
        g = self.game
        if g.vertices[self.vertex].owner != 1:
            raise GameError("next_action called out of turn")

        if self.tracking:
            # candidates predicting a different output are refuted; machine
            # states do not advance on player-1 moves
            labels = self.machines[self.ordinal].labels
            self.candidates = [m for m in self.candidates if labels[m] == observed]
            if self.conjecture is not None and self.conjecture not in self.candidates:
                # the conjectured lasso predicted exactly this machine's
                # label, so a refuted conjecture is a lasso deviation
                self.conjecture = None
                self.lasso = None
            elif self.conjecture is not None:
                self._bump_cursor()  # prediction confirmed, step past the entry

        self.vertex = g.step(self.vertex, observed)

        # hypothesis upkeep, now standing on a player-2 vertex
        if self.tracking and not self.candidates:
            self._advance_hypothesis()
        if self.tracking and self.lasso is None:
            if not self._conjecture_from_current():
                self._advance_hypothesis()
        if not self.tracking:
            self._scan()

        action = None
        guard = len(self.machines) + 2
        while action is None and self.tracking and guard > 0:
            guard -= 1
            pos, act = self._lasso_entry()
            vid = self._product(self.ordinal).positions.get(
                (self.vertex, self.conjecture)
            )
            if vid is not None and pos == vid:
                action = act
                self._bump_cursor()
            else:
                # stale track: recompute the lasso at our actual position;
                # the candidate itself was not refuted by any observation
                self.conjecture = None
                self.lasso = None
                if not self._conjecture_from_current():
                    self._advance_hypothesis()
                    self._scan()
        if action is None:
            # nothing fits: the environment is outside the machine class.
            # Emit a default move and keep rescanning on the next turn.
            action = g.alphabet2[0]

        if self.tracking:
            t = self.machines[self.ordinal]
            self.candidates = sorted({t.step(m, action) for m in self.candidates})
            if self.conjecture is not None:
                self.conjecture = t.step(self.conjecture, action)
        self.vertex = g.step(self.vertex, action)
        self.steps += 1
        self.log.append(
            HypothesisRecord(self.steps, self.ordinal, len(self.candidates))
        )
        return action

    def snapshot(self):
        """Hashable full controller state, for periodicity detection."""
        return (
            self.vertex,
            self.ordinal,
            tuple(self.candidates),
            self.conjecture,
            self.tracking,
            self.cursor,
            None if self.lasso is None else (self.lasso.prefix, self.lasso.cycle),
        )


def adaptive_controller(
    g: GameGraph, k: int, dedupe: bool = False, shared_cache: Optional[dict] = None
) -> AdaptiveController:
    return AdaptiveController(g, k, dedupe=dedupe, shared_cache=shared_cache)


def simulate(
    g: GameGraph,
    controller,
    hidden: Transducer,
    max_steps: int,
) -> Trace:
    """Alternate the hidden machine's outputs with the controller's replies.

    Reachability plays stop as soon as a color-2 vertex is seen.  Otherwise
    the run stops when the joint configuration (game vertex, hidden state,
    controller state) repeats, and the closed lasso is scored; hitting
    `max_steps` first leaves the winner undecided.
    """
    if tuple(hidden.outputs) != g.alphabet1 or tuple(hidden.inputs) != g.alphabet2:
        raise GameError("hidden machine alphabets do not match the arena")
    vertex = g.initial
    state = hidden.initial
    actions: list[str] = []
    seen: dict[tuple, int] = {}
    reached_two = g.vertices[vertex].color == 2
    log = getattr(controller, "log", None)
    if g.objective == REACHABILITY and reached_two:
        return Trace((), 2, 0, ())

    for step in range(max_steps):
        snap = (
            vertex,
            state,
            controller.snapshot() if hasattr(controller, "snapshot") else None,
        )
        if snap[2] is not None:
            if snap in seen:
                at = seen[snap]
                w = Word(tuple(actions[: 2 * at]), tuple(actions[2 * at :]))
                winner = winner_of_lasso(w, g)
                return Trace(
                    tuple(actions),
                    winner,
                    step,
                    tuple(log) if log is not None else (),
                )
            seen[snap] = step

        a = hidden.labels[state]
        b = controller.next_action(a)
        mid = g.step(vertex, a)
        vertex = g.step(mid, b)
        state = hidden.step(state, b)
        actions += [a, b]
        if g.vertices[mid].color == 2 or g.vertices[vertex].color == 2:
            reached_two = True
        if g.objective == REACHABILITY and reached_two:
            return Trace(
                tuple(actions), 2, step + 1, tuple(log) if log is not None else ()
            )

    return Trace(
        tuple(actions), None, max_steps, tuple(log) if log is not None else ()
    )
