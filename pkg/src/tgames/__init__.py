"""Two-player games against bounded finite-state environments.

Decide whether probing an unknown k-state environment is always safe
(`check_k_live`), solve the bounded-adversary game outright
(`solve_bounded`), or play it online (`adaptive_controller` + `simulate`).
`qbf_to_game` and `cnf_to_game` generate the classic Boolean-encoding game
families with matching brute-force oracles.
"""

from .graphs import (
    BUCHI,
    GameError,
    GameGraph,
    Lasso,
    OBJECTIVES,
    PARITY,
    REACHABILITY,
    Vertex,
    Violation,
    Word,
    complete,
    make_game,
    validate,
    winner_of_lasso,
)
from .gameio import ParseError, parse_game, serialize_game
from .solvers import ParitySolution, solve_one_player, solve_parity
from .transducers import (
    Transducer,
    agrees,
    behavior_key,
    canonical_ordinal,
    count,
    dedupe_behavioral,
    enumerate_transducers,
    first_disagreement,
    from_ordinal,
    induced_strategy,
    parse_transducer,
    run,
    serialize_transducer,
)
from .product import (
    ProductGame,
    build_product,
    distinguish_extension,
    p2_winning_positions,
    reachable_positions,
    winning_lasso,
)
from .liveness import (
    LivenessStats,
    LivenessVerdict,
    LivenessWitness,
    check_k_live,
    verify_witness,
    word_in_Ak,
)
from .synthesis import (
    AdaptiveController,
    BoundedSolveResult,
    Trace,
    adaptive_controller,
    simulate,
    solve_bounded,
    steps_bound,
)
from .reductions import (
    CnfFormula,
    QbfFormula,
    assignment_transducer,
    cnf_to_game,
    counter_transducer,
    parse_dimacs_cnf,
    parse_qdimacs,
    qbf_brute_force,
    qbf_to_game,
    robot_scenario,
    sat_brute_force,
    qbf_value_cross_check,
    cnf_liveness_cross_check,
)

__version__ = "0.1.0"
