"""Is it safe to probe a bounded environment?

Builds the clause-checking game for two small formulas and decides
k-liveness: can any finite behavior of a k-state environment maneuver the
system into an unwinnable spot?  For a satisfiable formula the answer is no
(the fixed satisfying assignment, played as a machine, starves the system
forever), and the checker hands back that machine as a verified
counterexample.
"""

from tgames import (
    CnfFormula,
    check_k_live,
    cnf_to_game,
    sat_brute_force,
    serialize_transducer,
    verify_witness,
)

for name, clauses in [
    ("(x1) and (not x1)  [unsatisfiable]", ((1,), (-1,))),
    ("(x1 or x2) and (not x1)  [satisfiable]", ((1, 2), (-1,))),
]:
    phi = CnfFormula(2, clauses)
    game = cnf_to_game(phi)
    verdict = check_k_live(game, k=2)
    sat = sat_brute_force(phi)
    print(f"formula {name}")
    print(f"  satisfying assignment: {sat}")
    print(f"  game vertices: {game.n}, 2-state machines swept: "
          f"{verdict.stats.transducers_examined}")
    print(f"  2-live: {verdict.live}")
    if verdict.witness is not None:
        w = verdict.witness
        print(f"  counterexample position {w.position_name(game)}, "
              f"access word {' '.join(w.alpha) or '(empty)'}")
        print(f"  independently re-checked: {verify_witness(game, 2, w)}")
        print("  counterexample machine:")
        for line in serialize_transducer(w.transducer).splitlines():
            print(f"    {line}")
    print()
