"""The two Boolean-encoding game families, cross-checked against oracles.

The clause game ties k-liveness to unsatisfiability; the alternating-formula
game ties the bounded-environment game value to validity.  Both directions
are exercised here on small instances, including the explicit counter
machine for an invalid formula.
"""

from tgames import (
    QbfFormula,
    check_k_live,
    parse_dimacs_cnf,
    robot_scenario,
    serialize_transducer,
    qbf_value_cross_check,
    cnf_liveness_cross_check,
)

print("== clause game vs satisfiability ==")
for text in ("p cnf 2 2\n1 2 0\n-1 0\n", "p cnf 2 2\n1 0\n-1 0\n"):
    phi = parse_dimacs_cnf(text)
    result = cnf_liveness_cross_check(phi)
    print(f"clauses {phi.clauses}: sat={result.sat is not None} "
          f"live={result.live} equivalence-holds={result.agrees}")

print("\n== alternating-formula game vs validity ==")
valid = QbfFormula(1, ((QbfFormula.x(1), QbfFormula.y(1)),
                       (QbfFormula.x(1, False), QbfFormula.y(1, False))))
invalid = QbfFormula(1, ((QbfFormula.x(1),), (QbfFormula.x(1, False),)))
for psi in (valid, invalid):
    r = qbf_value_cross_check(psi)
    print(f"clauses {psi.clauses}: valid={r.valid} "
          f"system-wins-vs-2-state={r.p2_wins} agree={r.game_agrees}")
    if r.counter is not None:
        print(f"  counter machine defeats its target strategy: "
              f"{r.counter_defeats_strategy}; pins the initial position: "
              f"{r.counter_product_losing}")
        for line in serialize_transducer(r.counter).splitlines():
            print(f"    {line}")

print("\n== workspace scenario ==")
g = robot_scenario(lanes=3)
print(f"arena: {g.n} vertices, objective {g.objective}")
print(f"1-state humans cannot make probing unsafe: "
      f"{check_k_live(g, 1).live}")
v = check_k_live(g, 3, cap=10_000_000)
print(f"3-state sweep honest outcome at the default cap: "
      f"{'undecided' if v.undecided else v.live}")
