"""Both routes of each factorisation diagram, then the exhaustive sweep.

The direct route interprets an intuitionistic formula and (for the two
star diagrams) translates the matrix; the affine route translates first and
uses the bang clause.  The checker demands they print identically.
"""

import time

from funint import DiagramId, check_commutation, parse_formula, print_formula, run_check

formula = parse_formula("(exists x:N. R(x)) -> P | Q")
print("A =", print_formula(formula), "\n")

for d in DiagramId:
    c = check_commutation(d, formula)
    print(f"{d.name:<6} {'same' if c.passed else 'DIFFERENT'}")
    print(f"  direct  {print_formula(c.left.matrix)}")
    print(f"  affine  {print_formula(c.right.matrix)}")

print("\nSweeping every formula up to depth 3:")
for d in DiagramId:
    t0 = time.perf_counter()
    report = run_check(d.value, 3)
    print(f"  {report.summary():<32} {time.perf_counter() - t0:5.2f}s")
