"""One implication read through every bounding spec.

Only the implication clause is parametrised, so the specs differ in what
the witness ``g`` owes the challenger of the premise: nothing (k), a single
point (g), a finite set (d), or an enumeration (stein).
"""

from funint import (
    DT, KT, dialectica, diller_nahm, interpret_il, kreisel, parse_formula, print_formula,
    spec_for, stein,
)

formula = parse_formula("(forall z:N. P(z)) -> exists w:N. R(w)")
print("A =", print_formula(formula), "\n")

specs = [("k", kreisel()), ("g", dialectica()), ("d", diller_nahm()),
         ("stein[0]", stein(0)), ("stein[inf]", stein(float("inf"))),
         ("kt", spec_for(KT)), ("dt", spec_for(DT))]

for name, spec in specs:
    r = interpret_il(formula, spec)
    ws = ", ".join(f"{v.name}:{v.type}" for v in r.witnesses) or "-"
    print(f"{name:>10}  witnesses {ws}")
    print(f"{'':>10}  matrix    {print_formula(r.matrix)}\n")

print("Without the implication the specs cannot be told apart:")
body = parse_formula("forall z:N. exists w:N. P(z) | R(w)")
print({print_formula(interpret_il(body, s).matrix) for _, s in specs[:5]})
