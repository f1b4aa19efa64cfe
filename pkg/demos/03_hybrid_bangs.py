"""Differently labelled bangs in one affine formula.

Each ``!`` carries its own modality, so one formula can mix interpretations.
The ordering says which labels may be weakened into which.
"""

import itertools

from funint import D, DT, G, K, KT, bang_leq, interpret_al, parse_formula, print_formula

mixed = parse_formula("!k (forall x:N. R(x)) -o !d (forall y:N. R(y)) * !g (forall z:N. R(z))")
r = interpret_al(mixed)
print("A =", print_formula(mixed))
print("witnesses ", [f"{v.name}:{v.type}" for v in r.witnesses])
print("challenges", [f"{v.name}:{v.type}" for v in r.challenges])
print("matrix    ", print_formula(r.matrix), "\n")

print("One body under the level-indexed bangs:")
for level in ("0", "1", "inf"):
    f = parse_formula(f"!stein[{level}] forall f:N->N. forall x:N. R(f x)")
    out = interpret_al(f)
    print(f"  stein[{level}]  challenges {[str(t) for t in out.challenge_types]}")

mods = (KT, K, DT, D, G)
print("\n!X A gives !Y A  (rows X, columns Y)")
print("      " + "".join(f"{str(m):>4}" for m in mods))
for a in mods:
    print(f"{str(a):>4}  " + "".join(f"{'x' if bang_leq(a, b) else '.':>4}" for b in mods))
print("\nincomparable:", [(str(a), str(b)) for a, b in itertools.combinations(mods, 2)
                          if not bang_leq(a, b) and not bang_leq(b, a)])
