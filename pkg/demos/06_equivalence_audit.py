"""The three-condition equivalence, decided independently per theory.

For each additive theory (modulus 1..6, finitary and infinitary) three
questions are answered by separate procedures: do limit terms exist, does
summation reach every product element, and does the diagonal map factor
through a summation term?  The audit asserts nothing; it reports the three
verdicts side by side so agreement is visible, and any disagreement would
be a bug in one of the three procedures.

Run: python3 demos/06_equivalence_audit.py
"""

from translim import (diagonal_factorization, equivalence_audit,
                      eta_surjective_decision, format_term, parse_ordinal,
                      AdditiveTheory)

# reachability: can finite sums of generators fill the whole product?
for modulus, index_text in ((2, "4"), (1, "w"), (2, "w")):
    eta = eta_surjective_decision(modulus, parse_ordinal(index_text))
    tag = "onto" if eta.surjective else "not onto"
    print(f"eta mod {modulus} over {index_text}: {tag}", end="")
    if not eta.surjective:
        print("  (truncations need support",
              eta.certificate["truncation_support"], "...)")
    else:
        print()

# the diagonal factorization: a term summing the whole family, when one exists
diag = diagonal_factorization(AdditiveTheory(3, infinitary=True),
                              parse_ordinal("w"))
print("diagonal term (infinitary, w):", format_term(diag.term))
diag = diagonal_factorization(AdditiveTheory(3, infinitary=False),
                              parse_ordinal("3"))
print("diagonal term (finitary, 3): ", format_term(diag.term))

# the full audit grid
print()
print("theory          limits  reach  diagonal  agree")
for row in equivalence_audit():
    print(f"{row.theory:<15} {row.cond_limits!s:<7} {row.cond_reach!s:<6} "
          f"{row.cond_diagonal!s:<9} {row.agree}")
