"""Why limit terms need infinitary operations.

With only finite sums available, no term of limit arity can satisfy both
limit laws (fix constants, ignore every proper prefix) once the modulus
exceeds 1.  The decision procedure returns a verdict: at successor arity a
witness term exists (the last variable); at limit arity it hands out
machine-checkable refutation certificates against any candidate.

Run: python3 demos/04_finitary_refutation.py
"""

import json

from translim import (AdditiveTheory, format_term, parse_ordinal, parse_term,
                      refute_limit_term_finitary, validate_refutation)

# successor arity: x4 is a limit term of arity 5, and the verdict says so
verdict = refute_limit_term_finitary(3, parse_ordinal("5"))
print("mod 3, arity 5:", "exists" if verdict.exists else "refuted")
print("  witness:", format_term(verdict.witness_term))

# limit arity: refuted; every candidate is defeated by a concrete pair of
# assignments on which it must, but does not, behave like a limit
verdict = refute_limit_term_finitary(2, parse_ordinal("w"))
print("mod 2, arity w:", "exists" if verdict.exists else "refuted")

theory = AdditiveTheory(2, infinitary=False)
for text in ("(+ x0 x1)", "x3", "(+ x0 (+ x1 x2))"):
    term = parse_term(text, theory, parse_ordinal("w"))
    cert = verdict.challenge(term)
    ok, details = validate_refutation(cert, term)
    print(f"  candidate {text}")
    print("    certificate:", json.dumps(cert.to_json(), sort_keys=True))
    print("    re-checked by evaluation:", "valid" if ok else "INVALID")
