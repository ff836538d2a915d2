"""Limit evaluation and summation through limits.

The limit of an ordinal-indexed family is computed by a difference-and-sum
recursion; it depends only on the family's tail (two families that agree
from some point on have equal limits) and fixes constants.  Summation of a
family is the limit of its partial sums, defined exactly when the support
is finite.

Run: python3 demos/03_limits_and_sums.py
"""

from translim import (DivergentSumError, FiniteMod, PwcSeq, build_lim_term,
                      format_term, lim_eval, parse_ordinal, parse_pwc,
                      restrict_sum, sum_eval_from_lim)

Z4 = FiniteMod(4, (4,))
omega = parse_ordinal("w")

print("canonical limit term:", format_term(build_lim_term(omega)))

# prefix independence: junk before position 5 does not matter
tail = parse_pwc("[0,w)->2", Z4.parse_element)
noisy = parse_pwc("[0,2)->1; [2,5)->3; [5,w)->2", Z4.parse_element)
print("lim of constant 2:   ", Z4.format_element(lim_eval(Z4, tail)))
print("lim with noisy start:", Z4.format_element(lim_eval(Z4, noisy)))

# at a successor length the limit is simply the last entry
steps = PwcSeq.from_tuple(tuple((k,) for k in (1, 3, 2)))
print("lim of (1,3,2):      ", Z4.format_element(lim_eval(Z4, steps)))

# summation agrees with the finite-support sum, here 1+1+1 = 3
fam = parse_pwc("[0,3)->1; [3,w)->0", Z4.parse_element)
print("sum over w:          ", Z4.format_element(sum_eval_from_lim(Z4, fam)))

# the same entries restricted into a larger index change nothing
short = parse_pwc("[0,3)->1", Z4.parse_element)
big = parse_ordinal("w^2")
print("sum inside w^2:      ",
      Z4.format_element(restrict_sum(Z4, short, big)))

# a constant nonzero series has no value: the partial sums cycle forever
try:
    sum_eval_from_lim(Z4, parse_pwc("[0,w)->1", Z4.parse_element))
except DivergentSumError as exc:
    print("constant series:      diverges:", exc)
