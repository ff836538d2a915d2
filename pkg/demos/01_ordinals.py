"""Ordinal arithmetic below epsilon_0, in Cantor normal form.

Every index in this library is an ordinal written as a decreasing sum of
omega-powers with positive integer coefficients.  The parser accepts the
same notation the formatter emits: w^2*3+w*4+7 and friends.

Run: python3 demos/01_ordinals.py
"""

from translim import (OMEGA, format_ordinal, from_int, left_subtract,
                      omega_power, parse_ordinal, sample_points_below)
from translim.ordinal import compare

alpha = parse_ordinal("w^2*3+w*4+7")
print("parsed:", format_ordinal(alpha))

# addition absorbs on the left: a finite head disappears into an omega tail
print("3 + w       =", format_ordinal(from_int(3) + OMEGA))
print("w+3 + w     =", format_ordinal(parse_ordinal("w+3") + OMEGA))
print("w + w^2     =", format_ordinal(OMEGA + omega_power(from_int(2))))
print("w^2 + w + 1 =", format_ordinal(parse_ordinal("w^2") + parse_ordinal("w+1")))

# left subtraction answers: what must be appended to b to reach a
for a_text, b_text in (("w*2", "w"), ("w+3", "w"), ("w^2", "w*5+1")):
    a, b = parse_ordinal(a_text), parse_ordinal(b_text)
    g = left_subtract(b, a)
    print(f"{b_text} + {format_ordinal(g)} = {a_text}")

# comparison is lexicographic on the normal form
pairs = (("w", "w"), ("w*2", "w+1"), ("w+1", "w^2"))
for x_text, y_text in pairs:
    c = compare(parse_ordinal(x_text), parse_ordinal(y_text))
    print(f"compare({x_text}, {y_text}) = {c:+d}")

# each ordinal carries a small canonical grid of sample points below it,
# used everywhere randomized checks need representative positions
for text in ("5", "w", "w*2", "w^2"):
    points = sample_points_below(parse_ordinal(text))
    print(f"points below {text}:", ", ".join(format_ordinal(p) for p in points))
