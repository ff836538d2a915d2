"""Inverse systems, their limits, and surjectivity at the limit.

An omega-system is a finite prefix of levels plus a tail rule.  Its limit
has a finite model: the stabilized image of the tail endomorphism.  A
levelwise-surjective morphism of systems stays surjective on limits here,
and the checker certifies it together with the stabilization depth.  The
summation retraction check exhibits the limit as a direct factor of the
product, which is the mechanism behind that exactness.

Run: python3 demos/05_inverse_systems.py
"""

import json
import random

from translim import (FiniteMod, Homomorphism, InverseSystem, OMEGA,
                      SystemMorphism, check_inverse_limit_surjectivity,
                      lim_to_prod_section_check, limit_object,
                      system_to_json)
from translim.sampling import random_surjective_system_morphism

Z4 = FiniteMod(4, (4,))
double = Homomorphism.from_generator_images(Z4, Z4, [(2,)])

# Z/4 <-x2- Z/4 <-x2- ... : images shrink 4 -> 2 -> 1 and stabilize
tower = InverseSystem(OMEGA, (Z4, Z4), (double,), "repeat-last-block")
lobj = limit_object(tower)
print("doubling tower limit:", len(lobj.elements()), "thread,",
      "depth", lobj.depth)

# the identity tower, for contrast, keeps all four threads at depth 0
ident = InverseSystem(OMEGA, (Z4,), (), "constant")
lobj = limit_object(ident)
print("identity tower limit:", len(lobj.elements()), "threads,",
      "depth", lobj.depth)
x = sorted(lobj.elements())[2]
print("  a thread through", Z4.format_element(x), "at levels 0..3:",
      [Z4.format_element(lobj.coordinate(x, j)) for j in range(4)])

# a levelwise quotient of towers: does it stay onto at the limit?
Z2 = FiniteMod(4, (2,))
mod2 = Homomorphism.from_function(Z4, Z2, lambda v: (v[0] % 2,))
target = InverseSystem(OMEGA, (Z2,), (), "constant")
phi = SystemMorphism(ident, target, (mod2,))
report = check_inverse_limit_surjectivity(phi)
print("quotient of towers surjective at the limit:", report.limit_epi,
      f"(depths {report.source_depth}/{report.target_depth})")

# the same machinery on a randomly sampled levelwise-surjective morphism
phi = random_surjective_system_morphism(random.Random(0), 6)
report = check_inverse_limit_surjectivity(phi)
print("sampled morphism levels:",
      " <- ".join(lv.literal for lv in phi.source.prefix))
print("  surjective at the limit:", report.limit_epi)

# the retraction of lim -> prod, built out of limit terms
section = lim_to_prod_section_check(tower, trials=8, seed=0)
print("retraction check on the doubling tower:",
      "pass" if section.passed else "fail",
      f"({section.trials} trials, {section.levels_checked} levels)")

# systems serialize to plain JSON for the command line tools
blob = json.dumps(system_to_json(tower), sort_keys=True)
print("serialized tower:", blob[:64] + "...")
