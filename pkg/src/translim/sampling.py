"""Seeded random generators for elements, families, and inverse systems.

Everything takes an explicit random.Random so runs are reproducible from a
seed.  Breakpoints are drawn from the structural grid sample_points_below,
which keeps random families honest about where a piecewise-constant family
over a transfinite index can actually change.
"""

from __future__ import annotations

from .instances import FiniteMod, Homomorphism
from .ordinal import OMEGA, ZERO, Ordinal, left_subtract, sample_points_below
from .pwcseq import PwcSeq


def random_element(rng, module):
    return rng.choice(module.elements())


def random_breakpoints(rng, alpha: Ordinal, max_cuts: int = 3) -> list:
    grid = sample_points_below(alpha)
    if not grid:
        return []
    k = rng.randint(0, min(max_cuts, len(grid)))
    return sorted(rng.sample(grid, k))


def random_pwc(rng, module, alpha: Ordinal, max_cuts: int = 3) -> PwcSeq:
    """Random piecewise-constant family of module elements on [0, alpha)."""
    if alpha.is_zero:
        return PwcSeq.empty()
    bounds = [ZERO] + random_breakpoints(rng, alpha, max_cuts) + [alpha]
    pieces = [(lo, hi, random_element(rng, module))
              for lo, hi in zip(bounds, bounds[1:])]
    return PwcSeq.from_pieces(pieces)


def random_tail_agreeing_pair(rng, module, alpha: Ordinal):
    """Two assignments on [0, alpha) differing only below some beta < alpha.

    Returns (a, b, beta).  When alpha == 1 the only final segment is the
    whole interval, so the pair is equal and beta is 0.
    """
    grid = sample_points_below(alpha)
    if not grid:
        a = random_pwc(rng, module, alpha)
        return a, a, ZERO
    beta = rng.choice(grid)
    tail = random_pwc(rng, module, left_subtract(beta, alpha))
    a = random_pwc(rng, module, beta).concat(tail)
    b = random_pwc(rng, module, beta).concat(tail)
    return a, b, beta


def random_support_family(rng, module, alpha: Ordinal,
                          max_points: int = 3) -> PwcSeq:
    """Random family that vanishes off at most max_points grid positions."""
    grid = [ZERO] + sample_points_below(alpha) if not alpha.is_zero else []
    k = rng.randint(0, min(max_points, len(grid)))
    entries = [(p, random_element(rng, module)) for p in rng.sample(grid, k)]
    return PwcSeq.from_support(entries, alpha, module.zero())


# -- homomorphisms and systems -------------------------------------------------


def random_divisor_shape(rng, modulus: int, max_rank: int = 2,
                         max_size: int = 8) -> tuple:
    divisors = [d for d in range(1, modulus + 1) if modulus % d == 0]
    while True:
        shape = tuple(rng.choice(divisors) for _ in range(rng.randint(0, max_rank)))
        size = 1
        for m in shape:
            size *= m
        if size <= max_size:
            return shape


def random_hom(rng, domain: FiniteMod, codomain) -> Homomorphism:
    """Random linear map, generator images drawn with compatible order."""
    images = []
    for m in domain.shape:
        # e_i has order m, so its image must be killed by m
        candidates = [c for c in codomain.elements()
                      if codomain.scal(m, c) == codomain.zero()]
        images.append(rng.choice(candidates))
    return Homomorphism.from_generator_images(domain, codomain, images)


def random_system(rng, modulus: int, *, max_levels: int = 4,
                  infinitary: bool = True):
    """Random inverse system over omega with a random tail rule."""
    from .diagrams import InverseSystem
    n_levels = rng.randint(1, max_levels)
    levels = tuple(FiniteMod(modulus, random_divisor_shape(rng, modulus),
                             infinitary)
                   for _ in range(n_levels))
    maps = tuple(random_hom(rng, levels[j + 1], levels[j])
                 for j in range(n_levels - 1))
    tail = "constant"
    if n_levels >= 2 and levels[-1] == levels[-2] and rng.random() < 0.5:
        tail = "repeat-last-block"
    return InverseSystem(OMEGA, levels, maps, tail)


def random_surjective_system_morphism(rng, modulus: int, *,
                                      max_levels: int = 4,
                                      infinitary: bool = True,
                                      level_size_cap: int = 8):
    """A levelwise-surjective morphism of omega-systems, by construction.

    The target is random; source level j is target level j times a random
    factor, the morphism is the projection, and the source maps are
    (target map, random map), so every square commutes and every level map
    is onto.  No rejection sampling is involved.  Factors are budgeted so
    source levels stay within level_size_cap elements.
    """
    from .diagrams import InverseSystem, SystemMorphism
    target = random_system(rng, modulus, max_levels=max_levels,
                           infinitary=infinitary)
    height = len(target.prefix)
    factors = [random_divisor_shape(
        rng, modulus, max_rank=1,
        max_size=max(1, level_size_cap // target.prefix[j].size))
        for j in range(height)]
    if target.tail == "repeat-last-block":
        factors[-1] = factors[-2]
    src_levels = tuple(
        FiniteMod(modulus, target.prefix[j].shape + factors[j], infinitary)
        for j in range(height))
    homs = tuple(
        Homomorphism.from_function(
            src_levels[j], target.prefix[j],
            lambda x, k=len(target.prefix[j].shape): x[:k])
        for j in range(height))
    src_maps = []
    for j in range(height - 1):
        m2 = target.maps[j]
        g = random_hom(rng, src_levels[j + 1], FiniteMod(modulus, factors[j],
                                                         infinitary))
        k = len(target.prefix[j + 1].shape)
        src_maps.append(Homomorphism.from_function(
            src_levels[j + 1], src_levels[j],
            lambda x, m2=m2, g=g, k=k: m2(x[:k]) + g(x)))
    source = InverseSystem(OMEGA, src_levels, tuple(src_maps), target.tail)
    return SystemMorphism(source, target, homs)
