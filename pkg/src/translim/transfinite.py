"""Limits and sums of ordinal-indexed families, and limit-term checking.

The limit of a family (m_g)_{g<b} is defined by the difference-and-sum
recursion

    lim_{g<b} m  =  sum_{g<b} ( m_g - lim_{d<g} m_d )

which is well founded because every prefix is strictly shorter.  For a
piecewise-constant family the inner limits are constant on each piece, so
the difference family vanishes except at the finitely many piece starts
and the outer sum is finite.  lim_eval below computes exactly this;
lim_value is the telescoped final-interval value that the recursion
provably collapses to, and the two are cross-checked by audit_lim.

Sums over a limit-length index are in turn limits of partial sums, which
is what sum_eval_from_lim implements; it exists so that summation can be
validated against the independent finite-support sum of the instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import sampling
from .errors import DivergentSumError, InvalidAlphaError, LengthMismatchError
from .instances import FiniteMod
from .ordinal import ONE, ZERO, Ordinal, format_ordinal, left_subtract
from .pwcseq import PwcSeq, format_pwc
from .terms import (
    AdditiveTheory,
    App,
    Lim,
    Var,
    basis_family,
    check_term,
    evaluate,
    format_term,
    variable_ceiling,
)


def lim_eval(module, fam: PwcSeq):
    """The limit of fam by the difference-and-sum recursion.

    On finite instances each piece interior is spot-checked to contribute
    a zero difference, which is the fact that makes the support finite.
    """
    if fam.length.is_zero:
        return module.zero()
    zero = module.zero()
    support = []
    for lo, hi, v in fam.pieces():
        prefix_lim = lim_eval(module, fam.prefix(lo))
        d = module.sub(v, prefix_lim)
        if d != zero:
            support.append((lo, d))
        if module.is_finite and lo + ONE < hi:
            assert lim_eval(module, fam.prefix(lo + ONE)) == v
    diff = PwcSeq.from_support(support, fam.length, zero)
    return module.infinitary_sum(diff)


def lim_value(module, fam: PwcSeq):
    """Telescoped form of lim_eval: the value on the final interval."""
    if fam.length.is_zero:
        return module.zero()
    return fam.values[-1]


def audit_lim(module, fam: PwcSeq):
    """Recursion and telescoped path must agree; returns the common value."""
    honest = lim_eval(module, fam)
    fast = lim_value(module, fam)
    if honest != fast:
        raise AssertionError(
            f"limit recursion disagrees with its telescoped form on {fam}")
    return honest


def sum_eval_from_lim(module, fam: PwcSeq):
    """Sum of fam computed through the limit recursion.

    Successor lengths peel the last entry; a limit length takes the limit
    of the partial-sum family, which is piecewise constant exactly when
    the nonzero part of fam is finite (DivergentSumError otherwise).
    """
    tail = None
    b = fam.length
    while b.is_successor:
        d = b.predecessor()
        last = fam.value_at(d)
        tail = last if tail is None else module.add(last, tail)
        fam = fam.prefix(d)
        b = d
    if b.is_zero:
        core = module.zero()
    else:
        core = _lim_of_partial_sums(module, fam)
    if tail is None:
        return core
    return module.add(core, tail)


def _lim_of_partial_sums(module, fam: PwcSeq):
    b = fam.length
    zero = module.zero()
    support = fam.support_if_finite(zero)
    if support is None:
        raise DivergentSumError(
            f"family over {format_ordinal(b)} has infinite nonzero part")
    pieces = []
    acc = zero
    prev = ZERO
    for x, v in support:
        pieces.append((prev, x + ONE, acc))
        acc = module.add(acc, v)
        prev = x + ONE
    pieces.append((prev, b, acc))
    return lim_eval(module, PwcSeq.from_pieces(pieces))


def restrict_sum(module, fam: PwcSeq, alpha: Ordinal):
    """Sum of fam viewed inside index alpha: zero-extend, then sum over alpha."""
    if alpha < fam.length:
        raise LengthMismatchError(
            f"cannot restrict a sum over {format_ordinal(fam.length)} "
            f"to the shorter index {format_ordinal(alpha)}")
    if fam.length < alpha:
        pad = PwcSeq.constant(module.zero(),
                              left_subtract(fam.length, alpha))
        fam = fam.concat(pad)
    return sum_eval_from_lim(module, fam)


# -- limit terms ---------------------------------------------------------------


def build_lim_term(alpha: Ordinal) -> Lim:
    """The canonical limit term of arity alpha: lim over the variable family."""
    if alpha.is_zero:
        raise InvalidAlphaError("a limit term needs arity at least 1")
    return Lim(alpha, basis_family(alpha))


def check_constants_fixed(term, alpha: Ordinal, module):
    """Witness dict if some constant family is moved, else None."""
    for c in module.elements():
        got = evaluate(term, module, PwcSeq.constant(c, alpha))
        if got != c:
            return {
                "law": "constants-fixed",
                "constant": module.format_element(c),
                "got": module.format_element(got),
            }
    return None


def check_prefix_independence(term, module, asg_a: PwcSeq, asg_b: PwcSeq,
                              beta: Ordinal):
    """Witness dict if two assignments agreeing on [beta, alpha) separate."""
    va = evaluate(term, module, asg_a)
    vb = evaluate(term, module, asg_b)
    if va != vb:
        return {
            "law": "prefix-independence",
            "beta": format_ordinal(beta),
            "family_a": format_pwc(asg_a, module.format_element),
            "family_b": format_pwc(asg_b, module.format_element),
            "value_a": module.format_element(va),
            "value_b": module.format_element(vb),
        }
    return None


@dataclass(frozen=True)
class LimitTermReport:
    term: object
    alpha: Ordinal
    instance: str
    constants_fixed: bool
    prefix_independence: bool
    trials: int
    witness: dict | None

    @property
    def passed(self) -> bool:
        return self.constants_fixed and self.prefix_independence

    def to_json(self) -> dict:
        return {
            "term": format_term(self.term),
            "alpha": format_ordinal(self.alpha),
            "instance": self.instance,
            "constants_fixed": self.constants_fixed,
            "prefix_independence": self.prefix_independence,
            "trials": self.trials,
            "witness": self.witness,
            "passed": self.passed,
        }


def verify_limit_term(term, alpha: Ordinal, module, *, trials: int = 200,
                      seed: int = 0) -> LimitTermReport:
    """Check the two limit-term laws on one instance.

    Constants are checked exhaustively (a constant family is determined by
    its value).  Prefix independence runs `trials` seeded random pairs of
    assignments that agree on a random final segment.
    """
    if alpha.is_zero:
        raise InvalidAlphaError("a limit term needs arity at least 1")
    check_term(module.theory, term, alpha)
    rng = random.Random(seed)
    witness = check_constants_fixed(term, alpha, module)
    constants_ok = witness is None
    prefix_ok = True
    done = 0
    for _ in range(trials):
        a, b, beta = sampling.random_tail_agreeing_pair(rng, module, alpha)
        done += 1
        w = check_prefix_independence(term, module, a, b, beta)
        if w is not None:
            prefix_ok = False
            if witness is None:
                witness = w
            break
    return LimitTermReport(term, alpha, module.literal, constants_ok,
                           prefix_ok, done, witness)


# -- existence of finitary limit terms ------------------------------------------


@dataclass(frozen=True)
class RefutationWitness:
    """A concrete violation of one of the limit-term laws by a candidate."""

    kind: str  # "constants" or "prefix"
    module: FiniteMod
    assignment_a: PwcSeq
    assignment_b: PwcSeq | None
    beta: Ordinal | None
    value_a: object
    value_b: object
    expected: object | None

    def to_json(self) -> dict:
        fmt = self.module.format_element
        out = {
            "kind": self.kind,
            "instance": self.module.literal,
            "assignment_a": format_pwc(self.assignment_a, fmt),
            "value_a": fmt(self.value_a),
        }
        if self.kind == "constants":
            out["expected"] = fmt(self.expected)
        else:
            out["assignment_b"] = format_pwc(self.assignment_b, fmt)
            out["value_b"] = fmt(self.value_b)
            out["agree_from"] = format_ordinal(self.beta)
        return out


@dataclass(frozen=True)
class FinitaryLimitVerdict:
    """Whether any finitary term of arity alpha satisfies the limit laws.

    For successor alpha the last-coordinate projection works, and over the
    one-element module anything works.  For limit alpha over Z/n with n > 1
    no finitary term can work, and challenge() defeats any candidate: a term
    whose coefficients do not sum to 1 moves the constant family at 1, and
    one whose coefficients do sum to 1 separates two assignments that agree
    beyond every variable the term mentions.
    """

    modulus: int
    alpha: Ordinal
    exists: bool
    witness_term: object | None = None

    def challenge(self, term) -> RefutationWitness:
        if self.exists:
            raise ValueError("verdict is positive; there is nothing to refute")
        theory = AdditiveTheory(self.modulus, infinitary=False)
        check_term(theory, term, self.alpha)
        module = FiniteMod(self.modulus, (self.modulus,), infinitary=False)
        one = (1 % self.modulus,)
        const_one = PwcSeq.constant(one, self.alpha)
        v_one = evaluate(term, module, const_one)
        if v_one != one:
            return RefutationWitness("constants", module, const_one, None,
                                     None, v_one, None, one)
        # coefficients sum to 1, so the term mentions a variable and its
        # ceiling beta is still below the limit ordinal alpha
        beta = variable_ceiling(term)
        flat = PwcSeq.from_pieces([(ZERO, beta, module.zero())]).concat(
            PwcSeq.constant(one, left_subtract(beta, self.alpha)))
        v_flat = evaluate(term, module, flat)
        return RefutationWitness("prefix", module, const_one, flat, beta,
                                 v_one, v_flat, None)

    def to_json(self) -> dict:
        out = {
            "modulus": self.modulus,
            "alpha": format_ordinal(self.alpha),
            "exists": self.exists,
        }
        if self.witness_term is not None:
            out["witness_term"] = format_term(self.witness_term)
        return out


def refute_limit_term_finitary(modulus: int,
                               alpha: Ordinal) -> FinitaryLimitVerdict:
    """Decide finitary limit-term existence over Z/modulus at arity alpha."""
    if alpha.is_zero:
        raise InvalidAlphaError("a limit term needs arity at least 1")
    if modulus == 1:
        return FinitaryLimitVerdict(modulus, alpha, True, App("zero", ()))
    if alpha.is_successor:
        return FinitaryLimitVerdict(modulus, alpha, True,
                                    Var(alpha.predecessor()))
    return FinitaryLimitVerdict(modulus, alpha, False)


def validate_refutation(witness: RefutationWitness, term):
    """Re-check a refutation certificate through the ordinary evaluator.

    Returns (ok, details); details are None on success and name the first
    re-evaluated value that disagrees otherwise.
    """
    module = witness.module
    va = evaluate(term, module, witness.assignment_a)
    if witness.kind == "constants":
        if va == witness.value_a and va != witness.expected:
            return True, None
        return False, {"kind": witness.kind,
                       "reevaluated": module.format_element(va)}
    vb = evaluate(term, module, witness.assignment_b)
    tails_agree = (witness.assignment_a.final_segment(witness.beta)
                   == witness.assignment_b.final_segment(witness.beta))
    if (va == witness.value_a and vb == witness.value_b
            and va != vb and tails_agree):
        return True, None
    return False, {"kind": witness.kind,
                   "reevaluated_a": module.format_element(va),
                   "reevaluated_b": module.format_element(vb),
                   "tails_agree": tails_agree}
