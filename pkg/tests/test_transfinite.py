"""Difference-and-sum recursion, summation routes, limit-term verdicts."""

import pytest
from hypothesis import given, settings

import translim.transfinite as transfinite
from conftest import ordinals, pwc_over

from translim import (
    OMEGA,
    ZERO,
    AdditiveTheory,
    App,
    DivergentSumError,
    FiniteMod,
    InvalidAlphaError,
    LengthMismatchError,
    Lim,
    PwcSeq,
    Sum,
    TheoryMismatchError,
    UnboundVariableError,
    Var,
    ZERO_TERM,
    audit_lim,
    basis_family,
    build_lim_term,
    check_constants_fixed,
    check_prefix_independence,
    evaluate,
    from_int,
    left_subtract,
    lim_eval,
    lim_value,
    parse_instance,
    parse_ordinal,
    refute_limit_term_finitary,
    restrict_sum,
    scal,
    substitute,
    sum_eval_from_lim,
    sum_term,
    validate_refutation,
    var,
    verify_limit_term,
)

Z2 = parse_instance("Z/2")
Z3 = parse_instance("Z/3")
Z4 = parse_instance("Z/4")
Z6 = parse_instance("Z/6")


def _seq(module, pieces):
    return PwcSeq.from_pieces(
        [(from_int(lo) if isinstance(lo, int) else lo,
          from_int(hi) if isinstance(hi, int) else hi, v)
         for lo, hi, v in pieces])


# -- the recursion ----------------------------------------------------------------

def test_lim_eval_examples():
    assert lim_eval(Z4, PwcSeq.empty()) == (0,)
    assert lim_eval(Z4, PwcSeq.constant((3,), OMEGA)) == (3,)
    fam = _seq(Z4, [(0, 3, (1,)), (3, OMEGA, (2,))])
    assert lim_eval(Z4, fam) == (2,)
    assert lim_eval(Z4, PwcSeq.from_tuple(((1,), (2,), (3,)))) == (3,)


def test_lim_eval_successor_is_last_entry():
    fam = _seq(Z6, [(0, OMEGA, (1,)), (OMEGA, OMEGA + from_int(2), (5,))])
    assert lim_eval(Z6, fam) == (5,)
    assert lim_eval(Z6, fam) == fam.value_at(fam.length.predecessor())


@settings(max_examples=120, deadline=None)
@given(pwc_over())
def test_audit_lim_agrees(pair):
    module, fam = pair
    assert audit_lim(module, fam) == lim_value(module, fam)


def test_audit_lim_raises_when_paths_disagree(monkeypatch):
    fam = PwcSeq.constant((1,), OMEGA)
    monkeypatch.setattr(transfinite, "lim_value", lambda m, f: (0,))
    with pytest.raises(AssertionError):
        transfinite.audit_lim(Z2, fam)


# -- summation through the recursion -------------------------------------------------

def test_sum_eval_peels_successors():
    fam = _seq(Z6, [(0, 2, (1,)), (2, OMEGA, (0,)),
                    (OMEGA, OMEGA + from_int(2), (3,))])
    assert sum_eval_from_lim(Z6, fam) == (2,)
    assert Z6.infinitary_sum(fam) == (2,)


def test_sum_eval_examples():
    assert sum_eval_from_lim(Z4, PwcSeq.empty()) == (0,)
    assert sum_eval_from_lim(Z4, PwcSeq.from_tuple(((1,), (2,), (3,)))) == (2,)
    tail_zero = _seq(Z2, [(0, 3, (1,)), (3, OMEGA, (0,))])
    assert sum_eval_from_lim(Z2, tail_zero) == (1,)


def test_sum_eval_divergence():
    with pytest.raises(DivergentSumError):
        sum_eval_from_lim(Z2, PwcSeq.constant((1,), OMEGA))
    with pytest.raises(DivergentSumError):
        sum_eval_from_lim(
            Z2, _seq(Z2, [(0, OMEGA, (1,)), (OMEGA, OMEGA + from_int(1), (0,))]))


@settings(max_examples=120, deadline=None)
@given(pwc_over())
def test_sum_routes_agree(pair):
    module, fam = pair
    try:
        direct = module.infinitary_sum(fam)
    except DivergentSumError:
        with pytest.raises(DivergentSumError):
            sum_eval_from_lim(module, fam)
        return
    assert sum_eval_from_lim(module, fam) == direct


def test_restrict_sum():
    fam = PwcSeq.from_tuple(((1,), (1,), (1,)))
    assert restrict_sum(Z4, fam, from_int(3)) == (3,)
    assert restrict_sum(Z4, fam, OMEGA) == (3,)
    assert restrict_sum(Z4, fam, parse_ordinal("w*2+5")) == (3,)
    with pytest.raises(LengthMismatchError):
        restrict_sum(Z4, fam, from_int(2))


@settings(max_examples=80, deadline=None)
@given(pwc_over(), ordinals())
def test_restrict_sum_is_sum_of_zero_padding(pair, delta):
    module, fam = pair
    alpha = fam.length + delta
    pad = PwcSeq.constant(module.zero(), left_subtract(fam.length, alpha))
    try:
        direct = module.infinitary_sum(fam.concat(pad))
    except DivergentSumError:
        with pytest.raises(DivergentSumError):
            restrict_sum(module, fam, alpha)
        return
    assert restrict_sum(module, fam, alpha) == direct


# -- limit-term laws ------------------------------------------------------------------

def test_build_lim_term():
    assert build_lim_term(OMEGA) == Lim(OMEGA, basis_family(OMEGA))
    with pytest.raises(InvalidAlphaError):
        build_lim_term(ZERO)


def test_check_constants_fixed():
    t = build_lim_term(OMEGA)
    assert check_constants_fixed(t, OMEGA, Z3) is None
    doctored = scal(2, var(0))
    w = check_constants_fixed(doctored, OMEGA, Z3)
    assert w is not None and w["law"] == "constants-fixed"


def test_check_prefix_independence():
    t = build_lim_term(OMEGA)
    a = _seq(Z2, [(0, 1, (1,)), (1, OMEGA, (0,))])
    b = PwcSeq.constant((0,), OMEGA)
    assert check_prefix_independence(t, Z2, a, b, from_int(1)) is None
    w = check_prefix_independence(var(0), Z2, a, b, from_int(1))
    assert w is not None and w["law"] == "prefix-independence"
    assert w["value_a"] == "1" and w["value_b"] == "0"


def test_verify_limit_term_passes_canonical():
    for alpha in (from_int(1), from_int(4), OMEGA, OMEGA + from_int(3)):
        report = verify_limit_term(build_lim_term(alpha), alpha, Z6, trials=40)
        assert report.passed
        assert report.witness is None
        assert report.trials == 40
        assert report.to_json()["alpha"] == report.to_json()["alpha"]


def test_verify_limit_term_rejects_pretenders():
    report = verify_limit_term(var(0), OMEGA, Z2, trials=200)
    assert report.constants_fixed
    assert not report.prefix_independence
    assert report.witness["law"] == "prefix-independence"
    report = verify_limit_term(scal(2, var(0)), OMEGA, Z3, trials=10)
    assert not report.constants_fixed
    assert not report.passed


def test_verify_limit_term_validates_input():
    with pytest.raises(InvalidAlphaError):
        verify_limit_term(ZERO_TERM, ZERO, Z2)
    with pytest.raises(UnboundVariableError):
        verify_limit_term(var(5), from_int(3), Z2)
    fin = FiniteMod(2, (2,), infinitary=False)
    with pytest.raises(TheoryMismatchError):
        verify_limit_term(build_lim_term(OMEGA), OMEGA, fin)


# -- finitary existence verdicts -------------------------------------------------------

def test_refuter_positive_cases():
    v = refute_limit_term_finitary(1, OMEGA)
    assert v.exists and v.witness_term == ZERO_TERM
    v = refute_limit_term_finitary(3, OMEGA + from_int(1))
    assert v.exists and v.witness_term == Var(OMEGA)
    assert verify_limit_term(
        v.witness_term, OMEGA + from_int(1), Z3, trials=60).passed
    with pytest.raises(ValueError):
        v.challenge(var(0))
    with pytest.raises(InvalidAlphaError):
        refute_limit_term_finitary(2, ZERO)


def test_refuter_negative_case_defeats_candidates():
    v = refute_limit_term_finitary(3, OMEGA)
    assert not v.exists
    # coefficients 1 + 2 = 0 in Z/3: the constant family at 1 is moved
    w = v.challenge(App("+", (var(0), scal(2, var(1)))))
    assert w.kind == "constants"
    ok, details = validate_refutation(w, App("+", (var(0), scal(2, var(1)))))
    assert ok and details is None
    # coefficients sum to 1: agreement past the term's last variable is broken
    v2 = refute_limit_term_finitary(2, OMEGA)
    t = App("+", (var(0), App("+", (var(1), var(2)))))
    w2 = v2.challenge(t)
    assert w2.kind == "prefix"
    assert w2.beta == from_int(3)
    ok, details = validate_refutation(w2, t)
    assert ok and details is None


def test_challenge_checks_the_candidate():
    v = refute_limit_term_finitary(2, OMEGA)
    with pytest.raises(TheoryMismatchError):
        v.challenge(sum_term(OMEGA))
    with pytest.raises(UnboundVariableError):
        v.challenge(Var(OMEGA))


def test_validate_refutation_rejects_doctored_witness():
    v = refute_limit_term_finitary(3, OMEGA)
    t = App("+", (var(0), scal(2, var(1))))
    w = v.challenge(t)
    doctored = transfinite.RefutationWitness(
        w.kind, w.module, w.assignment_a, w.assignment_b, w.beta,
        w.module.add(w.value_a, (1,)), w.value_b, w.expected)
    ok, details = validate_refutation(doctored, t)
    assert not ok
    assert details["kind"] == "constants"
    # a witness for one term does not transfer to another
    ok, _ = validate_refutation(w, var(0))
    assert not ok


def test_challenge_over_battery_of_candidates():
    for n in (2, 3, 4, 6):
        v = refute_limit_term_finitary(n, OMEGA)
        for t in (var(0), scal(2, var(3)),
                  App("+", (var(0), var(1))),
                  App("-", (var(2),)),
                  ZERO_TERM):
            w = v.challenge(t)
            ok, details = validate_refutation(w, t)
            assert ok, details


# -- the formal Lim node matches the recursion ----------------------------------------

def test_lim_node_evaluation_matches_lim_eval():
    t = build_lim_term(OMEGA)
    fam = _seq(Z4, [(0, 5, (1,)), (5, OMEGA, (3,))])
    assert evaluate(t, Z4, fam) == lim_eval(Z4, fam) == (3,)


def test_lim_term_substitution_collapses_constant_family():
    # substituting the constant assignment at x1 gives the limit of a
    # constant family, which is just the value of x1
    t = build_lim_term(OMEGA)
    sigma = PwcSeq.constant(var(1), OMEGA)
    s = substitute(t, sigma)
    assert s == Lim(OMEGA, PwcSeq.constant(var(1), OMEGA))
    fam = _seq(Z4, [(0, 2, (2,)), (2, OMEGA, (1,))])
    assert evaluate(s, Z4, fam) == fam.value_at(from_int(1)) == (2,)
