"""Formal terms over a theory, including infinitary summation and limit nodes.

A term over a variable set X (an ordinal; finite sets are finite ordinals) is
one of:

  Var(g)            a variable with ordinal index g < X
  IndexVar()        positional placeholder, see below
  App(op, args)     a finitary operation of the theory
  Sum(a, family)    formal infinitary sum of an a-indexed family of terms
  Lim(a, family)    formal limit of an a-indexed family of terms

Families are PwcSeq values whose entries are terms.  A literal family
(Var(g))_{g<a} is not piecewise constant, so the placeholder IndexVar stands
for "the variable whose index equals the current position of the nearest
enclosing family".  The canonical basis family is then the constant sequence
of IndexVar, and an assignment sigma given as a PwcSeq of terms uses the same
convention, which makes the identity assignment the constant IndexVar
sequence as well.  Substitution and evaluation resolve the placeholder by
refining a family against the assignment's breakpoints, so everything stays
piecewise constant.

Terms are plain frozen data; equality is structural (families are coalesced
by PwcSeq, nothing else is normalized).  Semantics lives in `evaluate`:
Sum nodes go through the module's partial infinitary sum (error on divergent
input), Lim nodes take the telescoped final-interval value, whose agreement
with the defining difference-and-sum recursion (module `transfinite`) is
audited in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    IndexOutOfRangeError,
    LengthMismatchError,
    ParseError,
    TheoryMismatchError,
    UnboundVariableError,
)
from .ordinal import ONE, ZERO, Ordinal, format_ordinal, parse_ordinal
from .pwcseq import PwcSeq


# -- theories -----------------------------------------------------------------


@dataclass(frozen=True)
class FreeSignature:
    """Finitary signature: tuple of (name, arity) pairs, no equations."""

    symbols: tuple

    infinitary = False

    def arity(self, op) -> int:
        for name, ar in self.symbols:
            if name == op:
                return ar
        raise TheoryMismatchError(f"unknown operation {op!r}")

    @property
    def literal(self) -> str:
        return "sig(" + ",".join(f"{n}:{a}" for n, a in self.symbols) + ")"


@dataclass(frozen=True)
class AdditiveTheory:
    """Z/n-linear theory: +, unary -, zero, scalars r*(-) for r in Z/n.

    With infinitary=True the theory also admits the formal Sum and Lim node
    formers; with infinitary=False those nodes are rejected at evaluation
    time (TheoryMismatch), which is what the finitary refutations exercise.
    """

    modulus: int
    infinitary: bool = True

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")

    def arity(self, op) -> int:
        if op == "+":
            return 2
        if op == "-":
            return 1
        if op == "zero":
            return 0
        if isinstance(op, tuple) and len(op) == 2 and op[0] == "scal":
            return 1
        raise TheoryMismatchError(f"unknown operation {op!r}")

    @property
    def literal(self) -> str:
        kind = "add-inf" if self.infinitary else "add-fin"
        return f"{kind} mod {self.modulus}"


# -- term nodes ---------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Var:
    index: Ordinal

    def __repr__(self):
        return f"Var({format_ordinal(self.index)})"


@dataclass(frozen=True, slots=True)
class IndexVar:
    """The variable whose index is the position in the nearest enclosing family."""

    def __repr__(self):
        return "IndexVar()"


@dataclass(frozen=True, slots=True)
class App:
    op: object          # str, or ("scal", r) for additive scalars
    args: tuple = ()

    def __repr__(self):
        return f"App({self.op!r}, {list(self.args)!r})"


@dataclass(frozen=True, slots=True)
class Sum:
    length: Ordinal
    family: PwcSeq

    def __post_init__(self):
        if self.family.length != self.length:
            raise LengthMismatchError(
                f"family length {self.family.length} != node length {self.length}")


@dataclass(frozen=True, slots=True)
class Lim:
    length: Ordinal
    family: PwcSeq

    def __post_init__(self):
        if self.family.length != self.length:
            raise LengthMismatchError(
                f"family length {self.family.length} != node length {self.length}")


INDEX = IndexVar()
ZERO_TERM = App("zero", ())


def var(i) -> Var:
    from .ordinal import from_int
    return Var(from_int(i) if isinstance(i, int) else i)


def app(op, *args) -> App:
    return App(op, tuple(args))


def scal(r: int, t) -> App:
    return App(("scal", r), (t,))


def basis_family(alpha: Ordinal) -> PwcSeq:
    """The canonical family (Var(g))_{g<alpha}, encoded positionally."""
    return PwcSeq.constant(INDEX, alpha)


def sum_term(alpha: Ordinal) -> Sum:
    """The term summing all of its alpha-many variables."""
    return Sum(alpha, basis_family(alpha))


# -- placeholder plumbing ------------------------------------------------------


def mentions_index(t) -> bool:
    """True if t uses the placeholder of the family it sits in directly.

    Placeholders inside a deeper Sum/Lim belong to that deeper family and do
    not count.
    """
    tt = type(t)
    if tt is IndexVar:
        return True
    if tt is App:
        return any(mentions_index(a) for a in t.args)
    return False


def replace_index(t, s):
    """Substitute s for the placeholder at the current family level only."""
    tt = type(t)
    if tt is IndexVar:
        return s
    if tt is App:
        return App(t.op, tuple(replace_index(a, s) for a in t.args))
    return t


def _intersections(lo, hi, seq: PwcSeq):
    """Pieces of seq clipped to [lo, hi)."""
    out = []
    for slo, shi, v in seq.pieces():
        a = lo if slo < lo else slo
        b = hi if hi < shi else shi
        if a < b:
            out.append((a, b, v))
    return out


# -- substitution (the monad multiplication) -----------------------------------


def substitute(term, sigma: PwcSeq):
    """Replace each variable x by sigma(x); sigma is a PwcSeq of terms.

    Positions of sigma use the placeholder convention, so the identity
    assignment is the constant IndexVar sequence and substituting it is the
    structural identity.
    """
    tt = type(term)
    if tt is Var:
        try:
            v = sigma.value_at(term.index)
        except IndexOutOfRangeError:
            raise UnboundVariableError(
                f"variable x{format_ordinal(term.index)} not covered by the "
                f"assignment (length {format_ordinal(sigma.length)})") from None
        return replace_index(v, term) if mentions_index(v) else v
    if tt is IndexVar:
        return term
    if tt is App:
        return App(term.op, tuple(substitute(a, sigma) for a in term.args))
    return tt(term.length, substitute_family(term.family, sigma))


def substitute_family(fam: PwcSeq, sigma: PwcSeq) -> PwcSeq:
    """Apply sigma to a family of terms, resolving placeholders positionally.

    This is also assignment composition: substitute_family(sigma, tau) is the
    assignment x -> substitute(sigma(x), tau).
    """
    pieces = []
    for lo, hi, t in fam.pieces():
        body = substitute(t, sigma)
        if mentions_index(t):
            if sigma.length < hi:
                raise UnboundVariableError(
                    f"family positions up to {format_ordinal(hi)} exceed the "
                    f"assignment length {format_ordinal(sigma.length)}")
            for lo2, hi2, sval in _intersections(lo, hi, sigma):
                pieces.append((lo2, hi2, replace_index(body, sval)))
        else:
            pieces.append((lo, hi, body))
    return PwcSeq._from_pieces(fam.length, pieces)


def variable_ceiling(t) -> Ordinal:
    """Smallest X such that t is a term over X."""
    tt = type(t)
    if tt is Var:
        return t.index + ONE
    if tt is App:
        c = ZERO
        for a in t.args:
            ac = variable_ceiling(a)
            if c < ac:
                c = ac
        return c
    if tt in (Sum, Lim):
        c = ZERO
        for lo, hi, u in t.family.pieces():
            uc = variable_ceiling(u)
            if c < uc:
                c = uc
            if mentions_index(u) and c < hi:
                c = hi
        return c
    return ZERO  # IndexVar: bounded by the family that owns it


def collapse_to_one(t):
    """Substitute every variable by Var(0), giving a term over one variable."""
    ceiling = variable_ceiling(t)
    sigma = PwcSeq.constant(Var(ZERO), ceiling)
    return substitute(t, sigma)


def variable_support(t) -> set:
    """The set of variable indices occurring in t.

    Defined for placeholder-free terms (in particular every term of a
    finitary theory); a family whose pieces mention the placeholder uses
    every index of those pieces and has no finite support in general.
    """
    tt = type(t)
    if tt is Var:
        return {t.index}
    if tt is App:
        out = set()
        for a in t.args:
            out |= variable_support(a)
        return out
    if tt in (Sum, Lim):
        out = set()
        for _, _, u in t.family.pieces():
            if mentions_index(u):
                raise TheoryMismatchError(
                    "family uses the positional placeholder; its variable "
                    "support is not a finite set")
            out |= variable_support(u)
        return out
    return set()


# -- evaluation ----------------------------------------------------------------

_NO_BOUND = object()


def evaluate(term, module, assignment: PwcSeq, *, _bound=_NO_BOUND):
    """Value of term in the module under the assignment (a PwcSeq of elements).

    Var reads the assignment, App applies the module operation, Sum feeds the
    pointwise-evaluated family to the module's partial infinitary sum, and
    Lim takes the telescoped value of the evaluated family (its final
    interval's value; the zero element for length 0).
    """
    tt = type(term)
    if tt is Var:
        try:
            return assignment.value_at(term.index)
        except IndexOutOfRangeError:
            raise UnboundVariableError(
                f"variable x{format_ordinal(term.index)} not covered by the "
                f"assignment (length {format_ordinal(assignment.length)})") from None
    if tt is IndexVar:
        if _bound is _NO_BOUND:
            raise UnboundVariableError("positional placeholder outside a family")
        return _bound
    if tt is App:
        args = [evaluate(a, module, assignment, _bound=_bound) for a in term.args]
        return module.apply(term.op, args)
    theory = module.theory
    if not (isinstance(theory, AdditiveTheory) and theory.infinitary):
        raise TheoryMismatchError(
            f"{'Sum' if tt is Sum else 'Lim'} node needs an infinitary "
            f"additive theory, module has {getattr(theory, 'literal', theory)}")
    fam = eval_family(term.family, module, assignment)
    if tt is Sum:
        return module.infinitary_sum(fam)
    if fam.length.is_zero:
        return module.zero()
    return fam.values[-1]


def eval_family(fam: PwcSeq, module, assignment: PwcSeq) -> PwcSeq:
    """Pointwise evaluation of a family of terms to a family of elements."""
    pieces = []
    for lo, hi, t in fam.pieces():
        if mentions_index(t):
            if assignment.length < hi:
                raise UnboundVariableError(
                    f"family positions up to {format_ordinal(hi)} exceed the "
                    f"assignment length {format_ordinal(assignment.length)}")
            for lo2, hi2, bound in _intersections(lo, hi, assignment):
                pieces.append((lo2, hi2,
                               evaluate(t, module, assignment, _bound=bound)))
        else:
            pieces.append((lo, hi, evaluate(t, module, assignment)))
    return PwcSeq._from_pieces(fam.length, pieces)


def free_extension(images: PwcSeq, module):
    """The evaluator t -> evaluate(t, module, images).

    This is the unique structure-respecting extension of the point map
    x -> images(x) from variables to all terms.
    """
    def extend(term):
        return evaluate(term, module, images)
    return extend


def check_term(theory, term, variable_limit: Ordinal | None = None):
    """Validate arities, Sum/Lim legality, and optionally the variable bound."""
    tt = type(term)
    if tt is Var:
        if variable_limit is not None and not term.index < variable_limit:
            raise UnboundVariableError(
                f"variable x{format_ordinal(term.index)} outside declared set "
                f"of size {format_ordinal(variable_limit)}")
        return
    if tt is IndexVar:
        return
    if tt is App:
        ar = theory.arity(term.op)
        if ar != len(term.args):
            raise TheoryMismatchError(
                f"operation {term.op!r} expects {ar} arguments, got {len(term.args)}")
        for a in term.args:
            check_term(theory, a, variable_limit)
        return
    if not (isinstance(theory, AdditiveTheory) and theory.infinitary):
        raise TheoryMismatchError(
            "Sum/Lim nodes need an infinitary additive theory")
    for _, hi, u in term.family.pieces():
        if (variable_limit is not None and mentions_index(u)
                and variable_limit < hi):
            raise UnboundVariableError(
                f"family positions up to {format_ordinal(hi)} exceed the "
                f"declared variable set {format_ordinal(variable_limit)}")
        check_term(theory, u, variable_limit)


# -- textual form ---------------------------------------------------------------
#
# S-expressions: (+ x0 x5), (- x1), (scal 3 x1), zero, idx,
# (sum w [0,2)->x0 [2,w)->zero), (lim w [0,w)->idx), free-signature ops by name.


def _tokenize_term(text: str):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "()":
            toks.append((c, c, i))
            i += 1
            continue
        if c == "[":
            j = text.find(")", i)
            if j < 0:
                raise ParseError("unterminated interval", i)
            if text[j + 1:j + 3] != "->":
                raise ParseError("interval must be followed by '->'", j + 1)
            toks.append(("piece", text[i + 1:j], i))
            i = j + 3
            continue
        j = i
        depth = 0
        while j < n:
            c2 = text[j]
            if depth == 0 and (c2.isspace() or c2 in ")["):
                break
            if c2 == "(":
                if j > i and text[j - 1] == "^":
                    depth += 1
                else:
                    break
            elif c2 == ")":
                depth -= 1
            j += 1
        toks.append(("atom", text[i:j], i))
        i = j
    return toks


class _TermParser:
    def __init__(self, text):
        self.toks = _tokenize_term(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None, -1)

    def take(self):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of term")
        self.pos += 1
        return tok

    def atom_text(self, what):
        kind, text, at = self.take()
        if kind != "atom":
            raise ParseError(f"expected {what}", at)
        return text

    def term(self):
        kind, text, at = self.take()
        if kind == "atom":
            return self.leaf(text, at)
        if kind != "(":
            raise ParseError("expected a term", at)
        head = self.atom_text("an operation")
        if head in ("sum", "lim"):
            length = parse_ordinal(self.atom_text("a length ordinal"))
            pieces = []
            while self.peek()[0] == "piece":
                _, inside, pat = self.take()
                try:
                    lo_text, hi_text = inside.split(",")
                except ValueError:
                    raise ParseError("interval needs one comma", pat) from None
                pieces.append((parse_ordinal(lo_text), parse_ordinal(hi_text),
                               self.term()))
            self.close()
            fam = PwcSeq.from_pieces(pieces)
            if fam.length != length:
                raise LengthMismatchError(
                    f"pieces cover {fam.length}, node declares {length}")
            return (Sum if head == "sum" else Lim)(length, fam)
        if head == "scal":
            r_text = self.atom_text("a scalar")
            if not r_text.isdigit():
                raise ParseError(f"scalar must be a natural number: {r_text!r}")
            body = self.term()
            self.close()
            return App(("scal", int(r_text)), (body,))
        args = []
        while self.peek()[0] != ")":
            if self.peek()[0] is None:
                raise ParseError("missing ')'")
            args.append(self.term())
        self.close()
        return App(head, tuple(args))

    def leaf(self, text, at):
        if text == "zero":
            return ZERO_TERM
        if text == "idx":
            return INDEX
        if text.startswith("x") and len(text) > 1:
            return Var(parse_ordinal(text[1:]))
        # bare constant of a free signature
        return App(text, ())

    def close(self):
        kind, _, at = self.take()
        if kind != ")":
            raise ParseError("expected ')'", at)


def parse_term(text: str, theory=None, variable_limit: Ordinal | None = None):
    p = _TermParser(text)
    t = p.term()
    if p.pos != len(p.toks):
        raise ParseError("trailing input after term", p.toks[p.pos][2])
    if theory is not None:
        check_term(theory, t, variable_limit)
    return t


def format_term(t) -> str:
    tt = type(t)
    if tt is Var:
        return "x" + format_ordinal(t.index)
    if tt is IndexVar:
        return "idx"
    if tt is App:
        if isinstance(t.op, tuple):
            return f"(scal {t.op[1]} {format_term(t.args[0])})"
        if not t.args:
            return t.op
        return "(" + " ".join([t.op] + [format_term(a) for a in t.args]) + ")"
    head = "sum" if tt is Sum else "lim"
    pieces = " ".join(
        f"[{format_ordinal(lo)},{format_ordinal(hi)})->{format_term(v)}"
        for lo, hi, v in t.family.pieces())
    body = f" {pieces}" if pieces else ""
    return f"({head} {format_ordinal(t.length)}{body})"
