"""Module instances: carriers on which terms are evaluated.

Three concrete kinds plus submodules:

  FiniteMod(n, shape)   product of cyclic groups Z/shape[i] (each shape[i]
                        dividing n) with Z/n acting by multiplication;
                        elements are int tuples.
  Product(components)   componentwise product of finite additive instances.
  FreeSymbolic(th, X)   the module of formal terms over X; operations build
                        term nodes, nothing is reduced.
  Submodule(parent, S)  a subset verified closed under all operations.

The infinitary sum is partial everywhere: a family may be summed exactly when
its nonzero part is finite, and a divergent request raises DivergentSumError
rather than returning anything.  In FreeSymbolic the sum is total as a formal
Sum node.

Homomorphisms between finite instances are explicit tables checked against
every structure law at construction time; a bad table is rejected with a
witness.  Maps out of a free symbolic module are evaluation at a family of
generator images and are structure-respecting by construction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import (
    DivergentSumError,
    HomomorphismValidationError,
    InfiniteCarrierError,
    ParseError,
    TheoryMismatchError,
    TranslimError,
)
from .ordinal import Ordinal, format_ordinal, parse_ordinal
from .pwcseq import PwcSeq
from .terms import (
    AdditiveTheory,
    App,
    FreeSignature,
    Sum,
    check_term,
    evaluate,
    format_term,
    parse_term,
)


class ModuleInstance:
    """Operation dispatch shared by every kind of instance."""

    def apply(self, op, args):
        th = self.theory
        if isinstance(th, AdditiveTheory):
            if op == "+":
                return self.add(args[0], args[1])
            if op == "-":
                return self.neg(args[0])
            if op == "zero":
                return self.zero()
            if isinstance(op, tuple) and len(op) == 2 and op[0] == "scal":
                return self.scal(op[1], args[0])
        raise TheoryMismatchError(
            f"operation {op!r} is not provided by {getattr(th, 'literal', th)}")

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def infinitary_sum(self, seq: PwcSeq):
        """Sum of a PwcSeq of elements; defined only for finite nonzero part."""
        support = seq.support_if_finite(self.zero())
        if support is None:
            raise DivergentSumError(
                "family has a nonzero value on an infinite interval")
        total = self.zero()
        for _, v in support:
            total = self.add(total, v)
        return total

    @property
    def size(self):
        return len(self.elements())


@dataclass(frozen=True)
class FiniteMod(ModuleInstance):
    """Z/shape[0] x ... x Z/shape[k-1] as a module over Z/modulus."""

    modulus: int
    shape: tuple
    infinitary: bool = True

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        for m in self.shape:
            if m < 1 or self.modulus % m != 0:
                raise ValueError(
                    f"component order {m} must divide the modulus {self.modulus}")

    @property
    def theory(self):
        return AdditiveTheory(self.modulus, self.infinitary)

    is_finite = True

    def zero(self):
        return (0,) * len(self.shape)

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.shape))

    def neg(self, a):
        return tuple((-x) % m for x, m in zip(a, self.shape))

    def scal(self, r, a):
        return tuple((r * x) % m for x, m in zip(a, self.shape))

    def elements(self):
        return [tuple(x) for x in itertools.product(*(range(m) for m in self.shape))]

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) == len(self.shape)
                and all(isinstance(c, int) and 0 <= c < m
                        for c, m in zip(x, self.shape)))

    def generators(self):
        """Standard basis-like generators e_i (one per cyclic component)."""
        out = []
        for i in range(len(self.shape)):
            e = [0] * len(self.shape)
            e[i] = 1
            out.append(tuple(e))
        return out

    @property
    def literal(self):
        if not self.shape:
            return "0"
        return " x ".join(f"Z/{m}" for m in self.shape)

    def format_element(self, x):
        if len(self.shape) == 1:
            return str(x[0])
        return "(" + ",".join(str(c) for c in x) + ")"

    def parse_element(self, text):
        text = text.strip()
        if len(self.shape) == 1 and not text.startswith("("):
            parts = [text]
        else:
            if not (text.startswith("(") and text.endswith(")")):
                raise ParseError(f"element of {self.literal} must be (a,...): {text!r}")
            inner = text[1:-1].strip()
            parts = [p for p in inner.split(",")] if inner else []
        if len(parts) != len(self.shape):
            raise ParseError(
                f"element of {self.literal} needs {len(self.shape)} coordinates")
        out = []
        for p, m in zip(parts, self.shape):
            try:
                v = int(p)
            except ValueError:
                raise ParseError(f"bad coordinate {p!r}") from None
            if not 0 <= v < m:
                raise ParseError(f"coordinate {v} out of range for Z/{m}")
            out.append(v)
        return tuple(out)

    def element_to_json(self, x):
        return list(x)

    def element_from_json(self, data):
        if (not isinstance(data, list) or len(data) != len(self.shape)
                or not all(isinstance(c, int) and 0 <= c < m
                           for c, m in zip(data, self.shape))):
            raise ParseError(f"bad element {data!r} for {self.literal}")
        return tuple(data)

    def __str__(self):
        return self.literal


@dataclass(frozen=True)
class Product(ModuleInstance):
    """Componentwise product of finite additive instances."""

    components: tuple

    def __post_init__(self):
        if not self.components:
            raise ValueError("product needs at least one component")
        flags = {c.theory.infinitary for c in self.components}
        if len(flags) != 1:
            raise TheoryMismatchError("components disagree on infinitary sums")

    @property
    def theory(self):
        n = 1
        for c in self.components:
            n = n * c.theory.modulus // math.gcd(n, c.theory.modulus)
        return AdditiveTheory(n, self.components[0].theory.infinitary)

    is_finite = True

    def zero(self):
        return tuple(c.zero() for c in self.components)

    def add(self, a, b):
        return tuple(c.add(x, y) for c, x, y in zip(self.components, a, b))

    def neg(self, a):
        return tuple(c.neg(x) for c, x in zip(self.components, a))

    def scal(self, r, a):
        return tuple(c.scal(r, x) for c, x in zip(self.components, a))

    def elements(self):
        return [tuple(x) for x in itertools.product(
            *(c.elements() for c in self.components))]

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) == len(self.components)
                and all(c.contains(v) for c, v in zip(self.components, x)))

    @property
    def literal(self):
        return "prod(" + ", ".join(c.literal for c in self.components) + ")"

    def format_element(self, x):
        return "(" + ",".join(
            c.format_element(v) for c, v in zip(self.components, x)) + ")"

    def element_to_json(self, x):
        return [c.element_to_json(v) for c, v in zip(self.components, x)]

    def element_from_json(self, data):
        if not isinstance(data, list) or len(data) != len(self.components):
            raise ParseError(f"bad element {data!r} for {self.literal}")
        return tuple(c.element_from_json(v)
                     for c, v in zip(self.components, data))

    def __str__(self):
        return self.literal


@dataclass(frozen=True)
class Submodule(ModuleInstance):
    """A subset of a finite instance, verified closed under all operations."""

    parent: ModuleInstance
    carrier: tuple  # sorted tuple of parent elements

    def __post_init__(self):
        cs = set(self.carrier)
        z = self.parent.zero()
        if z not in cs:
            raise ValueError("submodule must contain zero")
        for x in self.carrier:
            if self.parent.neg(x) not in cs:
                raise ValueError(f"not closed under negation at {x!r}")
            for r in range(self.parent.theory.modulus):
                if self.parent.scal(r, x) not in cs:
                    raise ValueError(f"not closed under scalar {r} at {x!r}")
            for y in self.carrier:
                if self.parent.add(x, y) not in cs:
                    raise ValueError(f"not closed under + at {x!r}, {y!r}")

    @property
    def theory(self):
        return self.parent.theory

    is_finite = True

    def zero(self):
        return self.parent.zero()

    def add(self, a, b):
        return self.parent.add(a, b)

    def neg(self, a):
        return self.parent.neg(a)

    def scal(self, r, a):
        return self.parent.scal(r, a)

    def elements(self):
        return list(self.carrier)

    def contains(self, x):
        return x in self.carrier

    @property
    def literal(self):
        return f"sub[{len(self.carrier)}] of {self.parent.literal}"

    def format_element(self, x):
        return self.parent.format_element(x)

    def parse_element(self, text):
        return self.parent.parse_element(text)

    def element_to_json(self, x):
        return self.parent.element_to_json(x)

    def element_from_json(self, data):
        return self.parent.element_from_json(data)

    def __str__(self):
        return self.literal


@dataclass(frozen=True)
class FreeSymbolic(ModuleInstance):
    """The module of formal terms over `generators`-many variables."""

    theory_: object
    generators: Ordinal

    @property
    def theory(self):
        return self.theory_

    is_finite = False

    def _additive(self):
        if not isinstance(self.theory_, AdditiveTheory):
            raise TheoryMismatchError(
                f"{self.theory_.literal} has no additive structure")

    def zero(self):
        self._additive()
        return App("zero", ())

    def add(self, a, b):
        self._additive()
        return App("+", (a, b))

    def neg(self, a):
        self._additive()
        return App("-", (a,))

    def scal(self, r, a):
        self._additive()
        return App(("scal", r % self.theory_.modulus), (a,))

    def apply(self, op, args):
        ar = self.theory_.arity(op)
        if ar != len(args):
            raise TheoryMismatchError(
                f"operation {op!r} expects {ar} arguments, got {len(args)}")
        if isinstance(op, tuple):
            return self.scal(op[1], args[0])
        return App(op, tuple(args))

    def infinitary_sum(self, seq: PwcSeq):
        self._additive()
        if not self.theory_.infinitary:
            raise TheoryMismatchError(
                "finitary theory: no infinitary sum in the free module")
        return Sum(seq.length, seq)

    def elements(self):
        raise InfiniteCarrierError(f"{self.literal} is not finite")

    def contains(self, x):
        try:
            check_term(self.theory_, x, self.generators)
        except TranslimError:
            return False
        return True

    @property
    def literal(self):
        return f"free({self.theory_.literal}, {format_ordinal(self.generators)})"

    def format_element(self, x):
        return format_term(x)

    def parse_element(self, text):
        return parse_term(text, self.theory_, self.generators)

    def __str__(self):
        return self.literal


# -- homomorphisms -------------------------------------------------------------


class Homomorphism:
    """A structure-respecting map, held as a verified table or an evaluator."""

    __slots__ = ("domain", "codomain", "table", "_fn")

    def __init__(self, domain, codomain, table=None, fn=None, _checked=False):
        if domain.theory != codomain.theory:
            raise TheoryMismatchError(
                f"domain over {domain.theory.literal}, "
                f"codomain over {codomain.theory.literal}")
        self.domain = domain
        self.codomain = codomain
        self.table = table
        self._fn = fn
        if table is not None and not _checked:
            self._verify()

    def _verify(self):
        dom, cod, f = self.domain, self.codomain, self.table
        elems = dom.elements()
        for x in elems:
            if x not in f:
                raise HomomorphismValidationError(f"table missing {x!r}", x)
            if not cod.contains(f[x]):
                raise HomomorphismValidationError(
                    f"value {f[x]!r} outside the codomain", x)
        if f[dom.zero()] != cod.zero():
            raise HomomorphismValidationError(
                "zero is not preserved", dom.zero())
        n = dom.theory.modulus
        for x in elems:
            if f[dom.neg(x)] != cod.neg(f[x]):
                raise HomomorphismValidationError(
                    f"negation broken at {x!r}", x)
            for r in range(n):
                if f[dom.scal(r, x)] != cod.scal(r, f[x]):
                    raise HomomorphismValidationError(
                        f"scalar {r} broken at {x!r}", (r, x))
            for y in elems:
                if f[dom.add(x, y)] != cod.add(f[x], f[y]):
                    raise HomomorphismValidationError(
                        f"addition broken at {x!r} + {y!r}", (x, y))

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_table(domain, codomain, table):
        return Homomorphism(domain, codomain, table=dict(table))

    @staticmethod
    def from_function(domain, codomain, fn):
        return Homomorphism(domain, codomain,
                            table={x: fn(x) for x in domain.elements()})

    @staticmethod
    def from_generator_images(domain: FiniteMod, codomain, images):
        """Linear extension of e_i -> images[i]; verified like any table."""
        if len(images) != len(domain.shape):
            raise HomomorphismValidationError(
                f"need {len(domain.shape)} generator images")
        table = {}
        for x in domain.elements():
            acc = codomain.zero()
            for c, g in zip(x, images):
                acc = codomain.add(acc, codomain.scal(c, g))
            table[x] = acc
        return Homomorphism(domain, codomain, table=table)

    @staticmethod
    def identity(module):
        return Homomorphism(module, module,
                            table={x: x for x in module.elements()},
                            _checked=True)

    @staticmethod
    def zero_map(domain, codomain):
        z = codomain.zero()
        return Homomorphism(domain, codomain,
                            table={x: z for x in domain.elements()})

    @staticmethod
    def free_extension_map(domain: FreeSymbolic, codomain, images: PwcSeq):
        """Evaluation at generator images; structural laws hold by construction."""
        if images.length != domain.generators:
            raise HomomorphismValidationError(
                f"images cover {images.length}, need {domain.generators}")
        return Homomorphism(domain, codomain, fn=lambda t: evaluate(
            t, codomain, images))

    # -- use -------------------------------------------------------------------

    def __call__(self, x):
        if self.table is not None:
            return self.table[x]
        return self._fn(x)

    def after(self, other: "Homomorphism") -> "Homomorphism":
        """self o other (apply other first)."""
        if other.codomain != self.domain:
            raise TheoryMismatchError("composition domains do not line up")
        if other.table is not None:
            return Homomorphism(other.domain, self.codomain,
                                table={x: self(y) for x, y in other.table.items()},
                                _checked=True)
        return Homomorphism(other.domain, self.codomain,
                            fn=lambda x: self(other(x)))

    def __eq__(self, other):
        if not isinstance(other, Homomorphism):
            return NotImplemented
        if self.domain != other.domain or self.codomain != other.codomain:
            return False
        if self.table is None or other.table is None:
            return self is other
        return self.table == other.table

    def __repr__(self):
        return f"Homomorphism({self.domain.literal} -> {self.codomain.literal})"


# -- module-level operations -----------------------------------------------------


def elements(module):
    """Finite enumeration of the carrier (InfiniteCarrierError otherwise)."""
    if not module.is_finite:
        raise InfiniteCarrierError(f"{module.literal} is not finite")
    return module.elements()


def image(f: Homomorphism):
    """The set-image as a verified Submodule plus its inclusion map."""
    if f.table is None:
        raise InfiniteCarrierError("image needs a finite (table) homomorphism")
    carrier = tuple(sorted(set(f.table.values())))
    sub = Submodule(f.codomain, carrier)
    incl = Homomorphism(sub, f.codomain, table={x: x for x in carrier},
                        _checked=True)
    return sub, incl


def is_regular_epi(f: Homomorphism) -> bool:
    """Surjectivity; regular epimorphisms of modules are exactly these."""
    if f.table is None:
        raise InfiniteCarrierError("surjectivity check needs a finite table")
    return set(f.table.values()) == set(f.codomain.elements())


def infinitary_sum(module, seq: PwcSeq):
    return module.infinitary_sum(seq)


def zero_module(modulus: int, infinitary: bool = True) -> FiniteMod:
    return FiniteMod(modulus, (), infinitary)


def standard_battery():
    """Z/2, Z/3, Z/4, Z/2 x Z/2, Z/6: the default instances checks run over."""
    return (
        FiniteMod(2, (2,)),
        FiniteMod(3, (3,)),
        FiniteMod(4, (4,)),
        FiniteMod(2, (2, 2)),
        FiniteMod(6, (6,)),
    )


# -- instance literals -------------------------------------------------------
#   Z/4        Z/2 x Z/4        free(add-inf mod 2, w)


def parse_instance(text: str):
    text = text.strip()
    if text.startswith("free(") and text.endswith(")"):
        inner = text[5:-1]
        try:
            theory_text, gen_text = inner.rsplit(",", 1)
        except ValueError:
            raise ParseError("free(...) needs a theory and a variable ordinal") from None
        theory = parse_theory(theory_text.strip())
        return FreeSymbolic(theory, parse_ordinal(gen_text.strip()))
    parts = [p.strip() for p in text.split("x")]
    shape = []
    for p in parts:
        if not p.startswith("Z/"):
            raise ParseError(f"expected Z/<n>, got {p!r}")
        try:
            m = int(p[2:])
        except ValueError:
            raise ParseError(f"bad cyclic order in {p!r}") from None
        if m < 1:
            raise ParseError(f"cyclic order must be >= 1: {p!r}")
        shape.append(m)
    if not shape:
        raise ParseError("empty instance literal")
    n = 1
    for m in shape:
        n = n * m // math.gcd(n, m)
    return FiniteMod(n, tuple(shape))


def parse_theory(text: str):
    text = text.strip()
    for prefix, flag in (("add-inf mod ", True), ("add-fin mod ", False)):
        if text.startswith(prefix):
            try:
                return AdditiveTheory(int(text[len(prefix):]), flag)
            except ValueError:
                raise ParseError(f"bad modulus in {text!r}") from None
    raise ParseError(f"unknown theory literal {text!r}")
