"""Piecewise-constant sequences indexed by an ordinal.

A PwcSeq of length a is a family (m_g) for g < a that is constant on finitely
many half-open intervals [b_i, b_{i+1}) with 0 = b_0 < b_1 < ... < b_k = a.
This is the finite representation through which every transfinite family in
this package travels.  The normal form coalesces equal neighbours, so
structural equality is extensional equality.

Values are arbitrary (module elements, terms, ordinals); the sequence itself
never interprets them except to compare with == while coalescing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    IndexOutOfRangeError,
    LengthMismatchError,
    ParseError,
)
from .ordinal import (
    ZERO,
    ONE,
    Ordinal,
    format_ordinal,
    interval_cardinality,
    left_subtract,
    parse_ordinal,
)


def _normalize(pieces):
    """Drop empty intervals, coalesce equal neighbours; pieces must tile."""
    out = []
    for lo, hi, v in pieces:
        if lo == hi:
            continue
        if out and out[-1][2] == v:
            out[-1] = (out[-1][0], hi, v)
        else:
            out.append((lo, hi, v))
    return out


@dataclass(frozen=True, slots=True)
class PwcSeq:
    length: Ordinal
    breakpoints: tuple  # (0, b_1, ..., length); just (0,) when length == 0
    values: tuple       # one value per interval

    # -- constructors --------------------------------------------------------

    @staticmethod
    def _from_pieces(length, pieces):
        pieces = _normalize(pieces)
        if not pieces:
            return PwcSeq(ZERO, (ZERO,), ())
        breaks = tuple(p[0] for p in pieces) + (pieces[-1][1],)
        return PwcSeq(length, breaks, tuple(p[2] for p in pieces))

    @staticmethod
    def empty():
        return PwcSeq(ZERO, (ZERO,), ())

    @staticmethod
    def constant(value, length: Ordinal):
        if length.is_zero:
            return PwcSeq.empty()
        return PwcSeq(length, (ZERO, length), (value,))

    @staticmethod
    def from_pieces(pieces):
        """Build from [(lo, hi, value), ...]; validates the tiling invariants."""
        if not pieces:
            return PwcSeq.empty()
        prev = ZERO
        for i, (lo, hi, _) in enumerate(pieces):
            if lo != prev:
                raise ParseError(
                    f"piece {i} starts at {lo}, expected {prev} (pieces must tile)")
            if not lo < hi:
                raise ParseError(f"piece {i} is empty or decreasing: [{lo},{hi})")
            prev = hi
        return PwcSeq._from_pieces(prev, pieces)

    @staticmethod
    def from_tuple(values):
        """Finite sequence from an ordinary tuple/list of values."""
        from .ordinal import from_int
        pieces = [(from_int(i), from_int(i + 1), v) for i, v in enumerate(values)]
        return PwcSeq._from_pieces(from_int(len(values)), pieces)

    @staticmethod
    def from_support(entries, length: Ordinal, zero):
        """Sequence equal to `zero` except at finitely many listed points.

        entries: iterable of (index, value) with indices strictly below length.
        """
        entries = sorted(entries, key=_ord_sort_key)
        pieces = []
        prev = ZERO
        for idx, val in entries:
            if not idx < length:
                raise IndexOutOfRangeError(f"support point {idx} >= length {length}")
            if idx < prev:
                raise ParseError("support points must be strictly increasing")
            if prev < idx:
                pieces.append((prev, idx, zero))
            nxt = idx + ONE
            pieces.append((idx, nxt, val))
            prev = nxt
        if prev < length:
            pieces.append((prev, length, zero))
        return PwcSeq._from_pieces(length, pieces)

    # -- access ---------------------------------------------------------------

    def pieces(self):
        return [
            (self.breakpoints[i], self.breakpoints[i + 1], self.values[i])
            for i in range(len(self.values))
        ]

    def value_at(self, g: Ordinal):
        if not g < self.length:
            raise IndexOutOfRangeError(f"index {g} >= length {self.length}")
        for i in range(len(self.values)):
            if g < self.breakpoints[i + 1]:
                return self.values[i]
        raise AssertionError("breakpoints do not tile the length")

    # -- pointwise and structural operations ----------------------------------

    def map_values(self, f):
        return PwcSeq._from_pieces(
            self.length,
            [(lo, hi, f(v)) for lo, hi, v in self.pieces()])

    def zip_map(self, other: "PwcSeq", f):
        """Pointwise f over the common refinement of two equal-length sequences."""
        if self.length != other.length:
            raise LengthMismatchError(
                f"lengths differ: {self.length} vs {other.length}")
        pieces = []
        i = j = 0
        lo = ZERO
        while lo < self.length:
            hi_i = self.breakpoints[i + 1]
            hi_j = other.breakpoints[j + 1]
            hi = hi_i if hi_i < hi_j else hi_j
            pieces.append((lo, hi, f(self.values[i], other.values[j])))
            if hi == hi_i:
                i += 1
            if hi == hi_j:
                j += 1
            lo = hi
        return PwcSeq._from_pieces(self.length, pieces)

    def refine_against(self, other: "PwcSeq"):
        """Pieces of self split at other's breakpoints: [(lo, hi, v_self, v_other)].

        Requires other.length >= self.length; other is only read below
        self.length.
        """
        if other.length < self.length:
            raise LengthMismatchError(
                f"refinement needs length >= {self.length}, got {other.length}")
        out = []
        i = j = 0
        lo = ZERO
        while lo < self.length:
            hi_i = self.breakpoints[i + 1]
            hi_j = other.breakpoints[j + 1]
            hi = hi_i if hi_i < hi_j else hi_j
            out.append((lo, hi, self.values[i], other.values[j]))
            if hi == hi_i:
                i += 1
            if hi == hi_j:
                j += 1
            lo = hi
        return out

    def prefix(self, b: Ordinal) -> "PwcSeq":
        """Restriction to [0, b); requires b <= length."""
        if self.length < b:
            raise IndexOutOfRangeError(f"prefix {b} > length {self.length}")
        pieces = []
        for lo, hi, v in self.pieces():
            if not lo < b:
                break
            pieces.append((lo, hi if hi < b else b, v))
        return PwcSeq._from_pieces(b, pieces)

    def final_segment(self, b: Ordinal) -> "PwcSeq":
        """Restriction to [b, length), reindexed to start at 0; needs b < length."""
        if not b < self.length:
            raise IndexOutOfRangeError(f"segment start {b} >= length {self.length}")
        pieces = []
        for lo, hi, v in self.pieces():
            if not b < hi:
                continue
            start = lo if b < lo else b
            pieces.append((left_subtract(b, start), left_subtract(b, hi), v))
        return PwcSeq._from_pieces(left_subtract(b, self.length), pieces)

    def concat(self, other: "PwcSeq") -> "PwcSeq":
        """Self on [0, len(self)), then other shifted to start at len(self)."""
        if self.length.is_zero:
            return other
        if other.length.is_zero:
            return self
        pieces = self.pieces()
        for lo, hi, v in other.pieces():
            pieces.append((self.length + lo, self.length + hi, v))
        return PwcSeq._from_pieces(self.length + other.length, pieces)

    def support_if_finite(self, zero):
        """[(index, value), ...] for entries != zero, or None if infinitely many.

        The list enumerates every point of every non-zero interval, so it is
        only produced when all such intervals are finite.
        """
        out = []
        for lo, hi, v in self.pieces():
            if v == zero:
                continue
            n = interval_cardinality(lo, hi)
            if n is None:
                return None
            idx = lo
            for _ in range(n):
                out.append((idx, v))
                idx = idx + ONE
        return out

    def __str__(self):
        return format_pwc(self, str)

    def __repr__(self):
        body = ";".join(
            f"[{lo},{hi})->{v!r}" for lo, hi, v in self.pieces())
        return f"PwcSeq({body or 'empty'})"


def _ord_sort_key(entry):
    # strict total order on ordinals packaged for sorted(); compares via <
    class _K:
        __slots__ = ("o",)

        def __init__(self, o):
            self.o = o

        def __lt__(self, other):
            return self.o < other.o
    return _K(entry[0])


# -- textual form -------------------------------------------------------------
# semicolon-separated pieces  "[<ordinal>,<ordinal>) -> <value>"


def parse_pwc(text: str, parse_value) -> PwcSeq:
    text = text.strip()
    if not text:
        return PwcSeq.empty()
    pieces = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk.startswith("["):
            raise ParseError(f"piece must start with '[': {chunk!r}")
        try:
            inside, rest = chunk[1:].split(")", 1)
        except ValueError:
            raise ParseError(f"piece missing ')': {chunk!r}") from None
        try:
            lo_text, hi_text = inside.split(",")
        except ValueError:
            raise ParseError(f"interval needs one comma: [{inside})") from None
        rest = rest.strip()
        if not rest.startswith("->"):
            raise ParseError(f"piece missing '->': {chunk!r}")
        lo = parse_ordinal(lo_text)
        hi = parse_ordinal(hi_text)
        value_text = rest[2:].strip()
        try:
            value = parse_value(value_text)
        except ParseError:
            raise
        except (ValueError, TypeError) as exc:
            raise ParseError(f"bad piece value {value_text!r}: {exc}") from exc
        pieces.append((lo, hi, value))
    return PwcSeq.from_pieces(pieces)


def format_pwc(seq: PwcSeq, format_value) -> str:
    if not seq.values:
        return "empty"
    return ";".join(
        f"[{format_ordinal(lo)},{format_ordinal(hi)}) -> {format_value(v)}"
        for lo, hi, v in seq.pieces())
