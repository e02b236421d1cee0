"""Ordinals below epsilon-zero in Cantor normal form.

An :class:`Ordinal` is an immutable, canonical sequence of
``(exponent, coefficient)`` terms with strictly decreasing exponents.
Only the operations needed for the embedding are provided: comparison,
the natural (Hessenberg) sum and ``omega ** e``.

Textual notation::

    ord    := "0" | term (" + " term)*
    term   := atom ("*" nat)?
    atom   := nat | "w" | "w^" factor
    factor := nat | "w" | "(" ord ")"
"""
from __future__ import annotations

import enum
from typing import Iterable, Tuple, Union

__all__ = [
    "Ordinal",
    "Ordering",
    "OrdinalSyntaxError",
    "ZERO",
    "ONE",
    "OMEGA",
    "compare",
    "natural_sum",
    "omega_power",
    "parse",
    "to_str",
]


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class OrdinalSyntaxError(ValueError):
    """Malformed ordinal notation; ``pos`` is the 0-based offset of the fault."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class Ordinal:
    """Canonical CNF ordinal.

    ``terms`` is a tuple of ``(Ordinal, int)`` pairs.  Any iterable of terms is
    accepted by the constructor and normalized: terms are sorted by exponent,
    equal exponents merge by adding coefficients.  Zero coefficients are
    rejected.

    Ordering uses a nested-tuple key so comparisons run at C speed; the
    explicit recursive :func:`compare` is kept as an independent cross-check.
    """

    __slots__ = ("terms", "_key", "_hash")

    def __init__(self, terms: Iterable[Tuple["Ordinal", int]] = ()):
        merged: dict = {}
        for exp, coef in terms:
            if not isinstance(exp, Ordinal):
                raise TypeError(f"exponent must be an Ordinal, got {type(exp).__name__}")
            if isinstance(coef, bool) or not isinstance(coef, int):
                raise TypeError(f"coefficient must be an int, got {type(coef).__name__}")
            if coef < 1:
                raise ValueError(f"coefficient must be >= 1, got {coef}")
            merged[exp] = merged.get(exp, 0) + coef
        ordered = sorted(merged.items(), key=lambda t: t[0]._key, reverse=True)
        object.__setattr__(self, "terms", tuple(ordered))
        object.__setattr__(self, "_key", tuple((e._key, c) for e, c in ordered))
        object.__setattr__(self, "_hash", hash(self._key))

    @classmethod
    def _from_canonical(cls, terms: tuple) -> "Ordinal":
        self = object.__new__(cls)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_key", tuple((e._key, c) for e, c in terms))
        object.__setattr__(self, "_hash", hash(self._key))
        return self

    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return ZERO if n == 0 else cls._from_canonical(((ZERO, n),))

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    # Comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Ordinal):
            return self._key == other._key
        if isinstance(other, int) and not isinstance(other, bool):
            return self.is_finite() and self.finite_value() == other
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key < other._key

    def __le__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key <= other._key

    def __gt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key > other._key

    def __ge__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key >= other._key

    def __bool__(self):
        return bool(self.terms)

    # Queries ------------------------------------------------------------

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0])

    def finite_value(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise ValueError("zero has no leading exponent")
        return self.terms[0][0]

    def depth(self) -> int:
        """Exponent nesting height: 0 for zero, 1 for naturals, 2 for w, ..."""
        if not self.terms:
            return 0
        return 1 + max(e.depth() for e, _ in self.terms)

    # Arithmetic ---------------------------------------------------------

    def __matmul__(self, other):
        # a @ b is the natural sum a # b
        if not isinstance(other, Ordinal):
            return NotImplemented
        return natural_sum(self, other)

    def __str__(self):
        return to_str(self)

    def __repr__(self):
        return f"Ordinal({to_str(self)!r})"


ZERO = Ordinal._from_canonical(())
ONE = Ordinal._from_canonical(((ZERO, 1),))
OMEGA = Ordinal._from_canonical(((ONE, 1),))

Ord = Union[Ordinal, int]


def _coerce(a: Ord) -> Ordinal:
    if isinstance(a, Ordinal):
        return a
    if isinstance(a, int) and not isinstance(a, bool):
        return Ordinal.from_int(a)
    raise TypeError(f"not an ordinal: {a!r}")


def compare(a: Ord, b: Ord) -> Ordering:
    """CNF order, term by term: exponents first (recursively), then coefficients."""
    a, b = _coerce(a), _coerce(b)
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c is not Ordering.EQUAL:
            return c
        if ca != cb:
            return Ordering.LESS if ca < cb else Ordering.GREATER
    if len(a.terms) == len(b.terms):
        return Ordering.EQUAL
    return Ordering.LESS if len(a.terms) < len(b.terms) else Ordering.GREATER


def natural_sum(a: Ord, b: Ord) -> Ordinal:
    """Hessenberg sum: merge both term lists, adding coefficients of equal exponents."""
    a, b = _coerce(a), _coerce(b)
    if not a.terms:
        return b
    if not b.terms:
        return a
    ta, tb = a.terms, b.terms
    i = j = 0
    out = []
    while i < len(ta) and j < len(tb):
        ka, kb = ta[i][0]._key, tb[j][0]._key
        if ka > kb:
            out.append(ta[i])
            i += 1
        elif kb > ka:
            out.append(tb[j])
            j += 1
        else:
            out.append((ta[i][0], ta[i][1] + tb[j][1]))
            i += 1
            j += 1
    out.extend(ta[i:])
    out.extend(tb[j:])
    return Ordinal._from_canonical(tuple(out))


def omega_power(e: Ord) -> Ordinal:
    return Ordinal._from_canonical(((_coerce(e), 1),))


# Notation ---------------------------------------------------------------


def to_str(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for exp, coef in a.terms:
        if not exp.terms:
            parts.append(str(coef))
            continue
        if exp == ONE:
            atom = "w"
        elif exp.is_finite() or exp == OMEGA:
            atom = "w^" + to_str(exp)
        else:
            atom = "w^(" + to_str(exp) + ")"
        parts.append(atom if coef == 1 else f"{atom}*{coef}")
    return " + ".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise OrdinalSyntaxError(message, self.text, self.pos)

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def nat(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def ord(self) -> Ordinal:
        if self.peek("0") and not self._digit_at(self.pos + 1):
            self.pos += 1
            return ZERO
        terms = [self.term()]
        while self.peek(" + "):
            self.pos += 3
            terms.append(self.term())
        return Ordinal(terms)

    def _digit_at(self, i: int) -> bool:
        return i < len(self.text) and self.text[i].isdigit()

    def term(self) -> Tuple[Ordinal, int]:
        exp, coef = self.atom()
        if self.peek("*"):
            self.pos += 1
            start = self.pos
            k = self.nat()
            if k < 1:
                self.pos = start
                self.error("coefficient must be >= 1")
            coef *= k
        return exp, coef

    def atom(self) -> Tuple[Ordinal, int]:
        if self.peek("w^"):
            self.pos += 2
            return self.factor(), 1
        if self.peek("w"):
            self.pos += 1
            return ONE, 1
        start = self.pos
        n = self.nat()
        if n < 1:
            self.pos = start
            self.error("zero is not a term")
        return ZERO, n

    def factor(self) -> Ordinal:
        if self.peek("("):
            self.pos += 1
            inner = self.ord()
            self.expect(")")
            return inner
        if self.peek("w"):
            self.pos += 1
            return OMEGA
        return Ordinal.from_int(self.nat())


def parse(text: str) -> Ordinal:
    """Parse ordinal notation; non-canonical input is normalized."""
    p = _Parser(text)
    result = p.ord()
    if p.pos != len(text):
        p.error("unexpected trailing input")
    return result
