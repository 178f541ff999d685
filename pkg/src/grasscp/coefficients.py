"""Exact scalars over Q or F_p, and sparse commutative polynomials in t1, t2, ...

Scalars are plain Python values: ``int``/``Fraction`` in characteristic 0 and
``int`` residues in ``0..p-1`` otherwise.  A :class:`FieldSpec` knows how to
bring any integer or fraction into canonical form for its field.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Scalar = Union[int, Fraction]
# sparse exponent vector: ((index, exponent), ...) with increasing indices, exponents >= 1
Monomial = Tuple[Tuple[int, int], ...]


class OutOfScopeError(ValueError):
    """Raised for characteristic 2 inputs, which the library does not handle."""


class FieldMismatchError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: ``characteristic`` 0 means Q, otherwise F_p for an odd prime p."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        p = self.characteristic
        if p == 2:
            raise OutOfScopeError("characteristic 2 is out of scope")
        if p < 0 or (p != 0 and not _is_prime(p)):
            raise ValueError(f"characteristic must be 0 or an odd prime, got {p}")

    @property
    def p(self) -> int:
        return self.characteristic

    def reduce(self, x: Scalar) -> Scalar:
        """Canonical representative of ``x`` in this field."""
        p = self.characteristic
        if p == 0:
            if type(x) is Fraction and x.denominator == 1:
                return x.numerator
            return x
        if type(x) is Fraction:
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{p}")
            return x.numerator * pow(den, -1, p) % p
        return x % p

    def inv(self, x: Scalar) -> Scalar:
        x = self.reduce(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return self.reduce(Fraction(1) / x)
        return pow(x, -1, self.characteristic)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.reduce(self.reduce(a) * self.inv(b))

    def elements(self) -> Iterator[int]:
        """All residues for F_p; small integers 0, 1, -1, 2, -2, ... for Q."""
        if self.characteristic:
            return iter(range(self.characteristic))
        return itertools.chain([0], itertools.chain.from_iterable((k, -k) for k in itertools.count(1)))

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"


QQ = FieldSpec(0)


def format_scalar(x: Scalar) -> str:
    if type(x) is Fraction:
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return str(x)


_SCALAR_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_scalar(text: str, field: FieldSpec = QQ) -> Scalar:
    m = _SCALAR_RE.match(text)
    if not m:
        raise ValueError(f"not a scalar: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ZeroDivisionError(text)
    return field.reduce(Fraction(num, den))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        ia, ea = a[i]
        ib, eb = b[j]
        if ia == ib:
            out.append((ia, ea + eb))
            i += 1
            j += 1
        elif ia < ib:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


class CoeffPoly:
    """Sparse polynomial in commuting indeterminates ``t_i`` over a :class:`FieldSpec`.

    Immutable.  ``terms`` maps a sparse exponent vector to a nonzero scalar.
    Integers (and Fractions) are accepted as operands and coerced.
    """

    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None, field: FieldSpec = QQ):
        self.field = field
        clean: Dict[Monomial, Scalar] = {}
        if terms:
            for mono, c in terms.items():
                mono = _canonical_monomial(mono)
                c = field.reduce(c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Scalar], field: FieldSpec) -> "CoeffPoly":
        obj = cls.__new__(cls)
        obj.field = field
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Scalar, field: FieldSpec = QQ) -> "CoeffPoly":
        return cls({(): c}, field)

    @classmethod
    def var(cls, index: int, field: FieldSpec = QQ) -> "CoeffPoly":
        return cls._raw({((index, 1),): 1}, field)

    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[Monomial, Scalar]]:
        return self._terms.items()

    def indeterminates(self) -> set:
        return {i for mono in self._terms for i, _ in mono}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _coerce(self, other) -> "CoeffPoly":
        if isinstance(other, CoeffPoly):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return CoeffPoly({(): other}, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        red = self.field.reduce
        for mono, c in other._terms.items():
            v = red(out.get(mono, 0) + c)
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return CoeffPoly._raw(out, self.field)

    __radd__ = __add__

    def __neg__(self) -> "CoeffPoly":
        red = self.field.reduce
        return CoeffPoly._raw({m: red(-c) for m, c in self._terms.items()}, self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c0 = self.field.reduce(other)
            if not c0:
                return CoeffPoly._raw({}, self.field)
            red = self.field.reduce
            return CoeffPoly._raw({m: red(c * c0) for m, c in self._terms.items()}, self.field)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: Dict[Monomial, Scalar] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                key = _mono_mul(ma, mb)
                acc[key] = acc.get(key, 0) + ca * cb
        red = self.field.reduce
        out = {}
        for k, v in acc.items():
            v = red(v)
            if v:
                out[k] = v
        return CoeffPoly._raw(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CoeffPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = CoeffPoly.constant(1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CoeffPoly({(): other}, self.field)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.field == other.field and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self._terms.items())))
        return self._hash

    def evaluate(self, point: Mapping[int, Scalar]) -> Scalar:
        """Substitute scalars for indeterminates; missing indeterminates count as 0."""
        total = 0
        for mono, c in self._terms.items():
            term = c
            for i, e in mono:
                v = point.get(i, 0)
                if not v:
                    term = 0
                    break
                term = term * v**e
            total += term
        return self.field.reduce(total)

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_items():
            factors = [f"t{i}" if e == 1 else f"t{i}^{e}" for i, e in mono]
            neg = self.field.characteristic == 0 and c < 0
            mag = -c if neg else c
            if not factors:
                body = format_scalar(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = format_scalar(mag) + "*" + "*".join(factors)
            parts.append(("-" if neg else "+", body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"CoeffPoly({self})"


def _canonical_monomial(mono) -> Monomial:
    merged: Dict[int, int] = {}
    for i, e in mono:
        if e < 0:
            raise ValueError("negative exponent")
        if e:
            merged[i] = merged.get(i, 0) + e
    return tuple(sorted(merged.items()))


def cp_mul(a: CoeffPoly, b: CoeffPoly) -> CoeffPoly:
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")
    return a * b


def cp_is_zero(a: CoeffPoly) -> bool:
    return a.is_zero()


class IndeterminateSource:
    """Hands out indices for fresh indeterminates; never repeats within one source."""

    def __init__(self, start: int = 0):
        self._next = start

    def fresh(self) -> int:
        i = self._next
        self._next += 1
        return i

    def block(self, size: int) -> int:
        """Reserve ``size`` consecutive indices and return the first."""
        base = self._next
        self._next += size
        return base

    @property
    def used(self) -> int:
        return self._next
