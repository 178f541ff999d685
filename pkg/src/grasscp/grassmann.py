"""Finite-dimensional Grassmann algebras G(m) (unitary) and G_0(m) (nonunitary).

A basis monomial e_{i1}...e_{ik} (i1 < ... < ik) is encoded as the bitmask with
bits ``i1-1, ..., ik-1`` set; the empty mask is the unit.  Coefficients are
field scalars or :class:`~grasscp.coefficients.CoeffPoly` values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

from .coefficients import (
    QQ,
    CoeffPoly,
    FieldSpec,
    IndeterminateSource,
    Scalar,
    format_scalar,
    parse_scalar,
)

Coeff = Union[int, Fraction, CoeffPoly]
MAX_GENERATORS = 62


class AlgebraMismatchError(ValueError):
    pass


class NonunitaryError(ValueError):
    """An operation would produce a unit (scalar part) in G_0(m)."""


@dataclass(frozen=True)
class AlgebraSpec:
    m: int
    unital: bool = True
    field: FieldSpec = QQ

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.m > MAX_GENERATORS:
            raise ValueError(f"m must be <= {MAX_GENERATORS}")

    @property
    def p(self) -> int:
        return self.field.characteristic

    @property
    def top_mask(self) -> int:
        return (1 << self.m) - 1

    def basis_masks(self) -> List[int]:
        """All basis masks in canonical order; the unit is included only for G(m)."""
        masks = range(0 if self.unital else 1, 1 << self.m)
        return sorted(masks, key=_mask_key)

    def __str__(self) -> str:
        name = "G" if self.unital else "G0"
        return f"{name}({self.m}) over {self.field}"


def mask_to_indices(mask: int) -> Tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"generator index must be positive, got {i}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated generator e{i}")
        mask |= bit
    return mask


def _mask_key(mask: int):
    return (mask.bit_count(), mask_to_indices(mask))


@lru_cache(maxsize=1 << 16)
def mask_sign(a: int, b: int) -> int:
    """Sign of e_a * e_b = sign * e_{a|b} for disjoint masks: (-1)^#{(s,t): s in a, t in b, s > t}."""
    inversions = 0
    while b:
        low = b & -b
        inversions += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return -1 if inversions & 1 else 1


def _reduce_terms(terms: Dict[int, Coeff], field: FieldSpec) -> Dict[int, Coeff]:
    out = {}
    red = field.reduce
    for k, v in terms.items():
        if not isinstance(v, CoeffPoly):
            v = red(v)
        if v:
            out[k] = v
    return out


def mul_terms(a: Mapping[int, Coeff], b: Mapping[int, Coeff]) -> Dict[int, Coeff]:
    """Unreduced product of two coefficient maps."""
    acc: Dict[int, Coeff] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            if ma & mb:
                continue
            key = ma | mb
            term = ca * cb
            if mask_sign(ma, mb) < 0:
                term = -term
            prev = acc.get(key)
            acc[key] = term if prev is None else prev + term
    return acc


class GrassmannElement:
    """Immutable element of G(m) or G_0(m)."""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: AlgebraSpec, terms: Mapping[int, Coeff] | None = None):
        self.algebra = algebra
        top = algebra.top_mask
        clean = _reduce_terms(dict(terms or {}), algebra.field)
        for mask, c in clean.items():
            if mask & ~top or mask < 0:
                raise ValueError(f"subset {mask_to_indices(mask)} not inside 1..{algebra.m}")
            if mask == 0 and not algebra.unital:
                raise NonunitaryError("nonunitary element cannot carry a scalar part")
            if isinstance(c, CoeffPoly) and c.field != algebra.field:
                raise AlgebraMismatchError("coefficient field differs from algebra field")
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, algebra: AlgebraSpec, terms: Dict[int, Coeff]) -> "GrassmannElement":
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, algebra: AlgebraSpec) -> "GrassmannElement":
        return cls._raw(algebra, {})

    @classmethod
    def one(cls, algebra: AlgebraSpec) -> "GrassmannElement":
        if not algebra.unital:
            raise NonunitaryError("G_0(m) has no unit")
        return cls._raw(algebra, {0: 1})

    @classmethod
    def scalar(cls, algebra: AlgebraSpec, c: Coeff) -> "GrassmannElement":
        return cls(algebra, {0: c})

    @classmethod
    def gen(cls, algebra: AlgebraSpec, i: int) -> "GrassmannElement":
        if not 1 <= i <= algebra.m:
            raise ValueError(f"e{i} is not a generator of {algebra}")
        return cls._raw(algebra, {1 << (i - 1): 1})

    @classmethod
    def basis(cls, algebra: AlgebraSpec, indices: Iterable[int], coeff: Coeff = 1) -> "GrassmannElement":
        """``coeff * e_{i1} e_{i2} ...`` for the given (not necessarily sorted) indices."""
        indices = list(indices)
        sign = 1
        mask = 0
        for i in indices:
            bit = indices_to_mask([i])
            if mask & bit:
                return cls.zero(algebra)
            sign *= mask_sign(mask, bit)
            mask |= bit
        return cls(algebra, {mask: coeff if sign > 0 else -coeff})

    @classmethod
    def from_subsets(cls, algebra: AlgebraSpec, terms: Mapping[Tuple[int, ...], Coeff]) -> "GrassmannElement":
        out: Dict[int, Coeff] = {}
        for idx, c in terms.items():
            elem = cls.basis(algebra, idx, c)
            for k, v in elem._terms.items():
                out[k] = out.get(k, 0) + v
        return cls(algebra, out)

    # accessors ----------------------------------------------------------
    @property
    def terms(self) -> Dict[int, Coeff]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, indices: Iterable[int] = ()) -> Coeff:
        return self._terms.get(indices_to_mask(indices), 0)

    def sorted_items(self) -> List[Tuple[int, Coeff]]:
        return sorted(self._terms.items(), key=lambda kv: _mask_key(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "GrassmannElement") -> None:
        if self.algebra != other.algebra:
            raise AlgebraMismatchError(f"{self.algebra} vs {other.algebra}")

    def _lift(self, other) -> "GrassmannElement":
        if isinstance(other, GrassmannElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, CoeffPoly)):
            return GrassmannElement.scalar(self.algebra, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out[k] + v if k in out else v
        return GrassmannElement._raw(self.algebra, _reduce_terms(out, self.algebra.field))

    __radd__ = __add__

    def __neg__(self) -> "GrassmannElement":
        return GrassmannElement._raw(
            self.algebra, _reduce_terms({k: -v for k, v in self._terms.items()}, self.algebra.field)
        )

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Coeff) -> "GrassmannElement":
        return GrassmannElement._raw(
            self.algebra, _reduce_terms({k: v * c for k, v in self._terms.items()}, self.algebra.field)
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly)):
            return self.scale(other)
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        self._check(other)
        return GrassmannElement._raw(
            self.algebra, _reduce_terms(mul_terms(self._terms, other._terms), self.algebra.field)
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "GrassmannElement":
        return g_power(self, n)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self._terms
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.algebra, frozenset(self._terms.items())))
        return self._hash

    def map_coefficients(self, fn) -> "GrassmannElement":
        return GrassmannElement(self.algebra, {k: fn(v) for k, v in self._terms.items()})

    def __str__(self) -> str:
        return format_grassmann(self)

    def __repr__(self) -> str:
        return f"GrassmannElement({self.algebra.m}, {'unital' if self.algebra.unital else 'nonunital'}, {self})"


@dataclass(frozen=True)
class ParityPair:
    even: GrassmannElement
    odd: GrassmannElement


def g_mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    return a * b


def parity_split(a: GrassmannElement) -> ParityPair:
    even = {k: v for k, v in a.items() if k.bit_count() % 2 == 0}
    odd = {k: v for k, v in a.items() if k.bit_count() % 2 == 1}
    return ParityPair(GrassmannElement._raw(a.algebra, even), GrassmannElement._raw(a.algebra, odd))


def g_power(a: GrassmannElement, n: int) -> GrassmannElement:
    if n < 0:
        raise ValueError("negative exponent")
    if n == 0:
        return GrassmannElement.one(a.algebra)
    result = a
    for _ in range(n - 1):
        result = result * a
    return result


def g_commutator(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    return a * b - b * a


def g_circle(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    return a * b + b * a


def support(a: GrassmannElement) -> frozenset:
    mask = 0
    for k in a._terms:
        mask |= k
    return frozenset(mask_to_indices(mask))


def is_central_element(a: GrassmannElement) -> bool:
    """True iff ``a`` commutes with every generator e_i, i <= m."""
    for i in range(1, a.algebra.m + 1):
        bit = 1 << (i - 1)
        for mask, c in a._terms.items():
            # e_S e_i - e_i e_S = (sign(S,i) - sign(i,S)) e_{S+i}; distinct masks never collide
            if mask & bit or mask.bit_count() % 2 == 0:
                continue
            return False
    return True


def commutes_with_basis(a: GrassmannElement) -> bool:
    """Brute-force centrality: compare ``a*b`` and ``b*a`` for every basis element b."""
    for mask in range(1 << a.algebra.m):
        b = GrassmannElement._raw(a.algebra, {mask: 1})
        if a * b != b * a:
            return False
    return True


def generic_element(algebra: AlgebraSpec, fresh: IndeterminateSource | None = None) -> GrassmannElement:
    """Element whose coefficient at basis mask S is the indeterminate t_{base+S}."""
    fresh = fresh or IndeterminateSource()
    base = fresh.block(1 << algebra.m)
    start = 0 if algebra.unital else 1
    terms = {mask: CoeffPoly.var(base + mask, algebra.field) for mask in range(start, 1 << algebra.m)}
    return GrassmannElement._raw(algebra, terms)


# text form ----------------------------------------------------------------

def _format_coeff(c: Coeff, field: FieldSpec) -> Tuple[bool, str]:
    if isinstance(c, CoeffPoly):
        return False, f"({c})"
    if field.characteristic == 0 and c < 0:
        return True, format_scalar(-c)
    return False, format_scalar(c)


def format_grassmann(a: GrassmannElement) -> str:
    if not a._terms:
        return "0"
    pieces = []
    for mask, c in a.sorted_items():
        neg, cs = _format_coeff(c, a.algebra.field)
        if mask == 0:
            body = cs
        else:
            blade = "e{" + ",".join(map(str, mask_to_indices(mask))) + "}"
            body = blade if cs == "1" else f"{cs}*{blade}"
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


_TERM_RE = re.compile(
    r"\s*(?:(?P<coef>\d+(?:\s*/\s*\d+)?)\s*(?:\*\s*)?)?(?:e\{(?P<idx>[\d\s,]*)\})?\s*"
)


def parse_grassmann(text: str, algebra: AlgebraSpec) -> GrassmannElement:
    """Inverse of :func:`format_grassmann` for scalar coefficients."""
    s = text.strip()
    if s == "0":
        return GrassmannElement.zero(algebra)
    pos = 0
    sign = 1
    out: Dict[int, Coeff] = {}
    expect_term = True
    while pos < len(s):
        ch = s[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "+-":
            if expect_term and pos != 0 and ch == "+":
                raise ValueError(f"unexpected '+' at position {pos}")
            sign = -sign if ch == "-" else sign
            pos += 1
            expect_term = True
            continue
        if not expect_term:
            raise ValueError(f"expected '+' or '-' at position {pos}")
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("idx") is None):
            raise ValueError(f"cannot parse Grassmann term at position {pos}")
        coef = parse_scalar(m.group("coef"), algebra.field) if m.group("coef") else 1
        idx = m.group("idx")
        indices = [int(t) for t in idx.split(",") if t.strip()] if idx is not None else []
        term = GrassmannElement.basis(algebra, indices, coef)
        for k, v in term._terms.items():
            out[k] = out.get(k, 0) + sign * v
        sign = 1
        expect_term = False
        pos = m.end()
    if expect_term:
        raise ValueError("dangling operator in Grassmann text")
    return GrassmannElement(algebra, out)


def basis_elements(algebra: AlgebraSpec) -> Iterator[GrassmannElement]:
    for mask in algebra.basis_masks():
        yield GrassmannElement._raw(algebra, {mask: 1})
