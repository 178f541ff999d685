"""Noncommutative polynomials over X = {x1, x2, ...} in k_0<X> or k_1<X>.

Words are tuples of positive variable indices; the empty word is the unit and
is only legal in the unital context.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .coefficients import QQ, FieldMismatchError, FieldSpec, Scalar, format_scalar
from .grassmann import AlgebraMismatchError, GrassmannElement, NonunitaryError, mul_terms, _reduce_terms

Word = Tuple[int, ...]


class ContextError(ValueError):
    """Mixing k_0<X> and k_1<X>, or a unit appearing in k_0<X>."""


class UnassignedVariableError(KeyError):
    pass


def word_key(w: Word):
    """Degree-lexicographic order on words."""
    return (len(w), w)


class NCPoly:
    """Immutable sparse element of the free associative algebra."""

    __slots__ = ("field", "unital", "_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Scalar] | None = None, field: FieldSpec = QQ, unital: bool = False):
        self.field = field
        self.unital = unital
        clean: Dict[Word, Scalar] = {}
        red = field.reduce
        for w, c in (terms or {}).items():
            w = tuple(w)
            if any((not isinstance(i, int)) or i < 1 for i in w):
                raise ValueError(f"bad word {w!r}")
            c = red(clean.get(w, 0) + c)
            if c:
                clean[w] = c
            else:
                clean.pop(w, None)
        if not unital and () in clean:
            raise ContextError("constant term in nonunital context")
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Word, Scalar], field: FieldSpec, unital: bool) -> "NCPoly":
        obj = cls.__new__(cls)
        obj.field = field
        obj.unital = unital
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def var(cls, i: int, field: FieldSpec = QQ, unital: bool = False) -> "NCPoly":
        if i < 1:
            raise ValueError("variable indices start at 1")
        return cls._raw({(i,): 1}, field, unital)

    @classmethod
    def word(cls, w: Iterable[int], coeff: Scalar = 1, field: FieldSpec = QQ, unital: bool = False) -> "NCPoly":
        return cls({tuple(w): coeff}, field, unital)

    @classmethod
    def constant(cls, c: Scalar, field: FieldSpec = QQ, unital: bool = True) -> "NCPoly":
        return cls({(): c}, field, unital)

    @classmethod
    def zero(cls, field: FieldSpec = QQ, unital: bool = False) -> "NCPoly":
        return cls._raw({}, field, unital)

    def like(self, terms: Mapping[Word, Scalar]) -> "NCPoly":
        return NCPoly(terms, self.field, self.unital)

    def with_context(self, unital: bool) -> "NCPoly":
        return NCPoly(self._terms, self.field, unital)

    # accessors ----------------------------------------------------------
    @property
    def terms(self) -> Dict[Word, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_items(self) -> List[Tuple[Word, Scalar]]:
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def coefficient(self, w: Iterable[int]) -> Scalar:
        return self._terms.get(tuple(w), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def variables(self) -> List[int]:
        return sorted({i for w in self._terms for i in w})

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def degree_in(self, i: int) -> int:
        return max((w.count(i) for w in self._terms), default=0)

    def constant_term(self) -> Scalar:
        return self._terms.get((), 0)

    def is_multihomogeneous(self) -> bool:
        return len({multidegree(w) for w in self._terms}) <= 1

    def multidegree(self) -> Tuple[int, ...]:
        degs = {multidegree(w) for w in self._terms}
        if len(degs) != 1:
            raise ValueError("polynomial is not multihomogeneous")
        return degs.pop()

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "NCPoly") -> None:
        if self.unital != other.unital:
            raise ContextError("cannot mix unital and nonunital polynomials")
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def _lift(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            if not self.unital and other != 0:
                raise ContextError("constant term in nonunital context")
            return NCPoly({(): other} if other else {}, self.field, self.unital)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        red = self.field.reduce
        for w, c in other._terms.items():
            v = red(out.get(w, 0) + c)
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly._raw(out, self.field, self.unital)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        red = self.field.reduce
        return NCPoly._raw({w: red(-c) for w, c in self._terms.items()}, self.field, self.unital)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "NCPoly":
        red = self.field.reduce
        c = red(c)
        if not c:
            return NCPoly._raw({}, self.field, self.unital)
        return NCPoly._raw({w: red(v * c) for w, v in self._terms.items()}, self.field, self.unital)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._check(other)
        acc: Dict[Word, Scalar] = {}
        for wa, ca in self._terms.items():
            for wb, cb in other._terms.items():
                w = wa + wb
                acc[w] = acc.get(w, 0) + ca * cb
        red = self.field.reduce
        out = {}
        for w, c in acc.items():
            c = red(c)
            if c:
                out[w] = c
        return NCPoly._raw(out, self.field, self.unital)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "NCPoly":
        if n < 0:
            raise ValueError("negative exponent")
        if n == 0:
            if not self.unital:
                raise ContextError("x^0 = 1 is not available in k_0<X>")
            return NCPoly._raw({(): 1}, self.field, True)
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self._terms
            return self._terms == {(): self.field.reduce(other)}
        if not isinstance(other, NCPoly):
            return NotImplemented
        return (self.unital, self.field, self._terms) == (other.unital, other.field, other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.unital, self.field, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"NCPoly({self}, {'unital' if self.unital else 'nonunital'}, {self.field})"


def multidegree(w: Word) -> Tuple[int, ...]:
    if not w:
        return ()
    degs = [0] * max(w)
    for i in w:
        degs[i - 1] += 1
    return tuple(degs)


def format_word(w: Word) -> str:
    parts = []
    for var, run in itertools.groupby(w):
        k = len(list(run))
        parts.append(f"x{var}" if k == 1 else f"x{var}^{k}")
    return "*".join(parts)


def format_poly(f: NCPoly) -> str:
    if not f._terms:
        return "0"
    chunks = []
    for w, c in f.sorted_items():
        neg = f.field.characteristic == 0 and c < 0
        mag = -c if neg else c
        if not w:
            body = format_scalar(mag)
        elif mag == 1:
            body = format_word(w)
        else:
            body = f"{format_scalar(mag)}*{format_word(w)}"
        chunks.append((neg, body))
    out = ("-" if chunks[0][0] else "") + chunks[0][1]
    for neg, body in chunks[1:]:
        out += (" - " if neg else " + ") + body
    return out


# named operations -----------------------------------------------------------

def nc_add(a: NCPoly, b: NCPoly) -> NCPoly:
    return a + b


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b


def nc_commutator(a: NCPoly, b: NCPoly, *rest: NCPoly) -> NCPoly:
    """[a, b] = ab - ba; extra arguments nest to the left: [a, b, c] = [[a, b], c]."""
    out = a * b - b * a
    for c in rest:
        out = out * c - c * out
    return out


def nc_circle(a: NCPoly, b: NCPoly, *rest: NCPoly) -> NCPoly:
    """a o b = ab + ba; chains associate to the left."""
    out = a * b + b * a
    for c in rest:
        out = out * c + c * out
    return out


def x(i: int, field: FieldSpec = QQ, unital: bool = False) -> NCPoly:
    """Shorthand for the variable x_i."""
    return NCPoly.var(i, field, unital)


# endomorphisms and evaluation ---------------------------------------------

def substitute(f: NCPoly, s: Mapping[int, NCPoly]) -> NCPoly:
    """Image of ``f`` under the endomorphism x_i -> s[i] (identity on unassigned variables)."""
    for v, img in s.items():
        f._check(img)
    images: Dict[int, Dict[Word, Scalar]] = {}
    for v in f.variables():
        images[v] = dict(s[v]._terms) if v in s else {(v,): 1}
    acc: Dict[Word, Scalar] = defaultdict(int)
    for w, c in f._terms.items():
        partial: Dict[Word, Scalar] = {(): c}
        for letter in w:
            img = images[letter]
            nxt: Dict[Word, Scalar] = defaultdict(int)
            for pw, pc in partial.items():
                for iw, ic in img.items():
                    nxt[pw + iw] += pc * ic
            partial = nxt
            if not partial:
                break
        for pw, pc in partial.items():
            acc[pw] += pc
    return NCPoly(acc, f.field, f.unital)


def evaluate(f: NCPoly, s: Mapping[int, GrassmannElement]) -> GrassmannElement:
    """Homomorphic image of ``f`` in a Grassmann algebra; x_i -> s[i], 1 -> 1."""
    variables = f.variables()
    missing = [v for v in variables if v not in s]
    if missing:
        raise UnassignedVariableError(f"unassigned variables: {', '.join(f'x{v}' for v in missing)}")
    if not s:
        raise UnassignedVariableError("no target algebra: empty assignment")
    algebras = {g.algebra for g in s.values()}
    if len(algebras) != 1:
        raise AlgebraMismatchError("assignment images live in different algebras")
    algebra = algebras.pop()
    if algebra.field != f.field:
        raise FieldMismatchError(f"polynomial over {f.field}, algebra over {algebra.field}")
    if f.unital and not algebra.unital and f.constant_term():
        raise NonunitaryError("unit image in nonunitary algebra")
    return GrassmannElement._raw(algebra, _reduce_terms(evaluate_terms(f, s), algebra.field))


def evaluate_terms(f: NCPoly, s: Mapping[int, GrassmannElement]) -> Dict[int, object]:
    """Unreduced coefficient map of f(s); prefix products are shared between words."""
    cache: Dict[Word, Dict[int, object]] = {(): {0: 1}}

    def prefix(w: Word) -> Dict[int, object]:
        hit = cache.get(w)
        if hit is not None:
            return hit
        head = prefix(w[:-1])
        val = mul_terms(head, s[w[-1]]._terms) if head else {}
        cache[w] = val
        return val

    acc: Dict[int, object] = {}
    for w, c in f._terms.items():
        for mask, v in prefix(w).items():
            term = v * c
            prev = acc.get(mask)
            acc[mask] = term if prev is None else prev + term
    return acc


# structure ------------------------------------------------------------------

def multihomog_components(f: NCPoly) -> List[Tuple[Tuple[int, ...], NCPoly]]:
    groups: Dict[Tuple[int, ...], Dict[Word, Scalar]] = defaultdict(dict)
    for w, c in f._terms.items():
        groups[multidegree(w)][w] = c
    return [
        (deg, NCPoly._raw(terms, f.field, f.unital))
        for deg, terms in sorted(groups.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    ]


def multilinearize(f: NCPoly, variable: int, fresh: Sequence[int] | None = None) -> NCPoly:
    """Full linearization of ``f`` in one variable.

    The d occurrences of x_variable are replaced by x_variable and d-1 fresh
    variables (by default the next indices above every index in ``f``), summed
    over all placements.
    """
    if not f.is_multihomogeneous():
        raise ValueError("multilinearize needs a multihomogeneous polynomial")
    d = f.degree_in(variable)
    if d == 0:
        return f
    if fresh is None:
        top = max(f.variables(), default=0)
        fresh = list(range(top + 1, top + d))
    if len(fresh) != d - 1:
        raise ValueError(f"need {d - 1} fresh variables, got {len(fresh)}")
    if set(fresh) & set(f.variables()):
        raise ValueError("fresh variables collide with variables of f")
    copies = [variable, *fresh]
    acc: Dict[Word, Scalar] = defaultdict(int)
    for w, c in f._terms.items():
        positions = [k for k, letter in enumerate(w) if letter == variable]
        for perm in itertools.permutations(copies):
            nw = list(w)
            for pos, v in zip(positions, perm):
                nw[pos] = v
            acc[tuple(nw)] += c
    return NCPoly(acc, f.field, f.unital)


def multilinearize_all(f: NCPoly) -> Tuple[NCPoly, Dict[int, List[int]]]:
    """Linearize every variable of a multihomogeneous ``f``.

    Returns the multilinear polynomial and, per original variable, the list of
    variables standing for its copies (the original first).
    """
    copies: Dict[int, List[int]] = {}
    out = f
    top = max(f.variables(), default=0)
    for v in f.variables():
        d = f.degree_in(v)
        fresh = list(range(top + 1, top + d))
        top += d - 1
        copies[v] = [v, *fresh]
        if d > 1:
            out = multilinearize(out, v, fresh)
    return out, copies


def is_essential(f: NCPoly) -> bool:
    sets = {frozenset(w) for w in f._terms}
    return len(sets) <= 1
