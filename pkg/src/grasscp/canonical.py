"""Straightening modulo T^(3) onto the spanning set SS, and the order on SS.

Modulo the T-ideal generated by [[x1,x2],x3], commutators are central and a
product of commutators of single letters is alternating in its letters.  So
every word reduces to a signed sum of ``m * C(S)`` where ``m`` is a sorted word
and ``C(S) = [x_s1,x_s2][x_s3,x_s4]...`` for an increasing index set S.  Letters
of ``m`` lying in S become the exponents attached to the end factors.
"""

from __future__ import annotations

import bisect
import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .coefficients import QQ, FieldSpec, Scalar, format_scalar
from .free_algebra import NCPoly, Word, format_word, nc_commutator

Pair = Tuple[int, int, int, int]  # (j_odd, j_even, beta_odd, beta_even)


@dataclass(frozen=True, order=False)
class SSElement:
    """``x_{i1}^{a1}...x_{it}^{at} * prod_r [x_{j(2r-1)}, x_{j(2r)}] x_{j(2r-1)}^{b} x_{j(2r)}^{b'}``."""

    beginning: Tuple[Tuple[int, int], ...] = ()
    end: Tuple[Pair, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "beginning", tuple(tuple(b) for b in self.beginning))
        object.__setattr__(self, "end", tuple(tuple(e) for e in self.end))
        if not self.beginning and not self.end:
            raise ValueError("an SS element needs a nonempty beginning or end")
        bvars = [i for i, _ in self.beginning]
        if any(a <= 0 for a, b in zip(bvars, bvars[1:]) for a in [b - a]) or any(i < 1 for i in bvars):
            raise ValueError("beginning indices must be positive and strictly increasing")
        if any(a < 1 for _, a in self.beginning):
            raise ValueError("beginning exponents must be >= 1")
        evars = [j for j1, j2, _, _ in self.end for j in (j1, j2)]
        if any(b <= a for a, b in zip(evars, evars[1:])) or any(j < 1 for j in evars):
            raise ValueError("end indices must be positive and strictly increasing")
        if any(b1 < 0 or b2 < 0 for _, _, b1, b2 in self.end):
            raise ValueError("end exponents must be >= 0")
        if set(bvars) & set(evars):
            raise ValueError("beginning and end share a variable")

    @classmethod
    def from_parts(cls, beginning: Mapping[int, int] | Iterable[Tuple[int, int]] = (), end: Iterable[Pair] = ()):
        if isinstance(beginning, Mapping):
            beginning = beginning.items()
        return cls(tuple(sorted(beginning)), tuple(end))

    @property
    def lbeg(self) -> int:
        return len(self.beginning)

    @property
    def lend(self) -> int:
        return len(self.end)

    @property
    def beginning_vars(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.beginning)

    @property
    def end_vars(self) -> Tuple[int, ...]:
        return tuple(j for j1, j2, _, _ in self.end for j in (j1, j2))

    def var_degrees(self) -> Dict[int, int]:
        degs = dict(self.beginning)
        for j1, j2, b1, b2 in self.end:
            degs[j1] = b1 + 1
            degs[j2] = b2 + 1
        return degs

    def degree_vector(self) -> Tuple[int, ...]:
        degs = self.var_degrees()
        return tuple(degs.get(i, 0) for i in range(1, max(degs) + 1))

    @property
    def degree(self) -> int:
        return sum(a for _, a in self.beginning) + sum(2 + b1 + b2 for _, _, b1, b2 in self.end)

    def exponents(self) -> List[int]:
        """Every exponent of an explicit power factor x_i^a (a >= 1)."""
        out = [a for _, a in self.beginning]
        out += [b for _, _, b1, b2 in self.end for b in (b1, b2) if b > 0]
        return out

    def to_ncpoly(self, field: FieldSpec = QQ, unital: bool = False) -> NCPoly:
        word: List[int] = []
        for i, a in self.beginning:
            word += [i] * a
        out = NCPoly.word(word, 1, field, True) if word else NCPoly.constant(1, field, True)
        for j1, j2, b1, b2 in self.end:
            xj1 = NCPoly.var(j1, field, True)
            xj2 = NCPoly.var(j2, field, True)
            factor = nc_commutator(xj1, xj2)
            tail = [j1] * b1 + [j2] * b2
            if tail:
                factor = factor * NCPoly.word(tail, 1, field, True)
            out = out * factor
        return out.with_context(unital)

    def __str__(self) -> str:
        parts = [format_word((i,) * a) for i, a in self.beginning]
        for j1, j2, b1, b2 in self.end:
            piece = f"[x{j1},x{j2}]"
            tail = (j1,) * b1 + (j2,) * b2
            if tail:
                piece += "*" + format_word(tail)
            parts.append(piece)
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"SSElement({self})"


# straightening ---------------------------------------------------------------

_State = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (sorted letters, sorted commutator index set)


def _add_pair(S: Tuple[int, ...], a: int, q: int) -> Tuple[Optional[Tuple[int, ...]], int]:
    """C(S) * [x_a, x_q] -> sign * C(S + {a, q}), or (None, 0) when an index repeats."""
    if a in S or q in S:
        return None, 0
    lo, hi = (a, q) if a < q else (q, a)
    sign = 1 if a < q else -1
    inv = sum(1 for s in S if s > lo) + sum(1 for s in S if s > hi)
    if inv & 1:
        sign = -sign
    new = tuple(sorted(S + (lo, hi)))
    return new, sign


def _times_letter(state: Dict[_State, int], a: int) -> Dict[_State, int]:
    out: Dict[_State, int] = {}

    def put(key, c):
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)

    for (letters, S), c in state.items():
        pos = bisect.bisect_right(letters, a)
        put((letters[:pos] + (a,) + letters[pos:], S), c)
        if a in S:
            continue
        # x_q x_a = x_a x_q - [x_a, x_q] for every letter q > a to the left of x_a
        for idx in range(pos, len(letters)):
            q = letters[idx]
            S2, sign = _add_pair(S, a, q)
            if S2 is None:
                continue
            put((letters[:idx] + letters[idx + 1 :], S2), -sign * c)
    return out


@functools.lru_cache(maxsize=1 << 15)
def _straighten_word(w: Word) -> Tuple[Tuple[_State, int], ...]:
    if not w:
        return ((((), ()), 1),)
    head = dict(_straighten_word(w[:-1]))
    return tuple(_times_letter(head, w[-1]).items())


def _state_to_ss(letters: Tuple[int, ...], S: Tuple[int, ...]) -> SSElement:
    counts: Dict[int, int] = {}
    for v in letters:
        counts[v] = counts.get(v, 0) + 1
    beginning = tuple((v, k) for v, k in sorted(counts.items()) if v not in S)
    end = tuple((S[k], S[k + 1], counts.get(S[k], 0), counts.get(S[k + 1], 0)) for k in range(0, len(S), 2))
    return SSElement(beginning, end)


@dataclass(frozen=True)
class NormalForm:
    """A linear combination of SS elements plus, for k_1<X>, a scalar part."""

    terms: Mapping[SSElement, Scalar]
    field: FieldSpec = QQ
    unital: bool = False
    constant: Scalar = 0

    def __post_init__(self) -> None:
        red = self.field.reduce
        clean = {u: red(c) for u, c in self.terms.items() if red(c)}
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "constant", red(self.constant))

    def is_zero(self) -> bool:
        return not self.terms and not self.constant

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return (self.terms, self.constant, self.field, self.unital) == (
            other.terms,
            other.constant,
            other.field,
            other.unital,
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.terms.items()), self.constant, self.field, self.unital))

    def ordered(self) -> List[Tuple[SSElement, Scalar]]:
        """Terms in Venkova-descending order (greatest first)."""
        return sorted(self.terms.items(), key=functools.cmp_to_key(lambda a, b: -venkova_compare(a[0], b[0])))

    def reassemble(self) -> NCPoly:
        out = NCPoly.zero(self.field, True)
        for u, c in self.terms.items():
            out = out + u.to_ncpoly(self.field, True).scale(c)
        if self.constant:
            out = out + NCPoly.constant(self.constant, self.field)
        return out.with_context(self.unital)

    def __str__(self) -> str:
        items: List = [(None, self.constant)] if self.constant else []
        items += self.ordered()
        if not items:
            return "0"
        out = ""
        for k, (u, c) in enumerate(items):
            neg = self.field.characteristic == 0 and c < 0
            mag = -c if neg else c
            if u is None:
                body = format_scalar(mag)
            elif mag == 1:
                body = str(u)
            else:
                body = f"{format_scalar(mag)}*{u}"
            if k == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out


def nf_t3(f: NCPoly) -> NormalForm:
    """Straighten ``f`` modulo T^(3) onto SS (scalar part kept separately)."""
    acc: Dict[_State, Scalar] = {}
    constant: Scalar = 0
    for w, c in f.items():
        if not w:
            constant += c
            continue
        for state, k in _straighten_word(w):
            acc[state] = acc.get(state, 0) + k * c
    terms: Dict[SSElement, Scalar] = {}
    for (letters, S), c in acc.items():
        c = f.field.reduce(c)
        if c:
            terms[_state_to_ss(letters, S)] = c
    return NormalForm(terms, f.field, f.unital, constant)


def congruent_t3(f: NCPoly, g: NCPoly) -> bool:
    return nf_t3(f - g).is_zero()


# Venkova's order ------------------------------------------------------------

def venkova_compare(u: SSElement, v: SSElement) -> int:
    """+1 if u > v, -1 if u < v, 0 if equal."""
    if u == v:
        return 0
    if u.degree != v.degree:
        return 1 if u.degree < v.degree else -1
    if u.lend != v.lend:
        return 1 if u.lend < v.lend else -1
    du, dv = u.var_degrees(), v.var_degrees()
    for i in sorted(set(du) | set(dv)):
        a, b = du.get(i, 0), dv.get(i, 0)
        if a != b:
            return 1 if a < b else -1
    bu, bv = set(u.beginning_vars), set(v.beginning_vars)
    eu, ev = set(u.end_vars), set(v.end_vars)
    for j in sorted(set(du)):
        if (j in bu) != (j in bv):
            if j in eu and j in bv:
                return 1
            if j in ev and j in bu:
                return -1
    raise AssertionError(f"order undecided for {u} and {v}")


def venkova_greater(u: SSElement, v: SSElement) -> str:
    return {1: "greater", -1: "less", 0: "equal"}[venkova_compare(u, v)]


def venkova_condition(u: SSElement, v: SSElement) -> Optional[int]:
    """Which of the four conditions decides between distinct u and v (1..4)."""
    if u == v:
        return None
    if u.degree != v.degree:
        return 1
    if u.lend != v.lend:
        return 2
    if u.var_degrees() != v.var_degrees():
        return 3
    return 4


venkova_key = functools.cmp_to_key(venkova_compare)


# enumeration and predicates -------------------------------------------------

def _half_bound(m: int) -> Fraction:
    return Fraction(m + 1, 2)


def enumerate_ss(variables: Sequence[int], max_degree: int, min_degree: int = 1) -> List[SSElement]:
    """Every SS element over ``variables`` with degree in [min_degree, max_degree]."""
    variables = sorted(set(variables))
    out: List[SSElement] = []
    for used_mask in range(1, 1 << len(variables)):
        used = [variables[k] for k in range(len(variables)) if used_mask >> k & 1]
        if len(used) > max_degree:
            continue
        for end_size in range(0, len(used) + 1, 2):
            for end_vars in itertools.combinations(used, end_size):
                beg_vars = [v for v in used if v not in end_vars]
                base = len(beg_vars) + end_size
                if base > max_degree:
                    continue
                slack = max_degree - base
                n_beg, n_end = len(beg_vars), end_size
                for extra in _compositions_upto(n_beg + n_end, slack):
                    alphas = [1 + e for e in extra[:n_beg]]
                    betas = list(extra[n_beg:])
                    u = SSElement(
                        tuple(zip(beg_vars, alphas)),
                        tuple(
                            (end_vars[k], end_vars[k + 1], betas[k], betas[k + 1])
                            for k in range(0, n_end, 2)
                        ),
                    )
                    if u.degree >= min_degree:
                        out.append(u)
    return out


def _compositions_upto(parts: int, total: int) -> Iterator[Tuple[int, ...]]:
    """All tuples of ``parts`` nonnegative integers with sum <= total."""
    if parts == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _compositions_upto(parts - 1, total - first):
            yield (first,) + rest


def in_bss(u: SSElement, m: int, p: int = 0) -> bool:
    half = _half_bound(m)
    exps = u.exponents()
    if p > 2 and any(a > p - 1 for a in exps):
        return False
    if any(a > half for a in exps):
        return False
    return u.degree <= m and u.degree - u.lend <= half


def enumerate_bss(m: int, p: int = 0, max_degree: int | None = None, variables: Sequence[int] | None = None) -> List[SSElement]:
    """Elements of BSS(m) over a finite variable window, greatest first."""
    if max_degree is None:
        max_degree = m
    if max_degree < 1:
        raise ValueError("degree bound must be >= 1")
    if variables is None:
        variables = range(1, min(max_degree, m) + 1)
    cands = enumerate_ss(variables, min(max_degree, m))
    return sorted((u for u in cands if in_bss(u, m, p)), key=venkova_key, reverse=True)


def is_extremal(u: SSElement, m: int, p: int = 0) -> bool:
    return in_bss(u, m, p) and 2 * (u.degree - u.lend) == m + 1


def in_R1(u: SSElement, p: int = 0) -> bool:
    if u.lbeg == 0:
        return False
    if p > 2:
        return any(a % p for _, a in u.beginning)
    return True


def in_M_prime(u: SSElement, t: int, n: int, p: int = 0) -> bool:
    """u in M'_{t,n}(r) for r = u's own variable degrees."""
    if not 1 <= t <= n or u.lbeg == 0:
        return False
    degs = u.var_degrees()
    if set(degs) != set(range(1, n + 1)):
        return False
    if t not in u.beginning_vars:
        return False
    if p > 2 and degs[t] % p == 0:
        return False
    return True


def in_M(u: SSElement, t: int, n: int, m: int, p: int = 0) -> bool:
    """u in M_{t,n}: x_t is the last beginning variable, all of x_1..x_n occur, exponents capped."""
    if not 1 <= t <= n:
        return False
    bvars = u.beginning_vars
    if not bvars or bvars[-1] != t:
        return False
    if set(bvars) | set(u.end_vars) != set(range(1, n + 1)):
        return False
    if u.lend == 0 and t != n:
        return False
    half = _half_bound(m)
    for _, a in u.beginning:
        if not 1 <= a <= half or (p > 2 and a > p - 1):
            return False
    for _, _, b1, b2 in u.end:
        for b in (b1, b2):
            if b > half or (p > 2 and b > p - 1):
                return False
    return True


def in_M_family(u: SSElement, t: int, n: int, m: int, p: int = 0, variant: str = "M") -> bool:
    if variant in ("M'", "M_prime", "unitary"):
        return in_M_prime(u, t, n, p)
    if variant in ("M", "nonunitary"):
        return in_M(u, t, n, m, p)
    raise ValueError(f"unknown variant {variant!r}")


# closed-form circle chain --------------------------------------------------

def circle_expansion(n: int, field: FieldSpec = QQ, unital: bool = False) -> NCPoly:
    """sum_s (-1)^s 2^(n-1-s) sum_{|J|=2s} P_n(J) Q(J), congruent to x1 o ... o xn mod T^(3)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = NCPoly.zero(field, True)
    for s in range(n // 2 + 1):
        coeff = (-1) ** s * 2 ** (n - 1 - s)
        for J in itertools.combinations(range(1, n + 1), 2 * s):
            rest = [i for i in range(1, n + 1) if i not in J]
            term = NCPoly.word(rest, 1, field, True) if rest else NCPoly.constant(1, field)
            for k in range(0, 2 * s, 2):
                term = term * nc_commutator(NCPoly.var(J[k], field, True), NCPoly.var(J[k + 1], field, True))
            out = out + term.scale(coeff)
    return out.with_context(unital)
