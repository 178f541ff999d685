"""Named polynomial families and generating sets for identities and central polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .coefficients import OutOfScopeError, FieldSpec, QQ
from .free_algebra import NCPoly, nc_circle, nc_commutator
from .grassmann import AlgebraSpec


def b_m(m: int) -> int:
    return m // 2 + 1


def r_0(m: int, p: int) -> Fraction:
    if p <= 2:
        raise ValueError("r_0 needs an odd prime characteristic")
    return Fraction(m + 1, 2 * (2 * p - 1))


def _v(i: int, field: FieldSpec, unital: bool) -> NCPoly:
    return NCPoly.var(i, field, unital)


def h_j(j: int, field: FieldSpec = QQ, unital: bool = False) -> NCPoly:
    """[x1,x2][x3,x4]...[x_{2j-1},x_{2j}]"""
    if j < 1:
        raise ValueError("j must be >= 1")
    out = None
    for r in range(1, j + 1):
        c = nc_commutator(_v(2 * r - 1, field, unital), _v(2 * r, field, unital))
        out = c if out is None else out * c
    return out


def w_n(n: int, p: int, field: Optional[FieldSpec] = None, unital: bool = False) -> NCPoly:
    """prod_k [x_{2k-1},x_{2k}] x_{2k-1}^{p-1} x_{2k}^{p-1}"""
    if p <= 2:
        raise ValueError("w_n is defined only for odd prime characteristic")
    if n < 1:
        raise ValueError("n must be >= 1")
    field = field or FieldSpec(p)
    out = None
    for k in range(1, n + 1):
        a, b = 2 * k - 1, 2 * k
        c = nc_commutator(_v(a, field, unital), _v(b, field, unital))
        c = c * NCPoly.word([a] * (p - 1) + [b] * (p - 1), 1, field, unital)
        out = c if out is None else out * c
    return out


def circle_chain(n: int, field: FieldSpec = QQ, unital: bool = False, start: int = 1) -> NCPoly:
    """Left-associated x_start o x_{start+1} o ... (n factors)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    xs = [_v(start + i, field, unital) for i in range(n)]
    if n == 1:
        return xs[0]
    return nc_circle(*xs)


@dataclass
class GeneratorSet:
    name: str
    kind: str  # "T-ideal" or "T-space"
    elements: List[NCPoly]
    params: Dict[str, object] = field(default_factory=dict)
    labels: List[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def labelled(self) -> List[Tuple[str, NCPoly]]:
        labels = self.labels or [""] * len(self.elements)
        return list(zip(labels, self.elements))


def _params(spec: AlgebraSpec) -> Dict[str, object]:
    out: Dict[str, object] = {"m": spec.m, "p": spec.p, "unital": spec.unital, "b_m": b_m(spec.m)}
    if spec.p > 2:
        out["r_0"] = r_0(spec.m, spec.p)
    if spec.unital and spec.p:
        out["semantics"] = "infinite field"
    return out


def _check_scope(spec: AlgebraSpec) -> None:
    if spec.p == 2:
        raise OutOfScopeError("characteristic 2 is out of scope")


class _Builder:
    def __init__(self, spec: AlgebraSpec):
        self.field = spec.field
        self.unital = spec.unital
        self.items: List[Tuple[str, NCPoly]] = []

    def x(self, i: int) -> NCPoly:
        return _v(i, self.field, self.unital)

    def word(self, w) -> NCPoly:
        return NCPoly.word(w, 1, self.field, self.unital)

    def chain(self, n: int) -> NCPoly:
        return circle_chain(n, self.field, self.unital)

    def h(self, j: int) -> NCPoly:
        return h_j(j, self.field, self.unital)

    def w(self, n: int) -> NCPoly:
        return w_n(n, self.field.p, self.field, self.unital)

    def add(self, label: str, f: NCPoly) -> None:
        self.items.append((label, f))


def t_ideal_generators(spec: AlgebraSpec) -> GeneratorSet:
    """Generators of the T-ideal of identities of G(m) or G_0(m)."""
    _check_scope(spec)
    m, p = spec.m, spec.p
    B = _Builder(spec)
    B.add("[x1,x2,x3]", nc_commutator(B.x(1), B.x(2), B.x(3)))
    if spec.unital:
        B.add(f"h_{b_m(m)}", B.h(b_m(m)))
    else:
        if p:
            B.add(f"x1^{p}", B.word([1] * p))
        if m % 2 == 0:
            k = m // 2 + 1
            B.add(f"circle chain of length {k}", B.chain(k))
        else:
            k = (m + 1) // 2
            B.add(f"(circle chain of length {k})*x{k + 1}", B.chain(k) * B.x(k + 1))
            B.add(f"x{k + 1}*(circle chain of length {k})", B.x(k + 1) * B.chain(k))
            if p and (m + 1) % (2 * p - 1) == 0:
                r = int(r_0(m, p))
                B.add(f"w_{r}", B.w(r))
    return GeneratorSet(
        name=f"T({spec})",
        kind="T-ideal",
        elements=[f for _, f in B.items],
        params=_params(spec),
        labels=[l for l, _ in B.items],
    )


def cp_generators(spec: AlgebraSpec, verbatim: bool = False) -> GeneratorSet:
    """T-space generators of the central polynomials (identities included).

    For G_0(m) the circle chains have length floor(m/2)+1; ``verbatim=True``
    uses floor(m/2) instead.
    """
    _check_scope(spec)
    m, p = spec.m, spec.p
    if m < 2:
        raise ValueError("central polynomial generators are catalogued for m >= 2")
    B = _Builder(spec)
    B.add("[x1,x2]", B.h(1))
    B.add("[x1,x2][x3,x4]", B.h(2))
    bm = b_m(m)
    params = _params(spec)
    if spec.unital:
        B.add(f"x{2 * bm - 1}*h_{bm - 1}", B.x(2 * bm - 1) * B.h(bm - 1))
        if p:
            B.add(f"x1^{p}", B.word([1] * p))
            for k in range(1, bm):
                B.add(f"x{2 * k + 1}^{p}*w_{k}", B.word([2 * k + 1] * p) * B.w(k))
    else:
        L = m // 2 if verbatim else bm
        params["chain_length"] = L
        B.add(f"circle chain of length {L}", B.chain(L))
        B.add(f"(circle chain of length {L})*x{L + 1}", B.chain(L) * B.x(L + 1))
        if p:
            B.add(f"x1^{p}", B.word([1] * p))
            B.add(f"x2*x1^{p}", B.word([2] + [1] * p))
            r0 = r_0(m, p)
            for k in range(1, int(r0) + 1):
                B.add(f"w_{k}", B.w(k))
            if m % 2 == 1 and r0.denominator == 1:
                r = int(r0)
                B.add(f"x{2 * r + 1}*w_{r}", B.x(2 * r + 1) * B.w(r))
    return GeneratorSet(
        name=f"CP({spec})",
        kind="T-space",
        elements=[f for _, f in B.items],
        params=params,
        labels=[l for l, _ in B.items],
    )
