"""Registered desk-scale checks of the structural facts the library relies on."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional, Sequence

from .canonical import (
    SSElement,
    circle_expansion,
    enumerate_bss,
    enumerate_ss,
    in_bss,
    in_R1,
    is_extremal,
    nf_t3,
    venkova_compare,
    venkova_condition,
)
from .catalog import b_m, circle_chain, cp_generators, h_j, t_ideal_generators
from .coefficients import QQ, FieldSpec
from .decide import (
    CENTRAL,
    IDENTITY,
    NONCENTRAL,
    classify,
    find_noncentral_witness,
    is_identity,
    tspace_member_bounded,
)
from .free_algebra import NCPoly, evaluate, nc_commutator, substitute
from .grassmann import (
    AlgebraSpec,
    GrassmannElement,
    commutes_with_basis,
    format_grassmann,
    g_commutator,
    g_power,
    is_central_element,
    parity_split,
)


@dataclass
class CheckResult:
    name: str
    params: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        out = f"{tag} {self.name}"
        if self.params:
            out += f" [{self.params}]"
        if self.detail:
            out += f" {self.detail}"
        return out


@dataclass
class Check:
    ident: str
    title: str
    run: Callable[..., List[CheckResult]]
    options: Sequence[str] = ()


REGISTRY: Dict[str, Check] = {}


def register(ident: str, title: str, options: Sequence[str] = ()):
    def deco(fn):
        REGISTRY[ident] = Check(ident, title, fn, tuple(options))
        return fn

    return deco


def _spec(m: int, unital: bool, p: int) -> AlgebraSpec:
    return AlgebraSpec(m, unital, FieldSpec(p))


def _x(i: int, unital: bool = False, field: FieldSpec = QQ) -> NCPoly:
    return NCPoly.var(i, field, unital)


def _C(*args: NCPoly) -> NCPoly:
    return nc_commutator(*args)


# identities modulo T^(3) --------------------------------------------------------

def handy_instances() -> List[tuple]:
    """(label, lhs - rhs, exact) with u, v, w, x taken as x1..x4.

    ``exact`` marks the two items that hold in the free algebra itself.
    """
    u, v, w, x = (_x(i) for i in range(1, 5))
    out = [
        ("(i)", _C(u, v * w) - (_C(u, v) * w + v * _C(u, w)), True),
        ("(ii)", _C(u, v * w) - (_C(u, v) * w + _C(u, w) * v + _C(v, _C(u, w))), True),
    ]
    for n in (1, 2, 3):
        vs = [_x(i) for i in range(2, n + 2)]
        lhs = _C(u, _prod(vs))
        rhs = NCPoly.zero()
        for i in range(n):
            rest = [vs[j] for j in range(n) if j != i]
            term = _C(u, vs[i])
            if rest:
                term = term * _prod(rest)
            rhs = rhs + term
        out.append((f"(iii) n={n}", lhs - rhs, False))
    out.append(("(iv)", _C(u, v) * _C(w, x) + _C(u, w) * _C(v, x), False))
    out.append(("(v)", _C(u, v) * _C(u, w), False))
    out.append(("(vi)", _C(u, v) * u * w - _C(u, v) * w * u, False))
    for n in (2, 3):
        x1, x2 = _x(1), _x(2)
        lhs = NCPoly.word([1] * n + [2] * n)
        rhs = (x1 * x2) ** n + _C(x1, x2).scale(comb(n, 2)) * NCPoly.word([1] * (n - 1) + [2] * (n - 1))
        out.append((f"(vii) n={n}", lhs - rhs, False))
    return out


def _prod(factors: Sequence[NCPoly]) -> NCPoly:
    out = factors[0]
    for f in factors[1:]:
        out = out * f
    return out


@register("handy", "commutator calculus modulo T^(3)")
def check_handy() -> List[CheckResult]:
    res = []
    spec = _spec(3, True, 0)
    for label, diff, exact in handy_instances():
        nf_ok = nf_t3(diff).is_zero()
        if exact:
            nf_ok = nf_ok and diff.is_zero()
        gen_ok = is_identity(diff.with_context(True), spec, strategy="generic", engine="expand").is_identity
        res.append(CheckResult(f"handy {label}", "G(3), char 0", nf_ok and gen_ok, f"nf={nf_ok} generic={gen_ok}"))
    return res


# parity facts in G_0(m) ---------------------------------------------------------

def random_element(spec: AlgebraSpec, rng: random.Random, parity: Optional[int] = None, density: float = 0.5) -> GrassmannElement:
    terms = {}
    for mask in spec.basis_masks():
        if parity is not None and mask.bit_count() % 2 != parity:
            continue
        if rng.random() < density:
            terms[mask] = rng.randint(-3, 3)
    return GrassmannElement(spec, terms)


def _power_or_omit(c: GrassmannElement, n: int) -> Optional[GrassmannElement]:
    return None if n == 0 else g_power(c, n)


def _times(*factors: Optional[GrassmannElement]) -> GrassmannElement:
    fs = [f for f in factors if f is not None]
    out = fs[0]
    for f in fs[1:]:
        out = out * f
    return out


@register("useful", "parity decomposition identities in G_0(m)")
def check_useful(samples: int = 100, seed: int = 0) -> List[CheckResult]:
    res = []
    for m in (3, 4):
        for p in (3, 5):
            spec = _spec(m, False, p)
            rng = random.Random(seed * 1000 + m * 10 + p)
            bad = {k: 0 for k in ("ii", "iii", "iv", "v", "vi")}
            for _ in range(samples):
                h = random_element(spec, rng, 1)
                u = random_element(spec, rng, 1)
                if h * u != -(u * h) or h * h:
                    bad["ii"] += 1
                g = random_element(spec, rng)
                c, hh = parity_split(g).even, parity_split(g).odd
                for n in range(1, 7):
                    expect = _power_or_omit(c, n) if n > 1 else c
                    expect = expect + _times(_power_or_omit(c, n - 1), hh).scale(n)
                    if g_power(g, n) != expect:
                        bad["iii"] += 1
                if g_power(g, p):
                    bad["iv"] += 1
                g2 = random_element(spec, rng)
                c2, h2 = parity_split(g2).even, parity_split(g2).odd
                for m1, m2 in itertools.product(range(3), repeat=2):
                    lhs = _times(g_commutator(g, g2), _power_or_omit(g, m1), _power_or_omit(g2, m2))
                    rhs = _times(_power_or_omit(c, m1), _power_or_omit(c2, m2), hh, h2).scale(2)
                    if m1 == 0 and m2 == 0:
                        rhs = (hh * h2).scale(2)
                    if lhs != rhs:
                        bad["v"] += 1
                if g and g_power(g, len(g) + 1):
                    bad["vi"] += 1
            for k, nbad in bad.items():
                res.append(CheckResult(f"useful ({k})", f"G0({m}), p={p}, {samples} samples", nbad == 0, f"failures={nbad}"))
    return res


@register("centre", "centre of G(m) and G_0(m)")
def check_centre(ms: Sequence[int] = (2, 3, 4, 5)) -> List[CheckResult]:
    res = []
    for m in ms:
        for unital in (True, False):
            spec = _spec(m, unital, 0)
            agree = True
            dim = 0
            for mask in spec.basis_masks():
                e = GrassmannElement._raw(spec, {mask: 1})
                fast = is_central_element(e)
                agree = agree and fast == commutes_with_basis(e)
                dim += fast
            expected = (2 ** (m - 1) - 1) + (m % 2) + (1 if unital else 0)
            name = f"{'G' if unital else 'G0'}({m})"
            res.append(
                CheckResult("centre", name, agree and dim == expected, f"agree={agree} dim={dim} expected={expected}")
            )
    return res


# generating sets ---------------------------------------------------------------

@register("t-unitary", "h_{b_m} generates the extra identities of G(m)")
def check_t_unitary(ms: Sequence[int] = (2, 3, 4, 5), chars: Sequence[int] = (0, 3)) -> List[CheckResult]:
    res = []
    for m in ms:
        bm = b_m(m)
        for p in chars:
            spec = _spec(m, True, p)
            f = h_j(bm, spec.field, True)
            ok = is_identity(f, spec, strategy="generic").is_identity
            res.append(CheckResult(f"h_{bm} identity", f"G({m}), p={p}", ok))
        spec = _spec(m, True, 0)
        k = bm - 1
        imgs = {i: GrassmannElement.gen(spec, i) for i in range(1, 2 * k + 1)}
        val = evaluate(h_j(k, QQ, True), imgs)
        expect = GrassmannElement.basis(spec, range(1, 2 * k + 1), 2 ** k)
        res.append(CheckResult(f"h_{k}(e1..e{2 * k})", f"G({m})", val == expect and bool(val), format_grassmann(val)))
    return res


@register("t-nonunitary", "listed generators are identities of G_0(m)")
def check_t_nonunitary(ms: Sequence[int] = (2, 3, 4, 5, 6), chars: Sequence[int] = (0, 3)) -> List[CheckResult]:
    res = []
    cases = [(m, p) for m in ms for p in chars] + [(9, 3)]
    for m, p in cases:
        spec = _spec(m, False, p)
        gens = t_ideal_generators(spec)
        for label, g in gens.labelled():
            r = is_identity(g, spec)
            res.append(CheckResult(f"identity {label}", f"G0({m}), p={p}, {r.strategy}", r.is_identity))
        if (m, p) == (9, 3):
            res.append(CheckResult("w_1 listed", "G0(9), p=3", "w_1" in gens.labels))
    return res


@register("circle-expansion", "closed form of the circle chain modulo T^(3)", options=("n",))
def check_circle_expansion(n: Optional[int] = None) -> List[CheckResult]:
    ns = [n] if n else [1, 2, 3, 4, 5]
    res = []
    for k in ns:
        ok = nf_t3(circle_chain(k) - circle_expansion(k)).is_zero()
        res.append(CheckResult("circle expansion", f"n={k}", ok))
    return res


@register("cp", "central polynomial generators are central or identities", options=("m", "char"))
def check_cp(m: Optional[int] = None, char: Optional[int] = None) -> List[CheckResult]:
    chars = [char] if char is not None else [0, 3]
    cases = []
    for p in chars:
        for mm in ([m] if m else [2, 3, 4, 5]):
            cases.append((mm, True, p))
        for mm in ([m] if m else [2, 3, 4, 5, 6]):
            cases.append((mm, False, p))
    res = []
    for mm, unital, p in cases:
        spec = _spec(mm, unital, p)
        name = f"{'G' if unital else 'G0'}({mm}), p={p}"
        for label, g in cp_generators(spec).labelled():
            c = classify(g, spec)
            res.append(CheckResult(f"cp {label}", name, c.verdict in (CENTRAL, IDENTITY), c.verdict))
        # [x1,x2] is strictly central, with value 2 e1 e2 at (e1, e2)
        c = classify(_C(_x(1, unital, spec.field), _x(2, unital, spec.field)), spec)
        val = evaluate(_C(_x(1, unital, spec.field), _x(2, unital, spec.field)), {1: GrassmannElement.gen(spec, 1), 2: GrassmannElement.gen(spec, 2)})
        ok = c.verdict == CENTRAL and val == GrassmannElement.basis(spec, (1, 2), 2)
        res.append(CheckResult("[x1,x2] strictly central", name, ok, f"{c.verdict}, value {format_grassmann(val)}"))
        if not unital and mm % 2 == 1:
            k = (mm + 1) // 2
            chain = circle_chain(k, spec.field, False)
            c = classify(chain, spec)
            imgs = {i: GrassmannElement.basis(spec, (2 * i - 1, 2 * i)) for i in range(1, k)}
            imgs[k] = GrassmannElement.gen(spec, mm)
            val = evaluate(chain, imgs)
            expect = GrassmannElement.basis(spec, range(1, mm + 1), 2 ** ((mm - 1) // 2))
            ok = c.verdict == CENTRAL and val == expect
            res.append(CheckResult(f"circle chain {k} strictly central", name, ok, f"{c.verdict}, value {format_grassmann(val)}"))
    return res


def fin_unitary_predicate(u: SSElement, m: int, p: int) -> bool:
    return in_R1(u, p) and 2 * u.lend <= m - 2


@register("fin-unitary", "noncentral SS elements of G(m)", options=("m", "char"))
def check_fin_unitary(m: Optional[int] = None, char: Optional[int] = None) -> List[CheckResult]:
    elements = enumerate_ss(range(1, 6), 4)
    res = []
    for mm in ([m] if m else [2, 3, 4, 5]):
        for p in ([char] if char is not None else [0, 3]):
            spec = _spec(mm, True, p)
            bad = []
            witnesses = 0
            for u in elements:
                verdict = classify(u.to_ncpoly(spec.field, True), spec).verdict
                pred = fin_unitary_predicate(u, mm, p)
                if (verdict == NONCENTRAL) != pred:
                    bad.append(str(u))
                if pred:
                    find_noncentral_witness(u, spec)
                    witnesses += 1
            res.append(
                CheckResult(
                    "noncentral iff 2*lend <= m-2 with a unit beginning exponent",
                    f"G({mm}), p={p}, {len(elements)} elements",
                    not bad,
                    f"mismatches={bad[:5]} explicit witnesses={witnesses}",
                )
            )
    return res


# the order ------------------------------------------------------------------------

def greater_by_definition(u: SSElement, v: SSElement) -> bool:
    """u > v read off the four conditions directly."""
    if u.degree < v.degree:
        return True
    if u.degree != v.degree:
        return False
    if u.lend < v.lend:
        return True
    if u.lend != v.lend:
        return False
    du, dv = u.var_degrees(), v.var_degrees()
    top = max(list(du) + list(dv))
    for i in range(1, top + 1):
        if du.get(i, 0) < dv.get(i, 0) and all(du.get(j, 0) == dv.get(j, 0) for j in range(1, i)):
            return True
    if du != dv:
        return False
    bu, bv = set(u.beginning_vars), set(v.beginning_vars)
    eu = set(u.end_vars)
    for j in range(1, top + 1):
        if j in eu and j in bv and all((k in bu) == (k in bv) for k in range(1, j)):
            return True
    return False


@register("order", "the order on BSS is total")
def check_order(max_m: int = 4, max_degree: int = 4, triples: int = 20000, seed: int = 1) -> List[CheckResult]:
    res = []
    rng = random.Random(seed)
    for m in range(1, max_m + 1):
        for p in (0, 3):
            elems = enumerate_bss(m, p, max_degree)
            tri = anti = remark = agree = True
            for u in elems:
                for v in elems:
                    g1, g2 = greater_by_definition(u, v), greater_by_definition(v, u)
                    if (u == v) + g1 + g2 != 1:
                        tri = False
                    if g1 and g2:
                        anti = False
                    cmp = venkova_compare(u, v)
                    if cmp != (1 if g1 else -1 if g2 else 0):
                        agree = False
                    if g1 and venkova_condition(u, v) == 4:
                        bu, bv = set(u.beginning_vars), set(v.beginning_vars)
                        j = min(k for k in u.var_degrees() if (k in bu) != (k in bv))
                        if not any(k > j and k in bu and k in v.end_vars for k in u.var_degrees()):
                            remark = False
            trans = True
            n = len(elems)
            count = 0
            if n:
                if n ** 3 <= triples:
                    pool = itertools.product(elems, repeat=3)
                else:
                    pool = ((rng.choice(elems), rng.choice(elems), rng.choice(elems)) for _ in range(triples))
                for a, b, c in pool:
                    count += 1
                    if greater_by_definition(a, b) and greater_by_definition(b, c) and not greater_by_definition(a, c):
                        trans = False
            params = f"BSS({m}), p={p}, deg<={max_degree}, {n} elements, {count} triples"
            res.append(CheckResult("trichotomy", params, tri))
            res.append(CheckResult("antisymmetry", params, anti))
            res.append(CheckResult("transitivity", params, trans))
            res.append(CheckResult("comparator matches definition", params, agree))
            res.append(CheckResult("condition 4 has a later witness k > j", params, remark))
    return res


# the nonunitary theorem, by instances ---------------------------------------------

def _instances_for(spec: AlgebraSpec, target: Sequence[int], rng: random.Random, count: int) -> List[NCPoly]:
    """Random sums of generator instances x_v -> word, all of multidegree ``target``."""
    gens = cp_generators(spec).elements
    degree = {i + 1: d for i, d in enumerate(target) if d}
    variables = sorted(degree)
    total = sum(target)
    words_by_deg: Dict[tuple, List[tuple]] = {}
    for n in range(1, total + 1):
        for w in itertools.product(variables, repeat=n):
            key = tuple(w.count(v) for v in variables)
            words_by_deg.setdefault(key, []).append(w)

    def split(remaining: tuple, parts: int):
        keys = [k for k in words_by_deg if all(a <= b for a, b in zip(k, remaining))]
        if parts == 1:
            return [(remaining,)] if remaining in words_by_deg else []
        out = []
        for k in keys:
            rest = tuple(b - a for a, b in zip(k, remaining))
            for tail in split(rest, parts - 1):
                out.append((k,) + tail)
        return out

    pieces = []
    for g in gens:
        gvars = g.variables()
        if not g.is_multihomogeneous() or any(g.degree_in(v) != 1 for v in gvars):
            continue
        for parts in split(tuple(target[v - 1] for v in variables), len(gvars)):
            pieces.append((g, gvars, parts))
    out = []
    extra = nc_commutator(_x(1), _x(2), _x(3))
    while len(out) < count:
        f = NCPoly.zero()
        for _ in range(rng.randint(1, 3)):
            g, gvars, parts = rng.choice(pieces)
            sub = {v: NCPoly.word(rng.choice(words_by_deg[k])) for v, k in zip(gvars, parts)}
            f = f + substitute(g, sub).scale(rng.choice([1, -1, 2, -3]))
        if tuple(target) == (2, 1, 1) and rng.random() < 0.5:
            f = f + extra * _x(1)
        if not f.is_zero() and not nf_t3(f).is_zero():
            out.append(f)
    return out


@register("cp-instances", "central polynomials of G_0(m) lie in the generated T-space (instances)")
def check_cp_instances(ms: Sequence[int] = (3, 4), samples: int = 10, seed: int = 7) -> List[CheckResult]:
    res = []
    for m in ms:
        spec = _spec(m, False, 0)
        gens = cp_generators(spec)
        rng = random.Random(seed + m)
        targets = [(1, 1), (2, 1), (1, 1, 1), (2, 1, 1), (1, 1, 1, 1)]
        built: List[NCPoly] = []
        for k in range(samples):
            built += _instances_for(spec, targets[k % len(targets)], rng, 1)
        for f in built:
            verdict = classify(f, spec).verdict
            rep = tspace_member_bounded(f, gens)
            ok = verdict in (CENTRAL, IDENTITY) and rep.member
            res.append(
                CheckResult(
                    "constructed element recovered",
                    f"G0({m}), multidegree {f.multidegree()}",
                    ok,
                    f"{verdict}, {rep.outcome}, {len(rep.combination)} instances",
                )
            )
        # in G_0(3) every SS element of degree >= 2 is central or an identity,
        # so single variables over a wider window are part of the pool
        pool = enumerate_ss(range(1, 4), 4) + [SSElement(((i, 1),)) for i in range(4, 11)]
        rng.shuffle(pool)
        found = 0
        for u in pool:
            if found == samples:
                break
            f = u.to_ncpoly(QQ, False)
            if classify(f, spec).verdict != NONCENTRAL:
                continue
            found += 1
            rep = tspace_member_bounded(f, gens)
            res.append(
                CheckResult("noncentral SS element not in slice", f"G0({m}), {u}", not rep.member, rep.outcome)
            )
    res.append(CheckResult("semidecision caveat", "", True, "membership is searched within bounds only"))
    return res


# extremal elements -----------------------------------------------------------------

def final_touch_residual(u: SSElement, m: int) -> NCPoly:
    """u minus 2^-((m-1)/2) times the matching instance of the circle chain of length (m+1)/2."""
    k = (m + 1) // 2
    z = k - u.lend
    letters: List[int] = []
    for i, a in u.beginning:
        letters += [i] * a
    for j1, j2, b1, b2 in u.end:
        letters += [j1] * b1 + [j2] * b2
    if len(letters) != z:
        raise ValueError(f"{u} is not extremal for m={m}")
    sub = {i + 1: _x(letters[i]) for i in range(z)}
    for r, (j1, j2, _, _) in enumerate(u.end):
        sub[z + r + 1] = _C(_x(j1), _x(j2))
    inst = substitute(circle_chain(k), sub)
    return u.to_ncpoly() - inst.scale(Fraction(1, 2 ** ((m - 1) // 2)))


@register("final-touch", "extremal elements reduce to non-extremal ones", options=("m",))
def check_final_touch(m: Optional[int] = None) -> List[CheckResult]:
    res = []
    for mm in ([m] if m else [3, 5]):
        for u in enumerate_bss(mm, 0, mm):
            if not is_extremal(u, mm) or u.lbeg == 0:
                continue
            nf = nf_t3(final_touch_residual(u, mm))
            bad = [str(v) for v in nf.terms if not in_bss(v, mm) or is_extremal(v, mm)]
            res.append(CheckResult("extremal reduced", f"m={mm}, u={u}", not bad, f"residual {nf}"))
    return res


def run(ident: str = "all", **options) -> List[CheckResult]:
    if ident == "all":
        out = []
        for check in REGISTRY.values():
            out += check.run()
        return out
    if ident not in REGISTRY:
        raise KeyError(ident)
    check = REGISTRY[ident]
    kwargs = {k: v for k, v in options.items() if k in check.options and v is not None}
    return check.run(**kwargs)
