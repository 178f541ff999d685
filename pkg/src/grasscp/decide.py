"""Identity, centrality and bounded T-space membership against G(m) / G_0(m).

Identity testing works one multihomogeneous component at a time.  Up to sign,
the value of a multilinear polynomial on basis elements with pairwise disjoint
supports depends only on which arguments are 1, even, or odd.  A basis element
of size 2 stands in for every even one and a single generator for every odd
one.  So a component is an identity iff it vanishes on the finitely many
"parity profiles" that fit into m generators.  Both strategies below are
exact realisations of that fact:

* ``multilinear`` linearizes the component fully and evaluates it on one
  representative basis tuple per profile (``exhaustive=True`` tries every
  basis tuple instead);
* ``generic`` either reads off the top coefficient of the component at the
  substitution ``x_v -> 1 + sum of pairs + sum of singles`` (engine
  ``profile``) or expands at literal generic elements (engine ``expand``).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .canonical import NormalForm, SSElement, nf_t3
from .catalog import GeneratorSet
from .coefficients import CoeffPoly, FieldSpec, IndeterminateSource, OutOfScopeError, Scalar, format_scalar
from .free_algebra import (
    ContextError,
    NCPoly,
    evaluate,
    format_poly,
    multihomog_components,
    multilinearize_all,
    nc_commutator,
    substitute,
)
from .grassmann import (
    AlgebraSpec,
    GrassmannElement,
    format_grassmann,
    generic_element,
    is_central_element,
)
from .linalg import solve

IDENTITY = "identity"
NOT_IDENTITY = "not identity"
CENTRAL = "central"
NONCENTRAL = "noncentral"


class PreconditionError(ValueError):
    pass


class WitnessHypothesisError(ValueError):
    """The element does not meet the hypotheses of the witness construction."""


class WitnessInternalError(RuntimeError):
    """The construction ran but its output failed verification."""


@dataclass
class Witness:
    assignment: Dict[int, GrassmannElement]
    value: GrassmannElement
    # False when only one multihomogeneous component could be exhibited
    exact: bool = True
    component: Optional[Tuple[int, ...]] = None

    def describe(self) -> str:
        parts = [f"x{v} -> {format_grassmann(g)}" for v, g in sorted(self.assignment.items())]
        return "; ".join(parts)


@dataclass
class Classification:
    verdict: str
    witness: Optional[Witness] = None
    strategy: str = "multilinear"
    engine: str = ""
    semantics: str = ""
    nonvanishing: Optional[Witness] = None

    @property
    def is_identity(self) -> bool:
        return self.verdict == IDENTITY

    def record(self) -> Dict[str, object]:
        out: Dict[str, object] = {"verdict": self.verdict, "strategy": self.strategy}
        if self.engine:
            out["engine"] = self.engine
        if self.semantics:
            out["semantics"] = self.semantics
        for key, w in (("witness", self.witness), ("nonvanishing", self.nonvanishing)):
            if w is not None:
                out[key] = {
                    "substitution": {f"x{v}": format_grassmann(g) for v, g in sorted(w.assignment.items())},
                    "value": format_grassmann(w.value),
                    "exact": w.exact,
                }
        return out

    def to_text(self) -> str:
        lines = [f"verdict: {self.verdict}", f"strategy: {self.strategy}" + (f" ({self.engine})" if self.engine else "")]
        if self.semantics:
            lines.append(f"semantics: {self.semantics}")
        for label, w in (("witness", self.witness), ("nonvanishing", self.nonvanishing)):
            if w is not None:
                lines.append(f"{label}: {w.describe()}")
                lines.append(f"{label} value: {format_grassmann(w.value)}" + ("" if w.exact else " (one component)"))
        return "\n".join(lines)

    def to_machine(self) -> str:
        return json.dumps(self.record(), sort_keys=True)


# helpers ----------------------------------------------------------------------

def _check_inputs(f: NCPoly, spec: AlgebraSpec) -> None:
    if spec.p == 2:
        raise OutOfScopeError("characteristic 2 is out of scope")
    if f.field != spec.field:
        raise PreconditionError(f"polynomial over {f.field}, algebra over {spec.field}")
    if f.unital != spec.unital:
        raise ContextError("polynomial context and algebra unitality differ")


def _degrees(f: NCPoly) -> Dict[int, int]:
    return {v: f.degree_in(v) for v in f.variables()}


def multilinear_applicable(f: NCPoly, p: int) -> bool:
    if p == 0:
        return True
    return all(f.degree_in(v) < p for v in f.variables())


def _semantics(spec: AlgebraSpec, strategy: str) -> str:
    if spec.p and strategy == "generic":
        return "generic (infinite-field semantics)"
    return ""


def profiles(degrees: Mapping[int, int], spec: AlgebraSpec) -> Iterator[Dict[int, Tuple[int, int]]]:
    """Per variable (evens, odds) counts that fit into spec.m generators."""
    variables = sorted(degrees)

    def rec(idx: int, budget: int, acc: Dict[int, Tuple[int, int]]):
        if idx == len(variables):
            yield dict(acc)
            return
        v = variables[idx]
        d = degrees[v]
        for k in range(d + 1):
            for o in range(d - k + 1):
                if not spec.unital and k + o != d:
                    continue
                cost = 2 * k + o
                if cost > budget:
                    continue
                acc[v] = (k, o)
                yield from rec(idx + 1, budget - cost, acc)
        acc.pop(v, None)

    yield from rec(0, spec.m, {})


def _profile_pieces(profile: Mapping[int, Tuple[int, int]]) -> Tuple[Dict[int, List[Tuple[int, ...]]], int]:
    """Assign fresh generators: per variable a list of index tuples (pairs, then singles)."""
    nxt = 1
    pieces: Dict[int, List[Tuple[int, ...]]] = {}
    for v in sorted(profile):
        k, o = profile[v]
        lst = []
        for _ in range(k):
            lst.append((nxt, nxt + 1))
            nxt += 2
        for _ in range(o):
            lst.append((nxt,))
            nxt += 1
        pieces[v] = lst
    top = (1 << (nxt - 1)) - 1
    return pieces, top


def _profile_images(profile, spec: AlgebraSpec) -> Tuple[Dict[int, GrassmannElement], int]:
    pieces, top = _profile_pieces(profile)
    images = {}
    for v, lst in pieces.items():
        g = GrassmannElement.one(spec) if spec.unital else GrassmannElement.zero(spec)
        for idx in lst:
            g = g + GrassmannElement.basis(spec, idx)
        images[v] = g
    return images, top


def _scaled_search(
    f: NCPoly,
    assignment: Mapping[int, GrassmannElement],
    good: Callable[[GrassmannElement], bool],
    field: FieldSpec,
) -> Optional[Tuple[Dict[int, GrassmannElement], GrassmannElement]]:
    """Scale each image by a field element so that ``good(f(scaled))`` holds.

    Kronecker-style scalings c^(D^i) separate the multihomogeneous components
    in characteristic 0; a seeded random phase covers the rest.
    """
    variables = sorted(assignment)
    D = max((f.degree_in(v) for v in variables), default=0) + 1

    def attempt(lams):
        s = {v: assignment[v].scale(l) for v, l in zip(variables, lams)}
        val = evaluate(f, s)
        return (s, val) if good(val) else None

    p = field.characteristic
    limit = 40 if p == 0 else p
    for c in range(1, limit):
        lams = [field.reduce(c ** (D ** i)) for i in range(len(variables))]
        if any(l == 0 for l in lams):
            continue
        hit = attempt(lams)
        if hit:
            return hit
    rng = random.Random(0)
    pool = list(range(1, p)) if p else [k for k in range(-6, 7) if k]
    for _ in range(200):
        hit = attempt([rng.choice(pool) for _ in variables])
        if hit:
            return hit
    return None


def _finish_witness(
    f: NCPoly,
    comp_deg: Tuple[int, ...],
    component: NCPoly,
    assignment: Dict[int, GrassmannElement],
    good: Callable[[GrassmannElement], bool],
    spec: AlgebraSpec,
) -> Witness:
    """Turn a component witness into one for f itself when possible."""
    # variables of f missing from the component still need images
    full = dict(assignment)
    for v in f.variables():
        if v not in full:
            full[v] = GrassmannElement.zero(spec)
    val = evaluate(f, full)
    if good(val):
        return Witness(full, val, True, None)
    hit = _scaled_search(f, full, good, spec.field)
    if hit:
        return Witness(hit[0], hit[1], True, None)
    return Witness(assignment, evaluate(component, assignment), False, comp_deg)


# component engines --------------------------------------------------------------

def _component_profile(g: NCPoly, spec: AlgebraSpec) -> Optional[Dict[int, GrassmannElement]]:
    for prof in profiles(_degrees(g), spec):
        images, top = _profile_images(prof, spec)
        val = evaluate(g, images)
        if val.coefficient(_mask_indices(top)):
            return images
    return None


def _mask_indices(mask: int) -> Tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def _polarization_terms(copies: Mapping[int, List[int]]) -> Iterator[Tuple[Dict[int, Tuple[int, ...]], int]]:
    """(I_v per variable, sign) for lin(g) = sum_I prod_v (-1)^(d_v-|I_v|) g(x_v -> sum_{I_v} y)."""
    per_var = []
    for v, cs in sorted(copies.items()):
        opts = []
        for r in range(1, len(cs) + 1):
            for I in itertools.combinations(cs, r):
                opts.append((v, I, (-1) ** (len(cs) - r)))
        per_var.append(opts)
    for combo in itertools.product(*per_var):
        sign = 1
        choice = {}
        for v, I, s in combo:
            sign *= s
            choice[v] = I
        yield choice, sign


def _lin_to_original(
    g: NCPoly, copies: Mapping[int, List[int]], lin_images: Mapping[int, GrassmannElement], spec: AlgebraSpec
) -> Optional[Dict[int, GrassmannElement]]:
    """From a nonvanishing point of lin(g), a nonvanishing point of g."""
    for choice, _ in _polarization_terms(copies):
        s = {}
        for v, I in choice.items():
            acc = GrassmannElement.zero(spec)
            for c in I:
                acc = acc + lin_images[c]
            s[v] = acc
        if evaluate(g, s):
            return s
    return None


def _component_multilinear(g: NCPoly, spec: AlgebraSpec, exhaustive: bool = False) -> Optional[Dict[int, GrassmannElement]]:
    lin, copies = multilinearize_all(g)
    one = GrassmannElement.one(spec) if spec.unital else None

    def check(lin_images):
        val = evaluate(lin, lin_images)
        if val:
            back = _lin_to_original(g, copies, lin_images, spec)
            if back is None:
                raise WitnessInternalError("linearization point does not lift back")
            return back
        return None

    if exhaustive:
        masks = spec.basis_masks()
        allc = [c for v in sorted(copies) for c in copies[v]]
        for combo in itertools.product(masks, repeat=len(allc)):
            used = 0
            ok = True
            for mk in combo:
                if mk & used:
                    ok = False
                    break
                used |= mk
            if not ok:
                continue
            imgs = {c: GrassmannElement._raw(spec, {mk: 1}) for c, mk in zip(allc, combo)}
            hit = check(imgs)
            if hit:
                return hit
        return None

    for prof in profiles(_degrees(g), spec):
        pieces, _ = _profile_pieces(prof)
        imgs = {}
        for v, cs in copies.items():
            lst = pieces[v]
            for k, c in enumerate(cs):
                imgs[c] = GrassmannElement.basis(spec, lst[k]) if k < len(lst) else one
        hit = check(imgs)
        if hit:
            return hit
    return None


def _small_points(indets: Sequence[int], field: FieldSpec, per_var: int) -> Iterator[Dict[int, int]]:
    """0/1/-1 patterns by increasing Hamming weight, then a wider grid."""
    unit_vals = [1, -1] if field.characteristic != 3 else [1, 2]
    n = len(indets)
    for w in range(n + 1):
        for support in itertools.combinations(indets, w):
            for vals in itertools.product(unit_vals, repeat=w):
                yield dict(zip(support, (field.reduce(v) for v in vals)))
    vals = list(itertools.islice(field.elements(), per_var))
    for combo in itertools.product(vals, repeat=n):
        yield dict(zip(indets, combo))


def _expand_generic(f: NCPoly, spec: AlgebraSpec) -> Tuple[bool, Optional[Dict[int, GrassmannElement]]]:
    if not f.variables():
        return not f.constant_term(), {}
    src = IndeterminateSource()
    gens = {v: generic_element(spec, src) for v in f.variables()}
    val = evaluate(f, gens)
    if not val:
        return True, None
    # a coefficient that survives; pin down the indeterminates of one monomial
    _, poly = val.sorted_items()[0]
    mono = min(poly.items(), key=lambda kv: kv[0])[0]
    indets = [i for i, _ in mono]
    per_var = f.degree() + 1
    for point in _small_points(indets, spec.field, per_var):
        if poly.evaluate(point):
            s = {v: g.map_coefficients(lambda c: c.evaluate(point)) for v, g in gens.items()}
            if evaluate(f, s):
                return False, s
    return False, None


# public operations ------------------------------------------------------------

def choose_strategy(f: NCPoly, spec: AlgebraSpec) -> str:
    return "multilinear" if multilinear_applicable(f, spec.p) else "generic"


def is_identity(
    f: NCPoly,
    spec: AlgebraSpec,
    strategy: str = "auto",
    engine: str = "profile",
    exhaustive: bool = False,
) -> Classification:
    """Decide whether f vanishes under every substitution into ``spec``.

    The verdict is for the ground field extended to an infinite one whenever
    the generic strategy runs over F_p.
    """
    _check_inputs(f, spec)
    if strategy == "auto":
        strategy = choose_strategy(f, spec)
    if strategy == "multilinear" and not multilinear_applicable(f, spec.p):
        raise PreconditionError("multilinear strategy needs characteristic 0 or all degrees below p")
    if strategy not in ("multilinear", "generic"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "generic" and engine not in ("profile", "expand"):
        raise ValueError(f"unknown engine {engine!r}")
    eng = engine if strategy == "generic" else ("exhaustive" if exhaustive else "profile")
    sem = _semantics(spec, strategy)
    if f.is_zero():
        return Classification(IDENTITY, None, strategy, eng, sem)

    if strategy == "generic" and engine == "expand":
        ok, s = _expand_generic(f, spec)
        if ok:
            return Classification(IDENTITY, None, strategy, eng, sem)
        if s == {}:
            w = Witness({}, GrassmannElement.scalar(spec, f.constant_term()))
        else:
            w = Witness(s, evaluate(f, s)) if s is not None else None
        return Classification(NOT_IDENTITY, w, strategy, eng, sem)

    nonzero = lambda val: bool(val)
    for deg, comp in multihomog_components(f):
        if not any(deg):
            val = GrassmannElement.scalar(spec, comp.constant_term())
            s = {v: GrassmannElement.zero(spec) for v in f.variables()}
            w = _finish_witness(f, deg, comp, s, nonzero, spec) if s else Witness({}, val)
            return Classification(NOT_IDENTITY, w, strategy, eng, sem)
        if strategy == "multilinear":
            s = _component_multilinear(comp, spec, exhaustive)
        else:
            s = _component_profile(comp, spec)
        if s is not None:
            w = _finish_witness(f, deg, comp, s, nonzero, spec)
            return Classification(NOT_IDENTITY, w, strategy, eng, sem)
    return Classification(IDENTITY, None, strategy, eng, sem)


def classify(f: NCPoly, spec: AlgebraSpec, strategy: str = "auto", engine: str = "profile") -> Classification:
    """identity / central / noncentral, with witnesses for the latter two."""
    first = is_identity(f, spec, strategy, engine)
    if first.is_identity:
        return first
    y = max(f.variables(), default=0) + 1
    fy = nc_commutator(f, NCPoly.var(y, f.field, f.unital))
    second = is_identity(fy, spec, strategy if strategy != "auto" else "auto", engine)
    if second.is_identity:
        return Classification(CENTRAL, None, second.strategy, second.engine, second.semantics, first.witness)
    w = second.witness
    noncentral = lambda val: not is_central_element(val)
    if w is not None:
        restricted = {v: g for v, g in w.assignment.items() if v != y}
        for v in f.variables():
            restricted.setdefault(v, GrassmannElement.zero(spec))
        val = evaluate(f, restricted)
        if noncentral(val):
            w = Witness(restricted, val)
        else:
            hit = _scaled_search(f, restricted, noncentral, spec.field)
            w = Witness(hit[0], hit[1]) if hit else Witness(restricted, val, False)
    return Classification(NONCENTRAL, w, second.strategy, second.engine, second.semantics, first.witness)


def find_noncentral_witness(u: SSElement, spec: AlgebraSpec) -> Witness:
    """Explicit noncentral image of an SS element in a unitary G(m).

    The first beginning variable whose exponent is a unit goes to 1+e_1, the
    other beginning variables to 1, and the end variables to 1+e_2, 1+e_3, ...
    """
    if not spec.unital:
        raise WitnessHypothesisError("the 1+e construction needs a unitary algebra")
    if spec.p == 2:
        raise OutOfScopeError("characteristic 2 is out of scope")
    if u.lbeg == 0:
        raise WitnessHypothesisError("empty beginning")
    if 2 * u.lend > spec.m - 2:
        raise WitnessHypothesisError(f"2*lend = {2 * u.lend} exceeds m-2 = {spec.m - 2}")
    p = spec.p
    pick = None
    for i, a in u.beginning:
        if p == 0 or a % p:
            pick = i
            break
    if pick is None:
        raise WitnessHypothesisError("every beginning exponent is divisible by p")
    one = GrassmannElement.one(spec)
    s: Dict[int, GrassmannElement] = {}
    for i, _ in u.beginning:
        s[i] = one + GrassmannElement.gen(spec, 1) if i == pick else one
    nxt = 2
    for j in u.end_vars:
        s[j] = one + GrassmannElement.gen(spec, nxt)
        nxt += 1
    val = evaluate(u.to_ncpoly(spec.field, True), s)
    if is_central_element(val):
        raise WitnessInternalError(f"image of {u} is central: {format_grassmann(val)}")
    return Witness(s, val)


# bounded membership -------------------------------------------------------------

@dataclass
class MembershipReport:
    outcome: str  # "member" or "not-found-within-bound"
    combination: List[Tuple[NCPoly, Dict[int, NCPoly], Scalar]] = field(default_factory=list)
    bounds: Dict[str, object] = field(default_factory=dict)
    note: str = ""

    @property
    def member(self) -> bool:
        return self.outcome == "member"

    def record(self) -> Dict[str, object]:
        return {
            "outcome": self.outcome,
            "bounds": self.bounds,
            "note": self.note,
            "combination": [
                {
                    "generator": format_poly(g),
                    "substitution": {f"x{v}": format_poly(img) for v, img in sorted(s.items())},
                    "coefficient": format_scalar(c),
                }
                for g, s, c in self.combination
            ],
        }

    def to_text(self) -> str:
        lines = [f"outcome: {self.outcome}"]
        lines.append("bounds: " + ", ".join(f"{k}={v}" for k, v in self.bounds.items()))
        for g, s, c in self.combination:
            subst = ", ".join(f"x{v} -> {format_poly(img)}" for v, img in sorted(s.items()))
            lines.append(f"  {format_scalar(c)} * ({format_poly(g)}) [{subst}]")
        if self.note:
            lines.append(f"note: {self.note}")
        return "\n".join(lines)

    def to_machine(self) -> str:
        return json.dumps(self.record(), sort_keys=True, default=str)


def _words_within(variables: Sequence[int], cap: Mapping[int, int], max_len: int, allow_empty: bool) -> List[Tuple[int, ...]]:
    out = [()] if allow_empty else []
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for v in variables:
                if w.count(v) < cap.get(v, 0):
                    nxt.append(w + (v,))
        out.extend(nxt)
        frontier = nxt
    return out


def _nf_vector(nf: NormalForm) -> Dict[object, Scalar]:
    vec: Dict[object, Scalar] = dict(nf.terms)
    if nf.constant:
        vec["1"] = nf.constant
    return vec


def _wdeg(w: Tuple[int, ...]) -> Dict[int, int]:
    d: Dict[int, int] = {}
    for v in w:
        d[v] = d.get(v, 0) + 1
    return d


def _assignments(
    slots: List[int],
    words: List[Tuple[int, ...]],
    target: Dict[int, int],
) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Word tuples for the linearized slots with total multidegree ``target``.

    ``slots`` lists the generator variable of every copy; copies of one
    variable receive words in nondecreasing list order.
    """
    n = len(slots)
    degs = [_wdeg(w) for w in words]

    def rec(k: int, start: int, remaining: Dict[int, int], acc: List[int]):
        if k == n:
            if not any(remaining.values()):
                yield tuple(words[i] for i in acc)
            return
        lo = start if k > 0 and slots[k] == slots[k - 1] else 0
        for i in range(lo, len(words)):
            d = degs[i]
            if any(remaining.get(v, 0) < c for v, c in d.items()):
                continue
            rem = dict(remaining)
            for v, c in d.items():
                rem[v] -= c
            acc.append(i)
            yield from rec(k + 1, i, rem, acc)
            acc.pop()

    yield from rec(0, 0, dict(target), [])


def tspace_member_bounded(
    f: NCPoly,
    gens: GeneratorSet,
    max_degree: Optional[int] = None,
    budget: int = 64,
    spec: Optional[AlgebraSpec] = None,
) -> MembershipReport:
    """Search f in the T-space spanned by ``gens`` (modulo T^(3)) within bounds.

    Each generator is fully linearized and its copies are replaced by words in
    f's variables of length <= ``max_degree`` (default deg f), at most
    ``budget`` words per copy.  Everything is straightened and the linear
    system solved exactly.  A found combination is re-expanded into plain
    substitution instances of the generators and re-verified.
    """
    field_ = f.field
    p = field_.characteristic
    if p == 2:
        raise OutOfScopeError("characteristic 2 is out of scope")
    if spec is None and gens.params:
        prm = gens.params
        spec = AlgebraSpec(prm["m"], prm["unital"], FieldSpec(prm["p"]))
    if f.is_zero():
        return MembershipReport("member", [], {"max_degree": 0, "budget": budget})
    if not f.is_multihomogeneous():
        raise PreconditionError("target must be multihomogeneous")
    if p and any(f.degree_in(v) >= p for v in f.variables()):
        raise PreconditionError("degrees of the target must stay below p")
    for g in gens:
        if not g.is_multihomogeneous():
            raise PreconditionError("generators must be multihomogeneous")
        if g.field != field_ or g.unital != f.unital:
            raise PreconditionError("generator context differs from the target")
    if max_degree is None:
        max_degree = f.degree()
    variables = f.variables()
    target = _degrees(f)
    words = _words_within(variables, target, max_degree, f.unital)
    truncated = len(words) > budget
    words = words[:budget]
    bounds = {"max_degree": max_degree, "budget": budget, "words": len(words), "truncated": truncated}

    candidates: List[Tuple[NCPoly, Dict[int, List[int]], Tuple[Tuple[int, ...], ...]]] = []
    columns = []
    for g in gens:
        lin, copies = multilinearize_all(g)
        slots = [c for v in sorted(copies) for c in copies[v]]
        slot_var = [v for v in sorted(copies) for _ in copies[v]]
        for assign in _assignments(slot_var, words, target):
            s = {c: NCPoly.word(w, 1, field_, f.unital) if w else NCPoly.constant(1, field_) for c, w in zip(slots, assign)}
            inst = substitute(lin, s)
            vec = _nf_vector(nf_t3(inst))
            if not vec:
                continue
            candidates.append((g, copies, assign))
            columns.append(vec)
    goal = _nf_vector(nf_t3(f))
    sol = solve(columns, goal, field_)
    if sol is None:
        return MembershipReport(
            "not-found-within-bound",
            [],
            bounds,
            "absence within these bounds does not prove non-membership",
        )
    combination = []
    for idx, coeff in sorted(sol.items()):
        g, copies, assign = candidates[idx]
        word_of = dict(zip([c for v in sorted(copies) for c in copies[v]], assign))
        for choice, sign in _polarization_terms(copies):
            sub = {}
            for v, I in choice.items():
                acc = NCPoly.zero(field_, f.unital)
                for c in I:
                    w = word_of[c]
                    acc = acc + (NCPoly.word(w, 1, field_, f.unital) if w else NCPoly.constant(1, field_))
                sub[v] = acc
            combination.append((g, sub, field_.reduce(coeff * sign)))
    residual = f
    for g, sub, c in combination:
        residual = residual - substitute(g, sub).scale(c)
    if not nf_t3(residual).is_zero():
        raise WitnessInternalError("membership combination fails to re-verify modulo T^(3)")
    if spec is not None and not is_identity(residual, spec).is_identity:
        raise WitnessInternalError("membership residual is not an identity")
    return MembershipReport("member", combination, bounds)
