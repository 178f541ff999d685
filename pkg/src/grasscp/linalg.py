"""Exact Gaussian elimination over Q or F_p on sparse column data."""

from __future__ import annotations

from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .coefficients import FieldSpec, Scalar

Column = Dict[Hashable, Scalar]


class _Echelon:
    """Incremental row-reduced basis of column vectors, tracking combinations.

    Each stored pivot vector remembers how it was built from the inputs, so a
    target inside the span comes back with its coefficients.
    """

    def __init__(self, field: FieldSpec):
        self.field = field
        self.pivots: Dict[Hashable, Tuple[Column, Dict[int, Scalar]]] = {}
        self.order: List[Hashable] = []

    def _reduce(self, vec: Column, combo: Dict[int, Scalar]) -> Tuple[Column, Dict[int, Scalar]]:
        red = self.field.reduce
        vec = dict(vec)
        combo = dict(combo)
        for key in self.order:
            c = vec.get(key)
            if not c:
                continue
            pvec, pcombo = self.pivots[key]
            for k, v in pvec.items():
                nv = red(vec.get(k, 0) - c * v)
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            for k, v in pcombo.items():
                nv = red(combo.get(k, 0) - c * v)
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        return vec, combo

    def add(self, index: int, vec: Column) -> bool:
        """Insert input column ``index``; False if it was dependent."""
        vec, combo = self._reduce(vec, {index: 1})
        if not vec:
            return False
        key = min(vec, key=repr)
        inv = self.field.inv(vec[key])
        red = self.field.reduce
        vec = {k: red(v * inv) for k, v in vec.items()}
        combo = {k: red(v * inv) for k, v in combo.items()}
        # keep earlier pivots clear of the new pivot key
        for okey in self.order:
            ovec, ocombo = self.pivots[okey]
            c = ovec.get(key)
            if c:
                for k, v in vec.items():
                    nv = red(ovec.get(k, 0) - c * v)
                    if nv:
                        ovec[k] = nv
                    else:
                        ovec.pop(k, None)
                for k, v in combo.items():
                    nv = red(ocombo.get(k, 0) - c * v)
                    if nv:
                        ocombo[k] = nv
                    else:
                        ocombo.pop(k, None)
        self.pivots[key] = (vec, combo)
        self.order.append(key)
        return True


def rank(columns: Sequence[Column], field: FieldSpec) -> int:
    ech = _Echelon(field)
    return sum(ech.add(i, c) for i, c in enumerate(columns))


def solve(columns: Sequence[Column], target: Column, field: FieldSpec) -> Optional[Dict[int, Scalar]]:
    """Coefficients ``a`` with sum a[i]*columns[i] == target, or None."""
    ech = _Echelon(field)
    for i, c in enumerate(columns):
        ech.add(i, c)
    residual, combo = ech._reduce(target, {})
    if residual:
        return None
    red = field.reduce
    return {i: red(-v) for i, v in combo.items() if red(-v)}


def nullspace(columns: Sequence[Column], field: FieldSpec) -> List[Dict[int, Scalar]]:
    """A basis of the linear relations among ``columns``."""
    ech = _Echelon(field)
    out = []
    for i, c in enumerate(columns):
        vec, combo = ech._reduce(c, {i: 1})
        if vec:
            ech.add(i, c)
        else:
            out.append(combo)
    return out
