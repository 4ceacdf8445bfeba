"""Field, curve, standard points and registry bundled per working mode."""

from __future__ import annotations

from functools import lru_cache

from .curve import CurvePoint, PlaneCurve, fermat_quartic, standard_points
from .divisors import Divisor, Registry, seed_registry
from .fields import Field, FieldHom, make_field, reduction_map

MODE_FIELDS = {"f73": "F73", "exact": "Q_delta", "cusp": "Q_zeta8"}


class Workspace:
    def __init__(self, mode: str, field: Field):
        self.mode = mode
        self.field = field
        self.curve: PlaneCurve = fermat_quartic(field)
        self.points: dict[str, CurvePoint] = standard_points(self.curve)
        self.registry: Registry = seed_registry(self.curve)
        self.class_table: dict = {}

    def pt(self, name: str) -> CurvePoint:
        return self.points[name]

    def div(self, *terms) -> Divisor:
        """Divisor from ``(name_or_point, weight)`` pairs or bare names."""
        w: dict[CurvePoint, int] = {}
        for t in terms:
            p, k = (t, 1) if not isinstance(t, tuple) else t
            if isinstance(p, str):
                p = self.points[p]
            w[p] = w.get(p, 0) + k
        return Divisor(self.curve, w)

    def label_of(self, p: CurvePoint) -> str | None:
        for name, q in self.points.items():
            if q == p:
                return name
        return None

    def __repr__(self) -> str:
        return f"Workspace({self.mode}, {self.field})"


@lru_cache(maxsize=None)
def get_workspace(mode: str) -> Workspace:
    if mode not in MODE_FIELDS:
        raise ValueError(f"unknown workspace mode {mode!r}")
    return Workspace(mode, make_field(MODE_FIELDS[mode]))


@lru_cache(maxsize=None)
def shadow_reduction() -> FieldHom:
    """Q(delta) -> F_73 with zeta8 -> 10, 2^(1/4) -> 18."""
    return reduction_map(get_workspace("exact").field, get_workspace("f73").field)


def reduce_point(p: CurvePoint, target: Workspace, hom: FieldHom | None = None) -> CurvePoint:
    hom = hom or shadow_reduction()
    return target.curve.point(*[target.field.elem(hom.apply_raw(c)) for c in p.coords])


def reduce_divisor(D: Divisor, target: Workspace | None = None, hom: FieldHom | None = None) -> Divisor:
    target = target or get_workspace("f73")
    if D.curve == target.curve:
        return D
    return D.map_points(lambda p: reduce_point(p, target, hom)) if D.weights else Divisor(target.curve)


def point_from_exponents(ws: Workspace, spec) -> CurvePoint:
    """Point whose coordinates are 2^(a/4) * zeta8^b for pairs [a, b] (``None`` for zero)."""
    F = ws.field
    r = F.named("fourth_root_2")
    z8 = F.named("zeta8")
    coords = [F(0) if c is None else r ** (c[0] % 4) * F(2) ** (c[0] // 4) * z8 ** (c[1] % 8) for c in spec]
    return ws.curve.point(*coords)


def divisor_from_spec(ws: Workspace, terms) -> Divisor:
    """Divisor from ``[name_or_exponents, weight]`` pairs."""
    return ws.div(*[(n if isinstance(n, str) else point_from_exponents(ws, n), k) for n, k in terms])
