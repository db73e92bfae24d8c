"""Sound sign certificates at isolated algebraic points.

A point is described by one polynomial root (with a certified isolating
interval) plus derived coordinates built from it by rational operations
and square roots.  Signs are certified by interval evaluation under a
shrinking-eps schedule; a "certified" verdict is unconditionally sound,
while failure to decide is reported as "inconclusive", never as a guess.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .mpoly import MPoly
from .rationals import Interval, RatLike, rat, rat_to_decimal
from .univar import UPoly, count_roots, isolate_root

CERTIFIED = "certified"
FALSIFIED = "falsified"
INCONCLUSIVE = "inconclusive"

EPS_SCHEDULE: Tuple[Fraction, ...] = (
    Fraction(1, 10**10),
    Fraction(1, 10**20),
    Fraction(1, 10**40),
)

# a derived coordinate maps (primary-root enclosure, eps) to its own enclosure
DerivedCoord = Callable[[Interval, Fraction], Interval]


@dataclass
class Certificate:
    claim: str
    status: str
    sign: Optional[int] = None
    enclosures: List[Tuple[str, Interval]] = field(default_factory=list)
    eps_used: Optional[Fraction] = None
    elapsed_ms: float = 0.0
    detail: Dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def as_dict(self) -> Dict:
        return {
            "claim": self.claim,
            "status": self.status,
            "sign": self.sign,
            "enclosures": [
                {
                    "label": label,
                    "lo": f"{iv.lo.numerator}/{iv.lo.denominator}",
                    "hi": f"{iv.hi.numerator}/{iv.hi.denominator}",
                    "lo_decimal": rat_to_decimal(iv.lo, 15),
                    "hi_decimal": rat_to_decimal(iv.hi, 15),
                }
                for label, iv in self.enclosures
            ],
            "eps_used": str(self.eps_used) if self.eps_used is not None else None,
            "elapsed_ms": round(self.elapsed_ms, 2),
            "detail": self.detail,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent)

    def enclosure(self, label: str) -> Interval:
        for name, iv in self.enclosures:
            if name == label:
                return iv
        raise KeyError(f"no enclosure labeled {label!r}")


class AlgebraicPointSpec:
    """An isolated real algebraic point: one primary root coordinate plus
    coordinates derived from it."""

    def __init__(
        self,
        primary_var: str,
        primary_poly: UPoly,
        isolating: Interval,
        derived: Optional[Sequence[Tuple[str, DerivedCoord]]] = None,
    ):
        if count_roots(primary_poly, isolating.lo, isolating.hi) != 1:
            raise ValueError("interval does not isolate exactly one root")
        self.primary_var = primary_var
        self.primary_poly = primary_poly
        self.isolating = isolating
        self.derived = list(derived or [])
        self._cache: Dict[Fraction, Dict[str, Interval]] = {}

    def add_derived(self, var: str, fn: DerivedCoord) -> "AlgebraicPointSpec":
        self.derived.append((var, fn))
        self._cache.clear()
        return self

    def refine(self, eps: RatLike) -> Interval:
        e = rat(eps)
        if self.isolating.width > e:
            self.isolating = isolate_root(
                self.primary_poly, self.isolating.lo, self.isolating.hi, e
            )
        return self.isolating

    def box(self, eps: RatLike) -> Dict[str, Interval]:
        """Coordinate enclosures at refinement level eps."""
        e = rat(eps)
        if e in self._cache:
            return self._cache[e]
        root = self.refine(e)
        out = {self.primary_var: root}
        for var, fn in self.derived:
            out[var] = fn(root, e)
        self._cache[e] = out
        return out

    def covers(self, f: MPoly) -> bool:
        names = {self.primary_var} | {v for v, _ in self.derived}
        return all(v in names for v in f.variables())


def sign_at_point(
    f: MPoly,
    p: AlgebraicPointSpec,
    schedule: Sequence[RatLike] = EPS_SCHEDULE,
    claim: str = "sign",
) -> Certificate:
    """Certified sign of f at p, or inconclusive if every refinement level
    still straddles zero.  Never certifies falsely."""
    t0 = time.monotonic()
    if not p.covers(f):
        missing = [v for v in f.variables() if v not in p.box(rat(schedule[0]))]
        raise KeyError(f"point does not cover variables {missing}")
    last = None
    for eps in schedule:
        e = rat(eps)
        val = f.evaluate_interval(p.box(e))
        last = (e, val)
        s = val.sign()
        if s != 0:
            return Certificate(
                claim, CERTIFIED, s, [("value", val)], e,
                (time.monotonic() - t0) * 1000,
            )
    e, val = last
    return Certificate(
        claim, INCONCLUSIVE, None, [("value", val)], e,
        (time.monotonic() - t0) * 1000,
    )


def _upoly_interval(p: UPoly, x: Interval) -> Interval:
    acc = Interval.point(0)
    for c in reversed(p.coeffs):
        acc = acc * x + Interval.point(c)
    return acc


def mvt_sign_bound(
    alpha_deriv,
    center: RatLike,
    radius: RatLike,
    value_at_center: RatLike,
    claim: str = "mvt-sign",
) -> Certificate:
    """Mean-value sign certificate: with |alpha'| <= B on the window of
    given radius around the center, |alpha(root) - alpha(center)| <= B*r,
    so the sign at the root matches the center value whenever
    |value_at_center| > B*r.

    alpha_deriv may be a UPoly (interval-evaluated over the window) or an
    Interval already bounding the derivative on the window.
    """
    t0 = time.monotonic()
    c, r, v = rat(center), rat(radius), rat(value_at_center)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    window = Interval(c - r, c + r)
    if isinstance(alpha_deriv, UPoly):
        dband = _upoly_interval(alpha_deriv, window)
    elif isinstance(alpha_deriv, Interval):
        dband = alpha_deriv
    else:
        raise TypeError("alpha_deriv must be a UPoly or an Interval")
    bound = max(abs(dband.lo), abs(dband.hi)) * r
    value_band = Interval(v - bound, v + bound)
    ok = abs(v) > bound
    status = CERTIFIED if ok else INCONCLUSIVE
    sign = (1 if v > 0 else -1) if ok else None
    return Certificate(
        claim, status, sign,
        [("value_band", value_band), ("derivative_band", dband)],
        None, (time.monotonic() - t0) * 1000,
        {"bound": str(bound), "value_at_center": str(v)},
    )


def extension_step(
    gens: Sequence[MPoly],
    ext_var: str,
    p: AlgebraicPointSpec,
    schedule: Sequence[RatLike] = EPS_SCHEDULE,
    claim: str = "extension",
) -> Certificate:
    """Certify that the partial solution p extends in the variable ext_var:
    some generator's leading coefficient in ext_var is nonzero at p.

    When a generator linear in ext_var has a certified-nonzero leading
    coefficient, the extended coordinate -c0/c1 is enclosed and reported.
    """
    t0 = time.monotonic()
    verdicts = []
    extension: Optional[Interval] = None
    any_certified = False
    eps_used = None
    for idx, g in enumerate(gens):
        coeffs = g.coefficients_in(ext_var)
        deg = max(coeffs) if coeffs else -1
        if deg <= 0:
            continue
        lead = coeffs[deg]
        cert = sign_at_point(lead, p, schedule, claim=f"lc[{idx}]")
        verdicts.append((idx, deg, cert))
        if cert.certified:
            any_certified = True
            eps_used = cert.eps_used
            if deg == 1 and extension is None:
                e = cert.eps_used
                box = p.box(e)
                c1 = lead.evaluate_interval(box)
                c0 = coeffs.get(0)
                num = c0.evaluate_interval(box) if c0 is not None else Interval.point(0)
                extension = -num / c1
    enclosures = [(f"lc[{i}]", c.enclosure("value")) for i, _, c in verdicts]
    if extension is not None:
        enclosures.append((ext_var, extension))
    status = CERTIFIED if any_certified else INCONCLUSIVE
    return Certificate(
        claim, status, None, enclosures, eps_used,
        (time.monotonic() - t0) * 1000,
        {
            "variable": ext_var,
            "leading_coefficients": [
                {"generator": i, "degree": d, "status": c.status}
                for i, d, c in verdicts
            ],
        },
    )
