"""Compact sets and probability measures that norms are evaluated over.

Set variants: Interval, UnionSet (ordered disjoint intervals plus isolated
real/complex points), and SampledRegion2D (a point cloud with the generating
predicate recorded so runs are reproducible).  Measures carry Gauss rules
matched to their weight so polynomial integrands are integrated exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
from scipy.special import roots_jacobi

from .errors import QuadratureBudgetError


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"interval requires a < b, got [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class UnionSet:
    """Disjoint union of intervals and isolated points (real or complex)."""

    intervals: tuple
    points: tuple = ()

    def __post_init__(self):
        ivs = tuple(self.intervals)
        pts = tuple(complex(p) for p in self.points)
        if not ivs and not pts:
            raise ValueError("union set must be nonempty")
        for iv in ivs:
            if not isinstance(iv, Interval):
                raise TypeError("intervals must be Interval instances")
        ordered = sorted(ivs, key=lambda iv: iv.a)
        for left, right in zip(ordered, ordered[1:]):
            if left.b >= right.a:
                raise ValueError("intervals must be pairwise disjoint")
        object.__setattr__(self, "intervals", tuple(ordered))
        object.__setattr__(self, "points", pts)


class SampledRegion2D:
    """Point cloud standing in for a 2D compact set (or a complex point set).

    ``as_complex`` interprets each (x, y) as the complex number x + iy, which
    is how circle/disk sets for univariate polynomials are represented.
    """

    __slots__ = ("points", "descriptor", "as_complex")

    def __init__(self, points: np.ndarray, descriptor: dict, as_complex: bool = False):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 100:
            raise ValueError("point cloud must be an (n >= 100, 2) array")
        self.points = pts
        self.descriptor = dict(descriptor)
        self.as_complex = bool(as_complex)

    @property
    def complex_points(self) -> np.ndarray:
        return self.points[:, 0] + 1j * self.points[:, 1]

    def __eq__(self, other):
        if not isinstance(other, SampledRegion2D):
            return NotImplemented
        return self.descriptor == other.descriptor and self.as_complex == other.as_complex

    def __repr__(self):
        return f"SampledRegion2D({self.descriptor!r}, n={len(self.points)})"


CompactSet = Union[Interval, UnionSet, SampledRegion2D]


def cusp_region(grid: int = 401) -> SampledRegion2D:
    """|y| <= exp(-1/(1-|x|)) for |x| < 1, plus the boundary points (+-1, 0).

    The bound of interest is attained near the cusp tips, so those two points
    are always included explicitly rather than left to the grid.
    """
    xs = np.linspace(-1.0, 1.0, grid)
    ys = np.linspace(-1.0, 1.0, grid)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    inside = np.abs(X) < 1.0
    with np.errstate(divide="ignore", over="ignore"):
        bound = np.where(inside, np.exp(-1.0 / np.maximum(1.0 - np.abs(X), 1e-300)), 0.0)
    mask = inside & (np.abs(Y) <= bound)
    pts = np.column_stack([X[mask], Y[mask]])
    pts = np.vstack([pts, [[-1.0, 0.0], [1.0, 0.0]]])
    return SampledRegion2D(pts, {"predicate": "cusp_exp", "grid": grid})


def box_region(
    xmin: float = -1.0,
    xmax: float = 1.0,
    ymin: float = -1.0,
    ymax: float = 1.0,
    grid: int = 65,
) -> SampledRegion2D:
    """Tensor Chebyshev-Lobatto grid over a rectangle (corners included)."""
    tx = np.cos(np.linspace(np.pi, 0.0, grid))
    xs = (xmin + xmax) / 2 + (xmax - xmin) / 2 * tx
    ys = (ymin + ymax) / 2 + (ymax - ymin) / 2 * tx
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    pts = np.column_stack([X.ravel(), Y.ravel()])
    desc = {
        "predicate": "box",
        "grid": grid,
        "xmin": xmin,
        "xmax": xmax,
        "ymin": ymin,
        "ymax": ymax,
    }
    return SampledRegion2D(pts, desc)


def disk_boundary(npoints: int = 2048) -> SampledRegion2D:
    """Unit circle in the complex plane (sup over the disk boundary)."""
    theta = np.linspace(0.0, 2.0 * np.pi, npoints, endpoint=False)
    pts = np.column_stack([np.cos(theta), np.sin(theta)])
    return SampledRegion2D(pts, {"predicate": "disk_boundary", "points": npoints}, as_complex=True)


_REGION_GENERATORS = {
    "cusp_exp": lambda d: cusp_region(grid=int(d.get("grid", 401))),
    "box": lambda d: box_region(
        xmin=float(d.get("xmin", -1.0)),
        xmax=float(d.get("xmax", 1.0)),
        ymin=float(d.get("ymin", -1.0)),
        ymax=float(d.get("ymax", 1.0)),
        grid=int(d.get("grid", 65)),
    ),
    "disk_boundary": lambda d: disk_boundary(npoints=int(d.get("points", 2048))),
}


def set_to_json(E: CompactSet) -> dict:
    if isinstance(E, Interval):
        return {"kind": "interval", "a": E.a, "b": E.b}
    if isinstance(E, UnionSet):
        parts = [{"kind": "interval", "a": iv.a, "b": iv.b} for iv in E.intervals]
        parts += [{"kind": "point", "re": p.real, "im": p.imag} for p in E.points]
        return {"kind": "union", "parts": parts}
    if isinstance(E, SampledRegion2D):
        return {"kind": "region2d", **E.descriptor}
    raise TypeError(f"not a compact set: {E!r}")


def set_from_json(obj: dict) -> CompactSet:
    kind = obj.get("kind")
    if kind == "interval":
        return Interval(float(obj["a"]), float(obj["b"]))
    if kind == "union":
        intervals, points = [], []
        for part in obj["parts"]:
            if part.get("kind") == "interval":
                intervals.append(Interval(float(part["a"]), float(part["b"])))
            elif part.get("kind") == "point":
                points.append(complex(float(part.get("re", 0.0)), float(part.get("im", 0.0))))
            else:
                raise ValueError(f"unknown union part {part!r}")
        return UnionSet(tuple(intervals), tuple(points))
    if kind == "region2d":
        predicate = obj.get("predicate")
        gen = _REGION_GENERATORS.get(predicate)
        if gen is None:
            raise ValueError(f"unknown region predicate {predicate!r}")
        return gen(obj)
    raise ValueError(f"unknown set kind {kind!r}")


@dataclass
class Measure:
    """Probability measure on an interval with cached Gauss rules.

    ``degree_budget`` is the largest polynomial degree whose square is still
    integrated exactly: rules are exact up to degree 2*degree_budget.
    """

    kind: str  # "lebesgue" | "jacobi" | "tabulated"
    support: Interval
    alpha: float = 0.0
    beta: float = 0.0
    weight_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    degree_budget: int = 256
    _rules: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("lebesgue", "jacobi", "tabulated"):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == "jacobi":
            if self.alpha <= -1 or self.beta <= -1:
                raise ValueError("jacobi parameters must exceed -1")
            if (self.support.a, self.support.b) != (-1.0, 1.0):
                raise ValueError("jacobi measures are supported on [-1, 1]")
        if self.kind == "tabulated" and self.weight_fn is None:
            raise ValueError("tabulated measure needs a weight function")

    def gauss_rule(self, nnodes: int):
        """Nodes and weights of an n-point rule, normalized to total mass 1."""
        nnodes = max(int(nnodes), 1)
        if nnodes in self._rules:
            return self._rules[nnodes]
        if self.kind == "lebesgue":
            x, w = np.polynomial.legendre.leggauss(nnodes)
            mid = (self.support.a + self.support.b) / 2
            half = self.support.width / 2
            nodes, weights = mid + half * x, w / 2.0
        elif self.kind == "jacobi":
            nodes, weights = roots_jacobi(nnodes, self.alpha, self.beta)
            weights = weights / weights.sum()
        else:
            x, w = np.polynomial.legendre.leggauss(nnodes)
            mid = (self.support.a + self.support.b) / 2
            half = self.support.width / 2
            nodes = mid + half * x
            weights = w * half * np.asarray(self.weight_fn(nodes), dtype=float)
            total = weights.sum()
            # self-consistency: a doubled rule must agree to 1e-8 relative
            x2, w2 = np.polynomial.legendre.leggauss(2 * nnodes)
            n2 = mid + half * x2
            total2 = (w2 * half * np.asarray(self.weight_fn(n2), dtype=float)).sum()
            if abs(total - total2) > 1e-8 * abs(total2):
                raise QuadratureBudgetError(
                    "tabulated weight fails quadrature self-consistency; "
                    "increase the node count"
                )
            weights = weights / total
        rule = (nodes, weights)
        self._rules[nnodes] = rule
        return rule

    def rule_for_degree(self, degree: int):
        """Rule exact for polynomial integrands up to ``degree``.

        Gauss rules are exact only against their own weight; a tabulated
        weight is part of the integrand, so that case oversamples (spectral
        accuracy for smooth weights) instead of claiming exactness.
        """
        if degree > 2 * self.degree_budget:
            raise QuadratureBudgetError(
                f"integrand degree {degree} exceeds budget {2 * self.degree_budget}"
            )
        if self.kind == "tabulated":
            return self.gauss_rule(max(degree + 1, 64))
        return self.gauss_rule(degree // 2 + 1)

    def integrate_values(self, values: np.ndarray, weights: np.ndarray) -> float:
        # pairwise summation via np.dot keeps reductions deterministic
        return float(np.dot(weights, values))

    def total_mass(self, nnodes: int = 64) -> float:
        _, w = self.gauss_rule(nnodes)
        return float(w.sum())


def lebesgue_measure(a: float = -1.0, b: float = 1.0, degree_budget: int = 256) -> Measure:
    return Measure("lebesgue", Interval(a, b), degree_budget=degree_budget)


def jacobi_measure(alpha: float, beta: float, degree_budget: int = 256) -> Measure:
    return Measure("jacobi", Interval(-1.0, 1.0), alpha=alpha, beta=beta, degree_budget=degree_budget)


def chebyshev_measure(degree_budget: int = 256) -> Measure:
    return jacobi_measure(-0.5, -0.5, degree_budget=degree_budget)


def tabulated_measure(
    weight_fn: Callable[[np.ndarray], np.ndarray],
    a: float = -1.0,
    b: float = 1.0,
    degree_budget: int = 256,
) -> Measure:
    return Measure(
        "tabulated", Interval(a, b), weight_fn=weight_fn, degree_budget=degree_budget
    )


def measure_to_json(mu: Measure) -> dict:
    if mu.kind == "lebesgue":
        return {"kind": "lebesgue", "a": mu.support.a, "b": mu.support.b}
    if mu.kind == "jacobi":
        return {"kind": "jacobi", "alpha": mu.alpha, "beta": mu.beta}
    raise TypeError("tabulated measures are not JSON-serializable")


def measure_from_json(obj: dict) -> Measure:
    kind = obj.get("kind")
    if kind == "lebesgue":
        return lebesgue_measure(float(obj.get("a", -1.0)), float(obj.get("b", 1.0)))
    if kind == "jacobi":
        return jacobi_measure(float(obj["alpha"]), float(obj["beta"]))
    raise ValueError(f"unknown measure kind {kind!r}")
