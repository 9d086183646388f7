"""Norm families on polynomial spaces, their evaluators, and equivalence fits.

Sup norms on intervals are sampled at 8*(deg+1) Chebyshev-Lobatto points and
locally refined by golden-section iterations, so every reported sup value is a
certified under-estimate; certificates built from them are lower bounds.
``refine=False`` skips the local refinement for hot search loops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

import numpy as np
from scipy.integrate import quad as _quad

from .chebseries import ChebSeries, ChebSeries2D, lobatto_points
from .domains import (
    CompactSet,
    Interval,
    Measure,
    SampledRegion2D,
    UnionSet,
    measure_from_json,
    measure_to_json,
    set_from_json,
    set_to_json,
)
from .errors import DimensionMismatchError, PrecisionOverflowError
from .fitting import max_pairwise_slope
from .polynomials import NEG_INF, UniPoly, multipoly_grid_values, MultiPoly

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_GOLDEN_TOL = 1e-12


def _poly_dim(p) -> int:
    if isinstance(p, (UniPoly, ChebSeries)):
        return 1
    if isinstance(p, ChebSeries2D):
        return 2
    if isinstance(p, MultiPoly):
        return p.nvars
    raise TypeError(f"not a polynomial object: {p!r}")


def _degree_int(p) -> int:
    d = p.degree if hasattr(p, "degree") else p.total_degree
    return 0 if d == NEG_INF else int(d)


def _golden_max_multi(g, lo: np.ndarray, hi: np.ndarray):
    """Vectorized golden-section maximization over several brackets at once."""
    lo = lo.astype(float).copy()
    hi = hi.astype(float).copy()
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = g(x1), g(x2)
    for _ in range(100):
        if np.max(hi - lo) <= _GOLDEN_TOL:
            break
        move_lo = f1 < f2
        lo = np.where(move_lo, x1, lo)
        hi = np.where(move_lo, hi, x2)
        x1 = hi - _INVPHI * (hi - lo)
        x2 = lo + _INVPHI * (hi - lo)
        f1, f2 = g(x1), g(x2)
    vals = np.maximum(f1, f2)
    xs = np.where(f1 >= f2, x1, x2)
    return xs, vals


def _weighted_sup_on_interval(p, a, b, weight=None, refine=True):
    """max of |p(x)|*weight(x) over [a, b]; ties report the smallest abscissa.

    Refinement golden-sections every near-maximal bracket of the sample grid
    (not just the best one): under-refining a competing local maximum is what
    would let ratio estimates drift above true extremal ratios.
    """
    deg = _degree_int(p)
    npts = 8 * (deg + 1)
    if (a, b) == (-1.0, 1.0):
        pts = lobatto_points(npts)
    else:
        pts = (a + b) / 2 + (b - a) / 2 * lobatto_points(npts)
    vals = np.abs(p(pts))
    if weight is not None:
        vals = vals * weight(pts)
    i = int(np.argmax(vals))  # ascending grid: first max is the smallest abscissa
    best_x, best = float(pts[i]), float(vals[i])
    if refine and len(pts) > 2:
        interior = np.arange(1, len(pts) - 1)
        local_max = (vals[interior] >= vals[interior - 1]) & (
            vals[interior] >= vals[interior + 1]
        )
        near_top = vals[interior] >= 0.9 * best
        idx = interior[local_max & near_top]
        brackets = {(int(j - 1), int(j + 1)) for j in idx}
        brackets.add((max(i - 1, 0), min(i + 1, len(pts) - 1)))
        brackets = sorted(brackets)
        lo = np.array([pts[j] for j, _ in brackets])
        hi = np.array([pts[j] for _, j in brackets])
        if weight is None:
            g = lambda x: np.abs(p(x))
        else:
            g = lambda x: np.abs(p(x)) * weight(x)
        xs, refined = _golden_max_multi(g, lo, hi)
        j = int(np.argmax(refined))
        if refined[j] > best or (refined[j] == best and xs[j] < best_x):
            best_x, best = float(xs[j]), float(refined[j])
    return best, best_x


def sup_norm(p, E: CompactSet, refine: bool = True) -> float:
    """Supremum norm of p over E (sampled lower estimate, see module note)."""
    dim = _poly_dim(p)
    if isinstance(E, Interval):
        if dim != 1:
            raise DimensionMismatchError("interval sets take univariate polynomials")
        return _weighted_sup_on_interval(p, E.a, E.b, refine=refine)[0]
    if isinstance(E, UnionSet):
        if dim != 1:
            raise DimensionMismatchError("union sets take univariate polynomials")
        best = 0.0
        for iv in E.intervals:
            best = max(best, _weighted_sup_on_interval(p, iv.a, iv.b, refine=refine)[0])
        for z in E.points:
            best = max(best, abs(p(z) if z.imag else p(z.real)))
        return float(best)
    if isinstance(E, SampledRegion2D):
        if E.as_complex:
            if dim != 1:
                raise DimensionMismatchError("complex point sets take univariate polynomials")
            return float(np.max(np.abs(p(E.complex_points))))
        if dim != 2:
            raise DimensionMismatchError("2D regions take two-variable polynomials")
        xs, ys = E.points[:, 0], E.points[:, 1]
        if isinstance(p, ChebSeries2D):
            return float(np.max(np.abs(p.values(xs, ys))))
        return float(np.max(np.abs(multipoly_grid_values(p, xs, ys))))
    raise TypeError(f"unknown compact set {E!r}")


# ---------------------------------------------------------------------------
# L^p norms


def _poly_is_real(p) -> bool:
    if isinstance(p, ChebSeries):
        return not np.iscomplexobj(p.coef)
    return all(complex(c).imag == 0 for c in p.coeffs)


def _real_roots_inside(p, a: float, b: float) -> list:
    if isinstance(p, UniPoly):
        cheb = ChebSeries.from_unipoly(p)
    else:
        cheb = p
    if cheb.degree in (NEG_INF, 0):
        return []
    roots = np.polynomial.chebyshev.chebroots(cheb.coef)
    out = []
    for z in np.atleast_1d(roots):
        if abs(z.imag) < 1e-9 and a < z.real < b:
            out.append(float(z.real))
    out.sort()
    merged = []
    for r in out:
        if not merged or r - merged[-1] > 1e-12:
            merged.append(r)
    return merged


def _weight_density(mu: Measure):
    """Probability density of mu on its support, for adaptive quadrature."""
    a, b = mu.support.a, mu.support.b
    if mu.kind == "lebesgue":
        c = 1.0 / (b - a)
        return lambda x: c
    if mu.kind == "jacobi":
        log_m0 = (
            (mu.alpha + mu.beta + 1) * math.log(2.0)
            + math.lgamma(mu.alpha + 1)
            + math.lgamma(mu.beta + 1)
            - math.lgamma(mu.alpha + mu.beta + 2)
        )
        c = math.exp(-log_m0)
        return lambda x: c * (1.0 - x) ** mu.alpha * (1.0 + x) ** mu.beta
    total = _quad(lambda x: float(mu.weight_fn(np.asarray([x]))[0]), a, b, limit=200)[0]
    return lambda x: float(mu.weight_fn(np.asarray([x]))[0]) / total


def lp_norm(p, mu: Measure, s: float) -> float:
    """(integral of |p|^s dmu)^(1/s).

    Even integer s: single Gauss rule matched to the weight (exact).  Odd
    integer s on a Lebesgue measure: the interval is split at the real roots
    of p so each piece is again an exact polynomial integral.  All remaining
    cases go through adaptive quadrature with the roots as split points.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if _poly_dim(p) != 1:
        raise DimensionMismatchError("lp_norm takes univariate polynomials")
    deg = _degree_int(p)
    a, b = mu.support.a, mu.support.b
    s_int = int(s) if float(s).is_integer() else None

    if s_int is not None and s_int % 2 == 0:
        nodes, weights = mu.rule_for_degree(deg * s_int)
        vals = np.abs(p(nodes)) ** s_int
        return float(mu.integrate_values(vals, weights) ** (1.0 / s_int))

    if s_int is not None and mu.kind == "lebesgue" and _poly_is_real(p):
        cuts = [a] + _real_roots_inside(p, a, b) + [b]
        total = 0.0
        x0, w0 = np.polynomial.legendre.leggauss(deg * s_int // 2 + 1)
        for lo, hi in zip(cuts, cuts[1:]):
            mid, half = (lo + hi) / 2, (hi - lo) / 2
            xs = mid + half * x0
            total += float(np.dot(w0 * half, np.abs(p(xs)) ** s_int))
        return float((total / (b - a)) ** (1.0 / s_int))

    density = _weight_density(mu)
    pts = _real_roots_inside(p, a, b) if _poly_is_real(p) else None
    val, _err = _quad(
        lambda x: abs(p(x)) ** s * density(x),
        a,
        b,
        points=pts or None,
        limit=200,
        epsabs=1e-12,
        epsrel=1e-10,
    )
    return float(val ** (1.0 / s))


# ---------------------------------------------------------------------------
# Weighted sup (Schur) norms


def schur_norm(p, alpha: float, E: Optional[CompactSet] = None, refine: bool = True) -> float:
    """sup of |p(x)| * (1 - x^2)^alpha over [-1, 1] (or (1-|x|^2)^alpha on a ball)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if E is None:
        E = Interval(-1.0, 1.0)
    if isinstance(E, Interval):
        if (E.a, E.b) != (-1.0, 1.0):
            raise ValueError("the weighted sup norm is defined on [-1, 1]")
        if _poly_dim(p) != 1:
            raise DimensionMismatchError("interval weighted sup takes univariate p")
        weight = lambda x: np.maximum(1.0 - x * x, 0.0) ** alpha
        return _weighted_sup_on_interval(p, -1.0, 1.0, weight=weight, refine=refine)[0]
    if isinstance(E, SampledRegion2D) and not E.as_complex:
        if _poly_dim(p) != 2:
            raise DimensionMismatchError("ball weighted sup takes two-variable p")
        xs, ys = E.points[:, 0], E.points[:, 1]
        w = np.maximum(1.0 - xs * xs - ys * ys, 0.0) ** alpha
        if isinstance(p, ChebSeries2D):
            vals = np.abs(p.values(xs, ys))
        else:
            vals = np.abs(multipoly_grid_values(p, xs, ys))
        return float(np.max(vals * w))
    raise TypeError("weighted sup norm needs [-1, 1] or a ball point cloud")


# ---------------------------------------------------------------------------
# Factorial-weighted jet norms qms(m, s)


def _seminorm_block_exact(p: UniPoly, r: int, s: int) -> Fraction:
    """Sum over l < s of |p^(rs+l)(0)| / l! for exact real coefficients."""
    total = Fraction(0)
    for l in range(s):
        i = r * s + l
        if i >= len(p.coeffs):
            break
        c = p.coeffs[i]
        if not c:
            continue
        if not isinstance(c, (Fraction, int)):
            raise TypeError("exact qms evaluation needs int/Fraction coefficients")
        total += abs(Fraction(c)) * Fraction(math.factorial(i), math.factorial(l))
    return total


def qms_seminorm_terms(p: UniPoly, s: int) -> dict:
    """Exact map r -> seminorm of p^(rs), the m-independent part of the norm.

    The norm value for any exponent m is sum_r terms[r] * ((r*s)!)^(-m), so
    equality of these maps certifies the norm equality for every rational m
    at once, without evaluating irrational factorial powers.
    """
    if s < 1:
        raise ValueError("s must be a positive integer")
    if p.is_zero:
        return {}
    out = {}
    for r in range(int(p.degree) // s + 1):
        v = _seminorm_block_exact(p, r, s)
        if v:
            out[r] = v
    return out


def _log_fraction(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def _logsumexp(vals) -> float:
    vals = [v for v in vals if v != NEG_INF]
    if not vals:
        return NEG_INF
    top = max(vals)
    return top + math.log(sum(math.exp(v - top) for v in vals))


def qms_log_norm(p: UniPoly, m, s: int) -> float:
    """log of the qms norm, safe for factorial-sized magnitudes.

    Exact coefficients contribute exact big-integer logs; float coefficients
    go through lgamma.  Returns -inf for the zero polynomial.
    """
    if s < 1:
        raise ValueError("s must be a positive integer")
    if p.is_zero:
        return NEG_INF
    mf = float(m)
    logs = []
    exact = p.is_exact and _poly_is_real(p)
    for r in range(int(p.degree) // s + 1):
        if exact:
            v = _seminorm_block_exact(p, r, s)
            if not v:
                continue
            log_term = _log_fraction(v)
            log_fact = math.log(math.factorial(r * s)) if r * s else 0.0
        else:
            pieces = []
            for l in range(s):
                i = r * s + l
                if i >= len(p.coeffs):
                    break
                mag = abs(complex(p.coeffs[i]))
                if mag == 0.0:
                    continue
                pieces.append(math.log(mag) + math.lgamma(i + 1) - math.lgamma(l + 1))
            if not pieces:
                continue
            log_term = _logsumexp(pieces)
            log_fact = math.lgamma(r * s + 1)
        logs.append(log_term - mf * log_fact)
    return _logsumexp(logs)


def qms_norm(p: UniPoly, m, s: int) -> float:
    """Factorial-weighted jet norm; raises on float overflow/underflow."""
    lv = qms_log_norm(p, m, s)
    if lv == NEG_INF:
        return 0.0
    if lv > 700.0 or lv < -700.0:
        raise PrecisionOverflowError(
            "qms value leaves the double range; use qms_log_norm or exact mode"
        )
    return math.exp(lv)


def qms_norm_exact(p: UniPoly, m: int, s: int) -> Fraction:
    """Exact rational norm value; needs an integer exponent m >= 0."""
    if not isinstance(m, int) or m < 0:
        raise ValueError("exact qms values are rational only for integer m >= 0")
    total = Fraction(0)
    for r, term in qms_seminorm_terms(p, s).items():
        total += term / Fraction(math.factorial(r * s)) ** m
    return total


# ---------------------------------------------------------------------------
# Composite norms


def taylor_disk_norm(p, E: CompactSet, r: float, refine: bool = True) -> float:
    """sum_k sup|p^(k)|_E * r^k / k! (finite: terms vanish past deg p)."""
    if r <= 0:
        raise ValueError("disk radius must be positive")
    if isinstance(p, ChebSeries) and isinstance(E, Interval) and not refine:
        deg = _degree_int(p)
        stack = p.deriv_stack(deg)
        pts = (E.a + E.b) / 2 + (E.b - E.a) / 2 * lobatto_points(8 * (deg + 1))
        vals = np.polynomial.chebyshev.chebval(pts, stack.T)
        sups = np.max(np.abs(vals), axis=1)
        weights = np.array([r**k / math.factorial(k) for k in range(deg + 1)])
        return float(np.dot(sups, weights))
    deg = _degree_int(p)
    total = 0.0
    for k in range(deg + 1):
        total += sup_norm(p.deriv(k), E, refine=refine) * r**k / math.factorial(k)
    return float(total)


def mixed_deriv_norm(p, E: CompactSet, axis: int = 0, refine: bool = True) -> float:
    """sup|p|_E + sup|d p / d x_axis|_E."""
    if isinstance(p, (UniPoly, ChebSeries)):
        dp = p.deriv(1)
    elif isinstance(p, MultiPoly):
        dp = p.partial(axis)
    elif isinstance(p, ChebSeries2D):
        dp = p.deriv(kx=1) if axis == 0 else p.deriv(ky=1)
    else:
        raise TypeError(f"unsupported polynomial {p!r}")
    return sup_norm(p, E, refine=refine) + sup_norm(dp, E, refine=refine)


def sup_plus_lp_norm(p, E: CompactSet, mu: Measure, s: float, refine: bool = True) -> float:
    return sup_norm(p, E, refine=refine) + lp_norm(p, mu, s)


# ---------------------------------------------------------------------------
# Norm specifications (wire format) and dispatch


@dataclass(frozen=True)
class SupSpec:
    set: CompactSet
    kind: str = field(default="sup", init=False)


@dataclass(frozen=True)
class LpSpec:
    measure: Measure
    s: float
    kind: str = field(default="lp", init=False)

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("lp order s must be >= 1")


@dataclass(frozen=True)
class SupPlusLpSpec:
    set: CompactSet
    measure: Measure
    s: float
    kind: str = field(default="sup_plus_lp", init=False)

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("lp order s must be >= 1")


@dataclass(frozen=True)
class SchurSpec:
    alpha: float
    set: Optional[CompactSet] = None
    kind: str = field(default="schur", init=False)

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("weight exponent alpha must be positive")


@dataclass(frozen=True)
class QmsSpec:
    m: float
    s: int
    kind: str = field(default="qms", init=False)

    def __post_init__(self):
        if float(self.m) <= 0 or self.s < 1:
            raise ValueError("qms needs m > 0 and a positive integer s")


@dataclass(frozen=True)
class TaylorDiskSpec:
    set: CompactSet
    r: float
    kind: str = field(default="taylor_disk", init=False)

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError("disk radius must be positive")


@dataclass(frozen=True)
class MixedDerivSpec:
    set: CompactSet
    axis: int = 0
    kind: str = field(default="mixed_deriv", init=False)


NormSpec = Union[
    SupSpec, LpSpec, SupPlusLpSpec, SchurSpec, QmsSpec, TaylorDiskSpec, MixedDerivSpec
]


def evaluate_norm(spec: NormSpec, p, refine: bool = True) -> float:
    if isinstance(spec, SupSpec):
        return sup_norm(p, spec.set, refine=refine)
    if isinstance(spec, LpSpec):
        return lp_norm(p, spec.measure, spec.s)
    if isinstance(spec, SupPlusLpSpec):
        return sup_plus_lp_norm(p, spec.set, spec.measure, spec.s, refine=refine)
    if isinstance(spec, SchurSpec):
        return schur_norm(p, spec.alpha, spec.set, refine=refine)
    if isinstance(spec, QmsSpec):
        if isinstance(p, ChebSeries):
            p = p.to_unipoly()
        return qms_norm(p, spec.m, spec.s)
    if isinstance(spec, TaylorDiskSpec):
        return taylor_disk_norm(p, spec.set, spec.r, refine=refine)
    if isinstance(spec, MixedDerivSpec):
        return mixed_deriv_norm(p, spec.set, spec.axis, refine=refine)
    raise TypeError(f"unknown norm spec {spec!r}")


def spec_to_json(spec: NormSpec) -> dict:
    if isinstance(spec, SupSpec):
        return {"kind": "sup", "set": set_to_json(spec.set)}
    if isinstance(spec, LpSpec):
        return {"kind": "lp", "measure": measure_to_json(spec.measure), "s": spec.s}
    if isinstance(spec, SupPlusLpSpec):
        return {
            "kind": "sup_plus_lp",
            "set": set_to_json(spec.set),
            "measure": measure_to_json(spec.measure),
            "s": spec.s,
        }
    if isinstance(spec, SchurSpec):
        out = {"kind": "schur", "alpha": spec.alpha}
        if spec.set is not None:
            out["set"] = set_to_json(spec.set)
        return out
    if isinstance(spec, QmsSpec):
        return {"kind": "qms", "m": spec.m, "s": spec.s}
    if isinstance(spec, TaylorDiskSpec):
        return {"kind": "taylor_disk", "set": set_to_json(spec.set), "r": spec.r}
    if isinstance(spec, MixedDerivSpec):
        return {"kind": "mixed_deriv", "set": set_to_json(spec.set), "axis": spec.axis}
    raise TypeError(f"unknown norm spec {spec!r}")


def spec_from_json(obj: dict) -> NormSpec:
    kind = obj.get("kind")
    if kind == "sup":
        return SupSpec(set_from_json(obj["set"]))
    if kind == "lp":
        return LpSpec(measure_from_json(obj["measure"]), float(obj["s"]))
    if kind == "sup_plus_lp":
        return SupPlusLpSpec(
            set_from_json(obj["set"]), measure_from_json(obj["measure"]), float(obj["s"])
        )
    if kind == "schur":
        E = set_from_json(obj["set"]) if "set" in obj else None
        return SchurSpec(float(obj["alpha"]), E)
    if kind == "qms":
        return QmsSpec(float(obj["m"]), int(obj["s"]))
    if kind == "taylor_disk":
        return TaylorDiskSpec(set_from_json(obj["set"]), float(obj["r"]))
    if kind == "mixed_deriv":
        return MixedDerivSpec(set_from_json(obj["set"]), int(obj.get("axis", 0)))
    raise ValueError(f"unknown norm kind {kind!r}")


# ---------------------------------------------------------------------------
# Spectral-limit estimation


@dataclass(frozen=True)
class SpectralEstimate:
    """Tail of q(p^s)^(1/s) plus a 1/s-corrected limit estimate."""

    values: tuple
    limit: float
    plain_tail: float
    monotone: bool


def spectral_norm_estimate(p, spec: NormSpec, s_max: int) -> SpectralEstimate:
    """Estimate lim_s q(p^s)^(1/s) from s = 1..s_max.

    The tail is fit as L*(1 + c/s) on its last half; norms equivalent to a
    sup norm up to a (deg+1) factor have exactly this correction order.
    """
    if s_max < 4:
        raise ValueError("s_max must be at least 4")
    use_qms = isinstance(spec, QmsSpec)
    if isinstance(p, UniPoly) and not use_qms and _poly_is_real(p):
        p = ChebSeries.from_unipoly(p)
    vals = []
    for s in range(1, s_max + 1):
        ps = p**s
        if use_qms:
            if isinstance(ps, ChebSeries):
                ps = ps.to_unipoly()
            lv = qms_log_norm(ps, spec.m, spec.s)
            vals.append(math.exp(lv / s) if lv != NEG_INF else 0.0)
        else:
            vals.append(evaluate_norm(spec, ps) ** (1.0 / s))
    tail = list(range(max(1, s_max // 2), s_max + 1))
    ys = np.array([vals[s - 1] for s in tail])
    X = np.vstack([np.ones(len(tail)), 1.0 / np.array(tail, dtype=float)]).T
    coef, *_ = np.linalg.lstsq(X, ys, rcond=None)
    diffs = np.diff(vals)
    monotone = bool(np.all(diffs <= 1e-12 * max(abs(v) for v in vals))) or bool(
        np.all(diffs >= -1e-12 * max(abs(v) for v in vals))
    )
    return SpectralEstimate(
        values=tuple(float(v) for v in vals),
        limit=float(coef[0]),
        plain_tail=float(vals[-1]),
        monotone=monotone,
    )


# ---------------------------------------------------------------------------
# Two-sided norm-equivalence certificates


@dataclass(frozen=True)
class NikolskiiCertificate:
    """Fitted two-sided degree-power equivalence between two norms.

    Certifies q1(p) <= A * n^a * q2(p) and q2(p) <= B * n^b * q1(p) at every
    tested degree on the corpus (with ``slack`` the worst margin, >= 0 when
    status is "certified").
    """

    A: float
    a: float
    B: float
    b: float
    degree_range: tuple
    slack: float
    status: str
    witness_forward: str = ""
    witness_reverse: str = ""


def fit_nikolskii(
    q1: NormSpec,
    q2: NormSpec,
    corpus: Mapping[int, Sequence],
    deg_range: Optional[tuple] = None,
) -> NikolskiiCertificate:
    """Fit the smallest degree-power slopes relating two norms on a corpus."""
    degrees = sorted(n for n in corpus if n >= 1)
    if deg_range is not None:
        degrees = [n for n in degrees if deg_range[0] <= n <= deg_range[1]]
    if not degrees:
        raise ValueError("corpus has no degrees >= 1 in range")
    fwd, rev, wit_f, wit_r = [], [], [], []
    for n in degrees:
        best_f, best_r = 0.0, 0.0
        bf_w = br_w = ""
        for idx, p in enumerate(corpus[n]):
            v1 = evaluate_norm(q1, p)
            v2 = evaluate_norm(q2, p)
            if v2 == 0.0 and v1 > 0.0 or v1 == 0.0 and v2 > 0.0:
                return NikolskiiCertificate(
                    math.inf, math.inf, math.inf, math.inf,
                    (degrees[0], degrees[-1]), -math.inf, "failed",
                    witness_forward=f"deg{n}#{idx}",
                )
            if v1 == 0.0 and v2 == 0.0:
                continue
            rf, rr = v1 / v2, v2 / v1
            if rf > best_f:
                best_f, bf_w = rf, f"deg{n}#{idx}"
            if rr > best_r:
                best_r, br_w = rr, f"deg{n}#{idx}"
        fwd.append(best_f)
        rev.append(best_r)
        wit_f.append(bf_w)
        wit_r.append(br_w)
    logn = np.log(np.array(degrees, dtype=float))
    a = max(0.0, max_pairwise_slope(logn, np.log(np.maximum(fwd, 1e-300))))
    b = max(0.0, max_pairwise_slope(logn, np.log(np.maximum(rev, 1e-300))))
    A = max(f / n**a for f, n in zip(fwd, degrees))
    B = max(r / n**b for r, n in zip(rev, degrees))
    slack = min(
        min(A * n**a - f for f, n in zip(fwd, degrees)),
        min(B * n**b - r for r, n in zip(rev, degrees)),
    )
    i_f = int(np.argmax(fwd))
    i_r = int(np.argmax(rev))
    return NikolskiiCertificate(
        A=float(A),
        a=float(a),
        B=float(B),
        b=float(b),
        degree_range=(degrees[0], degrees[-1]),
        slack=float(slack),
        status="certified",
        witness_forward=wit_f[i_f],
        witness_reverse=wit_r[i_r],
    )
