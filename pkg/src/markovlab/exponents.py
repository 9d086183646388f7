"""Finite-degree Markov factors M_k(n; q) and exponent estimation.

Factor values are exact (largest singular value) in L2 settings and certified
lower bounds everywhere else: sup-norm maximization is itself sampled, and the
candidate-plus-ascent search can only under-shoot the true extremal ratio.
Tables record which of the two certifications applies to every row.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .chebseries import (
    ChebSeries,
    ChebSeries2D,
    chebyshev_t,
    chebyshev_u,
    legendre_orthonormal,
    monomial,
    product_2d,
    random_unit,
)
from .domains import Interval, Measure, SampledRegion2D, box_region
from .errors import SpectralityError
from .fitting import AsymptoticTrend, ExponentFit, asymptotic_trend, fit_power_law
from .norms import (
    LpSpec,
    NormSpec,
    evaluate_norm,
    qms_log_norm,
    sup_norm,
    schur_norm,
)
from .orthopoly import OrthoSystem, jacobi_system, stieltjes_orthonormalize
from .polynomials import MultiPoly, UniPoly

DEFAULT_SEED = 1729
_ASCENT_ROUNDS = 200
_N_RANDOM_CANDIDATES = 64


# ---------------------------------------------------------------------------
# Operator descriptors


@dataclass(frozen=True)
class DerivOp:
    """d^k/dx^k in one variable; per-axis k-th partials in two."""

    k: int

    @property
    def label(self) -> str:
        return f"deriv:{self.k}"

    def apply_all(self, p):
        if self.k == 0:
            return [p]
        if isinstance(p, (ChebSeries, UniPoly)):
            return [p.deriv(self.k)]
        if isinstance(p, ChebSeries2D):
            return [p.deriv(kx=self.k), p.deriv(ky=self.k)]
        if isinstance(p, MultiPoly):
            out = []
            for j in range(p.nvars):
                q = p
                for _ in range(self.k):
                    q = q.partial(j)
                out.append(q)
            return out
        raise TypeError(f"unsupported polynomial {p!r}")


@dataclass(frozen=True)
class DirDerivOp:
    """Single application of v1*D1 + ... + vN*DN."""

    v: tuple

    @property
    def label(self) -> str:
        return "dirop:" + ",".join(repr(float(c)) for c in self.v)

    def apply_all(self, p):
        if isinstance(p, (ChebSeries, UniPoly)):
            if len(self.v) != 1:
                raise ValueError("univariate polynomial with multi-component direction")
            return [self.v[0] * p.deriv(1)]
        if isinstance(p, ChebSeries2D):
            if len(self.v) != 2:
                raise ValueError("direction length must be 2")
            return [self.v[0] * p.deriv(kx=1) + self.v[1] * p.deriv(ky=1)]
        raise TypeError(f"unsupported polynomial {p!r}")


@dataclass(frozen=True)
class HomOp:
    """H(D1, ..., DN) for a homogeneous H given as exponent/coefficient terms."""

    terms: tuple  # ((alpha tuple, coeff), ...)

    def __post_init__(self):
        degs = {sum(alpha) for alpha, _ in self.terms}
        if len(degs) != 1 or degs == {0}:
            raise ValueError("operator terms must be homogeneous of degree >= 1")

    @property
    def order(self) -> int:
        return sum(self.terms[0][0])

    @property
    def label(self) -> str:
        body = "+".join(f"{c}*D^{list(a)}" for a, c in self.terms)
        return f"hop:{body}"

    def apply_all(self, p):
        if isinstance(p, ChebSeries2D):
            acc = ChebSeries2D(np.zeros((1, 1)))
            for alpha, c in self.terms:
                acc = acc + c * p.deriv(kx=alpha[0], ky=alpha[1])
            return [acc]
        if isinstance(p, MultiPoly):
            h = MultiPoly._raw({tuple(a): c for a, c in self.terms}, p.nvars)
            from .polynomials import hdop_apply

            return [hdop_apply(h, p)]
        if isinstance(p, (ChebSeries, UniPoly)):
            (alpha, c), *rest = self.terms
            if rest or len(alpha) != 1:
                raise ValueError("univariate polynomial with multivariate operator")
            return [c * p.deriv(alpha[0])]
        raise TypeError(f"unsupported polynomial {p!r}")


OperatorSpec = Union[DerivOp, DirDerivOp, HomOp]


def operator_from_json(obj: dict) -> OperatorSpec:
    kind = obj.get("kind")
    if kind == "deriv":
        return DerivOp(int(obj["k"]))
    if kind == "dirop":
        return DirDerivOp(tuple(float(c) for c in obj["v"]))
    if kind == "hop":
        return HomOp(tuple((tuple(int(x) for x in a), float(c)) for a, c in obj["H"]))
    raise ValueError(f"unknown operator kind {kind!r}")


# ---------------------------------------------------------------------------
# Markov factor tables


@dataclass(frozen=True)
class TableRow:
    n: int
    factor: float
    witness: str


@dataclass(frozen=True)
class MarkovTable:
    op: str
    normspec: NormSpec
    rows: tuple
    certification: str  # "Exact" | "LowerBound"

    def degrees(self):
        return [row.n for row in self.rows]

    def factors(self):
        return [row.factor for row in self.rows]

    def write_csv(self, path, meta: Optional[dict] = None):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            for key, value in (meta or {}).items():
                fh.write(f"# {key}: {value}\n")
            writer = csv.writer(fh)
            writer.writerow(
                ["op", "n", "factor", "certification", "witness_id", "log_n", "log_factor"]
            )
            for row in self.rows:
                log_f = repr(math.log(row.factor)) if row.factor > 0 else ""
                writer.writerow(
                    [
                        self.op,
                        row.n,
                        repr(float(row.factor)),
                        self.certification,
                        row.witness,
                        repr(math.log(row.n)) if row.n > 0 else "",
                        log_f,
                    ]
                )


def read_table_csv(path):
    """Rows (n, factor) plus leading '# key: value' metadata from a table CSV."""
    meta, rows = {}, []
    with open(path, newline="", encoding="utf-8") as fh:
        lines = [ln for ln in fh]
    data_lines = []
    for ln in lines:
        if ln.startswith("#"):
            body = ln[1:].strip()
            if ":" in body:
                key, value = body.split(":", 1)
                meta[key.strip()] = value.strip()
        else:
            data_lines.append(ln)
    reader = csv.DictReader(data_lines)
    for rec in reader:
        rows.append((int(rec["n"]), float(rec["factor"])))
    return meta, rows


@dataclass(frozen=True)
class L2Factor:
    factor: float
    witness_coeffs: np.ndarray
    system: OrthoSystem

    def witness_poly(self) -> UniPoly:
        out = UniPoly.zero()
        for c, q in zip(self.witness_coeffs, self.system.polys):
            if c:
                out = out + float(c) * q
        return out


def _system_for_measure(mu: Measure, nmax: int) -> OrthoSystem:
    nmax = max(nmax, 1)
    if mu.kind == "jacobi":
        return jacobi_system(mu.alpha, mu.beta, nmax)
    if mu.kind == "lebesgue" and (mu.support.a, mu.support.b) == (-1.0, 1.0):
        return jacobi_system(0.0, 0.0, nmax)
    return stieltjes_orthonormalize(mu, nmax)


def derivative_operator_matrix(sys: OrthoSystem, n: int, k: int) -> np.ndarray:
    """Matrix of d^k/dx^k on span(Q_0..Q_n) in the orthonormal basis."""
    nodes, weights = sys.measure.rule_for_degree(2 * n)
    V = sys.values(nodes, n)
    Vk = sys.deriv_values(nodes, k, n)
    return (V * weights) @ Vk.T


def markov_factor_l2(n: int, k: int, mu: Measure, sys: Optional[OrthoSystem] = None) -> L2Factor:
    """Exact max of ||p^(k)||_2 / ||p||_2 over deg p <= n, with its maximizer.

    The value is the largest singular value of the k-th derivative operator
    restricted to degree <= n in the orthonormal basis of mu.
    """
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if sys is None:
        sys = _system_for_measure(mu, max(n, 1))
    if n > sys.nmax:
        raise ValueError(f"degree {n} exceeds system nmax {sys.nmax}")
    if n == 0:
        return L2Factor(0.0, np.array([1.0]), sys)
    D = derivative_operator_matrix(sys, n, k)
    U, S, Vh = np.linalg.svd(D)
    return L2Factor(float(S[0]), Vh[0].copy(), sys)


@dataclass(frozen=True)
class SearchResult:
    factor: float
    witness_id: str
    witness: object


def _candidates_1d(n: int, rng: np.random.Generator, budget: int):
    cands = [
        ("chebyshev:%d" % n, chebyshev_t(n)),
        ("monomial:%d" % n, monomial(n)),
        ("legendre:%d" % n, legendre_orthonormal(n)),
    ]
    for i in range(_N_RANDOM_CANDIDATES * budget):
        cands.append((f"random:{i}", random_unit(n, rng)))
    return cands


def _candidates_2d(n: int, rng: np.random.Generator, budget: int):
    cands = []
    for i in range(n + 1):
        cands.append((f"chebprod:{i},{n - i}", product_2d(chebyshev_t(i), chebyshev_t(n - i))))
    for t in range(4 * budget):
        coef = np.zeros((n + 1, n + 1))
        for i in range(n + 1):
            coef[i, : n + 1 - i] = rng.standard_normal(n + 1 - i)
        cands.append((f"random2d:{t}", ChebSeries2D(coef / np.linalg.norm(coef))))
    return cands


def _ratio(op: OperatorSpec, q: NormSpec, p, refine: bool) -> float:
    denom = evaluate_norm(q, p, refine=refine)
    if denom == 0.0:
        return -math.inf
    best = 0.0
    for image in op.apply_all(p):
        best = max(best, evaluate_norm(q, image, refine=refine))
    return best / denom


def markov_factor_search(
    n: int,
    op: OperatorSpec,
    q: NormSpec,
    budget: int = 1,
    seed: int = DEFAULT_SEED,
) -> SearchResult:
    """Certified lower bound for M(n; q) by candidate max plus coordinate ascent.

    The candidate set is fixed and seeded (Chebyshev, monomial, orthonormal
    Legendre, random unit coefficient vectors); the best candidate is refined
    by coordinate-wise ascent with step halving.  Results are lower bounds by
    construction.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if isinstance(op, DerivOp) and op.k == 0:
        return SearchResult(1.0, "identity", None)
    rng = np.random.default_rng(seed + 7919 * n)
    two_dim = isinstance(getattr(q, "set", None), SampledRegion2D) and not getattr(
        q.set, "as_complex", False
    )
    cands = _candidates_2d(n, rng, budget) if two_dim else _candidates_1d(n, rng, budget)
    best_name, best_poly, best_ratio = "", None, -math.inf
    for name, p in cands:
        r = _ratio(op, q, p, refine=False)
        if r > best_ratio:
            best_name, best_poly, best_ratio = name, p, r
    if best_poly is None or best_ratio == -math.inf:
        return SearchResult(0.0, "none", None)
    finalists = [(best_name, best_poly)]
    if not two_dim:
        coef = np.array(best_poly.coef, dtype=float, copy=True)
        if coef.size < n + 1:
            coef = np.concatenate([coef, np.zeros(n + 1 - coef.size)])
        steps = np.full(coef.size, 0.25 * max(np.max(np.abs(coef)), 1e-6))
        cur_ratio = best_ratio
        improved = False
        for it in range(_ASCENT_ROUNDS * budget):
            i = it % coef.size
            if steps[i] < 1e-9:
                continue
            gained = False
            for sgn in (1.0, -1.0):
                trial = coef.copy()
                trial[i] += sgn * steps[i]
                r = _ratio(op, q, ChebSeries(trial), refine=False)
                if r > cur_ratio * (1 + 1e-14):
                    coef, cur_ratio, gained, improved = trial, r, True, True
                    break
            if not gained:
                steps[i] /= 2.0
        if improved:
            finalists.append((best_name + "+ascent", ChebSeries(coef)))
    # the ascent can overfit grid-only sup estimates; certify with refinement
    final_name, final_poly, final = "", None, -math.inf
    for name, p in finalists:
        r = _ratio(op, q, p, refine=True)
        if r > final:
            final_name, final_poly, final = name, p, r
    return SearchResult(float(max(final, 0.0)), final_name, final_poly)


def factor_table(
    q: NormSpec,
    op: OperatorSpec,
    degrees: Sequence[int],
    seed: int = DEFAULT_SEED,
    budget: int = 1,
) -> MarkovTable:
    """One factor row per degree; exact singular values in L2, search otherwise."""
    degrees = sorted(set(int(n) for n in degrees))
    if not degrees:
        raise ValueError("degree list must be nonempty")
    exact = isinstance(q, LpSpec) and float(q.s) == 2.0 and isinstance(op, DerivOp)
    rows = []
    if exact and op.k >= 1:
        sys = _system_for_measure(q.measure, max(degrees))
        for n in degrees:
            res = markov_factor_l2(n, op.k, q.measure, sys=sys)
            rows.append(TableRow(n, res.factor, "l2-extremal"))
        cert = "Exact"
    else:
        for n in degrees:
            if isinstance(op, DerivOp) and op.k == 0:
                rows.append(TableRow(n, 1.0, "identity"))
            else:
                res = markov_factor_search(n, op, q, budget=budget, seed=seed)
                rows.append(TableRow(n, res.factor, res.witness_id))
        cert = "LowerBound"
    return MarkovTable(op.label, q, tuple(rows), cert)


def fit_exponent(table: MarkovTable, window: Optional[tuple] = None) -> ExponentFit:
    """Least-squares and envelope slopes of log factor against log degree."""
    return fit_power_law(table.degrees(), table.factors(), window=window)


# ---------------------------------------------------------------------------
# Family (sequence) exponents


def family_exponent(family, E, k: int, n_range: tuple) -> ExponentFit:
    """Exponent of sup|Q_n^(k)|/sup|Q_n| growth for a degree-indexed family.

    ``family`` is either an OrthoSystem (stable recurrence evaluation, the
    only usable path at high degree) or a sequence of polynomials with
    deg family[n] = n.
    """
    lo, hi = int(n_range[0]), int(n_range[1])
    lo = max(lo, 1)
    ns = np.arange(lo, hi + 1)
    if isinstance(family, OrthoSystem):
        if hi > family.nmax:
            raise ValueError(f"range top {hi} exceeds system nmax {family.nmax}")
        base = family.sup_table(E, 0)
        der = family.sup_table(E, k)
        ratios = der[lo : hi + 1] / base[lo : hi + 1]
    else:
        ratios = []
        for n in ns:
            p = family[n]
            denom = sup_norm(p, E)
            if denom == 0.0:
                raise ValueError(f"family member {n} has zero norm")
            ratios.append(sup_norm(p.deriv(k), E) / denom)
        ratios = np.asarray(ratios)
    window = (max(lo, hi // 4), hi)
    return fit_power_law(ns, ratios, window=window)


def asymptotic_exponent(
    fits: Mapping[int, Union[ExponentFit, float]], k_range: Optional[tuple] = None
) -> AsymptoticTrend:
    """Trend of m_k/k from per-order exponent fits (see AsymptoticTrend)."""
    table = {}
    for k, fit in fits.items():
        if k_range is not None and not (k_range[0] <= k <= k_range[1]):
            continue
        table[int(k)] = fit.slope_ls if isinstance(fit, ExponentFit) else float(fit)
    return asymptotic_trend(table)


def norm_exponent_trend(
    q: NormSpec,
    kmax: int,
    degrees: Sequence[int],
    seed: int = DEFAULT_SEED,
    budget: int = 1,
) -> AsymptoticTrend:
    """Build factor tables for k = 1..kmax under q and fit the m_k/k trend."""
    fits = {}
    for k in range(1, kmax + 1):
        table = factor_table(q, DerivOp(k), degrees, seed=seed, budget=budget)
        fits[k] = fit_exponent(table)
    return asymptotic_exponent(fits)


# ---------------------------------------------------------------------------
# Factorial-jet norm exponents (closed form + achievability)


@dataclass(frozen=True)
class QmsExponentReport:
    m: Fraction
    s: int
    k: int
    exact_exponent: Fraction
    fitted_slope: float
    window: tuple

    @property
    def exact_float(self) -> float:
        return float(self.exact_exponent)


def qms_exact_exponent(
    m, s: int, k: int, n_window: tuple = (256, 1024), n_points: int = 9
) -> QmsExponentReport:
    """Order-k exponent of the qms(m, s) norm: s*m*ceil(k/s), with a numeric check.

    The closed-form value is exact on rationals (ceil included).  Achievability
    is verified on the monomial chain x^(s*n): the log-ratio of norms of the
    k-th derivative against the base monomial is fitted against log degree and
    must reproduce the closed form (the caller asserts the 0.1 tolerance).
    """
    if s < 1 or k < 1:
        raise ValueError("need s >= 1 and k >= 1")
    m_frac = Fraction(m)
    exact = s * m_frac * ((k + s - 1) // s)
    lo, hi = n_window
    ns = np.unique(np.geomspace(lo, hi, n_points).astype(int))
    log_ratios = []
    log_degs = []
    for n in ns:
        base = UniPoly.monomial(int(s * n), 1)
        deriv = base.deriv(k)
        lr = qms_log_norm(deriv, m_frac, s) - qms_log_norm(base, m_frac, s)
        log_ratios.append(lr)
        log_degs.append(math.log(s * n))
    A = np.vstack([np.asarray(log_degs), np.ones(len(ns))]).T
    (slope, _), *_ = np.linalg.lstsq(A, np.asarray(log_ratios), rcond=None)
    return QmsExponentReport(
        m=m_frac,
        s=int(s),
        k=int(k),
        exact_exponent=exact,
        fitted_slope=float(slope),
        window=(int(ns[0]), int(ns[-1])),
    )


# ---------------------------------------------------------------------------
# Named verification-style sweeps


@dataclass(frozen=True)
class LaplacianReport:
    l: int
    gradient_fit: ExponentFit
    operator_fit: ExponentFit
    exponent_ratio: float
    predicted_ratio: float


def laplacian_vs_gradient_check(
    E: Optional[SampledRegion2D] = None, degmax: int = 24, l: int = 1
) -> LaplacianReport:
    """Compare fitted exponents of sum_j d^2l/dx_j^2l against the gradient.

    A first-derivative bound with exponent m is equivalent to an order-2l
    bound with exponent 2l*m, so the ratio of fitted exponents should sit
    near 2l.  Runs on a product-Chebyshev corpus over a 2D box by default.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    E = E if E is not None else box_region()
    xs, ys = E.points[:, 0], E.points[:, 1]
    grad_rows, op_rows, ns = [], [], []
    for n in range(1, degmax + 1):
        best_grad, best_op = 0.0, 0.0
        for i in range(n + 1):
            p = product_2d(chebyshev_t(i), chebyshev_t(n - i))
            denom = float(np.max(np.abs(p.values(xs, ys))))
            if denom == 0.0:
                continue
            gx = float(np.max(np.abs(p.deriv(kx=1).values(xs, ys))))
            gy = float(np.max(np.abs(p.deriv(ky=1).values(xs, ys))))
            best_grad = max(best_grad, max(gx, gy) / denom)
            op_img = p.deriv(kx=2 * l) + p.deriv(ky=2 * l)
            best_op = max(best_op, float(np.max(np.abs(op_img.values(xs, ys)))) / denom)
        ns.append(n)
        grad_rows.append(best_grad)
        op_rows.append(best_op)
    grad_fit = fit_power_law(ns, grad_rows)
    op_fit = fit_power_law(ns, op_rows)
    return LaplacianReport(
        l=l,
        gradient_fit=grad_fit,
        operator_fit=op_fit,
        exponent_ratio=op_fit.slope_ls / grad_fit.slope_ls,
        predicted_ratio=2.0 * l,
    )


@dataclass(frozen=True)
class FloorReport:
    slope: float
    floor: float
    passed: bool
    spectral_defect: float


def spectral_exponent_floor(
    q: NormSpec,
    j: int = 0,
    n_range: tuple = (2, 16),
    k: int = 1,
    seed: int = DEFAULT_SEED,
) -> FloorReport:
    """Check that a spectral norm's fitted Markov exponent is >= 1 - 0.05.

    Preconditions the norm by certifying spectrality on monomial powers
    (q(p^t) = q(p)^t within 1e-8 relative); non-spectral norms raise
    SpectralityError since the floor argument does not apply to them.
    """
    if k == 0:
        return FloorReport(slope=0.0, floor=0.95, passed=True, spectral_defect=0.0)
    p = monomial(1)
    base = evaluate_norm(q, p)
    defect = 0.0
    for t in (2, 3, 4):
        vt = evaluate_norm(q, p**t)
        defect = max(defect, abs(vt - base**t) / max(base**t, 1e-300))
    if defect > 1e-8:
        raise SpectralityError(
            f"norm is not spectral on monomials (defect {defect:.3e})"
        )
    degrees = list(range(n_range[0], n_range[1] + 1))
    table = factor_table(q, DerivOp(k), degrees, seed=seed)
    fit = fit_exponent(table, window=(n_range[0], n_range[1]))
    return FloorReport(
        slope=fit.slope_ls,
        floor=1.0 - 0.05,
        passed=fit.slope_ls >= 1.0 - 0.05,
        spectral_defect=defect,
    )


@dataclass(frozen=True)
class BernsteinSchurReport:
    bernstein_violations: int
    schur_violations: int
    combined_violations: int
    chebyshev_equality_defect: float
    markov_fit: ExponentFit
    corpus_size: int

    @property
    def total_violations(self) -> int:
        return self.bernstein_violations + self.schur_violations + self.combined_violations


def bernstein_schur_check(
    nmax: int = 64, seed: int = DEFAULT_SEED, randoms_per_degree: int = 2
) -> BernsteinSchurReport:
    """Check the weighted derivative/sup inequalities and fit their exponent.

    For every corpus polynomial of degree n the three chained inequalities

        ||sqrt(1-x^2) p'|| <= n ||p||_sup
        ||p||_sup <= (n+1) ||sqrt(1-x^2) p||
        ||sqrt(1-x^2) p'|| <= n (n+1) ||sqrt(1-x^2) p||

    are tested with a 1e-9 relative numeric slack.  The corpus is both
    Chebyshev kinds plus seeded random polynomials; the second kind is the
    near-extremal family for the weighted Markov factor, which is what makes
    the fitted exponent land at 2.
    """
    rng = np.random.default_rng(seed)
    slack = 1e-9
    b_viol = s_viol = c_viol = 0
    table_ns, table_vals = [], []
    equality_defect = 0.0
    count = 0
    for n in range(1, nmax + 1):
        corpus = [("T", chebyshev_t(n)), ("U", chebyshev_u(n))]
        corpus += [("rnd", random_unit(n, rng)) for _ in range(randoms_per_degree)]
        best_ratio = 0.0
        for name, p in corpus:
            count += 1
            sup_p = sup_norm(p, Interval(-1.0, 1.0))
            w_p = schur_norm(p, 0.5)
            w_dp = schur_norm(p.deriv(1), 0.5) if n >= 1 else 0.0
            if w_dp > n * sup_p * (1 + slack) + 1e-12:
                b_viol += 1
            if sup_p > (n + 1) * w_p * (1 + slack) + 1e-12:
                s_viol += 1
            if w_dp > n * (n + 1) * w_p * (1 + slack) + 1e-12:
                c_viol += 1
            if w_p > 0:
                best_ratio = max(best_ratio, w_dp / w_p)
            if name == "T":
                # |T_n'| sqrt(1-x^2) attains n on the interior grid
                equality_defect = max(equality_defect, abs(w_dp - n) / n)
        table_ns.append(n)
        table_vals.append(best_ratio)
    fit = fit_power_law(table_ns, table_vals)
    return BernsteinSchurReport(
        bernstein_violations=b_viol,
        schur_violations=s_viol,
        combined_violations=c_viol,
        chebyshev_equality_defect=equality_defect,
        markov_fit=fit,
        corpus_size=count,
    )
