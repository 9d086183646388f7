"""Orthonormal polynomial systems and their sup-norm growth.

Systems are defined by three-term recurrence coefficients in orthonormal form,

    b[n+1] * Q_{n+1}(x) = (x - a[n]) * Q_n(x) - b[n] * Q_{n-1}(x),

with Q_0 = 1 for a probability measure.  Values and derivatives are always
evaluated through the recurrence (stable far past the degrees where monomial
coefficients become unusable); recurrence coefficients come either from the
closed-form Jacobi formulas or from a discrete Stieltjes procedure against an
arbitrary measure's quadrature rule.
"""

from __future__ import annotations

import csv
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .domains import CompactSet, Interval, Measure, jacobi_measure
from .errors import OrthogonalityLossError, QuadratureBudgetError
from .fitting import ExponentFit, fit_power_law
from .norms import sup_norm
from .polynomials import UniPoly

NMAX_HARD_CAP = 256
_DRIFT_CHECK_STRIDE = 16
_DRIFT_TOL = 1e-9


class OrthoSystem:
    """Orthonormal polynomial family Q_0..Q_nmax for a probability measure.

    Attributes
    ----------
    alphas : ndarray
        Recurrence centers a[0..nmax-1].
    betas : ndarray
        Orthonormal off-diagonal coefficients b[0..nmax] (b[0] = 0 unused).
    measure : Measure
        The measure the family is orthonormal against.
    nmax : int
        Largest degree available.
    """

    def __init__(self, alphas, betas, measure: Measure, nmax: int):
        if nmax < 1:
            raise ValueError("nmax must be >= 1")
        if nmax > NMAX_HARD_CAP:
            raise ValueError(f"nmax {nmax} exceeds the hard cap {NMAX_HARD_CAP}")
        self.alphas = np.asarray(alphas, dtype=float)[: nmax]
        self.betas = np.asarray(betas, dtype=float)[: nmax + 1]
        if self.alphas.size < nmax or self.betas.size < nmax + 1:
            raise ValueError("recurrence coefficient arrays too short for nmax")
        self.measure = measure
        self.nmax = int(nmax)

    def values(self, x, upto: Optional[int] = None) -> np.ndarray:
        """Matrix of Q_n(x) values, shape (upto + 1, len(x))."""
        upto = self.nmax if upto is None else int(upto)
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros((upto + 1, xs.size))
        out[0] = 1.0
        if upto >= 1:
            out[1] = (xs - self.alphas[0]) / self.betas[1]
        for n in range(1, upto):
            out[n + 1] = (
                (xs - self.alphas[n]) * out[n] - self.betas[n] * out[n - 1]
            ) / self.betas[n + 1]
        return out

    def deriv_values(self, x, k: int, upto: Optional[int] = None) -> np.ndarray:
        """Matrix of k-th derivative values Q_n^(k)(x), differentiated recurrence."""
        upto = self.nmax if upto is None else int(upto)
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        prev = self.values(xs, upto)
        for order in range(1, k + 1):
            cur = np.zeros_like(prev)
            if upto >= 1:
                # prev[0] is Q_0^(order-1): 1 for order 1, 0 beyond
                cur[1] = order * prev[0] / self.betas[1]
            for n in range(1, upto):
                cur[n + 1] = (
                    (xs - self.alphas[n]) * cur[n]
                    + order * prev[n]
                    - self.betas[n] * cur[n - 1]
                ) / self.betas[n + 1]
            prev = cur
        return prev

    @cached_property
    def polys(self) -> tuple:
        """Monomial-coefficient copies of Q_0..Q_nmax.

        Useful for exact low-degree work; unreliable for evaluation past
        degree ~30 (coefficients grow like 2^n), use values() instead.
        """
        out = [UniPoly((1.0,))]
        if self.nmax >= 1:
            out.append(UniPoly((-self.alphas[0] / self.betas[1], 1.0 / self.betas[1])))
        for n in range(1, self.nmax):
            x_shift = UniPoly((-self.alphas[n], 1.0)) * out[n]
            nxt = (1.0 / self.betas[n + 1]) * (x_shift - self.betas[n] * out[n - 1])
            out.append(nxt)
        return tuple(out)

    def gram_defect(self, upto: Optional[int] = None) -> float:
        """max |<Q_i, Q_j> - delta_ij| over i, j <= upto, by quadrature."""
        upto = self.nmax if upto is None else int(upto)
        nodes, weights = self.measure.rule_for_degree(2 * upto)
        V = self.values(nodes, upto)
        G = (V * weights) @ V.T
        return float(np.max(np.abs(G - np.eye(upto + 1))))

    def sup_table(self, E: CompactSet, k: int = 0) -> np.ndarray:
        """sup |Q_n^(k)| over E for every n <= nmax (grid estimate).

        Interval sets use a shared Chebyshev-Lobatto grid dense enough for the
        largest degree, endpoints included, so endpoint extrema are exact.
        """
        if isinstance(E, Interval):
            npts = 8 * (self.nmax + 1)
            pts = (E.a + E.b) / 2 + (E.b - E.a) / 2 * np.cos(
                np.linspace(np.pi, 0.0, npts)
            )
            vals = self.deriv_values(pts, k) if k else self.values(pts)
            return np.max(np.abs(vals), axis=1)
        raise TypeError("sup tables are supported on intervals")

    def export_csv(self, path, E: Optional[CompactSet] = None, meta: Optional[dict] = None):
        """Write rows n, a_n, b_n, supnorm_E (sup column empty without E)."""
        sups = self.sup_table(E) if E is not None else None
        with open(path, "w", newline="", encoding="utf-8") as fh:
            for key, value in (meta or {}).items():
                fh.write(f"# {key}: {value}\n")
            writer = csv.writer(fh)
            writer.writerow(["n", "a_n", "b_n", "supnorm_E"])
            for n in range(self.nmax + 1):
                a_n = repr(float(self.alphas[n])) if n < self.nmax else ""
                b_n = repr(float(self.betas[n])) if n >= 1 else ""
                sup = repr(float(sups[n])) if sups is not None else ""
                writer.writerow([n, a_n, b_n, sup])


def _jacobi_monic_recurrence(alpha: float, beta: float, nmax: int):
    """Monic Jacobi recurrence (a_k, b_k), b_0 set to 1 (probability measure)."""
    a = np.zeros(nmax)
    b = np.zeros(nmax + 1)
    ab = alpha + beta
    a[0] = (beta - alpha) / (ab + 2.0)
    b[0] = 1.0
    for k in range(1, nmax):
        a[k] = (beta**2 - alpha**2) / ((2 * k + ab) * (2 * k + ab + 2.0))
    if nmax >= 1:
        b[1] = 4.0 * (alpha + 1) * (beta + 1) / ((ab + 2.0) ** 2 * (ab + 3.0))
    for k in range(2, nmax + 1):
        b[k] = (
            4.0 * k * (k + alpha) * (k + beta) * (k + ab)
            / ((2 * k + ab) ** 2 * (2 * k + ab + 1.0) * (2 * k + ab - 1.0))
        )
    return a, b


def jacobi_system(alpha: float, beta: float, nmax: int = 64) -> OrthoSystem:
    """Orthonormal system for the normalized Jacobi weight (1-x)^a (1+x)^b."""
    if alpha <= -1 or beta <= -1:
        raise ValueError("jacobi parameters must exceed -1")
    a, b_monic = _jacobi_monic_recurrence(alpha, beta, nmax)
    betas = np.sqrt(b_monic)
    betas[0] = 0.0
    mu = jacobi_measure(alpha, beta, degree_budget=max(256, nmax))
    return OrthoSystem(a, betas, mu, nmax)


def stieltjes_orthonormalize(mu: Measure, nmax: int = 64) -> OrthoSystem:
    """Discrete Stieltjes construction of the orthonormal recurrence.

    Runs on the measure's Gauss nodes (exact inner products up to the needed
    degree) and checks orthogonality drift every 16 degrees, raising
    OrthogonalityLossError naming the failing degree once the Gram defect
    passes 1e-9.
    """
    if mu.degree_budget < 2 * nmax:
        raise QuadratureBudgetError(
            f"stieltjes needs a quadrature budget >= 2*nmax = {2 * nmax}, "
            f"got {mu.degree_budget}"
        )
    nodes, weights = mu.rule_for_degree(2 * nmax + 1)
    a = np.zeros(nmax)
    b_monic = np.zeros(nmax + 1)
    b_monic[0] = 1.0
    pi_prev = np.zeros_like(nodes)
    pi_cur = np.ones_like(nodes)
    norm_prev = float(np.dot(weights, pi_cur * pi_cur))
    for k in range(nmax):
        ak = float(np.dot(weights, nodes * pi_cur * pi_cur) / norm_prev)
        pi_next = (nodes - ak) * pi_cur - (b_monic[k] if k else 0.0) * pi_prev
        norm_next = float(np.dot(weights, pi_next * pi_next))
        if norm_next <= 0.0:
            raise OrthogonalityLossError(k + 1, float("inf"))
        a[k] = ak
        b_monic[k + 1] = norm_next / norm_prev
        pi_prev, pi_cur = pi_cur, pi_next
        norm_prev = norm_next
        degree = k + 1
        if degree % _DRIFT_CHECK_STRIDE == 0 or degree == nmax:
            betas_partial = np.sqrt(b_monic[: degree + 1])
            betas_partial[0] = 0.0
            partial = OrthoSystem(a[:degree], betas_partial, mu, degree)
            defect = partial.gram_defect(degree)
            if defect > _DRIFT_TOL:
                raise OrthogonalityLossError(degree, defect)
    betas = np.sqrt(b_monic)
    betas[0] = 0.0
    return OrthoSystem(a, betas, mu, nmax)


def expand(p, sys: OrthoSystem) -> np.ndarray:
    """Coefficients <p, Q_j> of p in the orthonormal basis, by quadrature."""
    deg = 0 if p.is_zero else int(p.degree)
    if deg > sys.nmax:
        raise ValueError(f"degree {deg} exceeds system nmax {sys.nmax}")
    nodes, weights = sys.measure.rule_for_degree(2 * sys.nmax)
    V = sys.values(nodes, sys.nmax)
    pv = p(nodes)
    return (V * weights) @ pv


def reconstruct(coeffs: Sequence[float], sys: OrthoSystem) -> UniPoly:
    """Linear combination sum_j coeffs[j] * Q_j as a monomial polynomial.

    Monomial coefficients of Q_j grow like 2^j, so 1e-15-level expansion
    noise at large j is amplified; truncate ``coeffs`` to the degree you
    actually mean before reconstructing against a large system.
    """
    out = UniPoly.zero()
    for c, q in zip(coeffs, sys.polys):
        if c:
            out = out + float(c) * q
    return out


def growth_exponent(
    sys: OrthoSystem, E: CompactSet, window: Optional[tuple] = None
) -> ExponentFit:
    """Fit of log sup|Q_n|_E against log n over the tail (default [nmax/4, nmax])."""
    if sys.nmax < 16:
        raise ValueError("growth fits need nmax >= 16")
    if isinstance(E, Interval):
        sups = sys.sup_table(E)
    else:
        sups = np.array([np.nan] * (sys.nmax + 1))
        for n in range(sys.nmax + 1):
            sups[n] = sup_norm(sys.polys[n], E)
    ns = np.arange(1, sys.nmax + 1)
    return fit_power_law(ns, sups[1:], window=window)
