"""Univariate and multivariate polynomial arithmetic and differential operators.

Coefficients may come from either backend in :mod:`markovlab.scalars`; every
operation preserves the backend of its inputs (no silent float coercion).
The zero polynomial carries the degree sentinel ``-inf`` so that degree
formulas like ``deg(p*q) = deg p + deg q`` and ``max(deg p - k, -inf)`` hold
without special-casing -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, PrecisionOverflowError
from .scalars import RationalComplex, is_exact, magnitude

NEG_INF = float("-inf")

#: Construction-time caps for dense multivariate sweeps.  Arithmetic results
#: (products, powers) are allowed to exceed the degree cap; only direct
#: construction from user input is gated.
NVARS_MAX = 4
TOTAL_DEGREE_MAX = 32

_COEFF_OVERFLOW = 1e300


def _is_zero_coeff(c) -> bool:
    if isinstance(c, RationalComplex):
        return not c
    return c == 0


class UniPoly:
    """Dense univariate polynomial; ``coeffs[j]`` is the coefficient of x^j."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = list(coeffs)
        while cs and _is_zero_coeff(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *_):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def monomial(cls, n: int, coeff=1) -> "UniPoly":
        return cls((0,) * n + (coeff,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def __call__(self, x):
        """Evaluate by nested multiplication (Horner); vectorized for arrays."""
        if isinstance(x, np.ndarray):
            if not self.coeffs:
                return np.zeros_like(x, dtype=float)
            if self._has_complex() or np.iscomplexobj(x):
                cs = [complex(c) for c in self.coeffs]
                acc = np.zeros_like(x, dtype=complex)
            else:
                cs = [float(c) for c in self.coeffs]
                acc = np.zeros_like(x, dtype=float)
            for c in reversed(cs):
                acc = acc * x + c
            return acc
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _has_complex(self) -> bool:
        return any(isinstance(c, (complex, RationalComplex)) for c in self.coeffs)

    def deriv(self, k: int = 1) -> "UniPoly":
        if k < 0:
            raise ValueError("derivative order must be nonnegative")
        cs = self.coeffs
        for _ in range(k):
            if len(cs) <= 1:
                return UniPoly.zero()
            cs = tuple(j * cs[j] for j in range(1, len(cs)))
        return UniPoly(cs)

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] = out[j] + c
        return UniPoly(out)

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            if self.is_zero or other.is_zero:
                return UniPoly.zero()
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if _is_zero_coeff(a):
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return UniPoly(out)
        return UniPoly(tuple(other * c for c in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, s: int) -> "UniPoly":
        return power(self, s)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"


def evaluate(p: UniPoly, x):
    """Value of p at x (Horner).  Works for scalars of either backend."""
    return p(x)


def derivative(p: UniPoly, k: int = 1) -> UniPoly:
    return p.deriv(k)


def power(p: UniPoly, s: int) -> UniPoly:
    """p**s by repeated squaring; guards against float coefficient overflow."""
    if not isinstance(s, int) or s < 0:
        raise ValueError("exponent must be a nonnegative integer")
    out = UniPoly((1,))
    base = p
    n = s
    while n:
        if n & 1:
            out = out * base
        base = base * base if n > 1 else base
        n >>= 1
    if not out.is_exact:
        if any(magnitude(c) > _COEFF_OVERFLOW for c in out.coeffs):
            raise PrecisionOverflowError(
                "coefficient magnitude overflow in power(); use exact or log mode"
            )
    return out


class MultiPoly:
    """Sparse multivariate polynomial: multi-index -> coefficient."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: dict, nvars: int, _unchecked: bool = False):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        if nvars > NVARS_MAX:
            raise ValueError(f"nvars {nvars} exceeds cap {NVARS_MAX}")
        clean = {}
        for alpha, c in terms.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != nvars or any(a < 0 for a in alpha):
                raise ValueError(f"bad multi-index {alpha} for nvars={nvars}")
            if not _is_zero_coeff(c):
                clean[alpha] = c
        if not _unchecked:
            deg = max((sum(a) for a in clean), default=0)
            if deg > TOTAL_DEGREE_MAX:
                raise ValueError(
                    f"total degree {deg} exceeds construction cap {TOTAL_DEGREE_MAX}"
                )
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "nvars", nvars)

    def __setattr__(self, *_):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "MultiPoly":
        return cls(terms, nvars, _unchecked=True)

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "MultiPoly":
        return cls._raw({(0,) * nvars: c}, nvars)

    @classmethod
    def variable(cls, j: int, nvars: int) -> "MultiPoly":
        alpha = tuple(1 if i == j else 0 for i in range(nvars))
        return cls._raw({alpha: 1}, nvars)

    @property
    def total_degree(self):
        return max((sum(a) for a in self.terms), default=NEG_INF)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.terms.values())

    def __call__(self, point: Sequence):
        if len(point) != self.nvars:
            raise DimensionMismatchError(
                f"point has {len(point)} coordinates, polynomial has {self.nvars}"
            )
        acc = 0
        for alpha, c in self.terms.items():
            term = c
            for xi, ai in zip(point, alpha):
                for _ in range(ai):
                    term = term * xi
            acc = acc + term
        return acc

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.nvars != other.nvars:
            raise DimensionMismatchError("mixed nvars in addition")
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            out[alpha] = out.get(alpha, 0) + c
        return MultiPoly._raw(out, self.nvars)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            if self.nvars != other.nvars:
                raise DimensionMismatchError("mixed nvars in product")
            out: dict = {}
            for a, ca in self.terms.items():
                for b, cb in other.terms.items():
                    key = tuple(x + y for x, y in zip(a, b))
                    out[key] = out.get(key, 0) + ca * cb
            return MultiPoly._raw(out, self.nvars)
        return MultiPoly._raw(
            {a: other * c for a, c in self.terms.items()}, self.nvars
        )

    __rmul__ = __mul__

    def __pow__(self, s: int) -> "MultiPoly":
        if not isinstance(s, int) or s < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = MultiPoly.constant(1, self.nvars)
        base = self
        n = s
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def partial(self, j: int) -> "MultiPoly":
        if not 0 <= j < self.nvars:
            raise DimensionMismatchError(f"axis {j} out of range for nvars={self.nvars}")
        out = {}
        for alpha, c in self.terms.items():
            if alpha[j] == 0:
                continue
            beta = list(alpha)
            beta[j] -= 1
            out[tuple(beta)] = out.get(tuple(beta), 0) + alpha[j] * c
        return MultiPoly._raw(out, self.nvars)

    def partial_multi(self, alpha: Sequence[int]) -> "MultiPoly":
        out = self
        for j, a in enumerate(alpha):
            for _ in range(a):
                out = out.partial(j)
        return out

    def max_coeff_magnitude(self) -> float:
        return max((magnitude(c) for c in self.terms.values()), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __repr__(self):
        return f"MultiPoly({self.terms!r}, nvars={self.nvars})"


@dataclass(frozen=True)
class DirOp:
    """Constant-coefficient directional derivative v1*D1 + ... + vN*DN."""

    v: tuple

    def __post_init__(self):
        v = tuple(self.v)
        if not v or all(_is_zero_coeff(c) for c in v):
            raise ValueError("direction vector must be nonzero")
        object.__setattr__(self, "v", v)

    @property
    def nvars(self) -> int:
        return len(self.v)

    def apply(self, f: MultiPoly) -> MultiPoly:
        if f.nvars != self.nvars:
            raise DimensionMismatchError(
                f"operator has {self.nvars} components, polynomial has {f.nvars}"
            )
        out = MultiPoly.zero(f.nvars)
        for j, vj in enumerate(self.v):
            if _is_zero_coeff(vj):
                continue
            out = out + vj * f.partial(j)
        return out


def dir_derivative(f: MultiPoly, d: DirOp, k: int = 1) -> MultiPoly:
    """k-fold application of the directional derivative d to f."""
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    out = f
    for _ in range(k):
        out = d.apply(out)
    return out


def hdop_apply(h: MultiPoly, f: MultiPoly) -> MultiPoly:
    """Apply the constant-coefficient operator H(D1, ..., DN) to f.

    H must be homogeneous of degree >= 1; each term c*x^alpha contributes
    c * D^alpha f.  With H = x1^2 + ... + xN^2 this is the Laplacian.
    """
    if h.nvars != f.nvars:
        raise DimensionMismatchError("operator and polynomial nvars differ")
    if h.is_zero:
        raise ValueError("operator polynomial must be nonzero")
    degrees = {sum(a) for a in h.terms}
    if len(degrees) != 1 or degrees == {0}:
        raise ValueError("operator polynomial must be homogeneous of degree >= 1")
    out = MultiPoly.zero(f.nvars)
    for alpha, c in h.terms.items():
        out = out + c * f.partial_multi(alpha)
    return out


def power_identity_residual(f: MultiPoly, d: DirOp, k: int) -> float:
    """Relative residual of the binomial identity linking (Df)^k to powers of f.

    Checks (Df)^k = (1/k!) * sum_{j=0..k} (-1)^j C(k,j) f^j D^(k)(f^(k-j)),
    returning max coefficient magnitude of the difference relative to the
    larger side.  Exact inputs yield exactly 0.0.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    lhs = dir_derivative(f, d, 1) ** k
    acc = MultiPoly.zero(f.nvars)
    for j in range(k + 1):
        term = (f ** j) * dir_derivative(f ** (k - j), d, k)
        coeff = (-1) ** j * math.comb(k, j)
        acc = acc + coeff * term
    if acc.is_exact and lhs.is_exact:
        rhs = Fraction(1, math.factorial(k)) * acc
    else:
        rhs = (1.0 / math.factorial(k)) * acc
    diff = lhs - rhs
    scale = max(lhs.max_coeff_magnitude(), rhs.max_coeff_magnitude())
    if diff.is_zero:
        return 0.0
    if scale == 0.0:
        return diff.max_coeff_magnitude()
    return diff.max_coeff_magnitude() / scale


def multipoly_grid_values(f: MultiPoly, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Values of a 2-variable polynomial at paired points (float backend)."""
    if f.nvars != 2:
        raise DimensionMismatchError("grid evaluation requires nvars == 2")
    from numpy.polynomial import polynomial as npoly

    deg = int(f.total_degree) if not f.is_zero else 0
    c = np.zeros((deg + 1, deg + 1), dtype=complex)
    for (a, b), coeff in f.terms.items():
        c[a, b] = complex(coeff)
    vals = npoly.polyval2d(xs, ys, c)
    return vals if np.iscomplexobj(list(f.terms.values())) else vals.real
