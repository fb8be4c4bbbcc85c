"""Truncated power series in one variable (Jet1) and two variables (Jet2).

Coefficients are stored as plain monomial coefficients: ``c[i, j]`` multiplies
``s**i * t**j``.  A jet of order ``N`` knows every monomial of total degree at
most ``N``; binary operations require equal orders and never read past them.

Two scalar modes share the same code.  In exact mode the coefficient arrays
have ``object`` dtype and hold ``gmpy2.mpq`` rationals (interchangeable with
:class:`fractions.Fraction`, about ten times faster); in numeric mode they
are ``float64``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
from gmpy2 import mpq

from .errors import (
    NeedsNumericMode,
    NotAUnit,
    NotDivisible,
    NotOriginPreserving,
    OrderMismatch,
    TruncationExhausted,
)

__all__ = [
    "Jet1",
    "Jet2",
    "VecJet",
    "LaurentJet",
    "as_scalar",
    "rational_sqrt",
    "is_zero",
    "det3",
]


def as_scalar(x, exact: bool):
    """Convert ``x`` to the scalar type of the requested mode."""
    if exact:
        if type(x) is mpq:
            return x
        try:
            return mpq(x)
        except TypeError:
            return mpq(Fraction(x))
    return float(x)


def is_zero(x, tol: float = 0.0) -> bool:
    if isinstance(x, (mpq, Fraction)) or tol == 0.0:
        return x == 0
    return abs(x) <= tol


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    q = mpq(q)
    if q < 0:
        return None
    n, d = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return mpq(rn, rd)
    return None


def _zeros(shape, exact: bool):
    if exact:
        out = np.empty(shape, dtype=object)
        out.fill(mpq(0))
        return out
    return np.zeros(shape, dtype=np.float64)


@lru_cache(maxsize=None)
def _upper(n: int) -> np.ndarray:
    """Boolean mask of entries with i + j > n in an (n+1)x(n+1) array."""
    i, j = np.indices((n + 1, n + 1))
    return (i + j) > n


def _binomial_series(alpha: Fraction, n: int, exact: bool) -> list:
    """Coefficients of (1+x)**alpha up to x**n."""
    out = [as_scalar(1, exact)]
    a = as_scalar(alpha, exact)
    for k in range(1, n + 1):
        out.append(out[-1] * (a - (k - 1)) / k)
    return out


def _unit_power(jet, alpha, exact_root):
    """jet**alpha for a jet with nonzero constant term c0; ``exact_root`` is c0**alpha."""
    c0 = jet.constant
    x = jet / c0 - 1
    coeffs = _binomial_series(alpha, jet.order, jet.exact)
    acc = jet.const_like(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc * exact_root


def _root_of_constant(c0, alpha: Fraction, exact: bool, tol: float = 0.0):
    """c0**alpha for alpha in {-1, 1/2, -1/2}."""
    if is_zero(c0, tol):
        raise NotAUnit("constant term vanishes")
    if alpha == -1:
        return 1 / c0
    if exact:
        r = rational_sqrt(c0)
        if r is None:
            raise NeedsNumericMode(f"square root of {c0} is irrational")
        return r if alpha > 0 else 1 / r
    if c0 < 0:
        raise NeedsNumericMode(f"square root of negative constant {c0}")
    r = math.sqrt(c0)
    return r if alpha > 0 else 1 / r


def _nonzero_terms(c: np.ndarray, n: int) -> list:
    """(degree, i, j, value) for the nonzero monomials, sorted by degree."""
    rows = c.tolist()
    return [
        (i + j, i, j, rows[i][j])
        for d in range(n + 1)
        for i in range(d + 1)
        for j in (d - i,)
        if rows[i][j] != 0
    ]


def _sparse_product(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """Truncated product of two exact coefficient triangles in plain Python."""
    acc = [[0] * (n + 1) for _ in range(n + 1)]
    right = _nonzero_terms(b, n)
    for d, i, j, x in _nonzero_terms(a, n):
        room = n - d
        for e, k, l, y in right:
            if e > room:
                break
            acc[i + k][j + l] += x * y
    out = _zeros((n + 1, n + 1), True)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            if acc[i][j] != 0:
                out[i, j] = acc[i][j]
    return out


class _JetBase:
    __slots__ = ("order", "_c")

    @property
    def exact(self) -> bool:
        return self._c.dtype == object

    @property
    def coeffs(self) -> np.ndarray:
        return self._c.copy()

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.order != self.order:
            raise OrderMismatch(f"orders {self.order} and {other.order} differ")
        if other.exact != self.exact:
            raise TypeError("cannot mix exact and numeric jets")

    def _scalar(self, x):
        return as_scalar(x, self.exact)

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, _JetBase):
            return self * other.recip()
        return self * (1 / self._scalar(other))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = self.const_like(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.order == other.order and bool(np.all(self._c == other._c))

    __hash__ = None

    def allclose(self, other, tol: float = 1e-12) -> bool:
        self._check(other)
        return float(np.max(np.abs(np.asarray(self._c - other._c, dtype=float)))) <= tol

    def max_abs(self) -> float:
        return float(np.max(np.abs(np.asarray(self._c, dtype=float))))

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.exact or tol == 0.0:
            return bool(np.all(self._c == 0))
        return self.max_abs() <= tol

    def recip(self, tol: float = 0.0):
        return _unit_power(self, -1, _root_of_constant(self.constant, Fraction(-1), self.exact, tol))

    def sqrt_recip(self, tol: float = 0.0):
        half = Fraction(-1, 2)
        return _unit_power(self, half, _root_of_constant(self.constant, half, self.exact, tol))

    def sqrt(self, tol: float = 0.0):
        half = Fraction(1, 2)
        return _unit_power(self, half, _root_of_constant(self.constant, half, self.exact, tol))

    def to_numeric(self):
        return type(self)._wrap(np.asarray(self._c, dtype=np.float64), self.order)


class Jet1(_JetBase):
    """Univariate jet ``sum c[i] x**i`` for ``i <= order``."""

    __slots__ = ()

    def __init__(self, coeffs, order: int | None = None, exact: bool = True):
        coeffs = list(coeffs)
        if order is None:
            order = max(len(coeffs) - 1, 0)
        if order < 0:
            raise TruncationExhausted("negative order")
        if len(coeffs) > order + 1:
            raise ValueError(f"{len(coeffs)} coefficients exceed order {order}")
        c = _zeros(order + 1, exact)
        for i, v in enumerate(coeffs):
            c[i] = as_scalar(v, exact)
        self.order = order
        self._c = c

    @classmethod
    def _wrap(cls, arr: np.ndarray, order: int) -> "Jet1":
        obj = cls.__new__(cls)
        obj.order = order
        obj._c = arr
        return obj

    @classmethod
    def zero(cls, order: int, exact: bool = True) -> "Jet1":
        return cls._wrap(_zeros(order + 1, exact), order)

    @classmethod
    def constant_jet(cls, value, order: int, exact: bool = True) -> "Jet1":
        out = cls.zero(order, exact)
        out._c[0] = as_scalar(value, exact)
        return out

    @classmethod
    def variable(cls, order: int, exact: bool = True) -> "Jet1":
        out = cls.zero(order, exact)
        if order >= 1:
            out._c[1] = as_scalar(1, exact)
        return out

    @classmethod
    def from_derivatives(cls, derivs, order: int, exact: bool = True) -> "Jet1":
        """Build from Taylor data ``f(0), f'(0), f''(0), ...`` (higher ones zero)."""
        derivs = list(derivs)[: order + 1]
        return cls([as_scalar(d, exact) / math.factorial(i) for i, d in enumerate(derivs)], order, exact)

    def const_like(self, value) -> "Jet1":
        return Jet1.constant_jet(value, self.order, self.exact)

    @property
    def constant(self):
        return self._c[0]

    def __getitem__(self, i: int):
        if i < 0 or i > self.order:
            raise IndexError(f"coefficient {i} beyond order {self.order}")
        return self._c[i]

    def derivative_at_zero(self, i: int):
        return self[i] * math.factorial(i)

    def __add__(self, other):
        if isinstance(other, _JetBase):
            self._check(other)
            return Jet1._wrap(self._c + other._c, self.order)
        c = self._c.copy()
        c[0] = c[0] + self._scalar(other)
        return Jet1._wrap(c, self.order)

    def __neg__(self):
        return Jet1._wrap(-self._c, self.order)

    def __mul__(self, other):
        if isinstance(other, _JetBase):
            self._check(other)
            n = self.order
            if not self.exact:
                return Jet1._wrap(np.convolve(self._c, other._c)[: n + 1], n)
            a, b = self._c.tolist(), other._c.tolist()
            right = [(k, y) for k, y in enumerate(b) if y != 0]
            acc = [0] * (n + 1)
            for i, x in enumerate(a):
                if x != 0:
                    for k, y in right:
                        if i + k > n:
                            break
                        acc[i + k] += x * y
            out = _zeros(n + 1, True)
            out[:] = [as_scalar(v, True) for v in acc]
            return Jet1._wrap(out, n)
        return Jet1._wrap(self._c * self._scalar(other), self.order)

    def diff(self) -> "Jet1":
        if self.order == 0:
            raise TruncationExhausted("derivative of an order-0 jet")
        k = np.arange(1, self.order + 1)
        if self.exact:
            k = k.astype(object)
        return Jet1._wrap(self._c[1:] * k, self.order - 1)

    def integrate(self) -> "Jet1":
        out = _zeros(self.order + 2, self.exact)
        for i in range(self.order + 1):
            out[i + 1] = self._c[i] / (i + 1)
        return Jet1._wrap(out, self.order + 1)

    def divide_x(self, tol: float = 0.0) -> "Jet1":
        if not is_zero(self._c[0], tol):
            raise NotDivisible("constant term is nonzero")
        if self.order == 0:
            raise TruncationExhausted("division of an order-0 jet")
        return Jet1._wrap(self._c[1:].copy(), self.order - 1)

    def shift(self, k: int) -> "Jet1":
        """Multiply by x**k; the result is known to order + k."""
        out = _zeros(self.order + k + 1, self.exact)
        out[k:] = self._c
        return Jet1._wrap(out, self.order + k)

    def truncate(self, n: int) -> "Jet1":
        if n > self.order:
            raise OrderMismatch(f"cannot raise order {self.order} to {n} by truncation")
        return Jet1._wrap(self._c[: n + 1].copy(), n)

    def pad(self, n: int) -> "Jet1":
        """Treat the jet as a polynomial and view it at order ``n``."""
        if n <= self.order:
            return self.truncate(n)
        out = _zeros(n + 1, self.exact)
        out[: self.order + 1] = self._c
        return Jet1._wrap(out, n)

    def compose(self, inner: "Jet1") -> "Jet1":
        self._check(inner)
        if inner._c[0] != 0:
            raise NotOriginPreserving("inner series has a constant term")
        acc = inner.const_like(self._c[-1])
        for c in self._c[-2::-1]:
            acc = acc * inner + c
        return acc

    def __call__(self, x):
        acc = self._c[-1]
        for c in self._c[-2::-1]:
            acc = acc * x + c
        return acc

    def lift(self, variable: str = "s", order: int | None = None) -> "Jet2":
        """View as a Jet2 depending on one variable only."""
        n = self.order if order is None else order
        src = self.pad(n) if n >= self.order else self.truncate(n)
        out = _zeros((n + 1, n + 1), self.exact)
        if variable == "s":
            out[:, 0] = src._c
        elif variable == "t":
            out[0, :] = src._c
        else:
            raise ValueError("variable must be 's' or 't'")
        return Jet2._wrap(out, n)

    def __repr__(self):
        terms = [f"{c}*x^{i}" for i, c in enumerate(self._c) if c != 0]
        return f"Jet1({' + '.join(terms) or '0'} + O({self.order + 1}))"


class Jet2(_JetBase):
    """Bivariate jet ``sum c[i, j] s**i t**j`` over ``i + j <= order``."""

    __slots__ = ()

    def __init__(self, terms: dict | None = None, order: int = 0, exact: bool = True):
        if order < 0:
            raise TruncationExhausted("negative order")
        c = _zeros((order + 1, order + 1), exact)
        for (i, j), v in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            if i + j <= order:
                c[i, j] = as_scalar(v, exact)
        self.order = order
        self._c = c

    @classmethod
    def _wrap(cls, arr: np.ndarray, order: int) -> "Jet2":
        obj = cls.__new__(cls)
        obj.order = order
        obj._c = arr
        return obj

    @classmethod
    def zero(cls, order: int, exact: bool = True) -> "Jet2":
        return cls._wrap(_zeros((order + 1, order + 1), exact), order)

    @classmethod
    def constant_jet(cls, value, order: int, exact: bool = True) -> "Jet2":
        out = cls.zero(order, exact)
        out._c[0, 0] = as_scalar(value, exact)
        return out

    @classmethod
    def s(cls, order: int, exact: bool = True) -> "Jet2":
        return cls({(1, 0): 1}, order, exact)

    @classmethod
    def t(cls, order: int, exact: bool = True) -> "Jet2":
        return cls({(0, 1): 1}, order, exact)

    @classmethod
    def from_scaled(cls, terms: dict, order: int, exact: bool = True) -> "Jet2":
        """Build from factorial-scaled data: ``terms[i, j]`` multiplies s^i t^j / (i! j!)."""
        return cls(
            {
                (i, j): as_scalar(v, exact) / (math.factorial(i) * math.factorial(j))
                for (i, j), v in terms.items()
            },
            order,
            exact,
        )

    def const_like(self, value) -> "Jet2":
        return Jet2.constant_jet(value, self.order, self.exact)

    @property
    def constant(self):
        return self._c[0, 0]

    def coeff(self, i: int, j: int):
        if i < 0 or j < 0 or i + j > self.order:
            raise IndexError(f"monomial s^{i} t^{j} beyond order {self.order}")
        return self._c[i, j]

    def scaled(self, i: int, j: int):
        """Factorial-scaled coefficient i! j! c_ij (the partial derivative at 0)."""
        return self.coeff(i, j) * math.factorial(i) * math.factorial(j)

    def terms(self) -> dict:
        n = self.order
        return {
            (i, j): self._c[i, j]
            for i in range(n + 1)
            for j in range(n + 1 - i)
            if self._c[i, j] != 0
        }

    def __add__(self, other):
        if isinstance(other, _JetBase):
            self._check(other)
            return Jet2._wrap(self._c + other._c, self.order)
        c = self._c.copy()
        c[0, 0] = c[0, 0] + self._scalar(other)
        return Jet2._wrap(c, self.order)

    def __neg__(self):
        return Jet2._wrap(-self._c, self.order)

    def __mul__(self, other):
        if isinstance(other, LaurentJet):
            return NotImplemented
        if isinstance(other, _JetBase):
            self._check(other)
            if self.exact:
                return Jet2._wrap(_sparse_product(self._c, other._c, self.order), self.order)
            n = self.order
            a, b = self._c, other._c
            out = _zeros((n + 1, n + 1), False)
            for i in range(n + 1):
                for j in range(n + 1 - i):
                    aij = a[i, j]
                    if aij != 0:
                        out[i:, j:] += aij * b[: n + 1 - i, : n + 1 - j]
            out[_upper(n)] = 0
            return Jet2._wrap(out, n)
        return Jet2._wrap(self._c * self._scalar(other), self.order)

    def _index_weights(self, axis: int):
        k = np.arange(1, self.order + 1)
        if self.exact:
            k = k.astype(object)
        return k[:, None] if axis == 0 else k[None, :]

    def diff_s(self) -> "Jet2":
        if self.order == 0:
            raise TruncationExhausted("derivative of an order-0 jet")
        n = self.order - 1
        return Jet2._wrap(self._c[1:, :-1] * self._index_weights(0), n)

    def diff_t(self) -> "Jet2":
        if self.order == 0:
            raise TruncationExhausted("derivative of an order-0 jet")
        n = self.order - 1
        return Jet2._wrap(self._c[:-1, 1:] * self._index_weights(1), n)

    def integrate_s(self) -> "Jet2":
        n = self.order + 1
        out = _zeros((n + 1, n + 1), self.exact)
        one = as_scalar(1, self.exact)
        for i in range(self.order + 1):
            out[i + 1, : self.order + 1] = self._c[i, :] * (one / (i + 1))
        out[_upper(n)] = 0
        return Jet2._wrap(out, n)

    def integrate_t(self) -> "Jet2":
        return self.swap().integrate_s().swap()

    def divide_t(self, tol: float = 0.0) -> "Jet2":
        col = self._c[:, 0]
        if not all(is_zero(v, tol) for v in col):
            raise NotDivisible("jet has monomials free of t")
        if self.order == 0:
            raise TruncationExhausted("division of an order-0 jet")
        return Jet2._wrap(self._c[:-1, 1:].copy(), self.order - 1)

    def divide_s(self, tol: float = 0.0) -> "Jet2":
        return self.swap().divide_t(tol).swap()

    def mul_t(self, k: int = 1) -> "Jet2":
        """Multiply by t**k; the result is known to order + k."""
        n = self.order + k
        out = _zeros((n + 1, n + 1), self.exact)
        out[: self.order + 1, k:] = self._c
        return Jet2._wrap(out, n)

    def swap(self) -> "Jet2":
        """Exchange the roles of s and t."""
        return Jet2._wrap(self._c.T.copy(), self.order)

    def truncate(self, n: int) -> "Jet2":
        if n > self.order:
            raise OrderMismatch(f"cannot raise order {self.order} to {n} by truncation")
        out = self._c[: n + 1, : n + 1].copy()
        out[_upper(n)] = 0
        return Jet2._wrap(out, n)

    def pad(self, n: int) -> "Jet2":
        """Treat the jet as a polynomial and view it at order ``n``."""
        if n <= self.order:
            return self.truncate(n)
        out = _zeros((n + 1, n + 1), self.exact)
        out[: self.order + 1, : self.order + 1] = self._c
        return Jet2._wrap(out, n)

    def weighted_truncate(self, w_s: int, w_t: int, W: int) -> "Jet2":
        if w_s <= 0 or w_t <= 0:
            raise ValueError("weights must be positive")
        i, j = np.indices(self._c.shape)
        out = self._c.copy()
        out[(i * w_s + j * w_t) > W] = 0
        return Jet2._wrap(out, self.order)

    def compose(self, phi1: "Jet2", phi2: "Jet2") -> "Jet2":
        """g(phi1(u, v), phi2(u, v)) truncated at the common order."""
        self._check(phi1)
        self._check(phi2)
        if phi1.constant != 0 or phi2.constant != 0:
            raise NotOriginPreserving("substitution has a constant term")
        n = self.order
        powers = [phi2.const_like(1)]
        for _ in range(n):
            powers.append(powers[-1] * phi2)
        acc = None
        for i in range(n, -1, -1):
            inner = phi2.const_like(0)
            for j in range(n + 1 - i):
                if self._c[i, j] != 0:
                    inner = inner + powers[j] * self._c[i, j]
            acc = inner if acc is None else acc * phi1 + inner
        return acc

    def at_t0(self) -> Jet1:
        return Jet1._wrap(self._c[:, 0].copy(), self.order)

    def t_coefficient(self, j: int) -> Jet1:
        """Coefficient of t^j as a function of s, known to order ``order - j``."""
        if j < 0 or j > self.order:
            raise IndexError(f"t^{j} beyond order {self.order}")
        return Jet1._wrap(self._c[: self.order + 1 - j, j].copy(), self.order - j)

    def at_s0(self) -> Jet1:
        return Jet1._wrap(self._c[0, :].copy(), self.order)

    def __call__(self, s, t):
        n = self.order
        acc = 0
        for i in range(n, -1, -1):
            row = self._c[i, : n + 1 - i]
            inner = row[-1]
            for c in row[-2::-1]:
                inner = inner * t + c
            acc = acc * s + inner
        return acc

    def degree_part(self, d: int) -> dict:
        """Monomials of total degree ``d`` as {(i, j): c}."""
        return {(i, d - i): self._c[i, d - i] for i in range(d + 1)}

    def __repr__(self):
        body = " + ".join(f"{c}*s^{i}t^{j}" for (i, j), c in self.terms().items())
        return f"Jet2({body or '0'} + O({self.order + 1}))"


class VecJet:
    """Three jets (all Jet1 or all Jet2) giving ambient components."""

    __slots__ = ("comps",)

    def __init__(self, x, y, z):
        if not (type(x) is type(y) is type(z)):
            raise TypeError("components must share one jet type")
        if not (x.order == y.order == z.order):
            raise OrderMismatch("components must share one order")
        self.comps = (x, y, z)

    @classmethod
    def constant(cls, vec, like) -> "VecJet":
        return cls(*(like.const_like(v) for v in vec))

    @property
    def order(self) -> int:
        return self.comps[0].order

    @property
    def exact(self) -> bool:
        return self.comps[0].exact

    def __iter__(self):
        return iter(self.comps)

    def __getitem__(self, k):
        return self.comps[k]

    def map(self, fn) -> "VecJet":
        return VecJet(*(fn(c) for c in self.comps))

    def __add__(self, other):
        return VecJet(*(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other):
        return VecJet(*(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self):
        return self.map(lambda c: -c)

    def __mul__(self, k):
        """Scale by a scalar or by a scalar-valued jet."""
        return self.map(lambda c: c * k)

    __rmul__ = __mul__

    def dot(self, other):
        a, b = self.comps, other.comps
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]

    def cross(self, other) -> "VecJet":
        (a1, a2, a3), (b1, b2, b3) = self.comps, other.comps
        return VecJet(a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)

    def truncate(self, n: int) -> "VecJet":
        return self.map(lambda c: c.truncate(n))

    def pad(self, n: int) -> "VecJet":
        return self.map(lambda c: c.pad(n))

    def diff_s(self) -> "VecJet":
        return self.map(lambda c: c.diff_s())

    def diff_t(self) -> "VecJet":
        return self.map(lambda c: c.diff_t())

    def diff(self) -> "VecJet":
        return self.map(lambda c: c.diff())

    def compose(self, phi1, phi2=None) -> "VecJet":
        if phi2 is None:
            return self.map(lambda c: c.compose(phi1))
        return self.map(lambda c: c.compose(phi1, phi2))

    def lift(self, variable: str = "s", order: int | None = None) -> "VecJet":
        return self.map(lambda c: c.lift(variable, order))

    def at_t0(self) -> "VecJet":
        return self.map(lambda c: c.at_t0())

    def constant_term(self) -> tuple:
        return tuple(c.constant for c in self.comps)

    def __call__(self, *point):
        return tuple(c(*point) for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, VecJet):
            return NotImplemented
        return all(a == b for a, b in zip(self.comps, other.comps))

    __hash__ = None

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(c.is_zero(tol) for c in self.comps)

    def __repr__(self):
        return f"VecJet({self.comps[0]!r}, {self.comps[1]!r}, {self.comps[2]!r})"


def det3(u: VecJet, v: VecJet, w: VecJet):
    """Determinant of the matrix with columns u, v, w."""
    return u.dot(v.cross(w))


class LaurentJet:
    """``body / t**pole`` with ``body`` a Jet2."""

    __slots__ = ("body", "pole")

    def __init__(self, body: Jet2, pole: int = 0):
        if pole < 0:
            raise ValueError("pole order must be non-negative")
        self.body = body
        self.pole = pole

    @property
    def exact(self) -> bool:
        return self.body.exact

    def normalize(self, tol: float = 0.0) -> "LaurentJet":
        body, pole = self.body, self.pole
        while pole > 0 and body.order > 0 and all(is_zero(v, tol) for v in body._c[:, 0]):
            body = body.divide_t(tol)
            pole -= 1
        return LaurentJet(body, pole)

    def to_jet(self) -> Jet2:
        lj = self.normalize()
        if lj.pole:
            raise NotDivisible(f"Laurent jet still has a pole of order {lj.pole}")
        return lj.body

    def _aligned(self, other: "LaurentJet"):
        p = max(self.pole, other.pole)
        a = self.body.mul_t(p - self.pole) if p > self.pole else self.body
        b = other.body.mul_t(p - other.pole) if p > other.pole else other.body
        n = min(a.order, b.order)
        return a.truncate(n), b.truncate(n), p

    @staticmethod
    def _coerce(x, like: "LaurentJet"):
        if isinstance(x, LaurentJet):
            return x
        if isinstance(x, Jet2):
            return LaurentJet(x, 0)
        return LaurentJet(like.body.const_like(x), 0)

    def __add__(self, other):
        other = self._coerce(other, self)
        a, b, p = self._aligned(other)
        return LaurentJet(a + b, p)

    __radd__ = __add__

    def __neg__(self):
        return LaurentJet(-self.body, self.pole)

    def __sub__(self, other):
        return self + (-self._coerce(other, self))

    def __rsub__(self, other):
        return self._coerce(other, self) - self

    def __mul__(self, other):
        other = self._coerce(other, self)
        n = min(self.body.order, other.body.order)
        return LaurentJet(self.body.truncate(n) * other.body.truncate(n), self.pole + other.pole)

    __rmul__ = __mul__

    def coeff(self, i: int, k: int):
        """Coefficient of s^i t^k, where k may be negative down to -pole."""
        return self.body.coeff(i, k + self.pole)

    def residue_part(self) -> Jet1:
        """Coefficient of t^(-pole) as a function of s."""
        return self.body.at_t0()

    def __eq__(self, other):
        if not isinstance(other, LaurentJet):
            return NotImplemented
        a, b = self.normalize(), other.normalize()
        return a.pole == b.pole and a.body == b.body

    __hash__ = None

    def __repr__(self):
        return f"LaurentJet({self.body!r} / t^{self.pole})"
