"""High-precision pointwise reference for a Fukui surface, independent of the jet code.

The adapted frame and the singular curve are integrated as an ODE in mpmath,
a(s, t) comes from quadrature of sqrt(u^2 - b_u^2) (the normalization
|f_t| = |t|), and derivatives are central differences at high working precision.
"""

from __future__ import annotations

from functools import lru_cache

import mpmath as mp

from .fukui import FrontalSpec


def _poly(derivs):
    """s -> sum d_i s^i / i!."""
    coeffs = [mp.mpf(d.numerator) / d.denominator if hasattr(d, "numerator") else mp.mpf(d) for d in derivs]

    def value(s):
        acc, term = mp.mpf(0), mp.mpf(1)
        for i, c in enumerate(coeffs):
            acc += c * term
            term = term * s / (i + 1)
        return acc

    return value


class ReferenceSurface:
    def __init__(self, spec: FrontalSpec, dps: int = 60):
        self.spec = spec
        self.dps = dps
        with mp.workdps(dps):
            self.kappa = _poly(spec.kappa)
            self.tau = _poly(spec.tau)
            self.theta_shift = _poly((0,) + tuple(spec.theta))
            self.b = {k: [_poly(v[i:]) for i in range(3)] for k, v in spec.b.items()}
            c0, s0 = mp.mpf(float(spec.cos0)), mp.mpf(float(spec.sin0))
            if spec.exact:
                c0 = mp.mpf(spec.cos0.numerator) / spec.cos0.denominator
                s0 = mp.mpf(spec.sin0.numerator) / spec.sin0.denominator
            self.theta0 = mp.atan2(s0, c0)
            y0 = [0, 0, 0, 1, 0, 0, 0, c0, -s0, 0, s0, c0]
            self._ode = mp.odefun(self._rhs, 0, y0)
        self._curve = lru_cache(maxsize=None)(self._curve_uncached)

    def _rhs(self, s, y):
        k = self.kappa(s)
        th = self.theta0 + self.theta_shift(s)
        al, be = k * mp.cos(th), k * mp.sin(th)
        om = self.tau(s) - mp.diff(self.theta_shift, s)
        a1, a2, a3 = y[3:6], y[6:9], y[9:12]
        d1 = [al * x + be * z for x, z in zip(a2, a3)]
        d2 = [-al * x + om * z for x, z in zip(a1, a3)]
        d3 = [-be * x - om * z for x, z in zip(a1, a2)]
        return list(a1) + d1 + d2 + d3

    def _curve_uncached(self, s):
        y = self._ode(s)
        return y[0:3], y[6:9], y[9:12]

    def b_value(self, s, t, dt: int = 0):
        """d^dt b / dt^dt at (s, t), with b = sum_k b_k(s) t^k / k!."""
        acc = mp.mpf(0)
        for k, comps in self.b.items():
            if k >= dt:
                acc += comps[0](s) * t ** (k - dt) / mp.factorial(k - dt)
        return acc

    def a_value(self, s, t):
        def integrand(u):
            bu = self.b_value(s, u, 1)
            return mp.sign(u) * mp.sqrt(u * u - bu * bu) if u else mp.mpf(0)

        return mp.quad(integrand, [0, t])

    def f(self, s, t):
        with mp.workdps(self.dps):
            s, t = mp.mpf(s), mp.mpf(t)
            gamma, a2, a3 = self._curve(s)
            a, b = self.a_value(s, t), self.b_value(s, t)
            return [g + a * x + b * z for g, x, z in zip(gamma, a2, a3)]

    def partial(self, s, t, ns: int, nt: int, step=None):
        """Central finite difference of f of order (ns, nt), ns + nt <= 2."""
        with mp.workdps(self.dps):
            h = mp.mpf(10) ** (-(self.dps // 4)) if step is None else mp.mpf(step)
            s, t = mp.mpf(s), mp.mpf(t)
            if (ns, nt) in ((1, 0), (0, 1)):
                ds, dt = (h, 0) if ns else (0, h)
                p, m = self.f(s + ds, t + dt), self.f(s - ds, t - dt)
                return [(x - y) / (2 * h) for x, y in zip(p, m)]
            if (ns, nt) in ((2, 0), (0, 2)):
                ds, dt = (h, 0) if ns else (0, h)
                p, c, m = self.f(s + ds, t + dt), self.f(s, t), self.f(s - ds, t - dt)
                return [(x - 2 * y + z) / (h * h) for x, y, z in zip(p, c, m)]
            if (ns, nt) == (1, 1):
                pp, pm = self.f(s + h, t + h), self.f(s + h, t - h)
                mp_, mm = self.f(s - h, t + h), self.f(s - h, t - h)
                return [(a - b - c + d) / (4 * h * h) for a, b, c, d in zip(pp, pm, mp_, mm)]
            raise ValueError("only derivatives up to order 2 are supported")

    def first_second(self, s, t) -> dict:
        """E and L at a regular point (t != 0), with nu oriented like a3 near t = 0+."""
        with mp.workdps(self.dps):
            fs = self.partial(s, t, 1, 0)
            ft = self.partial(s, t, 0, 1)
            fss = self.partial(s, t, 2, 0)
            n = [fs[1] * ft[2] - fs[2] * ft[1], fs[2] * ft[0] - fs[0] * ft[2], fs[0] * ft[1] - fs[1] * ft[0]]
            norm = mp.sqrt(sum(x * x for x in n)) * mp.sign(t)
            nu = [x / norm for x in n]
            return {"E": sum(x * x for x in fs), "L": sum(x * y for x, y in zip(fss, nu))}
