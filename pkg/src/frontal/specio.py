"""JSON surface documents and seeded random specs.

Coefficients at the document boundary are factorial-scaled Taylor data, the
same convention FrontalSpec uses; exact documents write rationals as "p/q"
strings so they survive a round trip unchanged.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

from .conventions import EpsConvention
from .errors import SpecValidationError
from .fukui import DEFAULT_ORDER, FrontalSpec

SCHEMA_VERSION = 1

# (a, b, c) with a^2 + b^2 = c^2; cos0 = a/c, sin0 = b/c up to sign and swap
_PYTHAGOREAN = ((3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29), (0, 1, 1))


class SpecDocument:
    """A FrontalSpec together with the distance convention it was written in."""

    def __init__(self, spec: FrontalSpec, convention=EpsConvention.CANONICAL):
        self.spec = spec
        self.convention = EpsConvention(convention)

    def __eq__(self, other):
        return isinstance(other, SpecDocument) and self.to_dict() == other.to_dict()

    def to_dict(self) -> dict:
        s = self.spec
        enc = _encode if s.exact else float
        return {
            "schema_version": SCHEMA_VERSION,
            "mode": "exact" if s.exact else "numeric",
            "order": s.order,
            "curve": {
                "kappa": [enc(v) for v in s.kappa],
                "tau": [enc(v) for v in s.tau],
                "theta": {
                    "cos0": enc(s.cos0),
                    "sin0": enc(s.sin0),
                    "derivs": [enc(v) for v in s.theta],
                },
            },
            "b": {str(k): [enc(v) for v in vals] for k, vals in s.b.items()},
            "conventions": {"eps_sign": self.convention.value},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict, text: str | None = None) -> "SpecDocument":
        def fail(path: str, msg: str):
            key = path.rsplit(".", 1)[-1]
            line = _line_of(text, key) if text else None
            where = f" (line {line})" if line else ""
            raise SpecValidationError(f"{path}{where}: {msg}")

        if not isinstance(doc, dict):
            fail("document", "expected a JSON object")
        version = doc.get("schema_version")
        if version != SCHEMA_VERSION:
            fail("schema_version", f"expected {SCHEMA_VERSION}, got {version!r}")
        mode = doc.get("mode", "exact")
        if mode not in ("exact", "numeric"):
            fail("mode", f"expected 'exact' or 'numeric', got {mode!r}")
        exact = mode == "exact"
        order = doc.get("order", DEFAULT_ORDER)
        if not isinstance(order, int) or isinstance(order, bool) or order < 0:
            fail("order", f"expected a non-negative integer, got {order!r}")

        def number(path, v):
            try:
                return _decode(v, exact)
            except (TypeError, ValueError, ZeroDivisionError):
                fail(path, f"not a number: {v!r}")

        def array(path, v):
            if v is None:
                return ()
            if not isinstance(v, list):
                fail(path, "expected an array")
            if len(v) > order + 1:
                fail(path, f"{len(v)} entries exceed order + 1 = {order + 1}")
            return tuple(number(f"{path}[{i}]", x) for i, x in enumerate(v))

        curve = doc.get("curve")
        if not isinstance(curve, dict):
            fail("curve", "missing or not an object")
        if "kappa" not in curve:
            fail("curve.kappa", "missing")
        theta = curve.get("theta", {})
        if not isinstance(theta, dict):
            fail("curve.theta", "expected an object with cos0, sin0, derivs")
        b_raw = doc.get("b", {})
        if not isinstance(b_raw, dict):
            fail("b", "expected an object keyed by '3', '4', ...")
        b = {}
        for key, vals in b_raw.items():
            if not str(key).isdigit() or int(key) < 3:
                fail(f"b.{key}", "keys must be integers >= 3")
            b[int(key)] = array(f"b.{key}", vals)
        conv = doc.get("conventions", {}).get("eps_sign", "canonical")
        try:
            conv = EpsConvention(conv)
        except ValueError:
            fail("conventions.eps_sign", f"expected 'canonical' or 'paper_minus', got {conv!r}")
        try:
            spec = FrontalSpec(
                kappa=array("curve.kappa", curve["kappa"]),
                tau=array("curve.tau", curve.get("tau")),
                cos0=number("curve.theta.cos0", theta.get("cos0", 1)),
                sin0=number("curve.theta.sin0", theta.get("sin0", 0)),
                theta=array("curve.theta.derivs", theta.get("derivs")),
                b=b,
                order=order,
                exact=exact,
            )
        except SpecValidationError as exc:
            line = _line_of(text, "cos0") if text and "cos0" in str(exc) else None
            where = f" (line {line})" if line else ""
            raise SpecValidationError(f"curve.theta{where}: {exc}") from None
        return cls(spec, conv)

    @classmethod
    def loads(cls, text: str) -> "SpecDocument":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecValidationError(f"line {exc.lineno}: malformed JSON ({exc.msg})") from None
        return cls.from_dict(doc, text)

    @classmethod
    def load(cls, path) -> "SpecDocument":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())


def _encode(x):
    x = Fraction(int(x.numerator), int(x.denominator)) if hasattr(x, "numerator") else Fraction(x)
    return int(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _decode(v, exact: bool):
    if isinstance(v, bool):
        raise TypeError("booleans are not numbers")
    if exact:
        if isinstance(v, float):
            return Fraction(str(v))
        if isinstance(v, (int, str)):
            return Fraction(v)
        raise TypeError(type(v).__name__)
    if isinstance(v, str):
        return float(Fraction(v))
    if isinstance(v, (int, float)):
        return float(v)
    raise TypeError(type(v).__name__)


def _line_of(text: str | None, key: str) -> int | None:
    if not text:
        return None
    needle = f'"{key.split("[")[0]}"'
    for i, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return i
    return None


def _rational(rng: random.Random, num: int = 6, den: int = 4, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if q or not nonzero:
            return q


def random_angle(rng: random.Random) -> tuple:
    a, b, c = rng.choice(_PYTHAGOREAN)
    if rng.random() < 0.5:
        a, b = b, a
    return Fraction(a, c) * rng.choice((1, -1)), Fraction(b, c) * rng.choice((1, -1))


def random_spec(rng: random.Random, kind: str = "ccc", order: int = DEFAULT_ORDER,
                exact: bool = True, c2_root=None, jets: int = 3) -> FrontalSpec:
    """Random rational spec with a Pythagorean (cos0, sin0).

    kind: 'ccc' (b03 = 0, b13 != 0), 'cs1' (b03 = b13 = 0, b23 b05 != 0) or
    'any'.  With ``c2_root`` set (True draws one), b04 is chosen so that
    C2 vanishes at that canonical distance; the other root is then rational too.
    """
    cos0, sin0 = random_angle(rng)
    while True:
        kappa = (Fraction(rng.randint(1, 5), rng.randint(1, 3)),) + tuple(_rational(rng) for _ in range(jets - 1))
        tau = tuple(_rational(rng) for _ in range(jets))
        theta = tuple(_rational(rng) for _ in range(jets))
        if tau[0] != theta[0]:
            break
    b = {j: [_rational(rng) for _ in range(jets)] for j in (3, 4, 5, 6)}
    if kind == "ccc":
        b[3][0] = Fraction(0)
        b[3][1] = _rational(rng, nonzero=True)
    elif kind == "cs1":
        b[3][0] = b[3][1] = Fraction(0)
        b[3][2] = _rational(rng, nonzero=True)
        b[5][0] = _rational(rng, nonzero=True)
    elif kind != "any":
        raise ValueError(f"unknown kind {kind!r}")
    if c2_root is not None:
        ks, kt = kappa[0] * sin0, tau[0] - theta[0]
        e = _rational(rng, nonzero=True) if c2_root is True else Fraction(c2_root)
        while e * ks + 1 == 0:
            e = _rational(rng, nonzero=True)
        b[4][0] = 3 * (e * e * kt * kt / (e * ks + 1) - 1) / e
    spec = FrontalSpec(kappa, tau, cos0, sin0, theta, {k: tuple(v) for k, v in b.items()}, order=order)
    return spec if exact else spec.to_numeric()


def spec_from_seed(seed: int, **kw) -> FrontalSpec:
    return random_spec(random.Random(seed), **kw)

