"""Exact scalars: sparse polynomials over Q and their fraction field.

Everything in the package lives in one fixed polynomial ring whose variables
are listed in :data:`VARIABLES`; exponent vectors index into that order and
the monomial order is graded lexicographic.  Polynomials are
``flint.fmpq_mpoly`` values (aliased :data:`MultiPoly`); :class:`RatFun` is a
reduced fraction of two of them.

The ``v*``/``s*``/``w*`` families carry per-row variables of shifted
symmetric functions: ``v_i`` the multiplicative row variables, ``s_i`` the
(alpha, gamma) row variables and ``w_i = -alpha*s_i`` the positivity
variables of the Lassalle-type conjecture.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

import flint

MAX_ROWS = 6

VARIABLES: tuple[str, ...] = (
    ("q", "t", "u", "z", "alpha", "gamma", "b", "qprime")
    + tuple(f"v{i}" for i in range(1, MAX_ROWS + 1))
    + tuple(f"s{i}" for i in range(1, MAX_ROWS + 1))
    + tuple(f"w{i}" for i in range(1, MAX_ROWS + 1))
)

CTX = flint.fmpq_mpoly_ctx.get(VARIABLES, "deglex")
NVARS = len(VARIABLES)
_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_GENS = CTX.gens()

MultiPoly = flint.fmpq_mpoly
Scalar = Union["RatFun", MultiPoly, int, Fraction, flint.fmpq]


class DenominatorVanishes(ZeroDivisionError):
    """A substitution sent a denominator to the zero polynomial."""


class PoleAtPoint(ZeroDivisionError):
    """The function has no finite limit at the requested point."""


class NotPolynomial(ArithmeticError):
    """A polynomiality certificate failed."""


def var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise KeyError(f"unknown variable {name!r}") from None


def gen(name: str) -> MultiPoly:
    return _GENS[var_index(name)]


def const(value) -> MultiPoly:
    if isinstance(value, Fraction):
        value = flint.fmpq(value.numerator, value.denominator)
    return CTX.constant(value)


def to_poly(value) -> MultiPoly:
    if isinstance(value, flint.fmpq_mpoly):
        return value
    return const(value)


ZERO_POLY = const(0)
ONE_POLY = const(1)


def poly_exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly | None:
    """Return ``c`` with ``a == b*c``, or ``None`` when ``b`` does not divide ``a``."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    quo, rem = divmod(a, b)
    return quo if rem.is_zero() else None


def used_variables(p: MultiPoly) -> set[str]:
    return {VARIABLES[i] for i, d in enumerate(p.degrees()) if d > 0}


class RatFun:
    """Element of Q(VARIABLES) as a reduced fraction ``num/den``.

    The denominator is nonzero and monic under the graded-lex order, and
    ``gcd(num, den) == 1``.  Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None, *, reduced: bool = False):
        if isinstance(num, RatFun):
            if den is not None:
                raise TypeError("denominator given with a RatFun numerator")
            self.num, self.den = num.num, num.den
            return
        num = to_poly(num)
        if den is None:
            self.num, self.den = num, ONE_POLY
            return
        den = to_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = ZERO_POLY, ONE_POLY
        elif not reduced:
            if not den.is_constant():
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num / g, den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        self.num, self.den = num, den

    # construction helpers -------------------------------------------------

    @classmethod
    def var(cls, name: str) -> "RatFun":
        return cls(gen(name))

    @classmethod
    def coerce(cls, value) -> "RatFun":
        if isinstance(value, RatFun):
            return value
        if isinstance(value, flint.fmpq_mpoly):
            return cls(value)
        if isinstance(value, (int, Fraction, flint.fmpq, flint.fmpz)):
            return cls(const(value))
        raise TypeError(f"cannot coerce {type(value).__name__} to RatFun")

    # predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def variables(self) -> set[str]:
        return used_variables(self.num) | used_variables(self.den)

    # arithmetic -----------------------------------------------------------

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, reduced=True)

    def __add__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            if isinstance(other, flint.fmpq_mpoly) or isinstance(other, (int, Fraction, flint.fmpq)):
                return RatFun(self.num + to_poly(other) * self.den, self.den, reduced=True)
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den.is_one() and other.den.is_one():
            return RatFun(self.num + other.num)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        if g.is_one():
            # coprime denominators keep the sum reduced
            return RatFun(self.num * other.den + other.num * self.den,
                          self.den * other.den, reduced=True)
        a, b = self.den / g, other.den / g
        return RatFun(self.num * b + other.num * a, self.den * b)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            return self + (-other)
        if isinstance(other, flint.fmpq_mpoly) or isinstance(other, (int, Fraction, flint.fmpq)):
            return self + (-to_poly(other))
        return NotImplemented

    def __rsub__(self, other) -> "RatFun":
        return (-self) + other

    def __mul__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            if isinstance(other, (int, Fraction, flint.fmpq)):
                if other == 0:
                    return RatFun()
                return RatFun(self.num * to_poly(other), self.den, reduced=True)
            if isinstance(other, flint.fmpq_mpoly):
                other = RatFun(other)
            else:
                return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RatFun()
        if self.den.is_one() and other.den.is_one():
            return RatFun(self.num * other.num)
        n1, d2 = self.num, other.den
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 / g, d2 / g
        n2, d1 = other.num, self.den
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 / g, d1 / g
        return RatFun(n1 * n2, d1 * d2, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFun(self.den, self.num, reduced=True)

    def __truediv__(self, other) -> "RatFun":
        other = RatFun.coerce(other) if not isinstance(other, RatFun) else other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFun":
        return RatFun.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFun":
        if k >= 0:
            return RatFun(self.num ** k, self.den ** k, reduced=True)
        return self.inverse() ** (-k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFun):
            try:
                other = RatFun.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.den.is_one():
            return f"RatFun({self.num})"
        return f"RatFun(({self.num})/({self.den}))"

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    # specialisations ------------------------------------------------------

    def adams(self, k: int) -> "RatFun":
        """Plethystic power ``p_k[self]``: every variable ``x`` becomes ``x**k``."""
        if k == 1 or self.is_constant():
            return self
        exps = [k] * NVARS
        return RatFun(self.num.inflate(exps), self.den.inflate(exps), reduced=True)

    def leading_constant(self):
        return self.num.leading_coefficient() / self.den.leading_coefficient()


ZERO = RatFun()
ONE = RatFun(1)


def ratfun(value) -> RatFun:
    return RatFun.coerce(value)


def var(name: str) -> RatFun:
    return RatFun.var(name)


# substitution ----------------------------------------------------------------


def _subs_poly(p: MultiPoly, images: Mapping[int, RatFun]) -> RatFun:
    """Evaluate ``p`` at ``x_i -> images[i]``; other variables are fixed."""
    if p.is_constant():
        return RatFun(p)
    degs = p.degrees()
    live = {i: img for i, img in images.items() if degs[i]}
    if not live:
        return RatFun(p)
    poly_imgs = {i: img.num / img.den.leading_coefficient()
                 for i, img in live.items() if img.den.is_constant()}
    rational = {i: img for i, img in live.items() if i not in poly_imgs}
    if poly_imgs:
        args = [poly_imgs.get(i, _GENS[i]) for i in range(NVARS)]
        p = p.compose(*args)
    if not rational:
        return RatFun(p)
    # Each rational image n/d: clear denominators by the top power of d.
    result = RatFun(p)
    for i, img in rational.items():
        result = _subs_one_rational(result, i, img)
    return result


def _subs_one_rational(f: RatFun, i: int, img: RatFun) -> RatFun:
    out = []
    for poly in (f.num, f.den):
        deg = poly.degrees()[i]
        if deg <= 0:
            out.append((poly, ONE_POLY, 0))
            continue
        buckets: dict[int, dict] = {}
        for exp, c in poly.terms():
            e = exp[i]
            rest = list(exp)
            rest[i] = 0
            buckets.setdefault(e, {})[tuple(rest)] = c
        n, d = img.num, img.den
        npow = [ONE_POLY]
        dpow = [ONE_POLY]
        for _ in range(deg):
            npow.append(npow[-1] * n)
            dpow.append(dpow[-1] * d)
        acc = ZERO_POLY
        for e, terms in buckets.items():
            acc += CTX.from_dict(terms) * npow[e] * dpow[deg - e]
        out.append((acc, d, deg))
    (nn, d, dn), (dd, _, ddeg) = out
    # f = (nn / d^dn) / (dd / d^ddeg)
    if dn >= ddeg:
        num, den = nn, dd * img.den ** (dn - ddeg)
    else:
        num, den = nn * img.den ** (ddeg - dn), dd
    if den.is_zero():
        raise DenominatorVanishes(f"denominator vanishes under {VARIABLES[i]} -> {img}")
    return RatFun(num, den)


def substitute(f, mapping: Mapping[str, object]) -> RatFun:
    """Simultaneous substitution of variables by scalars."""
    f = ratfun(f)
    images = {var_index(name): ratfun(img) for name, img in mapping.items()}
    num = _subs_poly(f.num, images)
    den = _subs_poly(f.den, images)
    if den.is_zero():
        raise DenominatorVanishes(f"denominator of {f} vanishes under {dict(mapping)}")
    return num / den


def as_polynomial(f, variables: Iterable[str] | None = None):
    """Certify that ``f`` is a polynomial.

    With ``variables=None`` the certificate is over all variables and the
    polynomial is returned as a :data:`MultiPoly`.  With a subset of
    variables, the coefficient field is the fraction field of the remaining
    ones; the (reduced) denominator must be free of ``variables`` and ``f``
    itself is returned.
    """
    f = ratfun(f)
    if variables is None:
        q = poly_exact_div(f.num, f.den)
        if q is None:
            raise NotPolynomial(f"{f} is not a polynomial")
        return q
    names = set(variables)
    bad = names & used_variables(f.den)
    if bad:
        raise NotPolynomial(f"{f} has a denominator in {sorted(bad)}")
    return f


def limit_cancel(f, name: str, point) -> RatFun:
    """Limit of ``f`` as ``name -> point`` by cancelling factors ``(name - point)``."""
    f = ratfun(f)
    lin = gen(name) - const(point)
    num, den = f.num, f.den
    while True:
        if _vanishes(den, name, point):
            qn = poly_exact_div(num, lin)
            qd = poly_exact_div(den, lin)
            if qn is None or qd is None:
                raise PoleAtPoint(f"{f} has a pole at {name}={point}")
            num, den = qn, qd
        else:
            break
    return substitute(RatFun(num, den), {name: point})


def _vanishes(p: MultiPoly, name: str, point) -> bool:
    return _subs_poly(p, {var_index(name): ratfun(point)}).is_zero()


# canonical JSON ----------------------------------------------------------------


def _coef_str(c) -> str:
    c = flint.fmpq(c)
    return str(c.p) if c.q == 1 else f"{c.p}/{c.q}"


def poly_to_json(p: MultiPoly) -> list[dict]:
    terms = []
    for exp, c in p.terms():
        terms.append({
            "exp": {VARIABLES[i]: int(e) for i, e in enumerate(exp) if e},
            "coef": _coef_str(c),
        })
    return terms


def poly_from_json(data: list[dict]) -> MultiPoly:
    terms = {}
    for term in data:
        exp = [0] * NVARS
        for name, e in term["exp"].items():
            exp[var_index(name)] = int(e)
        c = Fraction(term["coef"])
        terms[tuple(exp)] = flint.fmpq(c.numerator, c.denominator)
    return CTX.from_dict(terms) if terms else ZERO_POLY


def ratfun_to_json(f) -> dict:
    f = ratfun(f)
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def ratfun_from_json(data: dict) -> RatFun:
    return RatFun(poly_from_json(data["num"]), poly_from_json(data["den"]))


# coefficient scans used by the certificates ----------------------------------


def coefficients(p: MultiPoly) -> list[Fraction]:
    return [Fraction(int(c.p), int(c.q)) for c in p.coeffs()]


def has_integer_coefficients(p: MultiPoly) -> bool:
    return all(c.q == 1 for c in p.coeffs())


def has_nonnegative_coefficients(p: MultiPoly) -> bool:
    return all(c >= 0 for c in p.coeffs())


# (alpha, gamma) parametrization ---------------------------------------------------


def to_alpha_gamma(f) -> RatFun:
    """Rewrite ``f(q, t)`` with ``q = 1 + gamma*alpha`` and ``t = 1 + gamma``."""
    a, g = var("alpha"), var("gamma")
    return substitute(f, {"q": 1 + g * a, "t": 1 + g})


def alpha_to_b(f) -> RatFun:
    """Rewrite ``f(alpha, ...)`` with ``alpha = 1 + b``."""
    return substitute(f, {"alpha": 1 + var("b")})
