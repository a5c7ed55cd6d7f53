"""Algebra of trigonometric Laurent polynomials in e^{i phi}.

A first-order polynomial ``a e^{i phi} + b e^{-i phi} + c`` is the basic
matrix-entry object of this package.  Products of two first-order
polynomials live in the degree range [-2, 2] (:class:`LaurentPoly`), and
every nonzero first-order polynomial factors, uniquely up to the order of
the two roots, into one of three shapes (``x = e^{i phi}``):

* ``scale * (x + w0) * (w1 * conj(x) + 1)``   generic, ``a != 0``
* ``scale * (w * conj(x) + 1)``               affine, ``a == 0, c != 0``
* ``b * conj(x)``                             pure negative frequency

Multiplying by ``x`` turns a first-order polynomial into the ordinary
quadratic ``a x^2 + c x + b``, so factoring, divisibility and root
containment all reduce to standard polynomial manipulations.  Everything
here is double precision; tolerances are explicit arguments wherever a
comparison is not exact.
"""

from __future__ import annotations

import cmath
import math
import numbers
from dataclasses import dataclass

__all__ = [
    "ZERO_COEFF_REL",
    "FirstOrderPoly",
    "LaurentPoly",
    "FullForm",
    "AffineForm",
    "PureNegForm",
    "DecompositionForm",
    "NotDivisibleError",
    "ZeroDivisorError",
    "ZeroPolynomialError",
    "mul",
    "exact_div",
    "factorize",
    "expand",
    "contains_root",
    "has_second_order",
]

#: Relative magnitude below which a coefficient counts as zero in case splits.
ZERO_COEFF_REL = 1e-13


class ZeroPolynomialError(ValueError):
    """The operation is undefined for the zero polynomial."""


class ZeroDivisorError(ZeroDivisionError):
    """Division by a polynomial whose coefficients are all (numerically) zero."""


class NotDivisibleError(ArithmeticError):
    """No first-order quotient exists within tolerance.

    The ``residual`` attribute carries the maximum coefficient magnitude of
    ``num - den * best_quotient``.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


def _finite(z, name: str) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


def _negligible(magnitude: float, scale: float) -> bool:
    return magnitude <= ZERO_COEFF_REL * (1.0 + scale)


@dataclass(frozen=True)
class FirstOrderPoly:
    """``a e^{i phi} + b e^{-i phi} + c`` with complex coefficients."""

    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        object.__setattr__(self, "a", _finite(self.a, "a"))
        object.__setattr__(self, "b", _finite(self.b, "b"))
        object.__setattr__(self, "c", _finite(self.c, "c"))

    @staticmethod
    def zero() -> "FirstOrderPoly":
        return FirstOrderPoly(0.0, 0.0, 0.0)

    @staticmethod
    def constant(c) -> "FirstOrderPoly":
        return FirstOrderPoly(0.0, 0.0, c)

    def eval(self, phi: float) -> complex:
        x = cmath.exp(1j * phi)
        return self.a * x + self.b * x.conjugate() + self.c

    __call__ = eval

    def max_abs(self) -> float:
        return max(abs(self.a), abs(self.b), abs(self.c))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def is_real_valued(self, tol: float) -> bool:
        """True iff the polynomial takes real values for every real phi.

        Coefficientwise criterion: ``b = conj(a)`` and ``c`` real, both
        within ``tol``.
        """
        return abs(self.b - self.a.conjugate()) <= tol and abs(self.c.imag) <= tol

    def conjugate(self) -> "FirstOrderPoly":
        """The polynomial whose value is the complex conjugate at every phi."""
        return FirstOrderPoly(self.b.conjugate(), self.a.conjugate(), self.c.conjugate())

    def as_laurent(self) -> "LaurentPoly":
        return LaurentPoly((0.0, self.b, self.c, self.a, 0.0))

    def distance(self, other: "FirstOrderPoly") -> float:
        """Maximum coefficientwise difference."""
        return max(abs(self.a - other.a), abs(self.b - other.b), abs(self.c - other.c))

    def isclose(self, other: "FirstOrderPoly", tol: float) -> bool:
        return self.distance(other) <= tol

    def __add__(self, other):
        if not isinstance(other, FirstOrderPoly):
            return NotImplemented
        return FirstOrderPoly(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other):
        if not isinstance(other, FirstOrderPoly):
            return NotImplemented
        return FirstOrderPoly(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self):
        return FirstOrderPoly(-self.a, -self.b, -self.c)

    def __mul__(self, other):
        if isinstance(other, FirstOrderPoly):
            return mul(self, other)
        if isinstance(other, numbers.Complex):
            k = complex(other)
            return FirstOrderPoly(self.a * k, self.b * k, self.c * k)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Complex):
            return self.__mul__(other)
        return NotImplemented


@dataclass(frozen=True)
class LaurentPoly:
    """Polynomial in e^{i phi} with integer degrees k in [-2, 2].

    ``coeffs`` stores the coefficients for degrees (-2, -1, 0, 1, 2).  This
    range is closed under products of first-order polynomials, which is the
    only way second-order content arises in this package.
    """

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(_finite(z, f"coeff[{k - 2}]") for k, z in enumerate(self.coeffs))
        if len(cs) != 5:
            raise ValueError("LaurentPoly stores exactly five coefficients")
        object.__setattr__(self, "coeffs", cs)

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly((0.0,) * 5)

    @staticmethod
    def from_dict(d) -> "LaurentPoly":
        cs = [0j] * 5
        for k, z in d.items():
            if not -2 <= k <= 2:
                raise ValueError(f"degree {k} outside [-2, 2]")
            cs[k + 2] = complex(z)
        return LaurentPoly(tuple(cs))

    @staticmethod
    def from_first_order(p: FirstOrderPoly) -> "LaurentPoly":
        return p.as_laurent()

    def coeff(self, k: int) -> complex:
        if not -2 <= k <= 2:
            raise ValueError(f"degree {k} outside [-2, 2]")
        return self.coeffs[k + 2]

    def as_dict(self) -> dict:
        return {k - 2: z for k, z in enumerate(self.coeffs) if z != 0}

    def eval(self, phi: float) -> complex:
        x = cmath.exp(1j * phi)
        return sum(z * x ** (k - 2) for k, z in enumerate(self.coeffs) if z != 0) + 0j

    __call__ = eval

    def max_abs(self) -> float:
        return max(abs(z) for z in self.coeffs)

    def distance(self, other: "LaurentPoly") -> float:
        return max(abs(u - v) for u, v in zip(self.coeffs, other.coeffs))

    def isclose(self, other: "LaurentPoly", tol: float) -> bool:
        return self.distance(other) <= tol

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly(tuple(u + v for u, v in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly(tuple(u - v for u, v in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, numbers.Complex):
            k = complex(other)
            return LaurentPoly(tuple(z * k for z in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__


@dataclass(frozen=True)
class FullForm:
    """``scale * (x + w0) * (w1 * conj(x) + 1)`` with ``scale != 0``."""

    scale: complex
    w0: complex
    w1: complex

    def __post_init__(self):
        object.__setattr__(self, "scale", _finite(self.scale, "scale"))
        object.__setattr__(self, "w0", _finite(self.w0, "w0"))
        object.__setattr__(self, "w1", _finite(self.w1, "w1"))
        if self.scale == 0:
            raise ValueError("FullForm.scale must be nonzero")


@dataclass(frozen=True)
class AffineForm:
    """``scale * (w * conj(x) + 1)`` with ``scale != 0``."""

    scale: complex
    w: complex

    def __post_init__(self):
        object.__setattr__(self, "scale", _finite(self.scale, "scale"))
        object.__setattr__(self, "w", _finite(self.w, "w"))
        if self.scale == 0:
            raise ValueError("AffineForm.scale must be nonzero")


@dataclass(frozen=True)
class PureNegForm:
    """``b * conj(x)``."""

    b: complex

    def __post_init__(self):
        object.__setattr__(self, "b", _finite(self.b, "b"))


DecompositionForm = FullForm | AffineForm | PureNegForm


def mul(p: FirstOrderPoly, q: FirstOrderPoly) -> LaurentPoly:
    """Coefficient-exact product of two first-order polynomials."""
    return LaurentPoly(
        (
            p.b * q.b,
            p.b * q.c + p.c * q.b,
            p.a * q.b + p.b * q.a + p.c * q.c,
            p.a * q.c + p.c * q.a,
            p.a * q.a,
        )
    )


def exact_div(num, den: FirstOrderPoly, tol: float = 1e-10) -> FirstOrderPoly:
    """Divide ``num`` (degrees in [-2, 2]) by a first-order ``den``.

    Both sides are shifted to ordinary polynomials (``num * x^2`` and
    ``den * x``) and long division is performed; the quotient is accepted
    only if the rebuilt product matches ``num`` with residual at most
    ``tol * max|num coeffs|``.  Raises :class:`ZeroDivisorError` for a zero
    divisor and :class:`NotDivisibleError` when no first-order quotient
    exists (for example when the true quotient would need degree 2).
    """
    if isinstance(num, FirstOrderPoly):
        num = num.as_laurent()
    if den.is_zero():
        raise ZeroDivisorError("division by the zero polynomial")

    num_scale = num.max_abs()
    if num_scale == 0.0:
        return FirstOrderPoly.zero()

    # Ascending coefficients of num * x^2 and den * x.
    n = list(num.coeffs)
    d = (den.b, den.c, den.a)
    den_scale = den.max_abs()
    lead = 2
    while lead > 0 and _negligible(abs(d[lead]), den_scale):
        lead -= 1
    if _negligible(abs(d[lead]), den_scale):
        raise ZeroDivisorError("division by a numerically zero polynomial")

    qcoeffs = [0j] * 5
    rem = list(n)
    for k in range(4, lead - 1, -1):
        qk = rem[k] / d[lead]
        qcoeffs[k - lead] = qk
        for m in range(lead + 1):
            rem[k - lead + m] -= qk * d[m]

    # Quotient degree j in [-1, 1] sits at x^(j+1) of the shifted quotient.
    q = FirstOrderPoly(qcoeffs[2], qcoeffs[0], qcoeffs[1])
    residual = (num - mul(q, den)).max_abs()
    if residual > tol * num_scale:
        raise NotDivisibleError(
            f"residual {residual:.3e} exceeds {tol:.1e} * |num| = {tol * num_scale:.3e}",
            residual,
        )
    return q


def _stable_quadratic_roots(a2: complex, a1: complex, a0: complex) -> tuple[complex, complex]:
    """Roots of ``a2 x^2 + a1 x + a0`` with ``a2 != 0``.

    The larger-magnitude root comes from ``-(a1 + s*sqrt(disc)) / 2`` with the
    sign chosen against cancellation, the companion from the root product.
    """
    disc = a1 * a1 - 4.0 * a2 * a0
    sq = cmath.sqrt(disc)
    if (a1.conjugate() * sq).real < 0.0:
        sq = -sq
    t = -(a1 + sq) / 2.0
    if t == 0:
        return 0j, 0j
    return t / a2, a0 / t


def _canonical_pair(w0: complex, w1: complex) -> tuple[complex, complex]:
    # Lexicographic (<magnitude>, <argument>) order keeps form equality
    # deterministic under root permutation.
    key = lambda w: (abs(w), cmath.phase(w))
    return tuple(sorted((w0, w1), key=key))


def factorize(p: FirstOrderPoly) -> DecompositionForm:
    """Unique factored shape of a nonzero first-order polynomial.

    For ``a != 0`` the roots of ``a x^2 + c x + b`` are negated into
    ``(w0, w1)`` and stored in canonical order; for ``a = 0`` the affine or
    pure negative-frequency shape applies.
    """
    scale = p.max_abs()
    if scale == 0.0:
        raise ZeroPolynomialError("cannot factorize the zero polynomial")
    if not _negligible(abs(p.a), scale):
        r0, r1 = _stable_quadratic_roots(p.a, p.c, p.b)
        w0, w1 = _canonical_pair(-r0, -r1)
        return FullForm(p.a, w0, w1)
    if not _negligible(abs(p.c), scale):
        return AffineForm(p.c, p.b / p.c)
    if not _negligible(abs(p.b), scale):
        return PureNegForm(p.b)
    raise ZeroPolynomialError("all coefficients are below the zero threshold")


def expand(f: DecompositionForm) -> FirstOrderPoly:
    """Inverse of :func:`factorize` up to root permutation."""
    if isinstance(f, FullForm):
        return FirstOrderPoly(f.scale, f.scale * f.w0 * f.w1, f.scale * (f.w0 + f.w1))
    if isinstance(f, AffineForm):
        return FirstOrderPoly(0.0, f.scale * f.w, f.scale)
    if isinstance(f, PureNegForm):
        return FirstOrderPoly(0.0, f.b, 0.0)
    raise TypeError(f"not a decomposition form: {f!r}")


def contains_root(p: FirstOrderPoly, z: complex, tol: float = 1e-8) -> int:
    """Multiplicity (0, 1 or 2) of ``-z`` as a root of ``x * p(x)``.

    Equivalently, how many times the factor ``(x + z)`` divides the shifted
    polynomial.  Roots match with relative tolerance ``tol`` scaled by
    ``max(1, |z|)``.
    """
    z = complex(z)
    if z == 0:
        raise ValueError("factor containment is defined for nonzero z only")
    form = factorize(p)
    if isinstance(form, FullForm):
        ws = (form.w0, form.w1)
    elif isinstance(form, AffineForm):
        ws = (form.w,)
    else:
        ws = ()
    limit = tol * max(1.0, abs(z))
    return sum(1 for w in ws if abs(w - z) <= limit)


def has_second_order(lp: LaurentPoly, tol: float = 1e-10) -> bool:
    """True iff a degree +2 or -2 coefficient exceeds ``tol`` in magnitude."""
    return abs(lp.coeff(2)) > tol or abs(lp.coeff(-2)) > tol
