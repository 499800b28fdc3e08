"""Scalar arithmetic over the dual-complex ring C[eps] with eps^2 = 0.

A dual-complex number is stored as two independent complex components,
``sig + inf*eps``.  Nilpotency is enforced at the representation level:
no operation ever multiplies two infinitesimal parts together, so the
square of any infinitesimal is bit-exactly zero.

``DualReal`` is the ordered sub-ring a + b*eps with real components; it
carries probabilities and norms and is the only type that supports
comparison.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Callable

from .errors import (
    BothPartsZero,
    DivisorInfinitesimal,
    LogOfInfinitesimal,
    ModulusOfInfinitesimal,
    RootOfInfinitesimal,
)

#: Default appreciability cutoff: |sig| <= TAU counts as zero significant part.
TAU = 1e-12


class Classification(enum.Enum):
    ZERO = "zero"
    INFINITESIMAL = "infinitesimal"
    APPRECIABLE = "appreciable"


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class DualComplex:
    """z + t*eps with complex significant part z and infinitesimal part t."""

    sig: complex = 0j
    inf: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "sig", complex(self.sig))
        object.__setattr__(self, "inf", complex(self.inf))

    # -- ring operations -------------------------------------------------

    def __add__(self, other) -> "DualComplex":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return DualComplex(self.sig + other.sig, self.inf + other.inf)

    __radd__ = __add__

    def __sub__(self, other) -> "DualComplex":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return DualComplex(self.sig - other.sig, self.inf - other.inf)

    def __rsub__(self, other) -> "DualComplex":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> "DualComplex":
        return DualComplex(-self.sig, -self.inf)

    def __mul__(self, other) -> "DualComplex":
        # eps^2 = 0: the product never reads inf*inf.
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return DualComplex(
            self.sig * other.sig,
            self.inf * other.sig + self.sig * other.inf,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "DualComplex":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return div(self, other)

    def __rtruediv__(self, other) -> "DualComplex":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return div(other, self)

    def __pow__(self, n: int) -> "DualComplex":
        return pow_int(self, n)

    # -- involutions and views -------------------------------------------

    def conj(self) -> "DualComplex":
        """The linear conjugation z* + t*eps."""
        return DualComplex(self.sig.conjugate(), self.inf.conjugate())

    def __str__(self) -> str:
        return f"{_fmt_complex(self.sig)} + ({_fmt_complex(self.inf)})ε"


@dataclass(frozen=True)
class DualReal:
    """a + b*eps with real components, ordered lexicographically (eps > 0)."""

    sig: float = 0.0
    inf: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "sig", float(self.sig))
        object.__setattr__(self, "inf", float(self.inf))

    def __add__(self, other) -> "DualReal":
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        return DualReal(self.sig + other.sig, self.inf + other.inf)

    __radd__ = __add__

    def __sub__(self, other) -> "DualReal":
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        return DualReal(self.sig - other.sig, self.inf - other.inf)

    def __rsub__(self, other) -> "DualReal":
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> "DualReal":
        return DualReal(-self.sig, -self.inf)

    def __mul__(self, other) -> "DualReal":
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        return DualReal(
            self.sig * other.sig,
            self.inf * other.sig + self.sig * other.inf,
        )

    __rmul__ = __mul__

    # -- order (exact on stored floats, no tolerance) --------------------

    def __lt__(self, other) -> bool:
        other = _coerce_real(other)
        return (self.sig, self.inf) < (other.sig, other.inf)

    def __le__(self, other) -> bool:
        other = _coerce_real(other)
        return (self.sig, self.inf) <= (other.sig, other.inf)

    def __gt__(self, other) -> bool:
        other = _coerce_real(other)
        return (self.sig, self.inf) > (other.sig, other.inf)

    def __ge__(self, other) -> bool:
        other = _coerce_real(other)
        return (self.sig, self.inf) >= (other.sig, other.inf)

    def sqrt(self, tau: float = TAU) -> "DualReal":
        """Dual square root: sqrt(a) + b/(2 sqrt(a)) eps; a must be appreciable."""
        if abs(self.sig) <= tau:
            raise RootOfInfinitesimal("sqrt of a non-appreciable dual real")
        s = math.sqrt(self.sig)
        return DualReal(s, self.inf / (2.0 * s))

    def as_dual_complex(self) -> DualComplex:
        return DualComplex(complex(self.sig), complex(self.inf))

    def __str__(self) -> str:
        return f"{self.sig!r} + ({self.inf!r})ε"


def _coerce(x) -> DualComplex:
    if isinstance(x, DualComplex):
        return x
    if isinstance(x, DualReal):
        return x.as_dual_complex()
    if isinstance(x, (int, float, complex)):
        return DualComplex(complex(x))
    return NotImplemented


def _coerce_real(x) -> DualReal:
    if isinstance(x, DualReal):
        return x
    if isinstance(x, (int, float)):
        return DualReal(float(x))
    return NotImplemented


def _fmt_complex(z: complex) -> str:
    re, im = z.real, z.imag
    sign = "+" if im >= 0 else "-"
    return f"{re:g}{sign}{abs(im):g}i"


def classify(w: DualComplex, tau: float = TAU) -> Classification:
    """Trichotomy appreciable / infinitesimal / zero against the cutoff tau."""
    if abs(w.sig) > tau:
        return Classification.APPRECIABLE
    if abs(w.inf) > tau:
        return Classification.INFINITESIMAL
    return Classification.ZERO


def compare(a: DualReal, b: DualReal) -> Ordering:
    """Lexicographic comparison with eps > 0; exact on the stored floats."""
    if a < b:
        return Ordering.LT
    if a > b:
        return Ordering.GT
    return Ordering.EQ


# ---------------------------------------------------------------------------
# Division
# ---------------------------------------------------------------------------


def div(a: DualComplex, b: DualComplex, tau: float = TAU) -> DualComplex:
    """a/b for appreciable b: a.sig/b.sig + (b.sig a.inf - a.sig b.inf)/b.sig^2 eps."""
    if abs(b.sig) <= tau:
        raise DivisorInfinitesimal(
            f"division by non-appreciable {b}: no unique inverse exists"
        )
    z = a.sig / b.sig
    t = (b.sig * a.inf - a.sig * b.inf) / (b.sig * b.sig)
    return DualComplex(z, t)


def div_infinitesimal_convention(
    a: DualComplex, b: DualComplex, tau: float = TAU
) -> DualComplex:
    """Infinitesimal/infinitesimal division with the t' = 0 convention.

    The quotient of two infinitesimals is under-determined: any t'
    solves w' * b = a.  Returns a.inf/b.inf + 0*eps.  The result is not
    an inverse of anything; callers must not feed it back into division
    expecting ring identities to hold.
    """
    if abs(b.inf) <= tau:
        raise BothPartsZero("divisor has both components (numerically) zero")
    return DualComplex(a.inf / b.inf, 0j)


# ---------------------------------------------------------------------------
# Powers, roots, analytic extension
# ---------------------------------------------------------------------------


def pow_int(w: DualComplex, n: int) -> DualComplex:
    """w^n = z^n + n z^(n-1) t eps for integer n >= 0 (0^0 = 1)."""
    if n < 0:
        raise ValueError("pow_int requires n >= 0; use div for inverses")
    if n == 0:
        return DualComplex(1.0)
    # complex 0**0 == 1 covers the n == 1, z == 0 corner.
    return DualComplex(w.sig**n, n * w.sig ** (n - 1) * w.inf)


def nth_root(w: DualComplex, n: int, k: int = 0, tau: float = TAU) -> DualComplex:
    """k-th branch of the n-th root, with the branch synchronized between
    the base term and the denominator of the infinitesimal part."""
    if n < 1:
        raise ValueError("nth_root requires n >= 1")
    if not 0 <= k < n:
        raise ValueError(f"branch index k={k} out of range [0, {n})")
    if abs(w.sig) <= tau:
        raise RootOfInfinitesimal("n-th root of a non-appreciable number")
    r = abs(w.sig) ** (1.0 / n)
    phi = (cmath.phase(w.sig) + 2.0 * math.pi * k) / n
    root = r * cmath.exp(1j * phi)
    return DualComplex(root, w.inf / (n * root ** (n - 1)))


def sqrt_s(w: DualComplex, k: int = 0, tau: float = TAU) -> DualComplex:
    return nth_root(w, 2, k, tau)


def extend_analytic(
    f: Callable[[complex], complex],
    fprime: Callable[[complex], complex],
    w: DualComplex,
) -> DualComplex:
    """Unique holomorphic extension: f(z) + t f'(z) eps."""
    return DualComplex(f(w.sig), w.inf * fprime(w.sig))


def exp_s(w: DualComplex) -> DualComplex:
    """exp(z)(1 + t eps)."""
    e = cmath.exp(w.sig)
    return DualComplex(e, e * w.inf)


def log_s(w: DualComplex, tau: float = TAU) -> DualComplex:
    """Principal logarithm log(z) + (t/z) eps; requires w appreciable."""
    if abs(w.sig) <= tau:
        raise LogOfInfinitesimal("log of a non-appreciable number")
    return DualComplex(cmath.log(w.sig), w.inf / w.sig)


def sin_s(w: DualComplex) -> DualComplex:
    return DualComplex(cmath.sin(w.sig), cmath.cos(w.sig) * w.inf)


def cos_s(w: DualComplex) -> DualComplex:
    return DualComplex(cmath.cos(w.sig), -cmath.sin(w.sig) * w.inf)


# ---------------------------------------------------------------------------
# Conjugation and modulus
# ---------------------------------------------------------------------------


def conj(w: DualComplex) -> DualComplex:
    return w.conj()


def modulus(w: DualComplex, tau: float = TAU) -> DualReal:
    """|w| = |z| + Re(z* t)/|z| eps as an ordered dual real.

    The modulus of a nonzero infinitesimal is 0, but its infinitesimal
    part is undefined; that case raises ModulusOfInfinitesimal carrying
    the zero value.
    """
    r = abs(w.sig)
    if r <= tau:
        if abs(w.inf) > tau:
            raise ModulusOfInfinitesimal(
                "modulus of a nonzero infinitesimal: value is 0, eps-part undefined",
                value=DualReal(0.0, 0.0),
            )
        return DualReal(0.0, 0.0)
    return DualReal(r, (w.sig.conjugate() * w.inf).real / r)
