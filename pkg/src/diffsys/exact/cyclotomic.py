"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) reduced modulo
the N-th cyclotomic polynomial, which makes the zero test exact.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

from ..errors import ResourceError
from .formal import as_fraction
from .linalg import lcm

MAX_ORDER = 2**20


def _factorize(n: int) -> list[int]:
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return primes


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // lead
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num), "inexact polynomial division"
    return out


def _substitute_power(poly: list[int], k: int) -> list[int]:
    out = [0] * ((len(poly) - 1) * k + 1)
    for i, c in enumerate(poly):
        out[i * k] = c
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending degree."""
    if n == 1:
        return (-1, 1)
    primes = _factorize(n)
    rad = 1
    poly = [-1, 1]
    for p in primes:
        # Phi_{mp}(x) = Phi_m(x^p) / Phi_m(x) for p not dividing m
        poly = _poly_divexact(_substitute_power(poly, p), poly)
        rad *= p
    if n != rad:
        poly = _substitute_power(poly, n // rad)
    return tuple(poly)


def _check_order(n: int, cap: int = MAX_ORDER):
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    if n > cap:
        raise ResourceError(f"cyclotomic order {n} exceeds the cap {cap}")


def _reduce(coeffs: dict[int, Fraction], n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    dense = [Fraction(0)] * max(n, deg)
    for e, c in coeffs.items():
        dense[e % n] += c
    # phi is monic; cancel from the top down
    for i in range(len(dense) - 1, deg - 1, -1):
        c = dense[i]
        if c:
            base = i - deg
            for j, a in enumerate(phi):
                if a:
                    dense[base + j] -= c * a
    return tuple(dense[:deg])


class CyclotomicNumber:
    """An element of Q(zeta_order)."""

    __slots__ = ("order", "coeffs")
    __hash__ = None

    def __init__(self, order: int, coeffs=None, *, _reduced: tuple | None = None):
        _check_order(order)
        self.order = order
        if _reduced is not None:
            self.coeffs = _reduced
        else:
            data = {}
            for e, c in (coeffs or {}).items():
                data[e] = data.get(e, 0) + as_fraction(c)
            self.coeffs = _reduce(data, order)

    @classmethod
    def rational(cls, q) -> "CyclotomicNumber":
        return cls(1, {0: as_fraction(q)})

    @classmethod
    def root(cls, n: int, k: int = 1) -> "CyclotomicNumber":
        """zeta_n ** k."""
        return cls(n, {k % n: 1})

    @classmethod
    def phase(cls, rho) -> "CyclotomicNumber":
        """exp(2 pi i rho) for rational rho."""
        rho = as_fraction(rho) % 1
        return cls.root(rho.denominator, rho.numerator)

    def _as_dict(self) -> dict[int, Fraction]:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def embed(self, n: int) -> dict[int, Fraction]:
        if n % self.order:
            raise ValueError(f"cannot embed order {self.order} into order {n}")
        step = n // self.order
        return {i * step: c for i, c in self._as_dict().items()}

    def _common(self, other: "CyclotomicNumber"):
        n = lcm(self.order, other.order)
        _check_order(n)
        return n, self.embed(n), other.embed(n)

    @staticmethod
    def _lift(other):
        if isinstance(other, CyclotomicNumber):
            return other
        return CyclotomicNumber.rational(as_fraction(other))

    def __add__(self, other):
        other = self._lift(other)
        n, a, b = self._common(other)
        for e, c in b.items():
            a[e] = a.get(e, 0) + c
        return CyclotomicNumber(n, a)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, _reduced=tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        n, a, b = self._common(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                k = (e1 + e2) % n
                out[k] = out.get(k, 0) + c1 * c2
        return CyclotomicNumber(n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = CyclotomicNumber.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) or isinstance(other, CyclotomicNumber):
            return (self - other).is_zero()
        return NotImplemented

    def conjugate(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.order, {(-e) % self.order: c for e, c in self._as_dict().items()})

    def real_part(self) -> "CyclotomicNumber":
        return (self + self.conjugate()) * Fraction(1, 2)

    def as_rational(self):
        """The value as a Fraction when it lies in Q, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def minimal(self) -> "CyclotomicNumber":
        """Same value re-expressed at the smallest order dividing ``order`` that holds it."""
        for d in sorted(_divisors(self.order)):
            if d == self.order:
                break
            cand = _restrict(self, d)
            if cand is not None:
                return cand
        return self

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.order)
        return complex(sum(float(c) * z**i for i, c in enumerate(self.coeffs)))

    def __repr__(self):
        return f"CyclotomicNumber({self.order}, {[str(c) for c in self.coeffs]})"


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i * i != n:
                out.append(n // i)
        i += 1
    return out


def _restrict(x: CyclotomicNumber, d: int):
    """x as an element of Q(zeta_d), or None if it does not lie there."""
    from .linalg import solve_left

    n = x.order
    phi_d = len(cyclotomic_polynomial(d)) - 1
    images = []
    for i in range(phi_d):
        images.append(list(CyclotomicNumber(n, {i * (n // d): 1}).coeffs))
    sol = solve_left(images, list(x.coeffs))
    if sol is None:
        return None
    return CyclotomicNumber(d, dict(enumerate(sol)))


def cyclotomic_arith(a: CyclotomicNumber, b: CyclotomicNumber | None, op: str):
    """Dispatch ``add``/``mul``/``zeroTest``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op in ("zeroTest", "zero_test"):
        return a.is_zero()
    raise ValueError(f"unknown operation {op!r}")


def primitive_phase(rho) -> Fraction:
    """Reduce a rational phase into [0, 1)."""
    return as_fraction(rho) % 1


__all__ = [
    "CyclotomicNumber",
    "MAX_ORDER",
    "cyclotomic_arith",
    "cyclotomic_polynomial",
    "primitive_phase",
]
