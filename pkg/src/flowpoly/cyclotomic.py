"""Exact arithmetic in Z[rho], rho a primitive p-th root of unity.

Elements are integer coordinate vectors over the basis 1, z, ..., z^(d-1)
of Z[z]/Phi_p(z), where Phi_p is the p-th cyclotomic polynomial and
d = deg Phi_p. Phi_p is computed recursively for every p >= 2 (composite p
included), by dividing z^p - 1 by the product of Phi_d over proper
divisors d of p. All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .polynomials import Poly


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return tuple(out)


def _poly_divmod_exact(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[int, ...]:
    """Divide integer polynomials, requiring a monic divisor and zero remainder."""
    assert den[-1] == 1, "divisor must be monic"
    num_l = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num_l[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num_l[i + j] -= c * d
    assert all(c == 0 for c in num_l[: len(den) - 1]), "division not exact"
    return tuple(q)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending degree, monic."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return (-1, 1)
    num = tuple([-1] + [0] * (n - 1) + [1])  # z^n - 1
    den = (1,)
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    return _poly_divmod_exact(num, den)


def _reduce_mod_phi(coeffs: list[int], phi: tuple[int, ...]) -> tuple[int, ...]:
    """Reduce a coefficient list modulo the monic polynomial phi."""
    deg = len(phi) - 1
    for i in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[i]
        if c:
            coeffs[i] = 0
            for j in range(deg):
                coeffs[i - deg + j] -= c * phi[j]
    out = coeffs[:deg]
    out += [0] * (deg - len(out))
    return tuple(out)


@dataclass(frozen=True)
class CyclotomicInt:
    """An element of Z[z]/Phi_p(z), in canonical reduced form."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        deg = len(cyclotomic_polynomial(self.p)) - 1
        if len(self.coeffs) != deg:
            raise ValueError(
                f"expected {deg} coordinates for p={self.p}, got {len(self.coeffs)}"
            )

    @classmethod
    def from_int(cls, p: int, value: int) -> "CyclotomicInt":
        deg = len(cyclotomic_polynomial(p)) - 1
        return cls(p, tuple([value] + [0] * (deg - 1)))

    @classmethod
    def zero(cls, p: int) -> "CyclotomicInt":
        return cls.from_int(p, 0)

    @classmethod
    def one(cls, p: int) -> "CyclotomicInt":
        return cls.from_int(p, 1)

    @classmethod
    def root_power(cls, p: int, k: int) -> "CyclotomicInt":
        """rho^k as a canonical element (k may be any integer)."""
        phi = cyclotomic_polynomial(p)
        k %= p
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        return cls(p, _reduce_mod_phi(coeffs, phi))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_int(self) -> int | None:
        """The rational-integer value, or None if not a rational integer."""
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0]
        return None

    def _check(self, other: "CyclotomicInt"):
        if self.p != other.p:
            raise ValueError("mixed moduli")

    def __add__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._check(other)
        return CyclotomicInt(
            self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.p, tuple(a * other for a in self.coeffs))
        self._check(other)
        phi = cyclotomic_polynomial(self.p)
        prod = list(_poly_mul(self.coeffs, other.coeffs))
        return CyclotomicInt(self.p, _reduce_mod_phi(prod, phi))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"CyclotomicInt(p={self.p}, {self.coeffs})"


def cyclotomic_eval(f: Poly, assignment: Mapping, p: int) -> CyclotomicInt:
    """Evaluate f at x_e = rho^(assignment[e]), exactly.

    Assignment values must lie in 1..p-1: these are exactly the points of
    the vanishing set of the per-variable ideal generators. Each monomial
    evaluates to a single power of rho, so the whole evaluation is one
    residue histogram followed by one reduction per residue.
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    for var, k in assignment.items():
        if not 1 <= k <= p - 1:
            raise ValueError(f"power for {var!r} must be in 1..{p - 1}, got {k}")
    residue_totals = [0] * p
    for mono, coeff in f.terms.items():
        m = 0
        for var, exp in mono:
            m += exp * assignment[var]
        residue_totals[m % p] += coeff
    result = CyclotomicInt.zero(p)
    for r, total in enumerate(residue_totals):
        if total:
            result = result + CyclotomicInt.root_power(p, r) * total
    return result
