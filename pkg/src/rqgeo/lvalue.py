"""The constant term L^(p)(psi, 0), computed by two independent routes.

The main route evaluates partial zeta functions at s = 0 through the
minus continued fraction cycle of each narrow class (an exact rational)
and sums them against the character.  For genus characters the value
factors as a product of two Dirichlet L-values at 0, which serves as an
independent oracle via finite generalized-Bernoulli sums.
"""

from __future__ import annotations

import math
from fractions import Fraction

from sympy.functions.combinatorial.numbers import kronecker_symbol

from .field import class_of_ideal

__all__ = [
    "LValue",
    "NotApplicable",
    "minus_cf_cycle",
    "partial_zeta_values",
    "L_value_zagier",
    "L_value_genus_oracle",
    "dirichlet_L0",
    "euler_factor",
    "constant_term",
    "zeta_F_0_numeric",
]


class NotApplicable(Exception):
    """The character is not a genus character; the oracle does not apply."""


class LValue:
    """Constant term of the diagonal restriction.

    value = euler_factor_p * raw_L where raw_L = L(psi, 0).
    """

    __slots__ = ("value", "euler_factor_p", "raw_L")

    def __init__(self, value, euler_factor_p, raw_L):
        self.value = value
        self.euler_factor_p = euler_factor_p
        self.raw_L = raw_L

    def __repr__(self):
        return "LValue(value=%r, euler=%r, raw=%r)" % (
            self.value, self.euler_factor_p, self.raw_L)


def _ceil(w):
    return -((-w).floor())


def minus_cf_cycle(w):
    """Digits of the purely periodic minus continued fraction cycle
    entered by the quadratic irrational w (b_k >= 2 on the cycle)."""
    seen = {}
    digits = []
    for _ in range(10 ** 6):
        if w in seen:
            return tuple(digits[seen[w]:])
        seen[w] = len(digits)
        b = _ceil(w)
        digits.append(b)
        w = (b - w).inverse()
    raise RuntimeError("minus continued fraction did not become periodic")


def partial_zeta_values(F, G):
    """zeta(A_i, 0) for each narrow class, as exact rationals.

    Zagier's formula: the value is (1/12) * sum(b_k - 3) over the minus
    continued fraction cycle attached to the class; the cycle is reached
    from the larger root of any representative form with a > 0.
    """
    out = []
    for i in range(G.h):
        f = G.positive_rep(i)
        cyc = minus_cf_cycle(f.plus_root())
        out.append(Fraction(sum(cyc) - 3 * len(cyc), 12))
    return tuple(out)


def L_value_zagier(F, G, psi):
    """L(psi, 0) as the character-weighted sum of partial zeta values.

    Exact rational for order <= 2 characters, complex otherwise.
    """
    zetas = partial_zeta_values(F, G)
    vals = psi.values
    if all(isinstance(v, int) for v in vals):
        return sum((Fraction(0),) + tuple(v * z for v, z in zip(vals, zetas)))
    return sum(v * complex(z) for v, z in zip(vals, zetas))


def _is_fundamental(d):
    if d == 1:
        return True
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n):
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return n != 0


def dirichlet_L0(d):
    """L(chi_d, 0) for a fundamental discriminant d, as an exact rational.

    Zero for d > 0 (even character); -B_{1,chi} for d < 0.
    """
    if not _is_fundamental(d):
        raise ValueError("%d is not a fundamental discriminant" % d)
    if d > 0:
        return Fraction(0)
    m = abs(d)
    return Fraction(-sum(int(kronecker_symbol(d, a)) * a for a in range(1, m)), m)


def L_value_genus_oracle(F, G, psi):
    """Genus-character factorization oracle: L(psi, 0) = L(chi_d1, 0) *
    L(chi_d2, 0) for the splitting d_F = d1 * d2 into two negative
    fundamental discriminants.  Only valid for odd 2-torsion psi."""
    if psi.order > 2 or not psi.totally_odd:
        raise NotApplicable("not an odd genus character")
    d = F.d_F
    pairs = []
    for d1 in range(-1, -d - 1, -1):
        if d % d1:
            continue
        d2 = d // d1
        if d2 >= d1 and _is_fundamental(d1) and _is_fundamental(d2):
            pairs.append((d1, d2))
    if len(pairs) != 1:
        raise NotApplicable("no unique negative fundamental splitting of %d" % d)
    d1, d2 = pairs[0]
    return dirichlet_L0(d1) * dirichlet_L0(d2)


def euler_factor(F, G, psi, p, r):
    """(1 - psi(P)) * (1 - psi(P^sigma)) for the degree-one primes P,
    P^sigma over the split prime p, located via the ideal dictionary."""
    d = F.d_F
    if (r * r - d) % (4 * p):
        raise ValueError("r is not a square root of d_F mod 4p")
    cls_p = class_of_ideal(G, (p, r))
    cls_ps = class_of_ideal(G, (p, -r))
    return (1 - psi(cls_p)) * (1 - psi(cls_ps))


def constant_term(F, G, psi, p, r):
    """Assemble L^(p)(psi, 0) = euler_factor * L(psi, 0), cross-checked
    against the genus oracle whenever it applies."""
    if not psi.totally_odd:
        raise ValueError("character is not totally odd")
    raw = L_value_zagier(F, G, psi)
    try:
        oracle = L_value_genus_oracle(F, G, psi)
    except NotApplicable:
        pass
    else:
        assert raw == oracle, (raw, oracle)
    e = euler_factor(F, G, psi, p, r)
    return LValue(e * raw, e, raw)


def zeta_F_0_numeric(d):
    """Numeric oracle for zeta_F(0) through the factorization
    zeta_F = zeta * L(chi_d): Hurwitz-zeta evaluation at s = 0."""
    import mpmath

    L = mpmath.mpf(0)
    for a in range(1, d):
        ch = int(kronecker_symbol(d, a))
        if ch:
            L += ch * mpmath.zeta(0, mpmath.mpf(a) / d)
    return float(mpmath.zeta(0) * L)
