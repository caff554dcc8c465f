"""Assemble the diagonal-restriction q-expansion and check modularity.

The q-series is weight 2 on Gamma0(p): constant term L^(p)(psi, 0) from
the lvalue module, higher coefficients from winding intersection numbers
of Hecke-translated twisted cycles.  For genus-zero levels the space of
such forms is one-dimensional and the whole series is pinned by a single
proportionality; for p = 11 it is two-dimensional and the cusp direction
is spanned by an eta product.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import QuadIrr
from .geodesic import InertPrime, RChoice, choose_r, twisted_cycle
from .geodesic import intersect_winding_cycle, intersect_winding_enum
from .hecke import pair_with_twisted_cycle, sigma1

__all__ = [
    "QSeries",
    "AlgorithmMismatch",
    "GENUS_ZERO_LEVELS",
    "sigma1_p",
    "diagonal_restriction",
    "eta_product_coeffs",
    "modularity_check",
]

GENUS_ZERO_LEVELS = (2, 3, 5, 7, 13)

# The raw pairing counts every crossing once for each of the two square
# roots +-r, which trace out the same locus; the classical factor -4
# applies to the halved pairing.  Pinned end to end by the genus-zero
# proportionality law; see modularity_check.
PAIRING_FACTOR = -4


class AlgorithmMismatch(Exception):
    """The two intersection algorithms disagreed (should never happen)."""


class QSeries:
    """Truncated q-expansion with exact coefficients.

    coeffs maps n = 1..N to the coefficient of q^n; metadata records
    (d_F, p, r, psi exponents, kappa = 2, sign convention).
    """

    __slots__ = ("constant", "coeffs", "metadata", "inert")

    def __init__(self, constant, coeffs, metadata, inert=False):
        self.constant = constant
        self.coeffs = dict(coeffs)
        self.metadata = dict(metadata)
        self.inert = inert

    @property
    def N(self):
        return max(self.coeffs) if self.coeffs else 0

    def is_zero(self):
        return self.constant == 0 and all(v == 0 for v in self.coeffs.values())

    def __eq__(self, other):
        return (isinstance(other, QSeries)
                and self.constant == other.constant
                and self.coeffs == other.coeffs)

    def __repr__(self):
        head = ", ".join("%s" % (self.coeffs[n],) for n in sorted(self.coeffs)[:6])
        return "QSeries(constant=%s, coeffs=[%s, ...], p=%s)" % (
            self.constant, head, self.metadata.get("p"))


def sigma1_p(n, p):
    """Sum of divisors of n coprime to p."""
    return sigma1(n, p)


def _resolve_r(F, p, r):
    if r is None:
        return choose_r(F, p)
    d = F.d_F
    if (r * r - d) % (4 * p) or r * r <= d:
        raise ValueError("invalid square root r = %d of d_F mod 4p" % r)
    return RChoice(r, QuadIrr(-r, 1, 2, d), (r * r - d) // 2)


def _coefficient(pairing):
    if isinstance(pairing, complex):
        return PAIRING_FACTOR * (pairing / 2)
    half, rem = divmod(pairing, 2)
    assert rem == 0, "pairing is odd: %r" % (pairing,)
    return PAIRING_FACTOR * half


def diagonal_restriction(F, G, psi, p, N=30, r=None, algorithm="cycle"):
    """q-expansion of the diagonal restriction of the p-stabilized
    Eisenstein series attached to psi, truncated at q^N.

    algorithm is "cycle", "enum" or "both"; "both" recomputes each
    pairing with the independent enumeration and raises
    AlgorithmMismatch on any disagreement.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if not psi.totally_odd:
        raise ValueError("character is not totally odd")
    meta = {"d_F": F.d_F, "p": p, "r": None, "psi": psi.exponents,
            "kappa": 2, "pairing_factor": PAIRING_FACTOR}
    try:
        rc = _resolve_r(F, p, r)
    except InertPrime:
        return QSeries(0, {n: 0 for n in range(1, N + 1)}, meta, inert=True)
    meta["r"] = rc.r
    from .lvalue import constant_term
    lv = constant_term(F, G, psi, p, rc.r)
    cycle = twisted_cycle(F, G, psi, p, rc)
    coeffs = {}
    for n in range(1, N + 1):
        if algorithm in ("cycle", "both"):
            pairing = pair_with_twisted_cycle(cycle, n, algorithm=intersect_winding_cycle)
        else:
            pairing = pair_with_twisted_cycle(cycle, n, algorithm=intersect_winding_enum)
        if algorithm == "both":
            other = pair_with_twisted_cycle(cycle, n, algorithm=intersect_winding_enum)
            if other != pairing:
                raise AlgorithmMismatch("n=%d: cycle=%r enum=%r" % (n, pairing, other))
        coeffs[n] = _coefficient(pairing)
    return QSeries(lv.value, coeffs, meta)


def eta_product_coeffs(N, m=11):
    """Coefficients 1..N of q prod (1-q^k)^2 (1-q^{mk})^2, the weight-2
    cusp form generator for Gamma0(11) when m = 11."""
    poly = [0] * N
    if N >= 1:
        poly[0] = 1
    for k in range(1, N):
        for j in (k, k, m * k, m * k):
            if j >= N:
                continue
            for i in range(N - 1, j - 1, -1):
                poly[i] -= poly[i - j]
    return {n: poly[n - 1] for n in range(1, N + 1)}


class ModularityReport:
    __slots__ = ("passed", "mode", "first_fail", "message")

    def __init__(self, passed, mode, first_fail=None, message=""):
        self.passed = passed
        self.mode = mode
        self.first_fail = first_fail
        self.message = message

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return "ModularityReport(passed=%r, mode=%r, first_fail=%r)" % (
            self.passed, self.mode, self.first_fail)


def modularity_check(S):
    """Verify that S lies in M_2(Gamma0(p)).

    Genus-zero p: the space is spanned by the Eisenstein series with
    constant term (p-1)/24 and coefficients sigma1_p(n), so the whole
    series must be proportional to it.  p = 11: solve for the Eisenstein
    and eta-product components from (constant, a_1) and check the rest.
    """
    p = S.metadata["p"]
    N = S.N
    if S.is_zero():
        return ModularityReport(True, "zero")
    if p in GENUS_ZERO_LEVELS:
        a1 = S.coeffs[1]
        if S.constant * Fraction(24, p - 1) != a1:
            return ModularityReport(False, "genus0", 0,
                                    "constant term out of proportion")
        for n in range(1, N + 1):
            if S.coeffs[n] != a1 * sigma1_p(n, p):
                return ModularityReport(False, "genus0", n,
                                        "coefficient %d out of proportion" % n)
        return ModularityReport(True, "genus0")
    if p == 11:
        if N < 4:
            raise ValueError("p = 11 check needs N >= 4")
        eta = eta_product_coeffs(N)
        alpha = S.constant * Fraction(24, 10)
        beta = S.coeffs[1] - alpha
        for n in range(2, N + 1):
            if S.coeffs[n] != alpha * sigma1_p(n, 11) + beta * eta[n]:
                return ModularityReport(False, "dim2", n,
                                        "coefficient %d off the 2-dim space" % n)
        return ModularityReport(True, "dim2")
    raise ValueError("no modularity model for p = %d" % p)
