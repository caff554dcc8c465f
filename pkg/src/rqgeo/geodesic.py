"""Oriented geodesics, RM points and winding intersection numbers.

Two independent algorithms compute the intersection number of a closed
geodesic on Y0(p) with the winding geodesic from 0 to infinity:

* intersect_winding_cycle sums sgn(a) over the forms in the proper
  Gamma0(p)-class of Q whose root geodesic separates 0 from infinity;
* intersect_winding_enum walks the Farey tessellation along one period
  of the closed geodesic and adds up signed crossings with translates
  of the imaginary axis.

Everything is exact; there is no floating point in any sign decision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .exact import INF, Mat2, QuadIrr, mobius
from .field import QuadForm, automorph, canonical_rep, reduce_form, _rho

__all__ = [
    "Geodesic",
    "ClosedGeodesic",
    "RmPointPair",
    "TwistedCycle",
    "InertPrime",
    "NonTransverse",
    "choose_r",
    "rm_point",
    "rm_point_pair",
    "straddle",
    "intersect_winding_cycle",
    "intersect_winding_enum",
    "twisted_cycle",
    "gamma0_automorph",
    "gamma0_equivalent",
]


class InertPrime(Exception):
    """The rational prime is inert in F; the whole series vanishes."""


class NonTransverse(Exception):
    """A geodesic endpoint sits exactly on the winding geodesic."""


class Geodesic:
    """Oriented geodesic from alpha to beta (boundary points)."""

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta):
        if alpha == beta:
            raise ValueError("degenerate geodesic")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def reversed(self):
        return Geodesic(self.beta, self.alpha)

    def __repr__(self):
        return "Geodesic(%r, %r)" % (self.alpha, self.beta)


def _boundary_sign(x):
    if x is INF:
        return None
    if isinstance(x, int):
        s = (x > 0) - (x < 0)
    elif isinstance(x, Fraction):
        s = (x > 0) - (x < 0)
    else:
        s = x.sign()
    if s == 0:
        raise NonTransverse("geodesic endpoint at 0")
    return s


def straddle(g):
    """Intersection of g with the winding geodesic from 0 to infinity.

    +1 if beta < 0 < alpha, -1 if alpha < 0 < beta, 0 otherwise.
    """
    sa = _boundary_sign(g.alpha)
    sb = _boundary_sign(g.beta)
    if sa is None or sb is None:
        return 0
    if sb < 0 < sa:
        return 1
    if sa < 0 < sb:
        return -1
    return 0


def gamma0_automorph(form, p):
    """Minimal power of the totally positive automorph lying in Gamma0(p)."""
    A = automorph(form)
    M = A
    for _ in range(3 * (p + 2)):
        if M.c % p == 0:
            return M
        M = M * A
    raise RuntimeError("automorph has no power in Gamma0(p)")


class ClosedGeodesic:
    """Closed geodesic on Y0(p) attached to an RM point.

    w and wsig are the two roots of `form`; gamma generates the proper
    stabilizer of the geodesic inside Gamma0(p).  The orientation runs
    from w to wsig.
    """

    __slots__ = ("w", "wsig", "form", "gamma", "p")

    def __init__(self, form, p, gamma=None, reverse=False):
        fp, content = form.primitive()
        if content != 1:
            form = fp
        if form.disc() <= 0 or math.isqrt(form.disc()) ** 2 == form.disc():
            raise ValueError("form must have positive nonsquare discriminant")
        plus, minus = form.plus_root(), form.minus_root()
        if gamma is None:
            gamma = gamma0_automorph(form, p)
        if reverse:
            plus, minus = minus, plus
            gamma = gamma.adjugate()
        object.__setattr__(self, "w", plus)
        object.__setattr__(self, "wsig", minus)
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "p", p)
        assert gamma.det == 1 and gamma.c % p == 0
        assert mobius(gamma, self.w) == self.w
        assert mobius(gamma, self.wsig) == self.wsig

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @property
    def orientation(self):
        """+1 when w is the plus root of form, -1 otherwise."""
        return 1 if self.w == self.form.plus_root() else -1

    def reversed(self):
        return ClosedGeodesic(self.form, self.p,
                              gamma=self.gamma.adjugate(),
                              reverse=(self.orientation == 1))

    def translate(self, g):
        """The geodesic g^{-1} . Q for g in Gamma0(p) (det 1)."""
        assert g.det == 1 and g.c % self.p == 0
        newform = self.form.apply(g)
        return ClosedGeodesic(newform, self.p,
                              reverse=(self.orientation == -1))

    def __repr__(self):
        return "ClosedGeodesic(form=%r, p=%d, orient=%+d)" % (
            self.form, self.p, self.orientation)


class RChoice(tuple):
    """Output of choose_r: (r, eps_r, N0)."""

    def __new__(cls, r, eps_r, N0):
        return tuple.__new__(cls, (r, eps_r, N0))

    @property
    def r(self):
        return self[0]

    @property
    def eps_r(self):
        return self[1]

    @property
    def N0(self):
        return self[2]


def choose_r(F, p):
    """Smallest positive r with r^2 = d_F mod 4p and r^2 > d_F.

    Raises InertPrime when d_F is not a square mod p.
    """
    d = F.d_F
    if p == 2 or p % 2 == 0:
        raise ValueError("p must be odd")
    if d % p == 0:
        raise ValueError("p ramifies in F")
    if pow(d, (p - 1) // 2, p) != 1:
        raise InertPrime("d_F = %d is a nonresidue mod %d" % (d, p))
    r = 1
    while True:
        if (r * r - d) % (4 * p) == 0 and r * r > d:
            N0 = (r * r - d) // 2
            eps_r = QuadIrr(-r, 1, 2, d)
            return RChoice(r, eps_r, N0)
        r += 1


def base_form(F, rc, sign=1):
    """The distinguished level-p form with root (r + sqrt(d_F))/N0."""
    r = sign * rc.r
    return QuadForm(rc.N0 // 2, -r, 1)


def rm_point(F, G, cls, p, rc, sign=1):
    """RM point of the given narrow class: a ClosedGeodesic whose form
    satisfies p | a and b = -r (mod 2p), with deterministic search order.
    """
    d = F.d_F
    r = sign * rc.r
    for k in _spiral():
        b = -r + 2 * p * k
        m = (b * b - d) // 4
        if m == 0:
            continue
        assert (b * b - d) % 4 == 0 and m % p == 0
        for a in _signed_divisors(m):
            if a % p:
                continue
            c = m // a
            f = QuadForm(a, b, c)
            if f.content() != 1:
                continue
            if G.classify(f) == cls:
                return ClosedGeodesic(f, p)
    raise RuntimeError("unreachable")


def _spiral():
    yield 0
    k = 1
    while k < 10000:
        yield k
        yield -k
        k += 1
    raise RuntimeError("rm point search exhausted")


def _signed_divisors(m):
    n = abs(m)
    ds = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            ds.append(i)
            if i * i != n:
                ds.append(n // i)
        i += 1
    ds.sort()
    for a in ds:
        yield a
        yield -a


class RmPointPair(tuple):
    def __new__(cls, class_index, r, point_plus, point_minus):
        return tuple.__new__(cls, (class_index, r, point_plus, point_minus))

    class_index = property(lambda s: s[0])
    r = property(lambda s: s[1])
    point_plus = property(lambda s: s[2])
    point_minus = property(lambda s: s[3])


def rm_point_pair(F, G, cls, p, rc):
    return RmPointPair(cls, rc.r,
                       rm_point(F, G, cls, p, rc, +1),
                       rm_point(F, G, cls, p, rc, -1))


class TwistedCycle(tuple):
    """Formal sum of closed geodesics with character coefficients."""

    def __new__(cls, terms):
        return tuple.__new__(cls, tuple(terms))

    @property
    def terms(self):
        return tuple(self)


def twisted_cycle(F, G, psi, p, rc):
    if not psi.totally_odd:
        raise ValueError("character is not totally odd")
    terms = []
    for cls in range(G.h):
        pair = rm_point_pair(F, G, cls, p, rc)
        coeff = psi(cls)
        terms.append((coeff, pair.point_plus))
        terms.append((coeff, pair.point_minus))
    return TwistedCycle(terms)


# ---------------------------------------------------------------------------
# algorithm 1: the form-cycle method


@lru_cache(maxsize=None)
def _straddle_forms(disc):
    """Primitive forms [a,b,c] of given disc with a*c < 0, keyed by the
    canonical representative of their proper class."""
    out = {}
    s = math.isqrt(disc)
    for b in range(-s, s + 1):
        if (b - disc) % 2:
            continue
        m = (b * b - disc) // 4    # negative: a*c < 0 automatic
        for a in _signed_divisors(m):
            c = m // a
            f = QuadForm(a, b, c)
            if f.content() != 1:
                continue
            out.setdefault(canonical_rep(f), []).append(f)
    return out


@lru_cache(maxsize=None)
def _cycle_data(key):
    """For a canonical reduced form, the full rho cycle together with the
    transition matrix from key to each member."""
    mats = {key: Mat2.identity()}
    order = [key]
    cur, acc = key, Mat2.identity()
    while True:
        cur, step = _rho(cur)
        acc = acc * step
        if cur == key:
            break
        if cur not in mats:
            mats[cur] = acc
            order.append(cur)
    return mats


def _gamma0_powers(form, p):
    """Automorph powers of `form` reduced mod p, one full period."""
    A = automorph(form)
    Ap = A.mod(p)
    out = [(1 % p, 0, 0, 1 % p)]
    cur = Ap
    for _ in range(3 * (p + 2)):
        if cur in (out[0], tuple((-x) % p for x in out[0])):
            return out
        out.append(cur)
        cur = ((cur[0] * Ap[0] + cur[1] * Ap[2]) % p,
               (cur[0] * Ap[1] + cur[1] * Ap[3]) % p,
               (cur[2] * Ap[0] + cur[3] * Ap[2]) % p,
               (cur[2] * Ap[1] + cur[3] * Ap[3]) % p)
    raise RuntimeError("automorph period mod p not found")


def gamma0_equivalent(f, g, p):
    """Whether f and g are properly equivalent under Gamma0(p)."""
    if f.disc() != g.disc():
        return False
    rf, mf = reduce_form(f)
    key = canonical_rep(f)
    if key != canonical_rep(g):
        return False
    cyc = _cycle_data(key)
    rg, mg = reduce_form(g)
    m = mf * cyc[rf].adjugate() * cyc[rg] * mg.adjugate()
    assert f.apply(m) == g
    mc = m.mod(p)
    for (pa, pb, pc, pd) in _gamma0_powers(f, p):
        if (pc * mc[0] + pd * mc[2]) % p == 0:
            return True
    return False


def intersect_winding_cycle(Q):
    """Winding intersection number by the form-cycle method."""
    disc = Q.form.disc()
    buckets = _straddle_forms(disc)
    key = canonical_rep(Q.form)
    total = 0
    cands = buckets.get(key, ())
    if not cands:
        return 0
    rf, mf = reduce_form(Q.form)
    cyc = _cycle_data(key)
    base = mf * cyc[rf].adjugate()      # Q.form.apply(base) = key-member path
    powers = _gamma0_powers(Q.form, Q.p)
    p = Q.p
    for g in cands:
        rg, mg = reduce_form(g)
        m = base * cyc[rg] * mg.adjugate()
        mc = m.mod(p)
        for (pa, pb, pc, pd) in powers:
            if (pc * mc[0] + pd * mc[2]) % p == 0:
                total += 1 if g.a > 0 else -1
                break
    return Q.orientation * total


# ---------------------------------------------------------------------------
# algorithm 2: Farey tessellation walk along one period of the geodesic
#
# Translates of the imaginary axis by Gamma0(p) are exactly the Farey
# edges (u, v) (|cross(u, v)| = 1) for which exactly one endpoint has
# denominator divisible by p (infinity = 1/0 counts as divisible).  The
# walk visits, in order, every Farey edge crossed by the geodesic and
# keeps those whose crossing lies on the fundamental arc from the apex
# tau0 (inclusive) to gamma.tau0 (exclusive).


def _cmp_frac_quad(pn, pd, q):
    """sign(pn/pd - q) for pd > 0 and q a QuadIrr."""
    X = pn * q.w - pd * q.u
    Y = pd * q.v
    # sign of X - Y*sqrt(D)
    if Y == 0:
        return (X > 0) - (X < 0)
    if X <= 0 and Y >= 0:
        return -1
    if X >= 0 and Y <= 0:
        return 1
    d = X * X - Y * Y * q.D
    s = (d > 0) - (d < 0)
    return s if X > 0 else -s


def _inside(pt, lo, hi):
    """Whether the boundary point pt = (num, den) lies in (lo, hi)."""
    pn, pd = pt
    if pd == 0:
        return False
    return _cmp_frac_quad(pn, pd, lo) > 0 and _cmp_frac_quad(pn, pd, hi) < 0


def _crossing_x(edge, m1, rho2):
    """x-coordinate of the crossing of a Farey edge with the circle of
    center m1 and squared radius rho2 (both Fractions)."""
    (un, ud), (vn, vd) = edge
    if ud == 0 or vd == 0:
        n, d = (vn, vd) if ud == 0 else (un, ud)
        return Fraction(n, d)
    u = Fraction(un, ud)
    v = Fraction(vn, vd)
    m2 = (u + v) / 2
    r2 = ((u - v) / 2) ** 2
    return (rho2 - r2 + m2 * m2 - m1 * m1) / (2 * (m2 - m1))


def _proj_eq(a, b):
    return a[0] * b[1] - a[1] * b[0] == 0


def _edge_sign(edge, Q, p):
    """straddle of the pull-back of Q through the edge's coset rep, or 0
    when the edge is not a Gamma0(p) translate of the imaginary axis."""
    (un, ud), (vn, vd) = edge
    up, vp = ud % p == 0, vd % p == 0
    if up == vp:
        assert not (up and vp)
        return 0
    if vp:
        (un, ud), (vn, vd) = (vn, vd), (un, ud)
    if un * vd - vn * ud == -1:
        vn, vd = -vn, -vd
    delta = Mat2(un, vn, ud, vd)
    assert delta.det == 1 and delta.c % p == 0
    inv = delta.adjugate()
    return straddle(Geodesic(mobius(inv, Q.w), mobius(inv, Q.wsig)))


def intersect_winding_enum(Q, basepoint_shift=None):
    """Winding intersection number by direct enumeration of crossings.

    basepoint_shift, if given, is a Fraction added to the x-coordinate
    of the default base point (the apex); the result must not depend on
    it, which the tests exercise.
    """
    f = Q.form
    a, b, c = f
    disc = f.disc()
    m1 = Fraction(-b, 2 * a)
    rho2 = Fraction(disc, 4 * a * a)
    w_lo, w_hi = (Q.w, Q.wsig) if Q.w < Q.wsig else (Q.wsig, Q.w)
    # base point on the geodesic: apex by default, shifted for testing
    if basepoint_shift is None:
        x0, y0sq = m1, rho2
    else:
        x0 = m1 + basepoint_shift
        y0sq = rho2 - basepoint_shift * basepoint_shift
        assert y0sq > 0, "base point off the geodesic"
    x1, _ = _apply_to_circle_point(Q.gamma, x0, y0sq)
    if x0 == x1:
        raise RuntimeError("degenerate fundamental arc")
    # the base-point end of the arc is included, the translated end not
    if x0 < x1:
        lo, hi, lo_inc, hi_inc = x0, x1, True, False
    else:
        lo, hi, lo_inc, hi_inc = x1, x0, False, True
    edge, tprev = _start_edge(Q, w_lo, w_hi, m1, rho2, hi)
    total = 0
    for _ in range(10 ** 8):
        # step across the current edge into the next Farey triangle
        u, v = edge
        t = (u[0] + v[0], u[1] + v[1])
        if _proj_eq(t, tprev):
            t = (u[0] - v[0], u[1] - v[1])
        t = _norm_pt(t)
        e1, e2 = (u, t), (t, v)
        nxt = e1 if _inside(u, w_lo, w_hi) != _inside(t, w_lo, w_hi) else e2
        tprev = v if nxt is e1 else u
        edge = nxt
        xstar = _crossing_x(edge, m1, rho2)
        if xstar < lo or (xstar == lo and not lo_inc):
            return total
        if (lo < xstar < hi) or (xstar == lo and lo_inc) \
                or (xstar == hi and hi_inc):
            total += _edge_sign(edge, Q, Q.p)
    raise RuntimeError("walk did not terminate")


def _norm_pt(t):
    n, d = t
    g = math.gcd(abs(n), abs(d))
    if g:
        n, d = n // g, d // g
    if d < 0:
        n, d = -n, -d
    return (n, d)


def _apply_to_circle_point(g, x, ysq):
    """Image of the hyperbolic point (x, y) with y^2 = ysq under g,
    returned as (x', y'^2); everything stays rational."""
    A, B, C, D = g.a, g.b, g.c, g.d
    N = (C * x + D) ** 2 + C * C * ysq
    assert N != 0
    xp = ((A * x + B) * (C * x + D) + A * C * ysq) / N
    ypsq = ysq * g.det ** 2 / N ** 2
    return xp, ypsq


def _start_edge(Q, w_lo, w_hi, m1, rho2, hi):
    """A Farey edge crossing the geodesic strictly to the right of the
    arc window, with the walk oriented toward decreasing x.

    Returns (edge, previous_third) priming the triangle walk.
    """
    # continued fraction convergents of w_hi straddle it, so consecutive
    # convergents eventually give crossing edges arbitrarily close to it
    x = w_hi
    h0, k0 = 1, 0
    a0 = x.floor()
    h1, k1 = a0, 1
    x = 1 / (x - a0)
    while True:
        u, v = _norm_pt((h0, k0)), _norm_pt((h1, k1))
        if _inside(u, w_lo, w_hi) != _inside(v, w_lo, w_hi):
            xs0 = _crossing_x((u, v), m1, rho2)
            if xs0 > hi:
                break
        an = x.floor()
        h0, k0, h1, k1 = h1, k1, an * h1 + h0, an * k1 + k0
        x = 1 / (x - an)
    # choose the previous-third vertex so the first step decreases x
    edge = (u, v)
    thirds = ((u[0] + v[0], u[1] + v[1]), (u[0] - v[0], u[1] - v[1]))
    for i, tcand in enumerate(thirds):
        t = _norm_pt(tcand)
        nxt = (u, t) if _inside(u, w_lo, w_hi) != _inside(t, w_lo, w_hi) \
            else (t, v)
        if _crossing_x(nxt, m1, rho2) < xs0:
            return edge, _norm_pt(thirds[1 - i])
    raise RuntimeError("could not orient the walk")
