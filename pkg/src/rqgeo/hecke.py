"""Hecke correspondences at prime level.

Coset representatives for the determinant-n Hecke operator on Gamma0(p),
their partition into double cosets under the stabilizer of a closed
geodesic, and the pairing of a Hecke translate against a twisted cycle.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .exact import Mat2, mobius
from .geodesic import ClosedGeodesic, intersect_winding_cycle

__all__ = [
    "right_cosets",
    "double_cosets",
    "hecke_translate",
    "pair_with_twisted_cycle",
    "sigma1",
]


def sigma1(n, p=None):
    """Sum of positive divisors of n; with p given, p-deprived version
    (only divisors coprime to p are counted)."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(d for d in range(1, n + 1)
               if n % d == 0 and (p is None or d % p))


def _sl2_mod_gamma0(p):
    reps = [Mat2(1, 0, j, 1) for j in range(p)]
    reps.append(Mat2(0, -1, 1, 0))
    return reps


def _same_right_coset(y, z, n, p):
    """Whether y Gamma0(p) = z Gamma0(p) for determinant-n matrices."""
    m = y.adjugate() * z
    if any(e % n for e in m.entries()):
        return False
    return (m.c // n) % p == 0


@lru_cache(maxsize=None)
def right_cosets(n, p):
    """Representatives of the right Gamma0(p)-cosets of determinant-n
    matrices with lower-left divisible by p and upper-left prime to p.

    There are sigma1(n) of them when gcd(n, p) = 1; for p | n the
    membership constraints force p | d in every representative.
    """
    if n < 1:
        raise ValueError("n must be positive")
    sl2 = _sl2_mod_gamma0(p)
    reps = []
    for a in range(1, n + 1):
        if n % a:
            continue
        d = n // a
        # b runs mod n, not mod d: Gamma0(p)-cosets are finer than the
        # SL2 column-Hermite classes; duplicates are filtered below
        for b in range(n):
            h = Mat2(a, b, 0, d)
            for s in sl2:
                y = h * s
                if y.c % p or math.gcd(y.a, p) != 1:
                    continue
                if not any(_same_right_coset(y, z, n, p) for z in reps):
                    reps.append(y)
    return tuple(reps)


def double_cosets(Q, n):
    """One coset representative per orbit of the stabilizer of Q acting
    on the right cosets by left multiplication."""
    reps = right_cosets(n, Q.p)
    k = len(reps)
    perm = [None] * k
    for i, y in enumerate(reps):
        gy = Q.gamma * y
        for j, z in enumerate(reps):
            if _same_right_coset(gy, z, n, Q.p):
                perm[i] = j
                break
        else:
            raise RuntimeError("stabilizer does not permute the cosets")
    seen = [False] * k
    out = []
    for i in range(k):
        if seen[i]:
            continue
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
        out.append(reps[i])
    return tuple(out)


def _dual_stabilizer(Q, delta, n, expect):
    """Stabilizer of the translated geodesic computed the slow way: the
    minimal power of Q.gamma whose delta-conjugate is integral and lies
    in Gamma0(p).  Must reproduce the automorph-based generator."""
    adj = delta.adjugate()
    M = Q.gamma
    for _ in range(10 ** 6):
        B = adj * M * delta
        if not any(e % n for e in B.entries()):
            cand = Mat2(B.a // n, B.b // n, B.c // n, B.d // n)
            if cand.c % Q.p == 0:
                return cand
        M = M * Q.gamma
    raise RuntimeError("conjugated stabilizer not found")


def hecke_translate(Q, n, check_stabilizer=True):
    """The closed geodesics delta^{-1} Q over double coset reps delta.

    Each inherits the orientation pushed forward from Q; the stabilizer
    is computed both from the automorph of the pulled-back form and by
    conjugating Q's own stabilizer, and the two are asserted equal.
    """
    out = []
    for delta in double_cosets(Q, n):
        g = Q.form.apply(delta)
        gp, _ = g.primitive()
        w_new = mobius(delta.adjugate(), Q.w)
        newQ = ClosedGeodesic(gp, Q.p, reverse=(w_new != gp.plus_root()))
        assert newQ.w == w_new
        assert newQ.wsig == mobius(delta.adjugate(), Q.wsig)
        if check_stabilizer:
            dual = _dual_stabilizer(Q, delta, n, newQ.gamma)
            assert dual == newQ.gamma, (delta, dual, newQ.gamma)
        out.append(newQ)
    return tuple(out)


def pair_with_twisted_cycle(cycle, n, algorithm=intersect_winding_cycle):
    """<T_n cycle, winding geodesic>: character-weighted sum of winding
    intersection numbers over all Hecke translates."""
    total = 0
    for coeff, Q in cycle.terms:
        s = 0
        for t in hecke_translate(Q, n, check_stabilizer=False):
            s += algorithm(t)
        total += coeff * s
    return total
