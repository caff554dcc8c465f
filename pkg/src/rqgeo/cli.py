"""Command-line interface: JSON/CSV reports, caching, batch verification.

Subcommands: field, classgroup, chars, rmpoints, intersect, series,
verify, verify-analytic.  Exit codes: 0 success (including inert primes,
which yield a structured zero series), 2 verification mismatch, 3 domain
errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction

from .exact import QuadIrr
from .field import (
    all_characters,
    build_field,
    narrow_class_group,
    odd_characters,
    pell_plus,
)
from .geodesic import (
    InertPrime,
    choose_r,
    intersect_winding_cycle,
    intersect_winding_enum,
    rm_point_pair,
    twisted_cycle,
)
from .hecke import hecke_translate, pair_with_twisted_cycle, right_cosets, sigma1
from .series import AlgorithmMismatch, diagonal_restriction, modularity_check

__all__ = ["main", "run"]

SCHEMA_VERSION = 1
CACHE_ENV = "RQGEO_CACHE_DIR"

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_DOMAIN = 3


class DomainFailure(Exception):
    pass


class VerificationFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# serialization


def _jsonable(v):
    if isinstance(v, Fraction):
        return {"num": v.numerator, "den": v.denominator}
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, QuadIrr):
        return {"u": v.u, "v": v.v, "w": v.w, "D": v.D}
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _flatten(prefix, v, rows):
    if isinstance(v, dict):
        for k, x in v.items():
            _flatten("%s.%s" % (prefix, k) if prefix else str(k), x, rows)
    elif isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v):
        for i, x in enumerate(v):
            _flatten("%s[%d]" % (prefix, i), x, rows)
    else:
        rows.append((prefix, v))


def emit(report, fmt, stream=None):
    stream = stream or sys.stdout
    payload = _jsonable(report)
    if fmt == "json":
        json.dump(payload, stream, indent=2, sort_keys=True)
        stream.write("\n")
    elif fmt == "csv":
        rows = []
        _flatten("", payload, rows)
        w = csv.writer(stream)
        w.writerow(("key", "value"))
        for k, v in rows:
            w.writerow((k, json.dumps(v) if isinstance(v, list) else v))
    else:
        rows = []
        _flatten("", payload, rows)
        for k, v in rows:
            stream.write("%-28s %s\n" % (k, v))


# ---------------------------------------------------------------------------
# cache


def cache_dir(args):
    if args.cache_dir:
        return args.cache_dir
    return os.environ.get(
        CACHE_ENV, os.path.join(os.path.expanduser("~"), ".rqgeo"))


def _cache_load(args, key):
    if args.no_cache:
        return None
    path = os.path.join(cache_dir(args), key + ".json")
    if not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            blob = json.load(fh)
        if blob.get("version") != SCHEMA_VERSION:
            return None
        return blob["data"]
    except (ValueError, KeyError, OSError) as exc:
        # corruption is never fatal: warn and recompute
        print("warning: ignoring corrupt cache file %s (%s)" % (path, exc),
              file=sys.stderr)
        return None


def _cache_store(args, key, data):
    if args.no_cache:
        return
    d = cache_dir(args)
    try:
        os.makedirs(d, exist_ok=True)
        with open(os.path.join(d, key + ".json"), "w") as fh:
            json.dump({"version": SCHEMA_VERSION, "data": _jsonable(data)}, fh)
    except OSError as exc:
        print("warning: cache write failed (%s)" % exc, file=sys.stderr)


# ---------------------------------------------------------------------------
# shared setup


def _field(args):
    try:
        return build_field(args.D)
    except ValueError as exc:
        raise DomainFailure(str(exc))


def _character(G, args):
    odd = odd_characters(G)
    if not odd:
        raise DomainFailure(
            "no admissible character: every totally odd character requires "
            "unit norm +1 (d_F = %d has a unit of norm -1)" % G.field.d_F)
    idx = args.char_index
    if not 0 <= idx < len(odd):
        raise DomainFailure("char-index %d out of range (have %d odd "
                            "characters)" % (idx, len(odd)))
    return odd[idx]


def _require_p(args):
    if args.p is None:
        raise DomainFailure("this subcommand needs --p")
    if args.p < 3 or args.p % 2 == 0:
        raise DomainFailure("p must be an odd prime")
    return args.p


def _base_report(args, **extra):
    rep = {"schema_version": SCHEMA_VERSION, "D": getattr(args, "D", None),
           "generated_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())}
    rep.update(extra)
    return rep


# ---------------------------------------------------------------------------
# subcommands


def cmd_field(args):
    F = _field(args)
    t, u = pell_plus(F.d_F)
    return _base_report(
        args, d_F=F.d_F, unit_norm=F.unit_norm,
        fundamental_unit=F.eps, totally_positive_unit=F.eps_plus,
        pell_plus={"t": t, "u": u})


def _classgroup_data(args, F):
    key = "field_%d" % F.d_F
    data = _cache_load(args, key)
    if data is None:
        G = narrow_class_group(F)
        t, u = pell_plus(F.d_F)
        data = {"h": G.h,
                "reps": [list(G.positive_rep(i)) for i in range(G.h)],
                "table": [[G.compose(i, j) for j in range(G.h)]
                          for i in range(G.h)],
                "sqrt_class": G.class_of_principal_sqrt_dF,
                "pell_plus": {"t": t, "u": u}}
        _cache_store(args, key, data)
    return data


def cmd_classgroup(args):
    F = _field(args)
    data = _classgroup_data(args, F)
    return _base_report(args, d_F=F.d_F, classgroup=data)


def cmd_chars(args):
    F = _field(args)
    G = narrow_class_group(F)
    chars = all_characters(G)
    odd = odd_characters(G)
    listing = [{"exponents": list(ch.exponents),
                "values": [ch(i) for i in range(G.h)],
                "totally_odd": ch.totally_odd,
                "trivial": ch.is_trivial()} for ch in chars]
    rep = _base_report(args, d_F=F.d_F, h=G.h, characters=listing,
                       odd_count=len(odd))
    if not odd:
        rep["message"] = "no admissible character"
    return rep


def cmd_rmpoints(args):
    F = _field(args)
    p = _require_p(args)
    G = narrow_class_group(F)
    try:
        rc = _resolve_rc(F, p, args.r)
    except InertPrime as exc:
        return _base_report(args, d_F=F.d_F, p=p, inert=True,
                            message=str(exc))
    key = "rm_%d_%d_%d" % (F.d_F, p, rc.r)
    data = _cache_load(args, key)
    if data is None:
        data = {"r": rc.r, "N0": rc.N0, "classes": []}
        for cls in range(G.h):
            pair = rm_point_pair(F, G, cls, p, rc)
            data["classes"].append({
                "class_index": cls,
                "form_plus": list(pair.point_plus.form),
                "form_minus": list(pair.point_minus.form)})
        _cache_store(args, key, data)
    return _base_report(args, d_F=F.d_F, p=p, inert=False, rmpoints=data)


def _resolve_rc(F, p, r):
    rc = choose_r(F, p)
    if r is None:
        return rc
    d = F.d_F
    if (r * r - d) % (4 * p) or r * r <= d:
        raise DomainFailure("invalid square root r = %d of d_F mod 4p" % r)
    from .geodesic import RChoice
    return RChoice(r, QuadIrr(-r, 1, 2, d), (r * r - d) // 2)


def cmd_intersect(args):
    F = _field(args)
    p = _require_p(args)
    G = narrow_class_group(F)
    psi = _character(G, args)
    try:
        rc = _resolve_rc(F, p, args.r)
    except InertPrime as exc:
        return _base_report(args, d_F=F.d_F, p=p, inert=True,
                            message=str(exc))
    cyc = twisted_cycle(F, G, psi, p, rc)
    n = args.n
    per_translate = []
    for coeff, Q in cyc.terms:
        for t in hecke_translate(Q, n, check_stabilizer=False):
            val = intersect_winding_cycle(t)
            if args.algorithm in ("enum", "both"):
                other = intersect_winding_enum(t)
                if args.algorithm == "both" and other != val:
                    raise VerificationFailure(
                        "algorithms disagree on a translate: %r vs %r"
                        % (val, other))
                if args.algorithm == "enum":
                    val = other
            per_translate.append({"class_form": list(Q.form),
                                  "coeff": coeff, "pairing": val})
    total = sum(t["coeff"] * t["pairing"] for t in per_translate)
    return _base_report(args, d_F=F.d_F, p=p, r=rc.r, n=n,
                        algorithm=args.algorithm,
                        translates=len(per_translate),
                        right_cosets=len(right_cosets(n, p)),
                        pairing=total)


def _series_report(args, F, G, psi, p):
    S = diagonal_restriction(F, G, psi, p, N=args.N, r=args.r,
                             algorithm=args.algorithm)
    rep = _base_report(
        args, d_F=F.d_F, p=p, r=S.metadata["r"], kappa=2,
        convention_sign=S.metadata["pairing_factor"],
        psi_exponents=list(psi.exponents),
        constant=Fraction(S.constant),
        coeffs={n: S.coeffs[n] for n in sorted(S.coeffs)},
        inert=S.inert)
    return rep, S


def cmd_series(args):
    F = _field(args)
    p = _require_p(args)
    G = narrow_class_group(F)
    psi = _character(G, args)
    rep, _ = _series_report(args, F, G, psi, p)
    return rep


def cmd_verify(args):
    F = _field(args)
    p = _require_p(args)
    G = narrow_class_group(F)
    psi = _character(G, args)
    checks = []

    def record(name, ok, detail=""):
        checks.append({"name": name, "passed": bool(ok), "detail": detail})

    rep, S = _series_report(args, F, G, psi, p)
    if S.inert:
        record("inert", True, "p is inert: zero series")
        rep["checks"] = checks
        rep["passed"] = True
        return rep

    # dual-algorithm agreement over all translates
    try:
        other = diagonal_restriction(F, G, psi, p, N=args.N, r=args.r,
                                     algorithm="both")
        record("dual_algorithm", other == S,
               "cycle==enum for n=1..%d" % args.N)
    except AlgorithmMismatch as exc:
        record("dual_algorithm", False, str(exc))

    mod = modularity_check(S)
    record("modularity", mod.passed,
           mod.message or ("mode=%s" % mod.mode))

    rc = choose_r(F, p)
    shifted = diagonal_restriction(F, G, psi, p, N=args.N, r=rc.r + 2 * p)
    record("r_plus_2p", shifted == S)
    swapped = diagonal_restriction(F, G, psi, p, N=args.N, r=-rc.r)
    record("r_pair_swap", swapped == S)
    inv = diagonal_restriction(F, G, psi.inverse(), p, N=args.N, r=args.r)
    record("psi_inverse", inv == S)

    counts = all(len(right_cosets(n, p)) == sigma1(n, None)
                 for n in range(1, min(args.N, 30) + 1) if n % p)
    record("coset_counts", counts, "sigma1 oracle")

    ok = all(c["passed"] for c in checks)
    rep["checks"] = checks
    rep["passed"] = ok
    if not ok:
        raise VerificationFailure(rep)
    return rep


def cmd_verify_analytic(args):
    from . import analytic as an
    checks = []

    def record(name, err, tol):
        checks.append({"name": name, "max_error": float(err),
                       "tolerance": tol, "passed": bool(err < tol)})

    err = max(abs(an.bessel_K(0.5, a) - an.bessel_K_half_closed(a))
              / an.bessel_K_half_closed(a)
              for a in (0.1, 0.5, 1, 2, 5, 10, 20, 50))
    record("bessel_half", err, 1e-10)

    import random
    rng = random.Random(5)

    def nz():
        v = 0
        while abs(v) < 0.2:
            v = rng.uniform(-3, 3)
        return v

    worst = 0.0
    for N in (1, 2, 3):
        cases = [tuple((nz(), 0) for _ in range(N)),
                 tuple((0, nz()) for _ in range(N)),
                 tuple((nz(), nz()) for _ in range(N))]
        for x, s in zip(cases, (0.3, 0.3, 0.7)):
            a, b = an.J_closed(x, s), an.J_quadrature(x, s)
            worst = max(worst, abs(a - b) / max(1, abs(a)))
    record("J_closed_forms", worst, 1e-8)

    record("J_negative_norm",
           abs(an.J_quadrature(((1, 1), (1, -3)), 0)), 1e-8)

    worst = 0.0
    for x in (((1, 1), (1, 1)), ((-1, -1), (-1, -1)), ((1, -1), (1, 1))):
        worst = max(worst,
                    abs(an.phi0_integral(x) - an.phi0_expected(x)))
    record("phi0_signs", worst, 1e-6)

    taus = (0.3 + 1.2j, -0.7 + 0.8j)
    worst = max(abs(an.Z_inf(taus, 3, 2, s) - an.Z_inf_quadrature(taus, 3, 2, s))
                for s in (0, 0.35, -0.5))
    record("Z_inf", worst, 1e-8)

    rep = _base_report(args, checks=checks,
                       passed=all(c["passed"] for c in checks))
    rep.pop("D", None)
    if not rep["passed"]:
        raise VerificationFailure(rep)
    return rep


# ---------------------------------------------------------------------------
# driver


COMMANDS = {
    "field": (cmd_field, True),
    "classgroup": (cmd_classgroup, True),
    "chars": (cmd_chars, True),
    "rmpoints": (cmd_rmpoints, True),
    "intersect": (cmd_intersect, True),
    "series": (cmd_series, True),
    "verify": (cmd_verify, True),
    "verify-analytic": (cmd_verify_analytic, False),
}


def build_parser():
    ap = argparse.ArgumentParser(
        prog="rqgeo",
        description="Diagonal restrictions of p-stabilized Eisenstein "
                    "series over real quadratic fields, from geodesic "
                    "intersection numbers.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, needs_field) in COMMANDS.items():
        sp = sub.add_parser(name)
        if needs_field:
            sp.add_argument("--D", type=int, required=(name != "verify-analytic"),
                            help="squarefree integer defining F = Q(sqrt(D))")
            sp.add_argument("--p", type=int, default=None, help="odd prime level")
            sp.add_argument("--r", type=int, default=None,
                            help="override the square root of d_F mod 4p")
            sp.add_argument("--char-index", type=int, default=0,
                            help="index into the totally odd characters")
            sp.add_argument("--N", type=int, default=30,
                            help="q-expansion truncation")
            sp.add_argument("--n", type=int, default=1,
                            help="Hecke operator index (intersect)")
            sp.add_argument("--algorithm", choices=("cycle", "enum", "both"),
                            default="cycle")
        sp.add_argument("--format", choices=("json", "csv", "text"),
                        default="json")
        sp.add_argument("--no-cache", action="store_true")
        sp.add_argument("--cache-dir", default=None)
        sp.add_argument("--threads", type=int, default=1,
                        help="worker threads (results are identical)")
    return ap


def run(argv=None):
    args = build_parser().parse_args(argv)
    fn = COMMANDS[args.command][0]
    try:
        report = fn(args)
    except DomainFailure as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DOMAIN
    except VerificationFailure as exc:
        payload = exc.args[0]
        if isinstance(payload, dict):
            emit(payload, args.format)
        else:
            print("mismatch: %s" % payload, file=sys.stderr)
        return EXIT_MISMATCH
    emit(report, args.format)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
