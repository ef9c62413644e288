"""Command-line front end.  Every run prints one JSON report on stdout.

Exit codes: 0 computed, 1 invalid input, 2 property violation (selftest),
3 inconclusive (an Unknown verdict is present).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import checks, curvecoh, jsonio, monopole, p1p1coh
from . import plurilinear as pl
from .exactnum import linalg
from .exactnum.scalars import parse_rational
from .jsonio import SCHEMA_VERSION, InputError

VERBS = (
    "validate",
    "curve",
    "cohomology",
    "regularity",
    "extend",
    "normalize",
    "profile",
    "monopole-axisym",
    "monopole-massless",
    "selftest",
)

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_UNKNOWN = 0, 1, 2, 3
OUTCOME = {EXIT_OK: "computed", EXIT_INPUT: "invalid-input", EXIT_VIOLATION: "violation", EXIT_UNKNOWN: "unknown"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--input", type=Path)
    p.add_argument("--mode", choices=("exact", "float"))
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--twist", type=int, nargs=2, metavar=("P", "Q"))
    p.add_argument("--max-m", type=int, default=5)
    p.add_argument("--charge", type=int)
    p.add_argument("--mass")
    p.add_argument("--roots")
    p.add_argument("--level", choices=("smoke", "full"), default="smoke")
    p.add_argument("--output", type=Path)
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical reruns)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plurikit", description="Pluricomplex linear algebra, sheaf cohomology on P1xP1 and monopole curves.")
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser)
    for v in VERBS:
        _common(sub.add_parser(v))
    return parser


# ---------------------------------------------------------------- inputs


def _read(args) -> dict:
    if args.input is None:
        raise InputError("--input is required for this command")
    try:
        text = args.input.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {args.input}: {e.strerror}") from e
    doc = jsonio.loads(text)
    if not isinstance(doc, dict):
        raise InputError("top-level JSON value must be an object")
    if "schema" in doc and doc["schema"] != SCHEMA_VERSION:
        raise InputError(f"unsupported schema {doc['schema']!r}, expected {SCHEMA_VERSION!r}")
    return doc


def _pair(args):
    pair = jsonio.pair_from_json(_read(args), args.mode)
    if args.mode == "float" and pair.is_exact():
        pair = pair.to_complex()
    return pair


def _verdict(v: pl.Verdict) -> dict:
    out = {"status": v.status}
    if v.witness is not None:
        out["witness"] = v.witness
    if v.min_modulus is not None:
        out["min_modulus"] = v.min_modulus
    if v.details:
        out["details"] = v.details
    return out


# ---------------------------------------------------------------- verbs


def cmd_validate(args):
    pair = _pair(args)
    v = pl.validate(pair, samples=args.samples, tol=args.tolerance)
    return _verdict(v), (EXIT_UNKNOWN if v.status == pl.UNKNOWN else EXIT_OK)


def cmd_curve(args):
    doc = _read(args)
    if "X" in doc:
        pair = jsonio.pair_from_json(doc, args.mode)
        if not pair.is_exact():
            raise InputError("curve analysis of a pair needs exact entries")
        sc = pl.support_curve(pair, tol=args.tolerance)
        res = {
            "char_poly": sc["poly"],
            "squarefree": sc["squarefree"],
            "degree": sc["k"],
            "stalk_ranks": sc["stalk_ranks"],
            "consistent": sc["consistent"],
            "is_hypercomplex": pl.is_hypercomplex(pair),
        }
        return res, EXIT_OK
    S = jsonio.curve_from_json(doc)
    res = {
        "k": S.k,
        "sigma_invariant": S.sigma_invariant,
        "antidiagonal": _verdict(S.antidiagonal),
        "h_curve_00": list(curvecoh.h_curve(S, 0, 0)),
        "genus": (S.k - 1) ** 2,
    }
    if args.twist:
        res["h_curve"] = {"twist": list(args.twist), "h": list(curvecoh.h_curve(S, *args.twist))}
    return res, (EXIT_UNKNOWN if S.antidiagonal.status == pl.UNKNOWN else EXIT_OK)


def _resolution(args) -> p1p1coh.Resolution:
    doc = _read(args)
    if "X" in doc:
        return p1p1coh.Resolution.from_pair(jsonio.pair_from_json(doc, args.mode))
    M = jsonio.resolution_from_json(doc)
    return p1p1coh.Resolution(M.shape[0] // 2, M)


def cmd_cohomology(args):
    if not args.twist:
        raise InputError("--twist P Q is required")
    res = _resolution(args)
    if not res.check_injective():
        raise InputError("det M vanishes identically")
    d = p1p1coh.sheaf_cohomology(res, *args.twist, detail=True)
    return {"twist": d["twist"], "h0": d["h0"], "h1": d["h1"]}, EXIT_OK


def cmd_regularity(args):
    res = _resolution(args)
    out = p1p1coh.verify_regularity(res, args.max_m)
    doc = _read(args)
    if "X" in doc:
        pair = jsonio.pair_from_json(doc, args.mode)
        out["kernel_recursion"] = [p1p1coh.kernel_recursion_witness(pair, m) for m in range(args.max_m + 1)]
    return out, EXIT_OK


def cmd_extend(args):
    pair = _pair(args)
    rng = np.random.default_rng(args.seed)
    count = min(args.samples, 64) if args.samples else 20
    rows = []
    Id = linalg.identity(2 * pair.n, pair.is_exact())
    for z in checks._gr_points(rng, count):
        try:
            J = pl.extension_j(pair, z)
            Ja = pl.extension_j(pair, pl.antipode(z))
        except pl.NotPluricomplexAt as e:
            rows.append({"zeta": z, "error": str(e)})
            continue
        if pair.is_exact():
            sq = linalg.is_zero_matrix(linalg.matmul(J, J) + Id)
            anti = linalg.is_zero_matrix(Ja + J)
        else:
            sq = bool(np.linalg.norm(J @ J + np.eye(2 * pair.n)) <= args.tolerance)
            anti = bool(np.linalg.norm(Ja + J) <= args.tolerance)
        rows.append({"zeta": z, "square_is_minus_one": sq, "antipodal_sign": anti, "real_eigenvector_kernel": pl.real_eigenvector_kernel(pair, z)})
    ok = all(r.get("square_is_minus_one") and r.get("antipodal_sign") and r.get("real_eigenvector_kernel") == 0 for r in rows)
    return {"points": rows, "all_hold": ok}, EXIT_OK


def cmd_normalize(args):
    pair = _pair(args)
    try:
        g, norm = pl.normalize_degree_one(pair, tol=max(args.tolerance, 1e-12))
    except ValueError as e:
        raise InputError(str(e)) from e
    X, Y = linalg.to_complex(norm.X), linalg.to_complex(norm.Y)
    resid = float(np.linalg.norm(np.conj(X) @ X + np.eye(pair.n)) + np.linalg.norm(Y))
    return {"mobius": g, "normalized": {"n": norm.n, "X": X, "Y": Y}, "residual": resid}, EXIT_OK


def cmd_profile(args):
    pair = _pair(args)
    prof = pl.pair_splitting(pair, seed=args.seed)
    return prof, EXIT_OK


def _parse_roots(text: str) -> list:
    text = text.strip()
    if text.startswith("["):
        items = jsonio.loads(text)
    else:
        items = [t.strip() for t in text.split(",") if t.strip()]
    return [jsonio.root_from_json(x) for x in items]


def cmd_axisym(args):
    if args.input is not None:
        doc = _read(args)
        k, mass, roots = doc.get("k"), doc.get("mass"), [jsonio.root_from_json(x) for x in doc.get("roots", [])]
    else:
        if args.charge is None or args.mass is None or args.roots is None:
            raise InputError("need --charge, --mass and --roots (or --input)")
        k, mass, roots = args.charge, args.mass, _parse_roots(args.roots)
    try:
        m = parse_rational(str(mass))
        mono, S = monopole.axisym_build(int(k), m, roots)
    except (ValueError, TypeError) as e:
        raise InputError(str(e)) from e
    rep = monopole.vanishing_report(mono, S)
    dc = monopole.delta_classes(mono)
    rep["delta_classes"] = dc["c"]
    rep["sigma_invariant"] = S.sigma_invariant
    rep["antidiagonal"] = _verdict(S.antidiagonal)
    code = EXIT_UNKNOWN if rep["status"] == pl.UNKNOWN or S.antidiagonal.status == pl.UNKNOWN else EXIT_OK
    return rep, code


def cmd_massless(args):
    if args.input is None and args.charge is not None:
        if args.charge < 1:
            raise InputError("--charge must be at least 1")
        pair = monopole.random_massless_pair(args.charge, np.random.default_rng(args.seed))
    else:
        doc = _read(args)
        if not {"p", "q"} <= set(doc):
            raise InputError("massless file needs keys p and q")
        p = jsonio.poly1_from_json(doc["p"], True)
        q = jsonio.poly1_from_json(doc["q"], True)
        pair = monopole.MasslessPair(doc.get("k", max(p.degree, q.degree)), p, q)
    try:
        A, S = monopole.massless_build(pair)
    except ValueError as e:
        raise InputError(str(e)) from e
    triv = monopole.massless_trivial_section(pair)
    prof = monopole.massless_splitting(pair, seed=args.seed)
    rng = np.random.default_rng(args.seed)
    z0, z1 = checks._gr_points(rng, 2)
    res = {
        "k": pair.k,
        "curve": S.P,
        "sigma_invariant": S.sigma_invariant,
        "antidiagonal": _verdict(S.antidiagonal),
        "A": A,
        "trivial_section": {"h0": triv["h0"], "matches_p1_over_p2": triv["matches_p1_over_p2"]},
        "intersection_dim": monopole.massless_intersection(pair, z0, z1),
        "splitting": {"d": prof["d"], "degrees": prof["degrees"]},
    }
    return res, (EXIT_UNKNOWN if S.antidiagonal.status == pl.UNKNOWN else EXIT_OK)


def cmd_selftest(args):
    rep = checks.selftest(args.level, args.seed)
    if not args.timing:
        rep.pop("elapsed", None)
    return rep, (EXIT_OK if rep["passed"] else EXIT_VIOLATION)


HANDLERS = {
    "validate": cmd_validate,
    "curve": cmd_curve,
    "cohomology": cmd_cohomology,
    "regularity": cmd_regularity,
    "extend": cmd_extend,
    "normalize": cmd_normalize,
    "profile": cmd_profile,
    "monopole-axisym": cmd_axisym,
    "monopole-massless": cmd_massless,
    "selftest": cmd_selftest,
}


def _options(args) -> dict:
    out = {}
    for k, v in vars(args).items():
        if k == "verb" or v is None or v is False:
            continue
        out[k] = str(v) if isinstance(v, Path) else v
    return out


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    t0 = time.perf_counter()
    verb, options = None, {}
    try:
        args = build_parser().parse_args(argv)
        if args.verb is None:
            raise InputError(f"a command is required: {', '.join(VERBS)}")
        verb, options = args.verb, _options(args)
        result, code = HANDLERS[verb](args)
        report = {"schema": SCHEMA_VERSION, "command": {"verb": verb, "options": options}, "outcome": OUTCOME[code], "exit_code": code, "result": result}
    except InputError as e:
        code = EXIT_INPUT
        args = None
        report = {"schema": SCHEMA_VERSION, "command": {"verb": verb or "", "options": options}, "outcome": OUTCOME[code], "exit_code": code, "result": None, "error": str(e)}
    if args is not None and getattr(args, "timing", False):
        report["timing_s"] = time.perf_counter() - t0
    text = jsonio.dumps(report, indent=2)
    stdout.write(text + "\n")
    out_path = options.get("output")
    if out_path:
        Path(out_path).write_text(text + "\n", encoding="utf-8")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
