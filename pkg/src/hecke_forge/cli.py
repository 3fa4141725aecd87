"""Command-line front end: ``hecke-forge <command> ...``.

Every command prints a JSON certificate to stdout (and writes it to
``--emit`` if given). A certificate records the suite, the datum, the
parameters, a pass/fail flag per check and the full result payload. Apart
from the ``timestamp`` and ``wall_clock`` fields it is a deterministic
function of the flags, so two runs with the same flags and ``--seed`` give
byte-identical files once those two fields are dropped.

Exit status: 0 when every requested check passes, 1 when one fails, 2 on
usage errors (including an unknown datum).

    >>> main(["hecke", "mul", "--datum", "A1_sl", "T[s1]*T[s1]", "--quiet"])
    0
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .center import check_central_H00, dominant_orbits, frobenius_gate, graded_centralizer_dims
from .coxeter_complex import boundary_matrices, chain_complex_report, exactness_window, get_complex, facet_type_report
from .dualres import cokernel_check, fact1_window, fact2_window, fact3_check, get_dualres
from .hecke import (
    get_algebra,
    involution_report,
    parse_expression,
    parse_word,
    ring_axioms_report,
    specialization_report,
)
from .parahoric import get_ctx, get_geometry, parse_facet
from .rootdata import CATALOG, RootDatum, build_standard, from_json, qperp_and_xmodq, validate
from .weyl import WeylGroup, coxeter_report, get_group

__all__ = ["main", "build_parser", "SCHEMA", "certificate"]

SCHEMA = "hecke-forge.certificate/1"
VOLATILE = ("timestamp", "wall_clock")

Checks = Dict[str, bool]
SuiteResult = Tuple[Checks, Any]


class UsageError(Exception):
    """Bad flags or an unknown datum; reported with exit status 2."""


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _strip_seconds(obj: Any) -> Any:
    """Drop timing fields from report payloads so certificates are reproducible."""
    if isinstance(obj, dict):
        return {k: _strip_seconds(v) for k, v in obj.items() if k != "seconds"}
    if isinstance(obj, (list, tuple)):
        return [_strip_seconds(v) for v in obj]
    return obj


def certificate(suite: str, datum: str, params: Dict[str, Any], checks: Checks, result: Any,
                wall_clock: float) -> Dict[str, Any]:
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "suite": suite,
        "datum": datum,
        "parameters": params,
        "checks": checks,
        "ok": all(checks.values()),
        "result": _strip_seconds(result),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "wall_clock": round(wall_clock, 3),
    }


def _load_datum(args) -> RootDatum:
    if getattr(args, "datum_file", None):
        try:
            with open(args.datum_file, encoding="utf-8") as fh:
                rd = from_json(fh.read())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot load root datum from {args.datum_file}: {exc}") from exc
        report = validate(rd)
        if not report.ok:
            raise UsageError(f"invalid root datum: {'; '.join(report.violations)}")
        return rd
    try:
        return build_standard(args.datum)
    except KeyError:
        raise UsageError(f"unknown datum {args.datum!r}; choose from {', '.join(CATALOG)} or pass --datum-file")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _facets_of(W: WeylGroup, text: Optional[str]) -> List[Tuple[int, ...]]:
    geom = get_geometry(W)
    if text:
        try:
            S = parse_facet(text)
        except ValueError as exc:
            raise UsageError(f"bad --facet: {exc}") from None
        if any(not 0 <= j < W.nsimple for j in S):
            raise UsageError(f"{text!r} names a simple reflection outside s0..s{W.nsimple - 1}")
        if not geom.is_proper(S):
            raise UsageError(f"{text!r} is not a proper subset of the simple affine reflections")
        return [tuple(sorted(S))]
    return [F.S for i in range(geom.d + 1) for F in geom.std_facets(i)]


def _threads() -> int:
    raw = os.environ.get("HECKE_FORGE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# suites: each returns (checks, payload)
# ---------------------------------------------------------------------------

def suite_rootdata(rd: RootDatum, p: Dict[str, Any]) -> SuiteResult:
    report = validate(rd)
    _qp, torsion, free = qperp_and_xmodq(rd)
    payload = {"datum": rd.to_json(), "violations": report.violations,
               "xmodq_torsion": list(torsion), "xmodq_free": free}
    return {"valid": report.ok}, payload


def suite_coxeter(rd: RootDatum, p: Dict[str, Any]) -> SuiteResult:
    rep = coxeter_report(get_group(rd), p["L"])
    return {"coxeter": rep["ok"]}, rep


def suite_hecke(rd: RootDatum, p: Dict[str, Any]) -> SuiteResult:
    ax = ring_axioms_report(rd, samples=p["samples"], seed=p["seed"])
    inv = involution_report(rd, L=min(p["L"], 3))
    sp = specialization_report(rd, samples=p["samples"], seed=p["seed"])
    return ({"ring_axioms": ax["ok"], "involutions": inv["ok"], "specializations": sp["ok"]},
            {"ring_axioms": ax, "involutions": inv, "specializations": sp})


def suite_parahoric(rd: RootDatum, p: Dict[str, Any]) -> SuiteResult:
    W = get_group(rd)
    checks: Checks = {}
    payload = []
    for S in _facets_of(W, p.get("facet")):
        ctx = get_ctx(W, S)
        gram = ctx.gram_report()
        nak = ctx.nakayama_check()
        fac = ctx.factorization_check(p["L"])
        fre = ctx.freeness_check(p["L"])
        label = ctx.facet.label()
        checks[f"gram_unit[{label}]"] = bool(gram["unit"])
        checks[f"trace_form[{label}]"] = nak["ok"]
        checks[f"factorization[{label}]"] = fac["ok"] and fre["ok"]
        payload.append({"gram": gram, "trace_form": nak, "factorization": fac, "freeness": fre})
    return checks, payload


def suite_gram(rd: RootDatum, p: Dict[str, Any]) -> SuiteResult:
    W = get_group(rd)
    checks: Checks = {}
    payload = []
    for S in _facets_of(W, p.get("facet")):
        gram = get_ctx(W, S).gram_report()
        checks[f"gram_unit[{gram['facet']}]"] = bool(gram["unit"])
        payload.append(gram)
    return checks, payload


def suite_tech(rd: RootDatum, p: Dict[str, Any]) -> SuiteResult:
    rep = facet_type_report(get_complex(rd), p["radius"])
    return {"facet_types": rep["ok"]}, rep


def suite_chain(rd: RootDatum, p: Dict[str, Any]) -> SuiteResult:
    rep = chain_complex_report(get_complex(rd), p["radius"])
    return {"chain_complex": rep["ok"]}, rep


def suite_exactness(rd: RootDatum, p: Dict[str, Any]) -> SuiteResult:
    points = p.get("points") or [(str(p["a"]), str(p["b"]))]
    checks: Checks = {}
    payload = []
    for a0, b0 in points:
        rep = exactness_window(get_group(rd), p["radius"], a0=Fraction(a0), b0=Fraction(b0), metric=p["metric"])
        checks[f"exact[a={a0},b={b0}]"] = rep["ok"]
        payload.append(rep)
    return checks, payload


def suite_facts(rd: RootDatum, p: Dict[str, Any]) -> SuiteResult:
    W = get_group(rd)
    D = get_dualres(W)
    L = p["L"]
    f1 = fact1_window(W, L)
    f2 = [fact2_window(W, S, L) for S in D.codim1]
    f3 = fact3_check(W, L)
    certs = {W.name_word(w): [{"facet": list(t.facet), "sign": t.sign, "left": t.left.to_json(),
                               "right": t.right.to_json()} for t in D.fact3_certificate(w)]
             for w in W.window(min(L, 2))}
    checks = {"fact1": f1["ok"], "fact2": all(r["ok"] for r in f2), "fact3": f3["ok"]}
    return checks, {"fact1": f1, "fact2": f2, "fact3": f3, "fact3_certificates": certs}


def suite_cokernel(rd: RootDatum, p: Dict[str, Any]) -> SuiteResult:
    rep = cokernel_check(get_group(rd), p["L"], seed=p["seed"])
    return {"cokernel": rep["ok"]}, rep


def suite_center(rd: RootDatum, p: Dict[str, Any]) -> SuiteResult:
    W = get_group(rd)
    central = [check_central_H00(W, y, p["L"]) for y, l in dominant_orbits(W, p["maxlen"])]
    gate = frobenius_gate(W)
    return {"h00_centrality": all(r["ok"] for r in central)}, {"orbit_sums": central, "xmodq": gate}


def suite_experiment(rd: RootDatum, p: Dict[str, Any]) -> SuiteResult:
    table = graded_centralizer_dims(get_group(rd), p["spec"], p["maxdeg"])
    # exploratory: the table is reported, never judged
    return {}, table.to_json()


SUITES: Dict[str, Callable[[RootDatum, Dict[str, Any]], SuiteResult]] = {
    "rootdata": suite_rootdata,
    "coxeter": suite_coxeter,
    "hecke": suite_hecke,
    "parahoric": suite_parahoric,
    "tech": suite_tech,
    "chain": suite_chain,
    "exactness": suite_exactness,
    "facts": suite_facts,
    "cokernel": suite_cokernel,
    "center": suite_center,
}


def _run_suite(name: str, rd: RootDatum, params: Dict[str, Any]) -> Tuple[str, Checks, Any, float]:
    t0 = time.perf_counter()
    checks, payload = SUITES[name](rd, params)
    return name, checks, payload, time.perf_counter() - t0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--datum", default="A1_pgl", help=f"catalog datum ({', '.join(CATALOG)})")
    p.add_argument("--datum-file", help="JSON root datum {name, pairing, roots, coroots, simple}")
    p.add_argument("--seed", type=int, default=0, help="seed for randomised suites")
    p.add_argument("--a", type=_fraction, default=Fraction(2), help="rational value of a")
    p.add_argument("--b", type=_fraction, default=Fraction(3), help="rational value of b")
    p.add_argument("--radius", type=int, default=None, help="window radius for facet suites")
    p.add_argument("--L", type=int, default=None, help="length bound for element windows")
    p.add_argument("--emit", help="also write the certificate to this path")
    p.add_argument("--quiet", action="store_true", help="do not print the certificate")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hecke-forge", description="Exact checks for generic affine Hecke algebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def group(name: str, help: str):
        cmd = sub.add_parser(name, help=help)
        return cmd.add_subparsers(dest="action", required=True)

    def leaf(actions, name: str, help: str) -> argparse.ArgumentParser:
        return actions.add_parser(name, parents=[common], help=help)

    g = group("rootdata", "root data")
    leaf(g, "show", "print the datum as JSON")
    leaf(g, "validate", "check the root datum axioms")
    leaf(g, "catalog", "list the built-in data")

    g = group("weyl", "extended affine Weyl group")
    for name, text in (("reduce", "reduced word"), ("len", "length"), ("omega", "length-zero part and its sign")):
        leaf(g, name, text).add_argument("element", help="e.g. s1*s0, t(1,0), o1")
    leaf(g, "verify", "length and descent combinatorics")

    g = group("hecke", "Hecke algebra arithmetic")
    for name, text in (("mul", "evaluate"), ("iota", "apply iota"), ("upiota", "apply iota after j_C")):
        leaf(g, name, text).add_argument("expression", help='e.g. "T[s1]*T[s1]"')
    leaf(g, "verify", "ring axioms together with the involution and specialisation checks")

    g = group("parahoric", "parahoric subalgebras")
    for name, text in (("gram", "trace-form Gram matrix"), ("verify", "trace form and coset factorisations")):
        leaf(g, name, text).add_argument("--facet", help="fixing set such as s0,s1 (default: every standard facet)")

    g = group("complex", "the Coxeter complex and its chains")
    leaf(g, "build", "boundary matrices in coordinate-list form")
    p = leaf(g, "verify", "facet-type identities, chain identities or exactness")
    p.add_argument("--suite", choices=["exactness", "tech", "chain", "all"], default="all")
    p.add_argument("--metric", choices=["box", "total"], default="box")

    g = group("dualres", "two-sided dual complex")
    p = leaf(g, "verify", "window checks and certificates")
    p.add_argument("--suite", choices=["facts", "cokernel", "all"], default="all")

    g = group("center", "centre experiments")
    p = leaf(g, "experiment", "graded centraliser dimensions against the invariant ring")
    p.add_argument("--spec", choices=["h0", "h00", "hab"], default="h0")
    p.add_argument("--maxdeg", type=int, default=5)
    leaf(g, "verify", "orbit sums are central at a = b = 0")
    leaf(g, "gate", "freeness of X / Q")

    sub.add_parser("verify-all", parents=[common], help="every suite for one datum")
    return parser


# ---------------------------------------------------------------------------
# command dispatch
# ---------------------------------------------------------------------------

def _params(args, **defaults) -> Dict[str, Any]:
    out = {
        "seed": args.seed,
        "radius": args.radius if args.radius is not None else defaults.get("radius", 3),
        "L": args.L if args.L is not None else defaults.get("L", 3),
        "a": str(args.a),
        "b": str(args.b),
        "samples": defaults.get("samples", 200),
    }
    for k, v in defaults.items():
        out.setdefault(k, v)
    return out


def _dispatch(args) -> Tuple[str, Dict[str, Any], Checks, Any]:
    rd = _load_datum(args)
    cmd, action = args.command, getattr(args, "action", None)
    W = get_group(rd)
    if cmd == "rootdata":
        if action == "catalog":
            return "rootdata.catalog", {}, {}, list(CATALOG)
        checks, payload = suite_rootdata(rd, {})
        return f"rootdata.{action}", {}, (checks if action == "validate" else {}), payload
    if cmd == "weyl":
        if action == "verify":
            p = _params(args, L=5)
            checks, payload = suite_coxeter(rd, p)
            return "weyl.verify", {"L": p["L"]}, checks, payload
        try:
            w = parse_word(get_algebra(W), args.element)
        except ValueError as exc:
            raise UsageError(str(exc))
        rw = W.reduced_word(w)
        payload = {"element": {"fin": w.fin, "cow": list(w.cow)}, "word": W.name_word(w), "length": W.length(w)}
        if action == "reduce":
            payload.update(omega=W.name_word(rw.omega), letters=[f"s{j}" for j in rw.letters])
        if action == "omega":
            payload.update(omega=W.name_word(rw.omega), permutation=list(W.omega_perm(rw.omega)),
                           epsilon_C=W.epsilon_C(w))
        return f"weyl.{action}", {"element": args.element}, {}, payload
    if cmd == "hecke":
        H = get_algebra(W)
        if action == "verify":
            p = _params(args, L=3, samples=1000)
            checks, payload = suite_hecke(rd, p)
            return "hecke.verify", {k: p[k] for k in ("seed", "samples", "L")}, checks, payload
        try:
            h = parse_expression(H, args.expression)
        except ValueError as exc:
            raise UsageError(str(exc))
        if action == "iota":
            h = H.iota(h)
        elif action == "upiota":
            h = H.upiota(h)
        return f"hecke.{action}", {"expression": args.expression}, {}, {"text": str(h), "terms": h.to_json()}
    if cmd == "parahoric":
        p = _params(args, L=4, facet=args.facet)
        if action == "gram":
            checks, payload = suite_gram(rd, p)
            return "parahoric.gram", {"facet": args.facet}, checks, payload
        checks, payload = suite_parahoric(rd, p)
        return "parahoric.verify", {"facet": args.facet, "L": p["L"]}, checks, payload
    if cmd == "complex":
        p = _params(args, radius=3, metric=getattr(args, "metric", "box"))
        if action == "build":
            K = get_complex(W)
            return "complex.build", {"radius": p["radius"]}, {}, boundary_matrices(K, p["radius"])
        checks: Checks = {}
        payload: Dict[str, Any] = {}
        names = ["tech", "chain", "exactness"] if args.suite == "all" else [args.suite]
        for name in names:
            c, pl = SUITES[name](rd, p)
            checks.update(c)
            payload[name] = pl
        params = {"suite": args.suite, "radius": p["radius"], "a": p["a"], "b": p["b"], "metric": args.metric}
        return "complex.verify", params, checks, payload
    if cmd == "dualres":
        p = _params(args, L=3)
        checks = {}
        payload = {}
        names = ["facts", "cokernel"] if args.suite == "all" else [args.suite]
        for name in names:
            c, pl = SUITES[name](rd, p)
            checks.update(c)
            payload[name] = pl
        return "dualres.verify", {"suite": args.suite, "L": p["L"], "seed": p["seed"]}, checks, payload
    if cmd == "center":
        if action == "experiment":
            spec = {"h0": "H0", "h00": "H00", "hab": "H_ab"}[args.spec]
            p = _params(args, spec=spec, maxdeg=args.maxdeg)
            checks, payload = suite_experiment(rd, p)
            return "center.experiment", {"spec": spec, "maxdeg": args.maxdeg}, checks, payload
        if action == "gate":
            return "center.gate", {}, {}, frobenius_gate(W)
        p = _params(args, L=3, maxlen=4)
        checks, payload = suite_center(rd, p)
        return "center.verify", {"L": p["L"], "maxlen": 4}, checks, payload
    if cmd == "verify-all":
        p = _params(args, radius=4, L=3, samples=300, maxlen=4, metric="box",
                    points=[("2", "3"), ("0", "1"), ("0", "0")])
        order = ["rootdata", "coxeter", "hecke", "parahoric", "tech", "chain", "exactness", "facts",
                 "cokernel", "center"]
        threads = _threads()
        if threads > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                futures = [pool.submit(_run_suite, name, rd, p) for name in order]
                results = [f.result() for f in futures]
        else:
            results = [_run_suite(name, rd, p) for name in order]
        checks = {}
        payload = {}
        for name, c, pl, secs in results:
            checks.update({f"{name}.{k}": v for k, v in c.items()})
            payload[name] = pl
        params = {k: p[k] for k in ("radius", "L", "seed", "samples")}
        return "verify-all", params, checks, payload
    raise UsageError(f"unknown command {cmd!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        suite, params, checks, payload = _dispatch(args)
    except (UsageError, ValueError) as exc:
        print(f"hecke-forge: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    datum = args.datum if not args.datum_file else f"file:{args.datum_file}"
    cert = certificate(suite, datum, params, checks, payload, time.perf_counter() - t0)
    text = json.dumps(cert, indent=2, sort_keys=True, default=str)
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if not args.quiet:
        print(text)
    return 0 if cert["ok"] else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
