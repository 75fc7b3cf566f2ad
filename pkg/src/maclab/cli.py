"""Command-line interface.

Every report echoes the command line that produced it, so any run can be
reproduced from its output.  Exit codes: 0 success, 1 at least one failed
certificate or check, 2 usage or runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import cache as diskcache
from .partitions import Partition, partitions
from .scalars import ratfun_to_json
from .symfunc import SymFun, convert, sort_partitions

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2


def parse_partition(text: str) -> Partition:
    """``"2,1"`` or ``"2 1"`` or ``"[2,1]"``; ``""`` and ``"0"`` give the empty partition."""
    cleaned = text.strip().strip("[]").replace(" ", ",")
    parts = [int(x) for x in cleaned.split(",") if x.strip()]
    try:
        return Partition([p for p in parts if p])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _expansion_json(f: SymFun, basis: str) -> dict:
    coeffs = convert(f, basis)
    return {
        "basis": basis,
        "degree": f.degree,
        "terms": [{"mu": list(mu), "coef": ratfun_to_json(coeffs[mu])} for mu in sort_partitions(coeffs)],
    }


def _pretty_expansion(f: SymFun, basis: str) -> list[str]:
    coeffs = convert(f, basis)
    return [f"{basis}{list(mu)}: {coeffs[mu]}" for mu in sort_partitions(coeffs)]


# verbs ------------------------------------------------------------------------------------


def _basis_object(args) -> tuple[dict, list[str], int]:
    from .macdonald import get_cache

    cache = get_cache()
    lam = args.lam
    f = {"jqt": cache.J, "pqt": cache.P, "htilde": cache.H}[args.verb](lam)
    payload = {"lambda": list(lam), "expansion": _expansion_json(f, args.basis)}
    return payload, _pretty_expansion(f, args.basis), EXIT_OK


def _char(args) -> tuple[dict, list[str], int]:
    from .characters import char_eval, character, theta_norm

    mu = args.mu
    if args.lam is not None:
        if args.normalization == "tilde":
            val = char_eval(mu, args.lam)
        else:
            val = theta_norm(mu, lam=args.lam)
        payload = {"mu": list(mu), "lambda": list(args.lam), "normalization": args.normalization,
                   "value": ratfun_to_json(val)}
        return payload, [str(val)], EXIT_OK
    k = args.k or max(mu.length, 1)
    if args.normalization == "tilde":
        poly = character(mu, k)
        payload = {"mu": list(mu), "k": k, "normalization": "tilde", "value": poly.to_json()}
        return payload, [str(poly.to_ratfun())], EXIT_OK
    val = theta_norm(mu, k=k)
    payload = {"mu": list(mu), "k": k, "normalization": args.normalization, "value": ratfun_to_json(val)}
    return payload, [str(val)], EXIT_OK


def _star(args) -> tuple[dict, list[str], int]:
    from .characters import star
    from .macdonald import get_cache

    mu = args.mu
    f = SymFun.p(mu) if args.of == "p" else get_cache().J(mu)
    k = args.k or max(mu.length, 1)
    poly = star(f, k)
    payload = {"of": args.of, "mu": list(mu), "k": k, "value": poly.to_json()}
    return payload, [str(poly.to_ratfun())], EXIT_OK


def _gcoef(args) -> tuple[dict, list[str], int]:
    from .characters import structure_g

    g = structure_g(args.mu, args.nu, args.normalization, args.method)
    items = sort_partitions(g)
    payload = {"mu": list(args.mu), "nu": list(args.nu), "normalization": args.normalization,
               "coefficients": [{"pi": list(pi), "coef": ratfun_to_json(g[pi])} for pi in items]}
    return payload, [f"g^{list(pi)}: {g[pi]}" for pi in items], EXIT_OK


def _gj(args) -> tuple[dict, list[str], int]:
    from .conjectures import gj_c, gj_h

    table = (gj_c if args.verb == "ccoef" else gj_h)(args.m)
    rows = []
    for pi in partitions(args.m):
        if args.pi is not None and pi != args.pi:
            continue
        for mu in partitions(args.m):
            if args.mu is not None and mu != args.mu:
                continue
            for nu in partitions(args.m):
                if args.nu is not None and nu != args.nu:
                    continue
                val = table[(pi, mu, nu)]
                if not val.is_zero() or args.pi is not None:
                    rows.append((pi, mu, nu, val))
    payload = {"kind": table.kind, "m": args.m, "coefficients": [
        {"pi": list(a), "mu": list(b), "nu": list(c), "coef": ratfun_to_json(v)} for a, b, c, v in rows]}
    name = table.kind
    return payload, [f"{name}^{list(a)}_{list(b)},{list(c)}: {v}" for a, b, c, v in rows], EXIT_OK


def _verify(args) -> tuple[dict, list[str], int]:
    from .verify import run_suite

    outcomes = run_suite(args.suite, args.max_size)
    failed = [o for o in outcomes if not o.passed]
    payload = {"suite": args.suite, "max_size": args.max_size, "checked": len(outcomes),
               "passed": len(outcomes) - len(failed), "failed": len(failed),
               "outcomes": [o.to_json(runtime=not args.no_runtime) for o in outcomes]}
    lines = [f"{'PASS' if o.passed else 'FAIL'} {o.suite}/{o.check} {o.instance}" for o in outcomes]
    lines.append(f"{payload['passed']}/{payload['checked']} passed")
    return payload, lines, EXIT_FAILED if failed else EXIT_OK


def _sweep(args) -> tuple[dict, list[str], int]:
    from .conjectures import SweepConfig, aggregate, sweep

    cfg = SweepConfig(qprime=args.qprime)
    certs = sweep(args.conjecture, args.n, cfg, jobs=args.jobs, k=args.k or 2)
    report = aggregate(args.conjecture, args.n, certs, cfg)
    payload = {**report, "certificates": [c.to_json(runtime=not args.no_runtime) for c in certs]}
    lines = []
    for c in certs:
        poly = c.polynomials.get("value")
        lines.append(f"{'PASS' if c.passed else 'FAIL'} {json.dumps(c.inputs, sort_keys=True)}: {poly}")
    lines.append(f"{report['passed']} passed, {report['failed']} failed")
    return payload, lines, EXIT_FAILED if report["failed"] else EXIT_OK


def _cache(args) -> tuple[dict, list[str], int]:
    if args.action == "clear":
        n = diskcache.clear()
        return {"action": "clear", "removed": n}, [f"removed {n} file(s)"], EXIT_OK
    if args.action == "build":
        from .macdonald import get_cache

        get_cache().ensure(args.n)
    root = diskcache.cache_dir()
    degrees = diskcache.cached_degrees()
    payload = {"action": args.action, "dir": None if root is None else str(root),
               "degrees": degrees, "schema": diskcache.SCHEMA}
    return payload, [f"cache dir: {payload['dir']}", f"degrees: {degrees}"], EXIT_OK


VERBS = {
    "jqt": _basis_object, "pqt": _basis_object, "htilde": _basis_object,
    "char": _char, "star": _star, "gcoef": _gcoef, "ccoef": _gj, "hcoef": _gj,
    "verify": _verify, "sweep": _sweep, "cache": _cache,
}


def build_parser() -> argparse.ArgumentParser:
    from .conjectures import CONJECTURES, QPRIME_BINDINGS
    from .verify import SUITES

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "pretty"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--no-runtime", action="store_true", help="omit timing fields from reports")

    parser = argparse.ArgumentParser(prog="maclab", description="Exact Macdonald polynomial toolkit")
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb in ("jqt", "pqt", "htilde"):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("--lambda", dest="lam", type=parse_partition, required=True)
        p.add_argument("--basis", choices=("p", "m", "h", "e", "s"), default="p")

    p = sub.add_parser("char", parents=[common])
    p.add_argument("--mu", type=parse_partition, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--lambda", dest="lam", type=parse_partition)
    p.add_argument("--normalization", choices=("tilde", "alpha-gamma"), default="tilde")

    p = sub.add_parser("star", parents=[common])
    p.add_argument("--mu", type=parse_partition, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--of", choices=("p", "J"), default="p")

    p = sub.add_parser("gcoef", parents=[common])
    p.add_argument("--mu", type=parse_partition, required=True)
    p.add_argument("--nu", type=parse_partition, required=True)
    p.add_argument("--normalization", choices=("theta-tilde", "theta-alpha-gamma"), default="theta-alpha-gamma")
    p.add_argument("--method", choices=("block", "bareiss"), default="block")

    for verb in ("ccoef", "hcoef"):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--pi", type=parse_partition)
        p.add_argument("--mu", type=parse_partition)
        p.add_argument("--nu", type=parse_partition)

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--max-size", type=int)

    p = sub.add_parser("sweep", parents=[common])
    p.add_argument("--conjecture", choices=CONJECTURES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, help="number of row variables (lassalle only)")
    p.add_argument("--qprime", choices=QPRIME_BINDINGS, default="q-1",
                   help="binding of the q' variable (gamma only)")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("cache", parents=[common])
    p.add_argument("action", choices=("info", "build", "clear"))
    p.add_argument("--n", type=int, default=6)
    return parser


def _render_pretty(command: list[str], lines: list[str]) -> str:
    return "\n".join(["# maclab " + " ".join(command)] + lines) + "\n"


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    for name in ("n", "m", "max_size", "k", "jobs"):
        val = getattr(args, name, None)
        if val is not None and val < (1 if name in ("jobs", "m") else 0):
            print(f"maclab: --{name.replace('_', '-')} must be positive", file=sys.stderr)
            return EXIT_ERROR
    try:
        payload, lines, code = VERBS[args.verb](args)
    except (ValueError, KeyError) as exc:
        print(f"maclab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # noqa: BLE001 - report any runtime failure as exit 2
        print(f"maclab: runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "json":
        text = json.dumps({"command": argv, **payload}, sort_keys=True, indent=2) + "\n"
    else:
        text = _render_pretty(argv, lines)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
