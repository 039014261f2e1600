"""Command-line entry point.  Every subcommand prints one JSON document.

Exit codes: 0 success, 2 malformed input, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import ast
import json
import logging
import sys
from typing import List, Optional, Sequence

from .config import RunConfig, load_config
from .corpus import format_table, run_corpus
from .errors import InputError, ResourceError
from .frobmod import stabilize_kernel
from .groebner import groebner
from .koszul import koszul_cohomology
from .monomial import lc_graded_piece, torsion_scan
from .ring import ZZ, PolyRing, Polynomial
from .snf import smith_normal_form
from .torsion import torsion_primes_koszul

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 2, 3

log = logging.getLogger("lctorsion")


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} is not valid JSON: {exc}") from exc


def _split_gens(text: str) -> List:
    """``--gens`` is a JSON list (strings or term lists) or ``x, x^2``."""
    text = text.strip()
    if text.startswith("["):
        data = _load_json(text, "--gens")
        if not isinstance(data, list):
            raise InputError("--gens must be a list")
        return data
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    parts = [s.strip() for s in text.split(",")]
    if not all(parts):
        raise InputError("empty generator in --gens")
    return parts


def _names_in(items) -> List[str]:
    seen: List[str] = []
    for g in items:
        if not isinstance(g, str):
            raise InputError("--ring is required when generators are given as term lists")
        try:
            tree = ast.parse(g.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise InputError(f"cannot parse polynomial {g!r}") from exc
        for node in ast.walk(tree):
            if isinstance(node, ast.Name) and node.id not in seen:
                seen.append(node.id)
    return sorted(seen)


def parse_inputs(ring_text: Optional[str], gens_text: str) -> List[Polynomial]:
    items = _split_gens(gens_text)
    if ring_text:
        ring = PolyRing.from_json(_load_json(ring_text, "--ring"))
    else:
        ring = PolyRing(ZZ, tuple(_names_in(items)))
    return [Polynomial.from_json(ring, g) for g in items]


def _parse_int_list(text: str, what: str) -> List[int]:
    data = _load_json(text, what)
    try:
        return [int(x) for x in data]
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what} must be a list of integers") from exc


def _cmd_gb(args, cfg: RunConfig) -> dict:
    f = parse_inputs(args.ring, args.gens)
    gb = groebner(f, caps=cfg.caps)
    out = {
        "ring": f[0].ring.to_json(),
        "strong": gb.strong,
        "basis": [v[0].to_json() for v in gb.elements],
    }
    if args.reduce:
        v = f[0].ring.parse(args.reduce)
        nf = gb.normal_form(v)[0]
        out["normal_form"] = nf.to_json()
        out["member"] = nf.is_zero()
    return out


def _cmd_koszul(args, cfg: RunConfig) -> dict:
    f = parse_inputs(args.ring, args.gens)
    M = koszul_cohomology(f, args.k, caps=cfg.caps)
    out = M.to_json()
    out["k"] = str(args.k)
    out["is_zero"] = M.is_zero()
    return out


def _cmd_torsion(args, cfg: RunConfig) -> dict:
    f = parse_inputs(args.ring, args.gens)
    rep = torsion_primes_koszul(f, args.k, cfg.caps, cfg.workers)
    out = rep.to_json()
    if rep.status == "resource_cap":
        raise _Partial(out)
    return out


def _cmd_monomial(args, cfg: RunConfig) -> dict:
    f = parse_inputs(args.ring, args.gens)
    if args.u is not None:
        return lc_graded_piece(f, args.k, _parse_int_list(args.u, "--u")).to_json()
    D = args.D if args.D is not None else 2
    return torsion_scan(f, args.k, args.mode, D, cfg.workers).to_json()


def _cmd_frob(args, cfg: RunConfig) -> dict:
    f = parse_inputs(args.ring, args.gens)
    return stabilize_kernel(f, args.k, args.p, cfg.e_max, cfg.caps).to_json()


def _cmd_snf(args, cfg: RunConfig) -> dict:
    data = _load_json(args.matrix, "--matrix")
    try:
        A = [[int(x) for x in row] for row in data]
    except (TypeError, ValueError) as exc:
        raise InputError("--matrix must be a list of integer rows") from exc
    if len({len(r) for r in A}) > 1:
        raise InputError("--matrix rows have different lengths")
    return smith_normal_form(A, ncols=len(A[0]) if A else 0).to_json()


def _cmd_corpus(args, cfg: RunConfig) -> dict:
    results = run_corpus(caps=cfg.caps, workers=cfg.workers)
    if args.table:
        print(format_table(results), file=sys.stderr)
    done = [r for r in results if r.status in ("pass", "fail")]
    return {
        "entries": [r.to_json() for r in results],
        "completed": str(len(done)),
        "passed": str(sum(r.status == "pass" for r in done)),
        "skipped": [r.name for r in results if r.status == "skipped"],
        "capped": [r.name for r in results if r.status == "resource_cap"],
    }


class _Partial(Exception):
    def __init__(self, report: dict):
        super().__init__("resource cap")
        self.report = report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lctorsion", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key = value file with run settings")
    parser.add_argument("--max-basis", type=int)
    parser.add_argument("--max-coef-bits", type=int)
    parser.add_argument("--e-max", type=int)
    parser.add_argument("--oracle-degree", type=int)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--output", help="also write the JSON report here")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def poly_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--ring", help='e.g. {"coef":"ZZ","vars":["x","y"]}')
        p.add_argument("--gens", required=True)
        p.set_defaults(fn=fn)
        return p

    p = poly_cmd("gb", _cmd_gb, "Gröbner basis of an ideal")
    p.add_argument("--reduce", help="polynomial to reduce modulo the basis")
    p = poly_cmd("koszul", _cmd_koszul, "presentation of Koszul cohomology H^k(f)")
    p.add_argument("--k", type=int, required=True)
    p = poly_cmd("torsion-primes", _cmd_torsion, "zerodivisor primes on H^k(f; ZZ[x])")
    p.add_argument("--k", type=int, required=True)
    p = poly_cmd("monomial-lc", _cmd_monomial, "graded Čech scan for monomial ideals")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=["squarefree", "box"], default="squarefree")
    p.add_argument("--D", type=int)
    p.add_argument("--u", help="single degree, JSON list of integers")
    p = poly_cmd("frob-stabilize", _cmd_frob, "vanishing of H^k_a(F_p[x])")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("--matrix", required=True)
    p.set_defaults(fn=_cmd_snf)
    p = sub.add_parser("corpus", help="run the bundled containment corpus")
    p.add_argument("--table", action="store_true", help="print a text table on stderr")
    p.set_defaults(fn=_cmd_corpus)
    return parser


def _emit(report: dict, cfg: Optional[RunConfig]) -> None:
    text = json.dumps(report, sort_keys=True)
    print(text)
    if cfg is not None and cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text + "\n")


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    cfg = None
    try:
        cfg = load_config(args.config, max_basis=args.max_basis, max_coef_bits=args.max_coef_bits,
                          e_max=args.e_max, oracle_degree=args.oracle_degree,
                          workers=args.workers, output=args.output)
        _emit(args.fn(args, cfg), cfg)
        return EXIT_OK
    except _Partial as exc:
        _emit(exc.report, cfg)
        return EXIT_CAP
    except ResourceError as exc:
        _emit({"error": str(exc), "status": "resource_cap"}, cfg)
        return EXIT_CAP
    except InputError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
