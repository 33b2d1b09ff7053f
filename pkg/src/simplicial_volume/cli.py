"""Command-line front end.

Exit status: 0 success, 1 domain error, 2 usage or parse error, 3 time limit.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .chains import boundary, one_norm
from .constructions import connected_sum, disjoint_union
from .errors import (
    BudgetExhausted, DimensionMismatch, NonTriangularFace, NotAdmissible, OrientationClash,
    ParseError, PeelFailure, SimplicialVolumeError, TimeLimitReached, TraceInconsistent)
from .flux import verify_certificate
from .formats import (
    parse_facet_list, read_certificate, write_certificate, write_facet_list, write_result)
from .lp import format_rational
from .plantri import parse_plantri_ascii, trace_complex
from .search import enumerate_balanced_digraphs, find_gaps, simplest
from .volume import VolumeResult, _best_cone, compute_vq, compute_vz, cone_decomposition, greedy_peel

log = logging.getLogger("simplicial_volume")

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_TIME = 0, 1, 2, 3


class UsageError(Exception):
    pass


class CheckFailed(SimplicialVolumeError):
    """A computed result did not pass its independent check."""


def load_complex(path: str, fmt: str):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise UsageError(f"{path}: file not found") from None
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    if fmt == "plantri":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith(">")]
        if len(lines) != 1:
            raise ParseError(f"expected one plantri line, found {len(lines)}", source=path)
        return trace_complex(parse_plantri_ascii(lines[0], source=path))[0]
    return parse_facet_list(text, source=path)


def _deadline(args):
    return None if args.time_limit is None else time.monotonic() + args.time_limit


def _check_volume(K, r: VolumeResult):
    """Independent exact check of a result before anything is printed."""
    if boundary(r.witness) != K.chain:
        raise CheckFailed("witness boundary differs from the complex")
    if one_norm(r.witness) != r.value:
        raise CheckFailed("witness norm differs from the reported value")
    if r.kind == "Integral" and not r.witness.is_integral():
        raise CheckFailed("integral witness has fractional coefficients")
    rep = verify_certificate(K, r.certificate, r.stats.get("vq", r.value))
    if not rep.feasible or rep.total_over_facets != r.stats.get("vq", r.value):
        raise CheckFailed("flux certificate does not certify the fractional volume")


def _vq(K, args):
    r = compute_vq(K, warm_start=not args.exact_only, deadline=_deadline(args))
    _check_volume(K, r)
    return r


def _vz(K, args):
    r = compute_vz(K, warm_start=not args.exact_only, deadline=_deadline(args))
    _check_volume(K, r)
    return r


def _run_one(task):
    """Worker: returns (text, result document or None, exit code)."""
    cmd, path, args = task
    try:
        K = load_complex(path, args.format)
        if cmd == "vq":
            r = _vq(K, args)
            return f"V_Q = {format_rational(r.value)}", write_result(r), EXIT_OK
        if cmd == "vz":
            r = _vz(K, args)
            return f"V_Z = {format_rational(r.value)}", write_result(r), EXIT_OK
        r = _vz(K, args)
        vq = r.stats["vq"]
        text = (f"V_Z = {format_rational(r.value)}, V_Q = {format_rational(vq)}, "
                f"gap = {format_rational(r.value - vq)}")
        return text, write_result(r), EXIT_OK
    except TimeLimitReached as exc:
        return _time_message(exc), None, EXIT_TIME
    except Exception as exc:  # mapped to exit codes by the caller
        return _describe(exc, path), None, _code_for(exc)


def _time_message(exc: TimeLimitReached) -> str:
    lo, hi = exc.lower_bound, exc.upper_bound
    if lo is None and hi is None:
        return "time limit reached before any bound was verified"
    lo = "?" if lo is None else format_rational(lo)
    hi = "?" if hi is None else format_rational(hi)
    return f"time limit reached: verified bounds [{lo}, {hi}]"


def _code_for(exc) -> int:
    if isinstance(exc, (UsageError, ParseError)):
        return EXIT_USAGE
    if isinstance(exc, TimeLimitReached):
        return EXIT_TIME
    if isinstance(exc, (SimplicialVolumeError, ValueError)):
        return EXIT_DOMAIN
    raise exc


def _describe(exc, path=None) -> str:
    msg = str(exc)
    if isinstance(exc, NotAdmissible) and exc.offending:
        items = list(dict(exc.offending).items())
        faces = ", ".join(f"{key}:{format_rational(c)}" for key, c in items[:5])
        msg += f" (residual {faces}{', ...' if len(items) > 5 else ''})"
    if path is not None and not msg.startswith(str(path)):
        msg = f"{path}: {msg}"
    return f"error: {msg}"


def _emit(text: str, out):
    print(text, file=out)


def _write_out(args, doc: str):
    if args.out:
        Path(args.out).write_text(doc, encoding="utf-8")


def cmd_volume(args, out) -> int:
    if args.out and len(args.files) > 1:
        raise UsageError("--out needs exactly one input file")
    tasks = [(args.command, f, args) for f in args.files]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    status = EXIT_OK
    for (text, doc, code), f in zip(results, args.files):
        line = text if len(args.files) == 1 or text.startswith("error") else f"{f}: {text}"
        _emit(line, out if code == EXIT_OK else sys.stderr)
        if doc is not None:
            _write_out(args, doc)
        status = max(status, code)
    return status


def cmd_certify(args, out) -> int:
    K = load_complex(args.file, args.format)
    if args.certificate:
        path = Path(args.certificate)
        if not path.exists():
            raise UsageError(f"{path}: file not found")
        phi, claimed = read_certificate(path.read_text(encoding="utf-8"), source=str(path))
        rep = verify_certificate(K, phi, claimed or 0)
        if not rep.feasible:
            _emit(f"infeasible: outward flux {format_rational(rep.worst_flux)} on "
                  f"{rep.worst_simplex}", out)
            return EXIT_DOMAIN
        _emit(f"feasible: V_Q >= {format_rational(rep.total_over_facets)} "
              f"({rep.checked} simplices checked)", out)
        if claimed is not None and not rep.certifies:
            _emit(f"claimed bound {format_rational(claimed)} is not certified", out)
            return EXIT_DOMAIN
        return EXIT_OK
    r = _vq(K, args)
    rep = verify_certificate(K, r.certificate, r.value)
    _emit(f"V_Q = {format_rational(r.value)} certified ({rep.checked} simplices checked)", out)
    _write_out(args, write_certificate(r.certificate, r.value))
    return EXIT_OK


def cmd_peel(args, out) -> int:
    K = load_complex(args.file, args.format)
    steps = greedy_peel(K, backtrack=args.backtrack, warm_start=not args.exact_only,
                        deadline=_deadline(args))
    _emit(f"peeled {len(steps)} simplices", out)
    for tau in steps:
        _emit(" ".join(map(str, tau)), out)
    return EXIT_OK


def cmd_cone(args, out) -> int:
    K = load_complex(args.file, args.format)
    if args.vertex is None:
        c = _best_cone(K)
    else:
        if not 0 <= args.vertex < K.vertex_count:
            raise UsageError(f"--vertex must lie in 0..{K.vertex_count - 1}")
        c = cone_decomposition(K, args.vertex)
    if boundary(c) != K.chain:
        raise CheckFailed("cone decomposition does not bound the complex")
    _emit(f"cone decomposition with {format_rational(one_norm(c))} simplices", out)
    for key, coeff in c.items():
        _emit(f"{format_rational(coeff)} {' '.join(map(str, key))}", out)
    return EXIT_OK


def _emit_complex(K, args, out):
    text = write_facet_list(K)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        _emit(f"wrote {K.facet_count} facets on {K.vertex_count} vertices to {args.out}", out)
    else:
        out.write(text)


def cmd_union(args, out) -> int:
    K1 = load_complex(args.first, args.format)
    K2 = load_complex(args.second, args.format)
    _emit_complex(disjoint_union(K1, K2), args, out)
    return EXIT_OK


def _parse_simplex(text: str, what: str):
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"{what}: expected vertex indices, got {text!r}") from None


def _parse_map(text: str):
    pairs = {}
    for item in text.replace(" ", "").split(","):
        if not item:
            continue
        try:
            a, b = item.split(":")
            pairs[int(a)] = int(b)
        except ValueError:
            raise UsageError(f"--map: expected 'u:v,...', got {item!r}") from None
    return pairs


def cmd_sum(args, out) -> int:
    K1 = load_complex(args.first, args.format)
    K2 = load_complex(args.second, args.format)
    F = _parse_simplex(args.facet, "--facet")
    F2 = _parse_simplex(args.facet2, "--facet2")
    if args.map:
        mapping = _parse_map(args.map)
    else:
        if len(F) != len(F2):
            raise UsageError("--facet and --facet2 have different sizes")
        mapping = dict(zip(F, F2))
    _emit_complex(connected_sum(K1, F, K2, F2, mapping), args, out)
    return EXIT_OK


def cmd_parse_plantri(args, out) -> int:
    p = Path(args.file)
    if not p.exists():
        raise UsageError(f"{p}: file not found")
    lines = [ln for ln in p.read_text(encoding="utf-8").splitlines()
             if ln.strip() and not ln.startswith(">")]
    if not lines:
        raise ParseError("no plantri lines", source=str(p))
    docs = []
    for k, line in enumerate(lines, start=1):
        rs = parse_plantri_ascii(line, source=f"{p}:{k}")
        K, rule = trace_complex(rs)
        edges, faces = rs.edge_count, K.facet_count
        euler = "ok" if (edges, faces) == (3 * rs.n - 6, 2 * rs.n - 4) else "FAILED"
        _emit(f"{p}:{k}: {rs.n} vertices, {edges} edges, {faces} faces "
              f"(Euler {euler}, {rule} rule)", out if args.out else sys.stderr)
        docs.append(write_facet_list(K))
    if args.out:
        Path(args.out).write_text("".join(docs), encoding="utf-8")
    else:
        out.write("".join(docs))
    return EXIT_OK


def cmd_search(args, out) -> int:
    stream = enumerate_balanced_digraphs(
        args.max_vertices, args.max_edges, min_vertices=args.min_vertices,
        min_total_edges=args.min_edges, max_multiplicity=args.max_multiplicity,
        allow_antiparallel=not args.no_antiparallel)
    status = EXIT_OK
    try:
        gaps = find_gaps(stream, args.budget, args.checkpoint, time_budget=args.time_limit,
                         jobs=args.jobs)
    except BudgetExhausted as exc:
        gaps = exc.partial
        _emit(f"budget exhausted after {exc.processed} complexes; partial results follow",
              sys.stderr)
        status = EXIT_TIME
    for g in gaps:
        _emit(f"{g.code}  vertices={g.complex.vertex_count} edges={g.complex.facet_count} "
              f"V_Q={format_rational(g.vq)} V_Z={g.vz} gap={format_rational(g.gap)}", out)
    best = simplest(gaps)
    if best["by_vertices"] is not None:
        _emit(f"fewest vertices: {best['by_vertices'].code}", out)
        _emit(f"fewest edges: {best['by_edges'].code}", out)
    _emit(f"{len(gaps)} gap(s) found", out)
    if args.out:
        Path(args.out).write_text("".join(write_facet_list(g.complex) + "\n" for g in gaps),
                                  encoding="utf-8")
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("facets", "plantri"), default="facets",
                        help="input file format (default: facets)")
    common.add_argument("--out", metavar="FILE", help="write the result document here")
    common.add_argument("--exact-only", action="store_true",
                        help="skip the floating-point warm start")
    common.add_argument("--time-limit", type=float, metavar="SECONDS")
    common.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="worker processes for independent inputs")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="simplicial-volume",
        description="Exact integral and fractional simplicial volume of admissible complexes.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("vq", "fractional volume"), ("vz", "integral volume"),
                        ("gap", "both volumes and their difference")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("files", nargs="+", metavar="FILE")
        p.set_defaults(func=cmd_volume)
    p = sub.add_parser("certify", parents=[common], help="produce or check a flux certificate")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--certificate", metavar="CERT", help="certificate file to verify")
    p.set_defaults(func=cmd_certify)
    p = sub.add_parser("peel", parents=[common], help="greedy one-simplex-at-a-time decomposition")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--backtrack", action="store_true", help="allow one level of backtracking")
    p.set_defaults(func=cmd_peel)
    p = sub.add_parser("cone", parents=[common], help="cone decomposition")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--vertex", type=int, help="apex (default: the best vertex)")
    p.set_defaults(func=cmd_cone)
    p = sub.add_parser("union", parents=[common], help="disjoint union of two complexes")
    p.add_argument("first", metavar="FILE1")
    p.add_argument("second", metavar="FILE2")
    p.set_defaults(func=cmd_union)
    p = sub.add_parser("sum", parents=[common], help="connected sum along a facet")
    p.add_argument("first", metavar="FILE1")
    p.add_argument("second", metavar="FILE2")
    p.add_argument("--facet", required=True, help="oriented facet of FILE1, e.g. '0 1 2'")
    p.add_argument("--facet2", required=True, help="oriented facet of FILE2")
    p.add_argument("--map", help="vertex identification 'u:v,...' (default: position-wise)")
    p.set_defaults(func=cmd_sum)
    p = sub.add_parser("parse-plantri", parents=[common],
                       help="convert plantri ASCII lines to facet lists")
    p.add_argument("file", metavar="FILE")
    p.set_defaults(func=cmd_parse_plantri)
    p = sub.add_parser("search", parents=[common], help="integrality-gap search over digraphs")
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--max-edges", type=int, required=True)
    p.add_argument("--min-vertices", type=int, default=2)
    p.add_argument("--min-edges", type=int, default=0)
    p.add_argument("--max-multiplicity", type=int)
    p.add_argument("--no-antiparallel", action="store_true")
    p.add_argument("--budget", type=int, help="maximum complexes to evaluate")
    p.add_argument("--checkpoint", metavar="FILE", help="resume file")
    p.set_defaults(func=cmd_search)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if args.time_limit is not None and args.time_limit <= 0:
        print("error: --time-limit must be positive", file=sys.stderr)
        return EXIT_USAGE
    path = getattr(args, "file", None)
    try:
        return args.func(args, out)
    except TimeLimitReached as exc:
        print(_time_message(exc), file=sys.stderr)
        return EXIT_TIME
    except PeelFailure as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}" if str(exc).startswith(str(path)) or path is None
              else f"error: {path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotAdmissible, OrientationClash, DimensionMismatch, NonTriangularFace,
            TraceInconsistent, SimplicialVolumeError, ValueError) as exc:
        print(_describe(exc, path), file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
