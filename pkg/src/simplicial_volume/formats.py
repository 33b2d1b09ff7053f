"""Text formats: facet lists, result and certificate files, search checkpoints.

Facet-list files look like::

    # comments start with '#'
    dim 2
    vertices 5          (optional; defaults to max label + 1)
    0 1 3
    0 4 1 x 2           (multiplicity 2)

Result and certificate files are JSON with sorted keys; every rational is a
string ``"p/q"`` (or ``"p"`` when q = 1).
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .chains import AdmissibleComplex, Chain, check_admissible
from .errors import NotAdmissible, ParseError
from .flux import FluxFunction
from .lp import format_rational, parse_rational
from .volume import VolumeResult

__all__ = [
    "parse_facet_list",
    "write_facet_list",
    "read_facet_file",
    "write_result",
    "read_result",
    "write_certificate",
    "read_certificate",
    "write_checkpoint",
    "read_checkpoint",
]

# stats keys that vary run to run and would break byte-identical output
VOLATILE_STATS = frozenset({"seconds"})


def _int_token(tok: str, line: int, col: int, source, what="vertex index") -> int:
    if not tok.isdigit():
        raise ParseError(f"expected a non-negative integer {what}, got {tok!r}",
                         line, col, source)
    return int(tok)


def _tokens(raw: str):
    """Yield ``(token, 1-based column)`` pairs."""
    col = 0
    for tok in raw.split():
        col = raw.index(tok, col)
        yield tok, col + 1
        col += len(tok)


def parse_facet_list(text: str, source=None) -> AdmissibleComplex:
    """Parse a facet-list document into an admissibility-checked complex.

    Raises :class:`ParseError` (with line and column) on malformed input and
    :class:`NotAdmissible` when the facets do not close up.
    """
    dim = None
    declared_n = None
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = list(_tokens(body))
        if not toks:
            continue
        head, hcol = toks[0]
        if head == "dim":
            if dim is not None:
                raise ParseError("duplicate 'dim' header", lineno, hcol, source)
            if facets:
                raise ParseError("'dim' must precede the facets", lineno, hcol, source)
            if len(toks) != 2:
                raise ParseError("expected 'dim <d>'", lineno, hcol, source)
            dim = _int_token(toks[1][0], lineno, toks[1][1], source, "dimension")
            if dim < 1:
                raise ParseError("dimension must be at least 1", lineno, toks[1][1], source)
            continue
        if head == "vertices":
            if declared_n is not None or facets:
                raise ParseError("'vertices' must appear once, before the facets",
                                 lineno, hcol, source)
            if len(toks) != 2:
                raise ParseError("expected 'vertices <n>'", lineno, hcol, source)
            declared_n = _int_token(toks[1][0], lineno, toks[1][1], source, "vertex count")
            continue
        if dim is None:
            raise ParseError("missing 'dim <d>' header before the first facet", lineno, hcol,
                             source)
        mult = 1
        if len(toks) >= 2 and toks[-2][0] == "x":
            mult = _int_token(toks[-1][0], lineno, toks[-1][1], source, "multiplicity")
            if mult < 1:
                raise ParseError("multiplicity must be at least 1", lineno, toks[-1][1], source)
            toks = toks[:-2]
        if len(toks) != dim + 1:
            raise ParseError(f"a {dim}-facet needs {dim + 1} vertices, got {len(toks)}",
                             lineno, hcol, source)
        verts = tuple(_int_token(t, lineno, c, source) for t, c in toks)
        if len(set(verts)) != len(verts):
            raise ParseError(f"repeated vertex in facet {verts}", lineno, hcol, source)
        if declared_n is not None:
            for (t, c), v in zip(toks, verts):
                if v >= declared_n:
                    raise ParseError(f"vertex {v} outside 0..{declared_n - 1}", lineno, c,
                                     source)
        facets.append((verts, mult))
    if dim is None:
        raise ParseError("missing 'dim <d>' header", source=source)
    if declared_n is None:
        declared_n = max((v for f, _ in facets for v in f), default=-1) + 1
    K = AdmissibleComplex(dim, declared_n, facets, check=False)
    report = check_admissible(K)
    if not report.ok:
        where = f"{source}: " if source is not None else ""
        raise NotAdmissible(f"{where}facet boundaries do not cancel", report.offending)
    return K


def write_facet_list(K: AdmissibleComplex) -> str:
    lines = [f"dim {K.dim}", f"vertices {K.vertex_count}"]
    for key, m in K.facets.items():
        body = " ".join(map(str, key))
        lines.append(body if m == 1 else f"{body} x {m}")
    return "\n".join(lines) + "\n"


def read_facet_file(path) -> AdmissibleComplex:
    path = Path(path)
    return parse_facet_list(path.read_text(encoding="utf-8"), source=str(path))


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, float):
        return format_rational(Fraction(obj))
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items() if k not in VOLATILE_STATS}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return str(obj)


def _chain_terms(c: Chain) -> list:
    return [[list(key), format_rational(v)] for key, v in c.items()]


def _certificate_json(phi: FluxFunction) -> dict:
    return {"dim": phi.dim,
            "values": [[list(k), format_rational(v)] for k, v in phi.values.items()]}


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def write_result(r: VolumeResult) -> str:
    """Deterministic JSON text for a volume result."""
    doc = {
        "kind": r.kind,
        "value": format_rational(r.value),
        "witness": {"dim": r.witness.dim, "terms": _chain_terms(r.witness)},
        "certificate": None if r.certificate is None else _certificate_json(r.certificate),
        "stats": _jsonable(r.stats),
    }
    return _dumps(doc)


def _load(text: str, source):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, source) from None


def _read_terms(entries, source):
    try:
        return [(tuple(int(v) for v in key), parse_rational(val)) for key, val in entries]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad simplex entry: {exc}", source=source) from None


def read_result(text: str, source=None) -> VolumeResult:
    doc = _load(text, source)
    try:
        kind, value = doc["kind"], parse_rational(doc["value"])
        wit = doc["witness"]
        witness = Chain(int(wit["dim"]), _read_terms(wit["terms"], source))
        cert = doc.get("certificate")
        certificate = None
        if cert is not None:
            certificate = FluxFunction(int(cert["dim"]), dict(_read_terms(cert["values"], source)))
        stats = doc.get("stats", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed result document: {exc}", source=source) from None
    if kind not in ("Fractional", "Integral"):
        raise ParseError(f"unknown result kind {kind!r}", source=source)
    return VolumeResult(kind, value, witness, certificate, stats)


def write_certificate(phi: FluxFunction, claimed=None) -> str:
    doc = _certificate_json(phi)
    if claimed is not None:
        doc["claimed"] = format_rational(claimed)
    return _dumps(doc)


def read_certificate(text: str, source=None) -> tuple[FluxFunction, Fraction | None]:
    """Return the flux and the claimed bound (``None`` if absent)."""
    doc = _load(text, source)
    try:
        phi = FluxFunction(int(doc["dim"]), dict(_read_terms(doc["values"], source)))
        claimed = doc.get("claimed")
        claimed = None if claimed is None else parse_rational(claimed)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed certificate: {exc}", source=source) from None
    return phi, claimed


CHECKPOINT_HEADER = "# gap-search checkpoint v1"


def write_checkpoint(path, processed: int, last: str | None, gaps) -> None:
    """Write a resume file.

    Lines: the header, ``processed <count>``, ``last <canonical code>``, then
    ``gap <canonical code> <V_Q> <V_Z>`` per gap found so far.  The file is
    replaced atomically.
    """
    lines = [CHECKPOINT_HEADER, f"processed {processed}", f"last {last or '-'}"]
    for code, vq, vz in gaps:
        lines.append(f"gap {code} {format_rational(vq)} {format_rational(vz)}")
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
    tmp.replace(path)


def read_checkpoint(path) -> tuple[int, str | None, list]:
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != CHECKPOINT_HEADER:
        raise ParseError("not a gap-search checkpoint", 1, 1, str(path))
    processed, last, gaps = 0, None, []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if not parts:
            continue
        try:
            if parts[0] == "processed" and len(parts) == 2:
                processed = int(parts[1])
            elif parts[0] == "last" and len(parts) == 2:
                last = None if parts[1] == "-" else parts[1]
            elif parts[0] == "gap" and len(parts) == 4:
                gaps.append((parts[1], parse_rational(parts[2]), parse_rational(parts[3])))
            else:
                raise ValueError(f"unrecognised entry {parts[0]!r}")
        except ValueError as exc:
            raise ParseError(str(exc), lineno, 1, str(path)) from None
    return processed, last, gaps
