"""File formats: sweep CSV, certificate JSON and SVG plots.

All writers go through ``atomic_write`` (temporary file in the target
directory, then ``os.replace``), so a failed write never leaves a partial
file behind.

Certificate JSON schema (keys sorted, edges as ``[first, diff, length]``)::

    {"kind": str, "q1": int, "q2": int, "n": int,
     "edges": [[f, d, l], ...],          # every edge of the certificate
     "auxiliary": {...}}                 # role of each edge, see below

``auxiliary`` per kind:

* ``special_cycle``: ``closing``, ``path``, ``s``
* ``cycle_with_handle``: ``closing``, ``path``, ``handle``
* ``spoiled_path`` (``q1 == q2``): ``path``, ``spoiler``
* ``reduced_fano``: empty
* ``non_simple_cover``: ``covered``, ``covering``, ``classification``
* ``spoiled_path`` (``q1 > q2``): ``short``, ``covers``, ``spoiler``
* ``saw``: ``short``, ``covers``, ``saw``, ``orientation``
* ``spoiled_extension``: ``short``, ``covers``, ``extension``, ``extension_cover``
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from typing import Iterable, Sequence

from . import blocking_asym as ba
from . import blocking_sym as bs
from .aps import ArithmeticProgression, DomainError, ap_from_elements
from .coloring import ContractError
from .hypergraph import APHypergraph, induced_hypergraph
from .sampling import GroundSubset

CSV_HEADER = ("n", "q1", "q2", "r", "c", "p", "trials", "successes", "indeterminate",
              "phat", "ci_low", "ci_high", "seed")
PROB_FIELDS = ("p", "phat", "ci_low", "ci_high")


def atomic_write(path: str, data: str) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# CSV


def _fmt(key: str, value) -> str:
    if key in PROB_FIELDS:
        return "nan" if value is None or (isinstance(value, float) and math.isnan(value)) else f"{value:.6f}"
    if key == "c":
        return repr(float(value))
    return str(int(value))


def results_csv_text(rows: Iterable) -> str:
    """CSV text for sweep rows (objects or dicts), ordered by ``n`` then ``c``."""
    def get(r, k):
        return r[k] if isinstance(r, dict) else getattr(r, k)

    rows = sorted(rows, key=lambda r: (get(r, "n"), get(r, "c")))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([_fmt(k, get(r, k)) for k in CSV_HEADER])
    return buf.getvalue()


def write_results_csv(rows: Iterable, path: str) -> None:
    atomic_write(path, results_csv_text(rows))


def read_results_csv(path: str) -> list[dict]:
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise DomainError(f"unexpected CSV header {reader.fieldnames}")
        for rec in reader:
            row = {}
            for k in CSV_HEADER:
                row[k] = float(rec[k]) if k in PROB_FIELDS or k == "c" else int(rec[k])
            out.append(row)
    return out


# ---------------------------------------------------------------------------
# certificates


def _tri(edge) -> list[int]:
    try:
        return list(ap_from_elements(edge).as_triple())
    except DomainError as exc:
        raise DomainError(f"edge {edge} is not an arithmetic progression") from exc


def _untri(t) -> tuple:
    f, d, l = (int(x) for x in t)
    return ArithmeticProgression(f, d, l).elements()


def _jsonable(obj):
    if isinstance(obj, tuple) and obj and all(isinstance(x, int) for x in obj):
        return _tri(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    return obj


def certificate_to_dict(cert, n: int, q1: int, q2: int) -> dict:
    aux = cert.auxiliary() if hasattr(cert, "auxiliary") else {}
    return {
        "kind": cert.kind,
        "q1": int(q1),
        "q2": int(q2),
        "n": int(n),
        "edges": [_tri(e) for e in cert.edges()],
        "auxiliary": _jsonable(aux),
    }


def certificate_from_dict(d: dict):
    kind = d["kind"]
    aux = d.get("auxiliary", {})
    sym = d["q1"] == d["q2"]

    def es(key):
        return tuple(_untri(t) for t in aux[key])

    def apath():
        return ba.SimplePathAsym(es("short"), tuple(tuple(_untri(t) for t in cov) for cov in aux["covers"]))

    if kind == "special_cycle":
        return bs.SpecialCycle(bs.FairlySimpleCycle(_untri(aux["closing"]), bs.SimplePathSym(es("path"))))
    if kind == "cycle_with_handle":
        cyc = bs.FairlySimpleCycle(_untri(aux["closing"]), bs.SimplePathSym(es("path")))
        return bs.SimpleCycleWithHandle(cyc, _untri(aux["handle"]))
    if kind == "spoiled_path" and sym:
        return bs.SpoiledPath(bs.SimplePathSym(es("path")), _untri(aux["spoiler"]))
    if kind == "reduced_fano":
        return bs.ReducedFano(tuple(_untri(t) for t in d["edges"]))
    if kind == "non_simple_cover":
        return ba.NonSimpleCover(ba.Cover(_untri(aux["covered"]), es("covering")))
    if kind == "spoiled_path":
        return ba.SpoiledSimplePath(apath(), _untri(aux["spoiler"]))
    if kind == "saw":
        return ba.PathWithSaw(apath(), es("saw"), aux.get("orientation", "first"))
    if kind == "spoiled_extension":
        return ba.PathWithSpoiledExtension(apath(), _untri(aux["extension"]), es("extension_cover"))
    raise DomainError(f"unknown certificate kind {kind!r}")


def verify_certificate(cert, h: APHypergraph) -> bool:
    if isinstance(cert, bs.BlockingCertificateSym):
        return bs.verify_certificate_sym(cert, h)
    return ba.verify_certificate_asym(cert, h)


def certificate_host(d: dict) -> APHypergraph:
    """The AP hypergraph induced on the vertices named by a certificate dict."""
    verts = {v for t in d["edges"] for v in _untri(t)}
    lengths = (d["q1"],) if d["q1"] == d["q2"] else (d["q1"], d["q2"])
    return induced_hypergraph(GroundSubset.of(d["n"], verts), lengths)


def certificate_json_text(cert, host: APHypergraph, q1: int, q2: int) -> str:
    if not verify_certificate(cert, host):
        raise ContractError(f"refusing to emit an unverified {cert.kind} certificate")
    return json.dumps(certificate_to_dict(cert, host.n, q1, q2), sort_keys=True, indent=1) + "\n"


def emit_certificate_json(cert, host: APHypergraph, path: str, q1: int | None = None,
                          q2: int | None = None) -> None:
    """Write a verified certificate; ContractError if it does not verify against ``host``."""
    lens = host.lengths()
    q1 = q1 if q1 is not None else lens[0]
    q2 = q2 if q2 is not None else lens[-1]
    atomic_write(path, certificate_json_text(cert, host, q1, q2))


def load_certificate_json(path: str):
    """``(certificate, raw dict)`` read back from ``emit_certificate_json`` output."""
    with open(path, encoding="utf-8") as fh:
        d = json.load(fh)
    return certificate_from_dict(d), d


def reverify_certificate_json(path: str) -> bool:
    """Re-check a certificate file against the hypergraph its edges induce.

    Malformed content (non-progressions, an unknown kind, roles naming
    edges missing from ``edges``) makes the certificate invalid.
    """
    try:
        cert, d = load_certificate_json(path)
        if sorted(_tri(e) for e in cert.edges()) != sorted(list(t) for t in d["edges"]):
            return False
        return verify_certificate(cert, certificate_host(d))
    except (DomainError, KeyError, TypeError, ValueError):
        return False


# ---------------------------------------------------------------------------
# SVG


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def svg_plot_text(rows: Sequence[dict], width: int = 640, height: int = 400) -> str:
    """phat against c (log scale) per n, with Wilson interval bars."""
    pts = [r for r in rows if r["c"] > 0 and not math.isnan(r["phat"])]
    ml, mr, mt, mb = 60, 110, 20, 45
    pw, ph = width - ml - mr, height - mt - mb
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
           f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>']
    if pts:
        lo = math.log(min(r["c"] for r in pts))
        hi = math.log(max(r["c"] for r in pts))
        span = hi - lo or 1.0

        def X(c):
            return ml + pw * (math.log(c) - lo) / span

        def Y(v):
            return mt + ph * (1 - v)

        for v in (0, 0.25, 0.5, 0.75, 1):
            out.append(f'<text x="{ml - 6}" y="{Y(v) + 4:.1f}" text-anchor="end">{v:g}</text>')
        for c in sorted({r["c"] for r in pts}):
            out.append(f'<text x="{X(c):.1f}" y="{mt + ph + 15}" text-anchor="middle">{c:g}</text>')
        out.append(f'<text x="{ml + pw / 2}" y="{height - 8}" text-anchor="middle">c (log scale)</text>')
        out.append(f'<text x="14" y="{mt + ph / 2}" transform="rotate(-90 14 {mt + ph / 2})" '
                   f'text-anchor="middle">phat</text>')
        for k, n in enumerate(sorted({r["n"] for r in pts})):
            col = _PALETTE[k % len(_PALETTE)]
            rs = sorted((r for r in pts if r["n"] == n), key=lambda r: r["c"])
            line = " ".join(f'{X(r["c"]):.1f},{Y(r["phat"]):.1f}' for r in rs)
            out.append(f'<polyline points="{line}" fill="none" stroke="{col}"/>')
            for r in rs:
                x = X(r["c"])
                out.append(f'<line x1="{x:.1f}" y1="{Y(r["ci_low"]):.1f}" x2="{x:.1f}" '
                           f'y2="{Y(r["ci_high"]):.1f}" stroke="{col}"/>')
                out.append(f'<circle cx="{x:.1f}" cy="{Y(r["phat"]):.1f}" r="2.5" fill="{col}"/>')
            out.append(f'<text x="{ml + pw + 10}" y="{mt + 14 + 16 * k}" fill="{col}">n = {n}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg_plot(rows: Sequence[dict], path: str) -> None:
    atomic_write(path, svg_plot_text(rows))
