import json
import math
import os

import pytest

from rvdw.aps import DomainError
from rvdw.blocking_asym import extract_blocking_asym
from rvdw.blocking_sym import extract_blocking_sym
from rvdw.coloring import ContractError, asym_2_colorable
from rvdw.hypergraph import full_hypergraph, induced_hypergraph
from rvdw.montecarlo import SweepRow
from rvdw.sampling import GroundSubset
from rvdw.serialize import (CSV_HEADER, atomic_write, certificate_from_dict, certificate_host,
                            certificate_to_dict, emit_certificate_json, load_certificate_json,
                            read_results_csv, results_csv_text, reverify_certificate_json,
                            svg_plot_text, verify_certificate, write_results_csv)


def _row(n, c, k, seed=7):
    return SweepRow(n, 3, 3, 2, c, min(1.0, c * n ** -0.5), 200, k, 0, k / 200, 0.1, 0.9, seed)


GOLDEN = (
    "n,q1,q2,r,c,p,trials,successes,indeterminate,phat,ci_low,ci_high,seed\n"
    "512,3,3,2,0.5,0.022097,200,3,0,0.015000,0.100000,0.900000,7\n"
    "512,3,3,2,2.0,0.088388,200,120,0,0.600000,0.100000,0.900000,7\n"
)


def test_csv_golden_and_order():
    text = results_csv_text([_row(512, 2.0, 120), _row(512, 0.5, 3)])
    assert text == GOLDEN
    assert tuple(text.splitlines()[0].split(",")) == CSV_HEADER


def test_csv_round_trip(tmp_path):
    path = tmp_path / "out.csv"
    write_results_csv([_row(1024, 1.0, 50), _row(512, 1.0, 20)], path)
    rows = read_results_csv(path)
    assert [(r["n"], r["c"], r["successes"]) for r in rows] == [(512, 1.0, 20), (1024, 1.0, 50)]
    assert results_csv_text(rows) == path.read_text()
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    with pytest.raises(DomainError):
        read_results_csv(bad)


def test_nan_row_written_as_nan():
    r = _row(512, 1.0, 0)
    r.phat = r.ci_low = r.ci_high = math.nan
    assert ",nan,nan,nan," in results_csv_text([r])


def test_atomic_write_leaves_no_partial_file(tmp_path):
    path = tmp_path / "x.txt"
    atomic_write(path, "hello")
    assert path.read_text() == "hello"

    with pytest.raises(TypeError):
        atomic_write(path, 12345)  # not text: the write fails
    assert path.read_text() == "hello"
    assert [p.name for p in tmp_path.iterdir()] == ["x.txt"]


def test_symmetric_certificate_round_trip(tmp_path):
    h = full_hypergraph(9, (3,))
    cert = extract_blocking_sym(h)
    path = tmp_path / "cert.json"
    emit_certificate_json(cert, h, path)
    loaded, raw = load_certificate_json(path)
    assert loaded == cert
    assert raw["kind"] == cert.kind and raw["q1"] == raw["q2"] == 3 and raw["n"] == 9
    assert all(len(t) == 3 for t in raw["edges"])
    assert reverify_certificate_json(path)
    assert verify_certificate(loaded, certificate_host(raw))


def test_asymmetric_certificate_round_trip(tmp_path):
    import random
    rng = random.Random(43)
    for _ in range(400):
        n = rng.randint(20, 80)
        els = [k for k in range(1, n + 1) if rng.random() < rng.uniform(0.5, 0.85)]
        h = induced_hypergraph(GroundSubset.of(n, els), (4, 3))
        if asym_2_colorable(h).not_colorable:
            break
    cert = extract_blocking_asym(h)
    d = certificate_to_dict(cert, h.n, 4, 3)
    assert certificate_from_dict(json.loads(json.dumps(d))) == cert
    path = tmp_path / "a.json"
    emit_certificate_json(cert, h, path, 4, 3)
    assert reverify_certificate_json(path)


def test_tampered_certificate_fails(tmp_path):
    h = full_hypergraph(9, (3,))
    cert = extract_blocking_sym(h)
    path = tmp_path / "cert.json"
    emit_certificate_json(cert, h, path)
    raw = json.loads(path.read_text())
    # drop an edge: the auxiliary data no longer matches a structure
    key = next(k for k in ("path", "closing", "spoiler") if k in raw["auxiliary"])
    if key == "path":
        raw["auxiliary"]["path"] = raw["auxiliary"]["path"][:1]
    else:
        raw["auxiliary"][key] = [1, 1, 3]
    path.write_text(json.dumps(raw))
    assert not reverify_certificate_json(path)


def test_refuses_to_emit_unverified(tmp_path):
    h = full_hypergraph(9, (3,))
    cert = extract_blocking_sym(h)
    other = full_hypergraph(9, (3,)).subhypergraph([0])
    with pytest.raises((ContractError, DomainError)):
        emit_certificate_json(cert, other, tmp_path / "c.json")
    assert not os.path.exists(tmp_path / "c.json")


def test_unknown_kind():
    with pytest.raises(DomainError):
        certificate_from_dict({"kind": "mystery", "q1": 3, "q2": 3, "n": 5, "edges": [], "auxiliary": {}})


def test_svg_plot():
    rows = read_results_csv_like([_row(512, 0.5, 3), _row(512, 2.0, 120), _row(1024, 1.0, 40)])
    svg = svg_plot_text(rows)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert "n = 512" in svg and "n = 1024" in svg
    assert svg_plot_text([]).count("<polyline") == 0


def read_results_csv_like(rows):
    import csv, io
    return [{k: (float(v) if k in ("c", "p", "phat", "ci_low", "ci_high") else int(v)) for k, v in r.items()}
            for r in csv.DictReader(io.StringIO(results_csv_text(rows)))]
