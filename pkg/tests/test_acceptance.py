"""Acceptance criteria 1-9, one test each.

Each test records a PASS/FAIL line that is repeated in the terminal
summary.  The statistical criteria keep their CSV so that criterion 9 can
re-run them and compare bytes.  Run ``python tests/test_acceptance.py
[out_dir]`` to print the lines without pytest.
"""

import sys

import pytest

import acceptance_lib as acc

CSV = {}


def _check(label, verdict, tmp_path_factory=None, key=None):
    acc.ok_line(label, verdict)
    if key is not None:
        CSV[key] = verdict.csv
        if tmp_path_factory is not None and verdict.csv:
            out = tmp_path_factory.getbasetemp() / f"criterion_{key}.csv"
            out.write_text(verdict.csv)
    assert verdict.ok, verdict.detail


def test_criterion_1_counts_and_degrees():
    _check("1 AP counts and degrees", acc.criterion_1())


def test_criterion_2_vdw_boundary():
    _check("2 boundary w(3,3) = 9", acc.criterion_2())


@pytest.mark.slow
def test_criterion_3_symmetric_cross_check(tmp_path_factory):
    _check("3 symmetric cross-check", acc.criterion_3(), tmp_path_factory, 3)


@pytest.mark.slow
def test_criterion_3_dense_supplement():
    _check("3+ symmetric cross-check, dense", acc.criterion_3_dense())


@pytest.mark.slow
def test_criterion_4_asymmetric_cross_check(tmp_path_factory):
    _check("4 asymmetric cross-check", acc.criterion_4(), tmp_path_factory, 4)


@pytest.mark.slow
def test_criterion_5_lemma_suites():
    _check("5 lemma suites", acc.criterion_5())


@pytest.mark.slow
def test_criterion_6_threshold_location(tmp_path_factory):
    _check("6 symmetric threshold location", acc.criterion_6(), tmp_path_factory, 6)


@pytest.mark.slow
def test_criterion_7_isolation(tmp_path_factory):
    _check("7 mostly independent (4,3)", acc.criterion_7(), tmp_path_factory, 7)


@pytest.mark.slow
def test_criterion_8_census_below_threshold(tmp_path_factory):
    _check("8 census below threshold", acc.criterion_8(), tmp_path_factory, 8)


@pytest.mark.slow
def test_criterion_9_reproducibility():
    first = {}
    for k, fn in ((3, acc.criterion_3), (4, acc.criterion_4), (6, acc.criterion_6),
                  (7, acc.criterion_7), (8, acc.criterion_8)):
        first[k] = CSV[k] if k in CSV else fn().csv
    _check("9 byte-identical re-runs", acc.criterion_9(first))


if __name__ == "__main__":
    sys.exit(0 if acc.run_all(sys.argv[1] if len(sys.argv) > 1 else None) else 1)
