import csv
import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coarse_wiring.experiments import (
    CSV_COLUMNS,
    MissingSample,
    RelationSample,
    certificate_row,
    check_precedes,
    collapse_relation_sample,
    csv_verdicts_consistent,
    oracle_row,
    read_points,
    recompute_verdict,
    rows_to_csv,
    run_separation_experiment,
)
from coarse_wiring.families import PAPER, build_X, build_Y, toy_config
from coarse_wiring.search import SearchLimits
from coarse_wiring.textio import read_wiring
from coarse_wiring.wiring import validate, volume


def test_precedes_examples():
    pts = [(n, n * n) for n in range(1, 6)]
    assert check_precedes(RelationSample(pts, pts, 1))
    f = [(10, 100), (100, 10_000)]
    g = [(30, 30), (300, 300)]
    assert not check_precedes(RelationSample(f, g, 3))


def test_precedes_missing_sample():
    with pytest.raises(MissingSample):
        check_precedes(RelationSample([(1, 1)], [(1, 1)], 2))


def test_sample_validation():
    with pytest.raises(ValueError, match="increasing"):
        RelationSample([(2, 1), (1, 1)], [], 1)
    with pytest.raises(ValueError, match="non-negative"):
        RelationSample([(1, -1)], [], 1)


values = st.lists(st.integers(0, 10**6), min_size=1, max_size=8)


@given(values)
def test_precedes_reflexive(vals):
    pts = list(enumerate(vals, start=1))
    assert check_precedes(RelationSample(pts, pts, 1))


@given(values, st.lists(st.integers(0, 1000), min_size=1, max_size=8), st.integers(1, 4))
def test_precedes_monotone_in_C(fvals, increments, C):
    # g is non-decreasing and sampled at every C*n and (C+1)*n
    f = list(enumerate(fvals, start=1))
    top = (C + 1) * len(f)
    g, acc = [], 0
    for n in range(1, top + 1):
        acc += increments[n % len(increments)]
        g.append((n, acc))
    if check_precedes(RelationSample(f, g, C)):
        assert check_precedes(RelationSample(f, g, C + 1))


def test_collapse_relation_holds():
    sample = collapse_relation_sample(toy_config(2), [2, 3, 4, 5])
    assert check_precedes(sample)
    assert all(fv <= gv for (_, fv), (_, gv) in zip(sample.f, sample.g))


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_oracle_row_toy2(tmp_path):
    cfg = toy_config(2)
    row = oracle_row(2, cfg, witness_dir=tmp_path)
    assert (row.k, row.vol_X, row.lower_target) == (2, 18, 34)
    assert row.upper_construction == "collapse" and row.upper_volume == 9
    assert row.evidence_kind == "oracle-infeasible-within-cap:target"
    assert row.evidence_value == 34
    assert row.verdict
    w = read_wiring(tmp_path / "collapse_n2.wiring", build_X(2, cfg), build_Y(2, cfg))
    assert validate(w) == [] and volume(w) == 9


def test_oracle_row_with_search():
    row = oracle_row(2, toy_config(2, offset=1))
    assert (row.lower_target, row.evidence_value, row.upper_volume) == (10, 10, 5)
    assert row.verdict and row.evidence.status.value == "infeasible-within-cap"


def test_oracle_row_horizon_binding():
    row = oracle_row(2, toy_config(2, offset=1), horizon=6)
    assert row.evidence_kind == "oracle-infeasible-within-cap:horizon"
    assert row.evidence_value == 7
    assert not row.verdict


def test_oracle_row_refusals():
    cfg = toy_config(2)
    assert oracle_row(1, cfg).evidence_kind == "refused:f(n)<2"
    row = oracle_row(3, cfg, horizon=60, limits=SearchLimits(max_guest_vertices=4))
    assert row.evidence_kind == "refused:solver" and not row.verdict


def test_certificate_row_paper():
    row = certificate_row(2, PAPER)
    assert row.lower_target == 2 * 2**32 + 1
    assert row.evidence_kind == "arithmetic-certificate"
    assert row.upper_volume == 131073
    assert row.verdict
    assert all(r.ok for r in row.evidence)


def test_certificate_row_toy_is_not_certified():
    # the tower estimates fail on small schedules, and the row says so
    row = certificate_row(3, toy_config(2))
    assert not row.verdict and row.evidence_value == 0


def test_empty_experiment():
    assert rows_to_csv(run_separation_experiment(PAPER, [], "certificate")) == ",".join(CSV_COLUMNS) + "\n"
    with pytest.raises(ValueError):
        run_separation_experiment(PAPER, [2], "guess")


def test_csv_verdicts_recomputable():
    rows = run_separation_experiment(toy_config(2), [4, 2, 1, 3], "oracle")
    text = rows_to_csv(rows)
    recs = parse_csv(text)
    assert [int(r["n"]) for r in recs] == [1, 2, 3, 4]
    assert csv_verdicts_consistent(text)
    tampered = text.replace(",true\n", ",false\n", 1)
    assert not csv_verdicts_consistent(tampered)
    cert = rows_to_csv(run_separation_experiment(PAPER, range(2, 7), "certificate"))
    assert csv_verdicts_consistent(cert)
    assert all(r["verdict"] == "true" for r in parse_csv(cert))


def test_recompute_verdict():
    assert recompute_verdict(34, 34, 9, 18)
    assert not recompute_verdict(33, 34, 9, 18)
    assert not recompute_verdict(34, 34, 37, 18)
    assert not recompute_verdict(34, 34, 0, 18)


def test_read_points(tmp_path):
    p = tmp_path / "f.csv"
    p.write_text("n,value\n1,5\n2,7\n\n", encoding="utf-8")
    assert read_points(p) == [(1, 5), (2, 7)]
