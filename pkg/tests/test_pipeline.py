"""Orchestration: input files, overrides, search, cache, CLI exit codes."""

import dataclasses
import json

import pytest

from hyperell.cli import main as cli_main
from hyperell.errors import ConfigurationError, NotSemistableError, ParseError
from hyperell.fixtures import CUBIC_QUARTIC, GENUS2_FIVE_BAD, GENUS4_OVERRIDE2
from hyperell.pipeline import CurveInput, run, search


@pytest.fixture(scope="module")
def small_curve():
    """The lowest-conductor everywhere-semistable curve a tiny search finds."""
    found = search(genus=2, coeff_bound=2, max_conductor=40_000, count=3,
                   seed=12)
    assert found
    return found[0]


@pytest.fixture(scope="module")
def small_report(small_curve):
    return run(small_curve)


def test_curve_input_roundtrip(tmp_path):
    ci = CurveInput.from_fixture(GENUS4_OVERRIDE2)
    path = tmp_path / "curve.json"
    ci.save(path)
    assert CurveInput.load(path) == ci
    cubic = CurveInput.from_fixture(CUBIC_QUARTIC)
    cubic.save(path)
    assert CurveInput.load(path) == cubic


def test_curve_input_rejects_unknown_fields(tmp_path):
    path = tmp_path / "curve.json"
    path.write_text('{"version": 1, "g": ["1"], "h": ["1"], "junk": true}')
    with pytest.raises(ParseError) as exc:
        CurveInput.load(path)
    assert "junk" in str(exc.value)


def test_truncated_curve_file_names_offset(tmp_path):
    path = tmp_path / "curve.json"
    path.write_text('{"version": 1, "g": ["1", ')
    with pytest.raises(ParseError) as exc:
        CurveInput.load(path)
    assert "byte offset" in str(exc.value)


def test_override_for_good_prime_rejected():
    ci = CurveInput.hyperelliptic(
        GENUS2_FIVE_BAD.g, GENUS2_FIVE_BAD.h,
        overrides={11: ((1, 1), 1)},
    )
    with pytest.raises(ConfigurationError):
        run(ci)


def test_override_conflicts_with_computable_prime():
    ci = CurveInput.hyperelliptic(
        GENUS2_FIVE_BAD.g, GENUS2_FIVE_BAD.h,
        overrides={3: ((1, 0, 2, 3), 1)},
    )
    with pytest.raises(ConfigurationError):
        run(ci)


def test_not_semistable_without_override_names_prime():
    ci = CurveInput.hyperelliptic(GENUS4_OVERRIDE2.g, GENUS4_OVERRIDE2.h)
    with pytest.raises(NotSemistableError) as exc:
        run(ci)
    assert exc.value.p == 2
    assert "override" in str(exc.value)


def test_cubic_requires_all_bad_primes_overridden():
    ci = CurveInput.cubic(CUBIC_QUARTIC.f,
                          overrides={2: ((1, 0, 2), 8)})
    with pytest.raises(NotSemistableError) as exc:
        run(ci)
    assert exc.value.p == 3
    ci = CurveInput.cubic(
        CUBIC_QUARTIC.f,
        overrides={2: ((1, 0, 2), 8), 3: ((1,), 12), 5: ((1,), 1)},
    )
    with pytest.raises(ConfigurationError):
        run(ci)


def test_search_deterministic_and_valid():
    a = search(genus=2, coeff_bound=2, max_conductor=40_000, count=3, seed=12)
    b = search(genus=2, coeff_bound=2, max_conductor=40_000, count=3, seed=12)
    assert [c.to_json_dict() for c in a] == [c.to_json_dict() for c in b]
    assert len(a) == 3
    other = search(genus=2, coeff_bound=2, max_conductor=40_000, count=3,
                   seed=13)
    assert [c.to_json_dict() for c in other] != [c.to_json_dict() for c in a]


def test_search_budget_returns_partial():
    found = search(genus=2, coeff_bound=2, max_conductor=2, count=5,
                   seed=0, budget=200)
    assert found == []


def test_searched_curve_runs_clean(small_curve, small_report):
    assert small_report.conductor <= 40_000
    assert small_report.fe.verdict in ("verified", "not_verified",
                                       "inconclusive")
    assert small_report.fe.verified
    assert {"validate", "bad_primes", "counting", "fe_check"} <= set(
        small_report.timings
    )


def test_run_deterministic_across_threads(small_curve, small_report):
    rep2 = run(small_curve, threads=3)
    assert rep2.coefficient_checksum == small_report.coefficient_checksum
    assert rep2.fe.residuals == small_report.fe.residuals
    assert rep2.fe.root_number == small_report.fe.root_number


def test_cache_reuse_bit_identical(small_curve, small_report, tmp_path):
    cache = tmp_path / "series.json"
    first = run(small_curve, cache_path=cache)
    assert cache.exists()
    second = run(small_curve, cache_path=cache)
    assert second.timings["counting"] == 0.0
    assert second.fe == first.fe
    assert second.coefficient_checksum == first.coefficient_checksum


def test_report_json_shape(small_report, tmp_path):
    path = tmp_path / "report.json"
    small_report.save(path)
    data = json.loads(path.read_text())
    assert data["conductor"] == str(small_report.conductor)
    assert data["fe"]["verdict"] == "verified"
    assert len(data["bad_primes"]) == len(small_report.bad_primes)
    ps = [b["p"] for b in data["bad_primes"]]
    assert len(ps) == len(set(ps))


def test_cli_exit_codes(tmp_path, small_curve, capsys):
    curve_path = tmp_path / "curve.json"
    small_curve.save(curve_path)
    out_path = tmp_path / "report.json"
    assert cli_main(["analyze", str(curve_path), "--out", str(out_path)]) == 0
    assert out_path.exists()
    capsys.readouterr()

    # wrong local data: the symmetry genuinely fails for both signs and
    # the exit code is distinct from a crash
    wrong = tmp_path / "wrong.json"
    CurveInput.cubic(CUBIC_QUARTIC.f,
                     overrides={2: ((1,), 1), 3: ((1,), 1)}).save(wrong)
    assert cli_main(["analyze", str(wrong)]) == 2
    capsys.readouterr()

    # non-semistable without override
    ns = tmp_path / "ns.json"
    CurveInput.hyperelliptic(GENUS4_OVERRIDE2.g, GENUS4_OVERRIDE2.h).save(ns)
    assert cli_main(["analyze", str(ns)]) == 3
    capsys.readouterr()

    # malformed input
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli_main(["analyze", str(bad)]) == 4
    missing = tmp_path / "missing.json"
    assert cli_main(["analyze", str(missing)]) == 4
    capsys.readouterr()


def test_cli_search_writes_curves(tmp_path, capsys):
    out = tmp_path / "curves.json"
    code = cli_main([
        "search", "--genus", "2", "--coeff-bound", "2",
        "--max-conductor", "40000", "--count", "2", "--seed", "12",
        "--out", str(out),
    ])
    assert code == 0
    capsys.readouterr()
    data = json.loads(out.read_text())
    assert len(data["curves"]) == 2
    for entry in data["curves"]:
        CurveInput.from_json_dict(entry)


def test_forced_small_M_is_rejected(small_curve):
    tiny = dataclasses.replace(small_curve, M=40)
    from hyperell.errors import InsufficientMError

    with pytest.raises(InsufficientMError):
        run(tiny)
