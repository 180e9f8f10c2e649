import csv
import json
from fractions import Fraction

import gmpy2
import pytest

from zhalf import lfunc, survey
from zhalf.mpreal import DomainError, PrecisionContext, render

from oracles import smoothed_l_half


@pytest.fixture(scope="module")
def ctx30():
    return PrecisionContext(30)


class TestEnumeration:
    def test_examples(self):
        assert survey.enumerate_odd_squarefree(10) == [1, 3, 5, 7]
        assert survey.enumerate_odd_squarefree(1) == [1]
        assert survey.enumerate_odd_squarefree(20) == [1, 3, 5, 7, 11, 13, 15, 17, 19]

    def test_squares_excluded(self):
        ds = survey.enumerate_odd_squarefree(200)
        assert 9 not in ds and 25 not in ds and 45 not in ds and 99 not in ds

    def test_limit_validation(self):
        with pytest.raises(DomainError):
            survey.enumerate_odd_squarefree(0)


class TestRunSurvey:
    def test_limit_ten(self, ctx30):
        report = survey.run_survey(10, ctx30)
        assert report.total == 4
        assert report.certified_nonzero + report.undetermined == report.total
        assert report.proportion >= Fraction(7, 8)
        assert [r.d for r in report.records] == [1, 3, 5, 7]
        assert all(r.disc == 8 * r.d for r in report.records)

    def test_limit_one_against_oracle(self, ctx30):
        report = survey.run_survey(1, ctx30)
        assert report.total == 1
        row = report.records[0]
        assert row.certified and row.l_value.startswith("0.3736917129")
        ref = smoothed_l_half(8, 35)
        assert row.l_value[:20] == render(ref, 20)[:20]

    def test_rows_match_l_value(self, ctx30):
        report = survey.run_survey(30, ctx30)
        for row in report.records[:5]:
            direct = lfunc.l_value(8 * row.d, Fraction(1, 2), ctx30)
            assert row.l_value == render(direct, 30)
            assert row.certified == direct.is_nonzero()

    def test_worker_determinism(self, ctx30):
        one = survey.run_survey(200, ctx30, worker_count=1)
        eight = survey.run_survey(200, ctx30, worker_count=8)
        assert one == eight

    def test_worker_validation(self, ctx30):
        with pytest.raises(DomainError):
            survey.run_survey(10, ctx30, worker_count=0)


class TestReports:
    def test_csv_schema_and_determinism(self, ctx30, tmp_path):
        report = survey.run_survey(40, ctx30)
        p1 = tmp_path / "a.csv"
        p2 = tmp_path / "b.csv"
        survey.write_csv(report, str(p1))
        survey.write_csv(survey.run_survey(40, ctx30, worker_count=4), str(p2))
        assert p1.read_bytes() == p2.read_bytes()
        with open(p1) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["d", "disc", "l_value", "err", "certified"]
        assert len(rows) == report.total + 1
        assert rows[1][0] == "1" and rows[1][1] == "8"

    def test_json_summary(self, ctx30, tmp_path):
        report = survey.run_survey(40, ctx30)
        path = tmp_path / "r.json"
        survey.write_json(report, str(path))
        payload = json.loads(path.read_text())
        summary = payload["summary"]
        assert summary["total"] == report.total
        assert summary["certified_nonzero"] == report.certified_nonzero
        assert summary["undetermined"] == report.undetermined
        assert summary["proportion"] == str(report.proportion)
        assert len(payload["records"]) == report.total
        first = payload["records"][0]
        assert set(first) == {"d", "disc", "l_value", "err", "certified"}

    def test_certified_rows_stable_at_higher_digits(self, ctx30):
        report = survey.run_survey(20, ctx30)
        hi = PrecisionContext(50)
        for row in report.records:
            if not row.certified:
                continue
            again = lfunc.l_value(row.disc, Fraction(1, 2), hi)
            assert again.is_nonzero()
            assert (gmpy2.mpfr(row.l_value) > 0) == (again.value > 0)
