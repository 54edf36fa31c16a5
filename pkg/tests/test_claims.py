"""
Tests for the claims ledger
"""

import json
import logging
from fractions import Fraction

import pytest

from src.q_dedekind.claims import (
    CLAIM_IDS,
    CSV_COLUMNS,
    ClaimInstance,
    ClaimReport,
    Sweep,
    expected_verdict,
    get_claim,
    load_expected_verdicts,
    resolve_q,
    verify_all,
    verify_claim,
)
from src.q_dedekind.config import Config
from src.q_dedekind.exceptions import PreconditionError, ResourceLimitError, UnknownClaimError


class TestRegistry:
    """Test claim registration and the expected-verdict table"""

    def test_claim_ids(self):
        """Test that every claim is registered in ledger order"""
        assert CLAIM_IDS == (
            "measure-additivity",
            "eq1",
            "eq2",
            "eq3",
            "eq4",
            "restricted-sum",
            "subtraction-vs-inparticular",
            "eq5-A",
            "eq5-B",
            "kummer",
            "oracle",
            "series-specialization",
        )

    def test_table_covers_every_claim(self):
        """Test that the shipped table has a rule set per claim"""
        table = load_expected_verdicts()

        assert table["version"] == 1
        assert set(table["claims"]) == set(CLAIM_IDS)
        for rules in table["claims"].values():
            assert rules["default"] in ("holds", "fails", "n/a")

    def test_unknown_claim(self):
        """Test that unknown ids are rejected"""
        with pytest.raises(UnknownClaimError):
            get_claim("eq9")
        with pytest.raises(UnknownClaimError):
            verify_claim("nope")

    def test_expected_verdict_rules(self):
        """Test that the first matching condition wins"""
        rules = load_expected_verdicts()["claims"]["eq5-A"]

        assert expected_verdict(rules, frozenset()) == "fails"
        assert expected_verdict(rules, frozenset({"zero-correction"})) == "holds"
        assert expected_verdict(rules, frozenset({"zero-correction", "skipped-indices"})) == "n/a"


class TestResolveQ:
    """Test q tokens"""

    def test_relative_tokens(self):
        """Test the 1+p, 1-p and 1+p^2 forms"""
        assert resolve_q("1+p", 3) == 4
        assert resolve_q("1-p", 5) == -4
        assert resolve_q("1+p^2", 3) == 10

    def test_rational_tokens(self):
        """Test num/den and integer tokens"""
        assert resolve_q("4/3", 3) == Fraction(4, 3)
        assert resolve_q("2", 5) == 2
        assert resolve_q(7, 3) == 7

    def test_bad_token(self):
        """Test that unreadable tokens are precondition errors"""
        with pytest.raises(PreconditionError):
            resolve_q("abc", 3)


class TestVerifyClaim:
    """Test claim verification over small sweeps"""

    def test_measure_axioms(self):
        """Test total mass and additivity at p = 3 for the three default q"""
        report = verify_claim("measure-additivity", Sweep.of(p=(3,), maxN=(2,)))

        assert report.summary == {"pass": 12, "fail": 0, "skipped": 0}
        assert {i.params["q"] for i in report.instances} == {4, 10, -2}
        assert report.verdict == "holds"
        assert report.ok

    def test_measure_resource_cap(self):
        """Test that an over-cap level aborts the run"""
        with pytest.raises(ResourceLimitError):
            verify_claim("measure-additivity", Sweep.of(p=(3,), maxN=(3,)),
                         Config(max_points=20))

    def test_weighted_sum_holds(self):
        """Test the weighted-sum rewrite"""
        report = verify_claim("eq1", Sweep.of(p=(3,), q=("2",), k=(2, 3, 4), m=(1,)))

        assert report.verdict == "holds"
        assert all(i.exact_equal for i in report.instances)
        assert {i.params["regime"] for i in report.instances} == {"p|k", "p∤k"}

    def test_distribution_even_witness(self):
        """Test that the default d list adds an even-modulus witness that fails"""
        report = verify_claim("eq3", Sweep.of(q=("2",), n=(0, 1), x=(0,)))
        witness = report.instances[-1]

        assert witness.params["d"] == 2
        assert witness.verdict == "fails-as-expected"
        assert witness.lhs == Fraction(-1, 2)
        assert witness.rhs == Fraction(-3, 5)
        assert report.verdict == "fails-as-expected"
        assert all(i.verdict == "holds" for i in report.instances[:-1])

    def test_distribution_without_witness(self):
        """Test that an explicit d list suppresses the witness"""
        report = verify_claim("eq3", Sweep.of(q=("2",), d=(3,), n=(1,), x=(0,)))

        assert len(report.instances) == 1
        assert report.verdict == "holds"

    def test_theorem_reading_a_misses_correction(self):
        """Test that reading A fails by the correction term"""
        report = verify_claim("eq5-A", Sweep.of(p=(3,), q=("2",), k=(2,), m=(1,)))

        assert report.verdict == "fails-as-expected"
        assert report.ok
        assert len(report.discrepancies()) == 1

    def test_theorem_reading_b_holds(self):
        """Test that reading B satisfies the identity term by term"""
        report = verify_claim("eq5-B", Sweep.of(p=(3,), q=("2",), k=(2, 4), m=(1,)))

        assert report.verdict == "holds"
        assert report.summary["fail"] == 0
        assert all(i.exact_equal for i in report.instances)

    def test_theorem_exclude_policy_is_recorded(self):
        """Test that skipped indices turn the expectation into n/a"""
        sweep = Sweep.of(p=(3,), q=("2",), k=(4,), h=(1,), m=(1,), skip_policy=("exclude",))
        (instance,) = verify_claim("eq5-B", sweep).instances

        assert instance.expected == "n/a"
        assert instance.verdict == "recorded"
        assert instance.skipped_indices == (3,)
        assert instance.to_dict()["skipped_indices"] == [3]

    def test_subtraction_gap(self):
        """Test that the restricted sum differs from reading B"""
        report = verify_claim(
            "subtraction-vs-inparticular", Sweep.of(p=(3,), q=("2",), N=(2,), m=(1,))
        )

        assert [i.params["a"] for i in report.instances] == [1]
        assert report.verdict == "fails-as-expected"

    def test_padic_claims_hold(self):
        """Test the restricted sum, series and Kummer claims on small sweeps"""
        config = Config(precision=6)
        sweeps = {
            "restricted-sum": Sweep.of(p=(3,), N=(2,), a=(1,), m=(1,)),
            "series-specialization": Sweep.of(p=(3,), a=(1,), m=(1,), K=(4,)),
            "kummer": Sweep.of(p=(3,), a=(1,), m=(1,), c=(0, 1)),
        }
        for claim_id, sweep in sweeps.items():
            assert verify_claim(claim_id, sweep, config).verdict == "holds"

    def test_oracle_claim(self):
        """Test the Riemann-sum oracle claim at the threshold"""
        config = Config(oracle_threshold=4)
        sweep = Sweep.of(family=("modified",), m=(1,), maxN=(4,))
        (instance,) = verify_claim("oracle", sweep, config).instances

        assert instance.verdict == "holds"
        assert instance.vp_diff == 4

    def test_precondition_failures_are_skipped(self, caplog):
        """Test that out-of-domain instances are skipped and logged"""
        with caplog.at_level(logging.WARNING):
            report = verify_claim("eq2", Sweep.of(p=(3,), q=("2",), k=(2,), m=(2,)))

        assert report.summary == {"pass": 0, "fail": 0, "skipped": 1}
        assert report.instances[0].verdict == "skipped"
        assert "m + 1" in report.instances[0].skipped_reason
        assert "Skipping eq2 instance" in caplog.text

    def test_parallel_reports_are_identical(self):
        """Test that thread count does not change the report"""
        sweep = Sweep.of(p=(3,), q=("2", "1+p"), k=(2, 4, 5), m=(1,))
        serial = verify_claim("eq5-B", sweep, Config(parallelism=1))
        parallel = verify_claim("eq5-B", sweep, Config(parallelism=4))

        assert serial.to_json() == parallel.to_json()
        assert serial.to_csv() == parallel.to_csv()


class TestReports:
    """Test report serialization"""

    def test_json_key_order(self):
        """Test the field order of reports and instances"""
        report = verify_claim("eq1", Sweep.of(p=(3,), q=("2",), k=(2,), m=(1,)))
        data = json.loads(report.to_json())

        assert list(data) == ["claim", "normalizations", "instances", "summary", "verdict"]
        assert list(data["instances"][0]) == [
            "params", "lhs", "rhs", "exact_equal", "vp_diff", "expected", "verdict",
        ]
        assert data["instances"][0]["params"]["q"] == "2/1"
        assert data["normalizations"]

    def test_csv_header(self):
        """Test CSV output"""
        instance = ClaimInstance({"p": 3}, "holds", "holds", Fraction(1, 2), Fraction(1, 2),
                                 True, float("inf"))
        report = ClaimReport("eq1", (), (instance,))
        lines = report.to_csv().splitlines()

        assert lines[0] == ",".join(CSV_COLUMNS)
        assert lines[1] == "eq1,p=3,1/2,1/2,True,inf,holds,holds,"
        assert report.to_csv(header=False).splitlines() == lines[1:]

    def test_unexpected_verdict(self):
        """Test that an unexpected instance makes the report not ok"""
        instance = ClaimInstance({}, "holds", "unexpected-fail", exact_equal=False)
        report = ClaimReport("eq1", (), (instance,))

        assert report.summary == {"pass": 0, "fail": 1, "skipped": 0}
        assert report.verdict == "unexpected"
        assert not report.ok


class TestDefaultLedger:
    """Test every claim over its default sweep"""

    def test_every_claim_matches_expectations(self):
        """Test every default sweep against its expected verdicts, serially and in parallel"""
        serial = verify_all(config=Config(parallelism=1))
        parallel = verify_all(config=Config(parallelism=4))

        assert [r.claim for r in serial] == list(CLAIM_IDS)
        for one, four in zip(serial, parallel):
            assert one.ok, f"{one.claim}: {one.verdict}"
            assert one.instances
            assert one.to_json() == four.to_json()

    def test_default_verdicts(self):
        """Test the headline verdicts of the DC-sum identity under both readings"""
        verdicts = {cid: verify_claim(cid).verdict for cid in ("eq2", "eq5-A", "eq5-B")}

        assert verdicts["eq5-A"] == "fails-as-expected"
        assert verdicts["eq5-B"] == "holds"
        assert verdicts["eq2"] == "holds"
