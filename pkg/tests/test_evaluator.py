import math

import pytest

from leoconst.config import ExperimentConfig, apply_profile
from leoconst.errors import ParameterError
from leoconst.evaluator import evaluate_design, make_evaluator
from leoconst.optim import DesignVector
from leoconst.runner import format_items


def desk_config():
    return apply_profile(ExperimentConfig(), "desk")


def paper_design():
    return DesignVector(altitude_m=1589e3, planes=6.0, sats_per_plane=8.0,
                        inclination_rad=math.radians(41.0))


class TestEvaluateDesign:
    def test_reference_design_report(self):
        report = evaluate_design(desk_config(), paper_design())
        assert report.planes == 6 and report.sats_per_plane == 8
        assert 0.0 <= report.eta_min <= 1.0
        assert report.cost.constellation_total == pytest.approx(66.28, abs=0.01)
        assert report.capacity.required_count > 0.0
        assert report.feasible == (report.p1 == 0.0 and report.p2 == 0.0)

    def test_out_of_bounds_design_rejected(self):
        with pytest.raises(ParameterError):
            evaluate_design(desk_config(), DesignVector(1589e3, 6.0, 0.0, 0.7))
        with pytest.raises(ParameterError):
            evaluate_design(desk_config(), DesignVector(100e3, 6.0, 8.0, 0.7))

    def test_rounding_at_evaluation(self):
        report = evaluate_design(desk_config(),
                                 DesignVector(1589e3, 6.4, 7.6, 0.7))
        assert report.planes == 6 and report.sats_per_plane == 8

    def test_byte_identical_repeat(self):
        cfg = desk_config()
        a = format_items(evaluate_design(cfg, paper_design()).to_items())
        b = format_items(evaluate_design(cfg, paper_design()).to_items())
        assert a == b

    def test_violations_match_report_fields(self):
        cfg = desk_config()
        report = evaluate_design(cfg, paper_design())
        expected_p1 = max(cfg.qos_eta_th - report.eta_min, 0.0)
        expected_p2 = max(report.capacity.required_count - report.min_visible,
                          0.0)
        assert report.p1 == pytest.approx(expected_p1)
        assert report.p2 == pytest.approx(expected_p2)


class TestRecordEvaluator:
    def test_counts_calls_and_caches(self):
        ev = make_evaluator(desk_config())
        r1 = ev(paper_design())
        r2 = ev(paper_design())
        assert ev.calls == 2
        assert r1.objective == r2.objective
        assert r1 == r2

    def test_record_carries_design(self):
        ev = make_evaluator(desk_config())
        d = DesignVector(1589e3, 6.4, 7.6, 0.7)
        rec = ev(d)
        assert rec.design == d

    def test_equivalent_rounded_designs_share_outcome(self):
        ev = make_evaluator(desk_config())
        a = ev(DesignVector(1589e3, 6.4, 8.0, 0.7))
        b = ev(DesignVector(1589e3, 5.6, 8.0, 0.7))
        assert a.objective == b.objective
        assert a.eta_min == b.eta_min
