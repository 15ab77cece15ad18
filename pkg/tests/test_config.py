import math

import pytest

from leoconst.config import (ExperimentConfig, apply_profile, db_to_linear,
                             dbm_to_watts, load_config, parse_config,
                             save_config, serialize_config)
from leoconst.errors import ParameterError


class TestDefaults:
    def test_reference_table_values(self):
        cfg = ExperimentConfig()
        assert cfg.link_carrier_frequency_hz == 5e9
        assert cfg.link_bandwidth_hz == 250e6
        assert cfg.link_sat_gain_dbi == 17.0
        assert cfg.link_dev_gain_dbi == 3.0
        assert cfg.link_rain_fading_db == -2.6
        assert cfg.link_rician_factor_db == 10.0
        assert cfg.link_noise_power_dbm == -106.0
        assert cfg.link_antennas == 16
        assert cfg.link_activity == 0.005
        assert cfg.link_device_density_per_km2 == 8e-5
        assert cfg.link_tx_power_dbw == 3.0
        assert cfg.link_sequence_length == 100
        assert cfg.link_coverage_angle_beta_deg == 45.0
        assert cfg.qos_eta_th == 0.9
        assert cfg.qos_capacity_th_bps == 80e6
        assert cfg.cost_sat_mass_kg == 227.0
        assert cfg.walker_phase_factor == 1
        assert cfg.time_step_s == 60.0
        assert cfg.grid_step_deg == 10.0
        # search box
        assert (cfg.bounds_h_min_km, cfg.bounds_h_max_km) == (500.0, 1800.0)
        assert (cfg.bounds_p_min, cfg.bounds_p_max) == (4, 20)
        assert (cfg.bounds_n_min, cfg.bounds_n_max) == (4, 20)
        assert (cfg.bounds_i_min_deg, cfg.bounds_i_max_deg) == (20.0, 60.0)
        # optimizer hyperparameters
        assert cfg.opt_population_size == 30
        assert cfg.opt_iterations == 50
        assert cfg.opt_mutation_threshold == 0.3
        assert (cfg.opt_alpha1, cfg.opt_alpha2) == (2.0, 1.0)
        assert (cfg.opt_rho1, cfg.opt_rho2) == (1000.0, 1000.0)

    def test_unit_conversions(self):
        cfg = ExperimentConfig()
        env = cfg.link_environment(600e3)
        assert env.sat_gain == pytest.approx(db_to_linear(17.0))
        assert env.sat_gain * env.dev_gain == pytest.approx(100.0)
        assert env.rain_loss == pytest.approx(10 ** (-0.26))
        assert env.noise_var_w == pytest.approx(dbm_to_watts(-106.0))
        assert env.noise_var_w == pytest.approx(2.51188643e-14, rel=1e-6)
        assert env.device_density_per_m2 == pytest.approx(8e-11)
        assert env.tx_power_w == pytest.approx(1.99526231, rel=1e-6)

    def test_bounds_in_si(self):
        b = ExperimentConfig().bounds()
        assert b.lower[0] == 500e3 and b.upper[0] == 1800e3
        assert b.lower[3] == pytest.approx(math.radians(20.0))


class TestProfiles:
    def test_paper_profile(self):
        cfg = apply_profile(ExperimentConfig(), "paper")
        assert cfg.grid_step_deg == 10.0
        assert cfg.time_step_s == 60.0
        assert cfg.link_coverage_angle_beta_deg == 45.0

    def test_desk_profile(self):
        cfg = apply_profile(ExperimentConfig(), "desk")
        assert cfg.grid_step_deg == 30.0
        assert cfg.time_step_s == 600.0
        assert cfg.link_coverage_angle_beta_deg == 90.0
        # QoS thresholds and the search box stay untouched
        assert cfg.qos_eta_th == 0.9
        assert cfg.bounds_h_max_km == 1800.0

    def test_unknown_profile(self):
        with pytest.raises(ParameterError):
            apply_profile(ExperimentConfig(), "quick")


class TestSerialization:
    def test_round_trip_identity(self):
        cfg = apply_profile(ExperimentConfig(), "desk")
        text = serialize_config(cfg)
        again = parse_config(text)
        assert again == cfg
        assert serialize_config(again) == text

    def test_dotted_keys(self):
        text = serialize_config(ExperimentConfig())
        assert "link.carrier_frequency_hz = 5000000000.0" in text
        assert "qos.eta_th = 0.9" in text
        assert "bounds.h_max_km = 1800.0" in text

    def test_partial_override(self):
        cfg = parse_config("qos.eta_th = 0.75\nopt.iterations = 5\n")
        assert cfg.qos_eta_th == 0.75
        assert cfg.opt_iterations == 5
        assert cfg.link_antennas == 16

    def test_comments_and_blanks(self):
        cfg = parse_config("# comment\n\nopt.seed = 7\n")
        assert cfg.opt_seed == 7

    def test_unknown_key(self):
        with pytest.raises(ParameterError):
            parse_config("link.warp_drive = 1\n")

    def test_malformed_line(self):
        with pytest.raises(ParameterError):
            parse_config("just some text\n")

    def test_seed_list(self):
        cfg = parse_config("run.seeds = 3,5,8\n")
        assert cfg.run_seeds == (3, 5, 8)

    def test_file_round_trip(self, tmp_path):
        cfg = apply_profile(ExperimentConfig(), "desk")
        path = tmp_path / "config.txt"
        save_config(cfg, str(path))
        assert load_config(str(path)) == cfg
