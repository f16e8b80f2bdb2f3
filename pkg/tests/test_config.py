import math

import pytest

from twistmodel.actuator.parameters import ActuatorGeometry, MaterialModel
from twistmodel.helper.config_file import ConfigError, load_config, parse_config
from twistmodel.numerics.newton import SolverSettings


class TestLoadConfig:
    def test_missing_default_file(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        config = load_config()
        assert config.geometry == ActuatorGeometry()
        assert config.material == MaterialModel()
        assert config.settings == SolverSettings()

    def test_missing_required_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / 'nope.ini', required=True)

    def test_file(self, tmp_path):
        path = tmp_path / 'actuator.ini'
        path.write_text('[geometry]\nfiber_angle_deg = 10\nlength_mm = 120\n\n[material]\npoisson_ratio = 0.45\n',
                        encoding='utf-8')
        config = load_config(path, required=True)
        assert config.geometry.fiber_angle_rad == pytest.approx(math.radians(10.0))
        assert config.geometry.winding_count == 30
        assert config.material.poisson_ratio == 0.45
        assert config.material.youngs_modulus_kpa == 125.0
        assert config.source == path


class TestParseConfig:
    def test_empty(self):
        assert parse_config('').geometry == ActuatorGeometry()

    def test_solver_section(self):
        config = parse_config('[solver]\ngradient_tol = 1e-10\nmax_iterations = 50\n')
        assert config.settings == SolverSettings(gradient_tol=1e-10, max_iterations=50)

    @pytest.mark.parametrize('text', [
        '[geometry]\ncolour = red\n',
        '[gripper]\nfingers = 3\n',
        '[geometry]\nlength_mm = long\n',
        '[geometry]\nwinding_count = 4.5\n',
        '[geometry]\nwall_thickness_mm = 20\n',
        '[geometry]\nfiber_angle_deg = 90\n',
        '[material]\npoisson_ratio = nan\n',
        '[solver]\nmax_iterations = 0\n',
        'length_mm = 3\n',
    ])
    def test_rejected(self, text):
        with pytest.raises(ConfigError):
            parse_config(text)
