import math

import numpy as np
import pytest

from svgreward.config import SCORER_URL_ENV, load_config
from svgreward.errors import InputFormatError
from svgreward.jsonio import dumps_canonical


class TestCanonicalJson:
    def test_sorted_keys_and_fixed_floats(self):
        out = dumps_canonical({"b": 1.0 / 3.0, "a": 2})
        assert out == '{"a": 2, "b": 0.333333333}'

    def test_infinity_sentinel(self):
        assert dumps_canonical({"psnr": math.inf}) == '{"psnr": "inf"}'
        assert dumps_canonical(-math.inf) == '"-inf"'

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            dumps_canonical(math.nan)

    def test_bool_none_nested(self):
        out = dumps_canonical({"x": [True, None, {"y": 70.0}]})
        assert out == '{"x": [true, null, {"y": 70}]}'

    def test_numpy_values(self):
        out = dumps_canonical({"v": np.array([0.5, 1.5]), "s": np.float64(0.25)})
        assert out == '{"s": 0.25, "v": [0.5, 1.5]}'

    def test_unserializable_rejected(self):
        with pytest.raises(ValueError):
            dumps_canonical({"x": object()})

    def test_pretty_mode_stable(self):
        obj = {"b": [1, 2], "a": {"c": 0.1}}
        assert dumps_canonical(obj, pretty=True) == dumps_canonical(obj, pretty=True)


class TestLoadConfig:
    def test_defaults(self):
        config = load_config(None, {})
        assert config.weights.as_tuple() == (0.1, 0.1, 0.6, 0.2)
        assert config.grpo.group_size == 8
        assert config.scorer_mode == "mock"
        assert config.raster_size == 256
        assert config.consistency_threshold == 0.8

    def test_file_values(self, tmp_path):
        path = tmp_path / "run.ini"
        path.write_text(
            "[grpo]\nclip_epsilon = 0.3\n[filter]\nconsistency_threshold = 0.55\n"
        )
        config = load_config(str(path), {})
        assert config.grpo.clip_epsilon == 0.3
        assert config.consistency_threshold == 0.55

    def test_flag_overrides_file(self, tmp_path):
        path = tmp_path / "run.ini"
        path.write_text("[render]\nraster_size = 512\n")
        config = load_config(str(path), {"raster_size": 32})
        assert config.raster_size == 32

    def test_env_sets_url_flag_wins(self, tmp_path, monkeypatch):
        monkeypatch.setenv(SCORER_URL_ENV, "http://env:1")
        config = load_config(None, {})
        assert config.scorer_url == "http://env:1"
        assert config.scorer_mode == "mock"  # url alone does not flip the mode
        config = load_config(None, {"scorer_url": "http://flag:2"})
        assert config.scorer_url == "http://flag:2"
        assert config.scorer_mode == "remote"

    def test_mock_flag_forces_mock(self, monkeypatch):
        monkeypatch.setenv(SCORER_URL_ENV, "http://env:1")
        config = load_config(None, {"mock": True})
        assert config.scorer_mode == "mock"

    def test_mock_flag_beats_url_flag(self):
        config = load_config(None, {"mock": True, "scorer_url": "http://flag:2"})
        assert config.scorer_mode == "mock"
        assert config.scorer_url == "http://flag:2"

    def test_remote_without_url_rejected(self, tmp_path):
        path = tmp_path / "run.ini"
        path.write_text("[scorer]\nmode = remote\n")
        with pytest.raises(InputFormatError):
            load_config(str(path), {})

    def test_unknown_section_and_key_rejected(self, tmp_path):
        path = tmp_path / "run.ini"
        path.write_text("[bogus]\nx = 1\n")
        with pytest.raises(InputFormatError):
            load_config(str(path), {})
        path.write_text("[weights]\nbogus = 1\n")
        with pytest.raises(InputFormatError):
            load_config(str(path), {})

    def test_unreachable_threshold_allowed(self):
        config = load_config(None, {"threshold": 1.01})
        assert config.consistency_threshold == 1.01

    def test_negative_weight_rejected(self):
        with pytest.raises(InputFormatError):
            load_config(None, {"weights_think": -0.5})
