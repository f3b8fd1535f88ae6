import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lperceptron.config import PRESETS, ExperimentConfig, preset
from lperceptron.errors import ConfigError


def test_wbcd_preset_values():
    h = preset("wbcd-lp").hyperparameters()
    assert (h.p1, h.p2, h.dlb, h.dub, h.ite, h.threshold) == (-2.0, 3.0, 4, 4, 2, 0.5)
    assert h.p1_positive is False  # p1 goes to benign, the class coded first in the file


def test_hsd_preset_values():
    h = preset("hsd-lp").hyperparameters()
    assert (h.p1, h.p2, h.dlb, h.dub, h.ite, h.threshold) == (-1.3, 2.9, 1, 1, 0, 0.42)
    assert h.p1_positive is True


def test_preset_defaults():
    for cfg in PRESETS.values():
        assert (cfg.k, cfg.seed) == (10, 42)
        cfg.validate()


def test_unknown_preset():
    with pytest.raises(ConfigError):
        preset("iris")


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_preset_round_trip(name):
    cfg = PRESETS[name]
    assert ExperimentConfig.loads(cfg.dumps()) == cfg


def test_comments_and_blank_lines():
    cfg = ExperimentConfig.loads("# experiment\n\ndata = x.csv  # path\np1 = -2\ndrop_cols = 0,3\nheader = true\n")
    assert cfg.data == "x.csv" and cfg.p1 == -2.0 and cfg.drop_cols == (0, 3) and cfg.header


@pytest.mark.parametrize("text", ["nonsense\n", "bogus = 1\n", "dlb = two\n", "header = maybe\n"])
def test_bad_config(text):
    with pytest.raises(ConfigError):
        ExperimentConfig.loads(text)


def test_validate_requires_data():
    with pytest.raises(ConfigError):
        ExperimentConfig().validate()


@settings(max_examples=100, deadline=None)
@given(
    p1=st.floats(-10, 10), p2=st.floats(-10, 10), dlb=st.integers(0, 4), width=st.integers(0, 3),
    ite=st.integers(0, 5), threshold=st.floats(-5, 5), seed=st.integers(0, 2**31),
    drop=st.lists(st.integers(0, 9), max_size=3), negative=st.one_of(st.none(), st.sampled_from(["0", "2", "b"])),
)
def test_round_trip_property(p1, p2, dlb, width, ite, threshold, seed, drop, negative):
    cfg = ExperimentConfig(data="d.csv", p1=p1, p2=p2, dlb=dlb, dub=dlb + width, ite=ite,
                           threshold=threshold, seed=seed, drop_cols=tuple(drop), negative=negative)
    assert ExperimentConfig.loads(cfg.dumps()) == cfg
