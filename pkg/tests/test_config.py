import json

import pytest

from cslbounds import (
    ConfigError,
    ModelKind,
    build_model,
    config_to_dict,
    default_config,
    load_config,
    net_csl_counts,
    parse_config,
    serialize_config,
)


def test_empty_document_gives_defaults():
    assert parse_config("{}") == default_config()


def test_bytes_input_accepted():
    assert parse_config(b"{}") == default_config()


def test_default_experiment_reproduces_reference_counts():
    cfg = parse_config("{}")
    _, _, n_csl = net_csl_counts(cfg.experiment)
    assert n_csl.central == pytest.approx(56, abs=3)
    assert n_csl.err_up == pytest.approx(608, abs=3)
    assert n_csl.err_down == pytest.approx(725, abs=3)


def test_efficiency_invariant_violation_names_key_and_constraint():
    with pytest.raises(ConfigError) as err:
        parse_config('{"experiment":{"efficiency":0}}')
    message = str(err.value)
    assert "experiment.efficiency" in message
    assert "(0,1]" in message
    assert "0" in message


def test_unknown_keys_rejected_with_path():
    with pytest.raises(ConfigError, match="experiment.fudge: unknown key"):
        parse_config('{"experiment":{"fudge":1}}')
    with pytest.raises(ConfigError, match="bogus: unknown key"):
        parse_config('{"bogus":{}}')
    with pytest.raises(ConfigError, match="experiment.observed.value_typo: unknown key"):
        parse_config('{"experiment":{"observed":{"value_typo":3}}}')


def test_syntax_error_reports_line_and_column():
    with pytest.raises(ConfigError) as err:
        parse_config('{"experiment": \n  {"efficiency": }}')
    message = str(err.value)
    assert "line 2" in message
    assert "column" in message


def test_type_errors_rejected():
    with pytest.raises(ConfigError, match="expected a number"):
        parse_config('{"experiment":{"efficiency":"high"}}')
    with pytest.raises(ConfigError, match="expected an object"):
        parse_config('{"experiment": 3}')
    with pytest.raises(ConfigError, match="expected an object"):
        parse_config("[1,2]")
    with pytest.raises(ConfigError, match="scan.points"):
        parse_config('{"scan":{"points": 2.5}}')
    with pytest.raises(ConfigError, match="log_spacing"):
        parse_config('{"scan":{"log_spacing": "yes"}}')


def test_value_constraints():
    with pytest.raises(ConfigError, match="n_sigma"):
        parse_config('{"n_sigma": -1}')
    with pytest.raises(ConfigError, match="scan"):
        parse_config('{"scan":{"min": 2.0, "max": 1.0}}')
    with pytest.raises(ConfigError, match="model.kind"):
        parse_config('{"model":{"kind":"square-well"}}')
    with pytest.raises(ConfigError, match="beta_over_kappa"):
        parse_config('{"model":{"beta_over_kappa": 0.9}}')
    with pytest.raises(ConfigError, match="collapse.lambda_per_sec"):
        parse_config('{"collapse":{"lambda_per_sec": -1e-16}}')


def test_overrides_apply():
    cfg = parse_config(json.dumps({
        "collapse": {"g_n": 0.5, "lambda_per_sec": 2e-16},
        "experiment": {"efficiency": 0.5},
        "model": {"kind": "hulthen", "beta_over_kappa": 5.0},
        "scan": {"min": 1e-9, "max": 1.0, "points": 11, "log_spacing": False},
        "n_sigma": 2.0,
    }))
    assert cfg.collapse.g_n == 0.5
    assert cfg.collapse.lambda_rate == 2e-16
    assert cfg.experiment.efficiency == 0.5
    assert cfg.model.kind is ModelKind.HULTHEN
    assert cfg.scan.points == 11 and not cfg.scan.log_spacing
    assert cfg.n_sigma == 2.0


def test_null_couplings_stay_unset():
    cfg = parse_config('{"collapse":{"g_n": null}}')
    assert cfg.collapse.g_n is None


def test_round_trip_default():
    cfg = default_config()
    assert parse_config(serialize_config(cfg)) == cfg


def test_round_trip_modified():
    cfg = parse_config('{"collapse":{"g_n":0.25},"model":{"kind":"hulthen"},"n_sigma":1.64}')
    assert parse_config(serialize_config(cfg)) == cfg
    # and the dict form carries the schema keys
    d = config_to_dict(cfg)
    assert d["model"]["kind"] == "hulthen"
    assert d["collapse"]["g_n"] == 0.25


def test_build_model_dispatches():
    cfg = parse_config('{"model":{"kind":"hulthen"}}')
    m = build_model(cfg.model)
    assert m.kind is ModelKind.HULTHEN
    z = build_model(default_config().model)
    assert z.kind is ModelKind.ZERO_RANGE


def test_load_config(tmp_path):
    assert load_config(None) == default_config()
    path = tmp_path / "run.json"
    path.write_text('{"n_sigma": 2.0}')
    assert load_config(str(path)).n_sigma == 2.0
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(str(tmp_path / "missing.json"))
