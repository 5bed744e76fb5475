import pytest

from app.core.config import Settings, get_settings, settings


def test_get_settings_is_cached():
    assert get_settings() is get_settings() is settings


def test_defaults_validate():
    assert Settings().validate() is True


@pytest.mark.parametrize("name", ["JOBS", "BETTI_MAX_VERTICES", "TRANSVERSAL_CAP"])
def test_nonpositive_values_are_rejected(name):
    config = Settings()
    setattr(config, name, 0)
    with pytest.raises(ValueError, match=f"ACMTETRA_{name}"):
        config.validate()
