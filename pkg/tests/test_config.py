import pytest

from mapreduce_wordfreq.config import DEFAULT_BLOCK_SIZE, load_settings
from mapreduce_wordfreq.errors import ConfigError
from mapreduce_wordfreq.main import main


def test_defaults():
    settings = load_settings()
    assert settings.workers == 1
    assert settings.block_size == DEFAULT_BLOCK_SIZE
    assert settings.partition == "global"
    assert settings.log_level == "WARNING"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("WORDFREQ_WORKERS", "4")
    monkeypatch.setenv("WORDFREQ_BLOCK_SIZE", "1024")
    monkeypatch.setenv("WORDFREQ_EXCHANGE_TIMEOUT", "2.5")
    monkeypatch.setenv("WORDFREQ_PARTITION", "local")
    monkeypatch.setenv("WORDFREQ_LOG_LEVEL", "debug")
    settings = load_settings()
    assert (settings.workers, settings.block_size, settings.exchange_timeout) == (4, 1024, 2.5)
    assert settings.partition == "local"
    assert settings.log_level == "DEBUG"


@pytest.mark.parametrize(
    "name, value",
    [
        ("WORDFREQ_WORKERS", "zero"),
        ("WORDFREQ_WORKERS", "0"),
        ("WORDFREQ_BLOCK_SIZE", "-1"),
        ("WORDFREQ_PARTITION", "hash"),
        ("WORDFREQ_LOG_LEVEL", "loud"),
    ],
)
def test_invalid_settings(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError):
        load_settings()


def test_invalid_setting_exits_1(monkeypatch, capsys):
    monkeypatch.setenv("WORDFREQ_WORKERS", "none")
    assert main(["wordcount", "--input", "."]) == 1
    assert "invalid setting workers" in capsys.readouterr().err
