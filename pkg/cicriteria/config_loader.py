from typing import Any, Dict, Optional, Union

import yaml
from pydantic import Field
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

from cicriteria.config import Config
from cicriteria.exact_arith import DEFAULT_DIGITS, MIN_DIGITS


class BaseConfig(BaseSettings):
    model_config = SettingsConfigDict(case_sensitive=False)


class EnvFirstConfig(BaseConfig):
    """Environment variables win over values read from the YAML file."""

    model_config = SettingsConfigDict(
        case_sensitive=False, env_prefix="CI_CRITERIA_"
    )

    @classmethod
    def settings_customise_sources(  # pylint: disable=too-many-arguments
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return env_settings, init_settings, file_secret_settings


class LoggingConfigSchema(BaseConfig):
    use_colors: Optional[bool] = Field(default=None)
    log_config: Optional[Union[dict[str, Any], str]] = Field(default=None)
    level: str = Field(default="warning")


class SearchConfigSchema(EnvFirstConfig):
    cache: Optional[str] = Field(default=None)
    workers: int = Field(default=1, ge=1)
    pi_digits: int = Field(default=DEFAULT_DIGITS, ge=MIN_DIGITS)
    use_cache: bool = Field(default=True)


class ReportingConfigSchema(EnvFirstConfig):
    sentry_dsn: Optional[str] = Field(default=None)


class ConfigSchema(BaseConfig):
    search: SearchConfigSchema = Field(default_factory=SearchConfigSchema)
    logging: LoggingConfigSchema = Field(default_factory=LoggingConfigSchema)
    reporting: ReportingConfigSchema = Field(default_factory=ReportingConfigSchema)


def load_config_from_yaml(file_path: str, **overrides: Any) -> Config:
    with open(file_path, "r", encoding="utf-8") as file:
        config_dict = yaml.safe_load(file) or {}
    return config_from_dict(config_dict, **overrides)


def config_from_dict(config_dict: Dict[str, Any], **overrides: Any) -> Config:
    """Build a Config; keyword overrides that are not None come from the CLI."""
    config = ConfigSchema()
    if "search" in config_dict:
        config.search = SearchConfigSchema(**(config_dict["search"] or {}))
    if "logging" in config_dict:
        config.logging = LoggingConfigSchema(**(config_dict["logging"] or {}))
    if "reporting" in config_dict:
        config.reporting = ReportingConfigSchema(**(config_dict["reporting"] or {}))

    values: dict[str, Any] = {
        "cache": config.search.cache,
        "workers": config.search.workers,
        "pi_digits": config.search.pi_digits,
        "use_cache": config.search.use_cache,
        "log_level": config.logging.level,
        "use_colors": config.logging.use_colors,
        "log_config": config.logging.log_config,
        "sentry_dsn": config.reporting.sentry_dsn,
    }
    values.update({key: val for key, val in overrides.items() if val is not None})
    return Config(**values)
