#!/usr/bin/env python3
import copy
import json
import logging
import logging.config
import os
from pathlib import Path
from typing import Any, Optional, Union

import yaml

from cicriteria.exact_arith import DEFAULT_DIGITS, MIN_DIGITS

LOG_LEVELS: dict[str, int] = {
    "critical": logging.CRITICAL,
    "error": logging.ERROR,
    "warning": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}

LOGGING_CONFIG: dict[str, Any] = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "default": {
            "()": "cicriteria.logutils.DefaultFormatter",
            "fmt": "%(levelprefix)s %(message)s",
            "use_colors": None,
        },
    },
    "handlers": {
        "default": {
            "formatter": "default",
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "level": "DEBUG",
        },
    },
    "loggers": {
        "cicriteria": {
            "handlers": ["default"],
            "level": "WARNING",
            "propagate": False,
        },
        "cicriteria.error": {"level": "INFO"},
    },
}

CACHE_FILE = Path("cicriteria") / "deltamin.yaml"

logger: logging.Logger = logging.getLogger("cicriteria.error")


def merge_loggers(logging_config: dict[str, Any]) -> dict[str, Any]:
    if "loggers" not in logging_config:
        logging_config["loggers"] = copy.deepcopy(LOGGING_CONFIG["loggers"])
    else:
        for name in ("cicriteria", "cicriteria.error"):
            if name not in logging_config["loggers"]:
                logging_config["loggers"][name] = copy.deepcopy(
                    LOGGING_CONFIG["loggers"][name]
                )
    return logging_config


def default_cache_path() -> Path:
    base = os.environ.get("XDG_CACHE_HOME")
    root = Path(base) if base else Path.home() / ".cache"
    return root / CACHE_FILE


# pylint: disable=too-many-arguments,too-many-instance-attributes
class Config:
    def __init__(
        self,
        cache: Optional[Union[str, Path]] = None,
        workers: int = 1,
        pi_digits: int = DEFAULT_DIGITS,
        use_cache: bool = True,
        log_config: Optional[Union[dict[str, Any], str]] = None,
        log_level: Optional[Union[str, int]] = None,
        use_colors: Optional[bool] = None,
        sentry_dsn: Optional[str] = None,
        config_logging: bool = True,
    ):
        if pi_digits < MIN_DIGITS:
            raise ValueError(f"pi_digits must be >= {MIN_DIGITS}, got {pi_digits}")
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        self.cache = Path(cache).expanduser() if cache else None
        self.workers = workers
        self.pi_digits = pi_digits
        self.use_cache = use_cache
        if log_config is None:
            log_config = copy.deepcopy(LOGGING_CONFIG)
        self.log_config = log_config
        self.log_level = log_level
        self.use_colors = use_colors
        self.sentry_dsn = sentry_dsn
        if config_logging:
            self.configure_logging()

    @property
    def cache_path(self) -> Path:
        return self.cache if self.cache is not None else default_cache_path()

    def configure_logging(self) -> None:
        if self.log_config is not None:
            if isinstance(self.log_config, dict):
                if self.use_colors in (True, False):
                    self.log_config["formatters"]["default"][
                        "use_colors"
                    ] = self.use_colors
                logging.config.dictConfig(merge_loggers(self.log_config))
            elif self.log_config.endswith(".json"):
                with open(self.log_config, encoding="utf-8") as file:
                    loaded_config = json.load(file)
                    logging.config.dictConfig(loaded_config)
            elif self.log_config.endswith((".yaml", ".yml")):
                with open(self.log_config, encoding="utf-8") as file:
                    loaded_config = yaml.safe_load(file)
                    logging.config.dictConfig(loaded_config)
            else:
                # See the note about fileConfig() here:
                # https://docs.python.org/3/library/logging.config.html#configuration-file-format
                logging.config.fileConfig(
                    self.log_config, disable_existing_loggers=False
                )

        if self.log_level is not None:
            if isinstance(self.log_level, str):
                log_level = LOG_LEVELS[self.log_level.lower()]
            else:
                log_level = self.log_level
            logging.getLogger("cicriteria").setLevel(log_level)
            logging.getLogger("cicriteria.info").setLevel(log_level)
            logging.getLogger("cicriteria.error").setLevel(log_level)
