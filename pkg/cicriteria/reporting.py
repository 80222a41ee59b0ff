"""Optional Sentry reporting of unexpected failures in CLI commands."""
import functools
import logging
from typing import Any, Callable, Optional, TypeVar, cast

import click
import sentry_sdk
from sentry_sdk import Hub, capture_exception, set_context, set_tag

from cicriteria.errors import (
    DataUnavailableError,
    InvalidDescriptorError,
    PreconditionError,
)

logger = logging.getLogger("cicriteria.error")

F = TypeVar("F", bound=Callable[..., Any])

# outcomes the CLI maps to exit codes; never reported
EXPECTED = (
    click.ClickException,
    click.exceptions.Exit,
    click.Abort,
    InvalidDescriptorError,
    PreconditionError,
    DataUnavailableError,
)

_enabled = False


def init_reporting(dsn: Optional[str]) -> bool:
    global _enabled  # pylint: disable=global-statement
    if not dsn:
        return _enabled
    try:
        sentry_sdk.init(dsn=dsn, traces_sample_rate=0)
    except Exception as exc:  # pylint: disable=broad-except
        logger.error("[reporting][init-failed]: %s", exc)
        return _enabled
    _enabled = True
    return _enabled


def reported(command: str) -> Callable[[F], F]:
    """Tag the command and report anything that escapes it unexpectedly."""

    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            if not _enabled:
                return func(*args, **kwargs)
            with Hub(Hub.current):
                set_tag("cicriteria.command", command)
                try:
                    return func(*args, **kwargs)
                except EXPECTED:
                    raise
                except Exception as e:
                    set_context(
                        "cicriteria.inputs",
                        {key: repr(value) for key, value in kwargs.items()},
                    )
                    capture_exception()
                    raise e

        return cast(F, wrapper)

    return decorator
