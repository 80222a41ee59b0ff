#!/usr/bin/env python3
import logging
import platform
import sys
from pathlib import Path
from typing import Any, Optional

import click

import cicriteria
from cicriteria.ci_classifier import classify, verify_hart_thresholds
from cicriteria.config import LOG_LEVELS, Config
from cicriteria.config_loader import config_from_dict, load_config_from_yaml
from cicriteria.discriminant_search import (
    CLAIMED_CROSSOVER,
    DeltaMinCache,
    crossover_ell,
    schneider_table,
    verify_prop_bound,
)
from cicriteria.envelope import FORMATS, OutputEnvelope, Table, render
from cicriteria.errors import (
    DataUnavailableError,
    InvalidDescriptorError,
    PreconditionError,
)
from cicriteria.exact_arith import stirling_check
from cicriteria.plot import plane_figure, write_svg
from cicriteria.reporting import init_reporting, reported
from cicriteria.root_systems import VarietyDescriptor, cross_check_tables, invariants
from cicriteria.rr_integrality import verify_closed_forms

LEVEL_CHOICES = click.Choice(list(LOG_LEVELS.keys()))
FORMAT_CHOICES = click.Choice(list(FORMATS))

USAGE_FAILURE = 1
DATA_UNAVAILABLE = 2
VERIFY_FAILURE = 3

logger = logging.getLogger("cicriteria.info")


class CriteriaGroup(click.Group):
    """Group whose exit codes follow the documented contract.

    0 success, 1 usage or invalid input, 2 data unavailable, 3 failed
    verification. Commands signal 3 by returning it.
    """

    def main(self, *args: Any, **kwargs: Any) -> Any:
        standalone_mode = kwargs.pop("standalone_mode", True)
        try:
            code = super().main(*args, standalone_mode=False, **kwargs)
        except click.ClickException as exc:
            exc.show()
            code = USAGE_FAILURE if isinstance(exc, click.UsageError) else exc.exit_code
        except click.Abort:
            click.echo("Aborted!", err=True)
            code = USAGE_FAILURE
        except (InvalidDescriptorError, PreconditionError) as exc:
            click.echo(f"Error: {exc}", err=True)
            code = USAGE_FAILURE
        except DataUnavailableError as exc:
            click.echo(f"Error: {exc}", err=True)
            code = DATA_UNAVAILABLE
        code = code if isinstance(code, int) else 0
        if standalone_mode:
            sys.exit(code)
        return code


def print_version(ctx: click.Context, param: click.Parameter, value: bool) -> None:
    _ = param
    if not value or ctx.resilient_parsing:
        return
    click.echo(
        f"Running cicriteria {cicriteria.__version__} "
        f"with {platform.python_implementation()} {platform.python_version()} "
        f"on {platform.system()}"
    )
    ctx.exit()


def _descriptor(dynkin: str, rank: int, node: int) -> VarietyDescriptor:
    return VarietyDescriptor.of(dynkin, rank, node)


def _emit(envelope: OutputEnvelope, table: Table, fmt: str) -> None:
    click.echo(render(envelope, table, fmt), nl=fmt == "json")


format_option = click.option(
    "--format",
    "fmt",
    type=FORMAT_CHOICES,
    default="json",
    help="Output format.",
    show_default=True,
)


# pylint: disable=no-value-for-parameter
# pylint: disable=too-many-arguments
@click.group(
    cls=CriteriaGroup, context_settings={"auto_envvar_prefix": "CI_CRITERIA"}
)
@click.option(
    "--config",
    "-c",
    type=click.Path(exists=True),
    default=None,
    help="Configuration file in YAML format.",
    show_default=True,
)
@click.option(
    "--log-config",
    type=click.Path(exists=True),
    default=None,
    help="Logging configuration file. Supported formats: .ini, .json, .yaml.",
    show_default=True,
)
@click.option(
    "--log-level",
    type=LEVEL_CHOICES,
    default=None,
    help="Log level. [default: warning]",
    show_default=True,
)
@click.option(
    "--use-colors/--no-use-colors",
    is_flag=True,
    default=None,
    help="Enable/Disable colorized logging.",
)
@click.option(
    "--version",
    is_flag=True,
    callback=print_version,
    expose_value=False,
    is_eager=True,
    help="Display the cicriteria version and exit.",
)
@click.pass_context
def main(
    ctx: click.Context,
    config: Optional[str],
    log_config: Optional[str],
    log_level: Optional[str],
    use_colors: Optional[bool],
) -> None:
    """Complete-intersection criteria for subvarieties of G/P."""
    overrides = {
        "log_config": log_config,
        "log_level": log_level,
        "use_colors": use_colors,
    }
    if config:
        _config = load_config_from_yaml(config, **overrides)
    else:
        _config = config_from_dict({}, **overrides)
    init_reporting(_config.sentry_dsn)
    ctx.obj = _config


@main.command()
@click.argument("dynkin")
@click.argument("rank", type=int)
@click.argument("node", type=int)
@format_option
@reported("variety")
def variety(dynkin: str, rank: int, node: int, fmt: str) -> None:
    """Invariants of G/P for the maximal parabolic at NODE."""
    desc = _descriptor(dynkin, rank, node)
    inv = invariants(desc)
    envelope = OutputEnvelope(
        command="variety",
        inputs=desc.as_dict(),
        result=inv.model_dump(mode="json"),
        notes=list(inv.notes),
    )
    table = Table(
        columns=(
            "dynkin",
            "rank",
            "node",
            "label",
            "dim",
            "index",
            "m",
            "p",
            "p_lower_bound",
            "sp",
            "sp_lower_bound",
            "picard_iso",
            "codim_bound",
        ),
        rows=[
            (
                desc.dynkin,
                desc.rank,
                desc.node,
                inv.label,
                inv.dim_v,
                inv.index,
                inv.m,
                inv.p_pos,
                inv.p_is_lower_bound,
                inv.sp,
                inv.sp_is_lower_bound,
                inv.picard_iso,
                inv.codim_bound,
            )
        ],
    )
    _emit(envelope, table, fmt)


@main.command(name="classify")
@click.argument("dynkin")
@click.argument("rank", type=int)
@click.argument("node", type=int)
@click.argument("d", type=click.IntRange(min=1))
@click.argument("n", type=click.IntRange(min=1))
@format_option
@click.pass_obj
@reported("classify")
def classify_cmd(
    config: Config, dynkin: str, rank: int, node: int, d: int, n: int, fmt: str
) -> None:
    """Verdict for a codimension-two subvariety of degree D with det N = O(N)."""
    desc = _descriptor(dynkin, rank, node)
    result = classify(desc, d, n, digits=config.pi_digits)
    envelope = OutputEnvelope(
        command="classify",
        inputs={**desc.as_dict(), "d": d, "n": n},
        result=result.model_dump(mode="json"),
        notes=list(result.notes),
    )
    verdict = str(result.verdict)
    table = Table(
        columns=(
            "verdict",
            "region",
            "delta",
            "criterion",
            "outcome",
            "witness",
            "inputs",
        ),
        rows=[
            (
                verdict,
                result.region.value,
                result.delta,
                check.criterion,
                check.outcome.value,
                check.witness,
                ";".join(f"{key}={value}" for key, value in check.inputs.items()),
            )
            for check in result.applied
        ],
    )
    _emit(envelope, table, fmt)


@main.command()
@click.argument("p_max", type=click.IntRange(min=1))
@click.option(
    "--cache",
    type=click.Path(dir_okay=False),
    envvar="CI_CRITERIA_CACHE",
    default=None,
    help="Table cache file. [default: $XDG_CACHE_HOME/cicriteria/deltamin.yaml]",
)
@click.option("--no-cache", is_flag=True, default=False, help="Skip the cache file.")
@click.option("--workers", type=click.IntRange(min=1), default=None)
@format_option
@click.pass_obj
@reported("deltamin")
def deltamin(
    config: Config,
    p_max: int,
    cache: Optional[str],
    no_cache: bool,
    workers: Optional[int],
    fmt: str,
) -> None:
    """Minimal positive discriminants on P^1 .. P^P_MAX."""
    if cache:
        config.cache = Path(cache).expanduser()
    if no_cache:
        config.use_cache = False
    store = DeltaMinCache(config.cache_path) if config.use_cache else None
    table = schneider_table(p_max, cache=store, workers=workers or config.workers)
    envelope = OutputEnvelope(
        command="deltamin",
        inputs={"p_max": p_max},
        result={
            "rows": [
                {
                    "p": row.p,
                    "delta_min": row.delta_min,
                    "witness": {"c1": row.c1, "d": row.d},
                }
                for row in table.rows
            ]
        },
    )
    flat = Table(
        columns=("p", "delta_min", "c1", "d"),
        rows=[(row.p, row.delta_min, row.c1, row.d) for row in table.rows],
    )
    _emit(envelope, flat, fmt)


# pylint: disable=too-many-locals
@main.command()
@click.option("--prop-sch", nargs=2, type=int, default=None, metavar="P_FROM P_TO")
@click.option("--crossover", is_flag=True, default=False)
@click.option("--tables", type=click.IntRange(min=1), default=None, metavar="RANK_MAX")
@click.option("--stirling", type=click.IntRange(min=1), default=None, metavar="P_MAX")
@click.option(
    "--closed-forms", type=click.IntRange(min=1), default=None, metavar="P_MAX"
)
@click.option("--hart", type=click.IntRange(min=6), default=None, metavar="RANK_MAX")
@format_option
@click.pass_obj
@reported("verify")
def verify(
    config: Config,
    prop_sch: Optional[tuple[int, int]],
    crossover: bool,
    tables: Optional[int],
    stirling: Optional[int],
    closed_forms: Optional[int],
    hart: Optional[int],
    fmt: str,
) -> int:
    """Check numerical claims; exits 3 when any check fails."""
    if not (prop_sch or crossover or tables or stirling or closed_forms or hart):
        raise click.UsageError("choose at least one check")
    digits = config.pi_digits
    checks: dict[str, Any] = {}
    rows: list[tuple[Any, ...]] = []
    inputs: dict[str, Any] = {}

    if prop_sch:
        p_from, p_to = prop_sch
        inputs["prop_sch"] = [p_from, p_to]
        report = verify_prop_bound(p_from, p_to)
        checks["prop-sch"] = {
            "passed": report.passed,
            "entries": [entry.model_dump() for entry in report.entries],
        }
        rows += [
            ("prop-sch", f"p={e.p}", e.delta_min, f"> {e.bound}", e.passed)
            for e in report.entries
        ]
    if crossover:
        inputs["crossover"] = True
        ell = crossover_ell(digits)
        passed = ell == CLAIMED_CROSSOVER
        checks["crossover"] = {
            "passed": passed,
            "ell": ell,
            "expected": CLAIMED_CROSSOVER,
        }
        rows.append(("crossover", "smallest l", ell, CLAIMED_CROSSOVER, passed))
    if tables:
        inputs["tables"] = tables
        checked, mismatches = cross_check_tables(tables)
        checks["tables"] = {
            "passed": not mismatches,
            "checked": checked,
            "failures": [item.model_dump() for item in mismatches],
        }
        rows.append(("tables", f"rank<={tables}", checked, 0, not mismatches))
        rows += [
            (
                "tables",
                f"{item.dynkin}{item.rank}/{item.node} {item.quantity}",
                item.computed,
                item.expected,
                False,
            )
            for item in mismatches
        ]
    if stirling:
        inputs["stirling"] = stirling
        results = stirling_check(stirling, digits)
        failures = [p for p, holds in results if not holds]
        checks["stirling"] = {"passed": not failures, "failures": failures}
        rows.append(("stirling", f"p<={stirling}", len(results), 0, not failures))
    if closed_forms:
        inputs["closed_forms"] = closed_forms
        mismatches_cf = verify_closed_forms(closed_forms)
        checks["closed-forms"] = {
            "passed": not mismatches_cf,
            "failures": mismatches_cf,
        }
        rows.append(
            (
                "closed-forms",
                f"p<={closed_forms}",
                len(mismatches_cf),
                0,
                not mismatches_cf,
            )
        )
    if hart:
        inputs["hart"] = hart
        hart_report = verify_hart_thresholds(hart, digits)
        checks["hart"] = {
            "passed": hart_report.passed,
            "entries": [entry.model_dump() for entry in hart_report.entries],
        }
        rows += [
            (
                "hart",
                f"{entry.label}",
                entry.threshold,
                entry.bound,
                entry.status,
            )
            for entry in hart_report.entries
        ]

    passed = all(check["passed"] for check in checks.values())
    envelope = OutputEnvelope(
        command="verify",
        inputs=inputs,
        result={"passed": passed, "checks": checks},
    )
    table = Table(
        columns=("check", "subject", "value", "expected", "passed"), rows=rows
    )
    _emit(envelope, table, fmt)
    if not passed:
        failed = [name for name, check in checks.items() if not check["passed"]]
        logger.error("[verify][failed][%s]", ",".join(failed))
        return VERIFY_FAILURE
    return 0


@main.command()
@click.argument("dynkin")
@click.argument("rank", type=int)
@click.argument("node", type=int)
@click.option("--d-max", type=click.IntRange(min=1), default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
@reported("plot")
def plot(
    config: Config,
    dynkin: str,
    rank: int,
    node: int,
    d_max: Optional[int],
    out: Optional[str],
) -> None:
    """SVG of the (d, n)-plane; written to stdout unless --out is given."""
    desc = _descriptor(dynkin, rank, node)
    svg = plane_figure(desc, d_max=d_max, digits=config.pi_digits)
    if out:
        write_svg(svg, Path(out))
        logger.info("[plot][written][%s]", out)
    else:
        click.echo(svg, nl=False)


if __name__ == "__main__":
    main()  # pragma: no cover
