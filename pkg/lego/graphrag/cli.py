#!/usr/bin/env python3
# lego-graphrag
# Copyright(C) 2024 lego-graphrag authors
#
# This program is free software: you can redistribute it and / or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program. If not, see <http://www.gnu.org/licenses/>.

"""Lego-graphrag CLI."""

import functools
import json
import logging
import os
import sys
from typing import Any
from typing import Callable
from typing import List
from typing import Optional
from typing import Sequence

import click
from thoth.common import init_logging

from lego.graphrag import __title__ as graphrag_name
from lego.graphrag import __version__ as graphrag_version
from lego.graphrag.dataset import Dataset
from lego.graphrag.enums import ReportFormat
from lego.graphrag.generation import dump_generation
from lego.graphrag.generation import GenerationParams
from lego.graphrag.generation import load_generation
from lego.graphrag.generation import PromptTemplate
from lego.graphrag.generation import run_generation
from lego.graphrag.generation import summarize
from lego.graphrag.generation import summarize_records
from lego.graphrag.pipeline_builder import load_instance_config
from lego.graphrag.presets import iter_presets
from lego.graphrag.report import comparison_table
from lego.graphrag.report import evaluation_table
from lego.graphrag.report import plot_timing
from lego.graphrag.report import RunReport
from lego.graphrag.run import INPUT_ERRORS
from lego.graphrag.run import run_retrieval

init_logging()

_LOGGER = logging.getLogger("lego.graphrag")


def _print_version(ctx: click.Context, _: Any, value: str) -> None:
    """Print lego-graphrag version and exit."""
    if not value or ctx.resilient_parsing:
        return

    click.echo(graphrag_version)
    ctx.exit()


def _exit_codes(func: Callable[..., Any]) -> Callable[..., Any]:
    """Turn failures of a command into exit codes - 1 for invalid input, 2 for runtime errors."""

    @functools.wraps(func)
    def wrapper(click_ctx: click.Context, *args: Any, **kwargs: Any) -> Any:
        try:
            return func(click_ctx, *args, **kwargs)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except INPUT_ERRORS as exc:
            _LOGGER.error("%s", str(exc))
            click_ctx.exit(1)
        except Exception as exc:
            _LOGGER.exception("Command failed as an error was encountered: %s", str(exc))
            click_ctx.exit(2)

    return wrapper


@click.group()
@click.pass_context
@click.option(
    "-v",
    "--verbose",
    is_flag=True,
    envvar="LEGO_GRAPHRAG_DEBUG",
    help="Be verbose about what's going on.",
)
@click.option(
    "--version",
    is_flag=True,
    is_eager=True,
    callback=_print_version,
    expose_value=False,
    help="Print lego-graphrag version and exit.",
)
def cli(ctx: Optional[click.Context] = None, verbose: bool = False) -> None:
    """Modular knowledge graph retrieval command line interface."""
    if ctx:
        ctx.auto_envvar_prefix = "LEGO_GRAPHRAG"

    if verbose:
        _LOGGER.setLevel(logging.DEBUG)

    _LOGGER.debug("Debug mode is on")
    _LOGGER.info("%s version: %s", graphrag_name, graphrag_version)


@cli.command()
@click.pass_context
@click.option(
    "--triples",
    "-t",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Knowledge graph as tab separated triples (source, relation, target).",
)
@click.option(
    "--queries",
    "-q",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Queries as JSON lines with id, question, topic_entities and answers.",
)
@click.option("--out", "-o", type=str, required=True, help="Directory to write the dataset snapshot to.")
@_exit_codes
def ingest(click_ctx: click.Context, triples: str, queries: str, out: str) -> None:
    """Validate a dataset and snapshot it together with its statistics."""
    dataset = Dataset.from_files(triples, queries)
    stats = dataset.dump(out)
    click.echo(json.dumps(stats, indent=2, sort_keys=True))
    click_ctx.exit(0)


@cli.command()
@click.pass_context
@click.option("--instance", "-i", type=click.IntRange(min=0), help="Built-in instance to run (see list-instances).")
@click.option("--config", "-c", type=str, help="Instance configuration as a YAML file or a YAML string.")
@click.option(
    "--data",
    "-d",
    type=click.Path(exists=True, file_okay=False),
    required=True,
    help="Dataset snapshot directory written by ingest.",
)
@click.option("--out", "-o", type=str, required=True, help="File to write the run report to.")
@click.option("--seed", type=int, envvar="LEGO_GRAPHRAG_SEED", help="Seed overriding the configured one.")
@click.option(
    "--workers",
    type=click.IntRange(min=1),
    envvar="LEGO_GRAPHRAG_WORKERS",
    help="Number of queries retrieved concurrently, defaults to the number of CPUs.",
)
@click.option("--plot", type=str, help="Plot beam history of the last query that ran beam search.")
@click.option("--paths", type=str, help="Write final paths of each query as JSON lines.")
@_exit_codes
def run(
    click_ctx: click.Context,
    data: str,
    out: str,
    instance: Optional[int] = None,
    config: Optional[str] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    plot: Optional[str] = None,
    paths: Optional[str] = None,
) -> None:
    """Run a retrieval instance over a dataset snapshot."""
    if (instance is None) == (config is None):
        raise click.UsageError("Exactly one of --instance/--config has to be provided")

    if plot:
        os.environ["LEGO_GRAPHRAG_HISTORY"] = "1"

    instance_config = load_instance_config(instance if instance is not None else config, seed=seed)  # type: ignore
    _LOGGER.info("Running instance %d: %s (seed %d)", instance_config.id, instance_config.name, instance_config.seed)
    dataset = Dataset.load(data)
    exit_code = run_retrieval(
        dataset, instance_config, out, data_dir=data, workers=workers, plot=plot, paths=paths
    )
    click_ctx.exit(exit_code)


@cli.command()
@click.pass_context
@click.option("--run", "run_report", type=click.Path(exists=True, dir_okay=False), required=True, help="Run report.")
@click.option(
    "--llm-config",
    type=str,
    required=True,
    help="LLM configuration as a YAML file or a YAML string.",
)
@click.option(
    "--shots",
    type=click.Choice(["0", "1", "few"]),
    default="0",
    show_default=True,
    help="Prompt template to answer with.",
)
@click.option("--out", "-o", type=str, required=True, help="File to write generation results to.")
@click.option(
    "--data",
    "-d",
    type=click.Path(exists=True, file_okay=False),
    help="Dataset snapshot directory, defaults to the one the run was computed on.",
)
@_exit_codes
def generate(
    click_ctx: click.Context, run_report: str, llm_config: str, shots: str, out: str, data: Optional[str] = None
) -> None:
    """Answer queries of a retrieval run out of their refined paths."""
    report = RunReport.load(run_report)
    data = data or report.data_dir
    if not data:
        raise click.UsageError("The run report does not state its dataset, use --data")

    params = GenerationParams.load(llm_config)
    dataset = Dataset.load(data)
    results = run_generation(report, dataset.queries, dataset.graph, params, PromptTemplate.from_flag(shots))
    dump_generation(results, out)

    summary = summarize(results)
    click.echo(json.dumps(summary, indent=2, sort_keys=True))
    click_ctx.exit(0)


@cli.command("eval")
@click.pass_context
@click.option("--run", "run_report", type=click.Path(exists=True, dir_okay=False), required=True, help="Run report.")
@click.option("--gen", type=click.Path(exists=True, dir_okay=False), help="Generation results of the run.")
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["md", "csv"]),
    default="md",
    show_default=True,
    help="Table format.",
)
@_exit_codes
def evaluate(click_ctx: click.Context, run_report: str, output_format: str, gen: Optional[str] = None) -> None:
    """Print metrics and timing of a retrieval run."""
    report = RunReport.load(run_report)
    generation = summarize_records(load_generation(gen)) if gen else None
    click.echo(evaluation_table(report, generation, ReportFormat.by_name(output_format)), nl=False)  # type: ignore
    click_ctx.exit(0)


@cli.command()
@click.pass_context
@click.option(
    "--runs",
    "-r",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    multiple=True,
    help="Run reports to compare, the option can be repeated.",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["md", "csv"]),
    default="md",
    show_default=True,
    help="Table format.",
)
@click.option("--plot", type=str, help="Plot stacked stage timing of the runs.")
@click.argument("more_runs", nargs=-1, type=click.Path(exists=True, dir_okay=False))
@_exit_codes
def report(
    click_ctx: click.Context,
    runs: Sequence[str],
    output_format: str,
    more_runs: Sequence[str],
    plot: Optional[str] = None,
) -> None:
    """Compare retrieval runs in a single table."""
    reports = [RunReport.load(path) for path in (*runs, *more_runs)]
    click.echo(comparison_table(reports, ReportFormat.by_name(output_format)), nl=False)  # type: ignore

    if plot:
        figure = plot_timing(reports)
        figure.savefig(plot)
        _LOGGER.info("Timing chart saved to %r", plot)

    click_ctx.exit(0)


@cli.command("list-instances")
def list_instances() -> None:
    """List built-in retrieval instances."""
    for instance in iter_presets():
        click.echo(f"{instance['id']}\t{instance['name']}\t{instance['description']}")


def cli_main(argv: Optional[List[str]] = None) -> int:
    """Run the command line interface, return its exit code."""
    try:
        result = cli.main(args=argv, prog_name=graphrag_name, standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1

    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(cli_main())
