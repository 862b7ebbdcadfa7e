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

"""Utilities which wrap retrieval runs, write their outputs and turn failures into exit codes.

Exit code 1 signals an error based on user input (configuration, dataset), exit code 2 an error
encountered while running.
"""

import logging
import time
from typing import Optional
from typing import Tuple

from .dataset import Dataset
from .exceptions import EmptyGraphError
from .exceptions import GraphParseError
from .exceptions import PipelineConfigurationError
from .exceptions import QueryParseError
from .pipeline_builder import InstanceConfig
from .retriever import dump_paths
from .retriever import Retriever

_LOGGER = logging.getLogger(__name__)

INPUT_ERRORS = (GraphParseError, EmptyGraphError, QueryParseError, PipelineConfigurationError, OSError)


def _plot_file(plot: str) -> Tuple[str, str]:
    parts = plot.rsplit(".", maxsplit=1)
    file_name = parts[0]
    extension = parts[1] if len(parts) == 2 else "png"
    return f"{file_name}.{extension}", extension


def run_retrieval(
    dataset: Dataset,
    instance: InstanceConfig,
    output: str,
    *,
    data_dir: Optional[str] = None,
    workers: Optional[int] = None,
    plot: Optional[str] = None,
    paths: Optional[str] = None,
) -> int:
    """Run the instance over the dataset and write the report, return the exit code."""
    start_time = time.monotonic()
    retriever_kwargs = {"graph": dataset.graph, "instance": instance, "data_dir": data_dir}
    if workers:
        retriever_kwargs["workers"] = workers

    try:
        retriever = Retriever(**retriever_kwargs)  # type: ignore
        report = retriever.run(dataset.queries)
        report.dump(output)
    except Exception as exc:
        _LOGGER.exception("The retrieval run failed as an error was encountered: %s", str(exc))
        return 2

    _LOGGER.info("Report written to %r in %.2f seconds", output, time.monotonic() - start_time)

    if paths:
        try:
            dump_paths(report, dataset.graph, paths)
        except OSError as exc:
            _LOGGER.exception("Failed to write paths to %r: %s", paths, str(exc))
            return 2

        _LOGGER.info("Final paths saved to %r", paths)

    if plot:
        beam = retriever.last_beam
        if beam is None:
            _LOGGER.warning("No query ran beam search, nothing to plot")
        else:
            beam_history_file, extension = _plot_file(plot)
            try:
                figure = beam.plot()
                figure.savefig(beam_history_file, format=extension)
            except Exception as exc:
                _LOGGER.exception("Failed to plot beam history to %r: %s", beam_history_file, str(exc))
            else:
                _LOGGER.info("Beam history saved to %r", beam_history_file)

    return 0
