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

"""Configuration of a three stage retrieval pipeline."""

import logging
from typing import Any
from typing import Dict
from typing import Generator

import attr

from .exceptions import PipelineConfigurationError
from .exceptions import PipelineUnitError
from .extractor import Extractor
from .path_filter import PathFilter
from .refiner import Refiner
from .unit import Unit

_LOGGER = logging.getLogger(__name__)


@attr.s(slots=True)
class PipelineConfig:
    """A configuration of a pipeline - one unit per stage."""

    extractor = attr.ib(type=Extractor, kw_only=True)
    path_filter = attr.ib(type=PathFilter, kw_only=True)
    refiner = attr.ib(type=Refiner, kw_only=True)

    @extractor.validator
    def _extractor_validator(self, _: Any, unit: Unit) -> None:
        if not unit.is_extractor_unit_type():
            raise PipelineConfigurationError(f"Unit {unit.get_unit_name()!r} cannot extract subgraphs")

    @path_filter.validator
    def _path_filter_validator(self, _: Any, unit: Unit) -> None:
        if not unit.is_path_filter_unit_type():
            raise PipelineConfigurationError(f"Unit {unit.get_unit_name()!r} cannot filter paths")

    @refiner.validator
    def _refiner_validator(self, _: Any, unit: Unit) -> None:
        if not unit.is_refiner_unit_type():
            raise PipelineConfigurationError(f"Unit {unit.get_unit_name()!r} cannot refine paths")

    def to_dict(self) -> Dict[str, Dict[str, Any]]:
        """Return this pipeline configuration in a dict representation."""
        return {
            "se": self.extractor.to_dict(),
            "pf": self.path_filter.to_dict(),
            "pr": self.refiner.to_dict(),
        }

    def iter_units(self) -> Generator[Unit, None, None]:
        """Iterate over units present in the configuration, in the order they run."""
        yield self.extractor
        yield self.path_filter
        yield self.refiner

    def scorer_failures(self) -> Dict[str, int]:
        """Get number of degraded scoring calls per stage that has an instantiated scorer."""
        result = {}
        for stage, unit in zip(("se", "pf", "pr"), self.iter_units()):
            if unit.has_scorer:
                result[stage] = unit.scorer.failures

        return result

    def call_post_run(self) -> None:
        """Call post-run method on all units registered in this configuration."""
        for unit in reversed(list(self.iter_units())):
            try:
                unit.post_run()
            except Exception as exc:
                raise PipelineUnitError(
                    f"Failed to run post_run method on unit {unit.get_unit_name()!r}: {exc}"
                ) from exc
