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

"""Implementation of pipeline builder - create instance configuration from YAML or a built-in preset."""

import json
import logging
import os
from typing import Any
from typing import Dict
from typing import Optional
from typing import Type
from typing import Union

import attr
import yaml
from voluptuous import All
from voluptuous import Invalid
from voluptuous import Length
from voluptuous import Optional as SchemaOptional
from voluptuous import Range
from voluptuous import Required
from voluptuous import Schema

from .exceptions import GraphRAGException
from .exceptions import PipelineConfigurationError
from .exceptions import UnknownPipelineUnitError
from .extractor import Extractor
from .path_filter import PathFilter
from .pipeline_config import PipelineConfig
from .presets import preset
from .refiner import Refiner
from .unit import Unit

_LOGGER = logging.getLogger(__name__)

INSTANCE_CONFIG_SCHEMA = Schema(
    {
        Required("id"): All(int, Range(min=0)),
        Required("name"): All(str, Length(min=1)),
        SchemaOptional("description"): str,
        SchemaOptional("seed"): int,
        Required("se"): {Required("method"): str, str: object},
        Required("pf"): {Required("method"): str, str: object},
        Required("pr"): {Required("method"): str, str: object},
    }
)

DEFAULT_SEED = 0


@attr.s(slots=True)
class InstanceConfig:
    """A retrieval instance - a named pipeline with the seed it runs with."""

    id = attr.ib(type=int, kw_only=True)
    name = attr.ib(type=str, kw_only=True)
    pipeline = attr.ib(type=PipelineConfig, kw_only=True)
    seed = attr.ib(type=int, kw_only=True, default=DEFAULT_SEED)
    description = attr.ib(type=str, kw_only=True, default="")

    def to_dict(self) -> Dict[str, Any]:
        """Convert the instance to its canonical configuration, all defaults stated."""
        return {
            "id": self.id,
            "name": self.name,
            "description": self.description,
            "seed": self.seed,
            **self.pipeline.to_dict(),
        }

    def to_yaml(self) -> str:
        """Serialize the canonical configuration to YAML."""
        return yaml.safe_dump(self.to_dict(), sort_keys=False)


class PipelineBuilder:
    """Build instances out of their configuration."""

    @staticmethod
    def _do_instantiate_from_dict(base: Type[Unit], stage: str, entry: Dict[str, Any], seed: int) -> Unit:
        """Instantiate a pipeline unit from a dict representation."""
        unit_class = base.get_unit_class(entry["method"])  # type: ignore
        try:
            return unit_class.from_configuration(dict(entry), default_seed=seed)  # type: ignore
        except GraphRAGException as exc:
            raise PipelineConfigurationError(
                f"Failed to initialize {stage!r} stage with configuration {entry!r}: {str(exc)}"
            ) from exc

    @classmethod
    def from_dict(cls, dict_: Dict[str, Any]) -> InstanceConfig:
        """Instantiate instance configuration based on dictionary supplied."""
        try:
            INSTANCE_CONFIG_SCHEMA(dict_)
        except Invalid as exc:
            raise PipelineConfigurationError(f"Invalid instance configuration: {exc}") from exc

        seed = dict_.get("seed", DEFAULT_SEED)
        try:
            pipeline = PipelineConfig(
                extractor=cls._do_instantiate_from_dict(Extractor, "se", dict_["se"], seed),  # type: ignore
                path_filter=cls._do_instantiate_from_dict(PathFilter, "pf", dict_["pf"], seed),  # type: ignore
                refiner=cls._do_instantiate_from_dict(Refiner, "pr", dict_["pr"], seed),  # type: ignore
            )
        except UnknownPipelineUnitError as exc:
            raise PipelineConfigurationError(str(exc)) from exc

        instance = InstanceConfig(
            id=dict_["id"],
            name=dict_["name"],
            description=dict_.get("description", ""),
            seed=seed,
            pipeline=pipeline,
        )
        _LOGGER.debug("Instance configuration created:\n%s", json.dumps(instance.to_dict(), indent=2))
        return instance

    @classmethod
    def load(cls, config: str, *, seed: Optional[int] = None) -> InstanceConfig:
        """Load instance configuration from a file or a string, seed overrides the configured one when given."""
        if os.path.isfile(config):
            _LOGGER.debug("Loading instance configuration from file %r", config)
            with open(config, "r") as config_file:
                config = config_file.read()

        try:
            dict_ = yaml.safe_load(config)
        except yaml.YAMLError as exc:
            raise PipelineConfigurationError(f"Instance configuration is not valid YAML: {exc}") from exc

        if not isinstance(dict_, dict):
            raise PipelineConfigurationError(f"Instance configuration has to be a mapping, got {config!r}")

        if seed is not None:
            dict_["seed"] = seed

        return cls.from_dict(dict_)

    @classmethod
    def from_preset(cls, instance_id: int, *, seed: int = DEFAULT_SEED) -> InstanceConfig:
        """Build a built-in instance."""
        return cls.from_dict({**preset(instance_id), "seed": seed})


def load_instance_config(config: Union[int, str], *, seed: Optional[int] = None) -> InstanceConfig:
    """Load instance configuration from a YAML file, a YAML string or a built-in preset id."""
    if isinstance(config, int):
        return PipelineBuilder.from_preset(config, seed=DEFAULT_SEED if seed is None else seed)

    if config.isdigit() and not os.path.isfile(config):
        return PipelineBuilder.from_preset(int(config), seed=DEFAULT_SEED if seed is None else seed)

    return PipelineBuilder.load(config, seed=seed)
