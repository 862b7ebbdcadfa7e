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

"""A base class for implementing pipeline units - extractors, path filters and refiners."""

import abc
import logging
import os
import threading
from typing import Any
from typing import Dict
from typing import Optional

import attr
from voluptuous import Schema

from .exceptions import PipelineUnitConfigurationSchemaError
from .scorer import Scorer
from .scorer import ScorerConfig

_LOGGER = logging.getLogger(__name__)


@attr.s(slots=True)
class Unit(metaclass=abc.ABCMeta):
    """A base class for implementing pipeline units.

    Units are stateless with respect to queries, everything query specific is passed in a context.
    """

    METHOD: str = ""
    CONFIGURATION_SCHEMA: Schema = Schema({"method": str})
    CONFIGURATION_DEFAULT: Dict[str, Any] = {}

    _configuration = attr.ib(type=Dict[str, Any], kw_only=True)
    default_seed = attr.ib(type=int, kw_only=True, default=0)

    _scorer = attr.ib(type=Optional[Scorer], init=False, default=None)
    _scorer_lock = attr.ib(type=Any, init=False, factory=threading.Lock)

    _VALIDATE_UNIT_CONFIGURATION_SCHEMA = bool(int(os.getenv("LEGO_GRAPHRAG_VALIDATE_UNIT_CONFIGURATION_SCHEMA", 1)))

    @classmethod
    def get_unit_name(cls) -> str:
        """Get name of the unit."""
        return cls.__name__

    @staticmethod
    def is_extractor_unit_type() -> bool:
        """Check if the unit is of type extractor."""
        return False

    @staticmethod
    def is_path_filter_unit_type() -> bool:
        """Check if the unit is of type path filter."""
        return False

    @staticmethod
    def is_refiner_unit_type() -> bool:
        """Check if the unit is of type refiner."""
        return False

    @_configuration.default
    def _initialize_default_configuration(self) -> Dict[str, Any]:
        """Initialize default unit configuration based on declared class' default configuration."""
        return {"method": self.METHOD, **self.CONFIGURATION_DEFAULT}

    @property
    def name(self) -> str:
        """Get name of this pipeline unit."""
        return self.__class__.__name__

    @property
    def configuration(self) -> Dict[str, Any]:
        """Get configuration of instantiated pipeline unit."""
        return self._configuration

    def update_configuration(self, configuration_dict: Dict[str, Any]) -> None:
        """Set configuration for a pipeline unit.

        If setting configuration fails due to schema checks, configuration are kept in an invalid state.
        """
        self.configuration.update(configuration_dict)
        if self._VALIDATE_UNIT_CONFIGURATION_SCHEMA and self.CONFIGURATION_SCHEMA:
            _LOGGER.debug("Validating configuration for pipeline unit %r", self.name)
            try:
                self.CONFIGURATION_SCHEMA(self.configuration)
            except Exception as exc:
                _LOGGER.exception(
                    "Failed to validate schema for pipeline unit %r: %s",
                    self.name,
                    str(exc),
                )
                raise PipelineUnitConfigurationSchemaError(str(exc))

        scorer_config = self.scorer_config
        if scorer_config is not None:
            # Keep the scorer in its canonical form, invalid scorers are reported at load time.
            self.configuration["scorer"] = scorer_config.to_dict()

        with self._scorer_lock:
            self._scorer = None

    @classmethod
    def from_configuration(cls, configuration: Dict[str, Any], *, default_seed: int = 0) -> "Unit":
        """Instantiate the unit and apply the given configuration on top of defaults."""
        unit = cls(default_seed=default_seed)
        unit.update_configuration(configuration)
        return unit

    @property
    def scorer_config(self) -> Optional[ScorerConfig]:
        """Get configuration of the scorer this unit uses, if any."""
        scorer = self.configuration.get("scorer")
        if scorer is None:
            return None

        if isinstance(scorer, ScorerConfig):
            return scorer

        return ScorerConfig.from_dict(scorer)

    @property
    def scorer(self) -> Scorer:
        """Get the scorer instance this unit uses, created on first access and shared by all queries."""
        with self._scorer_lock:
            if self._scorer is None:
                config = self.scorer_config
                if config is None:
                    raise PipelineUnitConfigurationSchemaError(f"Pipeline unit {self.name!r} has no scorer configured")

                self._scorer = Scorer.from_config(config, default_seed=self.default_seed)

            return self._scorer

    @property
    def has_scorer(self) -> bool:
        """Check whether the scorer was instantiated."""
        return self._scorer is not None

    def to_dict(self) -> Dict[str, Any]:
        """Turn this pipeline unit into its canonical configuration dictionary."""
        result = dict(self.configuration)
        scorer_config = self.scorer_config
        if scorer_config is not None:
            result["scorer"] = scorer_config.to_dict()

        return result

    def post_run(self) -> None:  # noqa: D401
        """Called after all queries were processed.

        This method should not raise any exception.
        """
        if self._scorer is not None:
            self._scorer.close()
