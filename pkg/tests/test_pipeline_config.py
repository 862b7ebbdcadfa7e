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

"""Test pipeline configuration - one unit per stage."""

from flexmock import flexmock
import pytest

from lego.graphrag.exceptions import PipelineConfigurationError
from lego.graphrag.exceptions import PipelineUnitError
from lego.graphrag.extractors import PersonalizedPageRank
from lego.graphrag.filters import BeamSearchPathFilter
from lego.graphrag.filters import ShortestPathFilter
from lego.graphrag.pipeline_config import PipelineConfig
from lego.graphrag.refiners import RandomRefiner

from .base import GraphRAGTestCase


@pytest.fixture
def pipeline_config() -> PipelineConfig:
    """Create a fixture for the PPR, SPF and random refinement pipeline."""
    return PipelineConfig(
        extractor=PersonalizedPageRank.from_configuration({"max_ent": 5}),
        path_filter=ShortestPathFilter.from_configuration({}),
        refiner=RandomRefiner.from_configuration({"top_k": 2}),
    )


class TestPipelineConfig(GraphRAGTestCase):
    """Test pipeline configuration."""

    def test_to_dict(self, pipeline_config: PipelineConfig) -> None:
        """Test the configuration states each stage with all defaults."""
        assert pipeline_config.to_dict() == {
            "se": {"method": "ppr", "restart_prob": 0.8, "max_ent": 5, "tol": 1e-8, "max_iter": 100},
            "pf": {"method": "spf", "hop_cap": 4, "path_cap": 10000},
            "pr": {"method": "random", "top_k": 2},
        }

    @pytest.mark.parametrize("stage", ["extractor", "path_filter", "refiner"])
    def test_unit_of_other_stage(self, pipeline_config: PipelineConfig, stage: str) -> None:
        """Test each stage accepts only units of its own type."""
        units = {
            "extractor": pipeline_config.extractor,
            "path_filter": pipeline_config.path_filter,
            "refiner": pipeline_config.refiner,
        }
        if stage == "path_filter":
            units[stage] = pipeline_config.refiner
        else:
            units[stage] = BeamSearchPathFilter.from_configuration({"scorer": {"kind": "bm25"}})

        with pytest.raises(PipelineConfigurationError):
            PipelineConfig(**units)

    def test_iter_units(self, pipeline_config: PipelineConfig) -> None:
        """Test units are iterated in the order they run."""
        assert list(pipeline_config.iter_units()) == [
            pipeline_config.extractor,
            pipeline_config.path_filter,
            pipeline_config.refiner,
        ]

    def test_call_post_run(self, pipeline_config: PipelineConfig) -> None:
        """Test post-run is called on all units."""
        for unit in pipeline_config.iter_units():
            flexmock(unit.__class__).should_receive("post_run").once()

        pipeline_config.call_post_run()

    def test_call_post_run_error(self, pipeline_config: PipelineConfig) -> None:
        """Test failure in post-run is reported with the unit name."""
        flexmock(RandomRefiner).should_receive("post_run").and_raise(ValueError("oops"))

        with pytest.raises(PipelineUnitError, match="RandomRefiner"):
            pipeline_config.call_post_run()

    def test_scorer_failures(self, pipeline_config: PipelineConfig) -> None:
        """Test scorer failures are reported for stages with an instantiated scorer only."""
        assert pipeline_config.scorer_failures() == {}

        pipeline_config.path_filter = BeamSearchPathFilter.from_configuration({"scorer": {"kind": "bm25"}})
        assert pipeline_config.scorer_failures() == {}

        assert pipeline_config.path_filter.scorer is not None
        assert pipeline_config.scorer_failures() == {"pf": 0}
