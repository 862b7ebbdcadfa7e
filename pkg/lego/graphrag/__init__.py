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

"""Modular retrieval over knowledge graphs and a benchmark harness for retrieval instances."""

from .beam import Beam
from .context import QueryContext
from .dataset import Dataset
from .enums import Direction
from .enums import ReportFormat
from .enums import ScorerKind
from .enums import Shots
from .extractor import extract_subgraph
from .extractor import Extractor
from .generation import build_prompt
from .generation import generate
from .generation import GenerationParams
from .generation import GenerationResult
from .generation import PromptTemplate
from .generation import score_answer
from .graph import Graph
from .graph import Triple
from .path import PathSet
from .path import ReasoningPath
from .path_filter import filter_paths
from .path_filter import PathFilter
from .pipeline_builder import InstanceConfig
from .pipeline_builder import load_instance_config
from .pipeline_builder import PipelineBuilder
from .pipeline_config import PipelineConfig
from .query import Query
from .refiner import refine_paths
from .refiner import Refiner
from .report import QueryResult
from .report import RunReport
from .retriever import Retriever
from .retriever import run_instance
from .scorer import Scorer
from .scorer import ScorerConfig
from .unit import Unit

__title__ = "lego-graphrag"
__version__ = "0.1.0"


__all__ = [
    "Beam",
    "Dataset",
    "Direction",
    "Extractor",
    "GenerationParams",
    "GenerationResult",
    "Graph",
    "InstanceConfig",
    "PathFilter",
    "PathSet",
    "PipelineBuilder",
    "PipelineConfig",
    "PromptTemplate",
    "Query",
    "QueryContext",
    "QueryResult",
    "ReasoningPath",
    "Refiner",
    "ReportFormat",
    "Retriever",
    "RunReport",
    "Scorer",
    "ScorerConfig",
    "ScorerKind",
    "Shots",
    "Triple",
    "Unit",
    "__title__",
    "__version__",
    "build_prompt",
    "extract_subgraph",
    "filter_paths",
    "generate",
    "load_instance_config",
    "refine_paths",
    "run_instance",
    "score_answer",
]
