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

"""Tests exceptions provided by lego-graphrag implementation."""

import inspect

import lego.graphrag.exceptions as exceptions
from lego.graphrag.exceptions import GraphParseError
from lego.graphrag.exceptions import GraphRAGException
from lego.graphrag.exceptions import PathFilterError
from lego.graphrag.exceptions import PipelineConfigurationError
from lego.graphrag.exceptions import PipelineUnitError
from lego.graphrag.exceptions import ScorerError
from lego.graphrag.exceptions import ScorerProtocolError

from .base import GraphRAGTestCase


class TestExceptions(GraphRAGTestCase):
    """Test exceptions provided by lego-graphrag."""

    def test_exception_hierarchy(self) -> None:
        """Test exception hierarchy in lego-graphrag implementation."""
        for name, item in exceptions.__dict__.items():
            if not inspect.isclass(item) or not issubclass(item, Exception):
                continue

            assert issubclass(item, GraphRAGException), f"Exception {name!r} is not of type GraphRAGException"

    def test_to_dict(self) -> None:
        """Test conversion of exceptions stored in reports."""
        assert PipelineConfigurationError("bad").to_dict() == {"type": "PipelineConfigurationError", "message": "bad"}
        assert GraphParseError("oops", line=4).to_dict() == {"type": "GraphParseError", "message": "oops", "line": 4}
        assert PathFilterError("hop failed", hop=2).to_dict()["hop"] == 2
        assert ScorerProtocolError("short", start=0, end=8).to_dict() == {
            "type": "ScorerProtocolError",
            "message": "short",
            "start": 0,
            "end": 8,
        }

    def test_families(self) -> None:
        """Test grouping of exceptions."""
        assert issubclass(ScorerProtocolError, ScorerError)
        assert issubclass(PipelineConfigurationError, PipelineUnitError)
        assert issubclass(PathFilterError, PipelineUnitError)
