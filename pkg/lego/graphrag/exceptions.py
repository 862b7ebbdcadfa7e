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

"""Exception hierarchy used in the whole retrieval engine implementation."""

from typing import Any
from typing import Dict
from typing import Optional


class GraphRAGException(Exception):  # noqa: N818
    """A base exception in the retrieval engine's exception hierarchy."""

    def to_dict(self) -> Dict[str, Any]:
        """Convert the exception to a dict representation which is stored in reports."""
        return {"type": self.__class__.__name__, "message": str(self)}


class GraphParseError(GraphRAGException):
    """An exception raised when a triples file cannot be parsed."""

    __slots__ = ["line"]

    def __init__(self, *args: Any, line: int) -> None:
        """Capture the line number on which parsing failed."""
        super().__init__(*args)
        self.line = line

    def to_dict(self) -> Dict[str, Any]:
        """Convert the exception to a dict representation, line number included."""
        return {**super().to_dict(), "line": self.line}


class EmptyGraphError(GraphRAGException):
    """An exception raised when a triples file does not state any triple."""


class QueryParseError(GraphRAGException):
    """An exception raised when a queries file has a malformed record."""

    __slots__ = ["line"]

    def __init__(self, *args: Any, line: int) -> None:
        """Capture the line number on which parsing failed."""
        super().__init__(*args)
        self.line = line

    def to_dict(self) -> Dict[str, Any]:
        """Convert the exception to a dict representation, line number included."""
        return {**super().to_dict(), "line": self.line}


class ContractViolation(GraphRAGException):  # noqa: N818
    """An exception raised when a caller breaks a precondition (invalid ids, empty seeds, ...)."""


class NoHistoryKept(GraphRAGException):  # noqa: N818
    """Raised if a user asks for history, but history was not kept."""


class UndefinedMetricError(GraphRAGException):
    """Raised when a metric is requested for an input it is not defined on."""


class ScorerError(GraphRAGException):
    """An exception raised when a scorer fails to score candidates."""

    __slots__ = ["start", "end"]

    def __init__(self, *args: Any, start: Optional[int] = None, end: Optional[int] = None) -> None:
        """Capture the range of candidates that failed to be scored."""
        super().__init__(*args)
        self.start = start
        self.end = end

    def to_dict(self) -> Dict[str, Any]:
        """Convert the exception to a dict representation, candidate range included."""
        return {**super().to_dict(), "start": self.start, "end": self.end}


class ScorerProtocolError(ScorerError):
    """An exception raised when a remote scorer responds with a payload violating the wire protocol."""


class GenerationError(GraphRAGException):
    """An exception raised when the generation endpoint cannot produce a completion."""


class PipelineUnitError(GraphRAGException):
    """An exception raised when there is an error during pipeline run, unexpectedly."""


class PipelineUnitConfigurationSchemaError(PipelineUnitError):
    """An exception raised when pipeline unit configuration does not match schema declared."""


class UnknownPipelineUnitError(PipelineUnitError):
    """An exception raised when an unknown pipeline unit is requested."""


class PipelineConfigurationError(PipelineUnitError):
    """An exception raised when a wrong instance configuration is supplied.

    Or any error during configuration initialization.
    """


class ExtractorError(PipelineUnitError):
    """An exception raised when a subgraph extractor fails unexpectedly."""


class PathFilterError(PipelineUnitError):
    """An exception raised when a path filter fails unexpectedly."""

    __slots__ = ["hop"]

    def __init__(self, *args: Any, hop: Optional[int] = None) -> None:
        """Capture the hop in which the path filter failed."""
        super().__init__(*args)
        self.hop = hop

    def to_dict(self) -> Dict[str, Any]:
        """Convert the exception to a dict representation, hop included."""
        return {**super().to_dict(), "hop": self.hop}


class RefinerError(PipelineUnitError):
    """An exception raised when a path refiner fails unexpectedly."""
