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

"""Enum types used in lego-graphrag code."""

from enum import auto
from enum import Enum


class _ExtendedEnum(Enum):
    """A custom enum with extended functionality."""

    @classmethod
    def by_name(cls, name: str) -> "Enum":
        """Retrieve enum based on its name."""
        try:
            return cls.__members__[name.upper()]
        except KeyError as exc:
            raise ValueError(
                f"Unknown value {name!r} for type {cls.__name__}, available: {[m.name.lower() for m in cls]}"
            ) from exc


class Direction(_ExtendedEnum):
    """Orientation in which an edge is traversed relative to the stored triple."""

    FORWARD = 1
    BACKWARD = 2
    BOTH = 3


class CandidateKind(_ExtendedEnum):
    """Kind of object a scoring candidate was rendered from."""

    ENTITY = auto()
    RELATION = auto()
    TRIPLE = auto()
    PATH = auto()


class ScorerKind(_ExtendedEnum):
    """Scorer implementations known to the engine."""

    BM25 = auto()
    RANDOM = auto()
    EMBEDDING = auto()
    RERANK = auto()
    LLM = auto()

    @property
    def is_remote(self) -> bool:
        """Check whether scorers of this kind talk to a remote endpoint."""
        return self in (ScorerKind.EMBEDDING, ScorerKind.RERANK, ScorerKind.LLM)


class Shots(_ExtendedEnum):
    """Prompt template variants used in the generation phase."""

    ZERO_SHOT = "0"
    ONE_SHOT = "1"
    FEW_SHOT = "few"

    @classmethod
    def from_flag(cls, flag: str) -> "Shots":
        """Resolve the command line flag value (0, 1, few) to a template kind."""
        for member in cls:
            if member.value == flag:
                return member

        raise ValueError(f"Unknown shots value {flag!r}, available: {[m.value for m in cls]}")


class ReportFormat(_ExtendedEnum):
    """Output formats of comparison reports."""

    MD = auto()
    CSV = auto()
