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

"""Prompt templates shipped as package data."""

import os
import re
from functools import lru_cache

_DATA_DIR = os.path.join(os.path.dirname(os.path.realpath(__file__)), "data", "prompts")


@lru_cache(maxsize=None)
def load_template(name: str) -> str:
    """Load a prompt template by its name (file name without extension)."""
    with open(os.path.join(_DATA_DIR, f"{name}.txt"), "r", encoding="utf-8") as template_file:
        return template_file.read()


def fill(template: str, **slots: str) -> str:
    """Substitute {slot} markers, other text is kept byte for byte."""
    if not slots:
        return template

    pattern = re.compile("\\{(" + "|".join(re.escape(name) for name in slots) + ")\\}")
    return pattern.sub(lambda match: slots[match.group(1)], template)
