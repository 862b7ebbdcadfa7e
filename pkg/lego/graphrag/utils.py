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

"""Various helpers and utility functions."""

import hashlib
import os
import logging

from typing import Any
from typing import Set

_HASH_SEPARATOR = b"\x1f"
_UINT64 = 2 ** 64


def should_keep_history(value: Any) -> bool:
    """Check if the history should be kept.

    Used as attrs converter. If not set explicitly, check environment variable to turn on history
    tracking. The default value of `value' is None which triggers checks in environment variables.
    """
    if value is None:
        return bool(int(os.getenv("LEGO_GRAPHRAG_HISTORY", 0)))

    if isinstance(value, bool):
        return value

    raise ValueError(f"Unknown keep history configuration value: {value!r} if of type {type(value)!r}")


def log_once(
    logger: logging.Logger,
    log_state: Set[Any],
    log_state_key: Any,
    msg: str,
    *args: Any,
    level: int = logging.WARNING,
    **kwargs: Any,
) -> None:
    """Log the given message once."""
    if log_state_key in log_state:
        # Already logged, noop.
        return

    log_state.add(log_state_key)
    logger.log(level, msg, *args, **kwargs)


def stable_hash(*parts: Any) -> int:
    """Compute a process independent 64-bit hash of the given parts.

    The builtin hash() is salted per interpreter run, this one is not.
    """
    digest = hashlib.sha256(_HASH_SEPARATOR.join(str(part).encode("utf-8") for part in parts)).digest()
    return int.from_bytes(digest[:8], "big")


def stable_unit_interval(*parts: Any) -> float:
    """Map the given parts to a reproducible float in [0, 1)."""
    return stable_hash(*parts) / _UINT64


def derive_seed(seed: int, *parts: Any) -> int:
    """Derive a child seed, usable with numpy generators, from a parent seed and a key."""
    return stable_hash(seed, *parts) % (2 ** 32)
