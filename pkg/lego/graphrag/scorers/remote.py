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

"""A base class for scorers backed by a remote model endpoint."""

import abc
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Any
from typing import Callable
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import TypeVar

import attr
import requests

from ..exceptions import ScorerError
from ..exceptions import ScorerProtocolError
from ..scorer import Scorer
from ..transport import new_session
from ..transport import post_json

_LOGGER = logging.getLogger(__name__)

SCORER_TOKEN_ENV = "LEGO_SCORER_TOKEN"

_T = TypeVar("_T")
_R = TypeVar("_R")


@attr.s(slots=True)
class RemoteScorer(Scorer, metaclass=abc.ABCMeta):
    """Remote scorers batch requests and bound the number of requests in flight.

    An endpoint set to `stub' makes the scorer answer locally with deterministic values, no request
    is issued.
    """

    _session = attr.ib(type=Optional[requests.Session], init=False, default=None)
    _session_lock = attr.ib(type=Any, init=False, factory=threading.Lock)
    _in_flight = attr.ib(type=Any, init=False, default=None)

    def __attrs_post_init__(self) -> None:
        """Initialize the semaphore bounding requests in flight."""
        self._in_flight = threading.BoundedSemaphore(self.config.max_in_flight)

    @property
    def session(self) -> requests.Session:
        """Get an HTTP session, created lazily."""
        with self._session_lock:
            if self._session is None:
                self._session = new_session(pool_maxsize=self.config.max_in_flight)

            return self._session

    def close(self) -> None:
        """Close the underlying HTTP session."""
        with self._session_lock:
            if self._session is not None:
                self._session.close()
                self._session = None

    def post(self, payload: Dict[str, Any], start: int, end: int) -> Any:
        """Post a request for candidates in range [start, end), respect the in-flight limit."""
        with self._in_flight:
            try:
                return post_json(
                    self.session,
                    self.config.endpoint,  # type: ignore
                    payload,
                    token_env=SCORER_TOKEN_ENV,
                    timeout=self.config.timeout,
                )
            except ValueError as exc:
                raise ScorerProtocolError(
                    f"Endpoint {self.config.endpoint} returned a response which is not JSON: {exc}",
                    start=start,
                    end=end,
                ) from exc
            except requests.RequestException as exc:
                _LOGGER.exception("Request to %r failed for candidates %d-%d", self.config.endpoint, start, end)
                raise ScorerError(
                    f"Request to {self.config.endpoint} failed for candidates {start}-{end}: {exc}",
                    start=start,
                    end=end,
                ) from exc

    def iter_batches(self, items: Sequence[_T]) -> List[Tuple[int, Sequence[_T]]]:
        """Split items into batches of at most batch_size, keep their offsets."""
        size = self.config.batch_size
        return [(start, items[start : start + size]) for start in range(0, len(items), size)]

    def map_batches(self, items: Sequence[_T], func: Callable[[int, Sequence[_T]], List[_R]]) -> List[_R]:
        """Apply func to batches of items concurrently, concatenate results in the original order."""
        batches = self.iter_batches(items)
        if len(batches) == 1:
            return func(*batches[0])

        result: List[_R] = []
        with ThreadPoolExecutor(max_workers=min(len(batches), self.config.max_in_flight)) as executor:
            for chunk in executor.map(lambda batch: func(*batch), batches):
                result.extend(chunk)

        return result

    @staticmethod
    def check_length(values: Sequence[Any], expected: int, start: int) -> None:
        """Check the endpoint returned one value per item sent."""
        if len(values) != expected:
            raise ScorerProtocolError(
                f"Endpoint returned {len(values)} values for {expected} items",
                start=start,
                end=start + expected,
            )
