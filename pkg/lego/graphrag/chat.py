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

"""A chat-completion client shared by the LLM scorer and the generation phase."""

import logging
import threading
from typing import Any
from typing import Dict
from typing import List
from typing import Optional

import attr
import requests

from .exceptions import GenerationError
from .scorer import STUB_ENDPOINT
from .transport import new_session
from .transport import post_json

_LOGGER = logging.getLogger(__name__)

LLM_TOKEN_ENV = "LEGO_LLM_TOKEN"
DEFAULT_STOP = ("<|eot_id|>",)

Message = Dict[str, str]


def truncate_at_stop(text: str, stop: List[str]) -> str:
    """Cut the completion before the earliest stop sequence."""
    cut = len(text)
    for sequence in stop:
        if not sequence:
            continue

        position = text.find(sequence)
        if position != -1:
            cut = min(cut, position)

    return text[:cut]


@attr.s(slots=True)
class ChatClient:
    """Issue single chat completions against an OpenAI compatible endpoint."""

    endpoint = attr.ib(type=str)
    model = attr.ib(type=Optional[str], default=None)
    temperature = attr.ib(type=float, default=0.01, kw_only=True)
    max_tokens = attr.ib(type=int, default=256, kw_only=True)
    stop = attr.ib(type=List[str], default=attr.Factory(lambda: list(DEFAULT_STOP)), kw_only=True)
    timeout = attr.ib(type=float, default=60.0, kw_only=True)
    max_in_flight = attr.ib(type=int, default=4, kw_only=True)
    token_env = attr.ib(type=str, default=LLM_TOKEN_ENV, kw_only=True)
    stub_completion = attr.ib(type=Optional[str], default=None, kw_only=True)

    _session = attr.ib(type=Optional[requests.Session], init=False, default=None)
    _lock = attr.ib(type=Any, init=False, factory=threading.Lock)
    _in_flight = attr.ib(type=Any, init=False, default=None)

    def __attrs_post_init__(self) -> None:
        """Initialize the semaphore bounding requests in flight."""
        self._in_flight = threading.BoundedSemaphore(self.max_in_flight)

    @property
    def is_stub(self) -> bool:
        """Check whether the client answers locally without issuing requests."""
        return self.endpoint == STUB_ENDPOINT

    @property
    def session(self) -> requests.Session:
        """Get an HTTP session, created lazily."""
        with self._lock:
            if self._session is None:
                self._session = new_session(pool_maxsize=self.max_in_flight)

            return self._session

    def close(self) -> None:
        """Close the underlying HTTP session."""
        with self._lock:
            if self._session is not None:
                self._session.close()
                self._session = None

    def _request(self, messages: List[Message]) -> str:
        payload = {
            "model": self.model,
            "messages": messages,
            "temperature": self.temperature,
            "max_tokens": self.max_tokens,
            "stop": list(self.stop),
        }
        with self._in_flight:
            try:
                response = post_json(
                    self.session, self.endpoint, payload, token_env=self.token_env, timeout=self.timeout
                )
            except ValueError as exc:
                raise GenerationError(f"Chat endpoint {self.endpoint} returned a response which is not JSON") from exc
            except requests.RequestException as exc:
                _LOGGER.exception("Chat completion request to %r failed", self.endpoint)
                raise GenerationError(f"Chat completion request to {self.endpoint} failed: {exc}") from exc

        try:
            content = response["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise GenerationError(f"Malformed chat completion response: {exc}") from exc

        return content if isinstance(content, str) else ""

    def complete(self, messages: List[Message]) -> str:
        """Get the first choice's message content, cut at the first stop sequence."""
        if self.is_stub:
            content = self.stub_completion if self.stub_completion is not None else messages[-1]["content"]
        else:
            content = self._request(messages)

        return truncate_at_stop(content, self.stop)

    def complete_prompt(self, prompt: str) -> str:
        """Complete a prompt sent as a single user message."""
        return self.complete([{"role": "user", "content": prompt}])
