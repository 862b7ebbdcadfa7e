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

"""Test the chat-completion client."""

from flexmock import flexmock
import pytest
import requests

from lego.graphrag import chat
from lego.graphrag.chat import ChatClient
from lego.graphrag.chat import truncate_at_stop
from lego.graphrag.exceptions import GenerationError

from .base import GraphRAGTestCase

_ENDPOINT = "http://localhost:8000/v1/chat/completions"


class TestChatClient(GraphRAGTestCase):
    """Test the chat-completion client."""

    @pytest.mark.parametrize(
        "text,stop,expected",
        [
            ("Edgar F. Codd<|eot_id|>trailing", ["<|eot_id|>"], "Edgar F. Codd"),
            ("Edgar F. Codd", ["<|eot_id|>"], "Edgar F. Codd"),
            ("a STOP b END c", ["END", "STOP"], "a "),
            ("abc", ["", "x"], "abc"),
            ("", ["x"], ""),
        ],
    )
    def test_truncate_at_stop(self, text: str, stop, expected: str) -> None:  # type: ignore
        """Test cutting completions at the earliest stop sequence."""
        assert truncate_at_stop(text, stop) == expected

    def test_stub_echo(self) -> None:
        """Test the stub endpoint echoes the prompt."""
        client = ChatClient("stub")
        assert client.is_stub
        assert client.complete_prompt("Who?") == "Who?"

    def test_stub_completion(self) -> None:
        """Test a preset stub completion is cut at stop sequences."""
        client = ChatClient("stub", stub_completion="Edgar F. Codd<|eot_id|>ignored")
        assert client.complete_prompt("Who?") == "Edgar F. Codd"

    def test_request(self) -> None:
        """Test the request payload and the first choice content."""
        client = ChatClient(_ENDPOINT, "llama-3-8b", temperature=0.0, max_tokens=16)
        flexmock(chat).should_receive("post_json").with_args(
            object,
            _ENDPOINT,
            {
                "model": "llama-3-8b",
                "messages": [{"role": "user", "content": "Who?"}],
                "temperature": 0.0,
                "max_tokens": 16,
                "stop": ["<|eot_id|>"],
            },
            token_env="LEGO_LLM_TOKEN",
            timeout=60.0,
        ).and_return({"choices": [{"message": {"content": "Codd<|eot_id|>"}}]}).once()

        assert client.complete_prompt("Who?") == "Codd"
        client.close()

    @pytest.mark.parametrize("response", [{"choices": []}, {"error": "overloaded"}, ["choices"]])
    def test_malformed_response(self, response) -> None:  # type: ignore
        """Test malformed responses raise generation errors."""
        flexmock(chat).should_receive("post_json").and_return(response)
        with pytest.raises(GenerationError):
            ChatClient(_ENDPOINT).complete_prompt("Who?")

    def test_null_content(self) -> None:
        """Test a missing content is an empty completion."""
        flexmock(chat).should_receive("post_json").and_return({"choices": [{"message": {"content": None}}]})
        assert ChatClient(_ENDPOINT).complete_prompt("Who?") == ""

    @pytest.mark.parametrize("exc", [requests.ConnectionError("refused"), ValueError("not JSON")])
    def test_transport_error(self, exc: Exception) -> None:
        """Test transport failures raise generation errors."""
        flexmock(chat).should_receive("post_json").and_raise(exc)
        with pytest.raises(GenerationError):
            ChatClient(_ENDPOINT).complete_prompt("Who?")
