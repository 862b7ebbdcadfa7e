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

"""Generation phase - answer questions out of refined reasoning paths and score the answers."""

import hashlib
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import attr
import yaml
from voluptuous import All
from voluptuous import Any as SchemaAny
from voluptuous import Invalid
from voluptuous import Length
from voluptuous import Optional as SchemaOptional
from voluptuous import Range
from voluptuous import Required
from voluptuous import Schema

from .chat import ChatClient
from .chat import DEFAULT_STOP
from .enums import Shots
from .exceptions import GenerationError
from .exceptions import PipelineConfigurationError
from .graph import Graph
from .path import PathSet
from .prompts import fill
from .prompts import load_template
from .query import Query
from .render import render_path
from .report import RunReport

_LOGGER = logging.getLogger(__name__)

GENERATION_CONFIG_SCHEMA = Schema(
    {
        Required("endpoint"): All(str, Length(min=1)),
        SchemaOptional("model"): str,
        SchemaOptional("temperature"): All(SchemaAny(int, float), Range(min=0)),
        SchemaOptional("max_tokens"): All(int, Range(min=1)),
        SchemaOptional("stop"): [str],
        SchemaOptional("in_flight"): All(int, Range(min=1)),
        SchemaOptional("timeout"): All(SchemaAny(int, float), Range(min=0, min_included=False)),
        SchemaOptional("stub_completion"): str,
    }
)

_TEMPLATE_NAMES = {
    Shots.ZERO_SHOT: "zero_shot",
    Shots.ONE_SHOT: "one_shot",
    Shots.FEW_SHOT: "few_shot",
}


@attr.s(slots=True, frozen=True)
class PromptTemplate:
    """An answer prompt with slots for rendered paths and the question."""

    kind = attr.ib(type=Shots)
    text = attr.ib(type=str)

    @classmethod
    def load(cls, kind: Shots) -> "PromptTemplate":
        """Load the template shipped for the given number of shots."""
        return cls(kind, load_template(_TEMPLATE_NAMES[kind]))

    @classmethod
    def from_flag(cls, flag: str) -> "PromptTemplate":
        """Load a template by its command line flag (0, 1, few)."""
        return cls.load(Shots.from_flag(flag))


@attr.s(slots=True, frozen=True)
class GenerationParams:
    """Configuration of the answering LLM."""

    endpoint = attr.ib(type=str)
    model = attr.ib(type=Optional[str], default=None, kw_only=True)
    temperature = attr.ib(type=float, default=0.01, converter=float, kw_only=True)
    max_tokens = attr.ib(type=int, default=256, kw_only=True)
    stop = attr.ib(type=Tuple[str, ...], default=DEFAULT_STOP, converter=tuple, kw_only=True)
    in_flight = attr.ib(type=int, default=4, kw_only=True)
    timeout = attr.ib(type=float, default=60.0, converter=float, kw_only=True)
    stub_completion = attr.ib(type=Optional[str], default=None, kw_only=True)

    @classmethod
    def from_dict(cls, dict_: Dict[str, Any]) -> "GenerationParams":
        """Validate and instantiate parameters out of a configuration dictionary."""
        try:
            GENERATION_CONFIG_SCHEMA(dict_)
        except Invalid as exc:
            raise PipelineConfigurationError(f"Invalid LLM configuration: {exc}") from exc

        return cls(**dict_)

    @classmethod
    def load(cls, config: str) -> "GenerationParams":
        """Load parameters from a YAML file or a YAML string."""
        if os.path.isfile(config):
            with open(config, "r") as config_file:
                config = config_file.read()

        try:
            dict_ = yaml.safe_load(config)
        except yaml.YAMLError as exc:
            raise PipelineConfigurationError(f"LLM configuration is not valid YAML: {exc}") from exc

        if not isinstance(dict_, dict):
            raise PipelineConfigurationError(f"LLM configuration has to be a mapping, got {config!r}")

        return cls.from_dict(dict_)

    def to_dict(self) -> Dict[str, Any]:
        """Convert parameters to a dictionary, all defaults stated."""
        result = attr.asdict(self)
        result["stop"] = list(self.stop)
        return result

    def client(self) -> ChatClient:
        """Create a chat client issuing completions with these parameters."""
        return ChatClient(
            self.endpoint,
            self.model,
            temperature=self.temperature,
            max_tokens=self.max_tokens,
            stop=list(self.stop),
            timeout=self.timeout,
            max_in_flight=self.in_flight,
            stub_completion=self.stub_completion,
        )


@attr.s(slots=True)
class GenerationResult:
    """Outcome of answering one query."""

    query_id = attr.ib(type=str)
    prompt = attr.ib(type=str, kw_only=True)
    completion = attr.ib(type=str, kw_only=True, default="")
    hit_at_1 = attr.ib(type=bool, kw_only=True, default=False)
    f1 = attr.ib(type=float, kw_only=True, default=0.0)
    latency_s = attr.ib(type=float, kw_only=True, default=0.0)
    error = attr.ib(type=Optional[Dict[str, Any]], kw_only=True, default=None)

    @property
    def prompt_sha256(self) -> str:
        """Get digest of the prompt sent."""
        return hashlib.sha256(self.prompt.encode("utf-8")).hexdigest()

    @property
    def empty(self) -> bool:
        """Check whether the model answered nothing."""
        return not self.completion.strip()

    def to_dict(self) -> Dict[str, Any]:
        """Convert the result to a generation report record."""
        result = {
            "query_id": self.query_id,
            "prompt_sha256": self.prompt_sha256,
            "completion": self.completion,
            "hit_at_1": self.hit_at_1,
            "f1": self.f1,
            "latency_s": self.latency_s,
            "empty": self.empty,
        }
        if self.error is not None:
            result["error"] = self.error

        return result


def build_prompt(query: Query, paths: PathSet, template: PromptTemplate, graph: Graph) -> str:
    """Insert rendered paths, one per line in path set order, and the question into the template."""
    rendered = "\n".join(render_path(path, graph) for path in paths)
    return fill(template.text, paths=rendered, question=query.text)


def generate(params: GenerationParams, prompt: str, *, client: Optional[ChatClient] = None) -> str:
    """Get a single completion of the prompt, verbatim up to the first stop sequence."""
    if client is not None:
        return client.complete_prompt(prompt)

    client = params.client()
    try:
        return client.complete_prompt(prompt)
    finally:
        client.close()


def score_answer(completion: str, query: Query, graph: Graph) -> Tuple[bool, float]:
    """Score a completion by the answer labels it mentions, case insensitive."""
    text = completion.lower()
    truth = {answer: graph.entity_label(answer).lower() for answer in query.answers}
    found = [answer for answer, label in truth.items() if label and label in text]
    if not found:
        return False, 0.0

    # Precision is relative to the found answer labels only, free text is not parsed for other entities.
    recall = len(found) / len(truth)
    return True, 2 * recall / (1 + recall)


@attr.s(slots=True)
class Generator:
    """Answer queries of a retrieval run, bounded number of calls in flight."""

    graph = attr.ib(type=Graph, kw_only=True)
    params = attr.ib(type=GenerationParams, kw_only=True)
    template = attr.ib(type=PromptTemplate, kw_only=True)

    _client = attr.ib(type=Optional[ChatClient], init=False, default=None)

    def answer(self, query: Query, paths: PathSet) -> GenerationResult:
        """Build the prompt, ask the model and score its answer."""
        assert self._client is not None
        prompt = build_prompt(query, paths, self.template, self.graph)
        result = GenerationResult(query.id, prompt=prompt)

        start = time.perf_counter()
        try:
            result.completion = generate(self.params, prompt, client=self._client)
        except GenerationError as exc:
            _LOGGER.error("Generation for query %r failed: %s", query.id, str(exc))
            result.error = exc.to_dict()
            return result
        finally:
            result.latency_s = time.perf_counter() - start

        if result.empty:
            _LOGGER.warning("Query %r: empty completion", query.id)

        result.hit_at_1, result.f1 = score_answer(result.completion, query, self.graph)
        return result

    def run(self, report: RunReport, queries: Sequence[Query]) -> List[GenerationResult]:
        """Answer every evaluated query of the run, results ordered by query id."""
        by_id = {query.id: query for query in queries}
        jobs = []
        for query_result in report.results:
            if not query_result.evaluated:
                continue

            query = by_id.get(query_result.query_id)
            if query is None:
                _LOGGER.warning("Query %r of the run is not in the dataset, skipping", query_result.query_id)
                continue

            jobs.append((query, query_result.final_paths))

        _LOGGER.info("Generating answers for %d queries, %d in flight", len(jobs), self.params.in_flight)
        self._client = self.params.client()
        try:
            with ThreadPoolExecutor(max_workers=self.params.in_flight) as executor:
                results = list(executor.map(lambda job: self.answer(*job), jobs))
        finally:
            self._client.close()
            self._client = None

        return sorted(results, key=lambda result: result.query_id)


def run_generation(
    report: RunReport, queries: Sequence[Query], graph: Graph, params: GenerationParams, template: PromptTemplate
) -> List[GenerationResult]:
    """Run the generation phase over refined paths of a retrieval run."""
    return Generator(graph=graph, params=params, template=template).run(report, queries)


def summarize(results: Sequence[GenerationResult]) -> Dict[str, Any]:
    """Compute mean HR@1 and F1 over answered queries and count empty completions."""
    return summarize_records([result.to_dict() for result in results])


def dump_generation(results: Sequence[GenerationResult], path: str) -> None:
    """Write generation results as JSON lines."""
    with open(path, "w", encoding="utf-8") as output:
        for result in results:
            output.write(json.dumps(result.to_dict(), sort_keys=True) + "\n")


def load_generation(path: str) -> List[Dict[str, Any]]:
    """Load generation records written by dump_generation."""
    with open(path, "r", encoding="utf-8") as input_file:
        return [json.loads(line) for line in input_file if line.strip()]


def summarize_records(records: Sequence[Dict[str, Any]]) -> Dict[str, Any]:
    """Compute the generation summary out of loaded records."""
    answered = [record for record in records if "error" not in record]
    count = len(answered)
    return {
        "queries": len(records),
        "failed": len(records) - count,
        "empty": sum(1 for record in answered if record.get("empty")),
        "hit_at_1": sum(1 for record in answered if record["hit_at_1"]) / count if count else 0.0,
        "f1": sum(record["f1"] for record in answered) / count if count else 0.0,
    }
