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

"""Built-in grid of retrieval instances.

Remote scorers point to endpoints configured in the environment, `stub` when not set:

  LEGO_GRAPHRAG_EMBEDDING_ENDPOINT, LEGO_GRAPHRAG_EMBEDDING_MODEL
  LEGO_GRAPHRAG_EMBEDDING_FT_ENDPOINT, LEGO_GRAPHRAG_EMBEDDING_FT_MODEL
  LEGO_GRAPHRAG_RERANK_ENDPOINT, LEGO_GRAPHRAG_RERANK_MODEL
  LEGO_GRAPHRAG_LLM_ENDPOINT, LEGO_GRAPHRAG_LLM_MODEL
  LEGO_GRAPHRAG_LLM_FT_ENDPOINT, LEGO_GRAPHRAG_LLM_FT_MODEL
"""

import os
from typing import Any
from typing import Dict
from typing import List
from typing import Tuple

from .exceptions import PipelineConfigurationError
from .scorer import STUB_ENDPOINT

PRESET_IDS = range(21)

# Short name, long name, scorer kind, environment prefix and default model.
_SCORED_VARIANTS: List[Tuple[str, str, str, str, str]] = [
    ("BM25", "BM25", "bm25", "", ""),
    ("ST", "Sentence-Transformers", "embedding", "EMBEDDING", "all-MiniLM-L6-v2"),
    ("Reranker", "Rerank model", "rerank", "RERANK", "bge-reranker-v2-m3"),
    ("ST_FT", "Fine-tuned Sentence-Transformers", "embedding", "EMBEDDING_FT", "all-MiniLM-L6-v2-finetuned"),
    ("LLM", "Vanilla LLMs", "llm", "LLM", "Meta-Llama-3-8B-Instruct"),
    ("LLM_FT", "Fine-tuned LLMs", "llm", "LLM_FT", "Meta-Llama-3-8B-Instruct-finetuned"),
]

_PPR = ("PPR", "Personalized PageRank")
_SPF = ("SPF", "Shortest Path-Filtering")
_RANDOM = ("Random", "Random")


def _scorer(kind: str, env_prefix: str, default_model: str) -> Dict[str, Any]:
    if not env_prefix:
        return {"kind": kind}

    return {
        "kind": kind,
        "endpoint": os.getenv(f"LEGO_GRAPHRAG_{env_prefix}_ENDPOINT", STUB_ENDPOINT),
        "model": os.getenv(f"LEGO_GRAPHRAG_{env_prefix}_MODEL", default_model),
    }


def _instance(
    instance_id: int, names: List[Tuple[str, str]], se: Dict[str, Any], pf: Dict[str, Any], pr: Dict[str, Any]
) -> Dict[str, Any]:
    return {
        "id": instance_id,
        "name": " -> ".join(short for short, _ in names),
        "description": " -> ".join(long for _, long in names),
        "se": se,
        "pf": pf,
        "pr": pr,
    }


def preset(instance_id: int) -> Dict[str, Any]:
    """Get configuration of a built-in instance, stage options not stated are defaulted on load."""
    if instance_id not in PRESET_IDS:
        raise PipelineConfigurationError(f"No built-in instance with id {instance_id!r}, available are 0-20")

    se = {"method": "ppr"}
    pf = {"method": "spf"}
    pr = {"method": "random"}

    if instance_id == 0:
        return _instance(0, [_PPR, _SPF, _RANDOM], se, pf, pr)

    if instance_id == 1:
        return _instance(1, [("RWR", "RWR"), _SPF, _RANDOM], {"method": "rwr"}, pf, pr)

    if instance_id == 8:
        return _instance(8, [_PPR, ("CPF", "Complete Path-Filtering"), _RANDOM], se, {"method": "cpf"}, pr)

    if 2 <= instance_id <= 7:
        short, long, kind, env_prefix, model = _SCORED_VARIANTS[instance_id - 2]
        se = {"method": "ppr_scored", "scorer": _scorer(kind, env_prefix, model)}
        names = [(f"PPR&{short}", f"Personalized PageRank&{long}"), _SPF, _RANDOM]
    elif 9 <= instance_id <= 14:
        short, long, kind, env_prefix, model = _SCORED_VARIANTS[instance_id - 9]
        pf = {"method": "beam", "scorer": _scorer(kind, env_prefix, model)}
        names = [_PPR, (f"{short}&BS", f"{long}&Iterative Path-Filtering"), _RANDOM]
    else:
        short, long, kind, env_prefix, model = _SCORED_VARIANTS[instance_id - 15]
        pr = {"method": "scored", "scorer": _scorer(kind, env_prefix, model)}
        names = [_PPR, _SPF, (short, long)]

    return _instance(instance_id, names, se, pf, pr)


def iter_presets() -> List[Dict[str, Any]]:
    """Get configurations of all built-in instances ordered by id."""
    return [preset(instance_id) for instance_id in PRESET_IDS]
