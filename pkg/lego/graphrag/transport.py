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

"""HTTP sessions used to talk to model endpoints."""

import logging
import os
from typing import Any
from typing import Dict
from typing import Optional

import requests
from requests.adapters import HTTPAdapter
from urllib3.util.retry import Retry

_LOGGER = logging.getLogger(__name__)

RETRY_ATTEMPTS = 3
RETRY_BACKOFF_FACTOR = 0.5
RETRY_STATUS_FORCELIST = (429, 500, 502, 503, 504)


def new_session(*, pool_maxsize: int = 8) -> requests.Session:
    """Create a session retrying transport failures with exponential backoff."""
    session = requests.Session()
    retry_strategy = Retry(
        total=RETRY_ATTEMPTS,
        backoff_factor=RETRY_BACKOFF_FACTOR,
        status_forcelist=RETRY_STATUS_FORCELIST,
        allowed_methods=frozenset({"POST"}),
        raise_on_status=False,
    )
    adapter = HTTPAdapter(max_retries=retry_strategy, pool_connections=pool_maxsize, pool_maxsize=pool_maxsize)
    session.mount("http://", adapter)
    session.mount("https://", adapter)
    return session


def auth_headers(token_env: str) -> Dict[str, str]:
    """Get bearer authorization header if the token environment variable is set."""
    token = os.getenv(token_env)
    if token:
        return {"Authorization": f"Bearer {token}"}

    return {}


def post_json(
    session: requests.Session, url: str, payload: Dict[str, Any], *, token_env: str, timeout: Optional[float]
) -> Any:
    """Issue a POST request with JSON payload and return the decoded JSON response.

    Raises requests.RequestException on transport failures (after retries) and on HTTP error
    statuses, ValueError if the response body is not a JSON document.
    """
    _LOGGER.debug("POST %s", url)
    response = session.post(url, json=payload, headers=auth_headers(token_env), timeout=timeout)
    response.raise_for_status()
    return response.json()
