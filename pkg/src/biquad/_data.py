"""Access to the bundled expected-value files."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def load(name: str) -> dict:
    text = resources.files("biquad").joinpath("data", f"{name}.json").read_text()
    return json.loads(text)
