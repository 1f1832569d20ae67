"""Access to the published comparison constants shipped with the package.

Everything here is transcribed from the literature for side-by-side
reporting; none of it is computed by this toolkit.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Dict, List


@lru_cache(maxsize=1)
def _load() -> dict:
    text = resources.files("felixsim.data").joinpath("reference_metrics.json").read_text()
    return json.loads(text)


def cell_designs() -> List[dict]:
    rows = []
    for row in _load()["cell_designs"]:
        row = dict(row)
        row["er_sum"] = Fraction(row["er_sum"])
        row["er_cout"] = Fraction(row["er_cout"])
        rows.append(row)
    return rows


def rca_error_rows(scenario: int) -> List[dict]:
    key = f"scenario{scenario}"
    return [dict(r) for r in _load()["rca_error"][key]]


def rca_circuit_constants() -> Dict[str, dict]:
    return dict(_load()["rca_circuit"])


def cell_circuit_constants() -> Dict[str, dict]:
    return dict(_load()["cell_circuit"])


def image_quality_constants() -> Dict[str, dict]:
    return dict(_load()["image_quality_fafa"])


def provenance() -> str:
    return _load()["provenance"]
