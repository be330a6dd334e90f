"""Named, versioned presets for published constants.

Every constant that operations reproduce (case-study scenarios, GPU pricing,
per-message cost estimates, reconstructed regression coefficients, reference
agreement values) ships in data/presets.json and is reached by name; nothing
here is baked into operation code. Responses derived from a preset echo the
preset version string.

The reconstructed coefficient sets are stored as their two anchor rows and
solved at load time, so the data file stays the single source of truth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Any

from .errors import InvalidInputError
from .inference_cost import GpuPricing
from .usability import LinearModel, RuCoefficients


@dataclass(frozen=True)
class CoefficientSetPreset:
    set_id: str
    coefficients: RuCoefficients
    note: str
    units: str


class Presets:
    """Read-only view over the preset catalog."""

    def __init__(self, raw: dict[str, Any]):
        self._raw = raw

    @property
    def version(self) -> str:
        return self._raw["version"]

    @property
    def raw(self) -> dict[str, Any]:
        return self._raw

    # -- lookups ------------------------------------------------------------

    def scenario_names(self) -> tuple[str, ...]:
        return tuple(sorted(self._raw["scenarios"]))

    def scenario_dict(self, name: str) -> dict[str, Any]:
        try:
            return self._raw["scenarios"][name]
        except KeyError:
            raise InvalidInputError(
                f"unknown scenario preset {name!r}; available: "
                f"{', '.join(self.scenario_names())}") from None

    def gpu(self, preset_id: str) -> GpuPricing:
        try:
            entry = self._raw["gpus"][preset_id]
        except KeyError:
            raise InvalidInputError(
                f"unknown GPU preset {preset_id!r}; available: "
                f"{', '.join(sorted(self._raw['gpus']))}") from None
        return GpuPricing(monthly_cost=entry["monthly_cost"],
                          billed_hours_per_month=entry["billed_hours_per_month"])

    def coefficient_set(self, set_id: str) -> CoefficientSetPreset:
        try:
            entry = self._raw["coefficient_sets"][set_id]
        except KeyError:
            raise InvalidInputError(
                f"unknown coefficient set {set_id!r}; available: "
                f"{', '.join(sorted(self._raw['coefficient_sets']))}") from None
        low = entry["anchors"]["low"]
        high = entry["anchors"]["high"]
        dx = high["ppl"] - low["ppl"]
        if dx == 0:
            raise InvalidInputError(f"coefficient set {set_id!r} anchors share a ppl")
        lines = {}
        for action in ("use", "edit", "ignore"):
            y0, y1 = low[f"pct_{action}"], high[f"pct_{action}"]
            slope = (y1 - y0) / dx
            lines[action] = LinearModel(slope=slope, intercept=y0 - slope * low["ppl"])
        return CoefficientSetPreset(
            set_id=set_id,
            coefficients=RuCoefficients(**lines),
            note=entry.get("note", ""),
            units=entry.get("units", "percent"),
        )

    def message_cost(self, preset_id: str) -> float:
        try:
            return self._raw["message_costs"][preset_id]["usd_per_message"]
        except KeyError:
            raise InvalidInputError(
                f"unknown message cost preset {preset_id!r}; available: "
                f"{', '.join(sorted(self._raw['message_costs']))}") from None

    def api_pricing_usd_per_1k(self, preset_id: str) -> float:
        try:
            return self._raw["api_pricing"][preset_id]["usd_per_1k_tokens"]
        except KeyError:
            raise InvalidInputError(
                f"unknown API pricing preset {preset_id!r}; available: "
                f"{', '.join(sorted(self._raw['api_pricing']))}") from None


@lru_cache(maxsize=1)
def load_presets() -> Presets:
    """The catalog bundled with the package."""
    text = resources.files("encs_lab").joinpath("data/presets.json").read_text("utf-8")
    return Presets(json.loads(text))
