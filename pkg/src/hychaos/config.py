"""Battery configuration: structured JSON with explicit keys.

System definitions use bit-exact, language-neutral encodings: transition
matrices as row strings of 0/1 characters, finite maps as index lists,
rationals as "p/q" strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .equivalence import EQUIVALENCE_CHECKS, Budgets
from .metric import FinitePointSpace, check_metric_axioms
from .properties import COMPOSITES, PROPERTIES
from .systems import (
    FiniteSystem,
    PLSystem,
    ShiftSystem,
    SystemBuildError,
    make_finite_system,
    make_pl_system,
    make_shift_system,
)


class ConfigError(ValueError):
    """The battery configuration is malformed."""


PROPERTY_CHECKS = PROPERTIES + COMPOSITES
CHECK_IDS = PROPERTY_CHECKS + tuple(EQUIVALENCE_CHECKS)
DEFAULT_CHECKS = ("classify",) + tuple(EQUIVALENCE_CHECKS)


@dataclass(frozen=True)
class SystemSpec:
    system_id: str
    kind: str  # finite | shift | pl
    definition: dict

    def build(self):
        if self.kind == "finite":
            return self._build_finite()
        if self.kind == "shift":
            return self._build_shift()
        if self.kind == "pl":
            return self._build_pl()
        raise ConfigError(f"unknown system kind {self.kind!r}")

    def _build_finite(self) -> FiniteSystem:
        points = self.definition.get("points")
        table = self.definition.get("map")
        if not points or table is None:
            raise ConfigError(f"{self.system_id}: finite systems need points and map")
        dist = self.definition.get("dist")
        if dist is None:
            space = FinitePointSpace.uniform(points)
        else:
            space = FinitePointSpace(tuple(points), tuple(tuple(row) for row in dist))
        report = check_metric_axioms(space)
        if not report.ok:
            raise ConfigError(f"{self.system_id}: invalid metric: {report.detail}")
        try:
            return make_finite_system(space, table)
        except SystemBuildError as exc:
            raise ConfigError(f"{self.system_id}: {exc}") from exc

    def _build_shift(self) -> ShiftSystem:
        alphabet = self.definition.get("alphabet")
        rows = self.definition.get("transition")
        if not alphabet or rows is None:
            raise ConfigError(
                f"{self.system_id}: shift systems need alphabet and transition rows"
            )
        matrix = []
        for row in rows:
            if not isinstance(row, str) or set(row) - {"0", "1"}:
                raise ConfigError(
                    f"{self.system_id}: transition rows must be strings of 0/1"
                )
            matrix.append([int(c) for c in row])
        try:
            return make_shift_system(alphabet, matrix)
        except SystemBuildError as exc:
            raise ConfigError(f"{self.system_id}: {exc}") from exc

    def _build_pl(self) -> PLSystem:
        try:
            return make_pl_system(
                self.definition.get("breakpoints", ()),
                self.definition.get("values", ()),
            )
        except (SystemBuildError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{self.system_id}: {exc}") from exc


@dataclass(frozen=True)
class BatteryConfig:
    systems: tuple[SystemSpec, ...]
    checks: tuple[str, ...] = DEFAULT_CHECKS
    budgets: Budgets = field(default_factory=Budgets)
    seed: int = 0
    output: str | None = None

    def expanded_checks(self) -> tuple[str, ...]:
        out: list[str] = []
        for check in self.checks:
            if check == "classify":
                out.extend(PROPERTY_CHECKS)
            else:
                out.append(check)
        return tuple(dict.fromkeys(out))


def _parse_budgets(data: dict) -> Budgets:
    budgets = Budgets()
    known = {
        "level",
        "horizon",
        "k_max",
        "powerset_cap",
        "power_bound",
        "enum_cap",
        "pl_depth",
        "pl_horizon",
        "pl_k_max",
    }
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown budget keys: {sorted(unknown)}")
    for key, value in data.items():
        if value is None:
            continue
        if not isinstance(value, int) or value < 1:
            raise ConfigError(f"budget {key} must be a positive integer")
        budgets = replace(budgets, **{key: value})
    return budgets


def parse_config(text: str) -> BatteryConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")

    raw_systems = data.get("systems")
    if not raw_systems:
        raise ConfigError("config needs a nonempty system list")
    systems = []
    seen_ids = set()
    for i, entry in enumerate(raw_systems):
        if not isinstance(entry, dict):
            raise ConfigError(f"system entry {i} must be an object")
        system_id = entry.get("id")
        kind = entry.get("kind")
        if not system_id or not kind:
            raise ConfigError(f"system entry {i} needs id and kind")
        if system_id in seen_ids:
            raise ConfigError(f"duplicate system id {system_id!r}")
        seen_ids.add(system_id)
        if kind not in ("finite", "shift", "pl"):
            raise ConfigError(f"{system_id}: unknown kind {kind!r}")
        spec = SystemSpec(system_id, kind, dict(entry))
        spec.build()  # validate eagerly so errors surface as config errors
        systems.append(spec)

    checks = tuple(data.get("checks", DEFAULT_CHECKS))
    for check in checks:
        if check != "classify" and check not in CHECK_IDS:
            raise ConfigError(f"unknown check {check!r}")

    budgets = _parse_budgets(data.get("budgets", {}))
    seed = data.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("seed must be an integer")
    output = data.get("output")
    return BatteryConfig(
        systems=tuple(systems),
        checks=checks,
        budgets=budgets,
        seed=seed,
        output=output,
    )


def load_config(path: str) -> BatteryConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_config(handle.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
