"""Battery execution and deterministic report emission.

Machine format is line-delimited JSON with sorted keys and no volatile fields
(timings live on the in-memory records only), so identical configs produce
byte-identical output.  Exit classes: 0 all consistent, 1 usage or config
error, 2 an equivalence disagreement.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .config import BatteryConfig, PROPERTY_CHECKS
from .equivalence import EQUIVALENCE_CHECKS
from .hyperspace import BudgetExceededError, vietoris_periodic_dense_bounded
from .properties import classify
from .systems import FiniteSystem, PLSystem, ShiftSystem
from .verdicts import METHOD_BOUNDED, unknown
from .equivalence import feasible_levels

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONSISTENT = 2


@dataclass(frozen=True)
class CheckRecord:
    system_id: str
    check_id: str
    status: str  # verdict status, or agreement value for equivalence checks
    method: str
    payload: dict | str | None
    seconds: float = 0.0


@dataclass(frozen=True)
class Report:
    records: tuple[CheckRecord, ...]
    summary: dict = field(default_factory=dict)

    @property
    def inconsistent(self) -> bool:
        return self.summary.get("disagreements", 0) > 0

    def exit_code(self) -> int:
        return EXIT_INCONSISTENT if self.inconsistent else EXIT_OK


def _summarise(records) -> dict:
    counts = {"proved": 0, "refuted": 0, "unknown": 0}
    agreements = disagreements = inconclusive = 0
    for record in records:
        if record.status in counts:
            counts[record.status] += 1
        elif record.status == "agree":
            agreements += 1
        elif record.status == "disagree":
            disagreements += 1
        elif record.status == "inconclusive":
            inconclusive += 1
    return {
        "checks": len(records),
        **counts,
        "agreements": agreements,
        "disagreements": disagreements,
        "inconclusive": inconclusive,
    }


def _classify_records(system_id, system, config: BatteryConfig, wanted) -> list[CheckRecord]:
    budgets = config.budgets
    start = time.perf_counter()
    record = classify(
        system,
        k_max=budgets.k_max,
        n_max=budgets.power_bound,
        horizon=budgets.pl_horizon if isinstance(system, PLSystem) else budgets.horizon,
        depth=budgets.pl_depth,
    )
    elapsed = time.perf_counter() - start
    out = []
    for check_id in PROPERTY_CHECKS:
        if check_id in wanted:
            verdict = record[check_id]
            out.append(
                CheckRecord(
                    system_id=system_id,
                    check_id=check_id,
                    status=verdict.status,
                    method=verdict.method,
                    payload=verdict.to_dict(),
                    seconds=elapsed / len(PROPERTY_CHECKS),
                )
            )
    return out


def _equivalence_records(system_id, system, config: BatteryConfig, wanted) -> list[CheckRecord]:
    out = []
    for check_id, check in EQUIVALENCE_CHECKS.items():
        if check_id not in wanted:
            continue
        start = time.perf_counter()
        report = check(system, config.budgets)
        elapsed = time.perf_counter() - start
        out.append(
            CheckRecord(
                system_id=system_id,
                check_id=check_id,
                status=report.agreement,
                method="equivalence-harness",
                payload=report.to_dict(),
                seconds=elapsed,
            )
        )
    return out


def run_battery(config: BatteryConfig) -> Report:
    """Run the selected checks on every system, in config order."""
    records: list[CheckRecord] = []
    wanted = set(config.expanded_checks())
    for spec in config.systems:
        system = spec.build()
        if wanted & set(PROPERTY_CHECKS):
            records.extend(_classify_records(spec.system_id, system, config, wanted))
        if wanted & set(EQUIVALENCE_CHECKS):
            records.extend(_equivalence_records(spec.system_id, system, config, wanted))
    return Report(tuple(records), _summarise(records))


def _witness_verdict(system, config: BatteryConfig):
    budgets = config.budgets
    if isinstance(system, ShiftSystem):
        levels = feasible_levels(system, budgets)
        level = max(levels) if levels else 1
        try:
            return vietoris_periodic_dense_bounded(system, level)
        except BudgetExceededError as exc:
            return unknown(METHOD_BOUNDED, str(exc))
    if isinstance(system, FiniteSystem):
        from .properties import has_dense_small_periodic_sets

        return has_dense_small_periodic_sets(system, budgets.k_max)
    from .properties import has_dense_periodic_points

    return has_dense_periodic_points(system, depth=budgets.pl_depth, k_max=budgets.pl_k_max)


def run_witnesses(config: BatteryConfig) -> Report:
    """Emit only the constructed periodic-set witnesses for every system."""
    records = []
    for spec in config.systems:
        system = spec.build()
        start = time.perf_counter()
        verdict = _witness_verdict(system, config)
        elapsed = time.perf_counter() - start
        records.append(
            CheckRecord(
                system_id=spec.system_id,
                check_id="constructed-witnesses",
                status=verdict.status,
                method=verdict.method,
                payload=verdict.to_dict(),
                seconds=elapsed,
            )
        )
    return Report(tuple(records), _summarise(records))


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------


def _machine_line(data: dict) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def emit_machine(report: Report) -> str:
    lines = [_machine_line({"record": "header", "tool": "hychaos", "format": 1})]
    for record in report.records:
        lines.append(
            _machine_line(
                {
                    "record": "check",
                    "system": record.system_id,
                    "check": record.check_id,
                    "status": record.status,
                    "method": record.method,
                    "payload": record.payload,
                }
            )
        )
    summary = dict(report.summary)
    summary["record"] = "summary"
    summary["consistency"] = "INCONSISTENT" if report.inconsistent else "CONSISTENT"
    lines.append(_machine_line(summary))
    return "\n".join(lines) + "\n"


def _payload_hint(record: CheckRecord) -> str:
    payload = record.payload
    if isinstance(payload, dict):
        if "conditions" in payload:
            parts = ", ".join(
                f"{c['name']}={c['verdict']['status']}" for c in payload["conditions"]
            )
            return parts
        for key in ("witness", "counterexample"):
            inner = payload.get(key)
            if isinstance(inner, dict) and "kind" in inner:
                return f"{key}:{inner['kind']}"
        if "budget_note" in payload:
            note = payload["budget_note"]
            return note if len(note) <= 60 else note[:57] + "..."
    return ""


def emit_human(report: Report) -> str:
    rows = [("system", "check", "status", "method", "detail")]
    for record in report.records:
        rows.append(
            (
                record.system_id,
                record.check_id,
                record.status,
                record.method,
                _payload_hint(record),
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = []
    for idx, row in enumerate(rows):
        line = "  ".join(col.ljust(widths[i]) for i, col in enumerate(row[:4]))
        if row[4]:
            line += "  " + row[4]
        lines.append(line.rstrip())
        if idx == 0:
            lines.append("-" * max(len(l) for l in lines))
    lines.append("")
    summary = report.summary
    lines.append(
        "checks={checks} proved={proved} refuted={refuted} unknown={unknown} "
        "agreements={agreements} disagreements={disagreements} "
        "inconclusive={inconclusive}".format(**summary)
    )
    lines.append("INCONSISTENT" if report.inconsistent else "CONSISTENT")
    return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt: str = "human") -> str:
    if fmt == "machine":
        return emit_machine(report)
    if fmt == "human":
        return emit_human(report)
    raise ValueError(f"unknown format {fmt!r}")
