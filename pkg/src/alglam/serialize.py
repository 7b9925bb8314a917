"""JSON-compatible documents for traces and reports. Terms are printed in the surface syntax."""

from __future__ import annotations

from .rules import ReductionTrace, RuleName, StepRecord
from .syntax import parse, pretty


def trace_to_dict(trace: ReductionTrace) -> dict:
    doc = {
        "start": pretty(trace.start),
        "steps": [
            {"rule": s.rule.value, "position": list(s.position), "reversed": s.reversed, "term": pretty(s.result)}
            for s in trace.steps
        ],
    }
    if trace.alternatives is not None:
        doc["alternatives"] = list(trace.alternatives)
    return doc


def trace_from_dict(doc: dict) -> ReductionTrace:
    steps = [StepRecord(RuleName(s["rule"]), tuple(s["position"]), bool(s["reversed"]), parse(s["term"]))
             for s in doc["steps"]]
    return ReductionTrace(parse(doc["start"]), steps, doc.get("alternatives"))
