"""Structured command reports.

A report is a plain JSON-able dictionary under a versioned schema:
input echo, ordered derivation trace, verdict, artifacts and optional
timing.  All exact values are rendered as canonical text, never as
floats.  The text rendering is a pure function of the JSON data, so
the two output modes can never disagree.
"""

import json

SCHEMA = "riccati-galois/1"


class VerificationError(Exception):
    """An artifact failed its identity check before emission."""


class Report:
    __slots__ = ("data",)

    def __init__(self, command):
        self.data = {
            "schema": SCHEMA,
            "command": command,
            "input": {},
            "trace": [],
            "verdict": {},
            "artifacts": {},
        }

    def set_input(self, name, text):
        self.data["input"][name] = text

    def add_trace(self, text):
        self.data["trace"].append(text)

    def set_verdict(self, **fields):
        self.data["verdict"].update(fields)

    def add_artifact(self, name, text):
        self.data["artifacts"][name] = text

    def finish(self, seconds=None):
        """The JSON-able dictionary; timing only when seconds given."""
        out = dict(self.data)
        if seconds is not None:
            out["timing"] = {"seconds": round(seconds, 6)}
        return out


def to_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _render_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ", ".join(_render_value(v) for v in value) + "]"
    return str(value)


def render_text(data) -> str:
    """Human-readable form, derived from the JSON data alone."""
    lines = ["%s %s" % (data["schema"], data["command"])]
    if data.get("input"):
        lines.append("input:")
        for name in sorted(data["input"]):
            lines.append("  %s = %s" % (name, data["input"][name]))
    if data.get("trace"):
        lines.append("trace:")
        for entry in data["trace"]:
            lines.append("  - %s" % entry)
    lines.append("verdict:")
    for name in sorted(data.get("verdict", {})):
        lines.append(
            "  %s = %s" % (name, _render_value(data["verdict"][name]))
        )
    if data.get("artifacts"):
        lines.append("artifacts:")
        for name in sorted(data["artifacts"]):
            lines.append(
                "  %s = %s" % (name, _render_value(data["artifacts"][name]))
            )
    if "timing" in data:
        lines.append("timing: %s s" % data["timing"]["seconds"])
    return "\n".join(lines) + "\n"
