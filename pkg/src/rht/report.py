"""Structured command reports with a stable machine mode.

A report is an ordered list of (key, value) string pairs.  Machine mode
renders one ``key = value`` line per field, starting with the schema tag;
parsing a machine report and re-rendering it is byte-identical, which is
what the golden tests pin.
"""

from __future__ import annotations

from fractions import Fraction

SCHEMA = "rht.report.v1"


def render_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


class Report:
    def __init__(self, command: str):
        self.fields = [("schema", SCHEMA), ("command", command)]

    def add(self, key: str, value) -> "Report":
        if "=" in key or "\n" in key or key != key.strip():
            raise ValueError(f"bad report key {key!r}")
        text = render_value(value)
        if "\n" in text:
            raise ValueError("report values must be single lines")
        self.fields.append((key, text))
        return self

    def get(self, key, default=None):
        for k, v in self.fields:
            if k == key:
                return v
        return default

    def render_machine(self) -> str:
        return "".join(f"{k} = {v}\n" for k, v in self.fields)

    def render_human(self) -> str:
        body = [f"[{self.get('command')}]"]
        width = max((len(k) for k, _v in self.fields), default=0)
        for k, v in self.fields:
            if k in ("schema", "command"):
                continue
            body.append(f"  {k.ljust(width)}  {v}")
        return "\n".join(body) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Report":
        report = cls.__new__(cls)
        report.fields = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            key, sep, value = line.partition(" = ")
            if not sep:
                raise ValueError(f"line {lineno}: not a machine report line")
            report.fields.append((key, value))
        if report.get("schema") != SCHEMA:
            raise ValueError("unknown or missing report schema")
        return report

    def __eq__(self, other):
        return isinstance(other, Report) and self.fields == other.fields

    __hash__ = None
