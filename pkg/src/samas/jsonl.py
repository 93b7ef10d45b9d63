"""JSONL reading/writing helpers used by the command-line tools."""
from __future__ import annotations

import json
from typing import Iterable, Iterator


class MalformedLine(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def iter_jsonl(path) -> Iterator[tuple[int, object]]:
    """Yield ``(lineno, obj)``; unparseable lines yield a MalformedLine instead of raising.

    Blank lines are skipped. Errors opening the file propagate as OSError.
    """
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                yield lineno, MalformedLine(lineno, f"invalid JSON ({exc.msg})")
                continue
            if not isinstance(obj, dict):
                yield lineno, MalformedLine(lineno, "expected a JSON object")
                continue
            yield lineno, obj


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def write_jsonl(records: Iterable[dict], fh) -> int:
    n = 0
    for rec in records:
        fh.write(dumps(rec) + "\n")
        n += 1
    return n
