"""
Line-oriented ``key = value`` files: digit-set specs, products, pipelines.

Spec file::

    # demo set
    schedule = recurrence k0=5        # or: explicit 5,10,30,120
    a1 = 1/2
    a2 = 1/4

Product file (order-significant; paths relative to the file)::

    factor = s.cfg
    factor = t.cfg
    power = 2
"""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Tuple

from .digit_sets import DigitSetSpec, Schedule, default_schedule
from .errors import ParseError

_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_RECURRENCE = re.compile(r"^recurrence\s*k0\s*=\s*(\d+)$")
_EXPLICIT = re.compile(r"^explicit\s*(\d+(?:\s*,\s*\d+)*)$")


def iter_pairs(text: str, source: str = "<text>") -> List[Tuple[str, str, int]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{source}:{lineno}: expected key = value, got {raw.strip()!r}")
        key, value = line.split("=", 1)
        key, value = key.strip().lower(), value.strip()
        if not key or not value:
            raise ParseError(f"{source}:{lineno}: empty key or value")
        out.append((key, value, lineno))
    return out


def parse_rational(text: str, where: str = "") -> Fraction:
    compact = "".join(text.split())
    if not _RATIONAL.match(compact):
        raise ParseError(f"{where}expected a rational p/q, got {text!r}")
    try:
        return Fraction(compact)
    except ZeroDivisionError:
        raise ParseError(f"{where}zero denominator in {text!r}") from None


def parse_schedule(text: str, where: str = "") -> Schedule:
    text = text.strip()
    m = _RECURRENCE.match(text)
    if m:
        return Schedule.recurrence(int(m.group(1)))
    m = _EXPLICIT.match(text)
    if m:
        return Schedule.explicit(int(v) for v in m.group(1).split(","))
    raise ParseError(f"{where}unrecognised schedule {text!r}")


def parse_spec(text: str, source: str = "<text>") -> DigitSetSpec:
    seen: Dict[str, str] = {}
    for key, value, lineno in iter_pairs(text, source):
        if key not in ("schedule", "a1", "a2"):
            raise ParseError(f"{source}:{lineno}: unknown key {key!r}")
        if key in seen:
            raise ParseError(f"{source}:{lineno}: duplicate key {key!r}")
        seen[key] = value
    for key in ("a1", "a2"):
        if key not in seen:
            raise ParseError(f"{source}: missing {key}")
    a1 = parse_rational(seen["a1"], f"{source}: a1: ")
    a2 = parse_rational(seen["a2"], f"{source}: a2: ")
    if "schedule" in seen:
        schedule = parse_schedule(seen["schedule"], f"{source}: ")
    else:
        if a1 <= 0 or a2 <= 0:
            raise ParseError(f"{source}: parameters must be positive")
        schedule = default_schedule(a1, a2)
    return DigitSetSpec(schedule, a1, a2)


def load_spec(path) -> DigitSetSpec:
    path = Path(path)
    return parse_spec(path.read_text(), str(path))


def parse_product(text: str, base: Path, source: str = "<text>") -> Tuple[List[DigitSetSpec], int]:
    factors = []
    power = None
    for key, value, lineno in iter_pairs(text, source):
        if key == "factor":
            factors.append(load_spec(base / value))
        elif key == "power":
            if power is not None:
                raise ParseError(f"{source}:{lineno}: duplicate power")
            if not value.isdigit() or int(value) < 1:
                raise ParseError(f"{source}:{lineno}: power must be a positive integer")
            power = int(value)
        else:
            raise ParseError(f"{source}:{lineno}: unknown key {key!r}")
    if not factors:
        raise ParseError(f"{source}: no factor lines")
    return factors, power or 1


def load_product(path) -> Tuple[List[DigitSetSpec], int]:
    path = Path(path)
    return parse_product(path.read_text(), path.parent, str(path))


def load_pipeline(path) -> Dict[str, str]:
    path = Path(path)
    out: Dict[str, str] = {}
    for key, value, lineno in iter_pairs(path.read_text(), str(path)):
        if key in out:
            raise ParseError(f"{path}:{lineno}: duplicate key {key!r}")
        out[key] = value
    if "command" not in out:
        raise ParseError(f"{path}: missing 'command'")
    return out
