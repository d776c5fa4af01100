"""Line-oriented ``key = value`` description of a number system.

    # Heighway dragon
    name  = heighway
    dim   = 2
    row   = -1 1
    row   = -1 -1
    digit = 0 0
    digit = 1 0

``row`` lines give A row by row, ``digit`` lines the digit vectors. Blank
lines and text after ``#`` are ignored.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import ConfigError
from .numsys import NumberSystem, validate

SHIPPED = ("base2", "base10", "base3_neg", "lai_wang", "heighway")


@dataclass
class SystemConfig:
    dim: int
    rows: list = field(default_factory=list)
    digits: list = field(default_factory=list)
    name: str = ""

    def build(self) -> NumberSystem:
        return validate(self.rows, self.digits, name=self.name)


def _ints(value: str, lineno: int, dim) -> list:
    try:
        out = [int(tok) for tok in value.split()]
    except ValueError:
        raise ConfigError(f"expected integers, got {value!r}", lineno) from None
    if dim is not None and len(out) != dim:
        raise ConfigError(f"expected {dim} integers, got {len(out)}", lineno)
    return out


def parse_config(text: str) -> SystemConfig:
    dim = None
    name = ""
    rows, digits = [], []
    pending = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "dim":
            if dim is not None:
                raise ConfigError("dim given twice", lineno)
            try:
                dim = int(value)
            except ValueError:
                raise ConfigError(f"dim must be an integer, got {value!r}", lineno) from None
            if dim < 1:
                raise ConfigError("dim must be positive", lineno)
        elif key == "name":
            name = value
        elif key in ("row", "digit"):
            pending.append((key, value, lineno))
        else:
            raise ConfigError(f"unknown key {key!r}", lineno)
    if dim is None:
        raise ConfigError("missing 'dim'")
    for key, value, lineno in pending:
        (rows if key == "row" else digits).append(_ints(value, lineno, dim))
    if len(rows) != dim:
        raise ConfigError(f"expected {dim} 'row' lines, got {len(rows)}")
    if not digits:
        raise ConfigError("no 'digit' lines")
    return SystemConfig(dim, rows, digits, name)


def load_config(path) -> SystemConfig:
    """Read a config file; a bare shipped name such as ``heighway`` also works."""
    p = Path(path)
    if not p.exists() and str(path) in SHIPPED:
        return parse_config(shipped_text(str(path)))
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    cfg = parse_config(text)
    if not cfg.name:
        cfg.name = p.stem
    return cfg


def shipped_text(name: str) -> str:
    return resources.files("fracsum").joinpath("configs", f"{name}.cfg").read_text()


def to_text(ns: NumberSystem) -> str:
    lines = [f"name = {ns.name}"] if ns.name else []
    lines.append(f"dim = {ns.dim}")
    lines += ["row = " + " ".join(str(a) for a in r) for r in ns.matrix]
    lines += ["digit = " + " ".join(str(a) for a in d) for d in ns.digits]
    return "\n".join(lines) + "\n"
