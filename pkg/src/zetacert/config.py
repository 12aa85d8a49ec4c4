"""INI-style run configuration: parse, validate (reporting every problem), and emit."""

from __future__ import annotations

import configparser
import os
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .params import BetaCollection, ZetaCollection

DEFAULT_PRECISION = 192
DEFAULT_TOLERANCE_EXPONENT = 25
PRECISION_ENV = "ZETACERT_PRECISION_BITS"


@dataclass(frozen=True)
class ConfigIssue:
    message: str
    line: int | None = None
    column: int | None = None

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"line {self.line}, column {self.column or 1}: {self.message}"


class ConfigError(ValueError):
    def __init__(self, issues: list[ConfigIssue], source: str = "<config>", syntax: bool = False):
        self.issues = list(issues)
        self.source = source
        self.syntax = syntax
        kind = "syntax error" if syntax else "invalid configuration"
        super().__init__(f"{source}: {kind}: " + "; ".join(map(str, self.issues)))


@dataclass(frozen=True)
class Config:
    collection: ZetaCollection | BetaCollection
    precision_bits: int = DEFAULT_PRECISION
    threads: int | None = None  # None means all cores
    tolerance_exponent: int = DEFAULT_TOLERANCE_EXPONENT

    @property
    def family(self) -> str:
        return self.collection.family


def _locate(text: str, key: str) -> tuple[int | None, int | None]:
    for no, line in enumerate(text.splitlines(), start=1):
        m = re.match(rf"\s*{re.escape(key)}\s*[=:]", line)
        if m:
            return no, line.index("=") + 2 if "=" in line else len(m.group(0)) + 1
    return None, None


def _syntax_issues(exc: configparser.Error) -> list[ConfigIssue]:
    if isinstance(exc, configparser.MissingSectionHeaderError):
        return [ConfigIssue("expected a [section] header before any key", exc.lineno, 1)]
    if isinstance(exc, configparser.ParsingError):
        out = []
        for lineno, line in exc.errors:
            raw = line.strip("'\"")
            col = len(raw) - len(raw.lstrip()) + 1
            out.append(ConfigIssue(f"cannot parse {raw.strip()!r}", lineno, col))
        return out
    if isinstance(exc, configparser.DuplicateOptionError):
        return [ConfigIssue(f"duplicate key '{exc.option}' in [{exc.section}]", exc.lineno, 1)]
    if isinstance(exc, configparser.DuplicateSectionError):
        return [ConfigIssue(f"duplicate section [{exc.section}]", exc.lineno, 1)]
    return [ConfigIssue(str(exc))]


def parse_config_text(text: str, source: str = "<config>") -> Config:
    if not text.strip():
        raise ConfigError([ConfigIssue("empty configuration", 1, 1)], source, syntax=True)
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(_syntax_issues(exc), source, syntax=True) from None

    issues: list[ConfigIssue] = []

    def at(key: str, msg: str) -> ConfigIssue:
        line, col = _locate(text, key)
        return ConfigIssue(msg, line, col)

    def get_int(section, key, required=True, default=None):
        if not cp.has_option(section, key):
            if required:
                issues.append(ConfigIssue(f"missing key '{key}' in [{section}]"))
            return default
        raw = cp.get(section, key).strip()
        try:
            return int(raw)
        except ValueError:
            issues.append(at(key, f"'{key}' must be an integer (got {raw!r})"))
            return default

    def get_ints(section, key):
        if not cp.has_option(section, key):
            issues.append(ConfigIssue(f"missing key '{key}' in [{section}]"))
            return None
        raw = cp.get(section, key).replace(",", " ").split()
        try:
            return tuple(int(v) for v in raw)
        except ValueError:
            issues.append(at(key, f"'{key}' must be a list of integers"))
            return None

    if not cp.has_section("collection"):
        raise ConfigError([ConfigIssue("missing [collection] section")], source)
    known = {"collection", "run"}
    for sec in cp.sections():
        if sec not in known:
            line = next((no for no, ln in enumerate(text.splitlines(), 1) if ln.strip() == f"[{sec}]"), None)
            issues.append(ConfigIssue(f"unknown section [{sec}]", line, 1))

    # indented lines continue the previous value; only the list keys may span lines
    for sec in cp.sections():
        for key in cp.options(sec):
            if key not in ("deltas", "etas") and "\n" in cp.get(sec, key).strip():
                line, _ = _locate(text, key)
                issues.append(ConfigIssue(f"unexpected indented line after '{key}'", line and line + 1, 1))
                cp.set(sec, key, cp.get(sec, key).strip().splitlines()[0])

    family = cp.get("collection", "family", fallback="").strip().lower()
    col = None
    if family == "zeta":
        allowed = {"family", "s", "m1", "m2", "deltas"}
        s, m1, m2 = (get_int("collection", k) for k in ("s", "m1", "m2"))
        deltas = get_ints("collection", "deltas")
        if None not in (s, m1, m2, deltas):
            col = ZetaCollection(s, m1, m2, deltas)
    elif family == "beta":
        allowed = {"family", "s", "eta0", "etas"}
        s, eta0 = get_int("collection", "s"), get_int("collection", "eta0")
        etas = get_ints("collection", "etas")
        if None not in (s, eta0, etas):
            col = BetaCollection(s, eta0, etas)
    else:
        allowed = {"family"}
        issues.append(at("family", f"family must be 'zeta' or 'beta' (got {family or 'nothing'!r})"))
    if family in ("zeta", "beta"):
        for key in cp.options("collection"):
            if key not in allowed:
                issues.append(at(key, f"unknown key '{key}' for the {family} family"))
    if col is not None:
        issues += [ConfigIssue(v) for v in col.violations()]

    prec = get_int("run", "precision_bits", required=False, default=DEFAULT_PRECISION)
    tol = get_int("run", "tolerance_exponent", required=False, default=DEFAULT_TOLERANCE_EXPONENT)
    threads = None
    if cp.has_option("run", "threads"):
        raw = cp.get("run", "threads").strip().lower()
        if raw not in ("", "all"):
            threads = get_int("run", "threads")
    if prec is not None and prec < 64:
        issues.append(at("precision_bits", f"precision_bits must be >= 64 (got {prec})"))
    if threads is not None and threads < 1:
        issues.append(at("threads", f"threads must be >= 1 or 'all' (got {threads})"))
    if cp.has_section("run"):
        for key in cp.options("run"):
            if key not in ("precision_bits", "threads", "tolerance_exponent"):
                issues.append(at(key, f"unknown key '{key}' in [run]"))

    if issues:
        raise ConfigError(issues, source)
    return Config(col, prec, threads, tol)


def shipped_config(name: str) -> Path | None:
    """Path of a config bundled with the package, or None."""
    ref = resources.files("zetacert").joinpath("configs", name)
    return Path(str(ref)) if ref.is_file() else None


def load_config(path: str | os.PathLike) -> Config:
    p = Path(path)
    if not p.exists():
        bundled = shipped_config(p.name) if p.parent == Path(".") else None
        if bundled is None:
            raise FileNotFoundError(f"config file not found: {path}")
        p = bundled
    return parse_config_text(p.read_text(), str(p))


def parse_config(source) -> Config:
    """Accepts a path, or config text (anything containing a newline or a '[')."""
    if isinstance(source, os.PathLike):
        return load_config(source)
    if "\n" in source or "[" in source or not source.strip():
        return parse_config_text(source)
    return load_config(source)


def emit_config(cfg: Config) -> str:
    col = cfg.collection
    lines = ["[collection]", f"family = {col.family}", f"s = {col.s}"]
    if isinstance(col, ZetaCollection):
        lines += [f"m1 = {col.m1}", f"m2 = {col.m2}", "deltas = " + " ".join(map(str, col.deltas))]
    else:
        lines += [f"eta0 = {col.eta0}", "etas = " + " ".join(map(str, col.etas))]
    lines += [
        "",
        "[run]",
        f"precision_bits = {cfg.precision_bits}",
        f"threads = {'all' if cfg.threads is None else cfg.threads}",
        f"tolerance_exponent = {cfg.tolerance_exponent}",
    ]
    return "\n".join(lines) + "\n"
