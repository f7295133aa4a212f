"""Command-line sweep over time for a chosen two-mode state.

Usage::

    squidwave [--state number-sep] [--n1 1 --n2 4] [--method both] [--out run.csv] ...
    squidwave diff run_a.csv run_b.csv [--out diff.csv]

Every sweep writes the series file and ``<out>.manifest.json``.

Exit status: 0 ok, 1 usage error, 2 analytic-vs-numeric self-check
failed, 3 I/O error.
"""

import argparse
import csv
import json
import logging
import math
import sys
import time
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .errors import DomainError, TruncationError
from .fock import coherent_state, number_state, tensor
from .observables import COLUMNS, RingConfig, observable_series
from .special import MAX_DEGREE
from .states import (
    CoherentPairSpec,
    NumberPairSpec,
    coherent_entangled,
    coherent_separable,
    number_entangled,
    number_separable,
)

log = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_SELF_CHECK, EXIT_IO = 0, 1, 2, 3
SELF_CHECK_TOL = 1e-6
CSV_HEADER = ("t", *COLUMNS, "ratio_r")
STATE_KINDS = (
    "number-sep",
    "number-ent",
    "coherent-sep",
    "coherent-ent",
    "factorized-number",
    "factorized-coherent",
)


class UsageError(Exception):
    pass


class GridMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    state_kind: str = "number-sep"
    n1: int = 1
    n2: int = 4
    a1_mag: float = 1.0
    a1_phase: float = 0.0
    a2_mag: float = 2.0
    a2_phase: float = 0.0
    q: float = 1.0
    omega1: float = 1.2e-4
    omega2: float = 1e-4
    omega_a: Optional[float] = None
    omega_b: Optional[float] = None
    i1: float = 1.0
    i2: float = 1.0
    t_start: float = 0.0
    t_end: Optional[float] = None
    steps: int = 2000
    dim: int = 40
    method: str = "both"
    output_format: str = "csv"
    out: Optional[str] = None

    @property
    def beat_scale(self):
        """``omega1 - omega2``; multiplies t to give the plotted abscissa."""
        return self.omega1 - self.omega2

    def ring_a(self):
        return RingConfig(self.omega_a, self.omega1, critical_current=self.i1, q=self.q)

    def ring_b(self):
        return RingConfig(self.omega_b, self.omega2, critical_current=self.i2, q=self.q)

    def times(self):
        return np.linspace(self.t_start, self.t_end, self.steps)

    def a1(self):
        return self.a1_mag * np.exp(1j * self.a1_phase)

    def a2(self):
        return self.a2_mag * np.exp(1j * self.a2_phase)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _flag_parser():
    p = _Parser(prog="squidwave", description="Josephson-current time series for two SQUID rings.")
    p.add_argument("--config", help="key=value file; flags override its values")
    p.add_argument("--state", dest="state_kind", choices=STATE_KINDS)
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    for name in ("a1-mag", "a1-phase", "a2-mag", "a2-phase", "q", "omega1", "omega2",
                 "omega-a", "omega-b", "i1", "i2", "t-start", "t-end"):
        p.add_argument(f"--{name}", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--method", choices=("analytic", "numeric", "both"))
    p.add_argument("--format", dest="output_format", choices=("csv", "json"))
    p.add_argument("--out")
    return p


_FIELD_TYPES = {
    "state": ("state_kind", str), "format": ("output_format", str),
    "n1": ("n1", int), "n2": ("n2", int), "steps": ("steps", int), "dim": ("dim", int),
    "method": ("method", str), "out": ("out", str),
}


def _read_config_file(path):
    values = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("_", "-")
        field_name, kind = _FIELD_TYPES.get(key, (key.replace("-", "_"), float))
        if field_name not in SweepSpec.__dataclass_fields__:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[field_name] = kind(value)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return values


def _resolve(values):
    spec = SweepSpec(**values)
    spec = replace(
        spec,
        omega_a=spec.omega1 if spec.omega_a is None else spec.omega_a,
        omega_b=spec.omega2 if spec.omega_b is None else spec.omega_b,
    )
    if spec.t_end is None:
        if spec.omega1 == spec.omega2:
            raise UsageError("--t-end is required when omega1 == omega2")
        spec = replace(spec, t_end=spec.t_start + 4 * math.pi / abs(spec.beat_scale))
    return spec


def _validate(spec):
    if spec.state_kind not in STATE_KINDS:
        raise UsageError(f"unknown state {spec.state_kind!r}")
    if spec.method not in ("analytic", "numeric", "both"):
        raise UsageError(f"unknown method {spec.method!r}")
    if spec.output_format not in ("csv", "json"):
        raise UsageError(f"unknown format {spec.output_format!r}")
    if spec.steps < 2:
        raise UsageError(f"--steps must be at least 2, got {spec.steps}")
    if not spec.t_end > spec.t_start:
        raise UsageError(f"--t-end ({spec.t_end}) must exceed --t-start ({spec.t_start})")
    if not 2 <= spec.dim <= MAX_DEGREE + 1:
        raise UsageError(f"--dim must lie in [2, {MAX_DEGREE + 1}], got {spec.dim}")
    if spec.state_kind.startswith("number") or spec.state_kind == "factorized-number":
        if spec.n1 < 0 or spec.n2 < 0:
            raise UsageError("photon numbers must be non-negative")
        if max(spec.n1, spec.n2) >= spec.dim:
            raise UsageError(f"photon numbers must be below --dim {spec.dim}")
    if spec.state_kind in ("number-sep", "number-ent") and spec.n1 == spec.n2:
        raise UsageError(f"{spec.state_kind} needs n1 != n2, got {spec.n1} twice")
    try:
        spec.ring_a(), spec.ring_b()
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    for name in ("a1_mag", "a1_phase", "a2_mag", "a2_phase", "t_start", "t_end", "q"):
        if not math.isfinite(getattr(spec, name)):
            raise UsageError(f"{name} must be finite")


def parse_config(argv=None):
    """Build a validated :class:`SweepSpec` from flags and an optional config file.

    Raises
    ------
    UsageError
        On unknown flags, malformed values or an inconsistent spec.
    """
    args = _flag_parser().parse_args(argv)
    values = _read_config_file(args.config) if args.config else {}
    flags = {k: v for k, v in vars(args).items() if k != "config" and v is not None}
    values.update(flags)
    spec = _resolve(values)
    _validate(spec)
    return spec


def build_state(spec):
    d = spec.dim
    kind = spec.state_kind
    if kind == "number-sep":
        return number_separable(NumberPairSpec(spec.n1, spec.n2), d)
    if kind == "number-ent":
        return number_entangled(NumberPairSpec(spec.n1, spec.n2), d)
    if kind == "coherent-sep":
        return coherent_separable(CoherentPairSpec(spec.a1(), spec.a2()), d)
    if kind == "coherent-ent":
        return coherent_entangled(CoherentPairSpec(spec.a1(), spec.a2()), d)[0]
    if kind == "factorized-number":
        return tensor(number_state(spec.n1, d), number_state(spec.n2, d))
    if kind == "factorized-coherent":
        return tensor(coherent_state(spec.a1(), d), coherent_state(spec.a2(), d))
    raise UsageError(f"unknown state {kind!r}")


def _fmt(value):
    return "nan" if math.isnan(value) else format(value, ".17g")


def _default_out(spec):
    return f"sweep.{spec.output_format}"


def manifest_path(out):
    return Path(f"{out}.manifest.json")


def _write_csv(path, columns):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(CSV_HEADER) + "\n")
        for row in zip(*(columns[name] for name in CSV_HEADER)):
            fh.write(",".join(_fmt(float(v)) for v in row) + "\n")


def _write_json(path, columns, manifest, beat_scale):
    samples = []
    for i in range(len(columns["t"])):
        sample = {name: float(columns[name][i]) for name in CSV_HEADER}
        sample["beat_phase"] = sample["t"] * beat_scale
        if math.isnan(sample["ratio_r"]):
            sample["ratio_r"] = None
        samples.append(sample)
    with open(path, "w") as fh:
        json.dump({"samples": samples, "manifest": manifest}, fh, indent=1)
        fh.write("\n")


def run_sweep(spec):
    """Evaluate the sweep, write the series and manifest, return the exit status."""
    started = time.perf_counter()
    out = spec.out or _default_out(spec)
    manifest = {
        "tool": "squidwave",
        "tool_version": __version__,
        "spec": asdict(replace(spec, out=out)),
        "series_file": out,
        "abscissa": {"expression": "(omega1 - omega2) * t", "scale": spec.beat_scale},
        "self_check": {"performed": spec.method == "both", "passed": None,
                       "tolerance": SELF_CHECK_TOL, "max_discrepancy": None, "error": None},
    }
    status = EXIT_OK
    columns = None
    try:
        state = build_state(spec)
    except TruncationError as exc:
        log.error("state does not fit in dim=%d: %s", spec.dim, exc)
        manifest["self_check"].update(performed=True, passed=False, error=f"truncation: {exc}")
        status = EXIT_SELF_CHECK
    else:
        series = observable_series(state, spec.ring_a(), spec.ring_b(), spec.times(), spec.method)
        columns = {name: series.column(name) for name in CSV_HEADER}
        if series.discrepancy is not None:
            worst = max(series.discrepancy.values())
            passed = worst <= SELF_CHECK_TOL
            manifest["self_check"].update(passed=passed, max_discrepancy=series.discrepancy)
            if not passed:
                log.error("analytic and numeric routes differ by %.3g", worst)
                status = EXIT_SELF_CHECK
    manifest["wall_clock_seconds"] = time.perf_counter() - started
    try:
        if columns is not None:
            if spec.output_format == "csv":
                _write_csv(out, columns)
            else:
                _write_json(out, columns, manifest, spec.beat_scale)
        with open(manifest_path(out), "w") as fh:
            json.dump(manifest, fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        log.error("cannot write %s: %s", exc.filename or out, exc.strerror or exc)
        return EXIT_IO
    return status


def read_series(path):
    """Load a CSV or JSON series file into a dict of float arrays."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        samples = json.loads(text)["samples"]
        return {
            name: np.array([np.nan if s[name] is None else s[name] for s in samples], dtype=float)
            for name in CSV_HEADER
        }
    rows = list(csv.reader(text.splitlines()))
    header = tuple(rows[0])
    if header != CSV_HEADER:
        raise ValueError(f"{path}: unexpected header {','.join(header)}")
    data = np.array(rows[1:], dtype=float).reshape(-1, len(header))
    return {name: data[:, i] for i, name in enumerate(header)}


def diff_runs(file_a, file_b):
    """Column-wise ``a - b`` on a shared time grid.

    Raises
    ------
    GridMismatch
        If the two files were sampled on different grids.
    """
    a, b = read_series(file_a), read_series(file_b)
    if a["t"].shape != b["t"].shape or not np.array_equal(a["t"], b["t"]):
        raise GridMismatch(f"{file_a} and {file_b} use different time grids")
    return {"t": a["t"].copy(), **{name: a[name] - b[name] for name in CSV_HEADER[1:]}}


def _diff_main(argv):
    p = _Parser(prog="squidwave diff", description="Column-wise difference of two runs.")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--out", help="CSV destination; stdout when omitted")
    args = p.parse_args(argv)
    try:
        diff = diff_runs(args.file_a, args.file_b)
    except GridMismatch as exc:
        raise UsageError(str(exc)) from exc
    except OSError as exc:
        log.error("cannot read %s: %s", exc.filename, exc.strerror)
        return EXIT_IO
    if args.out:
        try:
            _write_csv(args.out, diff)
        except OSError as exc:
            log.error("cannot write %s: %s", args.out, exc.strerror)
            return EXIT_IO
    else:
        sys.stdout.write(",".join(CSV_HEADER) + "\n")
        for row in zip(*(diff[name] for name in CSV_HEADER)):
            sys.stdout.write(",".join(_fmt(float(v)) for v in row) + "\n")
    return EXIT_OK


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and argv[0] == "diff":
            return _diff_main(argv[1:])
        spec = parse_config(argv)
    except UsageError as exc:
        log.error("usage: %s", exc)
        return EXIT_USAGE
    status = run_sweep(spec)
    if status == EXIT_OK:
        log.info("wrote %s", spec.out or _default_out(spec))
    return status
