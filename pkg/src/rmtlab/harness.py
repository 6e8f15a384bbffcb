"""Grid sweeps comparing closed-form Mellin values with quadrature."""
import configparser
import csv
import enum
import io
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from typing import Optional, Tuple

from .phi import catalog_lookup, catalog_names
from .quad import DEFAULT_CUTOFFS, divergence_probe, mellin_quad
from .rmt import Status, rmt_generalized

CSV_COLUMNS = (
    "entry",
    "nu",
    "m",
    "k",
    "rmt_status",
    "rmt_value",
    "quad_value",
    "quad_abs_err",
    "rel_diff",
    "outcome",
)


class UsageError(ValueError):
    """Bad grid, flag or config value; maps to exit code 2."""


class Outcome(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    DIVERGENT_CONFIRMED = "DIVERGENT_CONFIRMED"
    DIVERGENT_UNCONFIRMED = "DIVERGENT_UNCONFIRMED"
    SKIPPED_INVALID = "SKIPPED_INVALID"
    QUAD_NONCONVERGED = "QUAD_NONCONVERGED"

    def __str__(self):
        return self.value


FAILING = frozenset(
    {Outcome.FAIL, Outcome.QUAD_NONCONVERGED, Outcome.DIVERGENT_UNCONFIRMED}
)


@dataclass(frozen=True)
class VerificationCase:
    entry: str
    nu: float
    m: int
    k: float
    tol: float

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError(f"tolerance must be positive, got {self.tol!r}")


@dataclass(frozen=True)
class VerificationRecord:
    case: VerificationCase
    rmt_status: Status
    rmt_value: Optional[float]
    quad_value: Optional[float]
    quad_err: Optional[float]
    rel_diff: Optional[float]
    outcome: Outcome


@dataclass
class Config:
    tol_smooth: float = 1e-8
    tol_osc: float = 1e-5
    nu_step: float = 0.25
    k_list: Tuple[float, ...] = (0.0, 1.0, 2.0)
    # grids for entries whose strip is unbounded stop here
    sigma_cap: float = 4.0
    cutoffs: Tuple[float, ...] = DEFAULT_CUTOFFS
    workers: int = 1

    def tol_for(self, entry):
        return self.tol_osc if entry.oscillatory else self.tol_smooth


def _float_list(text):
    try:
        return tuple(float(v) for v in text.replace(";", ",").split(",") if v.strip())
    except ValueError:
        raise UsageError(f"expected a comma separated list of numbers, got {text!r}") from None


_CONFIG_PARSERS = {
    "tol_smooth": float,
    "tol_osc": float,
    "nu_step": float,
    "k_list": _float_list,
    "sigma_cap": float,
    "cutoffs": _float_list,
    "workers": int,
}


def load_config(path, base=None):
    """Read ``key = value`` lines ('#' comments) over ``base``."""
    parser = configparser.ConfigParser(
        delimiters=("=",), comment_prefixes=("#",), inline_comment_prefixes=("#",)
    )
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_string("[config]\n" + fh.read(), source=str(path))
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    updates = {}
    for key, raw in parser.items("config"):
        if key not in _CONFIG_PARSERS:
            known = ", ".join(f.name for f in fields(Config))
            raise UsageError(f"unknown config key {key!r} (known: {known})")
        try:
            updates[key] = _CONFIG_PARSERS[key](raw)
        except ValueError:
            raise UsageError(f"bad value for {key}: {raw!r}") from None
    return replace(base or Config(), **updates)


def parse_range(text):
    """'a:b:step' -> (a, b, step)."""
    parts = text.split(":")
    if len(parts) == 1:
        parts = [parts[0], parts[0], "1"]
    if len(parts) != 3:
        raise UsageError(f"grid must look like a:b:step, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise UsageError(f"grid must look like a:b:step, got {text!r}") from None


def grid_values(a, b, step):
    if not step > 0:
        raise UsageError("grid step must be positive")
    if a > b:
        raise UsageError("grid start exceeds its end")
    out = []
    i = 0
    while a + i * step <= b + 1e-12:
        out.append(round(a + i * step, 12))
        i += 1
    return out


def expand_grid(entry_names, nu_range, m_list, k_list, tol, params=None):
    """Cartesian product of entries, nu, m and k; an entry only takes its own m.

    ``tol`` may be a number or a callable ``entry -> tol``.
    """
    if isinstance(nu_range, str):
        nu_range = parse_range(nu_range)
    nus = grid_values(*nu_range)
    params = params or {}
    cases = []
    for name in entry_names:
        entry = catalog_lookup(name, **params.get(name, {}))
        t = tol(entry) if callable(tol) else tol
        for nu in nus:
            for m in m_list:
                if int(m) != entry.m:
                    continue
                for k in k_list:
                    cases.append(VerificationCase(name, nu, entry.m, float(k), t))
    if not cases:
        raise UsageError("empty verification grid (check the m list against each entry's m)")
    return cases


def default_campaign(config=None, entry_names=None, params=None):
    """Every entry over its convergence strip, for each k in the config.

    The exponent ``sigma = nu + 1 - k`` steps through the open strip (capped
    at ``sigma_cap``) and nu is shifted accordingly for each k.
    """
    config = config or Config()
    params = params or {}
    cases = []
    for name in entry_names or catalog_names():
        entry = catalog_lookup(name, **params.get(name, {}))
        lo, hi = entry.nu_validity
        sigmas = []
        j = 1
        while True:
            sigma = round(lo + j * config.nu_step, 12)
            if sigma >= hi - 1e-12 or sigma > config.sigma_cap + 1e-12:
                break
            sigmas.append(sigma)
            j += 1
        for k in config.k_list:
            for sigma in sigmas:
                nu = round(sigma + k - 1.0, 12)
                cases.append(VerificationCase(name, nu, entry.m, float(k), config.tol_for(entry)))
    if not cases:
        raise UsageError("empty verification grid")
    return cases


def _rel_diff(a, b):
    if a == b:
        return 0.0
    scale = abs(a) if a != 0.0 else 1.0
    return abs(a - b) / scale


def run_case(case, params=(), cutoffs=DEFAULT_CUTOFFS):
    entry = catalog_lookup(case.entry, **dict(params))
    res = rmt_generalized(entry.phi, case.m, case.k, case.nu, strip=entry.nu_validity)
    if res.status is Status.INVALID:
        return VerificationRecord(case, res.status, None, None, None, None, Outcome.SKIPPED_INVALID)
    if res.status is Status.DIVERGENT:
        probe = divergence_probe(entry.f_direct, case.nu, case.k, cutoffs)
        outcome = Outcome.DIVERGENT_CONFIRMED if probe.growing else Outcome.DIVERGENT_UNCONFIRMED
        return VerificationRecord(case, res.status, None, probe.values[-1], None, None, outcome)
    q = mellin_quad(
        entry.f_direct,
        case.nu,
        case.k,
        tol=0.1 * case.tol,
        oscillatory=entry.oscillatory,
        period_hint=entry.period_hint,
    )
    rel = _rel_diff(res.value, q.value)
    if rel <= case.tol:
        outcome = Outcome.PASS
    elif not q.converged:
        outcome = Outcome.QUAD_NONCONVERGED
    else:
        outcome = Outcome.FAIL
    return VerificationRecord(case, res.status, res.value, q.value, q.abs_error_estimate, rel, outcome)


def _run_case_star(args):
    return run_case(*args)


def run_verification(cases, params=None, workers=1, cutoffs=DEFAULT_CUTOFFS):
    """Evaluate ``cases``; records come back in input order."""
    cases = list(cases)
    params = params or {}
    for name in sorted({c.entry for c in cases}):
        entry = catalog_lookup(name, **params.get(name, {}))
        bad = [c for c in cases if c.entry == name and c.m != entry.m]
        if bad:
            raise UsageError(f"entry {name!r} has m={entry.m}, case asks for m={bad[0].m}")
    jobs = [(c, tuple(sorted(params.get(c.entry, {}).items())), tuple(cutoffs)) for c in cases]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_case_star, jobs, chunksize=4))
    return [run_case(*job) for job in jobs]


def exit_code(records):
    return 1 if any(r.outcome in FAILING for r in records) else 0


def _num(v):
    if v is None:
        return ""
    return format(v, ".17g")


def _row(rec):
    c = rec.case
    return [
        c.entry,
        _num(c.nu),
        str(c.m),
        _num(c.k),
        str(rec.rmt_status),
        _num(rec.rmt_value),
        _num(rec.quad_value),
        _num(rec.quad_err),
        _num(rec.rel_diff),
        str(rec.outcome),
    ]


def summary_line(records):
    if not records:
        return "0 cases"
    counts = Counter(r.outcome for r in records)
    parts = [f"{o.value}={counts[o]}" for o in Outcome if counts[o]]
    return f"{len(records)} cases: " + ", ".join(parts)


def format_csv(records):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(_row(rec))
    return buf.getvalue()


def format_table(records):
    rows = [list(CSV_COLUMNS)] + [
        [cell if cell else "-" for cell in _row(r)] for r in records
    ]
    # shorter numbers for people; the CSV keeps all 17 digits
    for row in rows[1:]:
        for i in (5, 6, 7, 8):
            if row[i] != "-":
                row[i] = format(float(row[i]), ".10g")
    widths = [max(len(r[i]) for r in rows) for i in range(len(CSV_COLUMNS))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n" + summary_line(records) + "\n"


def emit_report(records, fmt="csv", destination=None, summary_stream=None):
    """Write the report and return the process exit code.

    ``destination`` is a path, a text stream, or None for stdout. The CSV
    body holds only header and rows; its summary goes to ``summary_stream``
    (stderr by default).
    """
    records = list(records)
    if fmt == "csv":
        text = format_csv(records)
    elif fmt == "table":
        text = format_table(records)
    else:
        raise UsageError(f"unknown report format {fmt!r}")
    if destination is None:
        sys.stdout.write(text)
    elif hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    if fmt == "csv":
        print(summary_line(records), file=summary_stream or sys.stderr)
    return exit_code(records)
