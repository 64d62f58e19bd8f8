"""Command-line experiment harness.

    codec run <config> [--trials N] [--seed S] [--out PATH] [--workers W]
    codec validate <config>
    codec bench --max-n N

Exit codes: 0 success, 1 a guaranteed property was violated, 2 bad config.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import lrs
from .channel import (
    ChannelParams,
    coherent_transmit,
    count_wiretaps,
    empirical_mutual_information,
    enumerate_wiretaps,
    make_rng,
    random_error_vector,
    random_split,
    random_subfield_matrix,
)
from .gf import ConfigurationError, FieldTower
from .skewpoly import newton_coeffs
from .sumrank import BlockShape, BlockVector, EnumerationCapExceeded, enumeration_cap
from .wbdecoder import DecodingFailure, decode, decode_with_erasures, to_skew_problem

EXIT_OK, EXIT_BREACH, EXIT_CONFIG = 0, 1, 2
KINDS = ("reliability", "secrecy", "complexity", "bounds")

COLUMNS = {
    "reliability": ["t", "rho", "inside_radius", "trials", "successes", "success_rate", "mean_multiplications"],
    "secrecy": ["mu", "k1", "k2", "wiretaps", "exhaustive", "max_leakage_formula", "max_leakage_empirical", "mismatches"],
    "complexity": ["series", "n", "k", "multiplications", "slope"],
    "bounds": [
        "t", "rho", "mu", "capacity", "achieved_secret", "singleton_log_q",
        "lifted_rate", "gap_upper", "gap_bound", "gap_certified",
    ],
}

EPILOG = """config format (one key = value per line, '#' comments):
  [field]    q0, s, m, r, optional modq / modqm (comma-separated, low degree first)
  [code]     shape (comma-separated widths), k; secrecy may set k1, k2
  [channel]  t, rho, mu; optional t_max, rho_max, out_lengths
  [campaign] kind (reliability|secrecy|complexity|bounds), trials, seed, out,
             sizes and width (complexity)

CSV columns:
  reliability: %s
  secrecy:     %s
  complexity:  %s
  bounds:      %s
Floats use 6 significant digits; integers and exact fractions are printed as is.
CODEC_ENUM_CAP bounds every exhaustive enumeration (default 3^8).""" % tuple(", ".join(c) for c in COLUMNS.values())


class ConfigError(Exception):
    def __init__(self, message: str, path: str = "<config>", line: int = 0, column: int = 0):
        super().__init__(message)
        self.message, self.path, self.line, self.column = message, path, line, column

    def __str__(self):
        return f"{self.path}:{self.line}:{self.column}: {self.message}"


ALLOWED = {
    "field": {"q0", "s", "m", "r", "modq", "modqm"},
    "code": {"shape", "k", "k1", "k2"},
    "channel": {"t", "rho", "mu", "t_max", "rho_max", "out_lengths"},
    "campaign": {"kind", "trials", "seed", "out", "sizes", "width"},
}


@dataclass
class ExperimentConfig:
    tower_text: str
    shape: tuple
    kind: str
    k: int | None = None
    k1: int | None = None
    k2: int | None = None
    t: int = 0
    rho: int = 0
    mu: int = 0
    t_max: int | None = None
    rho_max: int | None = None
    out_lengths: tuple | None = None
    trials: int = 100
    seed: int = 0
    out: str | None = None
    sizes: tuple = (8, 16, 32, 64)
    width: int | None = None
    path: str = field(default="<config>", compare=False)

    def tower(self) -> FieldTower:
        return _tower(self.tower_text)


@lru_cache(maxsize=None)
def _tower(text: str) -> FieldTower:
    return FieldTower.parse(text)


def _locate(text: str, section: str, key: str | None = None) -> tuple[int, int]:
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            current = stripped[1:-1].strip().lower()
            if key is None and current == section:
                return lineno, 1
            continue
        if current == section and key is not None and "=" in raw:
            name, after = raw.split("=", 1)
            if name.strip().lower() == key:
                # column of the value's first character
                return lineno, len(name) + 1 + len(after) - len(after.lstrip()) + 1
    return 0, 0


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", path) from None
    return parse_config(text, path)


def parse_config(text: str, path: str = "<config>") -> ExperimentConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    try:
        parser.read_string(text, source=path)
    except configparser.MissingSectionHeaderError as exc:
        raise ConfigError("expected a [section] header before the first key", path, exc.lineno, 1) from None
    except configparser.DuplicateOptionError as exc:
        raise ConfigError(f"duplicate key {exc.option!r} in [{exc.section}]", path, exc.lineno or 0, 1) from None
    except configparser.DuplicateSectionError as exc:
        raise ConfigError(f"duplicate section [{exc.section}]", path, exc.lineno or 0, 1) from None
    except configparser.ParsingError as exc:
        lineno, line = exc.errors[0]
        raise ConfigError(f"expected 'key = value', got {line.strip()!r}", path, lineno, 1) from None

    def err(msg, section, key=None):
        line, col = _locate(text, section, key)
        return ConfigError(msg, path, line, col)

    for section in parser.sections():
        if section not in ALLOWED:
            raise err(f"unknown section [{section}]; expected one of {sorted(ALLOWED)}", section)
        for key in parser[section]:
            if key not in ALLOWED[section]:
                raise err(f"unknown key {key!r} in [{section}]; allowed: {sorted(ALLOWED[section])}", section, key)
    for section in ("field", "code", "campaign"):
        if section not in parser:
            raise ConfigError(f"missing section [{section}]", path, 0, 0)

    def get_int(section, key, default=None, minimum=None):
        if section not in parser or key not in parser[section]:
            if default is None and minimum is not None:
                raise err(f"missing required key {key!r}", section)
            return default
        raw = parser[section][key]
        try:
            val = int(raw)
        except ValueError:
            raise err(f"{key} must be an integer, got {raw!r}", section, key) from None
        if minimum is not None and val < minimum:
            raise err(f"{key} must be at least {minimum}, got {val}", section, key)
        return val

    def get_list(section, key):
        if section not in parser or key not in parser[section]:
            return None
        raw = parser[section][key]
        try:
            vals = tuple(int(v) for v in raw.replace(" ", "").split(",") if v)
        except ValueError:
            raise err(f"{key} must be a comma-separated list of integers, got {raw!r}", section, key) from None
        if not vals:
            raise err(f"{key} must not be empty", section, key)
        return vals

    fld = parser["field"]
    if "q0" not in fld:
        raise err("missing required key 'q0'", "field")
    tokens = [f"{key}={fld[key].replace(' ', '')}" for key in ("q0", "s", "m", "r", "modq", "modqm") if key in fld]
    tower_text = " ".join(tokens)
    try:
        tower = _tower(tower_text)
    except ConfigurationError as exc:
        raise err(str(exc), "field", "q0") from None

    shape = get_list("code", "shape")
    if shape is None:
        raise err("missing required key 'shape'", "code")
    kind = parser["campaign"].get("kind", "").strip()
    if kind not in KINDS:
        raise err(f"kind must be one of {', '.join(KINDS)}, got {kind!r}", "campaign", "kind")
    cfg = ExperimentConfig(
        tower_text=tower.describe(),
        shape=shape,
        kind=kind,
        k=get_int("code", "k", None),
        k1=get_int("code", "k1", None),
        k2=get_int("code", "k2", None),
        t=get_int("channel", "t", 0, 0),
        rho=get_int("channel", "rho", 0, 0),
        mu=get_int("channel", "mu", 0, 0),
        t_max=get_int("channel", "t_max", None),
        rho_max=get_int("channel", "rho_max", None),
        out_lengths=get_list("channel", "out_lengths"),
        trials=get_int("campaign", "trials", 100, 1),
        seed=get_int("campaign", "seed", 0, 0),
        out=parser["campaign"].get("out"),
        sizes=get_list("campaign", "sizes") or (8, 16, 32, 64),
        width=get_int("campaign", "width", None),
        path=path,
    )
    _validate(cfg, tower, err)
    return cfg


def _validate(cfg: ExperimentConfig, tower: FieldTower, err) -> None:
    q, m = tower.q, tower.m
    if len(cfg.shape) > q - 1:
        raise err(f"shape has {len(cfg.shape)} blocks but at most q-1 = {q - 1} are allowed (constraint 1 <= l <= q-1)", "code", "shape")
    if any(not 1 <= n_i <= m for n_i in cfg.shape):
        raise err(f"block widths {list(cfg.shape)} must satisfy 1 <= n_i <= m = {m}", "code", "shape")
    n = sum(cfg.shape)
    if cfg.out_lengths is not None and len(cfg.out_lengths) != len(cfg.shape):
        raise err("out_lengths needs one entry per block", "channel", "out_lengths")
    if cfg.kind == "reliability":
        if cfg.k is None or not 1 <= cfg.k <= n:
            raise err(f"reliability needs 1 <= k <= n = {n}", "code", "k")
    if cfg.kind == "secrecy":
        k1 = cfg.k1 if cfg.k1 is not None else n - 2 * cfg.t - cfg.rho
        k2 = cfg.k2 if cfg.k2 is not None else cfg.mu
        if not 0 <= k2 < k1 <= n:
            raise err(f"secrecy needs 0 <= k2 < k1 <= n, got k1={k1}, k2={k2}", "code", "k1" if cfg.k1 is not None else None)
    if cfg.kind == "complexity":
        width = cfg.width or m
        if not 1 <= width <= m:
            raise err(f"width must satisfy 1 <= width <= m = {m}", "campaign", "width")
        for size in cfg.sizes:
            if size % width or size // width > q - 1 or size < 2:
                raise err(
                    f"size {size} needs {size}/{width} blocks; that must be a whole number of at most q-1 = {q - 1} blocks",
                    "campaign",
                    "sizes",
                )


# Formatting


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def write_csv(kind: str, rows, out) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS[kind])
    for row in rows:
        writer.writerow([fmt(row.get(col)) for col in COLUMNS[kind]])
    text = buf.getvalue()
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def _map(func, jobs, workers):
    if workers <= 1 or len(jobs) < 2:
        return [func(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


# Reliability


@lru_cache(maxsize=None)
def _spec(tower_text: str, shape: tuple, k: int) -> lrs.CodeSpec:
    return lrs.CodeSpec(_tower(tower_text), BlockShape(shape), k)


def reliability_trial(job):
    tower_text, shape, k, t, rho, out_lengths, seed = job
    spec = _spec(tower_text, shape, k)
    tower = spec.tower
    rng = make_rng(seed)
    msg = [int(v) for v in rng.integers(0, tower.order, size=k)]
    params = ChannelParams(spec.shape, t, rho, 0, out_lengths, seed)
    outcome = coherent_transmit(params, tower, lrs.encode(spec, msg), rng)
    tower.reset_count()
    try:
        got = decode_with_erasures(spec, outcome.received, outcome.transfers)
        ok = list(got) == msg
    except DecodingFailure:
        ok = False
    return ok, tower.multiplications


def run_reliability(cfg: ExperimentConfig, workers: int = 1):
    spec = _spec(cfg.tower_text, cfg.shape, cfg.k)
    n, k, m = spec.n, spec.k, spec.tower.m
    out_lengths = cfg.out_lengths or cfg.shape
    t_cap = sum(min(m, nr) for nr in out_lengths)
    t_max = min(cfg.t_max if cfg.t_max is not None else (n - k) // 2 + 1, t_cap)
    rho_max = min(cfg.rho_max if cfg.rho_max is not None else n - k + 1, n)
    rows, breach = [], False
    for t in range(t_max + 1):
        for rho in range(rho_max + 1):
            if 2 * t + rho > n - k + 2:
                continue
            jobs = [(cfg.tower_text, cfg.shape, k, t, rho, out_lengths, cfg.seed + i) for i in range(cfg.trials)]
            results = _map(reliability_trial, jobs, workers)
            successes = sum(ok for ok, _ in results)
            inside = 2 * t + rho <= n - k
            if inside and successes < cfg.trials:
                breach = True
            rows.append({
                "t": t,
                "rho": rho,
                "inside_radius": inside,
                "trials": cfg.trials,
                "successes": successes,
                "success_rate": successes / cfg.trials,
                "mean_multiplications": sum(c for _, c in results) / cfg.trials,
            })
    return rows, breach


# Secrecy


def run_secrecy(cfg: ExperimentConfig, workers: int = 1):
    tower = cfg.tower()
    shape = BlockShape(cfg.shape)
    n = shape.n
    k1 = cfg.k1 if cfg.k1 is not None else n - 2 * cfg.t - cfg.rho
    k2 = cfg.k2 if cfg.k2 is not None else cfg.mu
    pair = lrs.NestedPair.from_spec(lrs.CodeSpec(tower, shape, k1), k1, k2)
    cap = enumeration_cap()
    empirical_ok = tower.order**k1 <= cap
    rows, breach = [], False
    for mu in range(n + 1):
        total = count_wiretaps(tower.q, shape, mu)
        exhaustive = total <= cap
        if exhaustive:
            candidates = enumerate_wiretaps(tower.q, shape, mu)
        else:
            candidates = []
            for i in range(cfg.trials):
                rng = make_rng(cfg.seed + i)
                split = random_split(rng, mu, shape.lengths)
                candidates.append([random_subfield_matrix(rng, tower.q, mu_i, n_i) for mu_i, n_i in zip(split, shape.lengths)])
        checked, worst_formula, worst_emp, mismatches = 0, 0, None, 0
        for wiretaps in candidates:
            checked += 1
            formula = lrs.leakage_dims(pair, lrs.row_spaces(tower, shape, wiretaps))
            worst_formula = max(worst_formula, formula)
            if empirical_ok:
                emp = empirical_mutual_information(pair, wiretaps, cap)
                worst_emp = emp if worst_emp is None else max(worst_emp, emp)
                if emp != formula:
                    mismatches += 1
        if mismatches or (mu <= k2 and worst_formula > 0):
            breach = True
        rows.append({
            "mu": mu,
            "k1": k1,
            "k2": k2,
            "wiretaps": checked,
            "exhaustive": exhaustive,
            "max_leakage_formula": worst_formula,
            "max_leakage_empirical": worst_emp,
            "mismatches": mismatches,
        })
    return rows, breach


# Complexity


def loglog_slope(xs, ys) -> float:
    return float(np.polyfit(np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float)), 1)[0])


def measure_decode(tower: FieldTower, n: int, width: int, seed: int) -> tuple[int, float]:
    """Multiplications and seconds for one rate-1/2 decode with a full-radius error."""
    shape = BlockShape((width,) * (n // width))
    spec = lrs.CodeSpec(tower, shape, n // 2)
    rng = make_rng(seed)
    msg = [int(v) for v in rng.integers(0, tower.order, size=spec.k)]
    params = ChannelParams(shape, spec.radius, 0, 0, None, seed)
    split = random_split(rng, params.t, [min(tower.m, w) for w in shape.lengths])
    err = []
    for w, t_i in zip(shape.lengths, split):
        err.extend(random_error_vector(rng, tower, w, t_i))
    y = BlockVector(shape, [tower.add(a, b) for a, b in zip(lrs.encode(spec, msg).data, err)])
    tower.reset_count()
    start = time.perf_counter()
    got = decode(spec, y)
    elapsed = time.perf_counter() - start
    if list(got) != msg:
        raise AssertionError(f"decode failed inside the radius at n={n}, seed={seed}")
    return tower.multiplications, elapsed


def measure_newton(tower: FieldTower, n: int, width: int, seed: int) -> tuple[int, float]:
    shape = BlockShape((width,) * (n // width))
    spec = lrs.CodeSpec(tower, shape, 1)
    rng = make_rng(seed)
    problem = to_skew_problem(spec, BlockVector(shape, [int(v) for v in rng.integers(0, tower.order, size=n)]))
    tower.reset_count()
    start = time.perf_counter()
    newton_coeffs(tower.arith, list(problem.points), list(problem.received))
    return tower.multiplications, time.perf_counter() - start


def run_complexity(cfg: ExperimentConfig, workers: int = 1, log=None):
    log = log or sys.stderr
    tower = cfg.tower()
    width = cfg.width or tower.m
    trials = max(1, min(cfg.trials, 5))
    rows, breach = [], False
    series = {"decode": measure_decode, "newton": measure_newton}
    for name, measure in series.items():
        counts = []
        for n in cfg.sizes:
            samples = [measure(tower, n, width, cfg.seed + i) for i in range(trials)]
            mults = sum(s[0] for s in samples) / trials
            secs = sum(s[1] for s in samples) / trials
            counts.append(mults)
            k = n // 2 if name == "decode" else n
            rows.append({"series": name, "n": n, "k": k, "multiplications": mults})
            print(f"{name} n={n}: {mults:.6g} multiplications, {secs:.6g} s", file=log)
        if len(cfg.sizes) >= 2:
            slope = loglog_slope(cfg.sizes, counts)
            rows.append({"series": f"{name}_fit", "slope": slope})
            if len(cfg.sizes) >= 3 and not 1.7 <= slope <= 2.3:
                breach = True
    return rows, breach


# Bounds


def run_bounds(cfg: ExperimentConfig, workers: int = 1):
    tower = cfg.tower()
    shape = BlockShape(cfg.shape)
    n, q, m = shape.n, tower.q, tower.m
    blocks = shape.blocks
    width = shape.lengths[0]
    equal_widths = all(w == width for w in shape.lengths)
    rows, breach = [], False
    for t in range(n):
        for rho in range(n):
            for mu in range(n):
                if 2 * t + rho + mu >= n:
                    continue
                capacity = lrs.coherent_secret_capacity(n, t, rho, mu)
                pair = lrs.optimal_pair(tower, shape, t, rho, mu)
                achieved = pair.secret_length
                k = pair.k1
                row = {"t": t, "rho": rho, "mu": mu, "capacity": capacity, "achieved_secret": achieved}
                if achieved != capacity:
                    breach = True
                if equal_widths:
                    big = lrs.subspace_singleton_bound([m + width] * blocks, shape, n - k + 1, q)
                    log_big = math.log(big, q)
                    bound = lrs.near_optimality_gap_bound(blocks, k, m, q)
                    certified = lrs.gap_certificate(blocks, k, m, q, width)
                    row.update({
                        "singleton_log_q": log_big,
                        "lifted_rate": lrs.lifted_rate(blocks, k, m, width),
                        "gap_upper": 1 - m * k / log_big,
                        "gap_bound": bound,
                        "gap_certified": certified,
                    })
                    if not certified:
                        breach = True
                rows.append(row)
    return rows, breach


RUNNERS = {
    "reliability": run_reliability,
    "secrecy": run_secrecy,
    "complexity": run_complexity,
    "bounds": run_bounds,
}


def run(cfg: ExperimentConfig, workers: int = 1, out: str | None = None) -> tuple[str, bool]:
    rows, breach = RUNNERS[cfg.kind](cfg, workers)
    return write_csv(cfg.kind, rows, out), breach


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codec",
        description="Linearized Reed-Solomon codes over multishot networks: reliability, secrecy, complexity and bounds campaigns.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run the campaign described by a config file", epilog=EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
    p_run.add_argument("config")
    p_run.add_argument("--trials", type=int, help="trials per grid cell (overrides the config)")
    p_run.add_argument("--seed", type=int, help="base seed; trial i uses seed + i")
    p_run.add_argument("--out", help="CSV output path (default: config 'out', else stdout)")
    p_run.add_argument("--workers", type=int, default=os.cpu_count() or 1, help="worker processes")
    p_val = sub.add_parser("validate", help="check a config file without running it")
    p_val.add_argument("config")
    p_bench = sub.add_parser("bench", help="compare the compiled and pure-Python kernels")
    p_bench.add_argument("--max-n", type=int, default=64)
    p_bench.add_argument("--trials", type=int, default=3)
    p_bench.add_argument("--out")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "bench":
        from .bench import run_bench

        try:
            text = run_bench(args.max_n, args.trials, args.out)
        except ConfigurationError as exc:
            print(f"codec: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        if not args.out:
            sys.stdout.write(text)
        return EXIT_OK
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"codec: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.command == "validate":
        print(f"ok: {cfg.kind} campaign, {cfg.tower_text}, shape {','.join(map(str, cfg.shape))}")
        return EXIT_OK
    if args.trials is not None:
        if args.trials < 1:
            print("codec: --trials must be positive", file=sys.stderr)
            return EXIT_CONFIG
        cfg = replace(cfg, trials=args.trials)
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    out = args.out or cfg.out
    try:
        text, breach = run(cfg, max(1, args.workers), out)
    except (EnumerationCapExceeded, ValueError) as exc:
        print(f"codec: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not out:
        sys.stdout.write(text)
    if breach:
        print("codec: a guaranteed property was violated; see the report", file=sys.stderr)
        return EXIT_BREACH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
