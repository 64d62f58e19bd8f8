"""Compiled versus pure-Python kernel timings on full-radius decoding."""

from __future__ import annotations

import csv
import io
import time

from . import lrs
from ._backend import BACKENDS
from .channel import make_rng, random_error_vector, random_split
from .gf import ConfigurationError, FieldTower, prime_power
from .sumrank import BlockShape, BlockVector
from .wbdecoder import decode

WIDTH = 4


def bench_field(max_n: int) -> int:
    """Smallest prime q with room for max_n / 4 blocks of width 4."""
    blocks = -(-max_n // WIDTH)
    q = max(blocks + 1, 5)
    while not _is_prime(q):
        q += 1
    return q


def _is_prime(q: int) -> bool:
    try:
        return prime_power(q)[1] == 1
    except ConfigurationError:
        return False


def sizes_up_to(max_n: int) -> list[int]:
    sizes, n = [], 8
    while n <= max_n:
        sizes.append(n)
        n *= 2
    return sizes


def time_decode(tower: FieldTower, n: int, seed: int) -> tuple[float, int]:
    shape = BlockShape((WIDTH,) * (n // WIDTH))
    spec = lrs.CodeSpec(tower, shape, n // 2)
    rng = make_rng(seed)
    msg = [int(v) for v in rng.integers(0, tower.order, size=spec.k)]
    split = random_split(rng, spec.radius, shape.lengths)
    err = []
    for t_i in split:
        err.extend(random_error_vector(rng, tower, WIDTH, t_i))
    y = BlockVector(shape, [tower.add(a, b) for a, b in zip(lrs.encode(spec, msg).data, err)])
    tower.reset_count()
    start = time.perf_counter()
    got = decode(spec, y)
    elapsed = time.perf_counter() - start
    if list(got) != msg:
        raise AssertionError(f"benchmark decode failed at n={n}")
    return elapsed, tower.multiplications


def run_bench(max_n: int, trials: int = 3, out: str | None = None) -> str:
    if max_n < 8:
        raise ConfigurationError("--max-n must be at least 8")
    q = bench_field(max_n)
    towers = {name: FieldTower(q, m=WIDTH, backend=name) for name in BACKENDS}
    rows = []
    for n in sizes_up_to(max_n):
        timings = {}
        for name, tower in towers.items():
            runs = [time_decode(tower, n, seed) for seed in range(trials)]
            timings[name] = min(r[0] for r in runs)
            rows.append([name, n, n // 2, format(timings[name], ".6g"), runs[0][1], ""])
        if "cython" in timings:
            rows[-1][-1] = format(timings["python"] / timings["cython"], ".6g")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["backend", "n", "k", "seconds", "multiplications", "speedup"])
    writer.writerows(rows)
    text = buf.getvalue()
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
