"""Census of grid permutations by exact entangling power.

Exhaustive classification walks all d^2! permutations (budgeted to d <= 3)
in lexicographic strata: stratum s holds the (d^2 - 1)! permutations whose
flat form starts with symbol s+1.  Strata are independent work units, so
runs parallelize and checkpoint per stratum, and merged results do not
depend on worker count or scheduling.

Sampled classification draws uniform permutations in fixed-size chunks,
with the chunk c generator seeded as ``seed XOR c``; histograms and
moments are accumulated as exact integers, so results are byte-identical
for any worker count.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import BudgetExceeded, DegenerateDimension, InsufficientSamples
from .perm_core import BiPerm, identity_perm
from .entangle import q_totals_batch

SAMPLE_CHUNK = 50_000


def class_bound(d: int) -> int:
    """Upper bound 2 + (d^4 - d^2 - 8(d-1)^2)/2 on the number of classes."""
    if d < 2:
        raise DegenerateDimension("class bound needs d >= 2")
    return 2 + (d**4 - d**2 - 8 * (d - 1) ** 2) // 2


def e0_stats(d: int) -> tuple[int, Fraction]:
    """Count 2(d!)^2 of non-entangling permutations, and its fraction of d^2!."""
    if d < 1:
        raise DegenerateDimension("d must be positive")
    count = 2 * math.factorial(d) ** 2
    return count, Fraction(count, math.factorial(d * d))


def min_nonzero_perm(d: int) -> BiPerm:
    """The permutation with the smallest nonzero entangling power.

    Identity except that the last two cells of the bottom row are
    exchanged; its power is exactly 8(d-1) / (d (d+1)^2).
    """
    if d < 2:
        raise DegenerateDimension("needs d >= 2")
    base = identity_perm(d)
    l = [list(row) for row in base.l]
    l[d - 1][d - 2], l[d - 1][d - 1] = l[d - 1][d - 1], l[d - 1][d - 2]
    return BiPerm(base.k, l)


@dataclass(frozen=True)
class SampleStats:
    """Empirical mean and standard error of the sampled entangling power."""

    mean_epsilon: float
    std_error: float
    samples: int
    seed: int


@dataclass(frozen=True)
class ClassHistogram:
    """Exact map from entangling power to permutation count."""

    d: int
    mode: str  # "exhaustive" | "sampled"
    classes: tuple[tuple[Fraction, int], ...]  # sorted by increasing power
    total: int
    seed: int | None = None

    def __post_init__(self):
        keys = [k for k, _ in self.classes]
        if keys != sorted(keys):
            raise ValueError("classes must be sorted by power")
        if sum(c for _, c in self.classes) != self.total:
            raise ValueError("class counts do not sum to total")
        top = Fraction(self.d, self.d + 1)
        if any(not 0 <= k <= top for k in keys):
            raise ValueError("power outside [0, d/(d+1)]")
        if len(keys) > class_bound(self.d):
            raise ValueError("more classes than the theoretical bound")
        if self.mode == "exhaustive" and self.total != math.factorial(self.d**2):
            raise ValueError("exhaustive total must be d^2!")

    def as_dict(self) -> dict[Fraction, int]:
        return dict(self.classes)

    def mean(self) -> Fraction | None:
        """Exact mean power over the census (None when empty)."""
        if self.total == 0:
            return None
        return sum((k * c for k, c in self.classes), Fraction(0)) / self.total

    def to_json_dict(self) -> dict:
        mean = self.mean()
        return {
            "d": self.d,
            "mode": self.mode,
            "total": self.total,
            "classes": [
                {"num": k.numerator, "den": k.denominator, "count": c}
                for k, c in self.classes
            ],
            "mean": None
            if mean is None
            else {"num": mean.numerator, "den": mean.denominator},
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_csv(self) -> str:
        lines = ["epsilon_num,epsilon_den,epsilon_float,count"]
        for k, c in self.classes:
            lines.append(f"{k.numerator},{k.denominator},{float(k):.12g},{c}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json_dict(cls, payload: dict) -> "ClassHistogram":
        classes = tuple(
            (Fraction(entry["num"], entry["den"]), entry["count"])
            for entry in payload["classes"]
        )
        return cls(
            d=payload["d"],
            mode=payload["mode"],
            classes=classes,
            total=payload["total"],
            seed=payload.get("seed"),
        )


def _histogram_from_q_counts(
    d: int, mode: str, q_counts: dict[int, int], seed: int | None = None
) -> ClassHistogram:
    denom = d * (d - 1) * (d + 1) ** 2
    c_const = d**4 + d**2
    classes = sorted(
        (Fraction(c_const - q_total, denom), c) for q_total, c in q_counts.items()
    )
    return ClassHistogram(
        d=d,
        mode=mode,
        classes=tuple(classes),
        total=sum(q_counts.values()),
        seed=seed,
    )


# --- exhaustive census ---------------------------------------------------------


def _stratum_q_counts(d: int, stratum: int, chunk: int = 40320) -> dict[int, int]:
    """Q_P + Q_PS histogram over the permutations starting with `stratum`.

    Images are 0-based here; `stratum` ranges over 0..d^2-1.
    """
    n = d * d
    dtype = np.int32 if n > 32767 else np.int16
    rest = [v for v in range(n) if v != stratum]
    counts: dict[int, int] = {}
    source = itertools.permutations(rest)
    while True:
        block = list(itertools.islice(source, chunk))
        if not block:
            break
        arr = np.empty((len(block), n), dtype=dtype)
        arr[:, 0] = stratum
        arr[:, 1:] = block
        q = q_totals_batch(arr, d)
        for val, cnt in zip(*np.unique(q, return_counts=True)):
            counts[int(val)] = counts.get(int(val), 0) + int(cnt)
    return counts


def _merge_counts(into: dict[int, int], part: dict[int, int]) -> None:
    for key, cnt in part.items():
        into[key] = into.get(key, 0) + cnt


def _checkpoint_path(directory: Path, d: int, lo: int, hi: int) -> Path:
    return directory / f"census-d{d}-ranks-{lo}-{hi}.json"


def _load_checkpoint(path: Path, d: int, lo: int, hi: int) -> dict[int, int] | None:
    if not path.exists():
        return None
    try:
        payload = json.loads(path.read_text())
        if payload.get("d") != d or payload.get("lo") != lo or payload.get("hi") != hi:
            return None
        return {int(key): int(cnt) for key, cnt in payload["q_counts"].items()}
    except (ValueError, KeyError, AttributeError):
        return None  # damaged checkpoint: recompute the stratum


def _write_checkpoint(
    path: Path, d: int, lo: int, hi: int, counts: dict[int, int]
) -> None:
    payload = {
        "d": d,
        "lo": lo,
        "hi": hi,
        "q_counts": {str(key): cnt for key, cnt in sorted(counts.items())},
    }
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(payload, indent=2))
    os.replace(tmp, path)


def classify_exhaustive(
    d: int,
    workers: int = 1,
    force: bool = False,
    checkpoint_dir: str | Path | None = None,
) -> ClassHistogram:
    """Exact census over all d^2! permutations.

    Budgeted to d in {2, 3} unless `force` is set.  With `checkpoint_dir`,
    each completed stratum persists its partial histogram (keyed by rank
    range), and a rerun resumes from whatever is already on disk.
    """
    if d not in (2, 3) and not force:
        raise BudgetExceeded(
            f"exhaustive census at d = {d} means {d * d}! evaluations; "
            "pass force to override"
        )
    n = d * d
    stratum_size = math.factorial(n - 1)
    directory = Path(checkpoint_dir) if checkpoint_dir is not None else None
    if directory is not None:
        directory.mkdir(parents=True, exist_ok=True)

    done: dict[int, dict[int, int]] = {}
    pending: list[int] = []
    for s in range(n):
        lo, hi = s * stratum_size, (s + 1) * stratum_size
        if directory is not None:
            cached = _load_checkpoint(_checkpoint_path(directory, d, lo, hi), d, lo, hi)
            if cached is not None:
                done[s] = cached
                continue
        pending.append(s)

    if workers > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for s, counts in zip(pending, pool.map(_stratum_q_counts,
                                                   [d] * len(pending), pending)):
                done[s] = counts
    else:
        for s in pending:
            done[s] = _stratum_q_counts(d, s)

    if directory is not None:
        for s in pending:
            lo, hi = s * stratum_size, (s + 1) * stratum_size
            _write_checkpoint(_checkpoint_path(directory, d, lo, hi), d, lo, hi, done[s])

    merged: dict[int, int] = {}
    for s in range(n):
        _merge_counts(merged, done[s])
    return _histogram_from_q_counts(d, "exhaustive", merged)


# --- sampled census -----------------------------------------------------------


def _sample_chunk_q(
    d: int, seed: int, chunk_index: int, count: int
) -> tuple[dict[int, int], int, int]:
    """Draw `count` uniform permutations and return (q_counts, sum_q, sum_q2)."""
    n = d * d
    rng = np.random.default_rng(seed ^ chunk_index)
    dtype = np.int32 if n > 32767 else np.int16
    base = np.tile(np.arange(n, dtype=dtype), (count, 1))
    flat = rng.permuted(base, axis=1)
    # einsum memory grows as B * d^5; split the batch when d is large
    step = max(1, int(5e7 // max(1, d**5)))
    counts: dict[int, int] = {}
    sum_q = 0
    sum_q2 = 0
    for lo in range(0, count, step):
        q = q_totals_batch(flat[lo : lo + step], d)
        sum_q += int(q.sum())
        if 4 * d**8 > 2**62:  # q^2 would overflow int64
            sum_q2 += sum(int(v) * int(v) for v in q)
        else:
            sum_q2 += int((q * q).sum())
        for val, cnt in zip(*np.unique(q, return_counts=True)):
            counts[int(val)] = counts.get(int(val), 0) + int(cnt)
    return counts, sum_q, sum_q2


def classify_sampled(
    d: int,
    samples: int,
    seed: int,
    workers: int = 1,
) -> tuple[ClassHistogram, SampleStats]:
    """Census of `samples` uniform random permutations.

    The observed class list is a lower bound on the true class count.
    Accumulation is exact (integer rectangle totals), so the histogram and
    the reported moments are reproducible bit-for-bit for a given seed,
    independent of worker count.
    """
    if d < 2:
        raise DegenerateDimension("sampling needs d >= 2")
    if samples < 2:
        raise InsufficientSamples("need at least 2 samples")
    chunks = []
    remaining = samples
    index = 0
    while remaining > 0:
        take = min(SAMPLE_CHUNK, remaining)
        chunks.append((index, take))
        remaining -= take
        index += 1

    results: dict[int, tuple[dict[int, int], int, int]] = {}
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = {
                idx: pool.submit(_sample_chunk_q, d, seed, idx, cnt)
                for idx, cnt in chunks
            }
            for idx, fut in futs.items():
                results[idx] = fut.result()
    else:
        for idx, cnt in chunks:
            results[idx] = _sample_chunk_q(d, seed, idx, cnt)

    merged: dict[int, int] = {}
    sum_q = 0
    sum_q2 = 0
    for idx, _ in chunks:
        counts, sq, sq2 = results[idx]
        _merge_counts(merged, counts)
        sum_q += sq
        sum_q2 += sq2

    denom = d * (d - 1) * (d + 1) ** 2
    c_const = d**4 + d**2
    mean = (c_const - sum_q / samples) / denom
    var_q = max(0.0, (sum_q2 - sum_q * sum_q / samples) / (samples - 1))
    std_error = math.sqrt(var_q) / denom / math.sqrt(samples)
    hist = _histogram_from_q_counts(d, "sampled", merged, seed=seed)
    return hist, SampleStats(mean, std_error, samples, seed)
