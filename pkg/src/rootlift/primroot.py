"""Primitive roots modulo p and p^2, and the exception scanner.

An integer a is a primitive root mod p when it generates the full
multiplicative group, i.e. a^((p-1)/q) != 1 (mod p) for every prime
q | p-1.  It is a primitive root mod p^2 when additionally
a^(p-1) != 1 (mod p^2); the mod-p^2 group is cyclic of order p(p-1) and
a generator of the mod-p part fails to lift only when that power
collapses.  For each primitive root j mod p exactly one lift j + kp,
0 <= k < p, fails mod p^2, which is why g(p) != h(p) is so rare: only
p = 40,487 and p = 6,692,367,337 below 10^12.

The scanner reproduces that search on desk-scale ranges with
deterministic chunked work, optional multiprocessing, and an atomic
checkpoint so an interrupted scan resumes to a byte-identical CSV.
"""

from __future__ import annotations

import csv
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from rootlift.arith import Factorization, factorize, is_prime

DEFAULT_CHUNK = 2**16

CSV_HEADER = "p,g,h,is_exception"


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime with the precomputed data every root test needs."""

    p: int
    p_squared: int
    fact_p_minus_1: Factorization
    prime_divisors: tuple[int, ...]

    @classmethod
    def create(cls, p: int) -> "PrimeContext":
        if p == 2:
            raise ValueError("only odd primes are supported")
        if p < 3 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        fact = factorize(p - 1)
        return cls(p, p * p, fact, fact.primes)

    @property
    def cofactor_exponents(self) -> tuple[int, ...]:
        """(p-1)/q for each prime q | p-1, the exponents of the order test."""
        return tuple((self.p - 1) // q for q in self.prime_divisors)


@dataclass(frozen=True)
class ScanRecord:
    p: int
    g: int
    h: int
    is_exception: bool

    def __post_init__(self) -> None:
        if self.is_exception != (self.g != self.h):
            raise ValueError("exception flag inconsistent with g, h")

    @classmethod
    def from_roots(cls, p: int, g: int, h: int) -> "ScanRecord":
        return cls(p, g, h, g != h)


def is_primitive_root_mod_p(a: int, ctx: PrimeContext) -> bool:
    """True iff a (reduced mod p) generates the group of units mod p."""
    a %= ctx.p
    if a == 0:
        return False
    return all(pow(a, e, ctx.p) != 1 for e in ctx.cofactor_exponents)


def least_primitive_root(ctx: PrimeContext) -> int:
    """g(p): the smallest primitive root mod p.  Always exists."""
    a = 1
    while True:
        a += 1
        if is_primitive_root_mod_p(a, ctx):
            return a


def is_primitive_root_mod_p2(a: int, ctx: PrimeContext) -> bool:
    """True iff a generates the group of units mod p^2.

    Equivalent to: primitive root mod p and a^(p-1) != 1 (mod p^2).
    """
    a %= ctx.p_squared
    if math.gcd(a, ctx.p) != 1:
        return False
    if not is_primitive_root_mod_p(a, ctx):
        return False
    return pow(a, ctx.p - 1, ctx.p_squared) != 1


def least_primitive_root_mod_p2(ctx: PrimeContext) -> int:
    """h(p): the smallest primitive root mod p^2.

    Candidates are tried in ascending order; the cheap mod-p criterion
    filters first and the mod-p^2 power runs only on survivors.
    """
    a = 1
    while True:
        a += 1
        if is_primitive_root_mod_p(a, ctx) and pow(a, ctx.p - 1, ctx.p_squared) != 1:
            return a


def lift_failure_count(j: int, ctx: PrimeContext) -> int:
    """Number of k in [0, p-1] for which j + kp is not a primitive root mod p^2.

    j must be a primitive root mod p.  Every lift j + kp reduces to j mod p,
    so only the a^(p-1) mod p^2 criterion can fail; the count is always 1.
    """
    if not is_primitive_root_mod_p(j, ctx):
        raise ValueError(f"{j} is not a primitive root mod {ctx.p}")
    p, pp = ctx.p, ctx.p_squared
    return sum(1 for k in range(p) if pow(j + k * p, p - 1, pp) == 1)


def primitive_root_flags(ctx: PrimeContext) -> bytearray:
    """flags[r] = 1 iff r is a primitive root mod p, for 0 <= r < p.

    Built in O(p) multiplications: residues g^t with gcd(t, p-1) = 1 are
    exactly the primitive roots.
    """
    p = ctx.p
    g = least_primitive_root(ctx)
    flags = bytearray(p)
    acc = 1
    order = p - 1
    for t in range(order):
        if math.gcd(t, order) == 1:
            flags[acc] = 1
        acc = acc * g % p
    return flags


def _solve_roots(p: int) -> tuple[int, int, int]:
    """(p, g, h) for one prime, asserting the proven ceiling h < p^0.99."""
    ctx = PrimeContext.create(p)
    g = least_primitive_root(ctx)
    if pow(g, p - 1, ctx.p_squared) != 1:
        h = g
    else:
        a = g
        while True:
            a += 1
            if is_primitive_root_mod_p(a, ctx) and pow(a, p - 1, ctx.p_squared) != 1:
                h = a
                break
    # exact integer form of h < p^0.99
    if h**100 >= p**99:
        raise AssertionError(f"h({p}) = {h} breaks the p^0.99 ceiling")
    return p, g, h


def _scan_chunk(bounds: tuple[int, int]) -> list[tuple[int, int, int]]:
    lo, hi = bounds
    start = lo | 1  # primes in range are odd (lo >= 3)
    return [_solve_roots(n) for n in range(start, hi + 1, 2) if is_prime(n)]


def _chunk_bounds(p_low: int, p_high: int, chunk: int) -> list[tuple[int, int]]:
    return [(a, min(a + chunk - 1, p_high)) for a in range(p_low, p_high + 1, chunk)]


def _read_checkpoint(path: Path) -> int | None:
    if not path.exists():
        return None
    text = path.read_text().strip()
    if not text:
        return None
    if not text.startswith("last_completed="):
        raise ValueError(f"malformed checkpoint file {path}")
    return int(text.split("=", 1)[1])


def _write_atomic(path: Path, data: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _truncate_csv(csv_path: Path, last_completed: int) -> list[ScanRecord]:
    """Drop rows beyond the checkpoint (a crash may have flushed rows the
    checkpoint never acknowledged) and return the surviving records."""
    kept: list[ScanRecord] = []
    lines = [CSV_HEADER]
    with open(csv_path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CSV_HEADER.split(","):
            raise ValueError(f"unexpected CSV header in {csv_path}")
        for row in reader:
            p, g, h, exc = int(row[0]), int(row[1]), int(row[2]), int(row[3])
            if p > last_completed:
                continue
            kept.append(ScanRecord(p, g, h, bool(exc)))
            lines.append(f"{p},{g},{h},{int(exc)}")
    _write_atomic(csv_path, "\n".join(lines) + "\n")
    return kept


def _require_writable(path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "a"):
            pass
    except OSError as err:
        raise OSError(f"cannot write {path}: {err}") from err


def scan(
    p_low: int,
    p_high: int,
    checkpoint: str | os.PathLike | None = None,
    workers: int = 1,
    csv_path: str | os.PathLike | None = None,
    emit_all: bool = False,
    chunk_size: int = DEFAULT_CHUNK,
    row_hook=None,
) -> list[ScanRecord]:
    """Compute (p, g(p), h(p)) for every odd prime in [p_low, p_high].

    The range is split into fixed chunks processed independently (optionally
    by a process pool) and committed strictly in ascending order, so the
    output never depends on worker count or scheduling.  With a checkpoint
    the scan resumes after an interruption and the persisted CSV ends up
    byte-identical to an uninterrupted run; rows the crash left beyond the
    checkpoint are dropped before work restarts.

    Exception rows are always persisted when a CSV path is given; full rows
    only with emit_all.  After a resume the returned list contains the rows
    read back from the CSV plus everything newly computed (with exception-only
    persistence the skipped non-exception rows are not reconstructed).
    """
    if p_low < 3:
        raise ValueError("scan range starts at 3 (odd primes only)")
    if p_low > p_high:
        raise ValueError("empty scan range")
    if chunk_size < 1:
        raise ValueError("chunk_size must be positive")
    if checkpoint is not None and csv_path is None:
        raise ValueError("a checkpoint requires a csv_path to persist rows")

    ck_path = Path(checkpoint) if checkpoint is not None else None
    out_path = Path(csv_path) if csv_path is not None else None
    csv_has_data = out_path is not None and out_path.exists() and out_path.stat().st_size > 0
    if ck_path is not None:
        _require_writable(ck_path)
    if out_path is not None:
        _require_writable(out_path)

    chunks = _chunk_bounds(p_low, p_high, chunk_size)
    records: list[ScanRecord] = []
    start_index = 0

    if ck_path is not None:
        last = _read_checkpoint(ck_path)
        if last is not None:
            if not p_low - 1 <= last <= p_high:
                raise ValueError(
                    f"checkpoint value {last} outside scan range [{p_low}, {p_high}]"
                )
            start_index = sum(1 for _, hi in chunks if hi <= last)
            if start_index > 0 and csv_has_data:
                # resume boundary under the *current* chunking; anything the
                # crash flushed past it gets dropped and recomputed
                boundary = chunks[start_index - 1][1]
                records = _truncate_csv(out_path, boundary)
            else:
                start_index = 0  # checkpoint without usable rows: start over

    if out_path is not None and start_index == 0:
        _write_atomic(out_path, CSV_HEADER + "\n")
        records = []

    def commit(rows: list[tuple[int, int, int]], chunk_hi: int) -> None:
        new = [ScanRecord.from_roots(p, g, h) for p, g, h in rows]
        records.extend(new)
        if row_hook is not None:
            for rec in new:
                row_hook(rec)
        if out_path is not None:
            persisted = new if emit_all else [r for r in new if r.is_exception]
            if persisted:
                with open(out_path, "a", newline="") as fh:
                    for r in persisted:
                        fh.write(f"{r.p},{r.g},{r.h},{int(r.is_exception)}\n")
                    fh.flush()
                    os.fsync(fh.fileno())
        if ck_path is not None:
            _write_atomic(ck_path, f"last_completed={chunk_hi}\n")

    pending = chunks[start_index:]
    if workers <= 1 or len(pending) <= 1:
        for bounds in pending:
            commit(_scan_chunk(bounds), bounds[1])
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_scan_chunk, b) for b in pending]
            for bounds, fut in zip(pending, futures):
                commit(fut.result(), bounds[1])

    return records
