"""Randomized searches: find B multiples without enumerating everything.

Three routes, all seeded and reproducible:

* ``random_log_sample`` draws random weight-(w-1) polynomials A with a
  constant term and keeps A + x^log(A) whenever the log lands at or
  below the degree bound; one multiple per about 2^n / D draws.
* ``birthday_logtmto`` precomputes the sorted log table of the stored
  side up to a degree K <= D, then probes with random tuples; a match
  happens as soon as two logs sit within about D of each other, after
  about sqrt(2^n / D) probes.
* ``birthday_tmto`` is the classical variant: random half-tuples are
  probed against each other and inserted one at a time, with a first
  collision after about sqrt(2^n) inserts.

Randomness comes from splitmix64 (documented below) and tuples are
drawn by unranking a uniform integer into the combinatorial number
system, so streams are identical across platforms for a fixed seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb

from .errors import WeightTooSmallError
from .gf2poly import FieldContext, SparsePoly
from .search import (
    LogTable,
    MultipleRecord,
    assemble_multiple,
    build_log_table,
    default_split,
    range_query,
)

_MASK64 = (1 << 64) - 1
_RESIDUE_CACHE_LIMIT = 1 << 20

DEFAULT_MAX_ITERATIONS = 1_000_000
DEFAULT_PROGRESS_STRIDE = 1024


class Rng:
    """splitmix64: state += 0x9E3779B97F4A7C15; output = mix(state).

    Chosen for its two-line spec; any implementation seeded alike
    produces the same stream.  Bounded draws use rejection against the
    largest multiple of the bound, so they stay exactly uniform.
    """

    __slots__ = ("_state", "_limits")

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._limits: dict[int, int] = {}

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound == 1:
            return 0
        nbits = (bound - 1).bit_length()
        if nbits <= 64:
            limit = self._limits.get(bound)
            if limit is None:
                limit = (1 << 64) - ((1 << 64) % bound)
                self._limits[bound] = limit
            while True:
                v = self.next_u64()
                if v < limit:
                    return v % bound
        while True:
            v = 0
            for _ in range((nbits + 63) // 64):
                v = (v << 64) | self.next_u64()
            v >>= (64 - nbits % 64) % 64
            if v < bound:
                return v


def unrank_combination(rank: int, q: int, max_val: int) -> tuple[int, ...]:
    """The rank-th strictly increasing q-tuple over [1, max_val], in
    lexicographic order (rank 0 is (1, 2, ..., q))."""
    if not 0 <= rank < comb(max_val, q):
        raise ValueError("rank out of range")
    if q == 0:
        return ()
    if q == 1:
        return (rank + 1,)
    out = []
    lo = 1
    remaining = q
    for _ in range(q):
        if remaining == 1:
            out.append(lo + rank)
            break
        # prefix(v) = number of tuples with first element < v, starting
        # from lo: comb(max_val - lo + 1, remaining) - comb(max_val - v + 1, remaining)
        total = comb(max_val - lo + 1, remaining)
        a, b = lo, max_val - remaining + 1
        while a < b:  # smallest v with prefix(v+1) > rank
            mid = (a + b) // 2
            if total - comb(max_val - mid, remaining) > rank:
                b = mid
            else:
                a = mid + 1
        rank -= total - comb(max_val - a + 1, remaining)
        out.append(a)
        lo = a + 1
        remaining -= 1
    return tuple(out)


def _draw_tuple(rng: Rng, q: int, max_val: int) -> tuple[int, ...]:
    return unrank_combination(rng.below(comb(max_val, q)), q, max_val)


@dataclass(frozen=True)
class SampleParams:
    """Knobs for one sampling run.

    q1 is the stored-side tuple size of the log birthday route (probe
    side q2 = w - 2 - q1; unbalanced splits are allowed, smaller q1
    meaning a cheaper precompute).  K caps the stored-side degree.
    """

    w: int
    D: int
    B: int
    q1: int | None = None
    K: int | None = None
    seed: int = 0
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    progress_stride: int = DEFAULT_PROGRESS_STRIDE

    def __post_init__(self):
        if self.B < 1:
            raise ValueError("need B >= 1")
        if self.D < 1:
            raise ValueError("need max degree >= 1")
        if self.K is not None and self.K > self.D:
            raise ValueError("precompute degree K must be <= D")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")
        if self.progress_stride < 1:
            raise ValueError("progress stride must be >= 1")


@dataclass(frozen=True)
class ProgressEvent:
    iteration: int
    found: int


@dataclass
class SampleResult:
    records: list[MultipleRecord]  # in discovery order
    events: list[ProgressEvent]
    iterations: int
    found: int
    exhausted: bool  # iteration budget ran out before B were found
    duplicates: int = 0
    skipped: int = 0  # draws whose log fell outside the usable range
    log_calls: int = 0
    seconds: float = 0.0

    def exponent_sets(self) -> frozenset[tuple[int, ...]]:
        return frozenset(r.poly.exponents for r in self.records)


class _Collector:
    """Dedup, discovery-order records, and stride-based progress events."""

    def __init__(self, stride: int):
        self.stride = stride
        self.records: list[MultipleRecord] = []
        self.events: list[ProgressEvent] = []
        self.seen: set[tuple[int, ...]] = set()
        self.duplicates = 0

    def add(self, record: MultipleRecord) -> None:
        key = record.poly.exponents
        if key in self.seen:
            self.duplicates += 1
            return
        self.seen.add(key)
        self.records.append(record)

    @property
    def found(self) -> int:
        return len(self.records)

    def tick(self, iteration: int) -> None:
        if iteration % self.stride == 0:
            self.events.append(ProgressEvent(iteration, self.found))

    def finish(self, iteration: int) -> None:
        if not self.events or self.events[-1] != ProgressEvent(iteration, self.found):
            self.events.append(ProgressEvent(iteration, self.found))


def random_log_sample(engine, params: SampleParams) -> SampleResult:
    """Draw random weight-(w-1) polynomials A (constant term, degree
    <= D) and emit A + x^log(A) whenever 0 < log(A) <= D and the new
    term does not collide with A.  Stops after B distinct multiples or
    the iteration budget, whichever comes first."""
    if params.w < 3:
        raise WeightTooSmallError("log sampling needs weight >= 3")
    ctx = engine.ctx
    t0 = time.perf_counter()
    q = params.w - 2
    rng = Rng(params.seed)
    xp = ctx.power_table(params.D)
    col = _Collector(params.progress_stride)
    cache: dict[int, int] = {}
    log_calls = 0
    skipped = 0
    iteration = 0
    while iteration < params.max_iterations and col.found < params.B:
        iteration += 1
        tup = _draw_tuple(rng, q, params.D)
        r = 1
        for e in tup:
            r ^= xp[e]
        if r == 0:
            skipped += 1  # A itself reduced to zero; no logarithm exists
            col.tick(iteration)
            continue
        lg = cache.get(r)
        if lg is None:
            lg = engine.discrete_log(r)
            log_calls += 1
            if len(cache) < _RESIDUE_CACHE_LIMIT:
                cache[r] = lg
        if 0 < lg <= params.D and lg not in tup:
            poly = SparsePoly(sorted((0, lg) + tup))
            col.add(
                MultipleRecord(
                    poly=poly,
                    weight=poly.weight(),
                    degree=poly.degree(),
                    provenance=((0,) + tup, (), lg),
                )
            )
        else:
            skipped += 1
        col.tick(iteration)
    col.finish(iteration)
    return SampleResult(
        records=col.records,
        events=col.events,
        iterations=iteration,
        found=col.found,
        exhausted=col.found < params.B,
        duplicates=col.duplicates,
        skipped=skipped,
        log_calls=log_calls,
        seconds=time.perf_counter() - t0,
    )


def birthday_logtmto(
    engine, params: SampleParams, table: LogTable | None = None
) -> SampleResult:
    """Log-table birthday search.

    Phase 1 tabulates logs of (1 + q1-tuple) up to degree K once (the
    table only depends on the modulus, q1 and K, so callers may reuse
    one across seeds); the loop then draws random q2-tuples and
    range-matches their logs exactly like the exhaustive search.
    """
    if params.w < 2:
        raise WeightTooSmallError("need weight >= 2")
    ctx = engine.ctx
    M = ctx.order
    D = params.D
    q1 = params.q1 if params.q1 is not None else default_split(params.w, "logarithmic")[0]
    q2 = params.w - 2 - q1
    if q2 < 0:
        raise ValueError(f"q1={q1} too large for weight {params.w}")
    K = params.K if params.K is not None else D
    t0 = time.perf_counter()
    if table is None:
        table = build_log_table(engine, q1, K)
    elif table.max_degree != K:
        raise ValueError("prebuilt table does not match precompute degree K")
    log_calls = table.log_calls
    col = _Collector(params.progress_stride)
    if q2 % 2 == 1:
        for tup in table.zero_polys:
            poly = SparsePoly((0,) + tup)
            col.add(
                MultipleRecord(
                    poly=poly, weight=poly.weight(), degree=poly.degree(),
                    provenance=(tup, (), None),
                )
            )
    rng = Rng(params.seed)
    xp = ctx.power_table(D)
    stored_min = 1 if q1 else 0
    skipped = 0
    iteration = 0
    while iteration < params.max_iterations and col.found < params.B:
        iteration += 1
        tup = _draw_tuple(rng, q2, D)
        r = 1
        for e in tup:
            r ^= xp[e]
        if r == 0:
            if q1 % 2 == 1:
                poly = SparsePoly((0,) + tup)
                col.add(
                    MultipleRecord(
                        poly=poly, weight=poly.weight(), degree=poly.degree(),
                        provenance=(tup, (), None),
                    )
                )
            else:
                skipped += 1
            col.tick(iteration)
            continue
        probe_log = engine.discrete_log(r)
        log_calls += 1
        probe_max = tup[-1] if tup else 0
        shift_hi = D - probe_max
        if shift_hi - (stored_min - D) + 1 >= M:
            hits = table.entries
        else:
            hits = range_query(
                table, probe_log + stored_min - D, probe_log + shift_hi, M
            )
        for stored_log, stored, stored_max in hits:
            base = (stored_log - probe_log) % M
            lo = stored_max - D
            shift = lo + ((base - lo) % M)
            while shift <= shift_hi:
                if shift != 0:
                    col.add(assemble_multiple(stored, tup, shift))
                shift += M
        col.tick(iteration)
    col.finish(iteration)
    return SampleResult(
        records=col.records,
        events=col.events,
        iterations=iteration,
        found=col.found,
        exhausted=col.found < params.B,
        duplicates=col.duplicates,
        skipped=skipped,
        log_calls=log_calls,
        seconds=time.perf_counter() - t0,
    )


def birthday_tmto(ctx: FieldContext, params: SampleParams) -> SampleResult:
    """Classical birthday search: residues of random half-tuples go
    into hash tables one at a time, each probed against the opposite
    side before insertion; a collision XORing to 1 completes a
    multiple."""
    if params.w < 3:
        raise WeightTooSmallError("birthday search needs weight >= 3")
    t0 = time.perf_counter()
    q1, q2 = default_split(params.w, "classical")
    rng = Rng(params.seed)
    xp = ctx.power_table(params.D)
    col = _Collector(params.progress_stride)
    # side tables: residue -> list of tuples; one shared table when the
    # split is balanced
    table_a: dict[int, list[tuple[int, ...]]] = {}
    table_b = table_a if q1 == q2 else {}
    sides = ((q1, table_a, table_b), (q2, table_b, table_a))
    iteration = 0
    while iteration < params.max_iterations and col.found < params.B:
        iteration += 1
        for q, own, other in sides:
            tup = _draw_tuple(rng, q, params.D)
            r = 0
            for e in tup:
                r ^= xp[e]
            for mate in other.get(r ^ 1, ()):
                exps = tuple(sorted({0} | (set(tup) ^ set(mate))))
                poly = SparsePoly(exps)
                col.add(
                    MultipleRecord(
                        poly=poly, weight=poly.weight(), degree=poly.degree(),
                        provenance=(mate, tup, None),
                    )
                )
            bucket = own.setdefault(r, [])
            if tup not in bucket:
                bucket.append(tup)
            if own is other:
                break  # balanced split: one shared list, one draw per round
        col.tick(iteration)
    col.finish(iteration)
    return SampleResult(
        records=col.records,
        events=col.events,
        iterations=iteration,
        found=col.found,
        exhausted=col.found < params.B,
        duplicates=col.duplicates,
        log_calls=0,
        seconds=time.perf_counter() - t0,
    )


def write_progress_csv(path: str, events: list[ProgressEvent]) -> None:
    """Progress CSV: header ``iteration,found``, one row per event."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("iteration,found\n")
        for ev in events:
            fh.write(f"{ev.iteration},{ev.found}\n")
