"""Exhaustive low-weight multiple search: classical and log-table routes.

Both solvers return exactly the multiples of P that have a constant
term, degree at most D, and weight at most w *of the same parity as w*
(w, w-2, ...).  Parity is inherent to the construction: a candidate is
assembled from 1 plus a fixed number of monomials, and XOR cancellation
removes terms in pairs.  Lower parity-matching weights fall out of the
same pass through cancellation, so no separate sweep is needed.

The classical route stores residues of the smaller half-decomposition in
a hash table and probes with the other half, looking for pairs XORing to
1.  The logarithmic route stores discrete logs of the stored half sorted
ascending and range-queries a window of width about 2D around each probe
log; each match yields a shift e with the two halves congruent modulo P,
and the multiple is assembled from the shifted halves.  When the degree
bound D reaches half the group order, several shifts e may represent the
same congruence class, so the assembly walks every representative inside
the admissible window rather than only the centered one.
"""

from __future__ import annotations

import time
from bisect import bisect_left, bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Iterator, NamedTuple, Optional

from .errors import (
    MemoryBudgetExceededError,
    WeightTooSmallError,
    ZeroShiftError,
)
from .gf2poly import FieldContext, SparsePoly

ALGO_CLASSICAL = "classical"
ALGO_LOGARITHMIC = "logarithmic"

DEFAULT_BUDGET_BYTES = 2**31

# Planning model for table memory: element/log plus payload pointer per
# entry, stored at 75% hash load.  Used for budget checks and reports,
# not for actual allocation.
TABLE_ENTRY_BYTES = 16
POWER_TABLE_ENTRY_BYTES = 8


def default_split(w: int, algorithm: str) -> tuple[int, int]:
    """The balanced (q1, q2) split for a target weight.

    Classical decompositions use w = q1 + q2 + 1, logarithmic ones
    w = q1 + q2 + 2; both balance the two phases with q1 = floor and
    q2 = ceil of the shared budget.
    """
    if algorithm == ALGO_CLASSICAL:
        if w < 3:
            raise WeightTooSmallError("classical split needs weight >= 3")
        q1 = (w - 1) // 2
        return q1, (w - 1) - q1
    if algorithm == ALGO_LOGARITHMIC:
        if w < 2:
            raise WeightTooSmallError("logarithmic split needs weight >= 2")
        q1 = (w - 2) // 2
        return q1, (w - 2) - q1
    raise ValueError(f"unknown algorithm {algorithm!r}")


def enumerate_tuples(q: int, max_deg: int) -> Iterator[tuple[int, ...]]:
    """All strictly increasing q-tuples over [1, max_deg], lex order.

    q = 0 yields the single empty tuple.
    """
    return combinations(range(1, max_deg + 1), q)


def centered_shift(lg: int, ld: int, M: int) -> int:
    """The representative of lg - ld (mod M) in [-(M-1)/2, (M-1)/2].

    M odd makes the representative unique.
    """
    e = (lg - ld) % M
    if e > (M - 1) // 2:
        e -= M
    return e


def second_phase_bound(D: int, w: int, q2: int) -> int:
    """Degree bound ceil(D * q2 / (w - 1)) for the probe-side tuples.

    Every weight-w multiple keeps at least one decomposition whose
    probe half stays below this bound, so restricting the second phase
    to it preserves completeness (validated by the test suite on the
    search grids; the restriction defaults to off).
    """
    if w < 3:
        raise WeightTooSmallError("second-phase bound needs weight >= 3")
    return -(-D * q2 // (w - 1))


def estimate_count(n: int, w: int, D: int) -> float:
    """Expected number of weight-w degree-<=D multiples: D^(w-1) / ((w-1)! 2^n)."""
    if w < 2:
        raise WeightTooSmallError("estimate needs weight >= 2")
    return float(Fraction(D ** (w - 1), factorial(w - 1) * (1 << n)))


@dataclass(frozen=True, eq=False)
class MultipleRecord:
    """A canonicalized found multiple.

    Equality and hashing are by the exponent set only; provenance
    records which (stored tuple, probe tuple, shift) produced it first,
    with shift None for the classical route.
    """

    poly: SparsePoly
    weight: int
    degree: int
    provenance: Optional[tuple] = None

    def __eq__(self, other):
        return (
            isinstance(other, MultipleRecord)
            and self.poly.exponents == other.poly.exponents
        )

    def __hash__(self):
        return hash(self.poly.exponents)

    def __repr__(self):
        return f"MultipleRecord({self.poly})"


class LogTableEntry(NamedTuple):
    log: int
    exponents: tuple[int, ...]
    max_exp: int


@dataclass
class LogTable:
    """Phase-1 table: logs of (1 + stored tuple), sorted ascending.

    zero_polys collects stored tuples whose polynomial reduced to the
    zero element; those are multiples in their own right and have no
    logarithm to store.
    """

    entries: list[LogTableEntry]
    logs: list[int]  # parallel to entries, for bisection
    zero_polys: list[tuple[int, ...]]
    max_degree: int
    log_calls: int
    build_seconds: float


@dataclass(frozen=True)
class SearchParams:
    """Parameters of one exhaustive search.

    q1 is the stored-side tuple size, q2 the probe-side size; the split
    satisfies q1 + q2 + 1 = w (classical) or q1 + q2 + 2 = w
    (logarithmic), with q1 <= q2.
    """

    w: int
    D: int
    q1: int
    q2: int
    algorithm: str
    restrict_second_phase: bool = False
    budget_bytes: int = DEFAULT_BUDGET_BYTES
    threads: int = 1

    def __post_init__(self):
        if self.algorithm not in (ALGO_CLASSICAL, ALGO_LOGARITHMIC):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.w < 2:
            raise WeightTooSmallError("weight must be >= 2")
        if self.D < 1:
            raise ValueError("max degree must be >= 1")
        if not 0 <= self.q1 <= self.q2:
            raise ValueError("need 0 <= q1 <= q2")
        overhead = 1 if self.algorithm == ALGO_CLASSICAL else 2
        if self.q1 + self.q2 + overhead != self.w:
            raise ValueError(
                f"split ({self.q1}, {self.q2}) inconsistent with weight {self.w}"
            )
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    @classmethod
    def balanced(cls, w: int, D: int, algorithm: str, **kwargs) -> "SearchParams":
        """Build params with the standard balanced split."""
        if algorithm == ALGO_CLASSICAL and w == 2:
            q1, q2 = 0, 1  # the split formula degenerates cleanly at w=2
        else:
            q1, q2 = default_split(w, algorithm)
        return cls(w=w, D=D, q1=q1, q2=q2, algorithm=algorithm, **kwargs)


@dataclass
class RunReport:
    """Counters and timings from one solver run."""

    algorithm: str
    w: int
    D: int
    q1: int
    q2: int
    restricted: bool
    threads: int
    found: int = 0
    duplicates_suppressed: int = 0
    zero_shift_skips: int = 0
    zero_residue_emits: int = 0
    table_entries: int = 0
    log_calls: int = 0
    phase1_seconds: float = 0.0
    phase2_seconds: float = 0.0

    def lines(self) -> list[str]:
        out = ["# run report"]
        for key in (
            "algorithm", "w", "D", "q1", "q2", "restricted", "threads",
            "found", "duplicates_suppressed", "zero_shift_skips",
            "zero_residue_emits", "table_entries", "log_calls",
        ):
            out.append(f"{key}: {getattr(self, key)}")
        out.append(f"phase1_seconds: {self.phase1_seconds:.3f}")
        out.append(f"phase2_seconds: {self.phase2_seconds:.3f}")
        return out


@dataclass
class SearchResult:
    records: list[MultipleRecord]  # sorted by (degree, exponents)
    report: RunReport

    def exponent_sets(self) -> frozenset[tuple[int, ...]]:
        return frozenset(r.poly.exponents for r in self.records)


def _assemble_exps(
    stored: tuple[int, ...], probe: tuple[int, ...], shift: int
) -> tuple[int, ...]:
    if shift > 0:
        half_a = {0, *stored}
        half_b = {shift, *(shift + d for d in probe)}
    else:
        k = -shift
        half_a = {k, *(k + g for g in stored)}
        half_b = {0, *probe}
    return tuple(sorted(half_a ^ half_b))


def assemble_multiple(
    stored: tuple[int, ...], probe: tuple[int, ...], shift: int
) -> MultipleRecord:
    """Assemble (1 + stored half) with x^shift * (1 + probe half).

    shift > 0 shifts the probe half up; shift < 0 shifts the stored
    half up by -shift.  Coinciding exponents cancel, so the result can
    have lower weight than the nominal q1 + q2 + 2.  shift = 0 means
    the two halves reduced to the same element and no multiple arises.
    """
    if shift == 0:
        raise ZeroShiftError("equal-residue halves assemble to zero")
    poly = SparsePoly(_assemble_exps(tuple(stored), tuple(probe), shift))
    return MultipleRecord(
        poly=poly,
        weight=poly.weight(),
        degree=poly.degree(),
        provenance=(tuple(stored), tuple(probe), shift),
    )


def range_query(table: LogTable, lo: int, hi: int, M: int) -> list[LogTableEntry]:
    """Entries whose log lies in the cyclic interval [lo, hi] mod M.

    One or two binary-searched contiguous slices of the sorted table.
    """
    lo %= M
    hi %= M
    logs = table.logs
    if lo <= hi:
        return table.entries[bisect_left(logs, lo) : bisect_right(logs, hi)]
    return (
        table.entries[bisect_left(logs, lo) :]
        + table.entries[: bisect_right(logs, hi)]
    )


def build_log_table(engine, q1: int, max_deg: int) -> LogTable:
    """Phase 1 of the log route: log of (1 + tuple) for every q1-tuple
    with exponents up to max_deg, sorted by log."""
    ctx = engine.ctx
    t0 = time.perf_counter()
    xp = ctx.power_table(max_deg)
    raw: list[LogTableEntry] = []
    zero_polys: list[tuple[int, ...]] = []
    log_calls = 0
    for tup in enumerate_tuples(q1, max_deg):
        r = 1
        for e in tup:
            r ^= xp[e]
        if r == 0:
            zero_polys.append(tup)
            continue
        log_calls += 1
        raw.append(
            LogTableEntry(engine.discrete_log(r), tup, tup[-1] if tup else 0)
        )
    raw.sort()
    return LogTable(
        entries=raw,
        logs=[entry.log for entry in raw],
        zero_polys=zero_polys,
        max_degree=max_deg,
        log_calls=log_calls,
        build_seconds=time.perf_counter() - t0,
    )


def _check_budget(entries: int, power_slots: int, budget: int) -> None:
    predicted = entries * TABLE_ENTRY_BYTES + power_slots * POWER_TABLE_ENTRY_BYTES
    if predicted > budget:
        raise MemoryBudgetExceededError(
            f"predicted table memory {predicted} bytes exceeds budget {budget}; "
            "lower the degree bound or use the sampling search"
        )


def _provenance_key(prov):
    if prov is None:
        return ()
    stored, probe, shift = prov
    return (stored, probe, 0 if shift is None else shift)


class _Dedup:
    """Incremental canonical-set dedup.

    Memory stays proportional to the number of distinct multiples even
    when decompositions arrive millions of times over (routine once the
    degree bound nears half the group order).  Keeping the smallest
    provenance makes the outcome independent of arrival order, so
    threaded runs reproduce the single-threaded result exactly.
    """

    __slots__ = ("best", "seen")

    def __init__(self):
        self.best: dict[tuple[int, ...], tuple] = {}
        self.seen = 0

    def add(self, exps: tuple[int, ...], prov) -> None:
        self.seen += 1
        cur = self.best.get(exps)
        if cur is None or _provenance_key(prov) < _provenance_key(cur):
            self.best[exps] = prov

    def merge(self, other: "_Dedup") -> None:
        self.seen += other.seen
        best = self.best
        for exps, prov in other.best.items():
            cur = best.get(exps)
            if cur is None or _provenance_key(prov) < _provenance_key(cur):
                best[exps] = prov


def _finalize(dedup: _Dedup, report) -> list[MultipleRecord]:
    records = []
    for exps, prov in dedup.best.items():
        poly = SparsePoly(exps)
        records.append(
            MultipleRecord(
                poly=poly,
                weight=poly.weight(),
                degree=poly.degree(),
                provenance=prov,
            )
        )
    records.sort(key=lambda r: (r.degree, r.poly.exponents))
    report.found = len(records)
    report.duplicates_suppressed = dedup.seen - len(records)
    return records


def _stripes(bound: int, threads: int) -> list[range]:
    return [range(1 + t, bound + 1, threads) for t in range(threads)]


def tmto_find_all(ctx: FieldContext, params: SearchParams) -> SearchResult:
    """Classical route: store residues of the q1 half, probe with the q2
    half for pairs XORing to 1."""
    if params.algorithm != ALGO_CLASSICAL:
        raise ValueError("tmto_find_all needs algorithm='classical'")
    q1, q2, D = params.q1, params.q2, params.D
    report = RunReport(
        algorithm="tmto", w=params.w, D=D, q1=q1, q2=q2,
        restricted=False, threads=params.threads,
    )
    _check_budget(comb(D, q1), D + 1, params.budget_bytes)
    xp = ctx.power_table(D)

    t0 = time.perf_counter()
    table: dict[int, list[tuple[int, ...]]] = {}
    for tup in enumerate_tuples(q1, D):
        r = 0
        for e in tup:
            r ^= xp[e]
        table.setdefault(r, []).append(tup)
    report.table_entries = comb(D, q1)
    report.phase1_seconds = time.perf_counter() - t0

    t0 = time.perf_counter()

    def emit(dedup, stored, probe):
        exps = tuple(sorted({0} | (set(stored) ^ set(probe))))
        dedup.add(exps, (stored, probe, None))

    def probe_block(firsts: range) -> _Dedup:
        out = _Dedup()
        if q2 == 0:
            for stored in table.get(1, ()):
                emit(out, stored, ())
            return out
        for f in firsts:
            base = xp[f]
            if q2 == 1:
                for stored in table.get(base ^ 1, ()):
                    emit(out, stored, (f,))
            elif q2 == 2:
                b1 = base ^ 1
                get = table.get
                for j in range(f + 1, D + 1):
                    hits = get(b1 ^ xp[j])
                    if hits:
                        for stored in hits:
                            emit(out, stored, (f, j))
            else:
                for rest in combinations(range(f + 1, D + 1), q2 - 1):
                    r = base ^ 1
                    for e in rest:
                        r ^= xp[e]
                    for stored in table.get(r, ()):
                        emit(out, stored, (f,) + rest)
        return out

    if q2 == 0:
        dedup = probe_block(range(0))
    elif params.threads == 1:
        dedup = probe_block(range(1, D + 1))
    else:
        dedup = _Dedup()
        with ThreadPoolExecutor(max_workers=params.threads) as pool:
            for block in pool.map(probe_block, _stripes(D, params.threads)):
                dedup.merge(block)
    report.phase2_seconds = time.perf_counter() - t0
    return SearchResult(records=_finalize(dedup, report), report=report)


def logtmto_find_all(
    ctx: FieldContext, engine, params: SearchParams
) -> SearchResult:
    """Log route: sorted log table for the q1 half, a cyclic window
    query of width about 2D per q2-probe, shift-based assembly.

    Produces exactly the same set as the classical route at equal
    (w, D).  Stored tuples whose polynomial reduces to zero are
    themselves multiples (weight q1 + 1); they are emitted directly
    when their weight parity matches w, and likewise for probe tuples.
    """
    if params.algorithm != ALGO_LOGARITHMIC:
        raise ValueError("logtmto_find_all needs algorithm='logarithmic'")
    if engine.ctx is not ctx and engine.ctx.poly != ctx.poly:
        raise ValueError("engine was built for a different modulus")
    q1, q2, D = params.q1, params.q2, params.D
    M = ctx.order
    report = RunReport(
        algorithm="logtmto", w=params.w, D=D, q1=q1, q2=q2,
        restricted=params.restrict_second_phase, threads=params.threads,
    )
    _check_budget(comb(D, q1), D + 1, params.budget_bytes)

    table = build_log_table(engine, q1, D)
    report.table_entries = len(table.entries)
    report.log_calls += table.log_calls
    report.phase1_seconds = table.build_seconds

    dedup = _Dedup()
    if q2 % 2 == 1:
        for tup in table.zero_polys:
            dedup.add((0,) + tup, (tup, (), None))
            report.zero_residue_emits += 1

    bound = D
    if params.restrict_second_phase and params.w >= 3:
        bound = min(D, second_phase_bound(D, params.w, q2))

    t0 = time.perf_counter()
    xp = ctx.power_table(bound)
    stored_min = 1 if q1 else 0  # smallest possible max exponent per entry

    def probe_block(firsts: range) -> tuple[_Dedup, int, int, int]:
        out = _Dedup()
        log_calls = 0
        zero_shifts = 0
        zero_emits = 0
        tuples = (
            ((),)
            if q2 == 0
            else (
                (f,) + rest
                for f in firsts
                for rest in combinations(range(f + 1, bound + 1), q2 - 1)
            )
        )
        for tup in tuples:
            r = 1
            for e in tup:
                r ^= xp[e]
            if r == 0:
                if q1 % 2 == 1:
                    out.add((0,) + tup, (tup, (), None))
                    zero_emits += 1
                continue
            probe_log = engine.discrete_log(r)
            log_calls += 1
            probe_max = tup[-1] if tup else 0
            shift_hi = D - probe_max
            window = shift_hi - (stored_min - D) + 1
            if window >= M:
                hits = table.entries
            else:
                hits = range_query(
                    table, probe_log + stored_min - D, probe_log + shift_hi, M
                )
            for stored_log, stored, stored_max in hits:
                base = (stored_log - probe_log) % M
                lo = stored_max - D
                # walk every shift congruent to base inside [lo, shift_hi]
                shift = lo + ((base - lo) % M)
                while shift <= shift_hi:
                    if shift == 0:
                        zero_shifts += 1
                    else:
                        out.add(
                            _assemble_exps(stored, tup, shift),
                            (stored, tup, shift),
                        )
                    shift += M
        return out, log_calls, zero_shifts, zero_emits

    if q2 == 0 or params.threads == 1:
        blocks = [probe_block(range(1, bound + 1))]
    else:
        with ThreadPoolExecutor(max_workers=params.threads) as pool:
            blocks = list(pool.map(probe_block, _stripes(bound, params.threads)))
    for out, log_calls, zero_shifts, zero_emits in blocks:
        dedup.merge(out)
        report.log_calls += log_calls
        report.zero_shift_skips += zero_shifts
        report.zero_residue_emits += zero_emits
    report.phase2_seconds = time.perf_counter() - t0
    return SearchResult(records=_finalize(dedup, report), report=report)
