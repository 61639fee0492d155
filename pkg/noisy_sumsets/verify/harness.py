"""
Parameter sweeps comparing the closed-form bounds with the exact oracle.

Rows are independent tasks; they are dispatched through ``BatchProcessor`` and
merged back in grid order, so reports do not depend on scheduling. A row whose
search hits its wall-clock budget is kept with ``exhaustive=False`` and takes
no part in any verdict.
"""

import logging
import time
from dataclasses import asdict, dataclass
from enum import Enum
from math import gcd
from typing import Any, Dict, Iterator, List, Optional, Tuple

from ..bounds.formulas import BoundsReport, bounds_for_noise, bounds_prefix_noise, bounds_two_element
from ..core.cyclic import CyclicSet, interval
from ..production.batch import create_batch_processor
from ..production.cache import OracleCache, oracle_key
from ..production.error_handling import (
    BudgetExceededError,
    ErrorHandler,
    ErrorSeverity,
    InvalidParametersError,
    SandwichViolationError,
    get_global_error_handler,
)
from ..search.sumfree import DEFAULT_SEARCH_CEILING, SumFreeParams, search_mu

logger = logging.getLogger("noisy_sumsets.verify")


class NoiseKind(Enum):
    """Shape of the noise set in a sweep."""

    PREFIX = "prefix"
    TWO_ELEMENT = "two_element"
    CUSTOM = "custom"


@dataclass
class SweepRow:
    """One grid point: closed-form bounds next to the oracle value."""

    n: int
    k: int
    ell: int
    c_or_s: int
    noise_kind: NoiseKind
    noise: str
    formula_lower: int
    formula_upper: int
    oracle_mu: int
    tight: bool
    matches_conjecture: bool
    counterexample: bool
    exhaustive: bool
    witness: Optional[str] = None
    elapsed_ms: int = 0
    nodes_explored: int = 0

    @property
    def sandwiched(self) -> bool:
        return self.formula_lower <= self.oracle_mu <= self.formula_upper

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["noise_kind"] = self.noise_kind.value
        return data


@dataclass(frozen=True)
class ScanRanges:
    """Grid for the conjecture scan: 2 <= c <= c_max, l < k, k <= k_max, l <= l_max, n < n_factor*(k+l)."""

    c_max: int = 4
    k_max: int = 8
    l_max: int = 3
    n_factor: int = 3
    n_max: Optional[int] = None
    search_ceiling: int = DEFAULT_SEARCH_CEILING

    @classmethod
    def desk_scale(cls) -> "ScanRanges":
        return cls()

    @classmethod
    def full_range(cls) -> "ScanRanges":
        """c <= 10, l < 10, k < 20, n < 5(k+l); long-running."""
        return cls(c_max=10, k_max=19, l_max=9, n_factor=5, search_ceiling=5 * (19 + 9))

    def grid(self) -> Iterator[Tuple[int, int, int, int]]:
        """(c, k, l, n) in scan order."""
        for c in range(2, self.c_max + 1):
            for k in range(2, self.k_max + 1):
                for ell in range(1, min(k - 1, self.l_max) + 1):
                    top = self.n_factor * (k + ell) - 1
                    if self.n_max is not None:
                        top = min(top, self.n_max)
                    for n in range(1, top + 1):
                        yield c, k, ell, n

    def largest_modulus(self) -> int:
        return max((n for _, _, _, n in self.grid()), default=0)


@dataclass(frozen=True)
class SweepRanges:
    """Grid for sandwich sweeps: n <= n_max, 1 <= l < k <= k_max, l <= l_max, 2 <= c <= c_max.

    ``l_max`` of None leaves l bounded only by k.
    """

    n_max: int = 30
    k_max: int = 6
    c_max: int = 4
    l_max: Optional[int] = None
    search_ceiling: int = DEFAULT_SEARCH_CEILING


@dataclass(frozen=True)
class _RowTask:
    kind: NoiseKind
    n: int
    k: int
    ell: int
    c_or_s: int
    noise_mask: int

    @property
    def noise(self) -> CyclicSet:
        return CyclicSet(self.n, self.noise_mask)


def _oracle_row(payload: Tuple[int, int, int, int, Optional[int]]) -> Dict[str, Any]:
    """Worker entry point: one budgeted oracle run."""
    n, k, ell, noise_mask, time_budget_ms = payload
    started = time.perf_counter_ns()
    result = search_mu(
        SumFreeParams(n, k, ell),
        CyclicSet(n, noise_mask),
        witness_cap=1,
        time_budget_ms=time_budget_ms,
    )
    witness = result.witnesses[0].to_literal() if result.mu > 0 else None
    return {
        "mu": result.mu,
        "witness": witness,
        "exhaustive": result.exhaustive,
        "nodes_explored": result.nodes_explored,
        "elapsed_ms": (time.perf_counter_ns() - started) // 1_000_000,
    }


def _bounds_for(task: _RowTask) -> BoundsReport:
    if task.kind is NoiseKind.PREFIX:
        return bounds_prefix_noise(task.n, task.k, task.ell, task.c_or_s)
    if task.kind is NoiseKind.TWO_ELEMENT:
        return bounds_two_element(task.n, task.k, task.ell, task.c_or_s)
    return bounds_for_noise(task.n, task.k, task.ell, task.noise)


def _run_rows(
    tasks: List[_RowTask],
    *,
    jobs: int,
    time_budget_ms: Optional[int],
    cache: Optional[OracleCache],
    label: str,
) -> List[SweepRow]:
    """Evaluate rows in grid order, consulting the cache before dispatching."""
    oracle: List[Optional[Dict[str, Any]]] = [None] * len(tasks)
    keys = [
        oracle_key(t.n, t.k, t.ell, t.noise.to_literal()) + ":row" for t in tasks
    ]
    if cache is not None:
        for i, key in enumerate(keys):
            hit = cache.get(key)
            if hit is not None:
                oracle[i] = dict(hit, elapsed_ms=0)

    pending = [i for i, value in enumerate(oracle) if value is None]
    processor, _ = create_batch_processor(max_workers=jobs, label=label)
    payloads = [
        (tasks[i].n, tasks[i].k, tasks[i].ell, tasks[i].noise_mask, time_budget_ms)
        for i in pending
    ]
    for i, value in zip(pending, processor.map_ordered(payloads, _oracle_row)):
        oracle[i] = value
        if cache is not None and value["exhaustive"]:
            cache.set(keys[i], {k: v for k, v in value.items() if k != "elapsed_ms"})

    rows = []
    for task, value in zip(tasks, oracle):
        bounds = _bounds_for(task)
        mu = value["mu"]
        tight = mu == bounds.lower
        counterexample = (
            value["exhaustive"]
            and bounds.lower != bounds.upper
            and bounds.upper > 0
            and mu == bounds.upper
        )
        rows.append(
            SweepRow(
                n=task.n,
                k=task.k,
                ell=task.ell,
                c_or_s=task.c_or_s,
                noise_kind=task.kind,
                noise=task.noise.to_literal(),
                formula_lower=bounds.lower,
                formula_upper=bounds.upper,
                oracle_mu=mu,
                tight=tight,
                matches_conjecture=mu == max(0, bounds.lower),
                counterexample=counterexample,
                exhaustive=value["exhaustive"],
                witness=value["witness"],
                elapsed_ms=value["elapsed_ms"],
                nodes_explored=value["nodes_explored"],
            )
        )
    return rows


def _record_truncated(rows: List[SweepRow], handler: ErrorHandler, label: str) -> None:
    for row in rows:
        if not row.exhaustive:
            handler.record_anomaly(
                "BudgetTruncatedRow",
                f"{label} row excluded from verdicts",
                {"n": row.n, "k": row.k, "l": row.ell, "noise": row.noise},
                ErrorSeverity.LOW,
            )


def conjecture_scan(
    ranges: Optional[ScanRanges] = None,
    *,
    jobs: int = 1,
    time_budget_ms: Optional[int] = None,
    cache: Optional[OracleCache] = None,
    handler: Optional[ErrorHandler] = None,
) -> List[SweepRow]:
    """Oracle vs interval-noise bounds over the scan grid.

    A row is a counterexample when the bounds differ and the oracle reaches the
    upper bound (which is positive). Counterexamples are reported, not raised.
    """
    ranges = ranges or ScanRanges.desk_scale()
    handler = handler or get_global_error_handler()
    largest = ranges.largest_modulus()
    if largest > ranges.search_ceiling:
        raise BudgetExceededError(
            f"scan reaches n={largest}, above the search ceiling {ranges.search_ceiling}"
        )

    tasks = [
        _RowTask(NoiseKind.PREFIX, n, k, ell, c, interval(n, 0, c).mask)
        for c, k, ell, n in ranges.grid()
    ]
    logger.info("conjecture scan over %d rows", len(tasks))
    rows = _run_rows(
        tasks, jobs=jobs, time_budget_ms=time_budget_ms, cache=cache, label="scan"
    )

    _record_truncated(rows, handler, "scan")
    for row in rows:
        if row.counterexample:
            handler.record_anomaly(
                "ConjectureCounterexample",
                f"oracle reaches the upper bound {row.formula_upper}",
                {"n": row.n, "k": row.k, "l": row.ell, "c": row.c_or_s, "witness": row.witness},
                ErrorSeverity.HIGH,
            )
    return rows


def counterexamples(rows: List[SweepRow]) -> List[SweepRow]:
    return [row for row in rows if row.counterexample]


def _sweep_tasks(
    kind: NoiseKind, ranges: SweepRanges, noise_literal: Optional[str]
) -> List[_RowTask]:
    tasks = []
    for n in range(1, ranges.n_max + 1):
        for k in range(2, ranges.k_max + 1):
            top_ell = k - 1 if ranges.l_max is None else min(k - 1, ranges.l_max)
            for ell in range(1, top_ell + 1):
                if kind is NoiseKind.PREFIX:
                    for c in range(2, ranges.c_max + 1):
                        tasks.append(_RowTask(kind, n, k, ell, c, interval(n, 0, c).mask))
                elif kind is NoiseKind.TWO_ELEMENT:
                    for s in range(2, n):
                        if gcd(s, n) > 1:
                            mask = CyclicSet.from_elements(n, [0, s]).mask
                            tasks.append(_RowTask(kind, n, k, ell, s, mask))
                else:
                    noise = CyclicSet.from_literal(noise_literal, n)
                    tasks.append(_RowTask(kind, n, k, ell, len(noise), noise.mask))
    return tasks


def sandwich_sweep(
    kind: NoiseKind,
    ranges: Optional[SweepRanges] = None,
    *,
    noise_literal: Optional[str] = None,
    jobs: int = 1,
    time_budget_ms: Optional[int] = None,
    cache: Optional[OracleCache] = None,
    handler: Optional[ErrorHandler] = None,
) -> List[SweepRow]:
    """Check lower <= oracle <= upper on every exhaustive row of the grid.

    The first violation raises ``SandwichViolationError``; a violation would
    falsify a theorem, so it points at a bug.
    """
    ranges = ranges or SweepRanges()
    handler = handler or get_global_error_handler()
    if kind is NoiseKind.CUSTOM and not noise_literal:
        raise InvalidParametersError("custom sweeps need a noise literal")
    if ranges.n_max > ranges.search_ceiling:
        raise BudgetExceededError(
            f"sweep reaches n={ranges.n_max}, above the search ceiling {ranges.search_ceiling}"
        )

    tasks = _sweep_tasks(kind, ranges, noise_literal)
    logger.info("%s sandwich sweep over %d rows", kind.value, len(tasks))
    rows = _run_rows(
        tasks, jobs=jobs, time_budget_ms=time_budget_ms, cache=cache, label="sweep"
    )

    _record_truncated(rows, handler, "sweep")
    for row in rows:
        if row.exhaustive and not row.sandwiched:
            context = row.to_dict()
            error = SandwichViolationError(
                f"oracle {row.oracle_mu} outside [{row.formula_lower}, {row.formula_upper}] "
                f"for n={row.n} k={row.k} l={row.ell} noise={row.noise}"
            )
            handler.handle_error(error, context, ErrorSeverity.CRITICAL)
            raise error
    return rows

