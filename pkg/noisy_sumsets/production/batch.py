"""
Batch processing for noisy-sumsets.
Runs independent search tasks on a process pool and returns results in input order.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence, Tuple

logger = logging.getLogger("noisy_sumsets.batch")


@dataclass
class BatchProgress:
    """Progress tracking for batch operations."""

    total_items: int
    completed_items: int
    failed_items: int
    current_batch: int
    total_batches: int
    start_time: float
    current_time: float

    @property
    def completion_percentage(self) -> int:
        """Whole-percent completion."""
        if self.total_items == 0:
            return 100
        return (100 * (self.completed_items + self.failed_items)) // self.total_items

    @property
    def elapsed_time(self) -> float:
        """Elapsed wall-clock seconds."""
        return self.current_time - self.start_time


@dataclass
class BatchResult:
    """Result of batch processing, ordered like the input items."""

    results: List[Any]
    failed_items: List[Tuple[int, Exception]]
    progress: BatchProgress
    total_time: float

    @property
    def ok(self) -> bool:
        return not self.failed_items

    def raise_first_failure(self) -> None:
        """Re-raise the failure of the lowest-indexed item, if any."""
        if self.failed_items:
            raise self.failed_items[0][1]


def _guarded_call(payload: Tuple[Callable[[Any], Any], Any]) -> Tuple[bool, Any]:
    """Run one task, returning the exception instead of raising it across the pool."""
    func, item = payload
    try:
        return True, func(item)
    except Exception as e:  # noqa: BLE001 - failures are reported per item
        return False, e


class BatchProcessor:
    """Order-preserving batch processor over a process pool.

    With ``max_workers <= 1`` the items run inline in the calling process, which
    keeps small runs and tests free of pool start-up cost. Task functions must be
    module-level so they pickle.
    """

    def __init__(
        self,
        chunk_size: int = 64,
        max_workers: int = 1,
        progress_callback: Optional[Callable[[BatchProgress], None]] = None,
    ):
        self.chunk_size = max(1, chunk_size)
        self.max_workers = max(1, max_workers)
        self.progress_callback = progress_callback

    def process_batch(
        self,
        items: Sequence[Any],
        processor_func: Callable[[Any], Any],
    ) -> BatchResult:
        """Process items, collecting results in input order."""

        start_time = time.time()
        items = list(items)
        chunks = self._create_chunks(items)
        results: List[Any] = [None] * len(items)
        failed_items: List[Tuple[int, Exception]] = []

        progress = BatchProgress(
            total_items=len(items),
            completed_items=0,
            failed_items=0,
            current_batch=0,
            total_batches=len(chunks),
            start_time=start_time,
            current_time=start_time,
        )

        executor = None
        if self.max_workers > 1 and len(items) > 1:
            executor = ProcessPoolExecutor(max_workers=self.max_workers)

        try:
            offset = 0
            for batch_idx, chunk in enumerate(chunks):
                progress.current_batch = batch_idx + 1
                payloads = [(processor_func, item) for item in chunk]

                if executor is not None:
                    outcomes = list(executor.map(_guarded_call, payloads))
                else:
                    outcomes = [_guarded_call(p) for p in payloads]

                for position, (succeeded, value) in enumerate(outcomes):
                    index = offset + position
                    if succeeded:
                        results[index] = value
                        progress.completed_items += 1
                    else:
                        failed_items.append((index, value))
                        progress.failed_items += 1

                offset += len(chunk)
                progress.current_time = time.time()
                if self.progress_callback:
                    self.progress_callback(progress)
        finally:
            if executor is not None:
                executor.shutdown()

        return BatchResult(
            results=results,
            failed_items=failed_items,
            progress=progress,
            total_time=time.time() - start_time,
        )

    def map_ordered(
        self, items: Sequence[Any], processor_func: Callable[[Any], Any]
    ) -> List[Any]:
        """Process items and raise the first failure, else return ordered results."""
        batch = self.process_batch(items, processor_func)
        batch.raise_first_failure()
        return batch.results

    def _create_chunks(self, items: List[Any]) -> List[List[Any]]:
        """Split items into chunks for batch processing."""
        return [
            items[i : i + self.chunk_size] for i in range(0, len(items), self.chunk_size)
        ]


class ProgressTracker:
    """Rate-limited progress reporting through the package logger."""

    def __init__(self, label: str = "batch", update_interval: float = 1.0):
        self.label = label
        self.update_interval = update_interval
        self.last_update = 0.0

    def update(self, progress: BatchProgress) -> None:
        """Log progress unless the last update was too recent."""
        current_time = time.time()
        finished = (
            progress.completed_items + progress.failed_items >= progress.total_items
        )
        if not finished and current_time - self.last_update < self.update_interval:
            return

        self.last_update = current_time
        logger.info(
            "%s: chunk %d/%d | %d%% | %d/%d items | %d failed",
            self.label,
            progress.current_batch,
            progress.total_batches,
            progress.completion_percentage,
            progress.completed_items,
            progress.total_items,
            progress.failed_items,
        )


def create_batch_processor(
    max_workers: int = 1,
    chunk_size: int = 64,
    show_progress: bool = True,
    label: str = "batch",
) -> Tuple[BatchProcessor, Optional[ProgressTracker]]:
    """Create a batch processor with optional progress tracking."""

    progress_tracker = None
    progress_callback = None

    if show_progress:
        progress_tracker = ProgressTracker(label=label)
        progress_callback = progress_tracker.update

    processor = BatchProcessor(
        chunk_size=chunk_size,
        max_workers=max_workers,
        progress_callback=progress_callback,
    )

    return processor, progress_tracker
