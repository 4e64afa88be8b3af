"""Ordered batch processing with optional thread-pool parallelism."""

import concurrent.futures
import logging
import threading
from typing import Callable, Generic, List, Optional, Sequence, Tuple, TypeVar

from tqdm import tqdm

from ..exceptions import WeakSigError

T = TypeVar("T")
R = TypeVar("R")


class BatchProcessor:
    """
    Maps a function over items in parallel while keeping results in input order.
    """

    def __init__(self, max_workers: int = 1):
        """
        Initialize the batch processor.

        Args:
            max_workers: Maximum number of parallel workers
        """
        self.max_workers = max_workers
        self.logger = logging.getLogger(__name__)

    def process(
        self,
        items: Sequence[T],
        func: Callable[[T], R],
        label: Callable[[T], str] = str,
        quiet: bool = True,
        desc: str = "Processing",
        error_callback: Optional[Callable[[str, Exception], None]] = None,
    ) -> "BatchResult[R]":
        """
        Apply func to every item.

        Args:
            items: Inputs to process
            func: Function applied to each input
            label: Names an item in logs and error records
            quiet: Whether to suppress the progress bar
            desc: Progress bar description
            error_callback: Optional callback for handling errors

        Returns:
            BatchResult with one slot per item, in input order
        """
        result: BatchResult[R] = BatchResult(len(items))

        def process_single(index: int) -> None:
            item = items[index]
            name = label(item)
            try:
                value = func(item)
                result.record_success(index, value)
                self.logger.debug(f"Processed: {name}")
            except WeakSigError as e:
                self.logger.error(f"Failed on {name}: {e}")
                result.record_failure(index, name, e)
                if error_callback:
                    error_callback(name, e)
            except Exception as e:
                self.logger.error(f"Unexpected error for {name}: {e}")
                result.record_failure(index, name, e)
                if error_callback:
                    error_callback(name, e)

        if self.max_workers > 1 and len(items) > 1:
            self._process_parallel(len(items), process_single, quiet, desc)
        else:
            self._process_sequential(len(items), process_single, quiet, desc)

        return result

    def _process_parallel(
        self, count: int, processor_func: Callable[[int], None], quiet: bool, desc: str
    ) -> None:
        """Process items in parallel; completion order does not affect result order."""
        with concurrent.futures.ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = [executor.submit(processor_func, index) for index in range(count)]
            completed = concurrent.futures.as_completed(futures)
            if not quiet:
                completed = tqdm(completed, total=count, desc=desc)
            for future in completed:
                future.result()

    def _process_sequential(
        self, count: int, processor_func: Callable[[int], None], quiet: bool, desc: str
    ) -> None:
        """Process items sequentially."""
        indices = range(count)
        if not quiet:
            indices = tqdm(indices, desc=desc)
        for index in indices:
            processor_func(index)


class BatchResult(Generic[R]):
    """
    Result of a batch run.
    """

    def __init__(self, size: int):
        self.values: List[Optional[R]] = [None] * size
        self.processed = 0
        self.failed = 0
        self.errors: List[Tuple[int, str, Exception]] = []
        self._lock = threading.Lock()

    @property
    def total(self) -> int:
        return self.processed + self.failed

    @property
    def success_rate(self) -> float:
        """Success rate as a percentage."""
        if self.total == 0:
            return 0.0
        return (self.processed / self.total) * 100

    def record_success(self, index: int, value: R) -> None:
        with self._lock:
            self.values[index] = value
            self.processed += 1

    def record_failure(self, index: int, name: str, error: Exception) -> None:
        with self._lock:
            self.failed += 1
            self.errors.append((index, name, error))

    def has_errors(self) -> bool:
        return len(self.errors) > 0

    def raise_first(self) -> None:
        """Re-raise the error of the lowest-index failed item, if any."""
        if self.errors:
            raise min(self.errors, key=lambda entry: entry[0])[2]

    def successful(self) -> List[R]:
        """Values of the items that succeeded, in input order."""
        failed = {index for index, _, _ in self.errors}
        return [value for i, value in enumerate(self.values) if i not in failed]  # type: ignore

    def get_error_summary(self) -> str:
        if not self.errors:
            return "No errors"
        summary_lines = [f"Errors occurred in {len(self.errors)} items:"]
        for _, name, error in sorted(self.errors, key=lambda entry: entry[0]):
            summary_lines.append(f"  - {name}: {error}")
        return "\n".join(summary_lines)

    def __str__(self) -> str:
        return (
            f"Processed: {self.processed}, Failed: {self.failed}, "
            f"Success rate: {self.success_rate:.1f}%"
        )
