"""
Unit tests for ordered batch processing.
"""

import time

import pytest

from weaksig.core import BatchProcessor
from weaksig.exceptions import ValidationError


def _slow_square(x):
    time.sleep(0.001 * (5 - x % 5))
    return x * x


@pytest.mark.parametrize("workers", [1, 4])
def test_results_keep_input_order(workers):
    result = BatchProcessor(workers).process(list(range(20)), _slow_square)
    assert result.values == [x * x for x in range(20)]
    assert result.processed == 20
    assert not result.has_errors()
    assert result.success_rate == 100.0


def _fail_on_odd(x):
    if x % 2:
        raise ValidationError(f"odd input {x}")
    return x


@pytest.mark.parametrize("workers", [1, 3])
def test_failures_are_collected(workers):
    seen = []
    result = BatchProcessor(workers).process(
        [0, 1, 2, 3, 4],
        _fail_on_odd,
        label=lambda x: f"item-{x}",
        error_callback=lambda name, e: seen.append(name),
    )
    assert result.successful() == [0, 2, 4]
    assert sorted(seen) == ["item-1", "item-3"]
    assert result.failed == 2
    assert "item-1: odd input 1" in result.get_error_summary()
    with pytest.raises(ValidationError, match="odd input 1"):
        result.raise_first()


def test_unexpected_errors_are_recorded():
    result = BatchProcessor().process([1, 0], lambda x: 1 / x)
    assert result.successful() == [1.0]
    assert isinstance(result.errors[0][2], ZeroDivisionError)
    assert "Failed: 1" in str(result)


def test_empty_batch():
    result = BatchProcessor(2).process([], _slow_square)
    assert result.values == []
    assert result.get_error_summary() == "No errors"
    result.raise_first()
