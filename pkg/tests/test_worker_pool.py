"""
Tests for WorkerPool
"""

import threading
import time

import pytest

from src.scheduler import WorkerPool, default_threads


def test_results_in_submission_order():
    def work(i):
        time.sleep(0.001 * (10 - i))
        return i * i

    assert WorkerPool(4).map_ordered(work, range(10)) == [i * i for i in range(10)]


def test_single_thread_runs_inline():
    seen = []
    WorkerPool(1).map_ordered(lambda _: seen.append(threading.get_ident()), range(3))
    assert set(seen) == {threading.get_ident()}


def test_empty_and_single_item():
    pool = WorkerPool(3)
    assert pool.map_ordered(str, []) == []
    assert pool.map_ordered(str, [7]) == ["7"]


def test_rejects_zero_threads():
    with pytest.raises(ValueError):
        WorkerPool(0)


def test_default_threads():
    assert 1 <= default_threads() <= 8
    assert WorkerPool().threads == default_threads()


def test_exceptions_propagate():
    def work(i):
        if i == 2:
            raise RuntimeError("boom")
        return i

    with pytest.raises(RuntimeError):
        WorkerPool(2).map_ordered(work, range(4))
