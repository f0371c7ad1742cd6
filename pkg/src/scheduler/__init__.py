"""
Scheduler module for energycov
Ordered thread pool used by simulation paths and kernel projection blocks
"""

from .worker_pool import WorkerPool, default_threads

__all__ = ["WorkerPool", "default_threads"]
