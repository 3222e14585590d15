"""Run independent tasks on worker threads and collect results in order."""

import logging
import threading
from typing import Callable, Dict, List, Sequence, TypeVar

logger = logging.getLogger("HypHarm.workers")

T = TypeVar("T")


def run_indexed(tasks: Sequence[Callable[[], T]], threads: int = 1) -> List[T]:
    """Run ``tasks`` on up to ``threads`` threads.

    Results are stored under the task index behind a lock and returned in
    task order, so the output never depends on completion order. The first
    exception raised by a task is re-raised after all workers finish.

    Args:
        tasks: Zero-argument callables
        threads: Maximum number of concurrent worker threads

    Returns:
        List: Task results, in task order
    """
    if threads <= 1 or len(tasks) <= 1:
        return [task() for task in tasks]

    results: Dict[int, T] = {}
    errors: Dict[int, BaseException] = {}
    results_lock = threading.Lock()
    next_index = [0]

    def worker():
        while True:
            with results_lock:
                index = next_index[0]
                if index >= len(tasks) or errors:
                    return
                next_index[0] += 1
            try:
                value = tasks[index]()
            except Exception as e:
                logger.error(f"Task {index} failed: {str(e)}", exc_info=True)
                with results_lock:
                    errors[index] = e
                return
            with results_lock:
                results[index] = value

    workers = [
        threading.Thread(target=worker, name=f"hypharm-worker-{i}", daemon=True)
        for i in range(min(threads, len(tasks)))
    ]
    for thread in workers:
        thread.start()
    for thread in workers:
        thread.join()

    if errors:
        raise errors[min(errors)]
    return [results[index] for index in range(len(tasks))]
