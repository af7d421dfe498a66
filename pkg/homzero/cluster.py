"""
A small process pool that computes homology one degree per task.
"""
from multiprocessing import Process, Queue, current_process
from typing import Any, Callable, Dict, Iterable, Optional

from django.utils.translation import gettext_lazy as _

from homzero.conf import Conf, logger
from homzero.signals import budget_exhausted


def worker(task_queue: Queue, result_queue: Queue):
    """
    Takes a task from the task queue, tries to execute it and puts the result back in the result queue
    :type task_queue: multiprocessing.Queue
    :type result_queue: multiprocessing.Queue
    """
    name = current_process().name
    logger.info(_(f"{name} ready for work at {current_process().pid}"))
    stops = []

    def relay(sender, budget, reason, **kwargs):
        stops.append((sender, budget, reason))

    # receivers of the calling process never see sends made here
    budget_exhausted.connect(relay, weak=False)
    try:
        for task in iter(task_queue.get, "STOP"):
            logger.debug(_(f"{name} processing degree {task['id']}"))
            stops.clear()
            try:
                result = (task["func"](*task["args"]), True)
            except Exception as e:
                result = (e, False)
            task["result"], task["success"] = result
            task["stops"] = list(stops)
            # functions stay behind, only the outcome travels back
            del task["func"], task["args"]
            result_queue.put(task)
    finally:
        budget_exhausted.disconnect(relay)
    logger.info(_(f"{name} stopped doing work"))


def compute_degrees(
    func: Callable, degrees: Iterable[int], args: tuple, jobs: Optional[int] = None
) -> Dict[int, Any]:
    """
    Evaluates ``func(*args, n)`` for every degree n.

    Runs in-process with ``sync`` set or fewer than two jobs. Budget
    exhaustions reported by workers are sent again here, in degree order.
    The first failure, in degree order, is raised again in the caller.
    """
    degrees = list(degrees)
    jobs = Conf.WORKERS if jobs is None else jobs
    if Conf.SYNC or jobs <= 1 or len(degrees) <= 1:
        return {n: func(*args, n) for n in degrees}
    task_queue = Queue()
    result_queue = Queue()
    for n in degrees:
        task_queue.put({"id": n, "func": func, "args": args + (n,)})
    pool = [
        Process(target=worker, args=(task_queue, result_queue), daemon=True)
        for _n in range(min(jobs, len(degrees)))
    ]
    for process in pool:
        task_queue.put("STOP")
        process.start()
    logger.info(_(f"computing {len(degrees)} degrees on {len(pool)} workers"))
    done = {}
    for _n in degrees:
        task = result_queue.get()
        done[task["id"]] = task
    for process in pool:
        process.join()
    for n in degrees:
        for sender, budget, reason in done[n]["stops"]:
            budget_exhausted.send(sender=sender, budget=budget, reason=reason)
    for n in degrees:
        if not done[n]["success"]:
            raise done[n]["result"]
    return {n: done[n]["result"] for n in degrees}
