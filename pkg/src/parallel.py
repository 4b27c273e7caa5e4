"""Run independent per-complex jobs serially or on a process pool."""

import multiprocessing as mp
from functools import partial
from itertools import starmap
from typing import Callable, List, Sequence, Tuple, TypeVar

from tqdm import tqdm

T = TypeVar("T")


def _apply(function: Callable[..., T], task: Tuple) -> T:
    return function(*task)


def map_jobs(
    function: Callable[..., T],
    tasks: Sequence[Tuple],
    jobs: int = 1,
    progress: bool = False,
    desc: str = "",
) -> List[T]:
    """``[function(*task) for task in tasks]``, in task order.

    With ``jobs > 1`` the tasks go to a spawn-context pool, so ``function``
    must be a module-level callable and the tasks picklable.
    """
    if jobs <= 1 or len(tasks) <= 1:
        return list(starmap(function, tqdm(tasks, desc=desc, disable=not progress)))
    mp_context = mp.get_context("spawn")
    with mp_context.Pool(processes=jobs) as pool:
        results = pool.imap(partial(_apply, function), tasks)
        return list(tqdm(results, total=len(tasks), desc=desc, disable=not progress))
