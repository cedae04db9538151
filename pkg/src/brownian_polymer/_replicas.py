"""Replica-parallel execution; results always come back in replica order so output never depends on worker count."""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Optional, Type, TypeVar, Union

from tqdm import tqdm

from .utils import get_worker_count

logger = logging.getLogger(__name__)

ReplicaResult = TypeVar("ReplicaResult")


def map_replicas(
    function: Callable[[int], ReplicaResult],
    replicas: Union[int, Iterable[int]],
    n_jobs: Optional[int] = None,
    progress_bar: bool = False,
    progress_bar_class: Type[tqdm] = tqdm,
    progress_bar_options: Optional[dict] = None,
) -> list[ReplicaResult]:
    """
    Evaluate ``function(replica)`` for every replica index.

    Parameters
    ----------
    function : callable
        Must be picklable when more than one worker is used: a module-level function or a functools.partial of one.
    replicas : int or iterable of int
        Either the number of replicas (indices 0, 1, ...) or the indices themselves.
    n_jobs : int, optional
        Worker processes; defaults to the POLYMER_THREADS environment variable. 0 uses every CPU and negative values
        count back from the total.
    progress_bar : bool
        Display a progress bar over replicas.
    progress_bar_class : type of tqdm.tqdm, optional
        The specific child class of tqdm.tqdm to use to make progress bars.
    progress_bar_options : dict, optional
        Dictionary of keyword arguments to pass directly to the progress_bar_class.
    """
    indices = list(range(replicas)) if isinstance(replicas, int) else list(replicas)
    workers = get_worker_count(n_jobs)
    if progress_bar_options is None:
        progress_bar_options = dict(position=0, leave=False)
    progress_bar_options.update(total=len(indices))

    logger.debug("Running %d replicas on %d worker(s).", len(indices), workers)
    if workers == 1 or len(indices) < 2:
        iterable = progress_bar_class(indices, **progress_bar_options) if progress_bar else indices
        return [function(index) for index in iterable]

    chunksize = max(1, len(indices) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as executor:
        results = executor.map(function, indices, chunksize=chunksize)
        if progress_bar:
            results = progress_bar_class(results, **progress_bar_options)
        return list(results)
