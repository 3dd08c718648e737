# Semichu - Closed-set enumeration
#
# Lectic (Next-Closure) enumeration of every closed set of a closure
# operator on a finite ground set {0, ..., m-1}.

import logging
from typing import Callable, Iterator, Optional

import numpy as np
from tqdm import tqdm

from .config import OUTPUT_CONFIG

logger = logging.getLogger(__name__)

ClosureFn = Callable[[np.ndarray], np.ndarray]


class NextClosure:
    """
    Next-Closure over boolean membership vectors

    Closed sets come out in lectic order, each exactly once. The closure
    must be extensive, monotone and idempotent.

    Args:
        size: Size of the ground set
        closure: Maps a membership vector to its closure
        description: Label for progress output
    """

    def __init__(self, size: int, closure: ClosureFn, description: str = 'closed sets'):
        self.size = size
        self.closure = closure
        self.description = description
        self.count = 0

    def __iter__(self) -> Iterator[np.ndarray]:
        return self.generate()

    def generate(self) -> Iterator[np.ndarray]:
        current = self.closure(np.zeros(self.size, dtype=bool))
        progress = tqdm(desc=self.description, unit='set',
                        disable=not OUTPUT_CONFIG['progress'], leave=False)
        self.count = 0
        try:
            while True:
                self.count += 1
                progress.update(1)
                yield current.copy()
                following = self._next(current)
                if following is None:
                    break
                current = following
        finally:
            progress.close()
        logger.debug(f"{self.description}: {self.count} closed sets")

    def _next(self, current: np.ndarray) -> Optional[np.ndarray]:
        for i in range(self.size - 1, -1, -1):
            if current[i]:
                continue
            candidate = current.copy()
            candidate[i + 1:] = False
            candidate[i] = True
            closed = self.closure(candidate)
            # accepted when nothing smaller than i was added
            if np.array_equal(closed[:i], current[:i]):
                return closed
        return None
