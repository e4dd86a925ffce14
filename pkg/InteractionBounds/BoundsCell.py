import logging
import threading
import time

logger = logging.getLogger("InteractionBounds")


class BoundsCell:
    """
    Best sample and best exclusive set shared between the sampling loop and the bound worker.  Publishing
    only ever improves a bound.  ``clock`` stamps improvements; it defaults to seconds since creation.
    """

    def __init__(self, clock=None):
        self._lock = threading.Lock()
        started = time.monotonic()
        self.clock = clock or (lambda: time.monotonic() - started)
        self._sample = None
        self._mutex_set = None
        self.t_last_ub = 0.0
        self.t_last_lb = 0.0

    def __repr__(self):
        return f"{self.__class__.__name__}(lb={self.lower_bound}, ub={self.upper_bound})"

    @property
    def lower_bound(self):
        with self._lock:
            return 0 if self._mutex_set is None else len(self._mutex_set)

    @property
    def upper_bound(self):
        with self._lock:
            return None if self._sample is None else len(self._sample)

    @property
    def mutex_set(self):
        with self._lock:
            return self._mutex_set

    @property
    def sample(self):
        with self._lock:
            return self._sample

    def publish_lower(self, mutex_set):
        """Returns True if ``mutex_set`` raised the lower bound"""
        with self._lock:
            if self._mutex_set is not None and len(mutex_set) <= len(self._mutex_set):
                return False
            if self._sample is not None and len(mutex_set) > len(self._sample):
                raise RuntimeError(f"Lower bound {len(mutex_set)} exceeds upper bound {len(self._sample)}")
            self._mutex_set = mutex_set
            self.t_last_lb = self.clock()
        logger.debug(f"Published lower bound {len(mutex_set)}")
        return True

    def publish_upper(self, sample):
        """Returns True if ``sample`` lowered the upper bound"""
        with self._lock:
            if self._sample is not None and len(sample) >= len(self._sample):
                return False
            if self._mutex_set is not None and len(sample) < len(self._mutex_set):
                raise RuntimeError(f"Upper bound {len(sample)} below lower bound {len(self._mutex_set)}")
            self._sample = sample
            self.t_last_ub = self.clock()
        logger.debug(f"Published upper bound {len(sample)}")
        return True

    def gap_closed(self):
        with self._lock:
            return self._sample is not None and self._mutex_set is not None and len(self._sample) == len(self._mutex_set)
