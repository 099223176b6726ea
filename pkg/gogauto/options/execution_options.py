import logging
import os
from typing import Optional

NUM_WORKERS_ENV_VAR = "GOGAUTO_NUM_WORKERS"

class ExecutionOptions:
    """
    How verification sweeps are executed.

    The worker count defaults to the ``GOGAUTO_NUM_WORKERS`` environment variable and falls back to a
    single in-process worker. With ``show_progress`` off the progress lines of a sweep are logged at
    DEBUG instead of INFO.
    """

    def __init__(self, num_workers: Optional[int] = None, show_progress: bool = True):
        self.num_workers = num_workers
        self.show_progress = show_progress

    @property
    def num_workers(self) -> int:
        return self._num_workers

    @num_workers.setter
    def num_workers(self, value: Optional[int]):
        cpu_count = os.cpu_count()
        if cpu_count is None:
            raise RuntimeError("Unable to determine the number of CPUs on this system. Please specify the number of workers explicitly.")

        if value is None:
            env_value = os.environ.get(NUM_WORKERS_ENV_VAR)
            if env_value is None:
                value = 1
            else:
                try:
                    value = int(env_value)
                except ValueError:
                    raise ValueError(f"{NUM_WORKERS_ENV_VAR} must be a positive integer, got '{env_value}'.") from None

        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"Got {value}. Number of workers must be a positive integer.")

        if value <= 0 or value > cpu_count:
            raise ValueError(f"Number of workers {value} must be a positive integer and at most the number of CPUs {cpu_count}.")

        self._num_workers = value

    @property
    def is_parallel(self) -> bool:
        return self._num_workers > 1

    @property
    def progress_level(self) -> int:
        return logging.INFO if self.show_progress else logging.DEBUG
