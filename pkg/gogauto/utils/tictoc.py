import logging
from contextlib import contextmanager
from time import perf_counter

from gogauto.utils.data import scale_time


class TicToc(object):
    """
    Stopwatch used to report how long the structure constructions take.

    ``tic`` starts the clock, ``toc`` returns the seconds elapsed since the last ``tic``.
    The ``timed`` context manager wraps both and writes the usual two log lines.
    """

    start_time = -1

    @staticmethod
    def tic():
        TicToc.start_time = perf_counter()

    @staticmethod
    def toc(reset: bool = False) -> float:
        """
        Args:
            reset: Restart the clock after reading it.

        Returns:
            Elapsed time in seconds.
        """
        passed_time = perf_counter() - TicToc.start_time
        if reset:
            TicToc.tic()
        return passed_time

    @staticmethod
    @contextmanager
    def timed(message: str, level: int = logging.INFO):
        """
        Log ``message``, run the block, then log the elapsed time.

        Nested blocks keep their own start time, so the class-level clock is not shared.

        Args:
            message: Progress line written before the block runs.
            level: Logging level of both lines.
        """
        logging.log(level, message)
        start = perf_counter()
        yield
        logging.log(level, f"  completed in {scale_time(perf_counter() - start)}")
