# pylint: disable=redefined-outer-name
import contextlib
import logging
import typing

import pytest

from indpoly.utils import tskv


class CapturedLogs:
    def __init__(self) -> None:
        self._logs: typing.List[tskv.TskvRow] = []

    def publish(self, row: tskv.TskvRow) -> None:
        self._logs.append(row)

    def select(self, **query) -> typing.List[tskv.TskvRow]:
        result = []
        for row in self._logs:
            if _match_entry(row, query):
                result.append(row)
        return result


class _CaptureHandler(logging.Handler):
    def __init__(self, capture: CapturedLogs) -> None:
        super().__init__(level=logging.DEBUG)
        self._capture = capture
        self.setFormatter(tskv.TskvFormatter(timestamps=False))

    def emit(self, record: logging.LogRecord) -> None:
        self._capture.publish(tskv.parse_line(self.format(record)))


class CaptureControl:
    def __init__(self, logger_name: str = 'indpoly') -> None:
        self._logger_name = logger_name

    @contextlib.contextmanager
    def start_capture(
            self, *, level: int = logging.DEBUG,
    ) -> typing.Iterator[CapturedLogs]:
        capture = CapturedLogs()
        handler = _CaptureHandler(capture)
        logger = logging.getLogger(self._logger_name)
        old_level = logger.level
        logger.addHandler(handler)
        logger.setLevel(level)
        try:
            yield capture
        finally:
            logger.removeHandler(handler)
            logger.setLevel(old_level)


@pytest.fixture
def indpoly_log_capture() -> CaptureControl:
    """
    Captures records of the `indpoly` logger as parsed tskv rows:

    @code
    with indpoly_log_capture.start_capture() as capture:
        ...
    assert capture.select(level='ERROR')
    @endcode
    """
    return CaptureControl()


def _match_entry(row: tskv.TskvRow, query) -> bool:
    for key, value in query.items():
        if row.get(key) != value:
            return False
    return True


@pytest.fixture(autouse=True)
def _reset_indpoly_logging():
    """Drops handlers installed by `indpoly.utils.logs.setup_logging`."""
    logger = logging.getLogger('indpoly')
    handlers = list(logger.handlers)
    level = logger.level
    propagate = logger.propagate
    yield
    for handler in list(logger.handlers):
        if handler not in handlers:
            logger.removeHandler(handler)
    logger.setLevel(level)
    logger.propagate = propagate
