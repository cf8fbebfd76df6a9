import logging
import sys
import typing

from . import tskv

LOG_LEVELS = ('debug', 'info', 'warning', 'error', 'critical')

_HANDLER_NAME = 'indpoly-tskv'


def setup_logging(
        level: str = 'warning',
        *,
        stream: typing.Optional[typing.TextIO] = None,
        timestamps: bool = True,
) -> logging.Handler:
    """Routes the `indpoly` logger to `stream` (stderr) in tskv format."""
    logger = logging.getLogger('indpoly')
    for handler in list(logger.handlers):
        if handler.get_name() == _HANDLER_NAME:
            logger.removeHandler(handler)

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(tskv.TskvFormatter(timestamps=timestamps))
    logger.addHandler(handler)
    logger.setLevel(level.upper())
    logger.propagate = False
    return handler
