"""
Tab separated key=value log lines: `tskv\tkey=value\tkey=value`.
"""

import logging
import typing

TskvRow = typing.Dict[str, str]

_ESCAPES = (('\\', '\\\\'), ('\t', '\\t'), ('\n', '\\n'), ('\r', '\\r'))

# Attributes every LogRecord has; anything else came in through `extra`.
_RECORD_ATTRS = frozenset(
    logging.LogRecord('', 0, '', 0, '', (), None).__dict__,
) | {'message', 'asctime'}


def escape(value: str) -> str:
    for raw, escaped in _ESCAPES:
        value = value.replace(raw, escaped)
    return value


def unescape(value: str) -> str:
    result = []
    chars = iter(value)
    for char in chars:
        if char != '\\':
            result.append(char)
            continue
        nxt = next(chars, '')
        result.append({'t': '\t', 'n': '\n', 'r': '\r'}.get(nxt, nxt))
    return ''.join(result)


def escape_key(key: str) -> str:
    return escape(key).replace('=', '\\=')


def format_row(row: typing.Mapping[str, typing.Any]) -> str:
    parts = ['tskv']
    for key, value in row.items():
        parts.append(f'{escape_key(key)}={escape(str(value))}')
    return '\t'.join(parts)


def parse_line(line: str) -> TskvRow:
    parts = line.rstrip('\n').split('\t')
    if parts[:1] != ['tskv']:
        raise RuntimeError(f'Invalid tskv line feeded {line!r}')
    result = {}
    for part in parts[1:]:
        key, value = _split_pair(part)
        result[unescape(key)] = unescape(value)
    return result


def _split_pair(part: str) -> typing.Tuple[str, str]:
    index = 0
    while True:
        index = part.find('=', index)
        if index < 0:
            raise RuntimeError(f'Invalid tskv pair {part!r}')
        backslashes = len(part[:index]) - len(part[:index].rstrip('\\'))
        if backslashes % 2 == 0:
            return part[:index], part[index + 1:]
        index += 1


class TskvFormatter(logging.Formatter):
    """
    Formats records as tskv lines. Structured fields are taken from
    `extra={'fields': {...}}` and from any other non-standard record
    attribute.
    """

    def __init__(self, *, timestamps: bool = True) -> None:
        super().__init__()
        self._timestamps = timestamps

    def format(self, record: logging.LogRecord) -> str:
        row: typing.Dict[str, typing.Any] = {}
        if self._timestamps:
            row['timestamp'] = self.formatTime(record, '%Y-%m-%dT%H:%M:%S')
        row['level'] = record.levelname
        row['module'] = record.name
        row['text'] = record.getMessage()
        fields = getattr(record, 'fields', None)
        if isinstance(fields, dict):
            row.update(fields)
        for key, value in record.__dict__.items():
            if key in _RECORD_ATTRS or key == 'fields' or key in row:
                continue
            row[key] = value
        if record.exc_info:
            row['exception'] = self.formatException(record.exc_info)
        return format_row(row)
