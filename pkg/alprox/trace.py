# coding=utf-8
"""
Convergence traces
"""
import csv
import io
import typing
from pathlib import Path


class TraceRecord(typing.NamedTuple):
    """
    One accepted inner step (or one outer iteration that needed no inner step, with alpha = 0)
    """
    outer_iter: int
    inner_iter: int
    merit: float
    primal_inf: float
    dual_inf: float
    mu_e: float
    mu_i: float
    rho: float
    alpha: float
    active_set_size: int
    regularization: float


FIELDS = TraceRecord._fields

_INT_FIELDS = frozenset(('outer_iter', 'inner_iter', 'active_set_size'))


def _format(field: str, value) -> str:
    if field in _INT_FIELDS:
        return str(int(value))
    return '%.17g' % value


def format_trace(records: typing.Iterable[TraceRecord]) -> str:
    """
    Comma-delimited table: a header row with the field names, then one row per record

    Floats are written with 17 significant digits so that identical runs give identical text.
    """
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(FIELDS)
    for record in records:
        writer.writerow([_format(field, value) for field, value in zip(FIELDS, record)])
    return stream.getvalue()


def parse_trace(text: str) -> typing.List[TraceRecord]:
    """
    Reads a table written by `format_trace`

    Raises:
        ValueError: the header does not match the record fields, or a cell is not a number
    """
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != FIELDS:
        raise ValueError(f'unexpected trace header: {header}')
    records = []
    for row in reader:
        if not row:
            continue
        values = [int(cell) if field in _INT_FIELDS else float(cell) for field, cell in zip(FIELDS, row)]
        records.append(TraceRecord(*values))
    return records


def read_trace(path: typing.Union[str, Path]) -> typing.List[TraceRecord]:
    """
    Reads a trace file
    """
    return parse_trace(Path(path).read_text(encoding='utf8'))
