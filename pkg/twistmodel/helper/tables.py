import csv
import math
import numbers
from pathlib import Path
from typing import Iterable, TextIO, Union


def format_number(value) -> str:
    """
    Locale-independent text form of a table value.
    None and NaN become an empty field, booleans 'true'/'false', floats the shortest round-trip repr.
    """

    if value is None:
        return ''
    if isinstance(value, bool) or type(value).__name__ == 'bool_':
        return 'true' if value else 'false'
    if isinstance(value, numbers.Integral):
        return str(value)

    value = float(value)
    if math.isnan(value):
        return ''
    return repr(value)


def write_rows(destination: Union[str, Path, TextIO], header: list[str], rows: Iterable[list]) -> None:
    """
    Write a header and rows as comma-separated UTF-8 text with '\\n' line endings.

    :param destination: string or Path of the file to write, or an open text stream.
    :param header: list of strings, the column names.
    :param rows: iterable of rows. Non-string fields are passed through 'format_number'.
    """

    if isinstance(destination, (str, Path)):
        with open(destination, 'w', encoding='utf-8', newline='') as file:
            write_rows(file, header, rows)
        return

    writer = csv.writer(destination, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([field if isinstance(field, str) else format_number(field) for field in row])
