"""
CSV output shared by traces, sweeps, spectra and witness reports
Comma separator, '.' decimal, LF line endings, UTF-8, 17 significant digits
"""
import csv
import os
from typing import Iterable, Sequence


def format_value(value) -> str:
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence], comments: Iterable[str] = ()) -> None:
    """Header, rows, then '# ...' comment lines appended at the end"""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
        for line in comments:
            handle.write(f"# {line}\n")
