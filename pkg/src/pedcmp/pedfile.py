"""Reading and writing ``.ped`` files.

One record per line: ``id father mother sex label``.  ``0`` means "no
parent" or "no label"; sex is ``1`` (male) or ``2`` (female).  Lines starting
with ``#`` are comments and records may reference individuals defined later.
"""

from __future__ import annotations

import io
import os

from .errors import BadInDegree, PedFormatError
from .pedigree import Gender, Pedigree, validate

HEADER = "# id father mother sex label"


def parse_ped(text: str) -> Pedigree:
    individuals, edges, parents = [], [], {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 5:
            raise PedFormatError(lineno, f"expected 5 fields, got {len(fields)}")
        ident, fa, mo, sex, label = fields
        if ident == "0":
            raise PedFormatError(lineno, "'0' is reserved and cannot be an id")
        if sex not in ("1", "2"):
            raise PedFormatError(lineno, f"sex must be 1 or 2, got {sex!r}")
        try:
            lab = int(label)
        except ValueError:
            raise PedFormatError(lineno, f"label must be an integer, got {label!r}") from None
        if lab < 0:
            raise PedFormatError(lineno, "labels must be non-negative")
        if (fa == "0") != (mo == "0"):
            raise BadInDegree(ident, 1)
        individuals.append((ident, Gender(int(sex)), lab or None))
        if fa != "0":
            if fa == mo:
                raise PedFormatError(lineno, "father and mother are the same individual")
            edges.append((fa, ident))
            edges.append((mo, ident))
            parents[ident] = (fa, mo, lineno)
    ped = validate(individuals, edges)
    for child, (fa, mo, lineno) in parents.items():
        if ped.genders[ped.index(fa)] is not Gender.MALE:
            raise PedFormatError(lineno, f"father {fa!r} of {child!r} is not male")
    return ped


def format_ped(p: Pedigree, header: bool = True) -> str:
    buf = io.StringIO()
    if header:
        buf.write(HEADER + "\n")
    for ident, fa, mo, gender, label in p.to_records():
        buf.write(f"{ident} {fa or 0} {mo or 0} {int(gender)} {label or 0}\n")
    return buf.getvalue()


def read_ped(path) -> Pedigree:
    with open(os.fspath(path), encoding="utf-8") as handle:
        return parse_ped(handle.read())


def write_ped(p: Pedigree, path) -> None:
    with open(os.fspath(path), "w", encoding="utf-8", newline="\n") as handle:
        handle.write(format_ped(p))


__all__ = ["parse_ped", "format_ped", "read_ped", "write_ped"]
