"""Textual forms for partitions, matrices, rationals and evaluation points.

    partition     "3,2,1"  ("" or "0" is the empty partition)
    matrix        "0,1,0,1;1,0,0,1;0,2,0,0"
    rational      "1/2" or "3"
    eval point    "1^2;1/2,1/3"  (the "1^k;" prefix is optional)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .bijection import Matrix, as_matrix
from .partitions import Partition, check_partition, is_plane_partition
from .symfunc import EvalPoint


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "0"):
        return ()
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"bad partition {text!r}") from None
    return check_partition(parts)


def format_partition(p: Sequence[int]) -> str:
    return ",".join(str(x) for x in p) if p else "0"


def parse_matrix(text: str) -> Matrix:
    text = text.strip()
    if not text:
        return ()
    try:
        return as_matrix([[int(x) for x in row.split(",")] for row in text.split(";")])
    except ValueError as exc:
        raise ValueError(f"bad matrix {text!r}: {exc}") from None


def format_matrix(mat: Sequence[Sequence[int]]) -> str:
    return ";".join(",".join(str(x) for x in row) for row in mat)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"rational {text!r} must be written as p/q or an integer")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad rational {text!r}") from None


def parse_qlist(text: str) -> tuple[Fraction, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(parse_rational(x) for x in text.split(","))


def parse_eval_point(text: str) -> EvalPoint:
    text = text.strip()
    ones = 0
    if ";" in text:
        head, text = text.split(";", 1)
        head = head.strip()
        if not head.startswith("1^"):
            raise ValueError(f"bad ones prefix {head!r}")
        ones = int(head[2:])
    elif text.startswith("1^"):
        return EvalPoint(int(text[2:]), ())
    return EvalPoint(ones, parse_qlist(text))


def parse_int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def parse_plane_partition(text: str):
    """Rows of a plane partition in matrix syntax; rows may be ragged."""
    text = text.strip()
    if not text or text == "0":
        return ()
    rows = tuple(tuple(int(x) for x in row.split(",") if int(x) > 0) for row in text.split(";"))
    rows = tuple(r for r in rows if r)
    if not is_plane_partition(rows):
        raise ValueError(f"not a plane partition: {text!r}")
    return rows
