"""Multiplication tables of the distinguished bases.

The golden tables below are reference data written out cell by cell; they
are never regenerated from the product code.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

from .core import E1, E2, E3, OMEGA, ZERO, beta_mul, hamilton_product, null_tetrad, pauli_decompose

BASES = ("tetrad", "quaternion", "null_tetrad")

_GOLDEN = {
    "tetrad": (
        ("Omega", "e1", "e2", "e3"),
        (
            ("Omega", "e1", "e2", "e3"),
            ("e1", "Omega", "i e3", "-i e2"),
            ("e2", "-i e3", "Omega", "i e1"),
            ("e3", "i e2", "-i e1", "Omega"),
        ),
    ),
    "quaternion": (
        ("1", "i", "j", "k"),
        (
            ("1", "i", "j", "k"),
            ("i", "-1", "k", "-j"),
            ("j", "-k", "-1", "i"),
            ("k", "j", "-i", "-1"),
        ),
    ),
    # Row and column order: l, mbar, m, n.
    "null_tetrad": (
        ("l", "mbar", "m", "n"),
        (
            ("l", "0", "m", "0"),
            ("mbar", "0", "n", "0"),
            ("0", "l", "0", "m"),
            ("0", "mbar", "0", "n"),
        ),
    ),
}


def _elements(name: str) -> dict[str, Any]:
    if name == "tetrad":
        return {"Omega": OMEGA, "e1": E1, "e2": E2, "e3": E3}
    if name == "quaternion":
        return {
            "1": (1.0, 0.0, 0.0, 0.0),
            "i": (0.0, 1.0, 0.0, 0.0),
            "j": (0.0, 0.0, 1.0, 0.0),
            "k": (0.0, 0.0, 0.0, 1.0),
        }
    if name == "null_tetrad":
        l, n, m, mbar = null_tetrad()
        return {"l": l, "mbar": mbar, "m": m, "n": n}
    raise ValueError(f"unknown basis {name!r}; expected one of {BASES}")


@dataclass(frozen=True)
class BasisTable:
    """4x4 product table; ``entries[r][c]`` is ``labels[r] * labels[c]``.

    Entries are quantions, except for the quaternion table whose entries are
    real 4-tuples ``(h0, h1, h2, h3)``.
    """

    name: str
    labels: tuple[str, ...]
    entries: tuple[tuple[Any, ...], ...]

    def cell(self, row: str, col: str):
        return self.entries[self.labels.index(row)][self.labels.index(col)]


_CELL = re.compile(r"^(?P<sign>-?)(?P<imag>i )?(?P<sym>\S+)$")


def _parse_cell(text: str, name: str, elements: dict[str, Any]):
    zero = (0.0, 0.0, 0.0, 0.0) if name == "quaternion" else ZERO
    if text == "0":
        return zero
    match = _CELL.match(text)
    if match is None or match["sym"] not in elements:
        raise ValueError(f"cannot parse table cell {text!r}")
    sign = -1.0 if match["sign"] else 1.0
    elem = elements[match["sym"]]
    if name == "quaternion":
        if match["imag"]:
            raise ValueError(f"quaternion cells are real: {text!r}")
        return tuple(sign * x for x in elem)
    return (sign * 1j if match["imag"] else sign) * elem


def golden_table(name: str) -> BasisTable:
    """The golden table for ``name`` as elements."""
    elements = _elements(name)
    labels, rows = _GOLDEN[name]
    entries = tuple(tuple(_parse_cell(cell, name, elements) for cell in row) for row in rows)
    return BasisTable(name, labels, entries)


def basis_table(name: str) -> BasisTable:
    """Compute the product table for ``name`` from the algebra itself."""
    elements = _elements(name)
    labels = _GOLDEN[name][0]
    mul = hamilton_product if name == "quaternion" else beta_mul
    entries = tuple(tuple(mul(elements[r], elements[c]) for c in labels) for r in labels)
    return BasisTable(name, labels, entries)


def _coefficients(entry, name: str) -> tuple:
    if name == "tetrad":
        return pauli_decompose(entry)
    if name == "null_tetrad":
        # l, mbar, m, n are the matrix units E11, E21, E12, E22
        return entry.components
    return tuple(entry)


def _fmt_coeff(z: complex) -> str:
    z = complex(z)
    if z == 1:
        return ""
    if z == -1:
        return "-"
    if z == 1j:
        return "i "
    if z == -1j:
        return "-i "
    if z.imag == 0:
        return f"{z.real:g} "
    if z.real == 0:
        return f"{z.imag:g}i "
    return f"({z.real:g}{z.imag:+g}i) "


def express(entry, name: str) -> str:
    """Render a table entry as a combination of the basis labels, e.g. ``-i e2``."""
    labels = _GOLDEN[name][0]
    terms = [
        _fmt_coeff(coef) + label
        for coef, label in zip(_coefficients(entry, name), labels)
        if coef != 0
    ]
    if not terms:
        return "0"
    return " + ".join(terms)


def table_mismatches(name: str) -> list[tuple[str, str, str, str]]:
    """Cells where the computed table differs from the golden one.

    Each item is ``(row, col, expected, computed)``.  Comparison is exact.
    """
    golden = golden_table(name)
    computed = basis_table(name)
    out = []
    for r, row in enumerate(golden.labels):
        for c, col in enumerate(golden.labels):
            want = golden.entries[r][c]
            got = computed.entries[r][c]
            if want != got:
                out.append((row, col, express(want, name), express(got, name)))
    return out
