"""Text formats for semiring tables and matrix literals.

Semiring file::

    # comment lines start with '#'
    semiring <name> order <k>
    elements: e0 e1 ... e{k-1}
    add:
    <k rows of k element names>
    mul:
    <k rows of k element names>

Matrix file::

    matrix <n> over <semiring-name>
    <n rows of n entries>

Tropical entries are integers, ``p/q`` rationals, decimals or ``-inf``.
"""
from __future__ import annotations

from pathlib import Path
from typing import Optional

from .matrix import Matrix
from .semiring import MAX_ORDER, SemiringTable, StructureError, builtin_semiring, canonicalize
from .tropical import parse_tropical_value


class ParseError(ValueError):
    """A syntax or validation error at a known position (1-based)."""

    def __init__(self, message: str, line: int, column: int = 1, source: str = "<text>"):
        self.message, self.line, self.column, self.source = message, line, column, source
        super().__init__(f"{source}:{line}:{column}: {message}")


def _tokens(text: str):
    """Yield (line_no, [(column, token), ...]) for non-blank, non-comment lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks, col = [], 0
        for part in body.split():
            col = body.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield no, toks


class _Lines:
    def __init__(self, text: str, source: str):
        self.lines = list(_tokens(text))
        self.pos = 0
        self.source = source
        self.last_line = max(1, len(text.splitlines()))

    def error(self, msg, line=None, col=1):
        return ParseError(msg, line if line is not None else self.last_line, col, self.source)

    def next(self, what: str):
        if self.pos >= len(self.lines):
            raise self.error(f"unexpected end of input, expected {what}")
        item = self.lines[self.pos]
        self.pos += 1
        return item

    def done(self):
        return self.pos >= len(self.lines)


# -- semirings --------------------------------------------------------------------

def parse_semiring(text: str, source: str = "<text>") -> SemiringTable:
    """Parse and canonicalize a semiring table (axioms are not checked here)."""
    lines = _Lines(text, source)
    no, toks = lines.next("a 'semiring <name> order <k>' header")
    words = [t for _, t in toks]
    if len(words) != 4 or words[0] != "semiring" or words[2] != "order":
        raise lines.error("header must read 'semiring <name> order <k>'", no, toks[0][0])
    name = words[1]
    try:
        k = int(words[3])
    except ValueError:
        raise lines.error(f"order {words[3]!r} is not an integer", no, toks[3][0]) from None
    if not 2 <= k <= MAX_ORDER:
        raise lines.error(f"order must be between 2 and {MAX_ORDER}, got {k}", no, toks[3][0])

    elements: Optional[list[str]] = None
    tables: dict[str, list[list[int]]] = {}
    while not lines.done():
        no, toks = lines.next("a section")
        col, head = toks[0]
        rest = toks[1:]
        if head.endswith(":") and len(head) > 1:
            section = head[:-1]
        elif len(rest) and rest[0][1] == ":":
            section, rest = head, rest[1:]
        else:
            raise lines.error(f"expected 'elements:', 'add:' or 'mul:', found {head!r}", no, col)
        if section not in ("elements", "add", "mul"):
            raise lines.error(f"unknown section {section!r}", no, col)
        if section == "elements" and elements is not None or section in tables:
            raise lines.error(f"duplicate section {section!r}", no, col)
        if section == "elements":
            elements = [t for _, t in rest]
            if len(elements) != k:
                raise lines.error(f"expected {k} element names, found {len(elements)}", no, col)
            seen = set()
            for c, t in rest:
                if t in seen:
                    raise lines.error(f"duplicate element name {t!r}", no, c)
                seen.add(t)
            continue
        if elements is None:
            raise lines.error(f"section {section!r} appears before 'elements:'", no, col)
        if rest:
            raise lines.error(f"unexpected token {rest[0][1]!r} after '{section}:'", no, rest[0][0])
        index = {e: i for i, e in enumerate(elements)}
        rows = []
        for r in range(k):
            rno, rtoks = lines.next(f"row {r + 1} of the {section} table")
            if len(rtoks) != k:
                raise lines.error(f"{section} table row {r + 1} has {len(rtoks)} entries, expected {k}",
                                  rno, rtoks[0][0])
            row = []
            for c, t in rtoks:
                if t not in index:
                    raise lines.error(f"unknown element {t!r}", rno, c)
                row.append(index[t])
            rows.append(row)
        tables[section] = rows
    if elements is None:
        raise lines.error("missing 'elements:' section")
    for section in ("add", "mul"):
        if section not in tables:
            raise lines.error(f"missing '{section}:' section")
    try:
        return canonicalize(name, elements, tables["add"], tables["mul"])
    except StructureError as exc:
        raise lines.error(str(exc), 1) from None


def serialize_semiring(S: SemiringTable) -> str:
    out = [f"semiring {S.name} order {S.order}", "elements: " + " ".join(S.elements)]
    for label, table in (("add", S.add_table), ("mul", S.mul_table)):
        out.append(f"{label}:")
        out.extend(" ".join(S.elements[x] for x in row) for row in table)
    return "\n".join(out) + "\n"


def load_semiring(ref: str) -> SemiringTable:
    """A builtin name, or a path to a semiring file."""
    p = Path(ref)
    if p.is_file():
        return parse_semiring(p.read_text(encoding="utf-8"), str(p))
    return builtin_semiring(ref)


# -- matrices -----------------------------------------------------------------------

def parse_matrix(text: str, semiring=None, source: str = "<text>") -> Matrix:
    """Parse a matrix literal.

    Without ``semiring`` the header name must be a builtin semiring. With
    it, the header name must match ``semiring.name``.
    """
    lines = _Lines(text, source)
    no, toks = lines.next("a 'matrix <n> over <semiring>' header")
    words = [t for _, t in toks]
    if len(words) != 4 or words[0] != "matrix" or words[2] != "over":
        raise lines.error("header must read 'matrix <n> over <semiring-name>'", no, toks[0][0])
    try:
        n = int(words[1])
    except ValueError:
        raise lines.error(f"size {words[1]!r} is not an integer", no, toks[1][0]) from None
    if n < 1:
        raise lines.error("matrix size must be positive", no, toks[1][0])
    name = words[3]
    if semiring is None:
        try:
            semiring = builtin_semiring(name)
        except ValueError as exc:
            raise lines.error(str(exc), no, toks[3][0]) from None
    elif name.lower() != semiring.name.lower():
        raise lines.error(f"matrix is over {name!r} but the semiring is {semiring.name!r}", no, toks[3][0])

    rows = []
    for r in range(n):
        rno, rtoks = lines.next(f"row {r + 1} of {n}")
        if len(rtoks) != n:
            raise lines.error(f"row {r + 1} has {len(rtoks)} entries, expected {n}", rno, rtoks[0][0])
        row = []
        for c, t in rtoks:
            try:
                row.append(parse_tropical_value(t) if not semiring.finite else semiring.index(t))
            except (ValueError, KeyError, ZeroDivisionError):
                raise lines.error(f"unknown element {t!r} for {semiring.name}", rno, c) from None
        rows.append(row)
    if not lines.done():
        no, toks = lines.next("")
        raise lines.error(f"expected {n} rows, found extra row", no, toks[0][0])
    return Matrix(semiring, rows)


def serialize_matrix(A: Matrix) -> str:
    rows = A.names()
    return "\n".join([f"matrix {A.n} over {A.semiring.name}"] + [" ".join(r) for r in rows]) + "\n"


def load_matrix(path: str, semiring=None) -> Matrix:
    p = Path(path)
    return parse_matrix(p.read_text(encoding="utf-8"), semiring, str(p))
