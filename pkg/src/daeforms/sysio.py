"""Reading and writing systems, witnesses and form data as structured text.

Grammar (one construct per line, order of blocks is free):

    # comment                      -- ignored, as are blank lines
    name: free text                -- optional metadata
    description: free text
    E: 3x2                         -- matrix header, ROWSxCOLS
    1 -2
    1/2 0
    0 7/3
    alpha: 1 2                     -- integer list (may be empty)
    r: 3                           -- single integer
    i_star: 1                      -- single integer

A matrix header is followed by exactly ROWS data lines of COLS entries each;
matrices with zero rows or zero columns have no data lines at all.  Entries
are exact rationals written as an optional minus sign, digits, and an
optional /denominator with positive denominator ("7", "-2", "5/3").  Floats
are rejected, as is any denominator of zero.

Systems use the keys E, A, B.  Witnesses use S, T, V, F_P and, for the PD
kind, F_D.  Form data files use alpha/beta/gamma/delta/kappa, A_cbar, r, and
the size triples l_sizes/n_sizes/m_sizes for the quasi forms.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .linalg import Mat
from .pfeedback import PffData, PTransform, QpffBlockSizes
from .pdfeedback import PdffData, PDTransform, QpdffBlockSizes
from .wong import SystemTriple


class ParseError(ValueError):
    """Input text is not a valid document; carries the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


_MATRIX_HEADER = re.compile(r"^(\w+):\s*(\d+)x(\d+)\s*$")
_KEY_LINE = re.compile(r"^(\w+):(.*)$")
_RATIONAL = re.compile(r"^-?\d+(?:/\d+)?$")

_TEXT_KEYS = ("name", "description")


def _parse_rational(token: str, lineno: int) -> Fraction:
    if not _RATIONAL.match(token):
        raise ParseError(lineno, f"not an exact rational: {token!r}")
    if "/" in token:
        num, den = token.split("/")
        if int(den) == 0:
            raise ParseError(lineno, f"zero denominator in {token!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(token))


class Document:
    """Parsed key/value document: matrices, integer lists and metadata."""

    def __init__(self):
        self.matrices: dict[str, Mat] = {}
        self.int_lists: dict[str, tuple[int, ...]] = {}
        self.meta: dict[str, str] = {}

    def require_matrix(self, key: str) -> Mat:
        if key not in self.matrices:
            raise ParseError(0, f"missing required matrix {key!r}")
        return self.matrices[key]

    def require_ints(self, key: str) -> tuple[int, ...]:
        if key not in self.int_lists:
            raise ParseError(0, f"missing required list {key!r}")
        return self.int_lists[key]

    def require_int(self, key: str) -> int:
        vals = self.require_ints(key)
        if len(vals) != 1:
            raise ParseError(0, f"{key!r} must hold exactly one integer")
        return vals[0]


def parse_document(text: str) -> Document:
    doc = Document()
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        raw = lines[i]
        lineno = i + 1
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            i += 1
            continue
        header = _MATRIX_HEADER.match(stripped)
        if header and header.group(1) not in _TEXT_KEYS:
            key, rows, cols = header.group(1), int(header.group(2)), int(header.group(3))
            i += 1
            grid = []
            if rows > 0 and cols > 0:
                collected = 0
                while collected < rows:
                    if i >= len(lines):
                        raise ParseError(lineno, f"matrix {key!r} is missing data rows")
                    row_line = lines[i].strip()
                    row_no = i + 1
                    i += 1
                    if not row_line or row_line.startswith("#"):
                        continue
                    tokens = row_line.split()
                    if len(tokens) != cols:
                        raise ParseError(row_no,
                                         f"expected {cols} entries for {key!r}, got {len(tokens)}")
                    grid.append([_parse_rational(t, row_no) for t in tokens])
                    collected += 1
            doc.matrices[key] = Mat(rows, cols, grid)
            continue
        keyed = _KEY_LINE.match(stripped)
        if keyed:
            key, rest = keyed.group(1), keyed.group(2).strip()
            i += 1
            if key in _TEXT_KEYS:
                doc.meta[key] = rest
                continue
            values = []
            for tok in rest.split():
                if not re.match(r"^-?\d+$", tok):
                    raise ParseError(lineno, f"expected integers after {key!r}, got {tok!r}")
                values.append(int(tok))
            doc.int_lists[key] = tuple(values)
            continue
        raise ParseError(lineno, f"unrecognized line: {stripped!r}")
    return doc


def parse_system(text: str) -> tuple[SystemTriple, dict[str, str]]:
    doc = parse_document(text)
    try:
        sys = SystemTriple(doc.require_matrix("E"), doc.require_matrix("A"),
                           doc.require_matrix("B"))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(0, str(exc)) from exc
    return sys, doc.meta


def parse_witness(text: str) -> PTransform | PDTransform:
    doc = parse_document(text)
    s = doc.require_matrix("S")
    t = doc.require_matrix("T")
    v = doc.require_matrix("V")
    f_p = doc.require_matrix("F_P")
    try:
        if "F_D" in doc.matrices:
            return PDTransform(s, t, v, f_p, doc.matrices["F_D"])
        return PTransform(s, t, v, f_p)
    except ValueError as exc:
        raise ParseError(0, str(exc)) from exc


def parse_pff_data(doc: Document) -> PffData:
    return PffData(
        alpha=doc.require_ints("alpha"),
        beta=doc.require_ints("beta"),
        gamma=doc.require_ints("gamma"),
        delta=doc.require_ints("delta"),
        kappa=doc.require_ints("kappa"),
        a_cbar=doc.require_matrix("A_cbar"),
    )


def parse_pdff_data(doc: Document) -> PdffData:
    return PdffData(
        alpha=doc.require_ints("alpha"),
        a_cbar=doc.require_matrix("A_cbar"),
        beta=doc.require_ints("beta"),
        gamma=doc.require_ints("gamma"),
        r=doc.require_int("r"),
    )


def parse_qpff_sizes(doc: Document) -> QpffBlockSizes:
    l = doc.require_ints("l_sizes")
    n = doc.require_ints("n_sizes")
    m = doc.require_ints("m_sizes")
    if len(l) != 3 or len(n) != 3 or len(m) != 3:
        raise ParseError(0, "QPFF sizes need three entries per dimension")
    return QpffBlockSizes(*l, *n, *m)


def parse_qpdff_sizes(doc: Document) -> QpdffBlockSizes:
    l = doc.require_ints("l_sizes")
    n = doc.require_ints("n_sizes")
    m = doc.require_ints("m_sizes")
    if len(l) != 3 or len(n) != 3 or len(m) != 2:
        raise ParseError(0, "QPDFF sizes need 3+3+2 entries")
    return QpdffBlockSizes(*l, *n, *m)


# -- writing -----------------------------------------------------------------

def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_matrix(key: str, m: Mat) -> str:
    lines = [f"{key}: {m.rows}x{m.cols}"]
    if m.rows and m.cols:
        for row in m.data:
            lines.append(" ".join(format_rational(x) for x in row))
    return "\n".join(lines)


def format_system(sys: SystemTriple, name: str | None = None) -> str:
    parts = []
    if name:
        parts.append(f"name: {name}")
    parts.extend(format_matrix(k, m) for k, m in (("E", sys.E), ("A", sys.A), ("B", sys.B)))
    return "\n".join(parts) + "\n"


def format_witness(w: PTransform | PDTransform) -> str:
    parts = [format_matrix("S", w.S), format_matrix("T", w.T), format_matrix("V", w.V),
             format_matrix("F_P", w.F_P)]
    if isinstance(w, PDTransform):
        parts.append(format_matrix("F_D", w.F_D))
    return "\n".join(parts) + "\n"


def format_int_list(key: str, values) -> str:
    return f"{key}: " + " ".join(str(v) for v in values)
