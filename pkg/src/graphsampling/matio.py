"""Matrix and signal file formats: Matrix Market 1.0 and RFC-4180 CSV.

Matrices read as dense complex arrays from either Matrix Market files
(coordinate and array formats; real, integer, complex, and pattern fields;
general, symmetric, skew-symmetric, and hermitian storage) or dense CSV
(one row per line, complex cells written like ``1.5+0.25j``). Signal tables
are written as CSV with a header row and 17 significant digits, enough for
float64 values to round-trip exactly; complex columns become two columns
suffixed ``_re`` and ``_im``.
"""

import csv

import numpy as np

from .errors import DimensionHeaderError, DimensionMismatchError, MatrixParseError

MATRIX_FORMATS = ("matrix-market", "dense-csv")

_MM_FIELDS = ("real", "integer", "complex", "pattern")
_MM_SYMMETRIES = ("general", "symmetric", "skew-symmetric", "hermitian")


def _fmt_float(v: float) -> str:
    return f"{v:.17g}"


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def _parse_cell(token: str, line_no: int) -> complex:
    token = token.strip()
    if not token:
        raise MatrixParseError(line_no, "empty cell")
    try:
        return complex(token)
    except ValueError:
        raise MatrixParseError(line_no, f"cannot parse number {token!r}") from None


def _read_matrix_market(lines) -> np.ndarray:
    it = iter(enumerate(lines, start=1))
    try:
        line_no, header = next(it)
    except StopIteration:
        raise MatrixParseError(0, "empty file") from None
    tokens = header.strip().split()
    if len(tokens) != 5 or tokens[0] != "%%MatrixMarket" or tokens[1].lower() != "matrix":
        raise MatrixParseError(line_no, "expected '%%MatrixMarket matrix ...' header")
    layout, field, symmetry = (t.lower() for t in tokens[2:5])
    if layout not in ("coordinate", "array"):
        raise MatrixParseError(line_no, f"unsupported layout {layout!r}")
    if field not in _MM_FIELDS:
        raise MatrixParseError(line_no, f"unsupported field {field!r}")
    if symmetry not in _MM_SYMMETRIES:
        raise MatrixParseError(line_no, f"unsupported symmetry {symmetry!r}")
    if field == "pattern" and layout == "array":
        raise MatrixParseError(line_no, "pattern field requires coordinate layout")

    size_line = None
    for line_no, raw in it:
        stripped = raw.strip()
        if not stripped or stripped.startswith("%"):
            continue
        size_line = (line_no, stripped)
        break
    if size_line is None:
        raise MatrixParseError(line_no, "missing size line")

    line_no, stripped = size_line
    parts = stripped.split()
    expected_parts = 3 if layout == "coordinate" else 2
    if len(parts) != expected_parts:
        raise MatrixParseError(line_no, f"size line needs {expected_parts} integers")
    try:
        dims = [int(p) for p in parts]
    except ValueError:
        raise MatrixParseError(line_no, "size line entries must be integers") from None
    rows, cols = dims[0], dims[1]
    if rows < 1 or cols < 1:
        raise DimensionHeaderError(line_no, f"bad dimensions {rows} x {cols}")
    if symmetry != "general" and rows != cols:
        raise DimensionHeaderError(line_no, f"{symmetry} matrix must be square")

    mat = np.zeros((rows, cols), dtype=complex)

    def value_from(parts_, start, n_line):
        if field == "pattern":
            if len(parts_) != start:
                raise MatrixParseError(n_line, "pattern entries take no value")
            return 1.0 + 0.0j
        if field == "complex":
            if len(parts_) != start + 2:
                raise MatrixParseError(n_line, "complex entries need two values")
            try:
                return complex(float(parts_[start]), float(parts_[start + 1]))
            except ValueError:
                raise MatrixParseError(n_line, "cannot parse complex entry") from None
        if len(parts_) != start + 1:
            raise MatrixParseError(n_line, "entry needs exactly one value")
        try:
            return complex(float(parts_[start]))
        except ValueError:
            raise MatrixParseError(n_line, "cannot parse entry") from None

    def mirrored(value):
        if symmetry == "symmetric":
            return value
        if symmetry == "hermitian":
            return np.conj(value)
        return -value  # skew-symmetric

    if layout == "coordinate":
        declared = dims[2]
        seen = 0
        for n_line, raw in it:
            stripped = raw.strip()
            if not stripped or stripped.startswith("%"):
                continue
            parts_ = stripped.split()
            if len(parts_) < 2:
                raise MatrixParseError(n_line, "coordinate entry needs row and column")
            try:
                i, j = int(parts_[0]) - 1, int(parts_[1]) - 1
            except ValueError:
                raise MatrixParseError(n_line, "row/column must be integers") from None
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionHeaderError(
                    n_line, f"entry ({i + 1}, {j + 1}) outside {rows} x {cols}"
                )
            value = value_from(parts_, 2, n_line)
            mat[i, j] = value
            if symmetry != "general" and i != j:
                mat[j, i] = mirrored(value)
            seen += 1
        if seen != declared:
            raise DimensionHeaderError(line_no, f"header declares {declared} entries, found {seen}")
    else:
        values = []
        for n_line, raw in it:
            stripped = raw.strip()
            if not stripped or stripped.startswith("%"):
                continue
            values.append(value_from(stripped.split(), 0, n_line))
        if symmetry == "general":
            expected = rows * cols
        else:
            expected = rows * (rows + 1) // 2
        if len(values) != expected:
            raise DimensionHeaderError(
                line_no, f"array layout expects {expected} values, found {len(values)}"
            )
        pos = 0
        if symmetry == "general":
            for j in range(cols):
                for i in range(rows):
                    mat[i, j] = values[pos]
                    pos += 1
        else:
            for j in range(cols):
                for i in range(j, rows):
                    mat[i, j] = values[pos]
                    if i != j:
                        mat[j, i] = mirrored(values[pos])
                    pos += 1
    return mat


def _read_dense_csv(lines) -> np.ndarray:
    rows = []
    width = None
    for line_no, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        cells = [_parse_cell(tok, line_no) for tok in stripped.split(",")]
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise MatrixParseError(line_no, f"row has {len(cells)} cells, expected {width}")
        rows.append(cells)
    if not rows:
        raise MatrixParseError(0, "empty file")
    return np.array(rows, dtype=complex)


def read_matrix(path, fmt: str = "dense-csv") -> np.ndarray:
    """Read a dense complex matrix from a Matrix Market or dense CSV file."""
    if fmt not in MATRIX_FORMATS:
        raise ValueError(f"format must be one of {MATRIX_FORMATS}, got {fmt!r}")
    with open(path, encoding="utf-8") as handle:
        lines = handle.readlines()
    if fmt == "matrix-market":
        return _read_matrix_market(lines)
    return _read_dense_csv(lines)


def write_matrix(path, matrix, fmt: str = "dense-csv") -> None:
    """Write a matrix in Matrix Market coordinate or dense CSV form.

    Matrix Market output uses the complex field only when the matrix has a
    nonzero imaginary part, and always the general symmetry.
    """
    if fmt not in MATRIX_FORMATS:
        raise ValueError(f"format must be one of {MATRIX_FORMATS}, got {fmt!r}")
    mat = np.asarray(matrix)
    if mat.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got shape {mat.shape}")
    is_complex = np.iscomplexobj(mat) and np.abs(mat.imag).max(initial=0.0) > 0.0
    if fmt == "dense-csv":
        with open(path, "w", encoding="utf-8", newline="") as handle:
            for row in mat:
                cells = [
                    _fmt_complex(complex(v)) if is_complex else _fmt_float(float(np.real(v)))
                    for v in row
                ]
                handle.write(",".join(cells) + "\r\n")
        return
    rows, cols = mat.shape
    entries = [(i, j) for i in range(rows) for j in range(cols) if mat[i, j] != 0]
    field = "complex" if is_complex else "real"
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(f"%%MatrixMarket matrix coordinate {field} general\n")
        handle.write(f"{rows} {cols} {len(entries)}\n")
        for i, j in entries:
            v = complex(mat[i, j])
            if is_complex:
                handle.write(f"{i + 1} {j + 1} {_fmt_float(v.real)} {_fmt_float(v.imag)}\n")
            else:
                handle.write(f"{i + 1} {j + 1} {_fmt_float(v.real)}\n")


def write_signal_csv(path, columns) -> None:
    """Write named vectors as CSV columns at full float64 precision.

    ``columns`` is a dict or list of (name, vector) pairs; all vectors must
    have the same length. Complex vectors are split into ``name_re`` and
    ``name_im`` columns.
    """
    pairs = list(columns.items()) if isinstance(columns, dict) else list(columns)
    expanded = []
    length = None
    for name, values in pairs:
        vec = np.asarray(values).reshape(-1)
        if length is None:
            length = vec.shape[0]
        elif vec.shape[0] != length:
            raise DimensionMismatchError(
                f"column {name!r} has length {vec.shape[0]}, expected {length}"
            )
        if np.iscomplexobj(vec) and np.abs(vec.imag).max(initial=0.0) > 0.0:
            expanded.append((f"{name}_re", vec.real))
            expanded.append((f"{name}_im", vec.imag))
        else:
            expanded.append((name, np.real(vec)))
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow([name for name, _ in expanded])
        for i in range(length or 0):
            writer.writerow([_fmt_float(float(vec[i])) for _, vec in expanded])


def read_signal_csv(path) -> dict:
    """Read a signal CSV back into a dict of name to float vector."""
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise MatrixParseError(0, "empty file") from None
        data = {name: [] for name in header}
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise MatrixParseError(line_no, f"row has {len(row)} cells, expected {len(header)}")
            for name, cell in zip(header, row):
                data[name].append(float(cell))
    return {name: np.array(vals) for name, vals in data.items()}
