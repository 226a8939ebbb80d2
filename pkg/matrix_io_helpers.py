"""Plain-text formats for matrices, symbols and masks.

Matrix file::

    d N
    re,im re,im ...      (d lines, N entries each)

Symbol / vector file: one ``re,im`` entry per line (a bare real is accepted).
Mask file: M lines of L/a space-separated nonnegative reals.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from errors import ParseError, ShapeMismatchError, SymbolError
from frames import FiniteFrame, Symbol, constant_symbol, harmonic_symbol, block_symbol, uniform_symbol

PathLike = Union[str, Path]


def format_entry(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.17g},{z.imag:.17g}"


def parse_entry(token: str, line: int) -> complex:
    parts = token.split(",")
    if len(parts) not in (1, 2):
        raise ParseError(f"bad entry {token!r}, expected re,im", line)
    try:
        re_part = float(parts[0])
        im_part = float(parts[1]) if len(parts) == 2 else 0.0
    except ValueError:
        raise ParseError(f"bad number in entry {token!r}", line) from None
    return complex(re_part, im_part)


def _content_lines(path: PathLike) -> list[tuple[int, str]]:
    text = Path(path).read_text(encoding="utf-8")
    return [(i, raw.strip()) for i, raw in enumerate(text.splitlines(), start=1) if raw.strip()]


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def format_matrix(x: np.ndarray) -> str:
    x = np.atleast_2d(np.asarray(x, dtype=np.complex128))
    rows = [f"{x.shape[0]} {x.shape[1]}"]
    rows.extend(" ".join(format_entry(z) for z in row) for row in x)
    return "\n".join(rows) + "\n"


def write_matrix(path: PathLike, x) -> Path:
    if isinstance(x, FiniteFrame):
        x = x.vectors
    path = Path(path)
    path.write_text(format_matrix(x), encoding="utf-8")
    return path


def parse_matrix(text: str) -> np.ndarray:
    lines = [(i, raw.strip()) for i, raw in enumerate(text.splitlines(), start=1) if raw.strip()]
    if not lines:
        raise ParseError("empty matrix file", 1)
    header_line, header = lines[0]
    fields = header.split()
    if len(fields) != 2 or not all(f.isdigit() for f in fields):
        raise ParseError(f"header must be 'd N', got {header!r}", header_line)
    d, n = int(fields[0]), int(fields[1])
    if d < 1 or n < 1:
        raise ParseError(f"dimensions must be positive, got {d} x {n}", header_line)
    body = lines[1:]
    if len(body) != d:
        at = body[d][0] if len(body) > d else (body[-1][0] + 1 if body else header_line + 1)
        raise ParseError(f"expected {d} rows, found {len(body)}", at)
    x = np.empty((d, n), dtype=np.complex128)
    for r, (line_no, raw) in enumerate(body):
        tokens = raw.split()
        if len(tokens) != n:
            raise ParseError(f"expected {n} entries, found {len(tokens)}", line_no)
        x[r] = [parse_entry(t, line_no) for t in tokens]
    return x


def read_matrix(path: PathLike) -> np.ndarray:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def read_frame(path: PathLike) -> FiniteFrame:
    return FiniteFrame(read_matrix(path))


# ---------------------------------------------------------------------------
# symbols and vectors
# ---------------------------------------------------------------------------

def read_vector(path: PathLike) -> np.ndarray:
    lines = _content_lines(path)
    if not lines:
        raise ParseError("empty vector file", 1)
    values = []
    for line_no, raw in lines:
        if len(raw.split()) != 1:
            raise ParseError(f"expected one entry per line, got {raw!r}", line_no)
        values.append(parse_entry(raw, line_no))
    return np.array(values, dtype=np.complex128)


def write_vector(path: PathLike, values) -> Path:
    if isinstance(values, Symbol):
        values = values.values
    path = Path(path)
    path.write_text("".join(format_entry(z) + "\n" for z in np.asarray(values).ravel()), encoding="utf-8")
    return path


def read_symbol(path: PathLike) -> Symbol:
    return Symbol(read_vector(path))


def parse_symbol_spec(spec: str, count: int, seed: int = 0) -> Symbol:
    """Resolve a symbol spec.

    ``file:<path>`` or a bare path, ``const:<c>``, ``uniform:<lo>:<hi>``,
    ``harmonic`` or ``blocks``.
    """
    kind, _, rest = spec.partition(":")
    if kind == "harmonic":
        symbol = harmonic_symbol(count)
    elif kind == "blocks":
        symbol = block_symbol(count)
    elif kind == "const":
        try:
            symbol = constant_symbol(count, complex(rest))
        except ValueError:
            raise SymbolError(f"bad constant in symbol spec {spec!r}") from None
    elif kind == "uniform":
        try:
            lo, hi = (float(v) for v in rest.split(":"))
        except ValueError:
            raise SymbolError(f"symbol spec {spec!r} must look like uniform:<lo>:<hi>") from None
        symbol = uniform_symbol(count, lo, hi, seed)
    else:
        symbol = read_symbol(rest if kind == "file" else spec)
    if symbol.count != count:
        raise ShapeMismatchError(f"symbol has {symbol.count} entries, frame has {count}")
    return symbol


# ---------------------------------------------------------------------------
# masks
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MaskGrid:
    """Rows are frequency channels, columns are time frames."""

    values: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def flatten(self) -> np.ndarray:
        # column-major so that index k + M*n addresses (row k, column n)
        return self.values.flatten(order="F")


def read_mask(path: PathLike, rows: int, cols: int) -> MaskGrid:
    lines = _content_lines(path)
    if len(lines) != rows:
        raise ShapeMismatchError(f"mask has {len(lines)} rows, lattice needs {rows}")
    grid = np.empty((rows, cols))
    for r, (line_no, raw) in enumerate(lines):
        tokens = raw.split()
        if len(tokens) != cols:
            raise ShapeMismatchError(f"line {line_no}: mask row has {len(tokens)} values, lattice needs {cols}")
        try:
            grid[r] = [float(t) for t in tokens]
        except ValueError:
            raise ParseError(f"bad number in mask row {raw!r}", line_no) from None
    if np.any(grid < 0):
        raise SymbolError("mask values must be nonnegative")
    return MaskGrid(grid)


def write_mask(path: PathLike, grid) -> Path:
    values = grid.values if isinstance(grid, MaskGrid) else np.asarray(grid, dtype=float)
    path = Path(path)
    path.write_text("".join(" ".join(f"{v:.17g}" for v in row) + "\n" for row in values), encoding="utf-8")
    return path
