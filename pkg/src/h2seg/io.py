"""Text file formats for graphs and H2S instances.

Graph files: first line ``n m``, then m lines ``u v`` with 0-indexed
endpoints.  Instance files: header ``k d`` followed by k rows of exactly d
characters from ``+-``; the alternate header ``k d binary`` takes rows of
``1``/``0`` mapped to +1/-1.  Lines starting with ``#`` are comments and
are ignored by any reader, except that ``#meta`` lines carry reduction
metadata and round-trip through save/load:

    #meta M 4
    #meta n 3
    #meta edge 0 1

with one ``edge tail head`` line per block, in block order.
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from .core import BlockMeta, H2SInstance
from .maxcut import Graph

__all__ = ["FormatError", "load_graph", "load_instance", "save_instance"]


class FormatError(ValueError):
    """Malformed input file; message names the file, line number and reason."""

    def __init__(self, path, line_no: Optional[int], reason: str):
        self.path = str(path)
        self.line_no = line_no
        where = f"{self.path}:{line_no}" if line_no is not None else self.path
        super().__init__(f"{where}: {reason}")


def _read_lines(path) -> List[Tuple[int, str]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(path, None, f"cannot read file ({exc})") from exc
    return list(enumerate(text.splitlines(), start=1))


def load_graph(path) -> Graph:
    """Parse a graph file, rejecting malformed lines with their line numbers."""
    lines = [(no, s.strip()) for no, s in _read_lines(path)
             if s.strip() and not s.lstrip().startswith("#")]
    if not lines:
        raise FormatError(path, None, "empty graph file")
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise FormatError(path, no, f"expected header 'n m', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(path, no, f"non-integer header fields in {header!r}") from None
    body = lines[1:]
    if len(body) != m:
        raise FormatError(path, no, f"header promises {m} edges, file has {len(body)}")
    edges = []
    seen = {}
    for no, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(path, no, f"expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(path, no, f"non-integer endpoints in {line!r}") from None
        if u == v:
            raise FormatError(path, no, f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(path, no, f"endpoint out of range in ({u}, {v}) for n={n}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(path, no, f"duplicate edge ({u}, {v}), first seen on line {seen[key]}")
        seen[key] = no
        edges.append((u, v))
    return Graph(n, tuple(edges))


def _parse_meta(path, meta_lines) -> Optional[BlockMeta]:
    if not meta_lines:
        return None
    M = n = None
    edges = []
    for no, line in meta_lines:
        parts = line.split()
        if len(parts) < 2:
            raise FormatError(path, no, f"malformed meta line {line!r}")
        key = parts[1]
        try:
            if key == "M" and len(parts) == 3:
                M = int(parts[2])
            elif key == "n" and len(parts) == 3:
                n = int(parts[2])
            elif key == "edge" and len(parts) == 4:
                edges.append((int(parts[2]), int(parts[3])))
            else:
                raise FormatError(path, no, f"unknown meta entry {line!r}")
        except ValueError:
            raise FormatError(path, no, f"non-integer meta value in {line!r}") from None
    if M is None or n is None or not edges:
        raise FormatError(path, None, "incomplete #meta section (need M, n and edges)")
    try:
        return BlockMeta(M=M, n=n, edges=tuple(edges))
    except ValueError as exc:
        raise FormatError(path, None, f"invalid #meta section: {exc}") from exc


def load_instance(path) -> H2SInstance:
    """Parse an instance file in either the sign or the binary alphabet."""
    meta_lines = []
    data_lines = []
    for no, raw in _read_lines(path):
        s = raw.strip()
        if not s:
            continue
        if s.startswith("#"):
            if s.startswith("#meta"):
                meta_lines.append((no, s))
            continue
        data_lines.append((no, s))
    if not data_lines:
        raise FormatError(path, None, "empty instance file")
    no, header = data_lines[0]
    parts = header.split()
    binary = False
    if len(parts) == 3 and parts[2] == "binary":
        binary = True
        parts = parts[:2]
    if len(parts) != 2:
        raise FormatError(path, no, f"expected header 'k d' or 'k d binary', got {header!r}")
    try:
        k, d = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(path, no, f"non-integer header fields in {header!r}") from None
    body = data_lines[1:]
    if len(body) != k:
        raise FormatError(path, no, f"header promises {k} rows, file has {len(body)}")
    alphabet = {"1": 1, "0": -1} if binary else {"+": 1, "-": -1}
    rows = np.empty((k, d), dtype=np.int64)
    for r, (no, line) in enumerate(body):
        if len(line) != d:
            raise FormatError(path, no, f"row has length {len(line)}, expected {d}")
        try:
            rows[r] = [alphabet[ch] for ch in line]
        except KeyError as exc:
            raise FormatError(path, no, f"invalid character {exc.args[0]!r} in row") from None
    meta = _parse_meta(path, meta_lines)
    try:
        return H2SInstance(rows, meta)
    except ValueError as exc:
        raise FormatError(path, None, str(exc)) from exc


def save_instance(inst: H2SInstance, path, binary: bool = False) -> None:
    """Write an instance in canonical form; load(save(x)) reproduces x."""
    out = []
    if inst.block_meta is not None:
        meta = inst.block_meta
        out.append(f"#meta M {meta.M}")
        out.append(f"#meta n {meta.n}")
        for tail, head in meta.edges:
            out.append(f"#meta edge {tail} {head}")
    header = f"{inst.k} {inst.d}"
    if binary:
        header += " binary"
        glyphs = {1: "1", -1: "0"}
    else:
        glyphs = {1: "+", -1: "-"}
    out.append(header)
    for row in inst.vectors:
        out.append("".join(glyphs[int(v)] for v in row))
    Path(path).write_text("\n".join(out) + "\n")
