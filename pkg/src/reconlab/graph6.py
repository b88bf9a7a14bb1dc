"""graph6 decoding/encoding, short form only (n <= 62).

Byte layout: first byte is n + 63; the remaining bytes pack the upper
triangle column by column (x01, x02, x12, x03, ...) six bits per byte,
most significant bit first, each byte offset by 63. The final byte is
padded on the right with zero bits; nonzero padding is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParseError

_OFFSET = 63
_MAX_SHORT_N = 62


@dataclass(frozen=True)
class Graph6Record:
    """Vertex count plus symmetric 0/1 adjacency with zero diagonal."""

    n: int
    adjacency: np.ndarray

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=int)
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)


def graph6_decode(text: str) -> Graph6Record:
    """Decode one graph6 record. Raises ParseError with the byte offset."""
    if not text:
        raise ParseError("empty graph6 record", 0)
    try:
        data = text.encode("ascii")
    except UnicodeEncodeError as exc:
        raise ParseError("non-ASCII byte in graph6 record", exc.start)
    first = data[0]
    if first == 126:
        raise ParseError("long-form graph6 (n > 62) is not supported", 0)
    if not (_OFFSET <= first <= _OFFSET + _MAX_SHORT_N):
        raise ParseError(f"bad vertex-count byte {first}", 0)
    n = first - _OFFSET

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[1:]
    if len(body) < nbytes:
        raise ParseError(f"truncated bit field: need {nbytes} bytes, have {len(body)}", len(data))
    if len(body) > nbytes:
        raise ParseError("trailing bytes after bit field", 1 + nbytes)

    bits = []
    for k, byte in enumerate(body):
        if not (_OFFSET <= byte <= 126):
            raise ParseError(f"byte {byte} outside graph6 range 63..126", 1 + k)
        val = byte - _OFFSET
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    for pos in range(nbits, len(bits)):
        if bits[pos]:
            raise ParseError("nonzero padding bits", 1 + pos // 6)

    adj = np.zeros((n, n), dtype=int)
    idx = 0
    for j in range(1, n):
        for i in range(j):
            adj[i, j] = adj[j, i] = bits[idx]
            idx += 1
    return Graph6Record(n=n, adjacency=adj)


def graph6_encode(adjacency) -> str:
    """Encode a symmetric 0/1 adjacency matrix as one short-form record."""
    a = np.asarray(adjacency)
    n = a.shape[0]
    if n > _MAX_SHORT_N:
        raise ParseError(f"short form supports n <= {_MAX_SHORT_N}, got {n}", 0)
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if a[i, j] else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(n + _OFFSET)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chars.append(chr(val + _OFFSET))
    return "".join(chars)


def read_graph6_lines(text: str) -> list:
    """Split a graph6 file into (line_number, record_text), 1-based line numbers.

    Blank lines and '#'-prefixed comments are skipped; an optional
    '>>graph6<<' header on a record is tolerated.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith(">>graph6<<"):
            line = line[len(">>graph6<<"):]
        out.append((lineno, line))
    return out
