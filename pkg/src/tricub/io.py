"""Reading and writing graphs: the edge-list text format and sparse6.

Edge-list format::

    # optional comment lines
    n m
    u v        (m lines, 0-based endpoints; repeated lines are parallel edges)

sparse6 strings may carry the ``>>sparse6<<`` header; the body starts with ':'.
"""

from __future__ import annotations

from pathlib import Path

from .errors import GraphFormatError
from .graph import Multigraph, serialize_edge_list

SPARSE6_HEADER = ">>sparse6<<"


def parse_edge_list(text: str) -> Multigraph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line))
    if not rows:
        raise GraphFormatError("empty input", line=1)

    lineno, header = rows[0]
    n, m = _two_ints(header, lineno)
    if n < 0 or m < 0:
        raise GraphFormatError("negative count in header", line=lineno)
    body = rows[1:]
    if len(body) != m:
        where = body[-1][0] if body else lineno
        raise GraphFormatError(f"header declares {m} edges, found {len(body)}", line=where)

    edges = []
    for lineno, line in body:
        u, v = _two_ints(line, lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", line=lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex index out of range [0, {n})", line=lineno)
        edges.append((u, v))
    return Multigraph(n, tuple(edges))


def _two_ints(line: str, lineno: int) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise GraphFormatError(f"expected two integers, got {line!r}", line=lineno)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError(f"expected two integers, got {line!r}", line=lineno) from None


# -- sparse6 ----------------------------------------------------------------

def _width(n: int) -> int:
    # bits per vertex index; at least one
    k = 1
    while (1 << k) < n:
        k += 1
    return k


def _encode_size(n: int) -> list[int]:
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]


def _decode_size(data: list[int]) -> tuple[int, list[int]]:
    if not data:
        raise GraphFormatError("missing vertex count")
    if data[0] != 63:
        return data[0], data[1:]
    if len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise GraphFormatError("truncated vertex count")
        n = 0
        for x in data[2:8]:
            n = (n << 6) | x
        return n, data[8:]
    if len(data) < 4:
        raise GraphFormatError("truncated vertex count")
    return (data[1] << 12) | (data[2] << 6) | data[3], data[4:]


def parse_sparse6(text: str) -> Multigraph:
    s = text.strip()
    if s.startswith(SPARSE6_HEADER):
        s = s[len(SPARSE6_HEADER):]
    if not s:
        raise GraphFormatError("empty sparse6 string")
    if not s.startswith(":"):
        raise GraphFormatError("sparse6 body must start with ':'")
    data = []
    for ch in s[1:]:
        c = ord(ch) - 63
        if not 0 <= c < 64:
            raise GraphFormatError(f"invalid sparse6 character {ch!r}")
        data.append(c)
    n, body = _decode_size(data)
    k = _width(n)

    bits = []
    for c in body:
        bits.extend((c >> (5 - i)) & 1 for i in range(6))

    edges = []
    v = 0
    pos = 0
    while pos + 1 + k <= len(bits):
        b = bits[pos]
        x = 0
        for bit in bits[pos + 1:pos + 1 + k]:
            x = (x << 1) | bit
        pos += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            # trailing padding
            break
        if x > v:
            v = x
        else:
            if x == v:
                raise GraphFormatError(f"loop at vertex {v}")
            edges.append((x, v))
    else:
        # leftover bits shorter than one record must be padding: ones, or a 0 then ones
        tail = bits[pos:]
        if len(tail) >= 6 or not all(tail[1:]) or (tail and not tail[0] and len(tail) < k):
            raise GraphFormatError("truncated sparse6 bit stream")
    return Multigraph(n, tuple(edges))


def to_sparse6(g: Multigraph, header: bool = False) -> str:
    """Encode ``g`` as sparse6. Edges come out sorted by (larger, smaller) endpoint."""
    n = g.vertex_count
    k = _width(n)

    def enc(x):
        return [(x >> (k - 1 - i)) & 1 for i in range(k)]

    bits: list[int] = []
    cur = 0
    for hi, lo in sorted((max(u, v), min(u, v)) for u, v in g.edges):
        if hi == cur:
            bits.append(0)
        elif hi == cur + 1:
            cur = hi
            bits.append(1)
        else:
            cur = hi
            bits.append(1)
            bits.extend(enc(hi))
            bits.append(0)
        bits.extend(enc(lo))

    pad = (-len(bits)) % 6
    if k < 6 and n == (1 << k) and pad >= k and cur < n - 1:
        # padding with ones here would decode as an edge to n-1
        bits.append(0)
        pad = (-len(bits)) % 6
    bits.extend([1] * pad)

    chars = _encode_size(n)
    for i in range(0, len(bits), 6):
        c = 0
        for bit in bits[i:i + 6]:
            c = (c << 1) | bit
        chars.append(c)
    body = ":" + "".join(chr(c + 63) for c in chars)
    return (SPARSE6_HEADER + body) if header else body


# -- files ------------------------------------------------------------------

def read_graph(path, fmt: str | None = None) -> Multigraph:
    path = Path(path)
    text = path.read_text()
    if fmt is None:
        stripped = text.strip()
        fmt = "sparse6" if stripped.startswith(":") or stripped.startswith(SPARSE6_HEADER) else "edgelist"
    if fmt == "sparse6":
        g = parse_sparse6(text.strip().splitlines()[0])
    elif fmt == "edgelist":
        g = parse_edge_list(text)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return g.with_name(path.stem)


def write_graph(g: Multigraph, path, fmt: str = "edgelist") -> None:
    path = Path(path)
    if fmt == "sparse6":
        path.write_text(to_sparse6(g) + "\n")
    elif fmt == "edgelist":
        text = serialize_edge_list(g)
        if g.name:
            text = f"# {g.name}\n" + text
        path.write_text(text)
    else:
        raise ValueError(f"unknown format {fmt!r}")
