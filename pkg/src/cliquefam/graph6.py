"""graph6 encoding and decoding, bit-exact with the reference format."""

from __future__ import annotations

from .graph import Graph

HEADER = b">>graph6<<"


def _size_bytes(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph too large for graph6")


def encode(g: Graph, header: bool = False) -> bytes:
    out = bytearray(HEADER if header else b"")
    out += _size_bytes(g.n)
    acc, nbits = 0, 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc, nbits = 0, 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    if not data:
        raise ValueError("empty graph6 string")
    if any(b < 63 or b > 126 for b in data):
        raise ValueError("graph6 bytes must lie in [63, 126]")
    vals = [b - 63 for b in data]
    if vals[0] < 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    elif len(vals) >= 8:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        body = vals[8:]
    else:
        raise ValueError("truncated graph6 size field")
    need = n * (n - 1) // 2
    if len(body) != -(-need // 6):
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {-(-need // 6)}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    pad = len(body) * 6 - need
    if pad and body[-1] & ((1 << pad) - 1):
        raise ValueError("non-zero padding bits in graph6 body")
    return Graph(n, tuple(rows))


def read_file(path) -> list[Graph]:
    with open(path, "rb") as fh:
        return [decode(line) for line in fh if line.strip()]


def write_file(path, graphs) -> None:
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(encode(g) + b"\n")
