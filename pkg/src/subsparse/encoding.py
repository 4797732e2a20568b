"""Bit-exact binary encoding of additive sparsifiers.

Layout (all integers little-endian unsigned varints):

    n, edge count,
    then per edge: support size, sorted vertex ids delta-encoded
    (first id, then gaps), one flag byte (bit 0: symmetric, bit 1: K is
    integral), K as a varint when integral else 8 raw float64 bytes,
    scale as 8 raw float64 bytes.

Only Additive splitting functions are encodable — the succinct pipeline
produces nothing else.  decode(encode(H)) reproduces H exactly, including
float bit patterns.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .errors import FormatError, PreconditionError
from .hypergraph import Hyperedge, SubmodularHypergraph
from .splitting import Additive


def write_uvarint(buf: bytearray, x: int) -> None:
    if x < 0:
        raise ValueError("varints are unsigned")
    while True:
        b = x & 0x7F
        x >>= 7
        if x:
            buf.append(b | 0x80)
        else:
            buf.append(b)
            return


def read_uvarint(data: bytes, pos: int) -> tuple[int, int]:
    x = 0
    shift = 0
    while True:
        if pos >= len(data):
            raise FormatError("truncated varint")
        b = data[pos]
        pos += 1
        x |= (b & 0x7F) << shift
        if not b & 0x80:
            return x, pos
        shift += 7
        if shift > 63:
            raise FormatError("varint too long")


@dataclass(frozen=True)
class EncodedSparsifier:
    data: bytes
    bit_count: int
    n: int
    m: int


def encode(H: SubmodularHypergraph) -> EncodedSparsifier:
    """Serialize an all-Additive hypergraph; see module docstring for layout."""
    buf = bytearray()
    write_uvarint(buf, H.n)
    write_uvarint(buf, H.m)
    for i, e in enumerate(H.edges):
        fn = e.fn
        if not isinstance(fn, Additive):
            raise PreconditionError(f"edge {i} is {fn.kind}; only Additive edges encode")
        write_uvarint(buf, e.k)
        prev = 0
        for j, v in enumerate(e.vertices):
            write_uvarint(buf, v if j == 0 else v - prev)
            prev = v
        integral = float(fn.K).is_integer()
        buf.append((1 if fn.symmetric else 0) | (2 if integral else 0))
        if integral:
            write_uvarint(buf, int(fn.K))
        else:
            buf += struct.pack("<d", fn.K)
        buf += struct.pack("<d", fn.scale)
    data = bytes(buf)
    return EncodedSparsifier(data=data, bit_count=8 * len(data), n=H.n, m=H.m)


def decode(data: bytes) -> SubmodularHypergraph:
    """Inverse of encode()."""
    pos = 0
    n, pos = read_uvarint(data, pos)
    m, pos = read_uvarint(data, pos)
    edges = []
    for _ in range(m):
        k, pos = read_uvarint(data, pos)
        if k < 1:
            raise FormatError("edge with no vertices")
        verts = []
        v = 0
        for j in range(k):
            d, pos = read_uvarint(data, pos)
            v = d if j == 0 else v + d
            verts.append(v)
        if pos >= len(data):
            raise FormatError("truncated edge record")
        flags = data[pos]
        pos += 1
        if flags & 2:
            K, pos = read_uvarint(data, pos)
            K = float(K)
        else:
            if pos + 8 > len(data):
                raise FormatError("truncated K field")
            (K,) = struct.unpack_from("<d", data, pos)
            pos += 8
        if pos + 8 > len(data):
            raise FormatError("truncated scale field")
        (scale,) = struct.unpack_from("<d", data, pos)
        pos += 8
        edges.append(
            Hyperedge(
                vertices=tuple(verts),
                fn=Additive(K=K, symmetric=bool(flags & 1), scale=scale),
            )
        )
    if pos != len(data):
        raise FormatError(f"{len(data) - pos} trailing bytes after the last edge")
    return SubmodularHypergraph(n=n, edges=edges)
