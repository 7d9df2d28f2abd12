"""Self-describing share files.

Layout (integers little-endian)::

    magic      4  b"CESS"
    version    1  1
    scheme_id  1  1 ce-shamir, 2 ce-rs, 3 ce-random
    n r z idx  2 each
    q          8
    length     8  original secret length (bytes, or symbols for q < 257)
    meta_len   2
    meta       meta_len  ce-shamir: |D| then D; ce-rs: beta; ce-random: 32-byte seed
    payload    symbols, ceil(log2(q) / 8) bytes each, block after block
"""

from __future__ import annotations

import os
import struct
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .core import Scheme, SchemeId, SchemeParams
from .errors import ShareFormatError
from .gf import symbol_bytes

MAGIC = b"CESS"
VERSION = 1
_FIXED = struct.Struct("<4sBBHHHHQQH")


@dataclass(frozen=True)
class ShareHeader:
    scheme_id: SchemeId
    n: int
    r: int
    z: int
    node_index: int
    q: int
    length: int
    meta: bytes
    version: int = VERSION

    @property
    def params(self) -> SchemeParams:
        return SchemeParams(self.n, self.r, self.z, self.q)

    def identity(self) -> tuple:
        """Fields every share of one secret must agree on."""
        return (self.version, self.scheme_id, self.n, self.r, self.z, self.q, self.length, self.meta)

    def to_bytes(self) -> bytes:
        return _FIXED.pack(MAGIC, self.version, int(self.scheme_id), self.n, self.r, self.z,
                           self.node_index, self.q, self.length, len(self.meta)) + self.meta

    @classmethod
    def from_bytes(cls, data: bytes) -> tuple[ShareHeader, int]:
        """Parse a header; also returns the offset where the payload starts."""
        if len(data) < _FIXED.size:
            raise ShareFormatError("truncated header")
        magic, version, sid, n, r, z, idx, q, length, meta_len = _FIXED.unpack_from(data)
        if magic != MAGIC:
            raise ShareFormatError(f"bad magic {magic!r}")
        if version != VERSION:
            raise ShareFormatError(f"unsupported version {version}")
        try:
            scheme_id = SchemeId(sid)
        except ValueError:
            raise ShareFormatError(f"unknown scheme id {sid}") from None
        end = _FIXED.size + meta_len
        if len(data) < end:
            raise ShareFormatError("truncated scheme metadata")
        meta = bytes(data[_FIXED.size:end])
        return cls(scheme_id, n, r, z, idx, q, length, meta, version), end


@dataclass(frozen=True)
class ShareFile:
    header: ShareHeader
    payload: tuple[int, ...]

    def to_bytes(self) -> bytes:
        size = symbol_bytes(self.header.q)
        return self.header.to_bytes() + b"".join(v.to_bytes(size, "little") for v in self.payload)

    @classmethod
    def from_bytes(cls, data: bytes) -> ShareFile:
        header, off = ShareHeader.from_bytes(data)
        size = symbol_bytes(header.q)
        body = data[off:]
        if len(body) % size:
            raise ShareFormatError(f"payload of {len(body)} bytes is not a multiple of {size}")
        payload = tuple(int.from_bytes(body[i:i + size], "little") for i in range(0, len(body), size))
        if any(v >= header.q for v in payload):
            raise ShareFormatError(f"payload symbol outside GF({header.q})")
        return cls(header, payload)

    def blocks(self, width: int) -> list[tuple[int, ...]]:
        if width <= 0 or len(self.payload) % width:
            raise ShareFormatError(f"payload of {len(self.payload)} symbols does not split into width {width}")
        return [self.payload[i:i + width] for i in range(0, len(self.payload), width)]


def read_share(path: str | os.PathLike) -> ShareFile:
    return ShareFile.from_bytes(Path(path).read_bytes())


def write_share(path: str | os.PathLike, share: ShareFile) -> None:
    """Write through a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(share.to_bytes())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def scheme_from_header(header: ShareHeader) -> Scheme:
    from .random_code import CeRandom
    from .rs import CeRs
    from .shamir import CeShamir

    cls = {SchemeId.CE_SHAMIR: CeShamir, SchemeId.CE_RS: CeRs, SchemeId.CE_RANDOM: CeRandom}[header.scheme_id]
    return cls.from_meta(header.params, header.meta)
