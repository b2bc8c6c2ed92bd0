"""Netpbm bitmap/graymap reading and writing.

Bitmaps (P1 plain, P4 raw) map to :class:`BinaryImage` with the PBM
convention 1 = black = object.  Graymaps (P2 plain, P5 raw, maxval 255)
map to :class:`GrayImage`.
"""
from __future__ import annotations

import numpy as np

from .grid import BinaryImage, GrayImage

MAX_PIXELS = 1 << 31


class NetpbmError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def skip_space(self):
        data = self.data
        while self.pos < len(data):
            ch = data[self.pos]
            if ch == ord("#"):
                while self.pos < len(data) and data[self.pos] not in b"\r\n":
                    self.pos += 1
            elif chr(ch).isspace():
                self.pos += 1
            else:
                break

    def integer(self, what: str) -> int:
        self.skip_space()
        start = self.pos
        while self.pos < len(self.data) and chr(self.data[self.pos]).isdigit():
            self.pos += 1
        if start == self.pos:
            if self.pos >= len(self.data):
                raise NetpbmError(f"unexpected end of data while reading {what}", self.pos)
            raise NetpbmError(f"expected {what}", start)
        return int(self.data[start:self.pos])


def read_netpbm(data: bytes):
    """Parse P1/P4 into a :class:`BinaryImage`, P2/P5 into a :class:`GrayImage`."""
    if len(data) < 2 or data[:1] != b"P" or data[1:2] not in b"1245":
        raise NetpbmError(f"bad magic number {data[:2]!r}", 0)
    magic = data[1:2].decode()
    rd = _Reader(data)
    rd.pos = 2
    width = rd.integer("width")
    height = rd.integer("height")
    if width < 1 or height < 1:
        raise NetpbmError(f"empty image {width}x{height}", rd.pos)
    if width * height > MAX_PIXELS:
        raise NetpbmError(f"image {width}x{height} exceeds {MAX_PIXELS} pixels", rd.pos)
    maxval = 1
    if magic in "25":
        maxval = rd.integer("maxval")
        if not 1 <= maxval <= 255:
            raise NetpbmError(f"unsupported maxval {maxval}", rd.pos)

    if magic in "12":
        values = []
        total = width * height
        while len(values) < total:
            rd.skip_space()
            if rd.pos >= len(data):
                raise NetpbmError(f"truncated raster: {len(values)} of {total} samples", rd.pos)
            if magic == "1":
                ch = data[rd.pos:rd.pos + 1]
                if ch not in (b"0", b"1"):
                    raise NetpbmError(f"invalid bitmap sample {ch!r}", rd.pos)
                values.append(ch == b"1")
                rd.pos += 1
            else:
                v = rd.integer("sample")
                if v > maxval:
                    raise NetpbmError(f"sample {v} exceeds maxval {maxval}", rd.pos)
                values.append(v)
        arr = np.array(values).reshape(height, width)
    else:
        # exactly one whitespace byte separates header and raster
        if rd.pos >= len(data) or not chr(data[rd.pos]).isspace():
            raise NetpbmError("missing whitespace before raster", rd.pos)
        rd.pos += 1
        if magic == "4":
            stride = (width + 7) // 8
            need = stride * height
        else:
            need = width * height
        raw = data[rd.pos:rd.pos + need]
        if len(raw) < need:
            raise NetpbmError(f"truncated raster: {len(raw)} of {need} bytes", rd.pos + len(raw))
        buf = np.frombuffer(raw, dtype=np.uint8)
        if magic == "4":
            bits = np.unpackbits(buf.reshape(height, stride), axis=1)
            arr = bits[:, :width].astype(bool)
        else:
            arr = buf.reshape(height, width)
            if arr.max(initial=0) > maxval:
                raise NetpbmError(f"sample exceeds maxval {maxval}", rd.pos)

    if magic in "14":
        return BinaryImage(arr.astype(bool))
    if maxval != 255:
        arr = np.floor(arr.astype(np.float64) * 255.0 / maxval + 0.5)
    return GrayImage(arr.astype(np.uint8))


def write_netpbm(img, variant: str | None = None) -> bytes:
    """Serialise a bitmap as P1/P4 or a graymap as P2/P5.

    ``variant`` defaults to the raw form (P4/P5).
    """
    if isinstance(img, BinaryImage):
        variant = variant or "P4"
        if variant not in ("P1", "P4"):
            raise ValueError(f"bitmaps are written as P1 or P4, not {variant}")
        cells = img.cells
        header = f"{variant}\n{img.cols} {img.rows}\n".encode()
        if variant == "P4":
            return header + np.packbits(cells, axis=1).tobytes()
        body = "\n".join("".join("1" if c else "0" for c in row) for row in cells.tolist())
        return header + body.encode() + b"\n"
    if isinstance(img, GrayImage):
        variant = variant or "P5"
        if variant not in ("P2", "P5"):
            raise ValueError(f"graymaps are written as P2 or P5, not {variant}")
        header = f"{variant}\n{img.cols} {img.rows}\n255\n".encode()
        if variant == "P5":
            return header + img.values.astype(np.uint8).tobytes()
        body = "\n".join(" ".join(str(v) for v in row) for row in img.values.tolist())
        return header + body.encode() + b"\n"
    raise TypeError(f"cannot write {type(img).__name__} as Netpbm")
