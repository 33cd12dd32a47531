"""Baseline JFIF grayscale codec with coefficient-level access.

Only what the pipeline needs: 8-bit precision, one component, the typical
luminance Huffman tables from ITU-T T.81 Annex K, no restart intervals, no
progressive scans.  The encoder always emits SOI / APP0 / DQT / SOF0 / DHT /
SOS / EOI in that order; the decoder is a little more tolerant and skips
segments it does not care about.
"""

import struct
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .blockdct import QUANT_Q50, CoeffGrid
from .errors import (
    CapacityError,
    HuffmanError,
    ParseError,
    TruncationError,
)

__all__ = [
    "EncodedJpeg",
    "CornerDcs",
    "CompressionRatio",
    "encode_baseline",
    "decode_baseline",
    "drop_dc",
    "extract_corner_dcs",
    "compression_ratio",
]

# ---------------------------------------------------------------------------
# Tables

# Zigzag position -> raster index inside a flattened 8x8 block.
ZIGZAG = np.array([
     0,  1,  8, 16,  9,  2,  3, 10,
    17, 24, 32, 25, 18, 11,  4,  5,
    12, 19, 26, 33, 40, 48, 41, 34,
    27, 20, 13,  6,  7, 14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36,
    29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46,
    53, 60, 61, 54, 47, 55, 62, 63,
], dtype=np.int64)
ZIGZAG.setflags(write=False)

# Annex K.3.1: typical luminance DC table (BITS, HUFFVAL).
DC_BITS = (0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0)
DC_VALS = tuple(range(12))

# Annex K.3.2: typical luminance AC table.
AC_BITS = (0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 0x7D)
AC_VALS = (
    0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12,
    0x21, 0x31, 0x41, 0x06, 0x13, 0x51, 0x61, 0x07,
    0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xA1, 0x08,
    0x23, 0x42, 0xB1, 0xC1, 0x15, 0x52, 0xD1, 0xF0,
    0x24, 0x33, 0x62, 0x72, 0x82, 0x09, 0x0A, 0x16,
    0x17, 0x18, 0x19, 0x1A, 0x25, 0x26, 0x27, 0x28,
    0x29, 0x2A, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39,
    0x3A, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48, 0x49,
    0x4A, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59,
    0x5A, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69,
    0x6A, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79,
    0x7A, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89,
    0x8A, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98,
    0x99, 0x9A, 0xA2, 0xA3, 0xA4, 0xA5, 0xA6, 0xA7,
    0xA8, 0xA9, 0xAA, 0xB2, 0xB3, 0xB4, 0xB5, 0xB6,
    0xB7, 0xB8, 0xB9, 0xBA, 0xC2, 0xC3, 0xC4, 0xC5,
    0xC6, 0xC7, 0xC8, 0xC9, 0xCA, 0xD2, 0xD3, 0xD4,
    0xD5, 0xD6, 0xD7, 0xD8, 0xD9, 0xDA, 0xE1, 0xE2,
    0xE3, 0xE4, 0xE5, 0xE6, 0xE7, 0xE8, 0xE9, 0xEA,
    0xF1, 0xF2, 0xF3, 0xF4, 0xF5, 0xF6, 0xF7, 0xF8,
    0xF9, 0xFA,
)

_SOI, _EOI, _SOS, _DQT, _DHT, _SOF0, _DRI = 0xD8, 0xD9, 0xDA, 0xDB, 0xC4, 0xC0, 0xDD


def _build_codes(bits, vals):
    """Annex C canonical code assignment: symbol -> (code, length)."""
    if sum(bits) != len(vals):
        raise ParseError("Huffman BITS/HUFFVAL length mismatch")
    table = {}
    code = 0
    k = 0
    for length in range(1, 17):
        for _ in range(bits[length - 1]):
            table[vals[k]] = (code, length)
            code += 1
            k += 1
        code <<= 1
    return table


def _build_decode_lut(codes):
    """16-bit prefix lookup: two 65536-entry lists (symbol, code length)."""
    sym = np.zeros(65536, dtype=np.int32)
    ln = np.zeros(65536, dtype=np.int32)
    for symbol, (code, length) in codes.items():
        start = code << (16 - length)
        span = 1 << (16 - length)
        sym[start:start + span] = symbol
        ln[start:start + span] = length
    return sym.tolist(), ln.tolist()


_DC_CODES = _build_codes(DC_BITS, DC_VALS)
_AC_CODES = _build_codes(AC_BITS, AC_VALS)
_DC_CODE_LIST = [_DC_CODES[s] for s in range(12)]
_AC_CODE_LIST = [_AC_CODES.get(s) for s in range(256)]

# ---------------------------------------------------------------------------
# Bit IO


class _BitWriter:
    """MSB-first bit packer with 0xFF byte stuffing and 1-padding at flush."""

    __slots__ = ("buf", "acc", "nbits")

    def __init__(self):
        self.buf = bytearray()
        self.acc = 0
        self.nbits = 0

    def write(self, code, length):
        acc = (self.acc << length) | code
        nbits = self.nbits + length
        buf = self.buf
        while nbits >= 8:
            nbits -= 8
            b = (acc >> nbits) & 0xFF
            buf.append(b)
            if b == 0xFF:
                buf.append(0x00)
        self.acc = acc & ((1 << nbits) - 1)
        self.nbits = nbits

    def flush(self):
        if self.nbits:
            pad = 8 - self.nbits
            self.write((1 << pad) - 1, pad)
        return bytes(self.buf)


class _BitReader:
    """Reads entropy-coded bits, undoing byte stuffing, stopping at markers."""

    __slots__ = ("data", "pos", "acc", "nbits", "exhausted")

    def __init__(self, data, pos):
        self.data = data
        self.pos = pos
        self.acc = 0
        self.nbits = 0
        self.exhausted = False

    def _fill(self):
        data = self.data
        end = len(data)
        while self.nbits <= 16:
            pos = self.pos
            if pos >= end:
                self.exhausted = True
                return
            b = data[pos]
            if b == 0xFF:
                if pos + 1 < end and data[pos + 1] == 0x00:
                    self.pos = pos + 2
                else:
                    self.exhausted = True  # a real marker terminates the scan
                    return
            else:
                self.pos = pos + 1
            self.acc = (self.acc << 8) | b
            self.nbits += 8

    def peek16(self):
        if self.nbits < 16:
            self._fill()
        n = self.nbits
        if n >= 16:
            return (self.acc >> (n - 16)) & 0xFFFF
        # Virtual 1-padding past the end; consume() still checks real bits.
        pad = 16 - n
        return ((self.acc << pad) | ((1 << pad) - 1)) & 0xFFFF

    def consume(self, n):
        if n > self.nbits:
            raise TruncationError("entropy-coded scan ended early")
        self.nbits -= n
        self.acc &= (1 << self.nbits) - 1

    def read(self, n):
        if self.nbits < n:
            self._fill()
            if self.nbits < n:
                raise TruncationError("entropy-coded scan ended early")
        self.nbits -= n
        val = (self.acc >> self.nbits) & ((1 << n) - 1)
        self.acc &= (1 << self.nbits) - 1
        return val


# ---------------------------------------------------------------------------
# Encoder

CornerDcs = namedtuple("CornerDcs", "top_left top_right bottom_left bottom_right")


@dataclass(frozen=True)
class EncodedJpeg:
    """A complete JFIF byte stream plus the size split used for ratios."""

    data: bytes
    scan_len: int    # entropy-coded bytes between the SOS header and EOI
    total_len: int   # == len(data)


@dataclass(frozen=True)
class CompressionRatio:
    total: float   # dropped.total_len / original.total_len
    scan: float    # dropped.scan_len / original.scan_len


def _segment(marker, payload):
    return struct.pack(">BBH", 0xFF, marker, len(payload) + 2) + payload


def _headers(quant, height, width):
    if np.any(quant < 1) or np.any(quant > 255):
        raise CapacityError("quantization entries must be in 1..255")
    app0 = b"JFIF\x00" + bytes([1, 1, 0]) + struct.pack(">HH", 1, 1) + bytes([0, 0])
    dqt = bytes([0x00]) + bytes(int(v) for v in np.asarray(quant).ravel()[ZIGZAG])
    sof = struct.pack(">BHHB", 8, height, width, 1) + bytes([1, 0x11, 0])
    dht = (
        bytes([0x00]) + bytes(DC_BITS) + bytes(DC_VALS)
        + bytes([0x10]) + bytes(AC_BITS) + bytes(AC_VALS)
    )
    sos = struct.pack(">B", 1) + bytes([1, 0x00]) + bytes([0, 63, 0])
    return (
        b"\xff\xd8"
        + _segment(0xE0, app0)
        + _segment(_DQT, dqt)
        + _segment(_SOF0, sof)
        + _segment(_DHT, dht)
        + _segment(_SOS, sos)
    )


def _magnitude(v):
    # Category (bit count of |v|) and the category's offset bits.
    if v > 0:
        return v.bit_length(), v
    a = -v
    s = a.bit_length()
    return s, v + (1 << s) - 1


def encode_baseline(grid):
    """Serialize a CoeffGrid into a baseline JFIF stream.

    The SOF records grid.size when set (the pre-padding dimensions), else
    the padded ones.  Raises CapacityError if any DC difference needs more
    than 11 bits or any AC level more than 10.
    """
    blocks = np.asarray(grid.blocks, dtype=np.int64)
    n = blocks.shape[0] * blocks.shape[1]
    zz = blocks.reshape(n, 64)[:, ZIGZAG]

    height, width = grid.size if grid.size is not None else (
        blocks.shape[0] * 8, blocks.shape[1] * 8)
    out = bytearray(_headers(np.asarray(grid.quant), height, width))
    scan_start = len(out)

    # One pass of numpy bookkeeping, then a plain Python coding loop.
    dcs = zz[:, 0].tolist()
    nzr, nzc = np.nonzero(zz[:, 1:])
    counts = np.bincount(nzr, minlength=n).tolist()
    positions = (nzc + 1).tolist()
    values = zz[:, 1:][nzr, nzc].tolist()

    w = _BitWriter()
    write = w.write
    dc_codes = _DC_CODE_LIST
    ac_codes = _AC_CODE_LIST
    zrl = _AC_CODES[0xF0]
    eob = _AC_CODES[0x00]

    pred = 0
    ofs = 0
    for i in range(n):
        diff = dcs[i] - pred
        pred = dcs[i]
        s, bits = _magnitude(diff)
        if s > 11:
            raise CapacityError(f"DC difference {diff} exceeds 11 bits")
        code, length = dc_codes[s]
        write(code, length)
        if s:
            write(bits, s)

        last = 0
        for j in range(ofs, ofs + counts[i]):
            pos = positions[j]
            run = pos - last - 1
            last = pos
            while run > 15:
                write(zrl[0], zrl[1])
                run -= 16
            s, bits = _magnitude(values[j])
            if s > 10:
                raise CapacityError(f"AC level {values[j]} exceeds 10 bits")
            entry = ac_codes[(run << 4) | s]
            write(entry[0], entry[1])
            write(bits, s)
        ofs += counts[i]
        if last != 63:
            write(eob[0], eob[1])

    out += w.flush()
    scan_len = len(out) - scan_start
    out += b"\xff\xd9"
    return EncodedJpeg(bytes(out), scan_len, len(out))


# ---------------------------------------------------------------------------
# Decoder


def _extend(bits, s):
    # T.81 F.2.2.1: map the s offset bits back to a signed value.
    if bits < (1 << (s - 1)):
        return bits - (1 << s) + 1
    return bits


def _parse_dht(payload):
    tables = {}
    pos = 0
    while pos < len(payload):
        tc_th = payload[pos]
        bits = tuple(payload[pos + 1:pos + 17])
        count = sum(bits)
        vals = tuple(payload[pos + 17:pos + 17 + count])
        if len(vals) != count:
            raise ParseError("DHT segment shorter than its BITS counts")
        tables[tc_th] = _build_decode_lut(_build_codes(bits, vals))
        pos += 17 + count
    return tables


def _parse_dqt(payload):
    tables = {}
    pos = 0
    while pos < len(payload):
        pq = payload[pos] >> 4
        tq = payload[pos] & 0x0F
        pos += 1
        if pq == 0:
            raw = np.frombuffer(payload[pos:pos + 64], dtype=np.uint8)
            pos += 64
        elif pq == 1:
            raw = np.frombuffer(payload[pos:pos + 128], dtype=">u2")
            pos += 128
        else:
            raise ParseError(f"bad DQT precision {pq}")
        if raw.size != 64:
            raise ParseError("DQT table truncated")
        table = np.zeros(64, dtype=np.int32)
        table[ZIGZAG] = raw
        tables[tq] = table.reshape(8, 8)
    return tables


def decode_baseline(data):
    """Parse a baseline grayscale JFIF stream back into a CoeffGrid."""
    if len(data) < 4 or data[0] != 0xFF or data[1] != _SOI:
        raise ParseError("missing SOI marker")
    pos = 2
    qtables = {}
    htables = {}
    sof = None
    scan = None
    end = len(data)

    while True:
        if pos + 1 >= end:
            raise TruncationError("stream ended before SOS")
        if data[pos] != 0xFF:
            raise ParseError(f"expected a marker at offset {pos}")
        marker = data[pos + 1]
        pos += 2
        if marker == 0xFF:       # fill byte
            pos -= 1
            continue
        if marker == _EOI:
            raise ParseError("EOI before any scan")
        if 0xD0 <= marker <= 0xD7 or marker == 0x01:
            continue             # standalone markers carry no payload
        if pos + 2 > end:
            raise TruncationError("segment header truncated")
        seglen = struct.unpack_from(">H", data, pos)[0]
        if seglen < 2 or pos + seglen > end:
            raise TruncationError("segment payload truncated")
        payload = data[pos + 2:pos + seglen]
        pos += seglen

        if marker == _DQT:
            qtables.update(_parse_dqt(payload))
        elif marker == _DHT:
            htables.update(_parse_dht(payload))
        elif marker == _SOF0:
            if sof is not None:
                raise ParseError("multiple SOF segments")
            if len(payload) < 6 + 3:
                raise ParseError("SOF0 segment too short")
            precision, height, width, ncomp = struct.unpack_from(">BHHB", payload)
            if precision != 8:
                raise ParseError(f"unsupported sample precision {precision}")
            if ncomp != 1:
                raise ParseError(f"only single-component streams supported, got {ncomp}")
            comp_id, sampling, tq = payload[6], payload[7], payload[8]
            if sampling != 0x11:
                raise ParseError("subsampled single component makes no sense")
            sof = (height, width, comp_id, tq)
        elif marker in (0xC1, 0xC2, 0xC3, 0xC5, 0xC6, 0xC7, 0xC9, 0xCA,
                        0xCB, 0xCD, 0xCE, 0xCF):
            raise ParseError(f"unsupported SOF type 0xFF{marker:02X}")
        elif marker == _DRI:
            if struct.unpack_from(">H", payload)[0] != 0:
                raise ParseError("restart intervals not supported")
        elif marker == _SOS:
            if sof is None:
                raise ParseError("SOS before SOF")
            ns = payload[0]
            if ns != 1:
                raise ParseError(f"expected one scan component, got {ns}")
            td = payload[2] >> 4
            ta = payload[2] & 0x0F
            if (0x00 | td) not in htables or (0x10 | ta) not in htables:
                raise ParseError("scan references undefined Huffman tables")
            scan = (htables[td], htables[0x10 | ta])
            break
        # APPn / COM / anything else: skipped.

    height, width, _, tq = sof
    if tq not in qtables:
        raise ParseError("frame references an undefined quantization table")
    if height == 0 or width == 0:
        raise ParseError("zero image dimension")
    v_n = (height + 7) // 8
    h_n = (width + 7) // 8
    n = v_n * h_n

    (dc_sym, dc_len), (ac_sym, ac_len) = scan
    reader = _BitReader(data, pos)
    peek = reader.peek16
    consume = reader.consume
    read = reader.read

    flat = [0] * (n * 64)
    pred = 0
    for i in range(n):
        base = i * 64
        code = peek()
        length = dc_len[code]
        if length == 0:
            if reader.exhausted and reader.nbits < 16:
                raise TruncationError("entropy-coded scan ended early")
            raise HuffmanError("invalid DC code")
        consume(length)
        s = dc_sym[code]
        pred += _extend(read(s), s) if s else 0
        flat[base] = pred

        k = 1
        while k < 64:
            code = peek()
            length = ac_len[code]
            if length == 0:
                if reader.exhausted and reader.nbits < 16:
                    raise TruncationError("entropy-coded scan ended early")
                raise HuffmanError("invalid AC code")
            consume(length)
            sym = ac_sym[code]
            s = sym & 0x0F
            run = sym >> 4
            if s == 0:
                if run == 15:
                    k += 16
                    continue
                if run == 0:
                    break        # EOB
                raise ParseError(f"undefined AC symbol 0x{sym:02X}")
            k += run
            if k > 63:
                raise ParseError("AC run passes the end of the block")
            flat[base + k] = _extend(read(s), s)
            k += 1

    zz = np.array(flat, dtype=np.int32).reshape(n, 64)
    raster = np.empty_like(zz)
    raster[:, ZIGZAG] = zz
    blocks = raster.reshape(v_n, h_n, 8, 8)
    return CoeffGrid(blocks, qtables[tq], size=(height, width))


# ---------------------------------------------------------------------------
# DC dropping


def drop_dc(grid):
    """Zero every DC level except the four corner blocks.  AC levels, the
    quantization table and the recorded size are untouched; a fresh grid is
    returned."""
    out = grid.copy()
    dc = out.blocks[:, :, 0, 0].copy()
    out.blocks[:, :, 0, 0] = 0
    for i in (0, -1):
        for j in (0, -1):
            out.blocks[i, j, 0, 0] = dc[i, j]
    return out


def extract_corner_dcs(grid):
    """The four corner-block DC levels as plain ints."""
    dc = grid.blocks[:, :, 0, 0]
    return CornerDcs(int(dc[0, 0]), int(dc[0, -1]), int(dc[-1, 0]), int(dc[-1, -1]))


def compression_ratio(original, dropped):
    """Size ratios (dropped / original), on full files and on scans alone."""
    return CompressionRatio(
        total=dropped.total_len / original.total_len,
        scan=dropped.scan_len / original.scan_len,
    )
