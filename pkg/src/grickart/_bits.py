"""Bitset helpers: submodules and ideals are stored as Python ints."""
import numpy as np


def mask_of(indices, size=None):
    idx = np.asarray(indices, dtype=np.int64).ravel()
    if idx.size == 0:
        return 0
    if size is None:
        size = int(idx.max()) + 1
    flags = np.zeros(size, dtype=bool)
    flags[idx] = True
    return mask_of_bool(flags)


def mask_of_bool(flags):
    flags = np.asarray(flags, dtype=bool)
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def masks_of_rows(flags):
    """One mask per row of a 2-D boolean array."""
    flags = np.asarray(flags, dtype=bool)
    packed = np.packbits(flags, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def indices_of(mask):
    if mask == 0:
        return np.zeros(0, dtype=np.int64)
    nbytes = (mask.bit_length() + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).astype(np.int64)


def popcount(mask):
    return mask.bit_count()
