"""Signal, filter-tap and magnitude-matrix files.

The binary `.sgnl` layout is an 8-byte header (ASCII magic "SGNL", then the
sample rate as a little-endian u32) followed by little-endian float64
samples. CSV signals hold one sample per line and carry no sample rate.
"""

import csv
import logging
import os
from typing import List, Optional

import numpy as np

from ..exceptions import SignalFormatError, ValidationError
from ..models import DEFAULT_SAMPLE_RATE, CumulantFilter, Signal, StftFrameSet

logger = logging.getLogger(__name__)

MAGIC = b"SGNL"
HEADER_SIZE = 8
SAMPLE_DTYPE = np.dtype("<f8")
HEADER_DTYPE = np.dtype("<u4")


def is_csv(path: str) -> bool:
    return os.path.splitext(path)[1].lower() == ".csv"


def encode_sgnl(s: Signal) -> bytes:
    """Serialize to the binary layout; the sample rate must be a whole number of Hz."""
    rate = s.sample_rate
    if rate != int(rate) or not 0 < rate < 2**32:
        raise ValidationError(f"sample rate {rate:g} Hz does not fit the u32 header")
    header = MAGIC + np.array([int(rate)], dtype=HEADER_DTYPE).tobytes()
    return header + s.samples.astype(SAMPLE_DTYPE).tobytes()


def decode_sgnl(data: bytes, path: Optional[str] = None) -> Signal:
    """Parse the binary layout; errors carry the byte offset of the first bad datum."""
    if len(data) < HEADER_SIZE:
        raise SignalFormatError("truncated header", path=path, offset=len(data))
    if data[:4] != MAGIC:
        raise SignalFormatError(f"bad magic {data[:4]!r}", path=path, offset=0)
    rate = int(np.frombuffer(data, dtype=HEADER_DTYPE, count=1, offset=4)[0])
    if rate == 0:
        raise SignalFormatError("sample rate is zero", path=path, offset=4)

    payload = len(data) - HEADER_SIZE
    if payload == 0:
        raise SignalFormatError("no samples", path=path, offset=HEADER_SIZE)
    whole = payload // SAMPLE_DTYPE.itemsize
    if payload % SAMPLE_DTYPE.itemsize:
        raise SignalFormatError(
            "trailing partial sample",
            path=path,
            offset=HEADER_SIZE + whole * SAMPLE_DTYPE.itemsize,
        )
    samples = np.frombuffer(data, dtype=SAMPLE_DTYPE, offset=HEADER_SIZE).astype(np.float64)
    bad = np.flatnonzero(~np.isfinite(samples))
    if bad.size:
        raise SignalFormatError(
            "non-finite sample",
            path=path,
            offset=HEADER_SIZE + int(bad[0]) * SAMPLE_DTYPE.itemsize,
        )
    return Signal(samples, float(rate))


def _read_csv(path: str, sample_rate: float) -> Signal:
    values: List[float] = []
    offset = 0
    with open(path, "rb") as f:
        for raw in f:
            text = raw.decode("utf-8", errors="replace").strip()
            if text:
                try:
                    value = float(text)
                except ValueError:
                    raise SignalFormatError(f"not a number: {text!r}", path=path, offset=offset)
                if not np.isfinite(value):
                    raise SignalFormatError("non-finite sample", path=path, offset=offset)
                values.append(value)
            offset += len(raw)
    if not values:
        raise SignalFormatError("no samples", path=path, offset=offset)
    return Signal(values, sample_rate)


def read_signal(path: str, sample_rate: float = DEFAULT_SAMPLE_RATE) -> Signal:
    """Load a `.sgnl` or `.csv` signal; CSV files take the given sample rate."""
    if is_csv(path):
        s = _read_csv(path, sample_rate)
    else:
        with open(path, "rb") as f:
            s = decode_sgnl(f.read(), path=path)
    logger.debug(f"read {path}: {s!r}")
    return s


def write_signal(path: str, s: Signal) -> None:
    """Write `s` as CSV when the path ends in .csv, otherwise as `.sgnl`."""
    if is_csv(path):
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.writelines(f"{value!r}\n" for value in s.samples.tolist())
    else:
        with open(path, "wb") as f:
            f.write(encode_sgnl(s))
    logger.debug(f"wrote {path}: {s!r}")


def write_taps(path: str, filt: CumulantFilter) -> None:
    """Export filter taps as `index,tap` rows plus the gain in the header comment."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(f"# gain={filt.gain!r} group_delay={filt.group_delay}\n")
        writer = csv.writer(f)
        writer.writerow(["index", "tap"])
        for index, tap in enumerate(filt.taps.tolist()):
            writer.writerow([index, repr(tap)])


def read_taps(path: str) -> CumulantFilter:
    gain = 1.0
    taps: List[float] = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        first = f.readline()
        if first.startswith("#"):
            for field in first[1:].split():
                key, _, value = field.partition("=")
                if key == "gain":
                    gain = float(value)
        else:
            f.seek(0)
        for row in csv.DictReader(f):
            taps.append(float(row["tap"]))
    return CumulantFilter(np.array(taps), gain)


def write_magnitudes(path: str, frames: StftFrameSet) -> None:
    """One row per frame, one column per one-sided frequency bin."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["frame"] + [f"bin_{k}" for k in range(frames.n_bins)])
        for n, row in enumerate(frames.magnitudes.tolist()):
            writer.writerow([n] + [repr(value) for value in row])
