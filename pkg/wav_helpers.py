# Reading and writing of mono 16-bit PCM WAV files.

import struct
import wave
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from errors import WavFormatError

PathLike = Union[str, Path]

PCM_FORMAT = 1
FULL_SCALE = 32768.0


@dataclass(frozen=True, eq=False)
class Signal:
    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float).ravel()
        if samples.size == 0:
            raise ValueError("signal is empty")
        if self.sample_rate < 1:
            raise ValueError(f"sample rate must be positive, got {self.sample_rate}")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate


def _unpack(fmt: str, data: bytes, offset: int, what: str) -> tuple:
    size = struct.calcsize(fmt)
    if offset + size > len(data):
        raise WavFormatError(f"truncated {what}: need {size} bytes, {len(data) - offset} left", offset)
    return struct.unpack_from(fmt, data, offset)


def parse_wav(data: bytes) -> Signal:
    riff, _, wave_id = _unpack("<4sI4s", data, 0, "RIFF header")
    if riff != b"RIFF" or wave_id != b"WAVE":
        raise WavFormatError("not a RIFF/WAVE file", 0)

    offset = 12
    fmt = None
    while offset < len(data):
        chunk_id, chunk_size = _unpack("<4sI", data, offset, "chunk header")
        body = offset + 8
        if chunk_id == b"fmt ":
            tag, channels, rate, _, _, bits = _unpack("<HHIIHH", data, body, "fmt chunk")
            if tag != PCM_FORMAT:
                raise WavFormatError(f"unsupported encoding tag {tag}, only PCM is handled", body)
            if channels != 1:
                raise WavFormatError(f"{channels} channels, only mono is handled", body + 2)
            if bits != 16:
                raise WavFormatError(f"{bits}-bit samples, only 16-bit is handled", body + 14)
            fmt = rate
        elif chunk_id == b"data":
            if fmt is None:
                raise WavFormatError("data chunk before fmt chunk", offset)
            if body + chunk_size > len(data):
                raise WavFormatError(f"truncated data chunk: declared {chunk_size} bytes, {len(data) - body} present", body)
            pcm = np.frombuffer(data, dtype="<i2", count=chunk_size // 2, offset=body)
            return Signal(pcm.astype(float) / FULL_SCALE, fmt)
        # chunks are padded to even length
        offset = body + chunk_size + (chunk_size & 1)
    raise WavFormatError("no data chunk", offset)


def read_wav(path: PathLike) -> Signal:
    return parse_wav(Path(path).read_bytes())


def to_pcm16(samples) -> np.ndarray:
    scaled = np.round(np.asarray(samples, dtype=float) * FULL_SCALE)
    return np.clip(scaled, -FULL_SCALE, FULL_SCALE - 1).astype("<i2")


def write_wav(path: PathLike, signal: Signal) -> Path:
    path = Path(path)
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(signal.sample_rate)
        w.writeframes(to_pcm16(signal.samples).tobytes())
    return path
