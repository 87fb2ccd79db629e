"""CSV, PGM and JSON writers.

CSV files are comma separated with a header row and ``\\n`` line endings.
Floats are written with 17 significant digits so identical inputs give
byte-identical files.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

FLOAT_FORMAT = "{:.17g}"


def fmt(value: float) -> str:
    return FLOAT_FORMAT.format(float(value))


def write_timeseries_csv(path, return_probability, mean_position, std_dev) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("step,return_probability,mean_position,std_dev\n")
        for n, (p, m, s) in enumerate(zip(return_probability, mean_position, std_dev)):
            fh.write(f"{n},{fmt(p)},{fmt(m)},{fmt(s)}\n")
    return path


def crop_sites(distributions: np.ndarray, half_width: int) -> np.ndarray:
    """Columns for sites -half_width..half_width of a (steps, 2R+1) array."""
    radius = (distributions.shape[1] - 1) // 2
    return distributions[:, radius - half_width: radius + half_width + 1]


def write_heatmap_csv(path, distributions: np.ndarray, half_width: int) -> Path:
    """Rows are steps 0..n, columns sites -half_width..half_width, cells P(x, n)."""
    path = Path(path)
    block = crop_sites(distributions, half_width)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("step," + ",".join(str(x) for x in range(-half_width, half_width + 1)) + "\n")
        for n, row in enumerate(block):
            fh.write(f"{n}," + ",".join(fmt(p) for p in row) + "\n")
    return path


def write_heatmap_pgm(path, distributions: np.ndarray, half_width: int) -> Path:
    """Binary greyscale image, one pixel row per step, each row scaled to its maximum."""
    path = Path(path)
    block = crop_sites(distributions, half_width)
    peak = block.max(axis=1, keepdims=True)
    scaled = np.divide(block, peak, out=np.zeros_like(block), where=peak > 0)
    pixels = np.round(scaled * 255).astype(np.uint8)
    height, width = pixels.shape
    with path.open("wb") as fh:
        fh.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        fh.write(pixels.tobytes())
    return path


def write_distribution_csv(path, distributions: np.ndarray, half_width: int) -> Path:
    """Long format: one ``step,x,probability`` row per step and site."""
    path = Path(path)
    block = crop_sites(distributions, half_width)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("step,x,probability\n")
        for n, row in enumerate(block):
            for x, p in zip(range(-half_width, half_width + 1), row):
                fh.write(f"{n},{x},{fmt(p)}\n")
    return path


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    header, _, rest = data.partition(b"\n255\n")
    magic, dims = header.split(b"\n")
    if magic != b"P5":
        raise ValueError("not a binary PGM file")
    width, height = (int(v) for v in dims.split())
    return np.frombuffer(rest, dtype=np.uint8).reshape(height, width)


def write_json(path, payload: dict) -> Path:
    path = Path(path)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
