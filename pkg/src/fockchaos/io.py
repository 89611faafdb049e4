"""File formats for coefficient maps, noise models, dense vectors and paths.

Coefficient maps
    JSON ``{"n": int, "entries": [{"sigma": [ints], "re": float, "im": float}]}``
    CSV  ``sigma_hex,re,im``
Noise models
    JSON ``{"probs": [floats]}``
Dense vectors (atom values or full coefficient vectors)
    CSV ``index,re,im`` or raw little-endian float64 (re, im) pairs (``.bin``)
Paths
    CSV ``path_id,step,value``

Floats are written with ``repr`` so every file round-trips exactly.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import TextIO

import numpy as np

from .chaos import CoefficientMap
from .indexset import IndexSet
from .martingale import NoiseModel

RAW_SUFFIXES = {".bin", ".f64", ".raw"}


def coefficients_to_json(F: CoefficientMap) -> dict:
    return {
        "n": F.n,
        "entries": [{"sigma": s.to_list(), "re": v.real, "im": v.imag} for s, v in F.items()],
    }


def coefficients_from_json(doc: dict) -> CoefficientMap:
    try:
        entries = doc["entries"]
        masks = [IndexSet.from_elements(e["sigma"]) for e in entries]
        values = [complex(e.get("re", 0.0), e.get("im", 0.0)) for e in entries]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed coefficient map document: {exc}") from None
    return CoefficientMap.from_arrays(masks, values, doc.get("n"))


def coefficients_to_csv(F: CoefficientMap) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sigma_hex", "re", "im"])
    for s, v in F.items():
        w.writerow([s.to_hex(), repr(v.real), repr(v.imag)])
    return buf.getvalue()


def coefficients_from_csv(text: str, n: int | None = None) -> CoefficientMap:
    rows = list(csv.DictReader(io.StringIO(text)))
    try:
        masks = [IndexSet.from_hex(r["sigma_hex"]) for r in rows]
        values = [complex(float(r["re"]), float(r.get("im") or 0.0)) for r in rows]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed coefficient CSV: {exc}") from None
    return CoefficientMap.from_arrays(masks, values, n)


def read_coefficients(path) -> CoefficientMap:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return coefficients_from_csv(text)
    return coefficients_from_json(json.loads(text))


def write_coefficients(F: CoefficientMap, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        path.write_text(coefficients_to_csv(F))
    else:
        path.write_text(json.dumps(coefficients_to_json(F)) + "\n")


def read_noise_model(path) -> NoiseModel:
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, dict) or "probs" not in doc:
        raise ValueError('noise model file must be a JSON object with a "probs" list')
    return NoiseModel(tuple(doc["probs"]))


def write_noise_model(model: NoiseModel, path) -> None:
    Path(path).write_text(json.dumps({"probs": list(model.probs)}) + "\n")


def dense_to_csv(vec) -> str:
    vec = np.asarray(vec, dtype=np.complex128).ravel()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "re", "im"])
    for i, v in enumerate(vec.tolist()):
        w.writerow([i, repr(v.real), repr(v.imag)])
    return buf.getvalue()


def dense_from_csv(text: str) -> np.ndarray:
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows:
        raise ValueError("empty dense vector CSV")
    index = np.array([int(r["index"]) for r in rows])
    out = np.zeros(index.max() + 1, dtype=np.complex128)
    out[index] = [complex(float(r["re"]), float(r.get("im") or 0.0)) for r in rows]
    return out


def read_dense(path) -> np.ndarray:
    path = Path(path)
    if path.suffix.lower() in RAW_SUFFIXES:
        raw = np.fromfile(path, dtype="<f8")
        if raw.size % 2:
            raise ValueError("raw dense file must hold (re, im) float64 pairs")
        return raw[0::2] + 1j * raw[1::2]
    return dense_from_csv(path.read_text())


def write_dense(vec, path) -> None:
    path = Path(path)
    vec = np.asarray(vec, dtype=np.complex128).ravel()
    if path.suffix.lower() in RAW_SUFFIXES:
        pairs = np.empty(2 * vec.size, dtype="<f8")
        pairs[0::2], pairs[1::2] = vec.real, vec.imag
        pairs.tofile(path)
    else:
        path.write_text(dense_to_csv(vec))


def write_paths(paths: np.ndarray, out: TextIO, start: int = 0) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["path_id", "step", "value"])
    for i, row in enumerate(np.asarray(paths).tolist()):
        for step, value in enumerate(row):
            w.writerow([start + i, step, repr(value)])
