"""Per-product significance scores derived from calibration activation statistics.

For each convolution layer the calibration pass records E[a_i], the mean
offset-adjusted input feeding weight index i, pooled over every sample and
every output position and shared across output channels.  The significance
of product i in output channel c is

    S[c, i] = | E[a_i] * w[c, i] / sum_j(E[a_j] * w[c, j]) |

with the bias excluded from the denominator.  A channel whose denominator is
exactly zero has no usable ranking; every product in it is pinned to the
RETAIN sentinel (+inf) and can never be skipped.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import AxkernError, DataFormatError
from .model import ConvLayerSpec, Dataset, Model
from .qinfer import _forward_batch, _im2col_batch

RETAIN = float("inf")

SIGNIFICANCE_MAGIC = b"AXSG"
SIGNIFICANCE_VERSION = 1


@dataclass
class LayerStats:
    """Mean offset-adjusted input per weight index of one conv layer."""

    expected: np.ndarray  # (k,) float64
    sample_count: int

    def __post_init__(self):
        self.expected = np.ascontiguousarray(self.expected, dtype=np.float64).reshape(-1)
        if self.sample_count < 1:
            raise AxkernError("layer statistics need at least one sample")


@dataclass
class ExpectedInputs:
    """Calibration statistics keyed by absolute layer index."""

    per_layer: dict[int, LayerStats] = field(default_factory=dict)
    sample_count: int = 0


@dataclass
class SignificanceMap:
    """Significance scores keyed by absolute layer index.

    Each entry is a (out_channels, k) float64 array; RETAIN (+inf) marks
    products that must never be skipped.
    """

    per_layer: dict[int, np.ndarray] = field(default_factory=dict)


def capture_activation_stats(
    m: Model, calib: Dataset, max_samples: int | None = None, workers: int = 1
) -> ExpectedInputs:
    """Run exact inference over calibration samples and pool conv input means.

    Sharding across workers changes nothing but wall time: shards are merged
    by sample-weighted mean, which is order-insensitive up to float rounding.
    """
    n = len(calib) if not max_samples else min(max_samples, len(calib))
    if n == 0:
        raise AxkernError("calibration dataset is empty")
    workers = max(1, int(workers))
    if workers == 1 or n < 2 * workers:
        return _capture_range(m, calib.samples[:n])
    bounds = np.linspace(0, n, workers + 1, dtype=int)
    parts = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if hi > lo:
            parts.append(_capture_range(m, calib.samples[lo:hi]))
    return merge_stats(parts)


def _capture_range(m: Model, samples: np.ndarray) -> ExpectedInputs:
    n = samples.shape[0]
    stats = ExpectedInputs(sample_count=n)
    cur = samples.reshape((n,) + m.input_shape.dims)
    for i, layer in enumerate(m.layers):
        if isinstance(layer, ConvLayerSpec):
            cols = _im2col_batch(cur, layer)  # (n, positions, k), offset already applied
            mean = cols.reshape(-1, cols.shape[2]).mean(axis=0, dtype=np.float64)
            stats.per_layer[i] = LayerStats(expected=mean, sample_count=n)
        # advance the activations one layer regardless of type
        cur = _forward_batch_single_layer(m, i, cur)
    return stats


def _forward_batch_single_layer(m: Model, index: int, cur: np.ndarray) -> np.ndarray:
    sub = Model(name=m.name, num_classes=m.num_classes, layers=[m.layers[index]])
    n = cur.shape[0]
    out = _forward_batch(sub, cur.reshape(n, -1))
    return out.reshape((n,) + m.layers[index].out_shape.dims)


def merge_stats(parts: list[ExpectedInputs]) -> ExpectedInputs:
    """Combine shard statistics by sample-weighted mean."""
    if not parts:
        raise AxkernError("no statistics shards to merge")
    merged = ExpectedInputs(sample_count=sum(p.sample_count for p in parts))
    keys = set()
    for p in parts:
        keys.update(p.per_layer)
    for k in sorted(keys):
        total = 0
        acc = None
        for p in parts:
            if k not in p.per_layer:
                raise AxkernError(f"statistics shards disagree on layer {k}")
            ls = p.per_layer[k]
            contrib = ls.expected * ls.sample_count
            acc = contrib if acc is None else acc + contrib
            total += ls.sample_count
        merged.per_layer[k] = LayerStats(expected=acc / total, sample_count=total)
    return merged


def compute_significance(layer: ConvLayerSpec, stats: LayerStats) -> np.ndarray:
    """Score every (channel, weight index) product of one conv layer.

    Returns (out_channels, k) float64; channels whose expected contribution
    sums to exactly zero are filled with RETAIN.
    """
    e = stats.expected
    if e.size != layer.weights_per_channel:
        raise AxkernError(
            f"statistics cover {e.size} weight indices, layer has {layer.weights_per_channel}"
        )
    w = layer.weight_matrix().astype(np.float64)
    contrib = w * e[None, :]
    denom = contrib.sum(axis=1)
    sig = np.full_like(contrib, RETAIN)
    live = denom != 0.0
    sig[live] = np.abs(contrib[live] / denom[live, None])
    return sig


def compute_model_significance(m: Model, stats: ExpectedInputs) -> SignificanceMap:
    """compute_significance applied to every conv layer with captured statistics."""
    sig = SignificanceMap()
    for i in m.conv_layer_indices():
        if i not in stats.per_layer:
            raise AxkernError(f"no calibration statistics for conv layer {i}")
        sig.per_layer[i] = compute_significance(m.layers[i], stats.per_layer[i])
    return sig


# ---------------------------------------------------------------------------
# Significance file format (magic "AXSG")
# ---------------------------------------------------------------------------


def save_significance(sig: SignificanceMap, path: str | Path) -> Path:
    """Write scores as little-endian float64 blocks, one per conv layer."""
    path = Path(path)
    parts = [SIGNIFICANCE_MAGIC, struct.pack("<H", SIGNIFICANCE_VERSION)]
    parts.append(struct.pack("<I", len(sig.per_layer)))
    for layer_index in sorted(sig.per_layer):
        arr = np.ascontiguousarray(sig.per_layer[layer_index], dtype=np.float64)
        if arr.ndim != 2:
            raise AxkernError(f"significance for layer {layer_index} must be 2-D")
        parts.append(struct.pack("<III", layer_index, arr.shape[0], arr.shape[1]))
        parts.append(arr.astype("<f8").tobytes())
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(b"".join(parts))
    return path


def load_significance(path: str | Path) -> SignificanceMap:
    path = Path(path)
    if not path.is_file():
        raise DataFormatError(f"significance file not found: {path}")
    raw = path.read_bytes()
    if len(raw) < 10 or raw[:4] != SIGNIFICANCE_MAGIC:
        raise DataFormatError(f"bad significance magic in {path.name}")
    (version,) = struct.unpack_from("<H", raw, 4)
    if version != SIGNIFICANCE_VERSION:
        raise DataFormatError(f"unsupported significance version {version}")
    (entries,) = struct.unpack_from("<I", raw, 6)
    off = 10
    sig = SignificanceMap()
    for _ in range(entries):
        if off + 12 > len(raw):
            raise DataFormatError(f"truncated significance header in {path.name}")
        layer_index, channels, k = struct.unpack_from("<III", raw, off)
        off += 12
        nbytes = channels * k * 8
        if off + nbytes > len(raw):
            raise DataFormatError(f"truncated significance payload in {path.name}")
        arr = np.frombuffer(raw, dtype="<f8", count=channels * k, offset=off).reshape(channels, k)
        sig.per_layer[int(layer_index)] = arr.astype(np.float64)
        off += nbytes
    if off != len(raw):
        raise DataFormatError(f"trailing bytes after significance payload in {path.name}")
    return sig
