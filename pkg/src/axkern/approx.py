"""Skip-plan construction and approximate inference.

A threshold config names the conv layers to approximate and a per-layer
threshold tau.  Products whose significance S satisfies S <= tau are skipped;
RETAIN-scored products (infinite significance) and biases never skip.
Skipping product i of channel c subtracts exactly a_i * w[c, i] from the
exact accumulator, so a skipped product with a zero weight changes nothing.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import AxkernError, DataFormatError
from .model import ConvLayerSpec, Dataset, Model, QuantizedTensor
from .qinfer import (
    OpCounters,
    _conv_counts,
    _forward_batch,
    _requantize_array,
    conv2d_accumulators,
)
from .significance import SignificanceMap

SKIP_PLAN_MAGIC = b"AXSP"
SKIP_PLAN_VERSION = 1


@dataclass(frozen=True)
class ApproxConfig:
    """Per-layer skip thresholds keyed by absolute layer index.

    Layers absent from the mapping run exactly.  tau values are validated to
    be finite and >= 0; tau = 0 still skips zero-significance products.
    """

    thresholds: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in self.thresholds.items():
            tau = float(v)
            if not np.isfinite(tau) or tau < 0.0:
                raise AxkernError(f"threshold for layer {k} must be finite and >= 0, got {v}")
            clean[int(k)] = tau
        object.__setattr__(self, "thresholds", clean)

    @property
    def is_exact(self) -> bool:
        return not self.thresholds

    def enabled_layers(self) -> list[int]:
        return sorted(self.thresholds)

    def to_json_dict(self) -> dict:
        return {"layers": [{"layer": k, "tau": self.thresholds[k]} for k in sorted(self.thresholds)]}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ApproxConfig":
        try:
            entries = doc["layers"]
            return cls({int(e["layer"]): float(e["tau"]) for e in entries})
        except (KeyError, TypeError, ValueError) as e:
            raise AxkernError(f"malformed threshold config: {e}") from e


def save_config(cfg: ApproxConfig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(cfg.to_json_dict(), indent=2) + "\n", encoding="utf-8")
    return path


def load_config(path: str | Path) -> ApproxConfig:
    path = Path(path)
    if not path.is_file():
        raise AxkernError(f"threshold config not found: {path}")
    try:
        return ApproxConfig.from_json_dict(json.loads(path.read_text(encoding="utf-8")))
    except json.JSONDecodeError as e:
        raise AxkernError(f"threshold config is not valid JSON: {e}") from e


@dataclass
class SkipPlan:
    """Resolved skip decision per (layer, channel, weight index).

    masks maps absolute layer index to a (out_channels, k) bool array where
    True marks a skipped product.  Only layers enabled by the originating
    config appear; other layers run exactly.
    """

    masks: dict[int, np.ndarray] = field(default_factory=dict)

    def channel_indices(self, layer_index: int) -> list[np.ndarray]:
        """Skipped weight indices per output channel, ascending."""
        mask = self.masks[layer_index]
        return [np.flatnonzero(mask[c]) for c in range(mask.shape[0])]

    def skipped_per_position(self, layer_index: int) -> int:
        mask = self.masks.get(layer_index)
        return 0 if mask is None else int(mask.sum())

    def skipped_macs(self, m: Model) -> int:
        """Total products removed from one inference."""
        total = 0
        for i, layer in enumerate(m.layers):
            if isinstance(layer, ConvLayerSpec) and i in self.masks:
                total += layer.out_positions * int(self.masks[i].sum())
        return total

    def retained_conv_macs(self, m: Model) -> int:
        total = 0
        for i, layer in enumerate(m.layers):
            if isinstance(layer, ConvLayerSpec):
                skipped = int(self.masks[i].sum()) if i in self.masks else 0
                total += layer.out_positions * (layer.out_channels * layer.weights_per_channel - skipped)
        return total

    def retained_static_ops(self, m: Model) -> tuple[int, int]:
        """(pairs, singles) of retained products over all conv channels.

        Counts each (channel, weight index) once, mirroring the unrolled code
        a generator would emit: retained products pair up in ascending index
        order, an odd remainder costs one single multiply-accumulate.
        """
        pairs = 0
        singles = 0
        for i, layer in enumerate(m.layers):
            if not isinstance(layer, ConvLayerSpec):
                continue
            k = layer.weights_per_channel
            if i in self.masks:
                retained = k - self.masks[i].sum(axis=1, dtype=np.int64)
            else:
                retained = np.full(layer.out_channels, k, dtype=np.int64)
            pairs += int((retained // 2).sum())
            singles += int((retained % 2).sum())
        return pairs, singles


def build_skip_plan(sig: SignificanceMap, cfg: ApproxConfig) -> SkipPlan:
    """Resolve thresholds against significance scores.

    A product is skipped iff its layer is enabled, S <= tau, and S is not the
    RETAIN sentinel.  Raising tau can only grow each channel's skip set.
    """
    plan = SkipPlan()
    for layer_index, tau in cfg.thresholds.items():
        if layer_index not in sig.per_layer:
            raise AxkernError(f"config enables layer {layer_index} but the significance map lacks it")
        s = sig.per_layer[layer_index]
        plan.masks[layer_index] = np.isfinite(s) & (s <= tau)
    return plan


def conv2d_skipped(
    layer: ConvLayerSpec,
    x: QuantizedTensor,
    skip_sets: list | np.ndarray,
    counters: OpCounters | None = None,
    layer_index: int = 0,
) -> QuantizedTensor:
    """Convolution with per-channel skip sets applied.

    skip_sets is either a (out_channels, k) bool mask or a per-channel list
    of skipped weight indices.  The accumulator equals the exact accumulator
    minus the sum of the skipped products.
    """
    mask = _as_mask(layer, skip_sets)
    acc = conv2d_accumulators(layer, x, mask)
    out = _requantize_array(
        acc, layer.requant.multiplier, layer.requant.shift,
        layer.out_quant.zero_point, layer.act_min, layer.act_max,
    )
    if counters is not None:
        macs, pairs = _conv_counts(layer, mask)
        counters.record(layer_index, macs, pairs)
    return QuantizedTensor(shape=layer.out_shape, data=out.reshape(-1), quant=layer.out_quant)


def _as_mask(layer: ConvLayerSpec, skip_sets) -> np.ndarray:
    k = layer.weights_per_channel
    if isinstance(skip_sets, np.ndarray) and skip_sets.dtype == bool:
        if skip_sets.shape != (layer.out_channels, k):
            raise AxkernError(
                f"skip mask shape {skip_sets.shape} does not match ({layer.out_channels}, {k})"
            )
        return skip_sets
    if len(skip_sets) != layer.out_channels:
        raise AxkernError(f"skip sets cover {len(skip_sets)} channels, layer has {layer.out_channels}")
    mask = np.zeros((layer.out_channels, k), dtype=bool)
    for c, idxs in enumerate(skip_sets):
        idxs = np.asarray(list(idxs), dtype=np.int64)
        if idxs.size and (idxs.min() < 0 or idxs.max() >= k):
            raise AxkernError(f"channel {c} skip index out of range [0, {k})")
        mask[c, idxs] = True
    return mask


def infer_approx(m: Model, plan: SkipPlan, x: QuantizedTensor) -> tuple[int, np.ndarray, OpCounters]:
    """Classify one sample under a skip plan."""
    counters = OpCounters()
    logits = _forward_batch(m, x.data[None, :], plan.masks, counters)[0]
    return int(np.argmax(logits)), logits, counters


@dataclass(frozen=True)
class EvalResult:
    """Accuracy and cost of one skip plan over a dataset."""

    accuracy: float
    conv_mac_total: int
    total_mac_total: int
    mac_reduction: float


def evaluate_config(m: Model, plan: SkipPlan, d: Dataset) -> EvalResult:
    """Accuracy under the plan plus retained MAC totals per inference.

    mac_reduction compares retained conv products against the exact conv
    total; pool and dense costs are excluded from the ratio.
    """
    if len(d) == 0:
        raise AxkernError("cannot evaluate on an empty dataset")
    if d.labels.max() >= m.num_classes:
        raise AxkernError(f"label {int(d.labels.max())} out of range for {m.num_classes} classes")
    counters = OpCounters()
    logits = _forward_batch(m, d.samples, plan.masks, counters)
    preds = np.argmax(logits, axis=1)
    accuracy = float(np.mean(preds == d.labels))
    conv_exact = m.conv_macs_exact()
    conv_approx = plan.retained_conv_macs(m)
    reduction = 0.0 if conv_exact == 0 else 1.0 - conv_approx / conv_exact
    return EvalResult(
        accuracy=accuracy,
        conv_mac_total=conv_approx,
        total_mac_total=counters.total_macs,
        mac_reduction=reduction,
    )


# ---------------------------------------------------------------------------
# Skip plan serialization: audit text plus a packed binary form
# ---------------------------------------------------------------------------


def format_skip_plan(plan: SkipPlan) -> str:
    """Human-auditable listing, one line per channel: 'layer/channel: i,j,...'."""
    lines = []
    for layer_index in sorted(plan.masks):
        mask = plan.masks[layer_index]
        for c in range(mask.shape[0]):
            idxs = np.flatnonzero(mask[c])
            lines.append(f"{layer_index}/{c}: " + ",".join(str(int(i)) for i in idxs))
    return "\n".join(lines) + "\n"


def save_skip_plan(plan: SkipPlan, path: str | Path) -> Path:
    path = Path(path)
    parts = [SKIP_PLAN_MAGIC, struct.pack("<H", SKIP_PLAN_VERSION), struct.pack("<I", len(plan.masks))]
    for layer_index in sorted(plan.masks):
        mask = plan.masks[layer_index]
        parts.append(struct.pack("<III", layer_index, mask.shape[0], mask.shape[1]))
        for c in range(mask.shape[0]):
            idxs = np.flatnonzero(mask[c]).astype(np.uint32)
            parts.append(struct.pack("<I", idxs.size))
            parts.append(idxs.astype("<u4").tobytes())
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(b"".join(parts))
    return path


def load_skip_plan(path: str | Path) -> SkipPlan:
    path = Path(path)
    if not path.is_file():
        raise DataFormatError(f"skip plan not found: {path}")
    raw = path.read_bytes()
    if len(raw) < 10 or raw[:4] != SKIP_PLAN_MAGIC:
        raise DataFormatError(f"bad skip plan magic in {path.name}")
    (version,) = struct.unpack_from("<H", raw, 4)
    if version != SKIP_PLAN_VERSION:
        raise DataFormatError(f"unsupported skip plan version {version}")
    (entries,) = struct.unpack_from("<I", raw, 6)
    off = 10
    plan = SkipPlan()
    for _ in range(entries):
        if off + 12 > len(raw):
            raise DataFormatError(f"truncated skip plan header in {path.name}")
        layer_index, channels, k = struct.unpack_from("<III", raw, off)
        off += 12
        mask = np.zeros((channels, k), dtype=bool)
        for c in range(channels):
            if off + 4 > len(raw):
                raise DataFormatError(f"truncated skip plan channel in {path.name}")
            (count,) = struct.unpack_from("<I", raw, off)
            off += 4
            if off + 4 * count > len(raw):
                raise DataFormatError(f"truncated skip plan indices in {path.name}")
            idxs = np.frombuffer(raw, dtype="<u4", count=count, offset=off)
            off += 4 * count
            if count and idxs.max() >= k:
                raise DataFormatError(f"skip plan index out of range in {path.name}")
            mask[c, idxs.astype(np.int64)] = True
        plan.masks[int(layer_index)] = mask
    if off != len(raw):
        raise DataFormatError(f"trailing bytes after skip plan payload in {path.name}")
    return plan
