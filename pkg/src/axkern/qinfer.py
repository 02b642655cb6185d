"""Bit-exact int8 inference engine with 32-bit accumulators.

Every multiply works on offset-adjusted activations: adjusted = a - zero_point,
so padded positions contribute exactly 0.  Accumulators are rescaled to int8
with a fixed-point multiplier in [2^30, 2^31) and a right shift of 31 + shift,
rounding half away from zero, then clamped to the layer activation bounds.

The receptive field of one output channel is flattened in (kernel_row,
kernel_col, in_channel) order; weight index i throughout the toolkit always
refers to that flattening.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AccumulatorBoundError, AxkernError, ShapeError
from .model import (
    ConvLayerSpec,
    Dataset,
    DenseLayerSpec,
    Model,
    PoolLayerSpec,
    QuantizedTensor,
    TensorShape,
)

INT32_MIN, INT32_MAX = -(2**31), 2**31 - 1


# ---------------------------------------------------------------------------
# Fixed-point primitives
# ---------------------------------------------------------------------------


def requantize(acc: int, multiplier: int, shift: int, out_zp: int, act_min: int, act_max: int) -> int:
    """Rescale one int32 accumulator to int8.

    Computes clamp(out_zp + rnd(acc * multiplier / 2^(31+shift))) where rnd
    rounds half away from zero.  The 64-bit product never overflows for
    int32 acc and multiplier < 2^31.
    """
    if not (2**30 <= multiplier < 2**31):
        raise AxkernError(f"requant multiplier out of range: {multiplier}")
    if not (0 <= shift <= 31):
        raise AxkernError(f"requant shift out of range: {shift}")
    if not (INT32_MIN <= acc <= INT32_MAX):
        raise AccumulatorBoundError(f"accumulator {acc} outside int32")
    prod = int(acc) * int(multiplier)
    half = 1 << (30 + shift)
    if prod >= 0:
        q = (prod + half) >> (31 + shift)
    else:
        q = -((-prod + half) >> (31 + shift))
    q += out_zp
    if q < act_min:
        q = act_min
    if q > act_max:
        q = act_max
    return int(q)


def _requantize_array(
    acc: np.ndarray, multiplier: int, shift: int, out_zp: int, act_min: int, act_max: int
) -> np.ndarray:
    # Vectorized mirror of requantize(); acc must already fit in int32.
    prod = acc.astype(np.int64) * np.int64(multiplier)
    half = np.int64(1) << np.int64(30 + shift)
    nshift = np.int64(31 + shift)
    q = np.where(prod >= 0, (prod + half) >> nshift, -((-prod + half) >> nshift))
    q = q + np.int64(out_zp)
    return np.clip(q, act_min, act_max).astype(np.int8)


def quantize_multiplier(ratio: float) -> tuple[int, int]:
    """Split a real ratio in (0, 1) into (multiplier, shift).

    multiplier lies in [2^30, 2^31) and multiplier * 2^-(31+shift)
    approximates ratio with relative error below 2^-30.
    """
    if not (0.0 < ratio < 1.0):
        raise AxkernError(f"ratio must lie in (0, 1), got {ratio}")
    frac, exp = math.frexp(ratio)  # ratio = frac * 2^exp, frac in [0.5, 1)
    mult = int(round(frac * (1 << 31)))
    shift = -int(exp)
    if mult == 1 << 31:
        # frac rounded all the way up; the largest representable value is closer
        # than halving would be.
        mult = (1 << 31) - 1
    assert 2**30 <= mult < 2**31 and shift >= 0
    return mult, shift


def pack_weight_pair(w1: int, w2: int) -> int:
    """Pack two int8 weights into one int32 as (sext16(w1) << 16) | uint16(sext16(w2))."""
    if not (-128 <= w1 <= 127 and -128 <= w2 <= 127):
        raise AxkernError(f"weights out of int8 range: ({w1}, {w2})")
    packed = (int(w1) << 16) + (int(w2) & 0xFFFF)
    if packed >= 1 << 31:
        packed -= 1 << 32
    return packed


def unpack_weight_pair(packed: int) -> tuple[int, int]:
    """Recover (w1, w2) halfwords from a packed constant, sign-extended."""
    u = packed & 0xFFFFFFFF
    hi = (u >> 16) & 0xFFFF
    lo = u & 0xFFFF
    if hi >= 0x8000:
        hi -= 0x10000
    if lo >= 0x8000:
        lo -= 0x10000
    return hi, lo


def dual_mac(acc: int, packed_w: int, a1: int, a2: int) -> int:
    """Accumulate both halfword products of a packed weight pair.

    Semantically acc + w1*a1 + w2*a2 where w1 is the high halfword; the
    operation accounts for two multiply-accumulates.
    """
    w1, w2 = unpack_weight_pair(packed_w)
    return int(acc) + w1 * int(a1) + w2 * int(a2)


# ---------------------------------------------------------------------------
# Operation counters
# ---------------------------------------------------------------------------


@dataclass
class OpCounters:
    """Per-layer multiply-accumulate totals for one inference.

    dual_mac_pairs counts how many of the retained products pair up under
    ascending-index packing (two products per pair).
    """

    per_layer: dict[int, list[int]] = field(default_factory=dict)

    def record(self, layer_index: int, macs: int, dual_pairs: int) -> None:
        entry = self.per_layer.setdefault(layer_index, [0, 0])
        entry[0] += int(macs)
        entry[1] += int(dual_pairs)

    def layer_macs(self, layer_index: int) -> int:
        return self.per_layer.get(layer_index, [0, 0])[0]

    def layer_dual_mac_pairs(self, layer_index: int) -> int:
        return self.per_layer.get(layer_index, [0, 0])[1]

    @property
    def total_macs(self) -> int:
        return sum(v[0] for v in self.per_layer.values())

    @property
    def total_dual_mac_pairs(self) -> int:
        return sum(v[1] for v in self.per_layer.values())

    def as_dict(self) -> dict:
        return {
            "per_layer": {k: {"macs": v[0], "dual_mac_pairs": v[1]} for k, v in sorted(self.per_layer.items())},
            "total_macs": self.total_macs,
            "total_dual_mac_pairs": self.total_dual_mac_pairs,
        }


# ---------------------------------------------------------------------------
# Layer kernels (batched internals, single-tensor public wrappers)
# ---------------------------------------------------------------------------


def _im2col_batch(xs: np.ndarray, layer: ConvLayerSpec) -> np.ndarray:
    """(n, h, w, c) int8 -> (n, out_positions, k) int32 offset-adjusted columns.

    Column index runs over (kernel_row, kernel_col, in_channel) row-major;
    padded positions are exactly 0 after offset adjustment.
    """
    n = xs.shape[0]
    x = xs.astype(np.int32) - np.int32(layer.in_quant.zero_point)
    if layer.pad_top or layer.pad_bottom or layer.pad_left or layer.pad_right:
        x = np.pad(
            x,
            ((0, 0), (layer.pad_top, layer.pad_bottom), (layer.pad_left, layer.pad_right), (0, 0)),
            mode="constant",
            constant_values=0,
        )
    oh, ow, c = layer.out_h, layer.out_w, layer.in_c
    cols = np.empty((n, oh * ow, layer.weights_per_channel), dtype=np.int32)
    k = 0
    for ky in range(layer.kernel_h):
        ys = slice(ky, ky + (oh - 1) * layer.stride_h + 1, layer.stride_h)
        for kx in range(layer.kernel_w):
            xsl = slice(kx, kx + (ow - 1) * layer.stride_w + 1, layer.stride_w)
            patch = x[:, ys, xsl, :]
            cols[:, :, k * c : (k + 1) * c] = patch.reshape(n, oh * ow, c)
            k += 1
    return cols


def _conv_accumulate_batch(
    layer: ConvLayerSpec, xs: np.ndarray, weight_matrix: np.ndarray | None = None
) -> np.ndarray:
    """Pre-requant accumulators, shape (n, out_positions, out_channels) int64."""
    cols = _im2col_batch(xs, layer)
    w = layer.weight_matrix() if weight_matrix is None else weight_matrix
    acc = cols.astype(np.int64) @ w.astype(np.int64).T
    acc += layer.bias.astype(np.int64)
    return acc


def conv2d_accumulators(
    layer: ConvLayerSpec, x: QuantizedTensor, skip_mask: np.ndarray | None = None
) -> np.ndarray:
    """Accumulators before requantization, shape (out_h, out_w, out_channels).

    skip_mask is an optional (out_channels, k) bool array; True entries are
    omitted from the sum, exactly as if those products were never computed.
    """
    _check_conv_input(layer, x)
    w = layer.weight_matrix().astype(np.int64)
    if skip_mask is not None:
        w = np.where(skip_mask, 0, w)
    acc = _conv_accumulate_batch(layer, x.reshaped()[None, ...], w)
    _check_acc_bounds(acc)
    return acc[0].reshape(layer.out_h, layer.out_w, layer.out_channels)


def _check_acc_bounds(acc: np.ndarray) -> None:
    if acc.size and (acc.min() < INT32_MIN or acc.max() > INT32_MAX):
        raise AccumulatorBoundError("accumulator escaped the int32 contract")


def _check_conv_input(layer: ConvLayerSpec, x: QuantizedTensor) -> None:
    if x.shape != layer.in_shape:
        raise ShapeError(f"conv input shape {x.shape.dims} does not match layer {layer.in_shape.dims}")
    if x.quant != layer.in_quant:
        raise ShapeError("conv input quantization does not match the layer")


def _conv_counts(layer: ConvLayerSpec, skip_mask: np.ndarray | None) -> tuple[int, int]:
    """(macs, dual_mac_pairs) per inference for the given skip mask."""
    k = layer.weights_per_channel
    if skip_mask is None:
        retained = np.full(layer.out_channels, k, dtype=np.int64)
    else:
        retained = k - skip_mask.sum(axis=1, dtype=np.int64)
    positions = layer.out_positions
    macs = int(retained.sum()) * positions
    pairs = int((retained // 2).sum()) * positions
    return macs, pairs


def conv2d_exact(
    layer: ConvLayerSpec, x: QuantizedTensor, counters: OpCounters | None = None, layer_index: int = 0
) -> QuantizedTensor:
    """Exact convolution: every retained product enters the accumulator."""
    acc = conv2d_accumulators(layer, x)
    out = _requantize_array(
        acc, layer.requant.multiplier, layer.requant.shift,
        layer.out_quant.zero_point, layer.act_min, layer.act_max,
    )
    if counters is not None:
        macs, pairs = _conv_counts(layer, None)
        counters.record(layer_index, macs, pairs)
    return QuantizedTensor(shape=layer.out_shape, data=out.reshape(-1), quant=layer.out_quant)


def maxpool(
    layer: PoolLayerSpec, x: QuantizedTensor, counters: OpCounters | None = None, layer_index: int = 0
) -> QuantizedTensor:
    """Window maximum; quantization passes through unchanged, zero MACs."""
    if x.shape != layer.in_shape:
        raise ShapeError(f"pool input shape {x.shape.dims} does not match layer {layer.in_shape.dims}")
    out = _maxpool_batch(layer, x.reshaped()[None, ...])[0]
    if counters is not None:
        counters.record(layer_index, 0, 0)
    return QuantizedTensor(shape=layer.out_shape, data=out.reshape(-1), quant=x.quant)


def _maxpool_batch(layer: PoolLayerSpec, xs: np.ndarray) -> np.ndarray:
    oh, ow = layer.out_h, layer.out_w
    out = None
    for wy in range(layer.window_h):
        ys = slice(wy, wy + (oh - 1) * layer.stride_h + 1, layer.stride_h)
        for wx in range(layer.window_w):
            xsl = slice(wx, wx + (ow - 1) * layer.stride_w + 1, layer.stride_w)
            patch = xs[:, ys, xsl, :]
            out = patch if out is None else np.maximum(out, patch)
    return out


def _dense_accumulate_batch(layer: DenseLayerSpec, flat: np.ndarray) -> np.ndarray:
    adjusted = flat.astype(np.int64) - np.int64(layer.in_quant.zero_point)
    acc = adjusted @ layer.weight_matrix().astype(np.int64).T
    acc += layer.bias.astype(np.int64)
    return acc


def dense(
    layer: DenseLayerSpec, x: QuantizedTensor, counters: OpCounters | None = None, layer_index: int = 0
) -> QuantizedTensor:
    """Fully connected layer over the flattened input tensor."""
    if x.shape.num_elements != layer.in_features:
        raise ShapeError(f"dense expects {layer.in_features} inputs, got {x.shape.num_elements}")
    if x.quant != layer.in_quant:
        raise ShapeError("dense input quantization does not match the layer")
    acc = _dense_accumulate_batch(layer, x.data[None, :])
    _check_acc_bounds(acc)
    out = _requantize_array(
        acc[0], layer.requant.multiplier, layer.requant.shift,
        layer.out_quant.zero_point, layer.act_min, layer.act_max,
    )
    if counters is not None:
        counters.record(layer_index, layer.macs_per_inference(), layer.out_features * (layer.in_features // 2))
    return QuantizedTensor(shape=layer.out_shape, data=out, quant=layer.out_quant)


# ---------------------------------------------------------------------------
# Whole-network forward pass
# ---------------------------------------------------------------------------


def _forward_batch(
    m: Model,
    xs: np.ndarray,
    skip_masks: dict[int, np.ndarray] | None = None,
    counters: OpCounters | None = None,
) -> np.ndarray:
    """Run (n, input_elements) int8 samples through the chain; returns int8 logits.

    skip_masks maps layer index to a (out_channels, k) bool array of products
    to omit.  Counters record per-sample costs (they are input independent).
    """
    n = xs.shape[0]
    cur = xs.reshape((n,) + m.input_shape.dims)
    for i, layer in enumerate(m.layers):
        if isinstance(layer, ConvLayerSpec):
            mask = skip_masks.get(i) if skip_masks else None
            w = layer.weight_matrix().astype(np.int64)
            if mask is not None:
                w = np.where(mask, 0, w)
            acc = _conv_accumulate_batch(layer, cur, w)
            _check_acc_bounds(acc)
            out = _requantize_array(
                acc, layer.requant.multiplier, layer.requant.shift,
                layer.out_quant.zero_point, layer.act_min, layer.act_max,
            )
            cur = out.reshape((n,) + layer.out_shape.dims)
            if counters is not None:
                macs, pairs = _conv_counts(layer, mask)
                counters.record(i, macs, pairs)
        elif isinstance(layer, PoolLayerSpec):
            cur = _maxpool_batch(layer, cur)
            if counters is not None:
                counters.record(i, 0, 0)
        else:
            flat = cur.reshape(n, -1)
            acc = _dense_accumulate_batch(layer, flat)
            _check_acc_bounds(acc)
            cur = _requantize_array(
                acc, layer.requant.multiplier, layer.requant.shift,
                layer.out_quant.zero_point, layer.act_min, layer.act_max,
            )
            if counters is not None:
                counters.record(i, layer.macs_per_inference(), layer.out_features * (layer.in_features // 2))
    return cur.reshape(n, -1)


def infer(m: Model, x: QuantizedTensor) -> tuple[int, np.ndarray, OpCounters]:
    """Classify one sample: (class index, int8 logits, per-layer counters).

    Argmax ties resolve to the lowest class index.
    """
    if x.shape != m.input_shape:
        raise ShapeError(f"input shape {x.shape.dims} does not match model {m.input_shape.dims}")
    if x.quant != m.input_quant:
        raise ShapeError("input quantization does not match the model")
    counters = OpCounters()
    logits = _forward_batch(m, x.data[None, :], None, counters)[0]
    return int(np.argmax(logits)), logits, counters


def evaluate(m: Model, d: Dataset, max_samples: int | None = None) -> tuple[float, OpCounters]:
    """Top-1 accuracy over a dataset plus the (input-independent) per-sample counters."""
    if d.shape != m.input_shape:
        raise ShapeError(f"dataset shape {d.shape.dims} does not match model {m.input_shape.dims}")
    n = len(d) if max_samples is None else min(max_samples, len(d))
    if n == 0:
        raise AxkernError("cannot evaluate on an empty dataset")
    labels = d.labels[:n]
    if labels.max() >= m.num_classes:
        raise AxkernError(f"label {int(labels.max())} out of range for {m.num_classes} classes")
    counters = OpCounters()
    logits = _forward_batch(m, d.samples[:n], None, counters)
    preds = np.argmax(logits, axis=1)
    return float(np.mean(preds == labels)), counters
