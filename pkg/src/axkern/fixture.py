"""Deterministic synthetic model and dataset generation for end-to-end runs.

The generated network is a small conv/pool stack with a dense classifier.
Weights are random with a controllable fraction forced to exactly zero, bias
and rescale parameters are calibrated against the generated samples so every
layer produces live activations, and labels are the model's own predictions,
so exact inference scores 1.0 and any output perturbation is visible as an
accuracy drop.

Self-checks guarantee the properties downstream stages rely on: every
calibration mean E[a_i] is strictly positive (so a zero significance score
implies a zero weight and skipping it cannot change any output), no channel
has a zero significance denominator, and predicted classes are balanced.
A failed check regenerates with a derived seed; the result is a pure
function of the requested spec.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AxkernError
from .model import (
    ConvLayerSpec,
    Dataset,
    DenseLayerSpec,
    Model,
    PoolLayerSpec,
    QuantParams,
    Requant,
    TensorShape,
    validate_model,
)
from .qinfer import _forward_batch, quantize_multiplier
from .significance import capture_activation_stats, compute_model_significance

_ATTEMPT_LIMIT = 8


@dataclass(frozen=True)
class FixtureSpec:
    """Recipe for one synthetic model + dataset pair."""

    seed: int = 7
    zero_weight_fraction: float = 0.3
    calib_count: int = 96
    eval_count: int = 144
    num_classes: int = 4
    input_size: int = 16
    input_channels: int = 1

    def violations(self) -> list[str]:
        out = []
        if not (0.0 <= self.zero_weight_fraction <= 1.0):
            out.append("zero_weight_fraction must lie in [0, 1]")
        if self.calib_count < 8 or self.eval_count < 8:
            out.append("calib_count and eval_count must be >= 8")
        if not (2 <= self.num_classes <= 32):
            out.append("num_classes must lie in [2, 32]")
        if self.input_size < 8 or self.input_size > 64:
            out.append("input_size must lie in [8, 64]")
        if not (1 <= self.input_channels <= 4):
            out.append("input_channels must lie in [1, 4]")
        return out

    @property
    def sample_count(self) -> int:
        return self.calib_count + self.eval_count


def generate_fixture(spec: FixtureSpec) -> tuple[Model, Dataset]:
    """Build a validated model and its self-labeled dataset.

    The first spec.calib_count samples are the intended calibration split.
    Deterministic: equal specs produce byte-identical models and datasets.
    """
    problems = spec.violations()
    if problems:
        raise AxkernError("; ".join(problems))
    for attempt in range(_ATTEMPT_LIMIT):
        rng = np.random.default_rng(np.random.SeedSequence([spec.seed & 0x7FFFFFFF, attempt, 0xA15]))
        built = _build_candidate(spec, rng)
        if built is not None and _fixture_ok(spec, *built):
            return built
    raise AxkernError(f"fixture generation failed after {_ATTEMPT_LIMIT} attempts for seed {spec.seed}")


# input values stay in [-96, 96]; with zero point -128 every offset-adjusted
# activation is >= 32, so first-layer calibration means are strictly positive.
_IN_ZP = -128
_HIDDEN_ZP = -64
_HIDDEN_MAX_ADJ = 127 - _HIDDEN_ZP


def _build_candidate(spec: FixtureSpec, rng: np.random.Generator) -> tuple[Model, Dataset] | None:
    hw = spec.input_size
    cin = spec.input_channels
    in_quant = QuantParams(scale=1.0 / 128.0, zero_point=_IN_ZP)
    pool_count = spec.sample_count * 3
    pool = rng.integers(-96, 97, size=(pool_count, hw, hw, cin), dtype=np.int64).astype(np.int8)

    plan = [
        ("conv", dict(out_channels=4, kernel=3, stride=1, pad=0)),
        ("pool", dict(window=2, stride=2)),
        ("conv", dict(out_channels=6, kernel=3, stride=1, pad=1)),
        ("pool", dict(window=2, stride=2)),
        ("conv", dict(out_channels=8, kernel=3, stride=1, pad=1)),
    ]

    layers = []
    cur_shape = TensorShape((hw, hw, cin))
    cur_quant = in_quant
    cur = pool
    for kind, p in plan:
        if kind == "pool":
            layer = PoolLayerSpec(
                in_shape=cur_shape, window_h=p["window"], window_w=p["window"],
                stride_h=p["stride"], stride_w=p["stride"],
            )
            cur = _apply_layer(layer, cur)
        else:
            layer = _calibrated_conv(spec, rng, cur_shape, cur_quant, cur, **p)
            cur = _apply_layer(layer, cur)
            cur_quant = layer.out_quant
        layers.append(layer)
        cur_shape = layer.out_shape

    dense_layer = _calibrated_dense(spec, rng, cur_shape, cur_quant, cur)
    layers.append(dense_layer)

    m = Model(name=f"fixture-s{spec.seed}", num_classes=spec.num_classes, layers=layers)
    if validate_model(m):
        return None

    logits = _forward_batch(m, pool.reshape(pool_count, -1))
    preds = np.argmax(logits, axis=1)

    # balanced self-labeled selection: num_classes round-robin over prediction buckets
    per_class = spec.sample_count // spec.num_classes
    extra = spec.sample_count - per_class * spec.num_classes
    buckets = [np.flatnonzero(preds == c) for c in range(spec.num_classes)]
    need = [per_class + (1 if c < extra else 0) for c in range(spec.num_classes)]
    if any(b.size < n for b, n in zip(buckets, need)):
        return None
    chosen: list[int] = []
    for j in range(max(need)):
        for c in range(spec.num_classes):
            if j < need[c]:
                chosen.append(int(buckets[c][j]))
    samples = pool.reshape(pool_count, -1)[chosen]
    labels = preds[chosen]
    d = Dataset(shape=m.input_shape, quant=in_quant, samples=samples, labels=labels)
    return m, d


def _apply_layer(layer, xs: np.ndarray) -> np.ndarray:
    n = xs.shape[0]
    sub = Model(name="tmp", num_classes=2, layers=[layer])
    out = _forward_batch(sub, xs.reshape(n, -1))
    return out.reshape((n,) + layer.out_shape.dims)


def _random_weights(
    rng: np.random.Generator, out_channels: int, k: int, zero_fraction: float
) -> np.ndarray:
    """Nonzero magnitudes in [1, 64] with a forced-zero share per channel."""
    signs = rng.integers(0, 2, size=(out_channels, k)) * 2 - 1
    mags = rng.integers(1, 65, size=(out_channels, k))
    w = (signs * mags).astype(np.int64)
    zeros_per_channel = int(np.ceil(zero_fraction * k)) if zero_fraction > 0 else 0
    zeros_per_channel = min(zeros_per_channel, max(k - 2, 0))
    for c in range(out_channels):
        if zeros_per_channel:
            idx = rng.choice(k, size=zeros_per_channel, replace=False)
            w[c, idx] = 0
    return w.astype(np.int8)


def _calibrated_conv(
    spec: FixtureSpec,
    rng: np.random.Generator,
    in_shape: TensorShape,
    in_quant: QuantParams,
    xs: np.ndarray,
    out_channels: int,
    kernel: int,
    stride: int,
    pad: int,
) -> ConvLayerSpec:
    k = kernel * kernel * in_shape.dims[2]
    w = _random_weights(rng, out_channels, k, spec.zero_weight_fraction)
    proto = ConvLayerSpec(
        in_shape=in_shape,
        out_channels=out_channels,
        kernel_h=kernel,
        kernel_w=kernel,
        stride_h=stride,
        stride_w=stride,
        pad_top=pad,
        pad_left=pad,
        pad_bottom=pad,
        pad_right=pad,
        weights=w,
        bias=np.zeros(out_channels, dtype=np.int32),
        in_quant=in_quant,
        out_quant=QuantParams(scale=1.0, zero_point=_HIDDEN_ZP),
        weight_scale=1.0 / 64.0,
        requant=Requant(multiplier=2**30, shift=0),
        act_min=_HIDDEN_ZP,
        act_max=127,
    )
    from .qinfer import _conv_accumulate_batch

    raw = _conv_accumulate_batch(proto, xs[: min(64, xs.shape[0])])  # (n, positions, cout)
    flat = raw.reshape(-1, out_channels).astype(np.float64)
    # bias keeps roughly three quarters of each channel above the clamp floor
    bias = np.round(-np.quantile(flat, 0.25, axis=0)).astype(np.int64)
    biased = flat + bias[None, :]
    peak = max(float(np.quantile(np.abs(biased), 0.995)), 1.0)
    ratio = min(max(_HIDDEN_MAX_ADJ * 0.75 / peak, 2.0**-24), 1.0 - 2.0**-24)
    mult, shift = quantize_multiplier(ratio)
    out_scale = in_quant.scale * proto.weight_scale / ratio
    layer = ConvLayerSpec(
        in_shape=in_shape,
        out_channels=out_channels,
        kernel_h=kernel,
        kernel_w=kernel,
        stride_h=stride,
        stride_w=stride,
        pad_top=pad,
        pad_left=pad,
        pad_bottom=pad,
        pad_right=pad,
        weights=w,
        bias=bias.astype(np.int32),
        in_quant=in_quant,
        out_quant=QuantParams(scale=out_scale, zero_point=_HIDDEN_ZP),
        weight_scale=1.0 / 64.0,
        requant=Requant(multiplier=mult, shift=shift),
        act_min=_HIDDEN_ZP,
        act_max=127,
    )
    return layer


def _calibrated_dense(
    spec: FixtureSpec,
    rng: np.random.Generator,
    in_shape: TensorShape,
    in_quant: QuantParams,
    xs: np.ndarray,
) -> DenseLayerSpec:
    in_features = in_shape.num_elements
    w = _random_weights(rng, spec.num_classes, in_features, 0.0)
    flat = xs.reshape(xs.shape[0], -1).astype(np.int64) - in_quant.zero_point
    raw = (flat @ w.astype(np.int64).T).astype(np.float64)
    # center each class so predictions spread across all of them
    bias = np.round(-np.mean(raw, axis=0)).astype(np.int64)
    biased = raw + bias[None, :]
    peak = max(float(np.quantile(np.abs(biased), 0.995)), 1.0)
    ratio = min(max(96.0 / peak, 2.0**-24), 1.0 - 2.0**-24)
    mult, shift = quantize_multiplier(ratio)
    out_scale = in_quant.scale * (1.0 / 64.0) / ratio
    return DenseLayerSpec(
        in_features=in_features,
        out_features=spec.num_classes,
        weights=w,
        bias=bias.astype(np.int32),
        in_quant=in_quant,
        out_quant=QuantParams(scale=out_scale, zero_point=0),
        weight_scale=1.0 / 64.0,
        requant=Requant(multiplier=mult, shift=shift),
        act_min=-128,
        act_max=127,
    )


def _fixture_ok(spec: FixtureSpec, m: Model, d: Dataset) -> bool:
    """Verify the statistical properties the rest of the pipeline assumes."""
    if spec.zero_weight_fraction > 0:
        for i in m.conv_layer_indices():
            layer = m.layers[i]
            if np.mean(layer.weights == 0) < spec.zero_weight_fraction - 1e-12:
                return False
    # calibration means must be strictly positive on a short prefix and on the
    # calibration split; activations are non-negative after offset adjustment,
    # so positivity on a prefix survives extension to any longer prefix.
    for count in (8, spec.calib_count):
        stats = capture_activation_stats(m, d, max_samples=count)
        for i in m.conv_layer_indices():
            if not np.all(stats.per_layer[i].expected > 0.0):
                return False
    sig = compute_model_significance(m, stats)
    for i in m.conv_layer_indices():
        if not np.all(np.isfinite(sig.per_layer[i])):
            return False
    logits = _forward_batch(m, d.samples)
    preds = np.argmax(logits, axis=1)
    return bool(np.all(preds == d.labels))
