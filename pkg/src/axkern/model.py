"""Model and dataset containers plus their on-disk formats.

A model is a JSON manifest next to raw little-endian weight/bias blobs.
Activations are laid out height x width x channels, conv weights as
[out_channel][kernel_h][kernel_w][in_channel], dense weights as
[out_feature][in_feature].  Datasets are a single packed binary file
(magic "AXDS") holding int8 samples and uint8 labels.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataFormatError, ManifestError

DATASET_MAGIC = b"AXDS"
DATASET_VERSION = 1

INT8_MIN, INT8_MAX = -128, 127
INT32_MIN, INT32_MAX = -(2**31), 2**31 - 1

# Worst case magnitude of one offset-adjusted product: |a - zp| <= 255, |w| <= 128.
MAX_PRODUCT_MAGNITUDE = 255 * 128


@dataclass(frozen=True)
class TensorShape:
    """Row-major tensor shape, rank 1 (flat) or rank 3 (h, w, c)."""

    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.dims) not in (1, 3):
            raise ManifestError(f"tensor rank must be 1 or 3, got {len(self.dims)}")
        if any(int(d) < 1 for d in self.dims):
            raise ManifestError(f"tensor extents must be >= 1, got {self.dims}")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def num_elements(self) -> int:
        return int(np.prod(self.dims))


@dataclass(frozen=True)
class QuantParams:
    """Affine int8 quantization: real = scale * (q - zero_point)."""

    scale: float
    zero_point: int

    def violations(self, where: str) -> list[str]:
        out = []
        if not (self.scale > 0.0) or not math.isfinite(self.scale):
            out.append(f"{where}: scale must be finite and > 0, got {self.scale}")
        if not (INT8_MIN <= self.zero_point <= INT8_MAX):
            out.append(f"{where}: zero_point out of int8 range: {self.zero_point}")
        return out


@dataclass(frozen=True)
class Requant:
    """Fixed-point output rescale: out = rnd(acc * multiplier / 2^(31+shift))."""

    multiplier: int
    shift: int

    def violations(self, where: str) -> list[str]:
        out = []
        if not (2**30 <= self.multiplier < 2**31):
            out.append(f"{where}: requant multiplier must lie in [2^30, 2^31), got {self.multiplier}")
        if not (0 <= self.shift <= 31):
            out.append(f"{where}: requant shift must lie in [0, 31], got {self.shift}")
        return out


@dataclass
class QuantizedTensor:
    """Flat row-major int8 payload with shape and quantization metadata."""

    shape: TensorShape
    data: np.ndarray
    quant: QuantParams

    def __post_init__(self):
        self.data = np.ascontiguousarray(self.data, dtype=np.int8).reshape(-1)
        if self.data.size != self.shape.num_elements:
            raise ManifestError(
                f"tensor payload has {self.data.size} elements, shape needs {self.shape.num_elements}"
            )

    def reshaped(self) -> np.ndarray:
        return self.data.reshape(self.shape.dims)


@dataclass
class ConvLayerSpec:
    """2-D convolution over h x w x c activations with per-tensor quantization."""

    in_shape: TensorShape
    out_channels: int
    kernel_h: int
    kernel_w: int
    stride_h: int
    stride_w: int
    pad_top: int
    pad_left: int
    pad_bottom: int
    pad_right: int
    weights: np.ndarray  # int8, flat [cout][kh][kw][cin]
    bias: np.ndarray  # int32, [cout]
    in_quant: QuantParams
    out_quant: QuantParams
    weight_scale: float
    requant: Requant
    act_min: int
    act_max: int

    type_name = "conv2d"

    def __post_init__(self):
        self.weights = np.ascontiguousarray(self.weights, dtype=np.int8).reshape(-1)
        self.bias = np.ascontiguousarray(self.bias, dtype=np.int32).reshape(-1)

    @property
    def in_h(self) -> int:
        return self.in_shape.dims[0]

    @property
    def in_w(self) -> int:
        return self.in_shape.dims[1]

    @property
    def in_c(self) -> int:
        return self.in_shape.dims[2]

    @property
    def weights_per_channel(self) -> int:
        """Receptive field size: kernel_h * kernel_w * in_channels."""
        return self.kernel_h * self.kernel_w * self.in_c

    @property
    def out_h(self) -> int:
        span = self.in_h + self.pad_top + self.pad_bottom - self.kernel_h
        return span // self.stride_h + 1

    @property
    def out_w(self) -> int:
        span = self.in_w + self.pad_left + self.pad_right - self.kernel_w
        return span // self.stride_w + 1

    @property
    def out_shape(self) -> TensorShape:
        return TensorShape((self.out_h, self.out_w, self.out_channels))

    @property
    def out_positions(self) -> int:
        return self.out_h * self.out_w

    def weight_matrix(self) -> np.ndarray:
        """Weights as (out_channels, weights_per_channel), row per output channel."""
        return self.weights.reshape(self.out_channels, self.weights_per_channel)

    def macs_per_inference(self) -> int:
        return self.out_positions * self.out_channels * self.weights_per_channel

    def violations(self, where: str) -> list[str]:
        out = []
        if self.out_channels < 1:
            out.append(f"{where}: out_channels must be >= 1")
        if self.kernel_h < 1 or self.kernel_w < 1:
            out.append(f"{where}: kernel extents must be >= 1")
        if self.stride_h < 1 or self.stride_w < 1:
            out.append(f"{where}: strides must be >= 1")
        if min(self.pad_top, self.pad_left, self.pad_bottom, self.pad_right) < 0:
            out.append(f"{where}: padding must be >= 0")
        if len(self.in_shape.dims) != 3:
            out.append(f"{where}: conv input must be rank 3")
            return out
        if self.kernel_h > self.in_h + self.pad_top + self.pad_bottom:
            out.append(f"{where}: kernel taller than padded input")
        if self.kernel_w > self.in_w + self.pad_left + self.pad_right:
            out.append(f"{where}: kernel wider than padded input")
        if self.weights.size != self.out_channels * self.weights_per_channel:
            out.append(
                f"{where}: weight blob has {self.weights.size} values, expected "
                f"{self.out_channels * self.weights_per_channel}"
            )
        if self.bias.size != self.out_channels:
            out.append(f"{where}: bias blob has {self.bias.size} values, expected {self.out_channels}")
        out += self.in_quant.violations(f"{where}: in_quant")
        out += self.out_quant.violations(f"{where}: out_quant")
        if not (self.weight_scale > 0.0) or not math.isfinite(self.weight_scale):
            out.append(f"{where}: weight_scale must be finite and > 0")
        out += self.requant.violations(where)
        if not (INT8_MIN <= self.act_min <= self.act_max <= INT8_MAX):
            out.append(f"{where}: activation clamp must satisfy -128 <= act_min <= act_max <= 127")
        out += _accumulator_bound_violations(where, self.bias, self.weights_per_channel)
        return out


@dataclass
class PoolLayerSpec:
    """Max pooling window over h x w x c activations; quantization passes through."""

    in_shape: TensorShape
    window_h: int
    window_w: int
    stride_h: int
    stride_w: int

    type_name = "maxpool"

    @property
    def out_h(self) -> int:
        return (self.in_shape.dims[0] - self.window_h) // self.stride_h + 1

    @property
    def out_w(self) -> int:
        return (self.in_shape.dims[1] - self.window_w) // self.stride_w + 1

    @property
    def out_shape(self) -> TensorShape:
        return TensorShape((self.out_h, self.out_w, self.in_shape.dims[2]))

    def macs_per_inference(self) -> int:
        return 0

    def violations(self, where: str) -> list[str]:
        out = []
        if self.window_h < 1 or self.window_w < 1:
            out.append(f"{where}: pool window extents must be >= 1")
        if self.stride_h < 1 or self.stride_w < 1:
            out.append(f"{where}: pool strides must be >= 1")
        if len(self.in_shape.dims) != 3:
            out.append(f"{where}: pool input must be rank 3")
            return out
        if self.window_h > self.in_shape.dims[0] or self.window_w > self.in_shape.dims[1]:
            out.append(f"{where}: pool window larger than input")
        return out


@dataclass
class DenseLayerSpec:
    """Fully connected layer over the flattened previous activation."""

    in_features: int
    out_features: int
    weights: np.ndarray  # int8, flat [out][in]
    bias: np.ndarray  # int32, [out]
    in_quant: QuantParams
    out_quant: QuantParams
    weight_scale: float
    requant: Requant
    act_min: int
    act_max: int

    type_name = "dense"

    def __post_init__(self):
        self.weights = np.ascontiguousarray(self.weights, dtype=np.int8).reshape(-1)
        self.bias = np.ascontiguousarray(self.bias, dtype=np.int32).reshape(-1)

    @property
    def out_shape(self) -> TensorShape:
        return TensorShape((self.out_features,))

    def weight_matrix(self) -> np.ndarray:
        return self.weights.reshape(self.out_features, self.in_features)

    def macs_per_inference(self) -> int:
        return self.in_features * self.out_features

    def violations(self, where: str) -> list[str]:
        out = []
        if self.in_features < 1 or self.out_features < 1:
            out.append(f"{where}: dense feature counts must be >= 1")
        if self.weights.size != self.in_features * self.out_features:
            out.append(
                f"{where}: weight blob has {self.weights.size} values, expected "
                f"{self.in_features * self.out_features}"
            )
        if self.bias.size != self.out_features:
            out.append(f"{where}: bias blob has {self.bias.size} values, expected {self.out_features}")
        out += self.in_quant.violations(f"{where}: in_quant")
        out += self.out_quant.violations(f"{where}: out_quant")
        if not (self.weight_scale > 0.0) or not math.isfinite(self.weight_scale):
            out.append(f"{where}: weight_scale must be finite and > 0")
        out += self.requant.violations(where)
        if not (INT8_MIN <= self.act_min <= self.act_max <= INT8_MAX):
            out.append(f"{where}: activation clamp must satisfy -128 <= act_min <= act_max <= 127")
        out += _accumulator_bound_violations(where, self.bias, self.in_features)
        return out


LayerSpec = ConvLayerSpec | PoolLayerSpec | DenseLayerSpec


def _accumulator_bound_violations(where: str, bias: np.ndarray, products: int) -> list[str]:
    # Every accumulator must stay inside int32 for arbitrary int8 inputs.
    if bias.size == 0:
        return []
    worst = int(np.abs(bias.astype(np.int64)).max()) + products * MAX_PRODUCT_MAGNITUDE
    if worst > INT32_MAX:
        return [f"{where}: worst-case accumulator magnitude {worst} exceeds the int32 contract"]
    return []


@dataclass
class Model:
    """Validated layer chain ending in a logits vector of num_classes entries."""

    name: str
    num_classes: int
    layers: list[LayerSpec] = field(default_factory=list)

    def conv_layer_indices(self) -> list[int]:
        return [i for i, l in enumerate(self.layers) if isinstance(l, ConvLayerSpec)]

    @property
    def input_shape(self) -> TensorShape:
        first = self.layers[0]
        if isinstance(first, DenseLayerSpec):
            return TensorShape((first.in_features,))
        return first.in_shape

    @property
    def input_quant(self) -> QuantParams:
        for l in self.layers:
            if isinstance(l, (ConvLayerSpec, DenseLayerSpec)):
                return l.in_quant
        raise ManifestError("model has no quantized layer")

    def layer_output_shapes(self) -> list[TensorShape]:
        return [l.out_shape for l in self.layers]

    def total_macs_exact(self) -> int:
        return sum(l.macs_per_inference() for l in self.layers)

    def conv_macs_exact(self) -> int:
        return sum(l.macs_per_inference() for l in self.layers if isinstance(l, ConvLayerSpec))


def validate_model(m: Model) -> list[str]:
    """Return every contract violation; an empty list means the model is valid."""
    out = []
    if not m.layers:
        return ["model has no layers"]
    if m.num_classes < 2 or m.num_classes > 255:
        out.append(f"num_classes must lie in [2, 255], got {m.num_classes}")
    for i, layer in enumerate(m.layers):
        out += layer.violations(f"layer {i}")
    if out:
        return out

    cur_shape = m.input_shape
    cur_quant: QuantParams | None = None
    for i, layer in enumerate(m.layers):
        if isinstance(layer, ConvLayerSpec):
            if layer.in_shape != cur_shape:
                out.append(f"layer {i}: input shape {layer.in_shape.dims} breaks the chain from {cur_shape.dims}")
            if cur_quant is not None and layer.in_quant != cur_quant:
                out.append(f"layer {i}: input quantization does not match the previous layer output")
            cur_quant = layer.out_quant
        elif isinstance(layer, PoolLayerSpec):
            if layer.in_shape != cur_shape:
                out.append(f"layer {i}: input shape {layer.in_shape.dims} breaks the chain from {cur_shape.dims}")
        else:
            if layer.in_features != cur_shape.num_elements:
                out.append(
                    f"layer {i}: dense expects {layer.in_features} inputs, chain provides "
                    f"{cur_shape.num_elements}"
                )
            if cur_quant is not None and layer.in_quant != cur_quant:
                out.append(f"layer {i}: input quantization does not match the previous layer output")
            cur_quant = layer.out_quant
        if out:
            return out
        cur_shape = layer.out_shape
    if cur_shape.num_elements != m.num_classes:
        out.append(
            f"final layer produces {cur_shape.num_elements} values, expected num_classes={m.num_classes}"
        )
    return out


# ---------------------------------------------------------------------------
# Manifest + blob I/O
# ---------------------------------------------------------------------------


def _read_blob(path: Path, dtype, expected: int, where: str) -> np.ndarray:
    if not path.is_file():
        raise ManifestError(f"{where}: blob file not found: {path}")
    raw = path.read_bytes()
    arr = np.frombuffer(raw, dtype=np.dtype(dtype).newbyteorder("<"))
    if arr.size != expected:
        raise ManifestError(f"{where}: blob {path.name} holds {arr.size} values, expected {expected}")
    return arr.astype(dtype)


def _quant_from_json(obj, where: str) -> QuantParams:
    try:
        return QuantParams(scale=float(obj["scale"]), zero_point=int(obj["zero_point"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ManifestError(f"{where}: bad quantization record: {e}") from e


def _requant_from_json(obj, where: str) -> Requant:
    try:
        return Requant(multiplier=int(obj["multiplier"]), shift=int(obj["shift"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ManifestError(f"{where}: bad requant record: {e}") from e


def load_model(manifest_path: str | Path) -> Model:
    """Parse a manifest and its blobs into a validated Model."""
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise ManifestError(f"manifest not found: {manifest_path}")
    try:
        doc = json.loads(manifest_path.read_text(encoding="utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ManifestError(f"manifest is not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ManifestError("manifest root must be a JSON object")

    base = manifest_path.parent
    try:
        name = str(doc["name"])
        num_classes = int(doc["num_classes"])
        layer_docs = doc["layers"]
    except (KeyError, TypeError, ValueError) as e:
        raise ManifestError(f"manifest missing required field: {e}") from e
    if not isinstance(layer_docs, list) or not layer_docs:
        raise ManifestError("manifest must declare a non-empty layer list")

    layers: list[LayerSpec] = []
    cur_shape: TensorShape | None = None
    for i, ld in enumerate(layer_docs):
        where = f"layer {i}"
        if not isinstance(ld, dict) or "type" not in ld:
            raise ManifestError(f"{where}: layer record must be an object with a type")
        ltype = ld["type"]
        try:
            if ltype == "conv2d":
                in_shape = TensorShape(tuple(ld["in_shape"])) if "in_shape" in ld else cur_shape
                if in_shape is None:
                    raise ManifestError(f"{where}: first layer must declare in_shape")
                out_channels = int(ld["out_channels"])
                kh, kw = (int(v) for v in ld["kernel"])
                sh, sw = (int(v) for v in ld["stride"])
                pt, pl, pb, pr = (int(v) for v in ld.get("pad", [0, 0, 0, 0]))
                k = kh * kw * in_shape.dims[2]
                weights = _read_blob(base / str(ld["weights_file"]), np.int8, out_channels * k, where)
                bias = _read_blob(base / str(ld["bias_file"]), np.int32, out_channels, where)
                layer = ConvLayerSpec(
                    in_shape=in_shape,
                    out_channels=out_channels,
                    kernel_h=kh,
                    kernel_w=kw,
                    stride_h=sh,
                    stride_w=sw,
                    pad_top=pt,
                    pad_left=pl,
                    pad_bottom=pb,
                    pad_right=pr,
                    weights=weights,
                    bias=bias,
                    in_quant=_quant_from_json(ld["in_quant"], where),
                    out_quant=_quant_from_json(ld["out_quant"], where),
                    weight_scale=float(ld["weight_scale"]),
                    requant=_requant_from_json(ld["requant"], where),
                    act_min=int(ld["act_min"]),
                    act_max=int(ld["act_max"]),
                )
            elif ltype == "maxpool":
                in_shape = TensorShape(tuple(ld["in_shape"])) if "in_shape" in ld else cur_shape
                if in_shape is None:
                    raise ManifestError(f"{where}: first layer must declare in_shape")
                wh, ww = (int(v) for v in ld["window"])
                sh, sw = (int(v) for v in ld["stride"])
                layer = PoolLayerSpec(in_shape=in_shape, window_h=wh, window_w=ww, stride_h=sh, stride_w=sw)
            elif ltype == "dense":
                if "in_features" in ld:
                    in_features = int(ld["in_features"])
                elif cur_shape is not None:
                    in_features = cur_shape.num_elements
                else:
                    raise ManifestError(f"{where}: first layer must declare in_features")
                out_features = int(ld["out_features"])
                weights = _read_blob(
                    base / str(ld["weights_file"]), np.int8, in_features * out_features, where
                )
                bias = _read_blob(base / str(ld["bias_file"]), np.int32, out_features, where)
                layer = DenseLayerSpec(
                    in_features=in_features,
                    out_features=out_features,
                    weights=weights,
                    bias=bias,
                    in_quant=_quant_from_json(ld["in_quant"], where),
                    out_quant=_quant_from_json(ld["out_quant"], where),
                    weight_scale=float(ld["weight_scale"]),
                    requant=_requant_from_json(ld["requant"], where),
                    act_min=int(ld["act_min"]),
                    act_max=int(ld["act_max"]),
                )
            else:
                raise ManifestError(f"{where}: unknown layer type {ltype!r}")
        except ManifestError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise ManifestError(f"{where}: malformed layer record: {e}") from e
        layers.append(layer)
        cur_shape = layer.out_shape

    m = Model(name=name, num_classes=num_classes, layers=layers)
    problems = validate_model(m)
    if problems:
        raise ManifestError("; ".join(problems))
    return m


def save_model(m: Model, outdir: str | Path, manifest_name: str = "model.json") -> Path:
    """Write the manifest and blobs; load_model(save_model(m)) reproduces m."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    layer_docs = []
    for i, layer in enumerate(m.layers):
        if isinstance(layer, ConvLayerSpec):
            wname, bname = f"w{i}.bin", f"b{i}.bin"
            (outdir / wname).write_bytes(layer.weights.astype("<i1").tobytes())
            (outdir / bname).write_bytes(layer.bias.astype("<i4").tobytes())
            layer_docs.append(
                {
                    "type": "conv2d",
                    "in_shape": list(layer.in_shape.dims),
                    "out_channels": layer.out_channels,
                    "kernel": [layer.kernel_h, layer.kernel_w],
                    "stride": [layer.stride_h, layer.stride_w],
                    "pad": [layer.pad_top, layer.pad_left, layer.pad_bottom, layer.pad_right],
                    "in_quant": {"scale": layer.in_quant.scale, "zero_point": layer.in_quant.zero_point},
                    "out_quant": {"scale": layer.out_quant.scale, "zero_point": layer.out_quant.zero_point},
                    "weight_scale": layer.weight_scale,
                    "requant": {"multiplier": layer.requant.multiplier, "shift": layer.requant.shift},
                    "act_min": layer.act_min,
                    "act_max": layer.act_max,
                    "weights_file": wname,
                    "bias_file": bname,
                }
            )
        elif isinstance(layer, PoolLayerSpec):
            layer_docs.append(
                {
                    "type": "maxpool",
                    "window": [layer.window_h, layer.window_w],
                    "stride": [layer.stride_h, layer.stride_w],
                }
            )
        else:
            wname, bname = f"w{i}.bin", f"b{i}.bin"
            (outdir / wname).write_bytes(layer.weights.astype("<i1").tobytes())
            (outdir / bname).write_bytes(layer.bias.astype("<i4").tobytes())
            layer_docs.append(
                {
                    "type": "dense",
                    "out_features": layer.out_features,
                    "in_quant": {"scale": layer.in_quant.scale, "zero_point": layer.in_quant.zero_point},
                    "out_quant": {"scale": layer.out_quant.scale, "zero_point": layer.out_quant.zero_point},
                    "weight_scale": layer.weight_scale,
                    "requant": {"multiplier": layer.requant.multiplier, "shift": layer.requant.shift},
                    "act_min": layer.act_min,
                    "act_max": layer.act_max,
                    "weights_file": wname,
                    "bias_file": bname,
                }
            )
    doc = {"name": m.name, "num_classes": m.num_classes, "layers": layer_docs}
    path = outdir / manifest_name
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# Dataset container + packed binary format
# ---------------------------------------------------------------------------


@dataclass
class Dataset:
    """Fixed-shape int8 samples with one uint8 label each."""

    shape: TensorShape
    quant: QuantParams
    samples: np.ndarray  # (count, num_elements) int8
    labels: np.ndarray  # (count,) int

    def __post_init__(self):
        self.samples = np.ascontiguousarray(self.samples, dtype=np.int8)
        if self.samples.ndim != 2 or self.samples.shape[1] != self.shape.num_elements:
            raise DataFormatError(
                f"samples must be (count, {self.shape.num_elements}), got {self.samples.shape}"
            )
        self.labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        if self.labels.shape != (self.samples.shape[0],):
            raise DataFormatError("labels must align one-to-one with samples")
        if self.labels.size and (self.labels.min() < 0 or self.labels.max() > 255):
            raise DataFormatError("labels must fit in uint8")

    def __len__(self) -> int:
        return int(self.samples.shape[0])

    def sample(self, i: int) -> QuantizedTensor:
        return QuantizedTensor(shape=self.shape, data=self.samples[i], quant=self.quant)

    def slice(self, start: int, stop: int) -> "Dataset":
        return Dataset(
            shape=self.shape,
            quant=self.quant,
            samples=self.samples[start:stop].copy(),
            labels=self.labels[start:stop].copy(),
        )


def dataset_header_size(rank: int) -> int:
    """Byte offset of the first sample: magic, version, count, rank, dims."""
    return 4 + 2 + 4 + 1 + 4 * rank


def save_dataset(d: Dataset, path: str | Path) -> Path:
    """Pack samples then labels after a fixed little-endian header.

    Quantization metadata travels with the model, not the dataset file.
    """
    path = Path(path)
    dims = d.shape.dims
    parts = [
        DATASET_MAGIC,
        struct.pack("<H", DATASET_VERSION),
        struct.pack("<I", len(d)),
        struct.pack("<B", len(dims)),
        struct.pack(f"<{len(dims)}I", *dims),
        d.samples.astype("<i1").tobytes(),
        d.labels.astype("<u1").tobytes(),
    ]
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(b"".join(parts))
    return path


def load_dataset(path: str | Path, quant: QuantParams | None = None) -> Dataset:
    """Parse a packed dataset; quantization metadata is supplied by the caller."""
    path = Path(path)
    if not path.is_file():
        raise DataFormatError(f"dataset not found: {path}")
    raw = path.read_bytes()
    if len(raw) < 11 or raw[:4] != DATASET_MAGIC:
        raise DataFormatError(f"bad dataset magic in {path.name}")
    (version,) = struct.unpack_from("<H", raw, 4)
    if version != DATASET_VERSION:
        raise DataFormatError(f"unsupported dataset version {version}")
    (count,) = struct.unpack_from("<I", raw, 6)
    (rank,) = struct.unpack_from("<B", raw, 10)
    if rank not in (1, 3):
        raise DataFormatError(f"dataset rank must be 1 or 3, got {rank}")
    header = dataset_header_size(rank)
    if len(raw) < header:
        raise DataFormatError(f"truncated dataset header in {path.name}")
    dims = struct.unpack_from(f"<{rank}I", raw, 11)
    shape = TensorShape(dims)
    sample_bytes = count * shape.num_elements
    expected = header + sample_bytes + count
    if len(raw) != expected:
        raise DataFormatError(
            f"truncated or oversized dataset payload in {path.name}: {len(raw)} bytes, expected {expected}"
        )
    samples = np.frombuffer(raw, dtype=np.int8, count=sample_bytes, offset=header)
    labels = np.frombuffer(raw, dtype=np.uint8, count=count, offset=header + sample_bytes)
    q = quant if quant is not None else QuantParams(scale=1.0, zero_point=0)
    return Dataset(
        shape=shape,
        quant=q,
        samples=samples.reshape(count, shape.num_elements).copy(),
        labels=labels.astype(np.int64),
    )
