import json
import struct

import numpy as np
import pytest

from axkern.errors import DataFormatError, ManifestError
from axkern.model import (
    DATASET_MAGIC,
    Dataset,
    Model,
    QuantParams,
    QuantizedTensor,
    Requant,
    TensorShape,
    dataset_header_size,
    load_dataset,
    load_model,
    save_dataset,
    save_model,
    validate_model,
)
from conftest import random_conv_layer, random_dense_layer


def test_tensor_shape_ranks():
    assert TensorShape((4,)).num_elements == 4
    assert TensorShape((2, 3, 5)).num_elements == 30
    with pytest.raises(ManifestError):
        TensorShape((2, 3))
    with pytest.raises(ManifestError):
        TensorShape((2, 0, 5))


def test_quantized_tensor_size_check():
    q = QuantParams(scale=1.0, zero_point=0)
    t = QuantizedTensor(shape=TensorShape((2, 2, 1)), data=np.arange(4, dtype=np.int8), quant=q)
    assert t.reshaped().shape == (2, 2, 1)
    with pytest.raises(ManifestError):
        QuantizedTensor(shape=TensorShape((2, 2, 1)), data=np.zeros(5, dtype=np.int8), quant=q)


def test_conv_layer_derived_extents():
    rng = np.random.default_rng(0)
    layer = random_conv_layer(
        rng, in_h=5, in_w=7, in_c=2, kernel_h=3, kernel_w=3, out_channels=4,
        stride_h=2, stride_w=1, pad_top=1, pad_bottom=1, pad_left=0, pad_right=0,
    )
    assert layer.out_h == (5 + 2 - 3) // 2 + 1
    assert layer.out_w == (7 - 3) // 1 + 1
    assert layer.weights_per_channel == 3 * 3 * 2
    assert layer.macs_per_inference() == layer.out_h * layer.out_w * 4 * 18
    assert layer.weight_matrix().shape == (4, 18)


def test_requant_field_violations():
    assert Requant(multiplier=2**30, shift=0).violations("x") == []
    assert Requant(multiplier=2**30 - 1, shift=0).violations("x")
    assert Requant(multiplier=2**31, shift=0).violations("x")
    assert Requant(multiplier=2**30, shift=32).violations("x")
    assert Requant(multiplier=2**30, shift=-1).violations("x")


def _tiny_model(rng) -> Model:
    conv = random_conv_layer(
        rng, in_h=6, in_w=6, in_c=1, kernel_h=3, kernel_w=3, out_channels=2,
        stride_h=1, stride_w=1, pad_top=0, pad_bottom=0, pad_left=0, pad_right=0,
    )
    dense = random_dense_layer(
        rng,
        in_features=conv.out_shape.num_elements,
        out_features=3,
        in_quant=conv.out_quant,
    )
    return Model(name="tiny", num_classes=3, layers=[conv, dense])


def test_validate_model_accepts_consistent_chain():
    m = _tiny_model(np.random.default_rng(1))
    assert validate_model(m) == []


def test_validate_model_flags_problems():
    rng = np.random.default_rng(2)
    assert validate_model(Model(name="e", num_classes=2, layers=[])) == ["model has no layers"]

    m = _tiny_model(rng)
    m.num_classes = 1
    assert any("num_classes" in p for p in validate_model(m))

    m = _tiny_model(rng)
    m.layers[1].in_features = 99
    m.layers[1].weights = np.zeros(99 * 3, dtype=np.int8)
    problems = validate_model(m)
    assert any(p.startswith("layer 1") for p in problems)

    m = _tiny_model(rng)
    m.layers[1].in_quant = QuantParams(scale=123.0, zero_point=5)
    assert any("quantization" in p for p in validate_model(m))

    m = _tiny_model(rng)
    m.num_classes = 4
    assert any("num_classes=4" in p for p in validate_model(m))


def test_validate_model_rejects_accumulator_overflow_risk():
    rng = np.random.default_rng(3)
    m = _tiny_model(rng)
    m.layers[0].bias = np.array([2**31 - 1, 0], dtype=np.int32)
    problems = validate_model(m)
    assert any("accumulator" in p for p in problems)


def test_model_mac_totals_split_conv_from_dense():
    m = _tiny_model(np.random.default_rng(4))
    conv, dense = m.layers
    assert m.conv_macs_exact() == conv.macs_per_inference()
    assert m.total_macs_exact() == conv.macs_per_inference() + dense.macs_per_inference()
    assert m.conv_layer_indices() == [0]


def test_model_save_load_round_trip(tmp_path, small_fixture):
    m, _ = small_fixture
    manifest = save_model(m, tmp_path / "m")
    m2 = load_model(manifest)
    assert m2.name == m.name
    assert m2.num_classes == m.num_classes
    assert len(m2.layers) == len(m.layers)
    for a, b in zip(m.layers, m2.layers):
        assert type(a) is type(b)
        assert a.out_shape == b.out_shape
        if hasattr(a, "weights"):
            assert np.array_equal(a.weights, b.weights)
            assert np.array_equal(a.bias, b.bias)
            assert a.requant == b.requant
            assert a.in_quant == b.in_quant
            assert a.out_quant == b.out_quant
            assert (a.act_min, a.act_max) == (b.act_min, b.act_max)


def test_load_model_error_paths(tmp_path):
    with pytest.raises(ManifestError, match="not found"):
        load_model(tmp_path / "missing.json")

    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(ManifestError, match="JSON"):
        load_model(p)

    p.write_text(json.dumps({"name": "x", "num_classes": 2, "layers": []}))
    with pytest.raises(ManifestError, match="non-empty layer list"):
        load_model(p)

    doc = {
        "name": "x",
        "num_classes": 2,
        "layers": [{"type": "warp", "in_shape": [2, 2, 1]}],
    }
    p.write_text(json.dumps(doc))
    with pytest.raises(ManifestError, match="layer 0.*unknown layer type"):
        load_model(p)


def test_load_model_blob_mismatch(tmp_path):
    m = _tiny_model(np.random.default_rng(5))
    manifest = save_model(m, tmp_path)
    # corrupt the conv weight blob length
    w0 = tmp_path / "w0.bin"
    w0.write_bytes(w0.read_bytes()[:-1])
    with pytest.raises(ManifestError, match="layer 0.*expected"):
        load_model(manifest)
    (tmp_path / "w0.bin").unlink()
    with pytest.raises(ManifestError, match="blob file not found"):
        load_model(manifest)


def test_dataset_validation():
    shape = TensorShape((2, 2, 1))
    q = QuantParams(scale=1.0, zero_point=0)
    samples = np.zeros((3, 4), dtype=np.int8)
    Dataset(shape=shape, quant=q, samples=samples, labels=np.array([0, 1, 255]))
    with pytest.raises(DataFormatError):
        Dataset(shape=shape, quant=q, samples=samples, labels=np.array([0, 1, 256]))
    with pytest.raises(DataFormatError):
        Dataset(shape=shape, quant=q, samples=np.zeros((3, 5), dtype=np.int8), labels=np.zeros(3))
    with pytest.raises(DataFormatError):
        Dataset(shape=shape, quant=q, samples=samples, labels=np.zeros(2))


def test_dataset_file_layout(tmp_path):
    # the first sample byte must sit exactly at the documented header size
    shape = TensorShape((2, 2, 1))
    q = QuantParams(scale=1.0, zero_point=0)
    samples = np.array([[7, 1, 2, 3], [4, 5, 6, -8]], dtype=np.int8)
    d = Dataset(shape=shape, quant=q, samples=samples, labels=np.array([1, 0]))
    path = save_dataset(d, tmp_path / "d.axds")
    raw = path.read_bytes()

    assert raw[:4] == DATASET_MAGIC
    assert struct.unpack_from("<H", raw, 4)[0] == 1
    assert struct.unpack_from("<I", raw, 6)[0] == 2
    assert raw[10] == 3
    assert struct.unpack_from("<3I", raw, 11) == (2, 2, 1)
    header = dataset_header_size(3)
    assert header == 23
    assert len(raw) == header + 2 * 4 + 2
    assert np.int8(raw[header]) == 7
    assert raw[-2:] == bytes([1, 0])


def test_dataset_round_trip(tmp_path, small_fixture):
    m, d = small_fixture
    path = save_dataset(d, tmp_path / "d.axds")
    d2 = load_dataset(path, quant=m.input_quant)
    assert d2.shape == d.shape
    assert np.array_equal(d2.samples, d.samples)
    assert np.array_equal(d2.labels, d.labels)
    assert d2.quant == m.input_quant

    one = d2.sample(0)
    assert isinstance(one, QuantizedTensor)
    assert np.array_equal(one.data, d.samples[0])

    part = d2.slice(3, 9)
    assert len(part) == 6
    assert np.array_equal(part.samples, d.samples[3:9])


def test_load_dataset_error_paths(tmp_path):
    with pytest.raises(DataFormatError, match="not found"):
        load_dataset(tmp_path / "nope.axds")

    p = tmp_path / "bad.axds"
    p.write_bytes(b"WXYZ" + bytes(20))
    with pytest.raises(DataFormatError, match="magic"):
        load_dataset(p)

    shape = TensorShape((4,))
    q = QuantParams(scale=1.0, zero_point=0)
    d = Dataset(shape=shape, quant=q, samples=np.zeros((2, 4), dtype=np.int8), labels=np.zeros(2))
    good = save_dataset(d, tmp_path / "good.axds").read_bytes()

    p.write_bytes(good[:-1])
    with pytest.raises(DataFormatError, match="truncated or oversized"):
        load_dataset(p)
    p.write_bytes(good + b"\x00")
    with pytest.raises(DataFormatError, match="truncated or oversized"):
        load_dataset(p)

    bad_version = bytearray(good)
    bad_version[4] = 9
    p.write_bytes(bytes(bad_version))
    with pytest.raises(DataFormatError, match="version"):
        load_dataset(p)

    bad_rank = bytearray(good)
    bad_rank[10] = 2
    p.write_bytes(bytes(bad_rank))
    with pytest.raises(DataFormatError, match="rank"):
        load_dataset(p)
