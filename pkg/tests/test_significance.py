import numpy as np
import pytest

from axkern.errors import AxkernError, DataFormatError
from axkern.model import Dataset, Model, QuantParams, QuantizedTensor, TensorShape
from axkern.qinfer import conv2d_exact, dense, maxpool
from axkern.significance import (
    RETAIN,
    ExpectedInputs,
    LayerStats,
    SignificanceMap,
    capture_activation_stats,
    compute_model_significance,
    compute_significance,
    load_significance,
    merge_stats,
    save_significance,
)
from conftest import random_conv_layer, random_input
from naive_ref import ref_expected_inputs


def _single_conv_model(layer) -> Model:
    return Model(name="one", num_classes=2, layers=[layer])


def _dataset_for(layer, samples: np.ndarray) -> Dataset:
    return Dataset(
        shape=layer.in_shape,
        quant=layer.in_quant,
        samples=samples.reshape(samples.shape[0], -1),
        labels=np.zeros(samples.shape[0], dtype=np.int64),
    )


def test_expected_inputs_hand_example():
    # 2x2 single-channel input (0, 2, 4, 6), 1x1 kernel, zero point 0:
    # every position is its own receptive field, so E is the plain mean 3
    layer = random_conv_layer(
        np.random.default_rng(0),
        in_h=2, in_w=2, in_c=1, kernel_h=1, kernel_w=1, out_channels=1,
        stride_h=1, stride_w=1, pad_top=0, pad_bottom=0, pad_left=0, pad_right=0,
        in_quant=QuantParams(scale=1.0, zero_point=0),
    )
    samples = np.array([[0, 2, 4, 6]], dtype=np.int8)
    stats = capture_activation_stats(_single_conv_model(layer), _dataset_for(layer, samples))
    assert stats.sample_count == 1
    assert stats.per_layer[0].expected.tolist() == [3.0]


def test_expected_inputs_constant_image():
    rng = np.random.default_rng(1)
    layer = random_conv_layer(rng, in_h=5, in_w=5, in_c=1, pad_top=0, pad_bottom=0,
                              pad_left=0, pad_right=0)
    v, zp = 17, layer.in_quant.zero_point
    samples = np.full((3, 25), v, dtype=np.int8)
    stats = capture_activation_stats(_single_conv_model(layer), _dataset_for(layer, samples))
    assert np.allclose(stats.per_layer[0].expected, v - zp, atol=0)


def test_expected_inputs_match_receptive_field_oracle():
    rng = np.random.default_rng(2)
    for _ in range(15):
        layer = random_conv_layer(rng)
        samples = rng.integers(-128, 128, size=(4, layer.in_shape.num_elements),
                               dtype=np.int64).astype(np.int8)
        stats = capture_activation_stats(_single_conv_model(layer), _dataset_for(layer, samples))
        want = ref_expected_inputs(layer, samples.reshape((-1,) + layer.in_shape.dims))
        assert np.allclose(stats.per_layer[0].expected, want, rtol=0, atol=1e-12)


def test_expected_inputs_deep_layers_match_oracle(small_fixture):
    # advance activations layer by layer through the public kernels, then
    # check the pooled statistics of every conv layer against the oracle
    m, d = small_fixture
    calib = d.slice(0, 16)
    stats = capture_activation_stats(m, calib)

    acts = [calib.sample(i) for i in range(len(calib))]
    for li, layer in enumerate(m.layers):
        if li in stats.per_layer:
            batch = np.stack([a.reshaped() for a in acts])
            want = ref_expected_inputs(layer, batch)
            assert np.allclose(stats.per_layer[li].expected, want, rtol=0, atol=1e-9)
        if layer.type_name == "conv2d":
            acts = [conv2d_exact(layer, a) for a in acts]
        elif layer.type_name == "maxpool":
            acts = [maxpool(layer, a) for a in acts]
        else:
            acts = [dense(layer, QuantizedTensor(TensorShape((layer.in_features,)),
                                                 a.data, a.quant)) for a in acts]


def test_capture_respects_max_samples_and_rejects_empty(small_fixture):
    m, d = small_fixture
    s8 = capture_activation_stats(m, d, max_samples=8)
    assert s8.sample_count == 8
    with pytest.raises(AxkernError, match="empty"):
        capture_activation_stats(m, d.slice(0, 0))


def test_capture_worker_count_changes_nothing(small_fixture):
    m, d = small_fixture
    calib = d.slice(0, 24)
    base = capture_activation_stats(m, calib, workers=1)
    for workers in (2, 3, 8):
        sharded = capture_activation_stats(m, calib, workers=workers)
        assert sharded.sample_count == base.sample_count
        for k in base.per_layer:
            assert np.allclose(sharded.per_layer[k].expected, base.per_layer[k].expected,
                               rtol=0, atol=1e-12)


def test_merge_stats_weighted_and_order_insensitive():
    a = ExpectedInputs(per_layer={0: LayerStats(np.array([1.0, 3.0]), 2)}, sample_count=2)
    b = ExpectedInputs(per_layer={0: LayerStats(np.array([4.0, 0.0]), 6)}, sample_count=6)
    ab = merge_stats([a, b])
    assert ab.sample_count == 8
    assert np.allclose(ab.per_layer[0].expected, [(2 * 1 + 6 * 4) / 8, (2 * 3) / 8], atol=1e-15)
    ba = merge_stats([b, a])
    assert np.allclose(ab.per_layer[0].expected, ba.per_layer[0].expected, rtol=0, atol=1e-12)

    with pytest.raises(AxkernError, match="no statistics"):
        merge_stats([])
    c = ExpectedInputs(per_layer={1: LayerStats(np.array([1.0]), 2)}, sample_count=2)
    with pytest.raises(AxkernError, match="disagree"):
        merge_stats([a, c])


def test_repeated_sample_statistics_collapse():
    rng = np.random.default_rng(3)
    layer = random_conv_layer(rng, pad_top=0, pad_bottom=0, pad_left=0, pad_right=0)
    x = random_input(rng, layer)
    one = capture_activation_stats(_single_conv_model(layer), _dataset_for(layer, x.data[None, :]))
    four = capture_activation_stats(_single_conv_model(layer),
                                    _dataset_for(layer, np.tile(x.data, (4, 1))))
    assert np.array_equal(one.per_layer[0].expected, four.per_layer[0].expected)


def _layer_with_weights(w_rows: np.ndarray, k: int):
    # 1 x k x 1 kernel over a 1 x k x 1 input keeps index bookkeeping trivial
    return random_conv_layer(
        np.random.default_rng(4),
        in_h=1, in_w=k, in_c=1, kernel_h=1, kernel_w=k,
        out_channels=w_rows.shape[0],
        stride_h=1, stride_w=1, pad_top=0, pad_bottom=0, pad_left=0, pad_right=0,
        weights=w_rows.astype(np.int8),
        bias=np.zeros(w_rows.shape[0], dtype=np.int32),
    )


def test_significance_hand_examples():
    layer = _layer_with_weights(np.array([[2, -1, 1]]), 3)
    sig = compute_significance(layer, LayerStats(np.array([1.0, 1.0, 1.0]), 1))
    assert np.allclose(sig, [[1.0, 0.5, 0.5]], atol=0)

    layer = _layer_with_weights(np.array([[5]]), 1)
    sig = compute_significance(layer, LayerStats(np.array([3.0]), 1))
    assert sig.tolist() == [[1.0]]

    # a zero weight contributes nothing regardless of its input statistics
    layer = _layer_with_weights(np.array([[0, 4]]), 2)
    sig = compute_significance(layer, LayerStats(np.array([9.0, 1.0]), 1))
    assert sig[0, 0] == 0.0
    assert sig[0, 1] == 1.0


def test_significance_zero_denominator_pins_channel():
    layer = _layer_with_weights(np.array([[1, -1], [1, 1]]), 2)
    sig = compute_significance(layer, LayerStats(np.array([1.0, 1.0]), 1))
    assert np.all(np.isinf(sig[0]))
    assert sig[0, 0] == RETAIN
    assert np.allclose(sig[1], [0.5, 0.5], atol=0)


def test_significance_bias_is_excluded():
    # same weights, wildly different bias: identical scores
    layer_a = _layer_with_weights(np.array([[3, 2, -1]]), 3)
    layer_b = _layer_with_weights(np.array([[3, 2, -1]]), 3)
    layer_b.bias = np.array([100000], dtype=np.int32)
    stats = LayerStats(np.array([2.0, 1.0, 5.0]), 1)
    assert np.array_equal(compute_significance(layer_a, stats), compute_significance(layer_b, stats))


def test_significance_rescale_invariance():
    rng = np.random.default_rng(5)
    for _ in range(20):
        rows = rng.integers(-63, 64, size=(3, 9), dtype=np.int64)
        layer = _layer_with_weights(rows, 9)
        stats = LayerStats(rng.normal(size=9) * 10, 1)
        base = compute_significance(layer, stats)
        for factor in (2, -1):
            scaled = _layer_with_weights(rows * factor, 9)
            got = compute_significance(scaled, stats)
            finite = np.isfinite(base)
            assert np.array_equal(finite, np.isfinite(got))
            assert np.allclose(got[finite], base[finite], rtol=0, atol=1e-12)


def test_significance_size_mismatch_rejected():
    layer = _layer_with_weights(np.array([[1, 2]]), 2)
    with pytest.raises(AxkernError, match="weight indices"):
        compute_significance(layer, LayerStats(np.array([1.0, 2.0, 3.0]), 1))


def test_model_significance_covers_all_conv_layers(small_fixture):
    m, d = small_fixture
    stats = capture_activation_stats(m, d.slice(0, 32))
    sig = compute_model_significance(m, stats)
    assert sorted(sig.per_layer) == m.conv_layer_indices()
    for i in m.conv_layer_indices():
        layer = m.layers[i]
        assert sig.per_layer[i].shape == (layer.out_channels, layer.weights_per_channel)

    missing = ExpectedInputs(per_layer={}, sample_count=1)
    with pytest.raises(AxkernError, match="no calibration statistics"):
        compute_model_significance(m, missing)


def test_significance_file_round_trip(tmp_path):
    sig = SignificanceMap(per_layer={
        0: np.array([[0.5, RETAIN], [0.0, 1.25]]),
        4: np.array([[1e-300, 2.0, 3.0]]),
    })
    path = save_significance(sig, tmp_path / "s.axsg")
    back = load_significance(path)
    assert sorted(back.per_layer) == [0, 4]
    for k in sig.per_layer:
        assert np.array_equal(back.per_layer[k], sig.per_layer[k])


def test_significance_file_error_paths(tmp_path):
    with pytest.raises(DataFormatError, match="not found"):
        load_significance(tmp_path / "nope")

    p = tmp_path / "bad"
    p.write_bytes(b"NOPE" + bytes(8))
    with pytest.raises(DataFormatError, match="magic"):
        load_significance(p)

    good = save_significance(SignificanceMap(per_layer={0: np.array([[1.0]])}),
                             tmp_path / "good").read_bytes()
    p.write_bytes(good[:-4])
    with pytest.raises(DataFormatError, match="truncated"):
        load_significance(p)
    p.write_bytes(good + b"\x00")
    with pytest.raises(DataFormatError, match="trailing"):
        load_significance(p)
