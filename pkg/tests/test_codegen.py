import json

import numpy as np
import pytest

from axkern.approx import SkipPlan
from axkern.codegen import (
    EmissionBundle,
    count_mac_expressions,
    emit_layer_kernel,
    emit_network,
    estimate_footprint,
    write_bundle,
)
from axkern.dse import CostModel
from axkern.errors import AxkernError
from axkern.qinfer import pack_weight_pair
from conftest import random_conv_layer


def _flat_layer(weights, **over):
    w = np.asarray(weights, dtype=np.int8)
    return random_conv_layer(
        np.random.default_rng(0),
        in_h=1, in_w=w.size, in_c=1, kernel_h=1, kernel_w=w.size, out_channels=1,
        stride_h=1, stride_w=1, pad_top=0, pad_bottom=0, pad_left=0, pad_right=0,
        weights=w, bias=np.array([11], dtype=np.int32), **over,
    )


def test_kernel_pairs_weights_in_ascending_index_order():
    layer = _flat_layer([64, 20, -1, 7])
    k = emit_layer_kernel(layer, None, "ax", 0)
    assert k.retained_pairs == 2
    assert k.retained_single_macs == 0
    assert f"ax_dmac(acc, {pack_weight_pair(64, 20)}, t[0], t[1])" in k.source_text
    assert f"ax_dmac(acc, {pack_weight_pair(-1, 7)}, t[2], t[3])" in k.source_text
    assert "ax_dmac(acc, 4194324, t[0], t[1])" in k.source_text
    assert "int32_t acc = 11;" in k.source_text


def test_kernel_odd_tail_becomes_single_mac():
    layer = _flat_layer([64, 20, 9])
    k = emit_layer_kernel(layer, None, "ax", 0)
    assert (k.retained_pairs, k.retained_single_macs) == (1, 1)
    assert "ax_mac(acc, 9, t[2])" in k.source_text


def test_kernel_skipped_products_are_textually_absent():
    layer = _flat_layer([64, 20, -1, 7])
    k = emit_layer_kernel(layer, [[1]], "ax", 0)
    assert (k.retained_pairs, k.retained_single_macs) == (1, 1)
    # retained indices 0, 2 pair up; 3 is the tail; 1 never appears
    assert f"ax_dmac(acc, {pack_weight_pair(64, -1)}, t[0], t[2])" in k.source_text
    assert "ax_mac(acc, 7, t[3])" in k.source_text
    assert "t[1]" not in k.source_text


def test_kernel_fully_skipped_channel_is_bias_only():
    layer = _flat_layer([5, -3])
    k = emit_layer_kernel(layer, [[0, 1]], "ax", 0)
    assert (k.retained_pairs, k.retained_single_macs) == (0, 0)
    assert count_mac_expressions(k.source_text, "ax") == (0, 0)
    assert "int32_t acc = 11;" in k.source_text
    assert "ax_requant(acc," in k.source_text


def test_kernel_counts_match_emitted_expressions():
    rng = np.random.default_rng(60)
    for _ in range(20):
        layer = random_conv_layer(rng)
        k = layer.weights_per_channel
        skips = [np.flatnonzero(rng.random(k) < 0.4) for _ in range(layer.out_channels)]
        kern = emit_layer_kernel(layer, skips, "net", 3)
        dual, single = count_mac_expressions(kern.source_text, "net")
        assert dual == kern.retained_pairs
        assert single == kern.retained_single_macs
        retained_total = sum(k - len(s) for s in skips)
        assert 2 * kern.retained_pairs + kern.retained_single_macs == retained_total


def test_kernel_bounds_guard_only_with_padding():
    rng = np.random.default_rng(61)
    padded = random_conv_layer(rng, pad_top=1, pad_bottom=1, pad_left=1, pad_right=1)
    unpadded = random_conv_layer(rng, pad_top=0, pad_bottom=0, pad_left=0, pad_right=0)
    assert "if (iy < 0" in emit_layer_kernel(padded, None, "ax", 0).source_text
    assert "if (iy < 0" not in emit_layer_kernel(unpadded, None, "ax", 0).source_text


def test_kernel_rejects_bad_skip_indices():
    layer = _flat_layer([1, 2, 3])
    with pytest.raises(AxkernError, match="out of range"):
        emit_layer_kernel(layer, [[3]], "ax", 0)
    with pytest.raises(AxkernError, match="channels"):
        emit_layer_kernel(layer, [[0], [1]], "ax", 0)


def test_emit_network_structure(small_fixture):
    m, _ = small_fixture
    bundle = emit_network(m, None, prefix="fx")
    files = bundle.files()

    assert set(files) == {"fx_net.h", "fx_net.c"} | {f"fx_layer{i}.c" for i in m.conv_layer_indices()}
    header = files["fx_net.h"]
    assert f"#define FX_IN_LEN {m.input_shape.num_elements}" in header
    assert f"#define FX_NUM_CLASSES {m.num_classes}" in header
    assert "static inline int32_t fx_dmac" in header
    assert "static inline int8_t fx_requant" in header
    assert "int32_t fx_infer(const int8_t input[FX_IN_LEN], int8_t logits_out[FX_NUM_CLASSES]);" in header

    net = files["fx_net.c"]
    assert "int32_t fx_infer(" in net
    for i, layer in enumerate(m.layers):
        sym = bundle.symbols["layers"][i]["symbol"]
        assert f"{sym}(" in net

    assert bundle.symbols["entry"] == "fx_infer"
    assert bundle.symbols["in_len"] == m.input_shape.num_elements
    assert bundle.symbols["num_classes"] == m.num_classes


def test_emit_network_is_byte_deterministic(small_fixture):
    m, _ = small_fixture
    mask = {m.conv_layer_indices()[1]: np.zeros(
        (m.layers[m.conv_layer_indices()[1]].out_channels,
         m.layers[m.conv_layer_indices()[1]].weights_per_channel), dtype=bool)}
    mask[m.conv_layer_indices()[1]][0, :5] = True
    plan = SkipPlan(masks=mask)
    a = emit_network(m, plan, prefix="ax").files()
    b = emit_network(m, plan, prefix="ax").files()
    assert a == b


def test_emit_network_prefix_validation(small_fixture):
    m, _ = small_fixture
    for bad in ("", "9lives", "has-dash", "a b"):
        with pytest.raises(AxkernError, match="identifier"):
            emit_network(m, None, prefix=bad)


def test_bundle_totals_match_plan_static_ops(small_fixture):
    m, _ = small_fixture
    plan = SkipPlan(masks={
        i: np.random.default_rng(62 + i).random(
            (m.layers[i].out_channels, m.layers[i].weights_per_channel)) < 0.3
        for i in m.conv_layer_indices()
    })
    bundle = emit_network(m, plan, prefix="ax")
    pairs, singles = plan.retained_static_ops(m)
    assert bundle.retained_pairs == pairs
    assert bundle.retained_single_macs == singles


def test_estimate_footprint_paths_and_budget(small_fixture):
    m, _ = small_fixture
    plan = SkipPlan()
    bundle = emit_network(m, plan, prefix="ax")
    cost = CostModel()

    by_bundle = estimate_footprint(bundle, cost, 1 << 21)
    by_plan = estimate_footprint((m, plan), cost, 1 << 21)
    assert by_bundle.flash_bytes == by_plan.flash_bytes
    pairs, singles = plan.retained_static_ops(m)
    assert by_bundle.flash_bytes == cost.flash(pairs, singles)

    exact_fit = estimate_footprint(bundle, cost, by_bundle.flash_bytes)
    assert exact_fit.fits and exact_fit.utilization == 1.0
    too_small = estimate_footprint(bundle, cost, by_bundle.flash_bytes - 1)
    assert not too_small.fits

    with pytest.raises(AxkernError, match="budget"):
        estimate_footprint(bundle, cost, 0)


def test_more_skips_shrink_the_footprint(small_fixture):
    m, _ = small_fixture
    cost = CostModel()
    budget = 1 << 21
    sizes = []
    for frac in (0.0, 0.3, 0.7):
        plan = SkipPlan(masks={
            i: np.random.default_rng(63).random(
                (m.layers[i].out_channels, m.layers[i].weights_per_channel)) < frac
            for i in m.conv_layer_indices()
        })
        sizes.append(estimate_footprint((m, plan), cost, budget).flash_bytes)
    assert sizes[0] > sizes[1] > sizes[2]


def test_write_bundle_outputs_and_manifest(tmp_path, small_fixture):
    m, _ = small_fixture
    bundle = emit_network(m, None, prefix="ax")
    paths = write_bundle(bundle, tmp_path)
    names = {p.name for p in paths}
    assert names == set(bundle.files()) | {"ax_manifest.json"}
    for name, text in bundle.files().items():
        assert (tmp_path / name).read_text(encoding="utf-8") == text

    manifest = json.loads((tmp_path / "ax_manifest.json").read_text())
    assert manifest["entry"] == "ax_infer"
    assert len(manifest["kernels"]) == len(m.conv_layer_indices())
    for entry, kern in zip(manifest["kernels"], bundle.kernels):
        assert entry["layer_index"] == kern.layer_index
        assert entry["retained_pairs"] == kern.retained_pairs
        assert entry["retained_single_macs"] == kern.retained_single_macs
