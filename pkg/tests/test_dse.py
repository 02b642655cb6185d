import numpy as np
import pytest

from axkern.approx import ApproxConfig
from axkern.dse import (
    CostModel,
    DsePlanSpec,
    ParetoPoint,
    enumerate_configs,
    estimate_cost,
    export_results,
    load_results,
    pareto_front,
    run_dse,
    select_config,
    tau_grid,
)
from axkern.errors import AxkernError, DataFormatError
from axkern.significance import capture_activation_stats, compute_model_significance
from naive_ref import ref_pareto_flags


def _point(cid, acc, mac, total=None, **over):
    kw = dict(
        config_id=cid,
        config=ApproxConfig({}),
        layer_mask=0,
        taus=(),
        conv_layers=(),
        accuracy=acc,
        conv_mac_total=mac,
        total_mac_total=total if total is not None else mac,
        mac_reduction=0.0,
        retained_pairs=0,
        retained_singles=0,
        est_cycles=0.0,
        est_flash=0,
    )
    kw.update(over)
    return ParetoPoint(**kw)


@pytest.fixture(scope="module")
def fixture_sig(small_fixture):
    m, d = small_fixture
    stats = capture_activation_stats(m, d.slice(0, 48))
    return compute_model_significance(m, stats)


def test_tau_grid_values():
    assert tau_grid(DsePlanSpec(tau_min=0.0, tau_max=0.1, tau_step=0.01)) == [
        0.0, 0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1,
    ]
    assert tau_grid(DsePlanSpec(tau_min=0.0, tau_max=0.05, tau_step=0.05)) == [0.0, 0.05]
    # 0.3 / 0.1 is 2.9999... in floats; the grid must still include 0.3
    assert tau_grid(DsePlanSpec(tau_min=0.0, tau_max=0.3, tau_step=0.1)) == [0.0, 0.1, 0.2, 0.3]
    assert tau_grid(DsePlanSpec(tau_min=0.0, tau_max=0.0, tau_step=0.01)) == [0.0]


def test_plan_spec_violations():
    assert DsePlanSpec().violations() == []
    assert DsePlanSpec(mode="sideways").violations()
    assert DsePlanSpec(tau_min=-0.1).violations()
    assert DsePlanSpec(tau_max=0.0, tau_min=0.1).violations()
    assert DsePlanSpec(tau_step=0.0).violations()
    assert DsePlanSpec(cap=0).violations()
    assert DsePlanSpec(threads=0).violations()


def test_uniform_enumeration_count_and_order(small_fixture):
    m, _ = small_fixture
    conv = m.conv_layer_indices()
    assert len(conv) == 3
    spec = DsePlanSpec(mode="uniform", tau_min=0.0, tau_max=0.1, tau_step=0.05)
    configs = enumerate_configs(m, spec)
    # exact config plus 7 non-empty subsets x 3 grid values
    assert len(configs) == 1 + 7 * 3
    assert configs[0].is_exact
    assert configs[1].thresholds == {conv[0]: 0.0}
    assert configs[2].thresholds == {conv[0]: 0.05}
    assert configs[3].thresholds == {conv[0]: 0.1}
    assert configs[4].thresholds == {conv[1]: 0.0}
    assert configs[7].thresholds == {conv[0]: 0.0, conv[1]: 0.0}
    assert configs[-1].thresholds == {conv[0]: 0.1, conv[1]: 0.1, conv[2]: 0.1}


def test_uniform_enumeration_single_layer_count(small_fixture):
    m, _ = small_fixture
    spec = DsePlanSpec(mode="uniform", tau_min=0.0, tau_max=0.1, tau_step=0.001, layers=(0,))
    configs = enumerate_configs(m, spec)
    assert len(configs) == 102  # exact + 101 grid points on one layer


def test_per_layer_enumeration_lexicographic(small_fixture):
    m, _ = small_fixture
    conv = m.conv_layer_indices()
    spec = DsePlanSpec(mode="per-layer", tau_min=0.0, tau_max=0.02, tau_step=0.01)
    configs = enumerate_configs(m, spec)
    assert len(configs) == 1 + 3**3
    assert configs[0].is_exact
    assert configs[1].thresholds == {conv[0]: 0.0, conv[1]: 0.0, conv[2]: 0.0}
    assert configs[2].thresholds == {conv[0]: 0.0, conv[1]: 0.0, conv[2]: 0.01}
    assert configs[4].thresholds == {conv[0]: 0.0, conv[1]: 0.01, conv[2]: 0.0}


def test_enumeration_cap_and_layer_restriction(small_fixture):
    m, _ = small_fixture
    conv = m.conv_layer_indices()
    spec = DsePlanSpec(mode="uniform", cap=5)
    assert len(enumerate_configs(m, spec)) == 5

    only_second = DsePlanSpec(mode="uniform", tau_min=0.0, tau_max=0.0, tau_step=0.01, layers=(1,))
    configs = enumerate_configs(m, only_second)
    assert len(configs) == 2
    assert configs[1].thresholds == {conv[1]: 0.0}

    with pytest.raises(AxkernError, match="ordinals"):
        enumerate_configs(m, DsePlanSpec(layers=(7,)))
    with pytest.raises(AxkernError):
        enumerate_configs(m, DsePlanSpec(mode="bogus"))


def test_pareto_front_hand_cases():
    # strictly improving chain: everything on the front
    pts = [_point(0, 0.5, 100), _point(1, 0.8, 200), _point(2, 0.9, 300)]
    pareto_front(pts)
    assert [p.on_front for p in pts] == [True, True, True]

    # dominated middle point
    pts = [_point(0, 0.9, 300), _point(1, 0.5, 300), _point(2, 0.8, 100)]
    pareto_front(pts)
    assert [p.on_front for p in pts] == [True, False, True]

    # duplicates on both axes stay on the front together
    pts = [_point(0, 0.9, 100), _point(1, 0.9, 100)]
    pareto_front(pts)
    assert [p.on_front for p in pts] == [True, True]

    # equal MAC group: only the accuracy maximum survives
    pts = [_point(0, 0.7, 100), _point(1, 0.9, 100), _point(2, 0.8, 100)]
    pareto_front(pts)
    assert [p.on_front for p in pts] == [False, True, False]

    # higher MAC with no accuracy gain is dominated
    pts = [_point(0, 0.9, 100), _point(1, 0.9, 200)]
    pareto_front(pts)
    assert [p.on_front for p in pts] == [True, False]


def test_pareto_front_matches_brute_force_oracle():
    rng = np.random.default_rng(50)
    for _ in range(5):
        n = 300
        acc = np.round(rng.uniform(0, 1, size=n), 2)  # force ties
        mac = rng.integers(0, 50, size=n)
        pts = [_point(i, float(acc[i]), int(mac[i])) for i in range(n)]
        pareto_front(pts)
        want = ref_pareto_flags(acc, mac)
        got = np.array([p.on_front for p in pts])
        assert np.array_equal(got, want)


def test_cost_model_arithmetic():
    cost = CostModel(cycles_per_mac=2.0, layer_overhead_cycles=10.0,
                     flash_bytes_per_pair=8, flash_base_bytes=4096)
    assert cost.cycles(1000, 5) == 5 * 10.0 + 2.0 * 1000
    assert cost.flash(10, 3) == 4096 + 8 * 10 + 4 * 3
    odd = CostModel(flash_bytes_per_pair=7)
    assert odd.flash(0, 1) == 4096 + 4  # singles round up to half a pair


def test_select_config_ranking_and_floor():
    cost = CostModel()
    pts = [
        _point(0, 1.0, 1000, total=1200, on_front=True),
        _point(1, 1.0, 800, total=1000, on_front=True),
        _point(2, 0.9, 500, total=700, on_front=True),
        _point(3, 0.8, 300, total=500, on_front=True),
        _point(4, 0.95, 600, total=800, on_front=False),  # off front, never eligible
    ]
    for i, p in enumerate(pts):
        p.config = ApproxConfig({0: float(i)}) if i else ApproxConfig({})

    assert select_config(pts, 1.0, 0.0, cost).thresholds == {0: 1.0}
    assert select_config(pts, 1.0, 0.1, cost).thresholds == {0: 2.0}
    assert select_config(pts, 1.0, 1.0, cost).thresholds == {0: 3.0}

    # nothing qualifies: fall back to exact
    assert select_config(pts, 2.0, 0.0, cost).is_exact
    with pytest.raises(AxkernError):
        select_config(pts, 1.0, -0.5, cost)


def test_select_config_tie_breaks_on_conv_macs_then_ordinal():
    cost = CostModel()
    pts = [
        _point(0, 1.0, 900, total=1000, on_front=True),
        _point(1, 1.0, 700, total=1000, on_front=True),
        _point(2, 1.0, 700, total=1000, on_front=True),
    ]
    pts[1].config = ApproxConfig({0: 0.5})
    pts[2].config = ApproxConfig({0: 0.7})
    assert select_config(pts, 1.0, 0.0, cost).thresholds == {0: 0.5}


def test_run_dse_marks_front_and_is_thread_invariant(small_fixture, fixture_sig):
    m, d = small_fixture
    evald = d.slice(96, len(d))
    spec1 = DsePlanSpec(mode="uniform", tau_min=0.0, tau_max=0.02, tau_step=0.01, threads=1)
    spec4 = DsePlanSpec(mode="uniform", tau_min=0.0, tau_max=0.02, tau_step=0.01, threads=4)
    pts1 = run_dse(m, fixture_sig, spec1, evald)
    pts4 = run_dse(m, fixture_sig, spec4, evald)
    assert len(pts1) == 1 + 7 * 3
    assert pts1[0].config.is_exact
    assert any(p.on_front for p in pts1)
    for a, b in zip(pts1, pts4):
        assert (a.config_id, a.layer_mask, a.taus) == (b.config_id, b.layer_mask, b.taus)
        assert (a.accuracy, a.conv_mac_total, a.total_mac_total) == (b.accuracy, b.conv_mac_total, b.total_mac_total)
        assert (a.mac_reduction, a.est_cycles, a.est_flash, a.on_front) == (b.mac_reduction, b.est_cycles, b.est_flash, b.on_front)

    p0 = pts1[0]
    assert p0.conv_mac_total == m.conv_macs_exact()
    assert p0.total_mac_total == m.total_macs_exact()
    assert p0.mac_reduction == 0.0
    cost = CostModel()
    assert estimate_cost(p0, m, cost) == (p0.est_cycles, p0.est_flash)


def test_results_csv_round_trip(tmp_path, small_fixture, fixture_sig):
    m, d = small_fixture
    spec = DsePlanSpec(mode="uniform", tau_min=0.0, tau_max=0.01, tau_step=0.01)
    pts = run_dse(m, fixture_sig, spec, d.slice(96, len(d)))
    path = export_results(pts, tmp_path / "r.csv")

    header = path.read_text().splitlines()[0]
    conv = m.conv_layer_indices()
    tau_cols = ",".join(f"tau_l{i}" for i in conv)
    assert header == f"config_id,layer_mask,{tau_cols},accuracy,conv_macs,total_macs,mac_reduction,est_cycles,est_flash,on_front"

    back = load_results(path)
    assert len(back) == len(pts)
    for a, b in zip(pts, back):
        assert a.config_id == b.config_id
        assert a.layer_mask == b.layer_mask
        assert a.taus == b.taus
        assert a.config.thresholds == b.config.thresholds
        assert a.accuracy == b.accuracy
        assert a.conv_mac_total == b.conv_mac_total
        assert a.total_mac_total == b.total_mac_total
        assert a.mac_reduction == b.mac_reduction
        assert a.est_cycles == b.est_cycles
        assert a.est_flash == b.est_flash
        assert a.on_front == b.on_front


def test_results_csv_error_paths(tmp_path):
    with pytest.raises(AxkernError, match="no points"):
        export_results([], tmp_path / "x.csv")
    with pytest.raises(DataFormatError, match="not found"):
        load_results(tmp_path / "missing.csv")
    p = tmp_path / "short.csv"
    p.write_text("config_id,layer_mask,tau_l0,accuracy,conv_macs,total_macs,mac_reduction,est_cycles,est_flash,on_front\n1,0\n")
    with pytest.raises(DataFormatError, match="cells"):
        load_results(p)
