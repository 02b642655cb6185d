"""Threshold design-space exploration and Pareto analysis.

Uniform mode sweeps one shared tau over every non-empty subset of the conv
layers; per-layer mode sweeps the full cross product of per-layer tau values.
Both enumerations are deterministic and always start with the all-exact
config, so config ordinal 0 is the baseline.  Evaluation may fan out across
worker threads; results are keyed by ordinal and therefore identical for any
worker count.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .approx import ApproxConfig, build_skip_plan, evaluate_config
from .errors import AxkernError, DataFormatError
from .model import Dataset, Model
from .significance import SignificanceMap


@dataclass(frozen=True)
class CostModel:
    """Linear cycle and flash estimates for a generated kernel set.

    cycles = sum over layers of (overhead + cycles_per_mac * retained MACs);
    flash = base + bytes_per_pair per retained dual-MAC pair, with an odd
    retained product costing half a pair rounded up.
    """

    cycles_per_mac: float = 1.0
    layer_overhead_cycles: float = 0.0
    flash_bytes_per_pair: int = 8
    flash_base_bytes: int = 4096

    def cycles(self, total_macs: int, num_layers: int) -> float:
        return num_layers * self.layer_overhead_cycles + self.cycles_per_mac * total_macs

    def flash(self, retained_pairs: int, retained_singles: int) -> int:
        per_single = (self.flash_bytes_per_pair + 1) // 2
        return self.flash_base_bytes + self.flash_bytes_per_pair * retained_pairs + per_single * retained_singles


@dataclass(frozen=True)
class DsePlanSpec:
    """Enumeration recipe for the threshold sweep.

    layers restricts the sweep to the given conv ordinals (None = all conv
    layers).  cap bounds the number of configs; enumeration truncates there.
    """

    mode: str = "uniform"
    tau_min: float = 0.0
    tau_max: float = 0.1
    tau_step: float = 0.01
    layers: tuple[int, ...] | None = None
    cap: int = 10000
    threads: int = 1

    def violations(self) -> list[str]:
        out = []
        if self.mode not in ("uniform", "per-layer"):
            out.append(f"mode must be uniform or per-layer, got {self.mode!r}")
        if not (self.tau_min >= 0.0 and math.isfinite(self.tau_min)):
            out.append("tau_min must be finite and >= 0")
        if not (self.tau_max >= self.tau_min):
            out.append("tau_max must be >= tau_min")
        if not (self.tau_step > 0.0 and math.isfinite(self.tau_step)):
            out.append("tau_step must be finite and > 0")
        if self.cap < 1:
            out.append("cap must be >= 1")
        if self.threads < 1:
            out.append("threads must be >= 1")
        return out


def tau_grid(spec: DsePlanSpec) -> list[float]:
    """Inclusive arithmetic grid from tau_min to tau_max."""
    count = int(math.floor((spec.tau_max - spec.tau_min) / spec.tau_step + 1e-9)) + 1
    return [round(spec.tau_min + i * spec.tau_step, 12) for i in range(count)]


@dataclass
class ParetoPoint:
    """One evaluated config with its measured quality and modeled costs."""

    config_id: int
    config: ApproxConfig
    layer_mask: int
    taus: tuple[float | None, ...]
    conv_layers: tuple[int, ...]
    accuracy: float
    conv_mac_total: int
    total_mac_total: int
    mac_reduction: float
    retained_pairs: int
    retained_singles: int
    est_cycles: float
    est_flash: int
    on_front: bool = False


def enumerate_configs(m: Model, spec: DsePlanSpec) -> list[ApproxConfig]:
    """Deterministic config list; ordinal 0 is always the all-exact config.

    Uniform mode: layer subsets ordered by ascending bitmask, tau ascending
    within each subset.  Per-layer mode: every conv layer enabled, tau tuples
    in lexicographic order.  Truncated at spec.cap.
    """
    problems = spec.violations()
    if problems:
        raise AxkernError("; ".join(problems))
    conv = m.conv_layer_indices()
    if spec.layers is not None:
        bad = [o for o in spec.layers if o < 0 or o >= len(conv)]
        if bad:
            raise AxkernError(f"layer ordinals out of range: {bad}")
        conv = [conv[o] for o in sorted(set(spec.layers))]
    if not conv:
        raise AxkernError("model has no conv layers to sweep")
    grid = tau_grid(spec)
    configs: list[ApproxConfig] = [ApproxConfig({})]
    if spec.mode == "uniform":
        for mask in range(1, 1 << len(conv)):
            chosen = [conv[i] for i in range(len(conv)) if mask >> i & 1]
            for tau in grid:
                if len(configs) >= spec.cap:
                    return configs
                configs.append(ApproxConfig({li: tau for li in chosen}))
    else:
        for taus in itertools.product(grid, repeat=len(conv)):
            if len(configs) >= spec.cap:
                return configs
            configs.append(ApproxConfig(dict(zip(conv, taus))))
    return configs


def _evaluate_one(
    m: Model, sig: SignificanceMap, d: Dataset, cost: CostModel, conv: list[int], cid: int, cfg: ApproxConfig
) -> ParetoPoint:
    plan = build_skip_plan(sig, cfg)
    res = evaluate_config(m, plan, d)
    pairs, singles = plan.retained_static_ops(m)
    mask = 0
    taus: list[float | None] = []
    for ordinal, layer_index in enumerate(conv):
        if layer_index in cfg.thresholds:
            mask |= 1 << ordinal
            taus.append(cfg.thresholds[layer_index])
        else:
            taus.append(None)
    return ParetoPoint(
        config_id=cid,
        config=cfg,
        layer_mask=mask,
        taus=tuple(taus),
        conv_layers=tuple(conv),
        accuracy=res.accuracy,
        conv_mac_total=res.conv_mac_total,
        total_mac_total=res.total_mac_total,
        mac_reduction=res.mac_reduction,
        retained_pairs=pairs,
        retained_singles=singles,
        est_cycles=cost.cycles(res.total_mac_total, len(m.layers)),
        est_flash=cost.flash(pairs, singles),
    )


def run_dse(
    m: Model, sig: SignificanceMap, spec: DsePlanSpec, d: Dataset, cost: CostModel = CostModel()
) -> list[ParetoPoint]:
    """Evaluate every enumerated config and mark the Pareto front.

    The result order is the enumeration order regardless of spec.threads.
    """
    configs = enumerate_configs(m, spec)
    conv = m.conv_layer_indices()
    if spec.threads <= 1 or len(configs) < 2:
        points = [_evaluate_one(m, sig, d, cost, conv, i, c) for i, c in enumerate(configs)]
    else:
        with ThreadPoolExecutor(max_workers=spec.threads) as pool:
            futures = [
                pool.submit(_evaluate_one, m, sig, d, cost, conv, i, c) for i, c in enumerate(configs)
            ]
            points = [f.result() for f in futures]
    return pareto_front(points)


def pareto_front(points: list[ParetoPoint]) -> list[ParetoPoint]:
    """Flag non-dominated points (maximize accuracy, minimize conv MACs).

    A point is dominated when another is at least as good on both axes and
    strictly better on one; exact duplicates of a front point stay on the
    front.  Point order is preserved.
    """
    order = sorted(range(len(points)), key=lambda i: points[i].conv_mac_total)
    best_prev = -math.inf
    i = 0
    while i < len(order):
        j = i
        mac = points[order[i]].conv_mac_total
        while j < len(order) and points[order[j]].conv_mac_total == mac:
            j += 1
        group = order[i:j]
        gmax = max(points[g].accuracy for g in group)
        for g in group:
            points[g].on_front = points[g].accuracy == gmax and gmax > best_prev
        best_prev = max(best_prev, gmax)
        i = j
    return points


def estimate_cost(point: ParetoPoint, m: Model, cost: CostModel) -> tuple[float, int]:
    """(modeled cycles, modeled flash bytes) for one evaluated point."""
    return (
        cost.cycles(point.total_mac_total, len(m.layers)),
        cost.flash(point.retained_pairs, point.retained_singles),
    )


def select_config(
    points: list[ParetoPoint], baseline_accuracy: float, max_loss: float, cost: CostModel
) -> ApproxConfig:
    """Cheapest front config whose accuracy stays within max_loss of baseline.

    Ranking: fewest modeled cycles, then fewest conv MACs, then lowest config
    ordinal.  Per-layer overhead is identical across configs of one model, so
    cycle ranking reduces to cycles_per_mac * total MACs.  With no qualifying
    point the all-exact config is returned.
    """
    if max_loss < 0.0:
        raise AxkernError("max_loss must be >= 0")
    floor_acc = baseline_accuracy - max_loss
    qualifying = [p for p in points if p.on_front and p.accuracy >= floor_acc]
    if not qualifying:
        return ApproxConfig({})
    best = min(
        qualifying,
        key=lambda p: (cost.cycles_per_mac * p.total_mac_total, p.conv_mac_total, p.config_id),
    )
    return best.config


# ---------------------------------------------------------------------------
# Results CSV (UTF-8, '\n' line ends, '.' decimal separator)
# ---------------------------------------------------------------------------


def _csv_header(conv_layers: tuple[int, ...]) -> str:
    taus = ",".join(f"tau_l{li}" for li in conv_layers)
    return f"config_id,layer_mask,{taus},accuracy,conv_macs,total_macs,mac_reduction,est_cycles,est_flash,on_front"


def export_results(points: list[ParetoPoint], path: str | Path) -> Path:
    """Write every point, one row per config, in enumeration order."""
    if not points:
        raise AxkernError("no points to export")
    conv_layers = points[0].conv_layers
    lines = [_csv_header(conv_layers)]
    for p in points:
        taus = ",".join("" if t is None else repr(float(t)) for t in p.taus)
        lines.append(
            f"{p.config_id},{p.layer_mask},{taus},{p.accuracy!r},{p.conv_mac_total},"
            f"{p.total_mac_total},{p.mac_reduction!r},{p.est_cycles!r},{p.est_flash},{int(p.on_front)}"
        )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def load_results(path: str | Path) -> list[ParetoPoint]:
    """Parse a results CSV back into points (configs included)."""
    path = Path(path)
    if not path.is_file():
        raise DataFormatError(f"results file not found: {path}")
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise DataFormatError("results file is empty")
    header = lines[0].split(",")
    try:
        tau_cols = [(i, int(name[5:])) for i, name in enumerate(header) if name.startswith("tau_l")]
        fixed = {name: header.index(name) for name in (
            "config_id", "layer_mask", "accuracy", "conv_macs", "total_macs",
            "mac_reduction", "est_cycles", "est_flash", "on_front",
        )}
    except ValueError as e:
        raise DataFormatError(f"results header is malformed: {e}") from e
    conv_layers = tuple(li for _, li in tau_cols)
    points = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cells = line.split(",")
        if len(cells) != len(header):
            raise DataFormatError(f"row {lineno} has {len(cells)} cells, header has {len(header)}")
        try:
            taus = tuple(None if cells[i] == "" else float(cells[i]) for i, _ in tau_cols)
            thresholds = {li: t for (_, li), t in zip(tau_cols, taus) if t is not None}
            points.append(
                ParetoPoint(
                    config_id=int(cells[fixed["config_id"]]),
                    config=ApproxConfig(thresholds),
                    layer_mask=int(cells[fixed["layer_mask"]]),
                    taus=taus,
                    conv_layers=conv_layers,
                    accuracy=float(cells[fixed["accuracy"]]),
                    conv_mac_total=int(cells[fixed["conv_macs"]]),
                    total_mac_total=int(cells[fixed["total_macs"]]),
                    mac_reduction=float(cells[fixed["mac_reduction"]]),
                    retained_pairs=0,
                    retained_singles=0,
                    est_cycles=float(cells[fixed["est_cycles"]]),
                    est_flash=int(cells[fixed["est_flash"]]),
                    on_front=cells[fixed["on_front"]] == "1",
                )
            )
        except ValueError as e:
            raise DataFormatError(f"row {lineno} is malformed: {e}") from e
    return points
