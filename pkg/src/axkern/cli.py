"""Command line interface.

Subcommands cover the full flow: fixture -> inspect -> analyze -> dse ->
select -> codegen, plus simulate for golden outputs consumable by external
harnesses.  Exit codes: 0 success, 2 invalid input or validation failure,
3 unmet resource constraint, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .approx import (
    ApproxConfig,
    SkipPlan,
    build_skip_plan,
    format_skip_plan,
    infer_approx,
    load_config,
    save_config,
    save_skip_plan,
)
from .codegen import emit_network, estimate_footprint, write_bundle
from .dse import CostModel, DsePlanSpec, export_results, load_results, run_dse, select_config
from .errors import AxkernError, BudgetError
from .fixture import FixtureSpec, generate_fixture
from .model import (
    Dataset,
    Model,
    QuantizedTensor,
    load_dataset,
    load_model,
    save_dataset,
    save_model,
    validate_model,
)
from .qinfer import evaluate, infer
from .significance import (
    capture_activation_stats,
    compute_model_significance,
    load_significance,
    save_significance,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2
EXIT_CONSTRAINT = 3


def _default_threads() -> int:
    env = os.environ.get("AXKERN_THREADS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def _load_model_arg(path: str) -> Model:
    return load_model(path)


def _load_dataset_for(m: Model, path: str) -> Dataset:
    return load_dataset(path, quant=m.input_quant)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_inspect(args) -> int:
    m = _load_model_arg(args.model)
    problems = validate_model(m)
    if problems:
        for p in problems:
            print(f"invalid: {p}", file=sys.stderr)
        return EXIT_INVALID
    layers = []
    for i, layer in enumerate(m.layers):
        entry = {
            "index": i,
            "type": layer.type_name,
            "out_shape": list(layer.out_shape.dims),
            "macs": layer.macs_per_inference(),
        }
        if layer.type_name == "conv2d":
            entry.update(
                kernel=[layer.kernel_h, layer.kernel_w],
                stride=[layer.stride_h, layer.stride_w],
                pad=[layer.pad_top, layer.pad_left, layer.pad_bottom, layer.pad_right],
                out_channels=layer.out_channels,
                weights=int(layer.weights.size),
                weights_per_channel=layer.weights_per_channel,
            )
        elif layer.type_name == "dense":
            entry.update(in_features=layer.in_features, out_features=layer.out_features,
                         weights=int(layer.weights.size))
        layers.append(entry)
    doc = {
        "name": m.name,
        "num_classes": m.num_classes,
        "input_shape": list(m.input_shape.dims),
        "layers": layers,
        "conv_macs": m.conv_macs_exact(),
        "total_macs": m.total_macs_exact(),
    }
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print(f"model {m.name}: {len(m.layers)} layers, {m.num_classes} classes, "
              f"input {tuple(m.input_shape.dims)}")
        for e in layers:
            extra = ""
            if e["type"] == "conv2d":
                extra = (f" k={e['kernel'][0]}x{e['kernel'][1]} s={e['stride'][0]} "
                         f"pad={e['pad']} cout={e['out_channels']}")
            elif e["type"] == "dense":
                extra = f" {e['in_features']} -> {e['out_features']}"
            print(f"  layer {e['index']:2d} {e['type']:8s} out={tuple(e['out_shape'])} "
                  f"macs={e['macs']}{extra}")
        print(f"conv MACs {doc['conv_macs']}, total MACs {doc['total_macs']}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    m = _load_model_arg(args.model)
    calib = _load_dataset_for(m, args.calib)
    stats = capture_activation_stats(m, calib, max_samples=args.max_samples or None, workers=args.threads)
    sig = compute_model_significance(m, stats)
    save_significance(sig, args.out)
    rows = []
    for i in sorted(sig.per_layer):
        s = sig.per_layer[i]
        finite = s[np.isfinite(s)]
        rows.append(
            {
                "layer": i,
                "products": int(s.size),
                "retain": int(s.size - finite.size),
                "min": float(finite.min()) if finite.size else None,
                "median": float(np.median(finite)) if finite.size else None,
                "max": float(finite.max()) if finite.size else None,
            }
        )
    if args.json:
        print(json.dumps({"samples": stats.sample_count, "layers": rows}, indent=2))
    else:
        print(f"captured statistics over {stats.sample_count} samples")
        for r in rows:
            if r["min"] is None:
                print(f"  layer {r['layer']:2d}: {r['products']} products, all pinned to retain")
            else:
                print(
                    f"  layer {r['layer']:2d}: {r['products']} products, retain={r['retain']}, "
                    f"significance min={r['min']:.3e} median={r['median']:.3e} max={r['max']:.3e}"
                )
        print(f"wrote {args.out}")
    return EXIT_OK


def _cost_from_args(args) -> CostModel:
    return CostModel(
        cycles_per_mac=args.cycles_per_mac,
        layer_overhead_cycles=args.overhead_cycles,
        flash_bytes_per_pair=args.bytes_per_pair,
        flash_base_bytes=args.flash_base,
    )


def cmd_dse(args) -> int:
    m = _load_model_arg(args.model)
    d = _load_dataset_for(m, args.dataset)
    sig = load_significance(args.sig)
    spec = DsePlanSpec(
        mode=args.mode,
        tau_min=args.tau_min,
        tau_max=args.tau_max,
        tau_step=args.tau_step,
        cap=args.cap,
        threads=args.threads,
    )
    cost = _cost_from_args(args)
    points = run_dse(m, sig, spec, d, cost)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    export_results(points, outdir / "dse_results.csv")
    front = [p for p in points if p.on_front]
    export_results(front, outdir / "dse_front.csv")
    _write_plot_data(points, outdir / "dse_points.dat")
    _write_plot_data(front, outdir / "dse_front.dat")
    baseline = points[0].accuracy
    summary = {
        "configs": len(points),
        "front": len(front),
        "baseline_accuracy": baseline,
        "best_reduction_at_no_loss": max(
            (p.mac_reduction for p in front if p.accuracy >= baseline), default=0.0
        ),
    }
    if args.json:
        print(json.dumps(summary, indent=2))
    else:
        print(
            f"evaluated {summary['configs']} configs, {summary['front']} on the front, "
            f"baseline accuracy {baseline:.4f}, "
            f"best no-loss MAC reduction {summary['best_reduction_at_no_loss']:.4f}"
        )
        print(f"wrote {outdir / 'dse_results.csv'}")
    return EXIT_OK


def _write_plot_data(points, path: Path) -> None:
    lines = ["# mac_reduction accuracy config_id"]
    for p in sorted(points, key=lambda q: (q.mac_reduction, q.config_id)):
        lines.append(f"{p.mac_reduction!r} {p.accuracy!r} {p.config_id}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def cmd_select(args) -> int:
    points = load_results(args.results)
    if not points:
        print("results file holds no configs", file=sys.stderr)
        return EXIT_INVALID
    baseline = next((p.accuracy for p in points if p.config_id == 0), None)
    if baseline is None:
        print("results file lacks the baseline config (ordinal 0)", file=sys.stderr)
        return EXIT_INVALID
    cost = _cost_from_args(args)
    cfg = select_config(points, baseline, args.max_loss, cost)
    if cfg.is_exact and args.max_loss >= 0:
        qualifying = [p for p in points if p.on_front and p.accuracy >= baseline - args.max_loss]
        if not qualifying:
            print("warning: no front config satisfies the accuracy floor; falling back to exact",
                  file=sys.stderr)
    save_config(cfg, args.out)
    doc = cfg.to_json_dict()
    if args.json:
        print(json.dumps({"baseline_accuracy": baseline, "config": doc}, indent=2))
    else:
        if cfg.is_exact:
            print("selected the all-exact config")
        else:
            desc = ", ".join(f"layer {e['layer']}: tau={e['tau']}" for e in doc["layers"])
            print(f"selected {desc}")
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_codegen(args) -> int:
    m = _load_model_arg(args.model)
    sig = load_significance(args.sig) if args.sig else None
    if args.config:
        cfg = load_config(args.config)
    else:
        cfg = ApproxConfig({})
    if not cfg.is_exact and sig is None:
        print("a non-exact config needs --sig", file=sys.stderr)
        return EXIT_INVALID
    plan = build_skip_plan(sig, cfg) if not cfg.is_exact else SkipPlan()
    bundle = emit_network(m, plan, prefix=args.prefix)
    outdir = Path(args.out)
    write_bundle(bundle, outdir)
    save_skip_plan(plan, outdir / f"{args.prefix}_plan.bin")
    (outdir / f"{args.prefix}_plan.txt").write_text(format_skip_plan(plan), encoding="utf-8", newline="\n")
    cost = _cost_from_args(args)
    est = estimate_footprint(bundle, cost, args.flash_budget)
    report = {
        "flash_bytes": est.flash_bytes,
        "budget_bytes": est.budget_bytes,
        "fits": est.fits,
        "utilization": est.utilization,
        "retained_pairs": bundle.retained_pairs,
        "retained_single_macs": bundle.retained_single_macs,
        "kernels": [
            {
                "layer_index": k.layer_index,
                "retained_pairs": k.retained_pairs,
                "retained_single_macs": k.retained_single_macs,
                "estimated_flash_bytes": k.estimated_flash_bytes,
            }
            for k in bundle.kernels
        ],
    }
    (outdir / f"{args.prefix}_footprint.json").write_text(
        json.dumps(report, indent=2) + "\n", encoding="utf-8", newline="\n"
    )
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(
            f"emitted {len(bundle.files())} files to {outdir}; modeled flash {est.flash_bytes} bytes "
            f"({est.utilization:.1%} of budget)"
        )
    if not est.fits:
        print(f"flash budget exceeded: {est.flash_bytes} > {est.budget_bytes}", file=sys.stderr)
        return EXIT_CONSTRAINT
    return EXIT_OK


def cmd_fixture(args) -> int:
    spec = FixtureSpec(
        seed=args.seed,
        zero_weight_fraction=args.zero_frac,
        calib_count=args.calib_count,
        eval_count=args.eval_count,
        num_classes=args.classes,
    )
    m, d = generate_fixture(spec)
    outdir = Path(args.out)
    manifest = save_model(m, outdir)
    calib = d.slice(0, spec.calib_count)
    evald = d.slice(spec.calib_count, len(d))
    save_dataset(calib, outdir / "calib.axds")
    save_dataset(evald, outdir / "eval.axds")
    acc, counters = evaluate(m, d)
    doc = {
        "manifest": str(manifest),
        "calib": str(outdir / "calib.axds"),
        "eval": str(outdir / "eval.axds"),
        "calib_count": len(calib),
        "eval_count": len(evald),
        "exact_accuracy": acc,
        "total_macs": counters.total_macs,
    }
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print(
            f"wrote fixture to {outdir}: {len(calib)} calibration + {len(evald)} evaluation samples, "
            f"exact accuracy {acc:.4f}"
        )
    return EXIT_OK


def cmd_simulate(args) -> int:
    m = _load_model_arg(args.model)
    in_len = m.input_shape.num_elements
    if bool(args.input) == bool(args.input_dir):
        print("simulate needs exactly one of --input or --input-dir", file=sys.stderr)
        return EXIT_INVALID
    cfg = load_config(args.config) if args.config else ApproxConfig({})
    plan = None
    if not cfg.is_exact:
        if not args.sig:
            print("a non-exact config needs --sig", file=sys.stderr)
            return EXIT_INVALID
        plan = build_skip_plan(load_significance(args.sig), cfg)
    if args.input:
        jobs = [(Path(args.input), Path(args.out))]
    else:
        indir = Path(args.input_dir)
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        jobs = [(p, outdir / p.name) for p in sorted(indir.glob("*.bin"))]
        if not jobs:
            print(f"no .bin inputs found in {indir}", file=sys.stderr)
            return EXIT_INVALID
    results = []
    for src, dst in jobs:
        raw = src.read_bytes()
        if len(raw) != in_len:
            print(f"{src} holds {len(raw)} bytes, model needs {in_len}", file=sys.stderr)
            return EXIT_INVALID
        x = np.frombuffer(raw, dtype=np.int8)
        qt = QuantizedTensor(shape=m.input_shape, data=x, quant=m.input_quant)
        cls, logits, _ = infer(m, qt) if plan is None else infer_approx(m, plan, qt)
        payload = logits.astype("<i1").tobytes() + int(cls).to_bytes(4, "little")
        dst.parent.mkdir(parents=True, exist_ok=True)
        dst.write_bytes(payload)
        results.append({"input": str(src), "output": str(dst), "class": int(cls)})
    if args.json:
        print(json.dumps(results, indent=2))
    else:
        print(f"simulated {len(results)} inputs")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser assembly
# ---------------------------------------------------------------------------


def _add_cost_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cycles-per-mac", type=float, default=1.0, help="modeled cycles per retained MAC")
    p.add_argument("--overhead-cycles", type=float, default=0.0, help="modeled per-layer overhead cycles")
    p.add_argument("--bytes-per-pair", type=int, default=8, help="modeled flash bytes per dual-MAC pair")
    p.add_argument("--flash-base", type=int, default=4096, help="modeled flash bytes independent of kernels")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="axkern", description=__doc__)
    ap.add_argument("--version", action="version", version=f"axkern {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", help="print model topology and cost summary")
    p.add_argument("--model", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("analyze", help="capture calibration statistics and write significance scores")
    p.add_argument("--model", required=True)
    p.add_argument("--calib", required=True, help="calibration dataset file")
    p.add_argument("--out", required=True, help="significance output file")
    p.add_argument("--max-samples", type=int, default=0, help="0 means every calibration sample")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("dse", help="sweep skip thresholds and write results plus the Pareto front")
    p.add_argument("--model", required=True)
    p.add_argument("--dataset", required=True, help="evaluation dataset file")
    p.add_argument("--sig", required=True, help="significance file from analyze")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--mode", choices=["uniform", "per-layer"], default="uniform")
    p.add_argument("--tau-min", type=float, default=0.0)
    p.add_argument("--tau-max", type=float, default=0.1)
    p.add_argument("--tau-step", type=float, default=0.01)
    p.add_argument("--cap", type=int, default=10000, help="maximum number of configs")
    p.add_argument("--threads", type=int, default=_default_threads())
    _add_cost_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dse)

    p = sub.add_parser("select", help="pick the cheapest front config within an accuracy budget")
    p.add_argument("--results", required=True, help="results CSV from dse")
    p.add_argument("--max-loss", type=float, required=True, help="tolerated accuracy drop from baseline")
    p.add_argument("--out", required=True, help="threshold config output file")
    _add_cost_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("codegen", help="emit C sources for a model under a threshold config")
    p.add_argument("--model", required=True)
    p.add_argument("--sig", default="", help="significance file (needed for non-exact configs)")
    p.add_argument("--config", default="", help="threshold config file; omit for the exact network")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--prefix", default="ax", help="C identifier prefix for all symbols")
    p.add_argument("--flash-budget", type=int, default=2 * 1024 * 1024)
    _add_cost_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_codegen)

    p = sub.add_parser("fixture", help="generate a deterministic synthetic model and datasets")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--zero-frac", type=float, default=0.3, help="fraction of conv weights forced to zero")
    p.add_argument("--calib-count", type=int, default=96)
    p.add_argument("--eval-count", type=int, default=144)
    p.add_argument("--classes", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("simulate", help="run inference on raw int8 inputs, writing logits and class")
    p.add_argument("--model", required=True)
    p.add_argument("--input", default="", help="one raw int8 input file")
    p.add_argument("--input-dir", default="", help="directory of .bin input files")
    p.add_argument("--out", required=True, help="output file (with --input) or directory (with --input-dir)")
    p.add_argument("--sig", default="", help="significance file (needed for non-exact configs)")
    p.add_argument("--config", default="", help="threshold config file; omit for the exact network")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except AxkernError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:  # pragma: no cover - defensive
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
