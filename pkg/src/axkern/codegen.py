"""Emission of freestanding C99 sources with constant-unpacked conv kernels.

Each conv layer becomes one translation unit whose accumulation is fully
unrolled over the receptive field: weights appear as literal constants,
retained products are paired in ascending weight-index order into dual
multiply-accumulate statements carrying a packed 32-bit literal, and skipped
products are absent from the text.  Spatial loops remain.  Pool and dense
layers are emitted as plain loop code with constant weight tables.

Emission is a pure function of (model, plan, prefix): byte-identical inputs
produce byte-identical sources.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .approx import SkipPlan
from .dse import CostModel
from .errors import AxkernError
from .model import ConvLayerSpec, DenseLayerSpec, Model, PoolLayerSpec
from .qinfer import pack_weight_pair

_IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass
class EmittedKernel:
    """One conv layer translation unit.

    retained_pairs * 2 + retained_single_macs equals the number of retained
    (channel, weight index) products of the layer, and the emitted text holds
    exactly retained_pairs + retained_single_macs multiply-accumulate
    expressions.
    """

    layer_index: int
    source_text: str
    retained_pairs: int
    retained_single_macs: int
    estimated_flash_bytes: int


@dataclass
class EmissionBundle:
    """All sources for one network plus the symbol manifest."""

    prefix: str
    header_name: str
    header_source: str
    network_name: str
    network_source: str
    kernels: list[EmittedKernel] = field(default_factory=list)
    symbols: dict = field(default_factory=dict)

    def files(self) -> dict[str, str]:
        out = {self.header_name: self.header_source, self.network_name: self.network_source}
        for k in self.kernels:
            out[f"{self.prefix}_layer{k.layer_index}.c"] = k.source_text
        return out

    @property
    def retained_pairs(self) -> int:
        return sum(k.retained_pairs for k in self.kernels)

    @property
    def retained_single_macs(self) -> int:
        return sum(k.retained_single_macs for k in self.kernels)


@dataclass(frozen=True)
class FootprintEstimate:
    """Modeled flash demand of a bundle against a budget."""

    flash_bytes: int
    budget_bytes: int
    fits: bool
    utilization: float


# ---------------------------------------------------------------------------
# Shared runtime helpers, emitted once into the header
# ---------------------------------------------------------------------------

_HELPERS = """\
static inline int32_t {p}_dmac(int32_t acc, int32_t w, int16_t a1, int16_t a2)
{{
    const int32_t w_hi = (int32_t)(int16_t)(((uint32_t)w >> 16) & 0xffffu);
    const int32_t w_lo = (int32_t)(int16_t)((uint32_t)w & 0xffffu);
    return acc + w_hi * (int32_t)a1 + w_lo * (int32_t)a2;
}}

static inline int32_t {p}_mac(int32_t acc, int32_t w, int16_t a)
{{
    return acc + w * (int32_t)a;
}}

static inline int8_t {p}_requant(int32_t acc, int32_t mult, int32_t shift,
                                 int32_t zp, int32_t lo, int32_t hi)
{{
    const int64_t prod = (int64_t)acc * (int64_t)mult;
    const int64_t half = (int64_t)1 << (30 + shift);
    int64_t q;
    if (prod >= 0) {{
        q = (prod + half) >> (31 + shift);
    }} else {{
        q = -((-prod + half) >> (31 + shift));
    }}
    q += zp;
    if (q < lo) {{
        q = lo;
    }}
    if (q > hi) {{
        q = hi;
    }}
    return (int8_t)q;
}}
"""


def _banner(what: str) -> str:
    return f"/* {what} -- generated, do not edit. */\n"


def emit_layer_kernel(
    layer: ConvLayerSpec,
    skip_sets: list | None,
    prefix: str,
    layer_index: int,
    cost: CostModel = CostModel(),
) -> EmittedKernel:
    """Emit one conv layer as a C translation unit with unrolled accumulation.

    skip_sets is a per-channel collection of skipped weight indices (or None
    for the exact layer).  Retained products pair up in ascending index order;
    an odd remainder becomes a single multiply-accumulate.
    """
    k = layer.weights_per_channel
    w = layer.weight_matrix()
    skipped = _normalize_skips(layer, skip_sets)

    lines: list[str] = []
    lines.append(_banner(f"{prefix}_layer{layer_index}.c: conv {layer.kernel_h}x{layer.kernel_w}, "
                         f"{layer.in_c} -> {layer.out_channels} channels"))
    lines.append(f'#include "{prefix}_net.h"')
    lines.append("")
    lines.append(f"void {prefix}_layer{layer_index}_run(const int8_t *in, int8_t *out)")
    lines.append("{")
    lines.append(f"    int16_t t[{k}];")
    lines.append(f"    for (int32_t oy = 0; oy < {layer.out_h}; ++oy) {{")
    lines.append(f"        for (int32_t ox = 0; ox < {layer.out_w}; ++ox) {{")
    lines += _gather_lines(layer, indent="            ")

    total_pairs = 0
    total_singles = 0
    for c in range(layer.out_channels):
        retained = [i for i in range(k) if i not in skipped[c]]
        pairs = [(retained[j], retained[j + 1]) for j in range(0, len(retained) - 1, 2)]
        tail = retained[-1] if len(retained) % 2 else None
        total_pairs += len(pairs)
        total_singles += 1 if tail is not None else 0
        lines.append("            {")
        lines.append(f"                int32_t acc = {int(layer.bias[c])};")
        for i, j in pairs:
            packed = pack_weight_pair(int(w[c, i]), int(w[c, j]))
            lines.append(f"                acc = {prefix}_dmac(acc, {packed}, t[{i}], t[{j}]);")
        if tail is not None:
            lines.append(f"                acc = {prefix}_mac(acc, {int(w[c, tail])}, t[{tail}]);")
        lines.append(
            f"                out[(oy * {layer.out_w} + ox) * {layer.out_channels} + {c}] = "
            f"{prefix}_requant(acc, {layer.requant.multiplier}, {layer.requant.shift}, "
            f"{layer.out_quant.zero_point}, {layer.act_min}, {layer.act_max});"
        )
        lines.append("            }")
    lines.append("        }")
    lines.append("    }")
    lines.append("}")
    text = "\n".join(lines) + "\n"

    per_single = (cost.flash_bytes_per_pair + 1) // 2
    flash = cost.flash_bytes_per_pair * total_pairs + per_single * total_singles
    return EmittedKernel(
        layer_index=layer_index,
        source_text=text,
        retained_pairs=total_pairs,
        retained_single_macs=total_singles,
        estimated_flash_bytes=flash,
    )


def _normalize_skips(layer: ConvLayerSpec, skip_sets) -> list[frozenset[int]]:
    k = layer.weights_per_channel
    if skip_sets is None:
        return [frozenset()] * layer.out_channels
    if isinstance(skip_sets, np.ndarray):
        skip_sets = [np.flatnonzero(skip_sets[c]) for c in range(skip_sets.shape[0])]
    if len(skip_sets) != layer.out_channels:
        raise AxkernError(f"skip sets cover {len(skip_sets)} channels, layer has {layer.out_channels}")
    out = []
    for c, idxs in enumerate(skip_sets):
        s = frozenset(int(i) for i in idxs)
        if any(i < 0 or i >= k for i in s):
            raise AxkernError(f"channel {c} skip index out of range [0, {k})")
        out.append(s)
    return out


def _gather_lines(layer: ConvLayerSpec, indent: str) -> list[str]:
    """Load the receptive field into t[], offset-adjusted; padding reads as 0."""
    off = -layer.in_quant.zero_point
    needs_guard = layer.pad_top or layer.pad_left or layer.pad_bottom or layer.pad_right
    lines = [indent + "{"]
    lines.append(indent + "    int32_t kk = 0;")
    lines.append(indent + f"    for (int32_t ky = 0; ky < {layer.kernel_h}; ++ky) {{")
    lines.append(indent + f"        const int32_t iy = oy * {layer.stride_h} - {layer.pad_top} + ky;")
    lines.append(indent + f"        for (int32_t kx = 0; kx < {layer.kernel_w}; ++kx) {{")
    lines.append(indent + f"            const int32_t ix = ox * {layer.stride_w} - {layer.pad_left} + kx;")
    lines.append(indent + f"            for (int32_t ci = 0; ci < {layer.in_c}; ++ci) {{")
    body = indent + "                "
    if needs_guard:
        lines.append(body + f"if (iy < 0 || iy >= {layer.in_h} || ix < 0 || ix >= {layer.in_w}) {{")
        lines.append(body + "    t[kk] = 0;")
        lines.append(body + "} else {")
        lines.append(body + f"    t[kk] = (int16_t)((int32_t)in[(iy * {layer.in_w} + ix) * {layer.in_c} + ci] + ({off}));")
        lines.append(body + "}")
    else:
        lines.append(body + f"t[kk] = (int16_t)((int32_t)in[(iy * {layer.in_w} + ix) * {layer.in_c} + ci] + ({off}));")
    lines.append(body + "++kk;")
    lines.append(indent + "            }")
    lines.append(indent + "        }")
    lines.append(indent + "    }")
    lines.append(indent + "}")
    return lines


# ---------------------------------------------------------------------------
# Network assembly
# ---------------------------------------------------------------------------


def emit_network(m: Model, plan: SkipPlan | None = None, prefix: str = "ax") -> EmissionBundle:
    """Emit the full bundle: header, network chain, one kernel per conv layer."""
    if not _IDENT_RE.match(prefix):
        raise AxkernError(f"prefix must be a C identifier, got {prefix!r}")
    plan = plan if plan is not None else SkipPlan()
    up = prefix.upper()
    in_len = m.input_shape.num_elements

    kernels = []
    for i in m.conv_layer_indices():
        layer = m.layers[i]
        skips = plan.channel_indices(i) if i in plan.masks else None
        kernels.append(emit_layer_kernel(layer, skips, prefix, i))

    symbols = _symbol_table(m, prefix)
    header = _emit_header(m, prefix, up, in_len, symbols)
    network = _emit_network_source(m, prefix, up, symbols)

    bundle = EmissionBundle(
        prefix=prefix,
        header_name=f"{prefix}_net.h",
        header_source=header,
        network_name=f"{prefix}_net.c",
        network_source=network,
        kernels=kernels,
        symbols=symbols,
    )
    return bundle


def _symbol_table(m: Model, prefix: str) -> dict:
    symbols = {
        "prefix": prefix,
        "entry": f"{prefix}_infer",
        "header": f"{prefix}_net.h",
        "in_len_macro": f"{prefix.upper()}_IN_LEN",
        "num_classes_macro": f"{prefix.upper()}_NUM_CLASSES",
        "in_len": m.input_shape.num_elements,
        "num_classes": m.num_classes,
        "layers": [],
    }
    seen = set()
    for i, layer in enumerate(m.layers):
        if isinstance(layer, ConvLayerSpec):
            name = f"{prefix}_layer{i}_run"
            entry = {"index": i, "type": "conv2d", "symbol": name, "file": f"{prefix}_layer{i}.c"}
        elif isinstance(layer, PoolLayerSpec):
            name = f"{prefix}_pool{i}_run"
            entry = {"index": i, "type": "maxpool", "symbol": name, "file": f"{prefix}_net.c"}
        else:
            name = f"{prefix}_dense{i}_run"
            entry = {"index": i, "type": "dense", "symbol": name, "file": f"{prefix}_net.c"}
        if name in seen:
            raise AxkernError(f"symbol collision on {name}; choose another prefix")
        seen.add(name)
        symbols["layers"].append(entry)
    return symbols


def _emit_header(m: Model, prefix: str, up: str, in_len: int, symbols: dict) -> str:
    lines = [_banner(f"{prefix}_net.h: network interface")]
    lines.append(f"#ifndef {up}_NET_H")
    lines.append(f"#define {up}_NET_H")
    lines.append("")
    lines.append("#include <stdint.h>")
    lines.append("")
    lines.append(f"#define {up}_IN_LEN {in_len}")
    lines.append(f"#define {up}_NUM_CLASSES {m.num_classes}")
    lines.append("")
    lines.append(_HELPERS.format(p=prefix))
    for entry in symbols["layers"]:
        if entry["type"] == "conv2d":
            lines.append(f"void {entry['symbol']}(const int8_t *in, int8_t *out);")
    lines.append("")
    lines.append(f"int32_t {prefix}_infer(const int8_t input[{up}_IN_LEN], int8_t logits_out[{up}_NUM_CLASSES]);")
    lines.append("")
    lines.append(f"#endif /* {up}_NET_H */")
    return "\n".join(lines) + "\n"


def _int_table(values: np.ndarray, per_line: int = 16) -> list[str]:
    vals = [str(int(v)) for v in values]
    return [", ".join(vals[i : i + per_line]) + ("," if i + per_line < len(vals) else "")
            for i in range(0, len(vals), per_line)]


def _emit_network_source(m: Model, prefix: str, up: str, symbols: dict) -> str:
    lines = [_banner(f"{prefix}_net.c: buffer plumbing, pool and dense layers, entry point")]
    lines.append(f'#include "{prefix}_net.h"')
    lines.append("")

    buf_len = max(l.out_shape.num_elements for l in m.layers)
    lines.append(f"static int8_t {prefix}_buf_a[{buf_len}];")
    lines.append(f"static int8_t {prefix}_buf_b[{buf_len}];")
    lines.append("")

    for i, layer in enumerate(m.layers):
        if isinstance(layer, PoolLayerSpec):
            lines += _emit_pool(layer, prefix, i)
            lines.append("")
        elif isinstance(layer, DenseLayerSpec):
            lines += _emit_dense(layer, prefix, i)
            lines.append("")

    lines.append(f"int32_t {prefix}_infer(const int8_t input[{up}_IN_LEN], int8_t logits_out[{up}_NUM_CLASSES])")
    lines.append("{")
    src = "input"
    bufs = [f"{prefix}_buf_a", f"{prefix}_buf_b"]
    flip = 0
    for i, layer in enumerate(m.layers):
        dst = "logits_out" if i == len(m.layers) - 1 else bufs[flip]
        entry = symbols["layers"][i]
        lines.append(f"    {entry['symbol']}({src}, {dst});")
        src = dst
        flip ^= 1
    lines.append("    {")
    lines.append("        int32_t best = 0;")
    lines.append(f"        for (int32_t c = 1; c < {up}_NUM_CLASSES; ++c) {{")
    lines.append("            if (logits_out[c] > logits_out[best]) {")
    lines.append("                best = c;")
    lines.append("            }")
    lines.append("        }")
    lines.append("        return best;")
    lines.append("    }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _emit_pool(layer: PoolLayerSpec, prefix: str, index: int) -> list[str]:
    _, w, c = layer.in_shape.dims
    lines = [f"static void {prefix}_pool{index}_run(const int8_t *in, int8_t *out)"]
    lines.append("{")
    lines.append(f"    for (int32_t oy = 0; oy < {layer.out_h}; ++oy) {{")
    lines.append(f"        for (int32_t ox = 0; ox < {layer.out_w}; ++ox) {{")
    lines.append(f"            for (int32_t ci = 0; ci < {c}; ++ci) {{")
    lines.append(f"                int8_t best = in[((oy * {layer.stride_h}) * {w} + ox * {layer.stride_w}) * {c} + ci];")
    lines.append(f"                for (int32_t wy = 0; wy < {layer.window_h}; ++wy) {{")
    lines.append(f"                    for (int32_t wx = 0; wx < {layer.window_w}; ++wx) {{")
    lines.append(f"                        const int8_t v = in[((oy * {layer.stride_h} + wy) * {w} + "
                 f"ox * {layer.stride_w} + wx) * {c} + ci];")
    lines.append("                        if (v > best) {")
    lines.append("                            best = v;")
    lines.append("                        }")
    lines.append("                    }")
    lines.append("                }")
    lines.append(f"                out[(oy * {layer.out_w} + ox) * {c} + ci] = best;")
    lines.append("            }")
    lines.append("        }")
    lines.append("    }")
    lines.append("}")
    return lines


def _emit_dense(layer: DenseLayerSpec, prefix: str, index: int) -> list[str]:
    off = -layer.in_quant.zero_point
    lines = [f"static const int8_t {prefix}_dense{index}_w[{layer.out_features}][{layer.in_features}] = {{"]
    wm = layer.weight_matrix()
    for o in range(layer.out_features):
        lines.append("    {")
        for r in _int_table(wm[o]):
            lines.append("        " + r)
        lines.append("    },")
    lines.append("};")
    lines.append(f"static const int32_t {prefix}_dense{index}_b[{layer.out_features}] = {{")
    for r in _int_table(layer.bias):
        lines.append("    " + r)
    lines.append("};")
    lines.append("")
    lines.append(f"static void {prefix}_dense{index}_run(const int8_t *in, int8_t *out)")
    lines.append("{")
    lines.append(f"    for (int32_t oc = 0; oc < {layer.out_features}; ++oc) {{")
    lines.append(f"        int32_t acc = {prefix}_dense{index}_b[oc];")
    lines.append(f"        for (int32_t i = 0; i < {layer.in_features}; ++i) {{")
    lines.append(f"            acc += (int32_t){prefix}_dense{index}_w[oc][i] * ((int32_t)in[i] + ({off}));")
    lines.append("        }")
    lines.append(
        f"        out[oc] = {prefix}_requant(acc, {layer.requant.multiplier}, {layer.requant.shift}, "
        f"{layer.out_quant.zero_point}, {layer.act_min}, {layer.act_max});"
    )
    lines.append("    }")
    lines.append("}")
    return lines


# ---------------------------------------------------------------------------
# Footprint estimation and bundle output
# ---------------------------------------------------------------------------


def estimate_footprint(
    target: EmissionBundle | tuple[Model, SkipPlan], cost: CostModel, flash_budget: int
) -> FootprintEstimate:
    """Modeled flash for a bundle (or a model plus plan) against a budget."""
    if flash_budget <= 0:
        raise AxkernError("flash budget must be > 0")
    if isinstance(target, EmissionBundle):
        pairs, singles = target.retained_pairs, target.retained_single_macs
    else:
        m, plan = target
        pairs, singles = plan.retained_static_ops(m)
    flash = cost.flash(pairs, singles)
    return FootprintEstimate(
        flash_bytes=flash,
        budget_bytes=int(flash_budget),
        fits=flash <= flash_budget,
        utilization=flash / flash_budget,
    )


def count_mac_expressions(source_text: str, prefix: str) -> tuple[int, int]:
    """(dual, single) multiply-accumulate expressions present in emitted text."""
    dual = len(re.findall(rf"\b{re.escape(prefix)}_dmac\(", source_text))
    single = len(re.findall(rf"\b{re.escape(prefix)}_mac\(", source_text))
    return dual, single


def write_bundle(bundle: EmissionBundle, outdir: str | Path) -> list[Path]:
    """Write every source file plus a JSON symbol manifest; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in bundle.files().items():
        p = outdir / name
        p.write_text(text, encoding="utf-8", newline="\n")
        paths.append(p)
    manifest = dict(bundle.symbols)
    manifest["kernels"] = [
        {
            "layer_index": k.layer_index,
            "file": f"{bundle.prefix}_layer{k.layer_index}.c",
            "retained_pairs": k.retained_pairs,
            "retained_single_macs": k.retained_single_macs,
            "estimated_flash_bytes": k.estimated_flash_bytes,
        }
        for k in bundle.kernels
    ]
    mp = outdir / f"{bundle.prefix}_manifest.json"
    mp.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8", newline="\n")
    paths.append(mp)
    return paths
