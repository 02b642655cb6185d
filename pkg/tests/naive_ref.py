"""Independent reference implementations used as test oracles.

Everything here is written as plain nested loops against the documented
arithmetic contracts, deliberately sharing no code with the package's
vectorized engine.
"""

from __future__ import annotations

import numpy as np


def ref_round_shift(n: int, k: int) -> int:
    """round(n / 2^k) with halves away from zero, pure integer arithmetic."""
    d = 1 << k
    if n >= 0:
        return (n + (d >> 1)) // d
    return -((-n + (d >> 1)) // d)


def ref_requantize(acc: int, mult: int, shift: int, zp: int, lo: int, hi: int) -> int:
    q = ref_round_shift(int(acc) * int(mult), 31 + shift) + zp
    return max(lo, min(hi, q))


def ref_conv_acc(layer, x_hwc: np.ndarray) -> np.ndarray:
    """Accumulators via explicit loops; padding reads as the zero point."""
    kh, kw, cin = layer.kernel_h, layer.kernel_w, layer.in_c
    zp = layer.in_quant.zero_point
    w = layer.weight_matrix()
    out = np.zeros((layer.out_h, layer.out_w, layer.out_channels), dtype=np.int64)
    for oy in range(layer.out_h):
        for ox in range(layer.out_w):
            for c in range(layer.out_channels):
                acc = int(layer.bias[c])
                for ky in range(kh):
                    iy = oy * layer.stride_h - layer.pad_top + ky
                    for kx in range(kw):
                        ix = ox * layer.stride_w - layer.pad_left + kx
                        for ci in range(cin):
                            if 0 <= iy < layer.in_h and 0 <= ix < layer.in_w:
                                a = int(x_hwc[iy, ix, ci]) - zp
                            else:
                                a = 0
                            acc += a * int(w[c, (ky * kw + kx) * cin + ci])
                out[oy, ox, c] = acc
    return out


def ref_conv(layer, x_hwc: np.ndarray) -> np.ndarray:
    acc = ref_conv_acc(layer, x_hwc)
    out = np.zeros_like(acc, dtype=np.int8)
    for oy in range(layer.out_h):
        for ox in range(layer.out_w):
            for c in range(layer.out_channels):
                out[oy, ox, c] = ref_requantize(
                    int(acc[oy, ox, c]),
                    layer.requant.multiplier,
                    layer.requant.shift,
                    layer.out_quant.zero_point,
                    layer.act_min,
                    layer.act_max,
                )
    return out


def ref_skipped_products(layer, x_hwc: np.ndarray, skip_sets) -> np.ndarray:
    """Sum of the omitted products per output element, explicit loops."""
    kh, kw, cin = layer.kernel_h, layer.kernel_w, layer.in_c
    zp = layer.in_quant.zero_point
    w = layer.weight_matrix()
    out = np.zeros((layer.out_h, layer.out_w, layer.out_channels), dtype=np.int64)
    for oy in range(layer.out_h):
        for ox in range(layer.out_w):
            for c in range(layer.out_channels):
                total = 0
                for i in skip_sets[c]:
                    i = int(i)
                    ky, rest = divmod(i, kw * cin)
                    kx, ci = divmod(rest, cin)
                    iy = oy * layer.stride_h - layer.pad_top + ky
                    ix = ox * layer.stride_w - layer.pad_left + kx
                    if 0 <= iy < layer.in_h and 0 <= ix < layer.in_w:
                        a = int(x_hwc[iy, ix, ci]) - zp
                    else:
                        a = 0
                    total += a * int(w[c, i])
                out[oy, ox, c] = total
    return out


def ref_dense(layer, flat: np.ndarray) -> np.ndarray:
    zp = layer.in_quant.zero_point
    w = layer.weight_matrix()
    out = np.zeros(layer.out_features, dtype=np.int8)
    for o in range(layer.out_features):
        acc = int(layer.bias[o])
        for i in range(layer.in_features):
            acc += (int(flat[i]) - zp) * int(w[o, i])
        out[o] = ref_requantize(
            acc, layer.requant.multiplier, layer.requant.shift,
            layer.out_quant.zero_point, layer.act_min, layer.act_max,
        )
    return out


def ref_maxpool(layer, x_hwc: np.ndarray) -> np.ndarray:
    c = x_hwc.shape[2]
    out = np.zeros((layer.out_h, layer.out_w, c), dtype=np.int8)
    for oy in range(layer.out_h):
        for ox in range(layer.out_w):
            for ci in range(c):
                best = None
                for wy in range(layer.window_h):
                    for wx in range(layer.window_w):
                        v = int(x_hwc[oy * layer.stride_h + wy, ox * layer.stride_w + wx, ci])
                        if best is None or v > best:
                            best = v
                out[oy, ox, ci] = best
    return out


def ref_expected_inputs(layer, samples_hwc: np.ndarray) -> np.ndarray:
    """Mean offset-adjusted input per weight index, materializing every field."""
    kh, kw, cin = layer.kernel_h, layer.kernel_w, layer.in_c
    zp = layer.in_quant.zero_point
    k = kh * kw * cin
    total = np.zeros(k, dtype=np.float64)
    count = 0
    for s in range(samples_hwc.shape[0]):
        for oy in range(layer.out_h):
            for ox in range(layer.out_w):
                count += 1
                for ky in range(kh):
                    iy = oy * layer.stride_h - layer.pad_top + ky
                    for kx in range(kw):
                        ix = ox * layer.stride_w - layer.pad_left + kx
                        for ci in range(cin):
                            if 0 <= iy < layer.in_h and 0 <= ix < layer.in_w:
                                a = int(samples_hwc[s, iy, ix, ci]) - zp
                            else:
                                a = 0
                            total[(ky * kw + kx) * cin + ci] += a
    return total / count


def ref_pareto_flags(acc: np.ndarray, mac: np.ndarray) -> np.ndarray:
    """Brute-force pairwise dominance: maximize acc, minimize mac."""
    acc = np.asarray(acc, dtype=np.float64)
    mac = np.asarray(mac, dtype=np.int64)
    ge_acc = acc[None, :] >= acc[:, None]  # [i, j]: acc_j >= acc_i
    le_mac = mac[None, :] <= mac[:, None]
    strict = (acc[None, :] > acc[:, None]) | (mac[None, :] < mac[:, None])
    dominated = (ge_acc & le_mac & strict).any(axis=1)
    return ~dominated
