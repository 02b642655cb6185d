import numpy as np
import pytest

from axkern.model import (
    ConvLayerSpec,
    DenseLayerSpec,
    QuantParams,
    QuantizedTensor,
    Requant,
    TensorShape,
)
from axkern.qinfer import quantize_multiplier
from axkern.fixture import FixtureSpec, generate_fixture


def random_requant(rng) -> Requant:
    ratio = float(rng.uniform(2.0 ** -8, 0.9))
    mult, shift = quantize_multiplier(ratio)
    return Requant(multiplier=mult, shift=shift)


def random_conv_layer(rng, **over) -> ConvLayerSpec:
    in_h = over.pop("in_h", int(rng.integers(3, 9)))
    in_w = over.pop("in_w", int(rng.integers(3, 9)))
    in_c = over.pop("in_c", int(rng.integers(1, 4)))
    k_max = min(3, in_h, in_w)
    kh = over.pop("kernel_h", int(rng.integers(1, k_max + 1)))
    kw = over.pop("kernel_w", int(rng.integers(1, k_max + 1)))
    cout = over.pop("out_channels", int(rng.integers(1, 5)))
    kw_args = dict(
        in_shape=TensorShape((in_h, in_w, in_c)),
        out_channels=cout,
        kernel_h=kh,
        kernel_w=kw,
        stride_h=int(rng.integers(1, 3)),
        stride_w=int(rng.integers(1, 3)),
        pad_top=int(rng.integers(0, 3)),
        pad_left=int(rng.integers(0, 3)),
        pad_bottom=int(rng.integers(0, 3)),
        pad_right=int(rng.integers(0, 3)),
        weights=rng.integers(-128, 128, size=cout * kh * kw * in_c, dtype=np.int64).astype(np.int8),
        bias=rng.integers(-2000, 2001, size=cout, dtype=np.int64).astype(np.int32),
        in_quant=QuantParams(scale=0.05, zero_point=int(rng.integers(-128, 128))),
        out_quant=QuantParams(scale=0.05, zero_point=int(rng.integers(-128, 128))),
        weight_scale=0.01,
        requant=random_requant(rng),
        act_min=int(rng.integers(-128, 1)),
        act_max=int(rng.integers(1, 128)),
    )
    kw_args.update(over)
    return ConvLayerSpec(**kw_args)


def random_dense_layer(rng, **over) -> DenseLayerSpec:
    n_in = over.pop("in_features", int(rng.integers(2, 40)))
    n_out = over.pop("out_features", int(rng.integers(1, 8)))
    kw_args = dict(
        in_features=n_in,
        out_features=n_out,
        weights=rng.integers(-128, 128, size=n_out * n_in, dtype=np.int64).astype(np.int8),
        bias=rng.integers(-2000, 2001, size=n_out, dtype=np.int64).astype(np.int32),
        in_quant=QuantParams(scale=0.05, zero_point=int(rng.integers(-128, 128))),
        out_quant=QuantParams(scale=0.05, zero_point=int(rng.integers(-128, 128))),
        weight_scale=0.01,
        requant=random_requant(rng),
        act_min=int(rng.integers(-128, 1)),
        act_max=int(rng.integers(1, 128)),
    )
    kw_args.update(over)
    return DenseLayerSpec(**kw_args)


def random_input(rng, layer) -> QuantizedTensor:
    if isinstance(layer, ConvLayerSpec):
        shape = layer.in_shape
    else:
        shape = TensorShape((layer.in_features,))
    data = rng.integers(-128, 128, size=shape.num_elements, dtype=np.int64).astype(np.int8)
    return QuantizedTensor(shape=shape, data=data, quant=layer.in_quant)


@pytest.fixture(scope="session")
def small_fixture():
    """Self-checking synthetic model plus calibration/eval data, built once."""
    spec = FixtureSpec(seed=7)
    return generate_fixture(spec)
