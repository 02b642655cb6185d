"""Toolkit for significance-driven computation skipping in int8 CNN inference.

The pipeline: load or generate a quantized model, capture calibration
statistics, score every conv product's significance, sweep skip thresholds
over a design space, pick a Pareto-optimal config, and emit constant-unpacked
C kernels for the chosen plan.
"""

__version__ = "0.1.0"

from .approx import (
    ApproxConfig,
    EvalResult,
    SkipPlan,
    build_skip_plan,
    conv2d_skipped,
    evaluate_config,
    format_skip_plan,
    infer_approx,
    load_skip_plan,
    save_skip_plan,
)
from .codegen import (
    EmissionBundle,
    EmittedKernel,
    FootprintEstimate,
    emit_layer_kernel,
    emit_network,
    estimate_footprint,
    write_bundle,
)
from .dse import (
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
from .errors import (
    AccumulatorBoundError,
    AxkernError,
    BudgetError,
    DataFormatError,
    ManifestError,
    ShapeError,
)
from .fixture import FixtureSpec, generate_fixture
from .model import (
    ConvLayerSpec,
    Dataset,
    DenseLayerSpec,
    Model,
    PoolLayerSpec,
    QuantizedTensor,
    QuantParams,
    Requant,
    TensorShape,
    load_dataset,
    load_model,
    save_dataset,
    save_model,
    validate_model,
)
from .qinfer import (
    OpCounters,
    conv2d_exact,
    dense,
    dual_mac,
    evaluate,
    infer,
    maxpool,
    pack_weight_pair,
    quantize_multiplier,
    requantize,
    unpack_weight_pair,
)
from .significance import (
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

__all__ = [name for name in dir() if not name.startswith("_")]
