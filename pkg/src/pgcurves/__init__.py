"""Curves in the pseudo-Galilean space G_3^1.

Vector algebra of the degenerate metric, a small symbolic expression
language, Frenet frames of admissible curves, reconstruction from curvature
and torsion, and classification of curves by the Frenet coefficients of
their position vector.
"""
__version__ = "0.1.0"

from .classify import (ClassificationReport, Decomposition, classify, decompose,  # noqa: E402
                       detect_constant_ratio, detect_N_constant, detect_T_constant,
                       n_constant_generator, sphere_fit, circle_check)
from .config import Tolerances  # noqa: E402
from .expr import Expr, differentiate, evaluate, parse  # noqa: E402
from .frenet import (FrenetSeries, GraphCurve, InadmissibleError, SampledCurve,  # noqa: E402
                     frame_at, frenet_series)
from .geometry import (GVector, Motion, PGSphere, VectorKind, classify_vector,  # noqa: E402
                       cross_product, norm, scalar_product)
from .reconstruct import (IntrinsicSpec, ReconstructedCurve, integrate_m_system,  # noqa: E402
                          m_closed_form, reconstruct_curve, third_order_residual)

__all__ = [
    "__version__",
    "GVector", "Motion", "PGSphere", "VectorKind",
    "scalar_product", "cross_product", "norm", "classify_vector",
    "Expr", "parse", "evaluate", "differentiate",
    "GraphCurve", "SampledCurve", "FrenetSeries", "InadmissibleError", "frenet_series", "frame_at",
    "IntrinsicSpec", "ReconstructedCurve", "reconstruct_curve", "integrate_m_system",
    "m_closed_form", "third_order_residual",
    "Decomposition", "ClassificationReport", "decompose", "classify", "detect_constant_ratio",
    "detect_T_constant", "detect_N_constant", "n_constant_generator", "sphere_fit", "circle_check",
    "Tolerances",
]
