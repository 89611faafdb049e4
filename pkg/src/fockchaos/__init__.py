"""Exact truncation-level computations with generalized functionals of
discrete-time normal martingales.

The package represents functionals by their Fock transforms (sparse maps from
finite index sets to complex numbers) and provides the weighted norm scale,
growth and decay classification, convolution and Wick products, concrete
two-point noise models and the fast chaos transforms between atom values and
coefficients.
"""
from .algebra import (
    LawsReport,
    NormEstimateReport,
    algebra_laws_check,
    convolve,
    verify_norm_estimate,
    wick,
    wick_fast,
    wick_growth_bound,
    wick_naive,
)
from .chaos import (
    CoefficientMap,
    GrowthCertificate,
    ProductFunctional,
    classify_decay,
    classify_growth,
    construct_testing,
    dual_norm,
    fock_transform,
    induced_functional,
    inner_product_p,
    norming_element,
    p_norm,
    pairing,
    partial_sums,
    random_coefficients,
    testing_transform,
)
from .indexset import (
    IndexSet,
    SeriesSum,
    enumerate_sets,
    hs_series,
    hs_sum,
    weight,
    weight_series,
    weight_series_sum,
)
from .martingale import (
    NoiseModel,
    atom_probabilities,
    simulate_paths,
    verify_martingale,
    verify_orthonormality,
    z_sigma_eval,
)
from .transform import analyze, analyze_naive, fwht, synthesize

__version__ = "0.1.0"
