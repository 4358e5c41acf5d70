"""PIP-loss dimensionality selection for matrix-factorization embeddings."""

from ._pipdim import (
    BoundBreakdown,
    NumericalDegeneracy,
    PipCurve,
    SelectionReport,
    Spectrum,
    Vocab,
    bound_curve,
    build_vocab,
    cooc_count,
    estimate_noise,
    estimate_spectrum,
    exact_loss_alpha0,
    expected_bound,
    factorize,
    mc_curve,
    nsr,
    pip_distance,
    pip_matrix,
    principal_angles,
    procrustes_align,
    random_orthonormal,
    select_dimension,
    simulate_instance,
    sin_theta_bound,
    split_corpus,
    subspace_perturbation_term,
    telescoping_bound,
    tokenize,
    transform,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
