"""Radial harmonic analysis on weighted Bergman spaces.

Thin Python surface over the C++ core: model parameters, spherical
functions, the spherical/operator Fourier transform pair, radial Toeplitz
operators, the three convolutions, and the verification registry.
"""

from ._qha import (
    ModelParams,
    QhaError,
    RadialOperator,
    RadialProfile,
    SpectralTable,
    berezin,
    build_spectral_table,
    c_nu,
    calibrate,
    conv_ff,
    conv_fo,
    conv_oo,
    dim_pm,
    gelfand_eval,
    h_hat,
    hpow,
    indicator,
    op_fourier,
    phi,
    plancherel_density,
    rpow,
    run_checks,
    schatten_norm,
    sft,
    t_lambda_eigs,
    toeplitz_eigs,
)

__all__ = [
    "ModelParams",
    "QhaError",
    "RadialOperator",
    "RadialProfile",
    "SpectralTable",
    "berezin",
    "build_spectral_table",
    "c_nu",
    "calibrate",
    "conv_ff",
    "conv_fo",
    "conv_oo",
    "dim_pm",
    "gelfand_eval",
    "h_hat",
    "hpow",
    "indicator",
    "op_fourier",
    "phi",
    "plancherel_density",
    "rpow",
    "run_checks",
    "schatten_norm",
    "sft",
    "t_lambda_eigs",
    "toeplitz_eigs",
]
