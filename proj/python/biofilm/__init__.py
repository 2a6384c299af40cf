"""Python access to the biofilm thin-film solvers.

The heavy lifting lives in the compiled ``biofilm._core`` extension; this
package re-exports it unchanged.
"""

from ._core import (
    ModelParams,
    NumericalFailure,
    cascade_error,
    dispersion_lambda,
    fft_backend_version,
    greens_function,
    integrate,
    l_symbol,
    planewave_beta,
    q_symbol,
    residual_check,
    run_height,
    selfsimilar_profile,
    version,
)

__version__ = version()

__all__ = [
    "ModelParams",
    "NumericalFailure",
    "cascade_error",
    "dispersion_lambda",
    "fft_backend_version",
    "greens_function",
    "integrate",
    "l_symbol",
    "planewave_beta",
    "q_symbol",
    "residual_check",
    "run_height",
    "selfsimilar_profile",
    "version",
]
