"""
Spectrum of the discrete generator through the first-order pencil  B x' = A x
"""
import logging
from typing import Optional

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, eigs

from fem.assembly import DiscreteOperator
from utils.errors import NumericalError, UsageError

logger = logging.getLogger('numerics.spectral')

DENSE_LIMIT = 3000


def eigenvalues(op: DiscreteOperator, k: Optional[int] = None, sigma: Optional[complex] = None) -> np.ndarray:
    """Generalized eigenvalues of (A, B), sorted by imaginary part

    Dense QZ for state sizes up to DENSE_LIMIT; otherwise `k` eigenvalues nearest the
    shift `sigma` by shift-invert Arnoldi.
    """
    A, B = op.pencil()
    size = A.shape[0]
    if k is None:
        if size > DENSE_LIMIT:
            raise UsageError(f"state size {size} too large for a dense solve; pass k and sigma")
        values = scipy.linalg.eig(A.toarray(), B.toarray(), right=False)
    else:
        shift = 0.0 if sigma is None else sigma
        try:
            # complex arithmetic so that complex shifts need no OPpart choice
            values = eigs(A.astype(complex), k=k, M=B.astype(complex), sigma=shift, which='LM',
                          return_eigenvectors=False)
        except (ArpackNoConvergence, ArpackError, RuntimeError) as e:
            raise NumericalError(f"eigensolver failed at shift {shift}: {e}")
    order = np.lexsort((values.real, values.imag))
    return values[order]


def spectral_abscissa(op: DiscreteOperator) -> float:
    """max Re lambda over the dense spectrum"""
    return float(np.max(eigenvalues(op).real))
