"""Operator algebra of the pair in the shared (|00>, |10>, |01>, |11>) basis.

Emitter 1 is the fast index: state k = n1 + 2*n2.  The fifteen moment
operators listed here fix the index ordering of the moment vector used by the
regression machinery; together with the identity they form a complete basis
of the 4x4 operator space.
"""

from __future__ import annotations

import numpy as np

_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
_EYE2 = np.eye(2, dtype=complex)

#: Lowering operator of emitter 1 (fast index).
SIGMA1 = np.kron(_EYE2, _LOWER)
#: Lowering operator of emitter 2 (slow index).
SIGMA2 = np.kron(_LOWER, _EYE2)
SIGMA1_DAG = SIGMA1.conj().T
SIGMA2_DAG = SIGMA2.conj().T
N1 = SIGMA1_DAG @ SIGMA1
N2 = SIGMA2_DAG @ SIGMA2
EYE4 = np.eye(4, dtype=complex)

#: Labels of the 15 moment operators, in the frozen regression ordering.
MOMENT_LABELS = (
    "s1", "s2", "s1d", "s2d",
    "n1", "n2", "s1 s2", "s1d s2d", "s1d s2", "s1 s2d",
    "n1 s2", "s1 n2", "n1 s2d", "s1d n2",
    "n1 n2",
)

#: Matrix representations matching MOMENT_LABELS.
MOMENT_OPERATORS = (
    SIGMA1, SIGMA2, SIGMA1_DAG, SIGMA2_DAG,
    N1, N2, SIGMA1 @ SIGMA2, SIGMA1_DAG @ SIGMA2_DAG, SIGMA1_DAG @ SIGMA2,
    SIGMA1 @ SIGMA2_DAG,
    N1 @ SIGMA2, SIGMA1 @ N2, N1 @ SIGMA2_DAG, SIGMA1_DAG @ N2,
    N1 @ N2,
)

# Named indices into the moment vector.
IDX_S1 = 0
IDX_S2 = 1
IDX_S1D = 2
IDX_S2D = 3
IDX_N1 = 4
IDX_N2 = 5
IDX_NX = 14


def expectations(rho: np.ndarray) -> np.ndarray:
    """Moment vector <O_i> = Tr(O_i rho) for all 15 operators."""
    return np.array([np.trace(op @ rho) for op in MOMENT_OPERATORS])
