"""Reference Choi matrices for comparison tests."""
import numpy as np

R2 = np.sqrt(2)

ROOT_SWAP_CHOI = np.array(
    [
        [3 / 4, -1j / (2 * R2), 1 / 4, (1 / 2 + 1j / 2) / R2],
        [1j / (2 * R2), 1 / 4, (1 / 2 - 1j / 2) / R2, -1 / 4],
        [1 / 4, (1 / 2 + 1j / 2) / R2, 1 / 4, -1j / (2 * R2)],
        [(1 / 2 - 1j / 2) / R2, -1 / 4, 1j / (2 * R2), 3 / 4],
    ]
)

# Reference matrix for the CZ coupling with the Hadamard sharp. Its own spectrum gives
# eta ~ 0.232, not the 0.167 quoted alongside it; see test_acceptance.
CZ_CHOI_REFERENCE = np.array(
    [
        [1 / 2, 1 / 2, 1 / 2, -1 / 2 - 1j / 2],
        [1 / 2, 1 / 2, -1 / 2 - 1j / 2, -1 / 2],
        [1 / 2, -1 / 2 + 1j / 2, 1 / 2, 1 / 2],
        [-1 / 2 + 1j / 2, -1 / 2, 1 / 2, 1 / 2],
    ]
)

IDENTITY_LIKE_CHOI = np.array(
    [[1, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 1]], dtype=complex
)
FLIPPED_CHOI = np.array(
    [[1, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0], [-1, 0, 0, 1]], dtype=complex
)


def cz_prime_choi(delta):
    e = np.exp(1j * delta)
    ec = np.exp(-1j * delta)
    return np.array(
        [
            [1, 0, 0, (3 + e) / 4],
            [0, 0, 1 / 4 - ec / 4, 0],
            [0, (1 - e) / 4, 0, 0],
            [(3 + ec) / 4, 0, 0, 1],
        ]
    )


def cz_double_prime_diagonal_choi(delta):
    return np.array(
        [
            [1, 0, 0, np.exp(1j * delta)],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
            [np.exp(-1j * delta), 0, 0, 1],
        ]
    )


def alpha_choi(alpha):
    x = alpha * np.sqrt(1 - alpha**2)
    return np.array([[1, 0, 0, x], [0, 0, x, 0], [0, x, 0, 0], [x, 0, 0, 1]], dtype=complex)
