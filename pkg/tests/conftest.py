import numpy as np
import pytest

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def kron_annihilators(n_modes: int) -> list[np.ndarray]:
    """Jordan-Wigner ``a_p`` built from Kronecker products, integer bit basis.

    Basis index ``s = sum_p b_p 2^p``; ``np.kron`` puts its first factor on the
    most significant bit, so factors run from mode ``n-1`` down to mode 0.
    """
    I2 = np.eye(2)
    Z = np.diag([1.0, -1.0])
    lower = np.array([[0.0, 1.0], [0.0, 0.0]])  # |0><1|
    ops = []
    for p in range(n_modes):
        M = np.array([[1.0]])
        for mode in range(n_modes - 1, -1, -1):
            f = lower if mode == p else (Z if mode < p else I2)
            M = np.kron(M, f)
        ops.append(M)
    return ops


@pytest.fixture(scope="session")
def kron_ops():
    return kron_annihilators
