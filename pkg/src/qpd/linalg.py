"""Fixed-size complex linear algebra for one- and two-qubit operators.

Everything is a plain ``numpy`` array of dtype ``complex128``. States live in
C^4 with basis order |00>, |01>, |10>, |11>; the first slot is Alice's qubit.
The helpers here only validate shapes and physical invariants, the heavy
lifting is numpy's.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

DEFAULT_TOL = 1e-9

Vector4 = NDArray[np.complex128]
Matrix2 = NDArray[np.complex128]
Matrix4 = NDArray[np.complex128]

IDENTITY2: Matrix2 = np.eye(2, dtype=complex)
IDENTITY4: Matrix4 = np.eye(4, dtype=complex)


class LinalgError(ValueError):
    """Raised when an operand violates a shape or physical invariant."""


def _as_complex(a: ArrayLike, shape: tuple[int, ...], name: str) -> NDArray[np.complex128]:
    arr = np.asarray(a, dtype=complex)
    if arr.shape != shape:
        raise LinalgError(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise LinalgError(f"{name} contains non-finite entries")
    return arr


def as_vector4(v: ArrayLike) -> Vector4:
    return _as_complex(v, (4,), "vector")


def as_matrix2(m: ArrayLike) -> Matrix2:
    return _as_complex(m, (2, 2), "matrix")


def as_matrix4(m: ArrayLike) -> Matrix4:
    return _as_complex(m, (4, 4), "matrix")


def dagger(m: ArrayLike) -> NDArray[np.complex128]:
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(np.asarray(m), -1, -2))


def is_unitary(m: ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    eye = np.eye(m.shape[-1])
    return bool(np.max(np.abs(m @ dagger(m) - eye)) <= tol)


def is_hermitian(m: ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    return bool(np.max(np.abs(m - dagger(m))) <= tol)


def is_density_matrix(rho: ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    """Hermitian, unit trace and positive semidefinite, all within ``tol``."""
    rho = np.asarray(rho, dtype=complex)
    if not is_hermitian(rho, tol):
        return False
    if abs(np.trace(rho) - 1.0) > tol:
        return False
    return bool(np.min(np.linalg.eigvalsh(rho)) >= -tol)


def tensor(a: ArrayLike, b: ArrayLike) -> Matrix4:
    """Kronecker product ``a ⊗ b`` with ``a`` acting on Alice's qubit."""
    return np.kron(as_matrix2(a), as_matrix2(b))


def ket(index: int) -> Vector4:
    """Computational basis vector; ``index`` is the two-bit label read as binary."""
    v = np.zeros(4, dtype=complex)
    v[index] = 1.0
    return v


def projector(v: ArrayLike, tol: float = DEFAULT_TOL) -> Matrix4:
    """Rank-one projector ``|v><v|`` onto a normalized state."""
    v = as_vector4(v)
    norm = np.vdot(v, v).real
    if abs(norm - 1.0) > tol:
        raise LinalgError(f"state is not normalized (squared norm {norm!r})")
    return np.outer(v, np.conj(v))


def conjugate_evolve(u: ArrayLike, rho: ArrayLike, tol: float = DEFAULT_TOL) -> Matrix4:
    """Return ``u @ rho @ u^dagger`` for a unitary ``u``."""
    u = as_matrix4(u)
    rho = as_matrix4(rho)
    if not is_unitary(u, tol):
        raise LinalgError("evolution operator is not unitary")
    return u @ rho @ dagger(u)


def real_trace_product(p: ArrayLike, rho: ArrayLike, tol: float = DEFAULT_TOL) -> float:
    """Expectation ``Tr(p @ rho)`` of a Hermitian observable.

    Both operands are Hermitian, so the trace is real. A residual imaginary
    part above ``tol`` means one of them is corrupted and raises
    :class:`LinalgError`.
    """
    p = as_matrix4(p)
    rho = as_matrix4(rho)
    # Tr(P rho) = sum_ij P_ij rho_ji without forming the product
    value = np.sum(p * rho.T)
    if abs(value.imag) > tol:
        raise LinalgError(f"trace has imaginary part {value.imag!r}")
    return float(value.real)
