#!/usr/bin/env python3
# coding=utf-8

"""
Dense linear-algebra helpers shared by every module: Schatten norms, partial transpose and Hermiticity checks.

Trace norms are always computed from singular values, never from eigenvalue sums, since localized truncations and
commutators are generally non-Hermitian.
"""

from collections.abc import Sequence

import numpy as np
import scipy.linalg as la

from vt.quantum.entcone.errors import DomainError

type Matrix = np.ndarray
type Dims = tuple[int, int]


def dagger(m: Matrix) -> Matrix:
    """
    >>> assert np.array_equal(dagger(np.array([[1, 2j], [3, 4]])), np.array([[1, 3], [-2j, 4]]))
    """
    return np.conj(m).T


def trace_norm(m: Matrix) -> float:
    """
    Schatten-1 norm ``Tr (m* m)^(1/2)`` as the sum of singular values.

    >>> assert abs(trace_norm(np.diag([1.0, -2.0, 0.5])) - 3.5) < 1e-12
    >>> trace_norm(np.zeros((3, 3)))
    0.0

    :param m: any square or rectangular matrix.
    :return: the trace norm.
    """
    if m.size == 0:
        return 0.0
    return float(np.sum(la.svdvals(m)))


def operator_norm(m: Matrix) -> float:
    """
    Largest singular value.

    >>> assert abs(operator_norm(np.array([[0.0, 3.0], [4.0, 0.0]])) - 4.0) < 1e-12
    >>> operator_norm(np.zeros((0, 2)))
    0.0
    """
    if m.size == 0:
        return 0.0
    return float(la.svdvals(m)[0])


def hermiticity_residual(m: Matrix) -> float:
    """
    :return: largest entrywise deviation ``max |m - m*|``.
    """
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - dagger(m))))


def is_hermitian(m: Matrix, tol: float = 1e-12) -> bool:
    """
    >>> is_hermitian(np.array([[1.0, 1j], [-1j, 2.0]]))
    True
    >>> is_hermitian(np.array([[1.0, 1j], [1j, 2.0]]))
    False
    """
    return m.ndim == 2 and m.shape[0] == m.shape[1] and hermiticity_residual(m) <= tol


def hermitian_part(m: Matrix) -> Matrix:
    """
    Symmetrize away round-off so ``eigh`` sees an exactly Hermitian matrix.
    """
    return 0.5 * (m + dagger(m))


def min_eigenvalue(m: Matrix) -> float:
    """
    Smallest eigenvalue of the Hermitian part of ``m``.

    >>> assert abs(min_eigenvalue(np.array([[2.0, -1.0], [-1.0, 2.0]])) - 1.0) < 1e-12
    """
    return float(la.eigvalsh(hermitian_part(m))[0])


def partial_transpose(m: Matrix, dims: Dims) -> Matrix:
    """
    Partial transpose on the second (B) tensor factor.

    The basis ordering is ``(a, b) -> a * d_B + b``, i.e. the ordering of ``np.kron(A, B)``.

    >>> a = np.array([[1, 2], [3, 4]])
    >>> b = np.array([[5, 6], [7, 8]])
    >>> assert np.array_equal(partial_transpose(np.kron(a, b), (2, 2)), np.kron(a, b.T))

    Dimension mismatch is a domain error:

    >>> partial_transpose(np.eye(4), (3, 2))
    Traceback (most recent call last):
    vt.quantum.entcone.errors.DomainError: matrix of shape (4, 4) does not match dims (3, 2).

    :param m: operator on ``C^{d_A} (x) C^{d_B}``.
    :param dims: ``(d_A, d_B)``.
    :return: ``m^{T_B}``.
    """
    d_a, d_b = dims
    n = d_a * d_b
    if m.shape != (n, n):
        raise DomainError(f"matrix of shape {m.shape} does not match dims {dims}.")
    return m.reshape(d_a, d_b, d_a, d_b).transpose(0, 3, 2, 1).reshape(n, n)


def block(m: Matrix, rows: Sequence[int] | np.ndarray, cols: Sequence[int] | np.ndarray) -> Matrix:
    """
    Rows/columns sub-block ``m[rows][:, cols]``.

    >>> block(np.arange(9).reshape(3, 3), [0, 2], [1])
    array([[1],
           [7]])
    """
    return m[np.ix_(np.asarray(rows, dtype=int), np.asarray(cols, dtype=int))]


def ab_indices(sites: Sequence[int] | np.ndarray, d_b: int) -> np.ndarray:
    """
    Indices of ``span{|x>|b> : x in sites}`` in the tensor-product basis.

    >>> ab_indices([1, 3], 2)
    array([2, 3, 6, 7])
    """
    s = np.asarray(sites, dtype=int)
    return (s[:, None] * d_b + np.arange(d_b)[None, :]).reshape(-1)


def psd_sqrt_inverse(m: Matrix, shift: float = 1.0) -> Matrix:
    """
    ``(m + shift)^(-1/2)`` for Hermitian ``m`` with ``m + shift > 0``.

    >>> r = psd_sqrt_inverse(np.diag([0.0, 3.0]))
    >>> assert np.allclose(r, np.diag([1.0, 0.5]))
    """
    w, v = la.eigh(hermitian_part(m))
    return (v * (w + shift) ** -0.5) @ dagger(v)
