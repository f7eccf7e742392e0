"""Spectrum, continuous functional calculus, roots, absolute value and parts.

Invertibility in a direct sum of matrix algebras is blockwise, so the
spectrum is the union of the block eigenvalue multisets.  Functional
calculus is only offered for normal elements: per block we unitarily
diagonalize (Schur form, which is diagonal for normal matrices) and apply
the scalar function to the eigenvalues.  Eigenvalues closer together than
``snap_eps * max(1, ||a||)`` are merged before applying the function, so
that a function cannot separate numerically split degenerate eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.linalg

from .algebra import (DEFAULT_TOL, Element, ToleranceConfig, adjoint, is_positive,
                      is_self_adjoint, mul, operator_norm, symmetrize)
from .errors import FunctionUndefinedOnSpectrum, NotNormal, NotPositive, NotSelfAdjoint


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset of an element, total and per block."""

    values: tuple[complex, ...]
    per_block: tuple[tuple[complex, ...], ...]

    def max_abs(self) -> float:
        return max((abs(v) for v in self.values), default=0.0)

    def real_values(self) -> tuple[float, ...]:
        return tuple(v.real for v in self.values)


def _sorted(vals: np.ndarray) -> tuple[complex, ...]:
    order = np.lexsort((vals.imag, vals.real))
    return tuple(complex(v) for v in vals[order])


def spectrum(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> Spectrum:
    """Blockwise eigenvalues with multiplicity."""
    hermitian = is_self_adjoint(a, tol)
    per_block = []
    for b in a.blocks:
        if hermitian:
            vals = np.linalg.eigvalsh((b + b.conj().T) / 2).astype(complex)
        else:
            vals = np.linalg.eigvals(b)
        per_block.append(_sorted(vals))
    values = _sorted(np.array([v for blk in per_block for v in blk], dtype=complex))
    return Spectrum(values, tuple(per_block))


def spectral_radius(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    return spectrum(a, tol).max_abs()


def is_normal(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    d = mul(adjoint(a), a) - mul(a, adjoint(a))
    return operator_norm(d) <= tol.eps_abs + tol.eps_rel * max(1.0, operator_norm(a) ** 2)


def _cluster(vals: np.ndarray, snap: float) -> list[list[int]]:
    """Greedy clustering of eigenvalues within a snap radius."""
    clusters: list[list[int]] = []
    centers: list[complex] = []
    for idx in np.argsort(vals.real + 1e-3 * vals.imag):
        v = complex(vals[idx])
        for c, members in zip(centers, clusters):
            if abs(v - c) <= snap:
                members.append(int(idx))
                break
        else:
            clusters.append([int(idx)])
            centers.append(v)
    return clusters


def _apply_block(b: np.ndarray, f: Callable[[complex], complex], snap: float,
                 hermitian: bool) -> np.ndarray:
    if b.size == 0:
        return b
    if hermitian:
        vals, vecs = np.linalg.eigh((b + b.conj().T) / 2)
        vals = vals.astype(complex)
    else:
        t, vecs = scipy.linalg.schur(b.astype(complex), output="complex")
        vals = np.diag(t)
    out_vals = np.empty(len(vals), dtype=complex)
    for members in _cluster(vals, snap):
        center = np.mean(vals[members])
        if hermitian:
            center = complex(center.real)
        try:
            fv = complex(f(center))
        except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
            raise FunctionUndefinedOnSpectrum(f"f undefined at {center}: {exc}") from exc
        if not np.isfinite(fv):
            raise FunctionUndefinedOnSpectrum(f"f not finite at {center}")
        out_vals[members] = fv
    return vecs @ np.diag(out_vals) @ vecs.conj().T


def functional_calculus(a: Element, f: Callable[[complex], complex],
                        tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    """Apply a scalar function to a normal element via diagonalization."""
    if not is_normal(a, tol):
        raise NotNormal("functional calculus needs a normal element")
    hermitian = is_self_adjoint(a, tol)
    snap = tol.snap_eps * max(1.0, operator_norm(a))
    src = symmetrize(a) if hermitian else a
    return a.algebra.element(
        _apply_block(b, f, snap, hermitian) for b in src.blocks)


def _clip_sqrt(eps: float) -> Callable[[complex], complex]:
    def f(lam: complex) -> complex:
        x = lam.real
        if x < -eps:
            raise ValueError(f"negative eigenvalue {x}")
        return np.sqrt(max(x, 0.0))
    return f


def sqrt(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    """The unique positive square root of a positive element."""
    if not is_positive(a, tol):
        raise NotPositive("sqrt needs a positive element")
    eps = tol.eps_rel * max(1.0, operator_norm(a))
    return functional_calculus(a, _clip_sqrt(eps), tol)


def power(a: Element, alpha: float, tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    """a**alpha for positive a and alpha > 0, clipping eigenvalue noise at 0."""
    if not is_positive(a, tol):
        raise NotPositive("power needs a positive element")
    return functional_calculus(a, lambda lam: max(lam.real, 0.0) ** alpha, tol)


def _require_self_adjoint(a: Element, tol: ToleranceConfig):
    if not is_self_adjoint(a, tol):
        raise NotSelfAdjoint("operation needs a self-adjoint element")


def absolute(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    """|a| = sqrt(a*a) for self-adjoint a."""
    _require_self_adjoint(a, tol)
    return functional_calculus(symmetrize(a), lambda lam: abs(lam.real), tol)


def pos_part(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    _require_self_adjoint(a, tol)
    return functional_calculus(symmetrize(a), lambda lam: max(lam.real, 0.0), tol)


def neg_part(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    _require_self_adjoint(a, tol)
    return functional_calculus(symmetrize(a), lambda lam: max(-lam.real, 0.0), tol)


def _named_pow(spec: str) -> Callable[[complex], complex]:
    alpha = float(spec.split(":", 1)[1])
    return lambda lam: max(lam.real, 0.0) ** alpha


def _exp_phase(lam: complex) -> complex:
    """lam**i on the positive reals, 1 at 0; satisfies g(x^2) = g(x)^2."""
    x = lam.real
    if x <= 0.0:
        return 1.0
    return np.exp(1j * np.log(x))


def named_function(name: str) -> Callable[[complex], complex]:
    """Resolve a scalar function by CLI name.

    Supported: ``sqrt``, ``abs``, ``pospart``, ``negpart``, ``pow:ALPHA``,
    ``exp-phase``.
    """
    if name.startswith("pow:"):
        return _named_pow(name)
    table: dict[str, Callable[[complex], complex]] = {
        "sqrt": lambda lam: np.sqrt(max(lam.real, 0.0)),
        "abs": lambda lam: abs(lam.real),
        "pospart": lambda lam: max(lam.real, 0.0),
        "negpart": lambda lam: max(-lam.real, 0.0),
        "exp-phase": _exp_phase,
    }
    if name not in table:
        raise KeyError(f"unknown function name {name!r}")
    return table[name]


def sqrt_iterative(a: Element, iterations: int = 200,
                   tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    """Square root through the fixed-point iteration b <- (c + b^2)/2.

    For an effect c the iteration converges to b with (1 - b)^2 = 1 - c.
    Positive input is rescaled to an effect first.  Kept as an independent
    cross-check for :func:`sqrt`.
    """
    if not is_positive(a, tol):
        raise NotPositive("sqrt_iterative needs a positive element")
    norm = operator_norm(a)
    if norm == 0.0:
        return a.algebra.zero()
    scaled = (1.0 / norm) * a
    c = a.algebra.unit() - scaled
    b = a.algebra.zero()
    for _ in range(iterations):
        b = 0.5 * (c + mul(b, b))
    return float(np.sqrt(norm)) * (a.algebra.unit() - b)


def eigen_oracle_charpoly(matrix: Sequence[Sequence[complex]]) -> list[complex]:
    """Roots of the characteristic polynomial, for test oracles.

    Independent of the eigensolver route used by :func:`spectrum`: builds
    the characteristic polynomial coefficients recursively (Faddeev-LeVerrier)
    and calls the companion-matrix root finder.
    """
    m = np.asarray(matrix, dtype=complex)
    n = m.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    mk = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        mk = m @ mk
        coeffs[k] = -np.trace(mk) / k
        mk += coeffs[k] * np.eye(n)
    return [complex(r) for r in np.roots(coeffs)]
