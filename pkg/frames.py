"""Finite frames in C^d.

A frame is stored through its synthesis matrix: a d x N complex array whose
column n is the vector phi_n. Inner products are conjugate-linear in the
second argument, so the analysis coefficients of f are ``V^H f``.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from errors import NotAFrameError, ShapeMismatchError, SymbolError

TOL_FRAME = 1e-12
TOL_DUAL = 1e-10
TOL_EQUIVALENT = 1e-8


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------

class FrameBounds(BaseModel):
    model_config = ConfigDict(frozen=True)

    lower: float = Field(ge=0)
    upper: float = Field(ge=0)

    @model_validator(mode="after")
    def _ordered(self) -> "FrameBounds":
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        return self

    @property
    def condition(self) -> float:
        return self.upper / self.lower if self.lower > 0 else float("inf")


class SignPattern(str, Enum):
    POSITIVE = "all-positive-real"
    NEGATIVE = "all-negative-real"
    MIXED = "mixed/complex"


class SymbolStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    inf_abs: float
    sup_abs: float
    lam: float
    sign: SignPattern
    has_zero: bool


class SymbolEnvelope(BaseModel):
    """Statistics of the full sequence a finite symbol was cut from."""

    model_config = ConfigDict(frozen=True)

    inf_abs: float = Field(ge=0)
    sup_abs: float = Field(ge=0)
    lam: float = Field(ge=0)


@dataclass(frozen=True, eq=False)
class Symbol:
    values: np.ndarray
    envelope: Optional[SymbolEnvelope] = None

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128).ravel()
        if values.size < 1:
            raise SymbolError("symbol must have at least one entry")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    @property
    def count(self) -> int:
        return self.values.size

    @cached_property
    def stats(self) -> SymbolStats:
        return symbol_stats(self)

    def conj(self) -> "Symbol":
        return Symbol(self.values.conj(), self.envelope)

    def reciprocal(self) -> "Symbol":
        if self.stats.has_zero:
            raise SymbolError("symbol has a zero entry, 1/m is undefined")
        return Symbol(1.0 / self.values)

    def condition_constants(self) -> tuple[float, float, float]:
        """(a, b, lambda) to feed into sufficient conditions.

        Uses the worse of the stored values and the envelope, so a section of
        a sequence is only admitted when the whole sequence would be.
        """
        stats = self.stats
        if self.envelope is None:
            return stats.inf_abs, stats.sup_abs, stats.lam
        env = self.envelope
        return (
            min(stats.inf_abs, env.inf_abs),
            max(stats.sup_abs, env.sup_abs),
            max(stats.lam, env.lam),
        )


def as_symbol(m) -> Symbol:
    return m if isinstance(m, Symbol) else Symbol(m)


def symbol_stats(m: Symbol) -> SymbolStats:
    values = as_symbol(m).values
    magnitudes = np.abs(values)
    inf_abs = float(magnitudes.min())
    if np.all(values.imag == 0) and np.all(values.real > 0):
        sign = SignPattern.POSITIVE
    elif np.all(values.imag == 0) and np.all(values.real < 0):
        sign = SignPattern.NEGATIVE
    else:
        sign = SignPattern.MIXED
    return SymbolStats(
        inf_abs=inf_abs,
        sup_abs=float(magnitudes.max()),
        lam=float(np.abs(values - 1).max()),
        sign=sign,
        has_zero=inf_abs == 0.0,
    )


def constant_symbol(count: int, c: complex = 1.0) -> Symbol:
    return Symbol(np.full(count, c, dtype=np.complex128))


def harmonic_symbol(count: int) -> Symbol:
    """The section (1, 1/2, ..., 1/N) of m = (1/n)."""
    values = 1.0 / np.arange(1, count + 1)
    return Symbol(values, SymbolEnvelope(inf_abs=0.0, sup_abs=1.0, lam=1.0))


def block_symbol(count: int) -> Symbol:
    """The section of (1,1,1, 1,2,2, 1,3,3, ...), block j being (1, j, j)."""
    blocks = np.arange(count) // 3 + 1
    values = np.where(np.arange(count) % 3 == 0, 1, blocks).astype(float)
    return Symbol(values, SymbolEnvelope(inf_abs=1.0, sup_abs=float("inf"), lam=float("inf")))


def uniform_symbol(count: int, lo: float = 0.5, hi: float = 1.0, seed: int = 0) -> Symbol:
    rng = np.random.default_rng(seed)
    return Symbol(rng.uniform(lo, hi, size=count))


# ---------------------------------------------------------------------------
# frames
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteFrame:
    vectors: np.ndarray

    def __post_init__(self):
        vectors = np.array(self.vectors, dtype=np.complex128)
        if vectors.ndim != 2 or vectors.shape[0] < 1 or vectors.shape[1] < 1:
            raise ShapeMismatchError(f"synthesis matrix must be d x N with d, N >= 1, got shape {vectors.shape}")
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @property
    def count(self) -> int:
        return self.vectors.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.vectors.shape

    @cached_property
    def operator(self) -> np.ndarray:
        return frame_operator(self)

    @cached_property
    def bounds(self) -> FrameBounds:
        return frame_bounds(self)

    def column(self, n: int) -> np.ndarray:
        return self.vectors[:, n]

    @classmethod
    def from_columns(cls, columns) -> "FiniteFrame":
        return cls(np.column_stack([np.asarray(c, dtype=np.complex128) for c in columns]))

    def scaled(self, c: complex) -> "FiniteFrame":
        return FiniteFrame(c * self.vectors)


def orthonormal_basis(d: int) -> FiniteFrame:
    return FiniteFrame(np.eye(d, dtype=np.complex128))


def spectral_norm(x: np.ndarray) -> float:
    """Largest singular value; the Euclidean norm for vectors."""
    x = np.asarray(x)
    if x.ndim == 1:
        return float(np.linalg.norm(x))
    if x.size == 0:
        return 0.0
    # eigvalsh of the smaller Gram matrix is much cheaper than a full SVD
    gram = x.conj().T @ x if x.shape[0] >= x.shape[1] else x @ x.conj().T
    top = np.linalg.eigvalsh(gram)[-1]
    return float(np.sqrt(max(top, 0.0)))


def hermitian_power(h: np.ndarray, power: float) -> np.ndarray:
    w, u = np.linalg.eigh(h)
    if power < 0 and np.any(w <= 0):
        raise NotAFrameError("operator is not positive definite")
    return (u * np.clip(w, 0, None) ** power) @ u.conj().T


def _check_vector(f, length: int, what: str) -> np.ndarray:
    f = np.asarray(f, dtype=np.complex128)
    if f.ndim != 1 or f.size != length:
        raise ShapeMismatchError(f"{what} must have length {length}, got shape {f.shape}")
    return f


def _check_same_shape(phi: FiniteFrame, psi: FiniteFrame) -> None:
    if phi.shape != psi.shape:
        raise ShapeMismatchError(f"frames differ in shape: {phi.shape} vs {psi.shape}")


def require_frame(frame: FiniteFrame, tol_frame: float = TOL_FRAME, name: str = "sequence") -> None:
    if not is_frame(frame, tol_frame):
        b = frame.bounds
        raise NotAFrameError(f"{name} is not a frame (A={b.lower:.3e}, B={b.upper:.3e})")


def analysis(frame: FiniteFrame, f) -> np.ndarray:
    f = _check_vector(f, frame.dim, "vector")
    return frame.vectors.conj().T @ f


def synthesis(frame: FiniteFrame, c) -> np.ndarray:
    c = _check_vector(c, frame.count, "coefficient vector")
    return frame.vectors @ c


def frame_operator(frame: FiniteFrame) -> np.ndarray:
    v = frame.vectors
    return v @ v.conj().T


def frame_bounds(frame: FiniteFrame) -> FrameBounds:
    eig = np.linalg.eigvalsh(frame.operator)
    # rounding can push the smallest eigenvalue of a singular S below zero
    return FrameBounds(lower=max(float(eig[0]), 0.0), upper=max(float(eig[-1]), 0.0))


def is_frame(frame: FiniteFrame, tol_frame: float = TOL_FRAME) -> bool:
    b = frame.bounds
    return b.lower > tol_frame * b.upper


def canonical_dual(frame: FiniteFrame) -> FiniteFrame:
    require_frame(frame)
    return FiniteFrame(np.linalg.solve(frame.operator, frame.vectors))


def canonical_tight(frame: FiniteFrame) -> FiniteFrame:
    require_frame(frame)
    return FiniteFrame(hermitian_power(frame.operator, -0.5) @ frame.vectors)


def dual_error(frame: FiniteFrame, candidate: FiniteFrame) -> float:
    _check_same_shape(frame, candidate)
    product = candidate.vectors @ frame.vectors.conj().T
    return spectral_norm(product - np.eye(frame.dim))


def is_dual(frame: FiniteFrame, candidate: FiniteFrame, tol: float = TOL_DUAL) -> tuple[bool, float]:
    """Check f = sum <f, phi_n> psi_n; eps < 1 certifies an eps-approximate dual."""
    eps = dual_error(frame, candidate)
    return eps <= tol, eps


def approximate_dual(frame: FiniteFrame, K: int) -> tuple[FiniteFrame, float]:
    """Truncated frame-algorithm series with relaxation 2/(A+B).

    The result satisfies eps <= ((B-A)/(B+A))^(K+1).
    """
    if K < 0:
        raise ValueError("K must be nonnegative")
    require_frame(frame)
    b = frame.bounds
    alpha = 2.0 / (b.lower + b.upper)
    residual = np.eye(frame.dim) - alpha * frame.operator
    term = np.eye(frame.dim, dtype=np.complex128)
    total = term.copy()
    for _ in range(K):
        term = residual @ term
        total += term
    dual = FiniteFrame(alpha * total @ frame.vectors)
    return dual, dual_error(frame, dual)


def approximate_dual_bound(frame: FiniteFrame, K: int) -> float:
    b = frame.bounds
    return ((b.upper - b.lower) / (b.upper + b.lower)) ** (K + 1)


def weighted_frame(frame: FiniteFrame, w) -> FiniteFrame:
    w = np.asarray(w.values if isinstance(w, Symbol) else w)
    if w.ndim != 1 or w.size != frame.count:
        raise ShapeMismatchError(f"weights must have length {frame.count}, got shape {w.shape}")
    if np.iscomplexobj(w):
        if np.any(w.imag != 0):
            raise SymbolError("weights must be real")
        w = w.real
    if np.any(w < 0):
        raise SymbolError("weights must be nonnegative")
    return FiniteFrame(frame.vectors * np.sqrt(w.astype(float))[None, :])


def scale_columns(frame: FiniteFrame, m) -> FiniteFrame:
    """The sequence (m_n phi_n)."""
    values = as_symbol(m).values
    if values.size != frame.count:
        raise ShapeMismatchError(f"symbol length {values.size} differs from frame count {frame.count}")
    return FiniteFrame(frame.vectors * values[None, :])


def kernel_basis(frame: FiniteFrame) -> np.ndarray:
    """Orthonormal basis (as columns) of the null space of the synthesis matrix."""
    v = frame.vectors
    _, s, vh = np.linalg.svd(v, full_matrices=True)
    cutoff = max(v.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj().T


def kernel_projection(frame: FiniteFrame) -> np.ndarray:
    k = kernel_basis(frame)
    return k @ k.conj().T


def frames_equivalent(
    phi: FiniteFrame,
    psi: FiniteFrame,
    tol: float = TOL_EQUIVALENT,
    require_frames: bool = False,
) -> bool:
    """True iff psi = G phi for some invertible G.

    In finite dimension this holds exactly when both synthesis matrices share
    their null space, which is what is compared here.
    """
    _check_same_shape(phi, psi)
    if require_frames:
        require_frame(phi, name="phi")
        require_frame(psi, name="psi")
    gap = kernel_projection(phi) - kernel_projection(psi)
    return spectral_norm(gap) <= tol


def random_frame(d: int, N: int, seed: int = 0, tol_frame: float = TOL_FRAME) -> FiniteFrame:
    if not N >= d >= 1:
        raise ShapeMismatchError(f"need N >= d >= 1, got d={d}, N={N}")
    rng = np.random.default_rng(seed)
    while True:
        v = (rng.standard_normal((d, N)) + 1j * rng.standard_normal((d, N))) / np.sqrt(2)
        frame = FiniteFrame(v)
        if is_frame(frame, tol_frame):
            return frame
