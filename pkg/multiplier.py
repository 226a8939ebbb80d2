"""Frame multipliers M_{m,Phi,Psi} f = sum_n m_n <f, psi_n> phi_n."""

from dataclasses import dataclass

import numpy as np

from errors import NotAFrameError, ShapeMismatchError
from frames import (
    TOL_FRAME,
    FiniteFrame,
    Symbol,
    analysis,
    as_symbol,
    frame_bounds,
    scale_columns,
    spectral_norm,
    synthesis,
)

BOUND_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class MultiplierOp:
    symbol: Symbol
    frame_phi: FiniteFrame
    frame_psi: FiniteFrame
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.frame_phi.dim

    @property
    def count(self) -> int:
        return self.frame_phi.count


def _check_ingredients(m: Symbol, phi: FiniteFrame, psi: FiniteFrame) -> None:
    if phi.shape != psi.shape:
        raise ShapeMismatchError(f"frames differ in shape: {phi.shape} vs {psi.shape}")
    if m.count != phi.count:
        raise ShapeMismatchError(f"symbol length {m.count} differs from frame count {phi.count}")


def multiplier_matrix(m, phi: FiniteFrame, psi: FiniteFrame) -> np.ndarray:
    m = as_symbol(m)
    _check_ingredients(m, phi, psi)
    return (phi.vectors * m.values[None, :]) @ psi.vectors.conj().T


def build(m, phi: FiniteFrame, psi: FiniteFrame) -> MultiplierOp:
    m = as_symbol(m)
    matrix = multiplier_matrix(m, phi, psi)
    matrix.setflags(write=False)
    return MultiplierOp(m, phi, psi, matrix)


def apply(op: MultiplierOp, f) -> np.ndarray:
    # matrix-free: analysis by Psi, pointwise symbol, synthesis by Phi
    return synthesis(op.frame_phi, op.symbol.values * analysis(op.frame_psi, f))


def adjoint(op: MultiplierOp) -> MultiplierOp:
    return build(op.symbol.conj(), op.frame_psi, op.frame_phi)


def adjoint_identity_check(op: MultiplierOp) -> float:
    gap = spectral_norm(op.matrix.conj().T - adjoint(op).matrix)
    scale = spectral_norm(op.matrix)
    return gap / scale if scale > 0 else gap


def norm_bound_check(op: MultiplierOp) -> tuple[float, float]:
    lhs = spectral_norm(op.matrix)
    rhs = np.sqrt(op.frame_phi.bounds.upper * op.frame_psi.bounds.upper) * op.symbol.stats.sup_abs
    return lhs, float(rhs)


# ---------------------------------------------------------------------------
# Schatten classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchattenReport:
    p: float
    trace: complex
    trace_formula: complex
    trace_gap: float
    trace_norm: float
    hs_norm: float
    p_norm: float
    trace_norm_bound: float
    hs_norm_bound: float
    p_norm_bound: float
    bounds_ok: bool


def _within(lhs: float, rhs: float) -> bool:
    return lhs <= rhs * (1 + BOUND_SLACK) + np.finfo(float).tiny


def schatten_report(op: MultiplierOp, p: float = 2.0) -> SchattenReport:
    if p < 1:
        raise ValueError(f"Schatten exponent must be >= 1, got {p}")
    s = np.linalg.svd(op.matrix, compute_uv=False)
    m = op.symbol.values
    trace = complex(np.trace(op.matrix))
    # tr M = sum_n m_n <phi_n, psi_n>
    trace_formula = complex(np.sum(m * np.sum(op.frame_phi.vectors * op.frame_psi.vectors.conj(), axis=0)))
    trace_norm = float(s.sum())
    hs_norm = float(np.sqrt(np.sum(s**2)))
    p_norm = float(np.sum(s**p) ** (1 / p))
    scale = np.sqrt(op.frame_phi.bounds.upper * op.frame_psi.bounds.upper)
    bounds = (
        float(scale * np.linalg.norm(m, 1)),
        float(scale * np.linalg.norm(m, 2)),
        float(scale * np.sum(np.abs(m) ** p) ** (1 / p)),
    )
    return SchattenReport(
        p=p,
        trace=trace,
        trace_formula=trace_formula,
        trace_gap=abs(trace - trace_formula) / trace_norm if trace_norm > 0 else abs(trace - trace_formula),
        trace_norm=trace_norm,
        hs_norm=hs_norm,
        p_norm=p_norm,
        trace_norm_bound=bounds[0],
        hs_norm_bound=bounds[1],
        p_norm_bound=bounds[2],
        bounds_ok=all(_within(lhs, rhs) for lhs, rhs in zip((trace_norm, hs_norm, p_norm), bounds)),
    )


# ---------------------------------------------------------------------------
# invertibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    injective: bool
    surjective: bool
    invertible: bool
    condition: float
    sigma_min: float
    sigma_max: float


def classify_matrix(X: np.ndarray, tol: float = TOL_FRAME) -> Classification:
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ShapeMismatchError(f"expected a square matrix, got shape {X.shape}")
    s = np.linalg.svd(X, compute_uv=False)
    sigma_max, sigma_min = float(s[0]), float(s[-1])
    # square: injective, surjective and invertible coincide
    invertible = sigma_max > 0 and sigma_min > tol * sigma_max
    condition = sigma_max / sigma_min if sigma_min > 0 else float("inf")
    return Classification(invertible, invertible, invertible, condition, sigma_min, sigma_max)


def classify(op: MultiplierOp, tol: float = TOL_FRAME) -> Classification:
    return classify_matrix(op.matrix, tol)


def _require_bases(*frames: FiniteFrame) -> None:
    for frame in frames:
        if frame.count != frame.dim:
            raise ShapeMismatchError(f"basis needs N = d, got {frame.dim} x {frame.count}")
        if not classify_matrix(frame.vectors).invertible:
            raise NotAFrameError("synthesis matrix is singular, not a basis")


def recover_symbol(X: np.ndarray, phi: FiniteFrame, psi: FiniteFrame) -> tuple[Symbol, float]:
    """Symbol of X as a multiplier over the bases phi and psi.

    Returns the symbol and the relative size of the off-diagonal part; a
    nonzero remainder means X is not a multiplier for this pair.
    """
    _require_bases(phi, psi)
    core = np.linalg.solve(phi.vectors, np.asarray(X, dtype=np.complex128))
    core = np.linalg.solve(psi.vectors.conj(), core.T).T
    diagonal = np.diag(core).copy()
    off = core - np.diag(diagonal)
    scale = spectral_norm(core)
    return Symbol(diagonal), (spectral_norm(off) / scale if scale > 0 else 0.0)


def riesz_invertibility(m, phi: FiniteFrame, psi: FiniteFrame) -> tuple[bool, bool]:
    """(symbol has no zero, multiplier invertible); over bases the two agree."""
    m = as_symbol(m)
    _require_bases(phi, psi)
    return not m.stats.has_zero, classify(build(m, phi, psi)).invertible


@dataclass(frozen=True)
class LowerBoundCheck:
    phi_lower: float
    phi_required: float
    psi_lower: float
    psi_required: float

    @property
    def ok(self) -> bool:
        tol = 1e-9
        return self.phi_lower >= self.phi_required * (1 - tol) and self.psi_lower >= self.psi_required * (1 - tol)


def lower_frame_bound_check(op: MultiplierOp, inverse: np.ndarray) -> LowerBoundCheck:
    """Lower frame bounds an invertible multiplier forces on m*Phi and conj(m)*Psi."""
    inv_norm = spectral_norm(inverse)
    m = op.symbol
    return LowerBoundCheck(
        phi_lower=frame_bounds(scale_columns(op.frame_phi, m)).lower,
        phi_required=1.0 / (op.frame_psi.bounds.upper * inv_norm**2),
        psi_lower=frame_bounds(scale_columns(op.frame_psi, m.conj())).lower,
        psi_required=1.0 / (op.frame_phi.bounds.upper * inv_norm**2),
    )
