"""Dual frames induced by an invertible multiplier.

For invertible M = M_{m,Phi,Psi} with zero-free m the sequences

    Psi_dagger = (M^{-1} m_n phi_n)        a dual frame of Psi
    Phi_dagger = (M^{-H} conj(m_n) psi_n)   a dual frame of Phi

turn the inverse back into a multiplier, M^{-1} = M_{1/m, Psi_dagger, Phi_d}
for every dual Phi_d of Phi.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

import multiplier
from errors import NotADualError, ShapeMismatchError
from frames import (
    FiniteFrame,
    Symbol,
    as_symbol,
    canonical_dual,
    dual_error,
    frames_equivalent,
    kernel_basis,
    scale_columns,
    spectral_norm,
)
from gabor import GaborSystem, frame_type_operator, gabor_dual_window, gabor_frame
from inversion import direct_invert
from log_helpers import get_logger

log = get_logger(__name__)

TOL_REPRESENTATION = 1e-9
TOL_COINCIDENCE = 1e-8


@dataclass(frozen=True, eq=False)
class DualPair:
    psi_dagger: FiniteFrame
    phi_dagger: FiniteFrame
    verification: dict[str, float] = field(default_factory=dict)


def _relative_gap(x: np.ndarray, y: np.ndarray) -> float:
    scale = spectral_norm(y)
    gap = spectral_norm(np.asarray(x) - np.asarray(y))
    return gap / scale if scale > 0 else gap


def psi_dagger(M_inv: np.ndarray, m, phi: FiniteFrame) -> FiniteFrame:
    m = as_symbol(m)
    m.reciprocal()  # rejects zero entries
    return FiniteFrame(np.asarray(M_inv) @ scale_columns(phi, m).vectors)


def phi_dagger(M_inv: np.ndarray, m, psi: FiniteFrame) -> FiniteFrame:
    m = as_symbol(m)
    m.reciprocal()
    return FiniteFrame(np.asarray(M_inv).conj().T @ scale_columns(psi, m.conj()).vectors)


def dual_pair(op: multiplier.MultiplierOp, M_inv: np.ndarray) -> DualPair:
    psi_d = psi_dagger(M_inv, op.symbol, op.frame_phi)
    phi_d = phi_dagger(M_inv, op.symbol, op.frame_psi)
    return DualPair(
        psi_dagger=psi_d,
        phi_dagger=phi_d,
        verification={
            "psi_dagger_dual_eps": dual_error(op.frame_psi, psi_d),
            "phi_dagger_dual_eps": dual_error(op.frame_phi, phi_d),
        },
    )


@dataclass(frozen=True)
class RepresentationCheck:
    residual: float
    dual_eps: Optional[float]
    accepted: bool


def verify_inverse_representation(
    M_inv: np.ndarray,
    m,
    psi_d: FiniteFrame,
    candidates: Sequence[FiniteFrame],
    phi: Optional[FiniteFrame] = None,
    strict: bool = False,
    tol: float = TOL_REPRESENTATION,
) -> list[RepresentationCheck]:
    """Compare M^{-1} with M_{1/m, Psi_dagger, Phi_d} for each candidate Phi_d.

    With ``phi`` given each candidate is also tested as a dual of phi; under
    ``strict`` a failing candidate raises NotADualError.
    """
    reciprocal = as_symbol(m).reciprocal()
    checks = []
    for i, candidate in enumerate(candidates):
        eps = None
        if phi is not None:
            eps = dual_error(phi, candidate)
            if strict and eps > tol:
                raise NotADualError(f"candidate {i} is not a dual frame of Phi (eps={eps:.3e})")
        residual = _relative_gap(multiplier.multiplier_matrix(reciprocal, psi_d, candidate), M_inv)
        accepted = residual <= tol and (eps is None or eps <= tol)
        checks.append(RepresentationCheck(residual, eps, accepted))
    return checks


def alternate_dual(frame: FiniteFrame, seed: int = 0) -> FiniteFrame:
    """Canonical dual plus W K^H, K an orthonormal basis of the synthesis null space."""
    dual = canonical_dual(frame)
    K = kernel_basis(frame)
    if K.shape[1] == 0:
        return dual
    rng = np.random.default_rng(seed)
    W = (rng.standard_normal((frame.dim, K.shape[1])) + 1j * rng.standard_normal((frame.dim, K.shape[1]))) / np.sqrt(2)
    return FiniteFrame(dual.vectors + W @ K.conj().T)


def solve_psi_dagger(M_inv: np.ndarray, m, duals: Sequence[FiniteFrame]) -> FiniteFrame:
    """Least-squares X with M^{-1} = M_{1/m, X, Phi_d} for every given dual."""
    if not duals:
        raise ShapeMismatchError("need at least one dual frame")
    weights = as_symbol(m).reciprocal().values
    # M^{-1} = X diag(1/m) D^H, stacked over the duals
    blocks = np.hstack([weights[:, None] * d.vectors.conj().T for d in duals])
    rhs = np.hstack([np.asarray(M_inv)] * len(duals))
    solution, *_ = np.linalg.lstsq(blocks.T, rhs.T, rcond=None)
    return FiniteFrame(solution.T)


@dataclass(frozen=True)
class CoincidenceReport:
    psi_case: bool
    phi_case: bool
    psi_distance: float
    phi_distance: float

    @property
    def psi_direct(self) -> bool:
        return self.psi_distance <= TOL_COINCIDENCE

    @property
    def phi_direct(self) -> bool:
        return self.phi_distance <= TOL_COINCIDENCE

    @property
    def consistent(self) -> bool:
        return self.psi_case == self.psi_direct and self.phi_case == self.phi_direct


def canonical_coincidence(M_inv: np.ndarray, m, phi: FiniteFrame, psi: FiniteFrame) -> CoincidenceReport:
    """Psi_dagger is the canonical dual of Psi iff Psi is equivalent to m*Phi; mirrored for Phi."""
    m = as_symbol(m)
    psi_d = psi_dagger(M_inv, m, phi)
    phi_d = phi_dagger(M_inv, m, psi)
    report = CoincidenceReport(
        psi_case=frames_equivalent(psi, scale_columns(phi, m)),
        phi_case=frames_equivalent(phi, scale_columns(psi, m.conj())),
        psi_distance=_relative_gap(psi_d.vectors, canonical_dual(psi).vectors),
        phi_distance=_relative_gap(phi_d.vectors, canonical_dual(phi).vectors),
    )
    if not report.consistent:
        log.warning("equivalence test disagrees with direct coincidence", **report.__dict__)
    return report


def riesz_inverse_formula(m, phi: FiniteFrame, psi: FiniteFrame) -> float:
    """Relative gap between M^{-1} and M_{1/m, canonical dual Psi, canonical dual Phi} for bases."""
    m = as_symbol(m)
    for frame in (phi, psi):
        if frame.count != frame.dim:
            raise ShapeMismatchError(f"bases need N = d, got {frame.dim} x {frame.count}")
    M_inv = direct_invert(multiplier.multiplier_matrix(m, phi, psi))
    formula = multiplier.multiplier_matrix(m.reciprocal(), canonical_dual(psi), canonical_dual(phi))
    return _relative_gap(formula, M_inv)


# ---------------------------------------------------------------------------
# constant symbols and Gabor structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantChain:
    invertible: bool
    canonical_formula: bool
    equivalent: bool
    psi_dagger_canonical: bool
    phi_dagger_canonical: bool

    @property
    def statements(self) -> tuple[bool, bool, bool, bool]:
        return (
            self.invertible and self.canonical_formula,
            self.equivalent,
            self.invertible and self.psi_dagger_canonical,
            self.invertible and self.phi_dagger_canonical,
        )

    @property
    def agree(self) -> bool:
        return len(set(self.statements)) == 1


def constant_symbol_chain(c: complex, phi: FiniteFrame, psi: FiniteFrame) -> ConstantChain:
    """Evaluate each statement of the constant-symbol equivalence chain on its own."""
    if c == 0:
        raise ValueError("constant symbol must be nonzero")
    m = Symbol(np.full(phi.count, c, dtype=np.complex128))
    equivalent = frames_equivalent(phi, psi)
    op = multiplier.build(m, phi, psi)
    if not multiplier.classify(op).invertible:
        return ConstantChain(False, False, equivalent, False, False)
    M_inv = direct_invert(op.matrix)
    psi_tilde, phi_tilde = canonical_dual(psi), canonical_dual(phi)
    formula = multiplier.multiplier_matrix(m.reciprocal(), psi_tilde, phi_tilde)
    return ConstantChain(
        invertible=True,
        canonical_formula=_relative_gap(formula, M_inv) <= TOL_REPRESENTATION,
        equivalent=equivalent,
        psi_dagger_canonical=_relative_gap(psi_dagger(M_inv, m, phi).vectors, psi_tilde.vectors) <= TOL_COINCIDENCE,
        phi_dagger_canonical=_relative_gap(phi_dagger(M_inv, m, psi).vectors, phi_tilde.vectors) <= TOL_COINCIDENCE,
    )


def frame_type_inverse(
    phi_system: GaborSystem,
    psi_system: GaborSystem,
) -> tuple[multiplier.MultiplierOp, multiplier.MultiplierOp]:
    """Both Gabor frame-type forms of V^{-1}, V = M_{(1),Phi,Psi}.

    V^{-1} = M_{(1), (E T V^{-1} v), canonical dual of Phi}
           = M_{(1), canonical dual of Psi, (E T V^{-H} u)}
    with v, u the windows of Phi and Psi.
    """
    V = frame_type_operator(phi_system, psi_system)
    V_inv = direct_invert(V.matrix)
    ones = V.symbol
    lattice = phi_system.lattice
    phi_dual = gabor_frame(GaborSystem(lattice, gabor_dual_window(phi_system)))
    psi_dual = gabor_frame(GaborSystem(lattice, gabor_dual_window(psi_system)))
    left = gabor_frame(GaborSystem(lattice, V_inv @ phi_system.window))
    right = gabor_frame(GaborSystem(lattice, V_inv.conj().T @ psi_system.window))
    return multiplier.build(ones, left, phi_dual), multiplier.build(ones, psi_dual, right)
