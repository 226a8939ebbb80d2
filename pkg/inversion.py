"""Neumann-type inversion of frame multipliers with a-priori error bounds.

Each scheme checks its sufficient condition, plans the number of terms from
its n-term bound ``ratio**(n+1) * scale`` and accumulates the series. When an
oracle inverse is supplied the absolute spectral-norm error of every partial
sum is recorded next to the predicted bound.
"""

import math
from dataclasses import dataclass
from typing import Callable, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

import multiplier
from errors import ConditionViolatedError, ShapeMismatchError, SingularMatrixError, SymbolError
from frames import (
    FiniteFrame,
    SignPattern,
    Symbol,
    as_symbol,
    dual_error,
    frame_operator,
    require_frame,
    spectral_norm,
    weighted_frame,
)
from gabor import GaborSystem
from log_helpers import get_logger

log = get_logger(__name__)

Method = Literal["prop8", "prop8_apply", "prop9", "prop11", "direct", "gphi"]
METHODS = ("prop8", "prop9", "prop11", "direct")

DIRECT_RESIDUAL = 1e-11
SANDWICH_SAMPLES = 20
SANDWICH_SEED = 20
SANDWICH_SLACK = 1e-6
MAX_ITERATIONS = 10_000


class InversionReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    method: Method
    stage: str = ""
    constants: dict[str, float] = Field(default_factory=dict)
    ratio: float = 0.0
    scale: float = 0.0
    n_planned: int = 0
    bounds: list[float] = Field(default_factory=list)
    residuals: list[float] = Field(default_factory=list)
    converged: bool = False
    checks: dict[str, float | bool] = Field(default_factory=dict)
    inner: Optional["InversionReport"] = None
    # inverse of M_{m,Psi,Phi}, built on the same n alongside the main inverse
    companion: Optional[np.ndarray] = Field(default=None, exclude=True, repr=False)

    @property
    def final_bound(self) -> float:
        return self.bounds[-1] if self.bounds else 0.0

    @property
    def final_residual(self) -> Optional[float]:
        return self.residuals[-1] if self.residuals else None

    def header(self) -> str:
        fields = [f"method={self.method}"]
        if self.stage:
            fields.append(f"stage={self.stage}")
        fields.extend(f"{key}={value:.17g}" for key, value in self.constants.items())
        fields.append(f"n={self.n_planned}")
        return "# " + " ".join(fields)

    def to_lines(self) -> list[str]:
        lines = [self.header()]
        for k, bound in enumerate(self.bounds):
            measured = f"{self.residuals[k]:.17g}" if k < len(self.residuals) else ""
            lines.append(f"{k},{bound:.17g},{measured}")
        return lines

    def relative_residuals(self, oracle_norm: float) -> list[float]:
        return [r / oracle_norm for r in self.residuals]

    def dominated(self, slack: float = 1e-6, floor: float = 0.0) -> bool:
        """Every measured error sits below its predicted bound."""
        return all(r <= b * (1 + slack) + floor for r, b in zip(self.residuals, self.bounds))


InversionReport.model_rebuild()


# ---------------------------------------------------------------------------
# shared pieces
# ---------------------------------------------------------------------------

def mu_perturbation(phi: FiniteFrame, psi: FiniteFrame) -> float:
    """Optimal mu with sum |<h, psi_n - phi_n>|^2 <= mu ||h||^2."""
    if phi.shape != psi.shape:
        raise ShapeMismatchError(f"frames differ in shape: {phi.shape} vs {psi.shape}")
    return spectral_norm(psi.vectors - phi.vectors) ** 2


def plan_iterations(ratio: float, scale: float, e: float) -> int:
    """Smallest n >= 0 with ratio**(n+1) * scale <= e."""
    if ratio >= 1:
        raise ConditionViolatedError(f"series ratio {ratio:.6g} >= 1 does not converge", {"ratio": ratio})
    if e <= 0:
        raise ValueError(f"target error must be positive, got {e}")
    if ratio <= 0 or scale <= 0 or ratio * scale <= e:
        return 0
    n = max(0, math.ceil(math.log(e / scale) / math.log(ratio)) - 1)
    if n > MAX_ITERATIONS:
        raise ConditionViolatedError(
            f"series ratio {ratio:.17g} needs {n} terms, more than {MAX_ITERATIONS}", {"ratio": ratio, "n": n}
        )
    while n > 0 and ratio**n * scale <= e:
        n -= 1
    while ratio ** (n + 1) * scale > e:
        n += 1
    return n


def _bounds(ratio: float, scale: float, n: int) -> list[float]:
    return [ratio ** (k + 1) * scale for k in range(n + 1)]


def _accumulate(
    step: Callable[[np.ndarray], np.ndarray],
    base: np.ndarray,
    n: int,
    oracle: Optional[np.ndarray] = None,
    transform: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    method: str = "",
) -> tuple[np.ndarray, list[float]]:
    # total = sum_{k=0}^{n} P^k base, with term <- P term
    term = base
    total = base.copy()
    residuals: list[float] = []

    def measure(k: int) -> None:
        if oracle is None:
            return
        current = transform(total) if transform is not None else total
        residuals.append(spectral_norm(current - oracle))
        log.debug("iteration", method=method, k=k, residual=residuals[-1])

    measure(0)
    for k in range(1, n + 1):
        term = step(term)
        total = total + term
        measure(k)
    return total, residuals


def _attach_companion(report: InversionReport, P: np.ndarray, base: np.ndarray, M_swapped: np.ndarray) -> None:
    """Sum the series of M_{m,Psi,Phi} with the same n and keep it on the report."""
    companion, _ = _accumulate(lambda q: P @ q, base, report.n_planned)
    report.companion = companion
    report.checks["companion_identity_residual"] = spectral_norm(companion @ M_swapped - np.eye(companion.shape[0]))


def _report(method: Method, constants: dict, ratio: float, scale: float, e: float, stage: str = "") -> InversionReport:
    if ratio >= 1:
        raise ConditionViolatedError(
            f"{method}{' ' + stage if stage else ''}: contraction ratio {ratio:.6g} >= 1, "
            + ", ".join(f"{k}={v:.6g}" for k, v in constants.items()),
            constants,
        )
    n = plan_iterations(ratio, scale, e)
    bounds = _bounds(ratio, scale, n)
    log.info("planned", method=method, stage=stage, n=n, ratio=ratio, scale=scale)
    return InversionReport(
        method=method,
        stage=stage,
        constants={k: float(v) for k, v in constants.items()},
        ratio=ratio,
        scale=scale,
        n_planned=n,
        bounds=bounds,
        converged=bounds[-1] <= e,
    )


def _sandwich(report: InversionReport, inverse: np.ndarray, low: float, high: float, name: str = "sandwich") -> None:
    """Check low*||h|| <= ||M^{-1} h|| <= high*||h|| on seeded random vectors."""
    d = inverse.shape[0]
    rng = np.random.default_rng(SANDWICH_SEED)
    h = rng.standard_normal((d, SANDWICH_SAMPLES)) + 1j * rng.standard_normal((d, SANDWICH_SAMPLES))
    gains = np.linalg.norm(inverse @ h, axis=0) / np.linalg.norm(h, axis=0)
    ok = bool(gains.min() >= low * (1 - SANDWICH_SLACK) and gains.max() <= high * (1 + SANDWICH_SLACK))
    report.checks.update({f"{name}_low": low, f"{name}_high": high, f"{name}_min_gain": float(gains.min()),
                          f"{name}_max_gain": float(gains.max()), f"{name}_ok": ok})
    if not ok:
        log.warning("sandwich inequality violated", method=report.method, low=low, high=high,
                    min_gain=float(gains.min()), max_gain=float(gains.max()))


def direct_invert(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=np.complex128)
    if not multiplier.classify_matrix(M).invertible:
        raise SingularMatrixError("matrix is numerically singular")
    X = np.linalg.solve(M, np.eye(M.shape[0], dtype=np.complex128))
    residual = spectral_norm(M @ X - np.eye(M.shape[0]))
    if residual > DIRECT_RESIDUAL:
        log.warning("direct inverse residual above contract", residual=residual)
    return X


# ---------------------------------------------------------------------------
# positive / negative symbols
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Prop8Precompute:
    """Inverse of the weighted frame operator, reusable for many Psi."""

    frame: FiniteFrame
    symbol: Symbol
    S_w: np.ndarray
    S_w_inv: np.ndarray
    sign: int
    a: float
    b: float
    A: float
    B: float


def prop8_precompute(phi: FiniteFrame, m) -> Prop8Precompute:
    m = as_symbol(m)
    if m.count != phi.count:
        raise ShapeMismatchError(f"symbol length {m.count} differs from frame count {phi.count}")
    stats = m.stats
    if stats.has_zero:
        raise SymbolError("symbol has a zero entry")
    if stats.sign == SignPattern.MIXED:
        raise SymbolError("symbol must be all positive or all negative reals")
    require_frame(phi, name="Phi")
    a, b, _ = m.condition_constants()
    if not a > 0 or not math.isfinite(b):
        raise ConditionViolatedError(f"symbol is not semi-normalized (a={a:.6g}, b={b:.6g})", {"a": a, "b": b})
    sign = 1 if stats.sign == SignPattern.POSITIVE else -1
    S_w = frame_operator(weighted_frame(phi, np.abs(m.values)))
    S_w_inv = np.linalg.solve(S_w, np.eye(phi.dim, dtype=np.complex128))
    return Prop8Precompute(phi, m, S_w, S_w_inv, sign, a, b, phi.bounds.lower, phi.bounds.upper)


def _prop8_constants(pre: Prop8Precompute, psi: FiniteFrame) -> tuple[dict, float, float]:
    mu = mu_perturbation(pre.frame, psi)
    reach = pre.b * math.sqrt(mu * pre.B)
    constants = {"A_phi": pre.A, "B_phi": pre.B, "a": pre.a, "b": pre.b, "mu": mu,
                 "mu_limit": pre.a**2 * pre.A**2 / (pre.b**2 * pre.B)}
    ratio = reach / (pre.a * pre.A)
    scale = 1.0 / (pre.a * pre.A - reach) if ratio < 1 else math.inf
    return constants, ratio, scale


def prop8_invert(
    pre: Prop8Precompute,
    psi: FiniteFrame,
    e: float,
    oracle: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, InversionReport]:
    constants, ratio, scale = _prop8_constants(pre, psi)
    report = _report("prop8", constants, ratio, scale, e)
    M = multiplier.multiplier_matrix(pre.symbol, pre.frame, psi)
    # negative symbols: invert sign*M, whose weighted frame operator is S_w
    P = np.eye(pre.frame.dim) - pre.sign * (pre.S_w_inv @ M)
    inverse, residuals = _accumulate(lambda q: P @ q, pre.sign * pre.S_w_inv, report.n_planned, oracle, method="prop8")
    report.residuals = residuals
    M_swapped = multiplier.multiplier_matrix(pre.symbol, psi, pre.frame)
    P_swapped = np.eye(pre.frame.dim) - pre.sign * (pre.S_w_inv @ M_swapped)
    _attach_companion(report, P_swapped, pre.sign * pre.S_w_inv, M_swapped)
    reach = pre.b * math.sqrt(constants["mu"] * pre.B)
    _sandwich(report, inverse, 1.0 / (pre.b * pre.B + reach), scale)
    return inverse, report


def prop8_apply(
    pre: Prop8Precompute,
    psi: FiniteFrame,
    f,
    e: float,
    oracle: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, InversionReport]:
    f = np.asarray(f, dtype=np.complex128)
    if f.shape != (pre.frame.dim,):
        raise ShapeMismatchError(f"vector must have length {pre.frame.dim}, got shape {f.shape}")
    constants, ratio, scale = _prop8_constants(pre, psi)
    report = _report("prop8_apply", constants, ratio, scale * np.linalg.norm(f), e)
    op = multiplier.build(pre.symbol, pre.frame, psi)

    def step(q: np.ndarray) -> np.ndarray:
        return q - pre.sign * (pre.S_w_inv @ multiplier.apply(op, q))

    out, residuals = _accumulate(step, pre.sign * (pre.S_w_inv @ f), report.n_planned, oracle, method="prop8_apply")
    report.residuals = residuals
    return out, report


# ---------------------------------------------------------------------------
# symbols close to one
# ---------------------------------------------------------------------------

def _mphiphi_inverse(
    phi: FiniteFrame,
    m: Symbol,
    e: float,
    oracle: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, InversionReport]:
    A, B = phi.bounds.lower, phi.bounds.upper
    _, _, lam = m.condition_constants()
    constants = {"A_phi": A, "B_phi": B, "lambda": lam}
    ratio = lam * B / A
    scale = 1.0 / (A - lam * B) if ratio < 1 else math.inf
    report = _report("prop9", constants, ratio, scale, e, stage="inner")
    M0 = multiplier.multiplier_matrix(m, phi, phi)
    S_inv = np.linalg.solve(phi.operator, np.eye(phi.dim, dtype=np.complex128))
    P0 = np.eye(phi.dim) - S_inv @ M0
    inverse, report.residuals = _accumulate(lambda q: P0 @ q, S_inv, report.n_planned, oracle, method="prop9-inner")
    _sandwich(report, inverse, 1.0 / ((lam + 1) * B), scale)
    return inverse, report


def prop9_invert(
    phi: FiniteFrame,
    m,
    psi: FiniteFrame,
    e: float,
    inner_e: Optional[float] = None,
    oracle: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, np.ndarray, InversionReport]:
    """Two-stage inversion: M_{m,Phi,Phi} first, then M_{m,Phi,Psi} around it."""
    m = as_symbol(m)
    if m.count != phi.count:
        raise ShapeMismatchError(f"symbol length {m.count} differs from frame count {phi.count}")
    require_frame(phi, name="Phi")
    A, B = phi.bounds.lower, phi.bounds.upper
    _, _, lam = m.condition_constants()
    mu = mu_perturbation(phi, psi)
    if lam * B >= A:
        raise ConditionViolatedError(
            f"prop9 stage 1: lambda={lam:.6g} is not below A/B={A / B:.6g}",
            {"A_phi": A, "B_phi": B, "lambda": lam},
        )
    reach = (lam + 1) * math.sqrt(mu * B)
    constants = {"A_phi": A, "B_phi": B, "lambda": lam, "mu": mu,
                 "mu_limit": (A - lam * B) ** 2 / ((lam + 1) ** 2 * B)}
    ratio = reach / (A - lam * B)
    scale = 1.0 / (A - lam * B - reach) if ratio < 1 else math.inf
    if ratio >= 1:
        raise ConditionViolatedError(
            f"prop9 stage 2: mu={mu:.6g} is not below {constants['mu_limit']:.6g}", constants
        )

    inner_target = inner_e if inner_e is not None else max(e * 1e-6, 1e-15)
    inner_oracle = direct_invert(multiplier.multiplier_matrix(m, phi, phi)) if oracle is not None else None
    M0_inv, inner = _mphiphi_inverse(phi, m, inner_target, inner_oracle)

    report = _report("prop9", constants, ratio, scale, e, stage="outer")
    report.inner = inner
    M0 = multiplier.multiplier_matrix(m, phi, phi)
    M = multiplier.multiplier_matrix(m, phi, psi)
    P1 = M0_inv @ (M0 - M)
    inverse, report.residuals = _accumulate(lambda q: P1 @ q, M0_inv, report.n_planned, oracle, method="prop9-outer")
    M_swapped = multiplier.multiplier_matrix(m, psi, phi)
    _attach_companion(report, M0_inv @ (M0 - M_swapped), M0_inv, M_swapped)
    _sandwich(report, inverse, 1.0 / ((lam + 1) * (B + math.sqrt(mu * B))), scale)
    return M0_inv, inverse, report


def prop11_invert(
    phi: FiniteFrame,
    psi: FiniteFrame,
    m,
    e: float,
    oracle: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, InversionReport]:
    """M^{-1} = sum (I - M)^k for Psi an approximate dual of Phi."""
    m = as_symbol(m)
    eps = dual_error(phi, psi)
    _, _, lam = m.condition_constants()
    root = math.sqrt(phi.bounds.upper * psi.bounds.upper)
    constants = {"B_phi": phi.bounds.upper, "B_psi": psi.bounds.upper, "lambda": lam,
                 "eps": eps, "lambda_sqrtBB": lam * root}
    if eps >= 1:
        raise ConditionViolatedError(f"prop11: Psi is not an approximate dual of Phi (eps={eps:.6g})", constants)
    ratio = lam * root + eps
    if ratio >= 1:
        raise ConditionViolatedError(
            f"prop11: lambda*sqrt(B_phi*B_psi)={lam * root:.6g} plus eps={eps:.6g} is not below 1", constants
        )
    report = _report("prop11", constants, ratio, 1.0 / (1.0 - ratio), e)
    M = multiplier.multiplier_matrix(m, phi, psi)
    identity = np.eye(phi.dim, dtype=np.complex128)
    inverse, report.residuals = _accumulate(lambda q: q - M @ q, identity, report.n_planned, oracle, method="prop11")
    M_swapped = multiplier.multiplier_matrix(m, psi, phi)
    _attach_companion(report, identity - M_swapped, identity, M_swapped)
    _sandwich(report, inverse, 1.0 / (1.0 + ratio), 1.0 / (1.0 - ratio))
    return inverse, report


# ---------------------------------------------------------------------------
# equivalent frames
# ---------------------------------------------------------------------------

def gphi_invert(
    phi: FiniteFrame,
    G: np.ndarray,
    m,
    e: float,
    oracle: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, np.ndarray, InversionReport]:
    """Inverses of M_{m,Phi,G Phi} and M_{m,G Phi,Phi} from M_{m,Phi,Phi}^{-1}."""
    m = as_symbol(m)
    G = np.asarray(G, dtype=np.complex128)
    require_frame(phi, name="Phi")
    if G.shape != (phi.dim, phi.dim):
        raise ShapeMismatchError(f"G must be {phi.dim} x {phi.dim}, got {G.shape}")
    if not multiplier.classify_matrix(G).invertible:
        raise SingularMatrixError("G is not invertible")
    G_inv = direct_invert(G)
    psi = FiniteFrame(G @ phi.vectors)

    if m.stats.sign != SignPattern.MIXED:
        pre = prop8_precompute(phi, m)
        M0_inv, inner = prop8_invert(pre, phi, e)
    else:
        M0_inv, inner = _mphiphi_inverse(phi, m, e)

    G_inv_h = G_inv.conj().T
    inverse_phipsi = G_inv_h @ M0_inv
    inverse_psiphi = M0_inv @ G_inv

    g_norm = spectral_norm(G_inv)
    report = InversionReport(
        method="gphi",
        constants={**inner.constants, "norm_G_inv": g_norm},
        ratio=inner.ratio,
        scale=inner.scale * g_norm,
        n_planned=inner.n_planned,
        bounds=[b * g_norm for b in inner.bounds],
        converged=inner.converged,
        inner=inner,
        companion=inverse_psiphi,
    )
    if oracle is not None:
        # replay the inner partial sums through G^{-H} against the oracle
        report.residuals = _replay_gphi(phi, m, inner, G_inv_h, oracle)

    for name, inverse, M in (
        ("phipsi", inverse_phipsi, multiplier.multiplier_matrix(m, phi, psi)),
        ("psiphi", inverse_psiphi, multiplier.multiplier_matrix(m, psi, phi)),
    ):
        direct = direct_invert(M)
        report.checks[f"{name}_gap"] = spectral_norm(inverse - direct) / spectral_norm(direct)
    return inverse_phipsi, inverse_psiphi, report


def _replay_gphi(phi: FiniteFrame, m: Symbol, inner: InversionReport, G_inv_h: np.ndarray, oracle: np.ndarray) -> list[float]:
    if inner.method == "prop8":
        pre = prop8_precompute(phi, m)
        M0 = multiplier.multiplier_matrix(m, phi, phi)
        P = np.eye(phi.dim) - pre.sign * (pre.S_w_inv @ M0)
        base = pre.sign * pre.S_w_inv
    else:
        M0 = multiplier.multiplier_matrix(m, phi, phi)
        base = np.linalg.solve(phi.operator, np.eye(phi.dim, dtype=np.complex128))
        P = np.eye(phi.dim) - base @ M0
    _, residuals = _accumulate(lambda q: P @ q, base, inner.n_planned, oracle, transform=lambda X: G_inv_h @ X, method="gphi")
    return residuals


# ---------------------------------------------------------------------------
# dispatch and companions
# ---------------------------------------------------------------------------

def direct_report(M: np.ndarray, oracle: Optional[np.ndarray] = None) -> tuple[np.ndarray, InversionReport]:
    inverse = direct_invert(M)
    report = InversionReport(method="direct", n_planned=0, bounds=[0.0], converged=True)
    report.checks["identity_residual"] = spectral_norm(np.asarray(M) @ inverse - np.eye(inverse.shape[0]))
    if oracle is not None:
        report.residuals = [spectral_norm(inverse - oracle)]
    return inverse, report


def invert(
    method: str,
    phi: FiniteFrame,
    psi: FiniteFrame,
    m,
    e: float,
    oracle: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, InversionReport]:
    """Invert M_{m,Phi,Psi} by the named method."""
    m = as_symbol(m)
    if method == "prop8":
        return prop8_invert(prop8_precompute(phi, m), psi, e, oracle)
    if method == "prop9":
        _, inverse, report = prop9_invert(phi, m, psi, e, oracle=oracle)
        return inverse, report
    if method == "prop11":
        return prop11_invert(phi, psi, m, e, oracle)
    if method == "direct":
        inverse, report = direct_report(multiplier.multiplier_matrix(m, phi, psi), oracle)
        report.companion = direct_invert(multiplier.multiplier_matrix(m, psi, phi))
        return inverse, report
    raise ValueError(f"unknown method {method!r}, expected one of {', '.join(METHODS)}")


def invert_swapped(
    method: str,
    phi: FiniteFrame,
    psi: FiniteFrame,
    m,
    e: float,
    oracle: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, InversionReport]:
    """Inverse of M_{m,Psi,Phi} = (M_{conj m,Phi,Psi})^H."""
    m = as_symbol(m)
    inverse, report = invert(method, phi, psi, m.conj(), e, None if oracle is None else oracle.conj().T)
    # the companion of the conjugate problem is the inverse of M_{m,Phi,Psi} after one adjoint
    if report.companion is not None:
        report.companion = report.companion.conj().T
    return inverse.conj().T, report


# ---------------------------------------------------------------------------
# Gabor variant
# ---------------------------------------------------------------------------

def gabor_perturbation(
    phi_system: GaborSystem,
    g_window,
    m,
    ratio: float,
) -> tuple[GaborSystem, float]:
    """Psi = Phi + delta*G with delta set so the prop8 contraction ratio is ``ratio``."""
    if not 0 <= ratio < 1:
        raise ValueError(f"perturbation ratio must lie in [0, 1), got {ratio}")
    m = as_symbol(m)
    g_system = phi_system.with_window(g_window)
    phi = phi_system.frame
    require_frame(phi, name="Phi")
    a, b, _ = m.condition_constants()
    A, B = phi.bounds.lower, phi.bounds.upper
    limit = a**2 * A**2 / (b**2 * B)
    # mu of Phi against Phi + delta*G is delta^2 times the upper bound of G
    delta = ratio * math.sqrt(limit / g_system.frame.bounds.upper)
    log.info("gabor perturbation", delta=delta, mu_limit=limit, ratio=ratio)
    return phi_system.with_window(phi_system.window + delta * g_system.window), delta


def prop8_invert_gabor(
    phi_system: GaborSystem,
    g_window,
    m,
    e: float,
    ratio: float = 0.1,
    measure: bool = False,
) -> tuple[np.ndarray, InversionReport, GaborSystem]:
    psi_system, delta = gabor_perturbation(phi_system, g_window, m, ratio)
    phi, psi = phi_system.frame, psi_system.frame
    pre = prop8_precompute(phi, m)
    reference = direct_invert(multiplier.multiplier_matrix(pre.symbol, phi, psi)) if measure else None
    inverse, report = prop8_invert(pre, psi, e, reference)
    report.constants["delta"] = delta
    return inverse, report, psi_system
