"""Gabor systems on C^L.

The lattice is rectangular: time step ``a`` and ``M`` frequency channels,
both dividing ``L``. Atom ``i = k + M*n`` is the window shifted by ``n*a``
samples and modulated to frequency ``k/M``.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

import multiplier
from errors import ShapeMismatchError, WindowError
from frames import (
    FiniteFrame,
    constant_symbol,
    frame_operator,
    hermitian_power,
    require_frame,
    spectral_norm,
)
from log_helpers import get_logger
from matrix_io_helpers import read_vector

log = get_logger(__name__)

TOL_COMMUTE = 1e-10
GAUSS_TAIL = 1e-17


@dataclass(frozen=True)
class GaborLattice:
    L: int
    a: int
    M: int

    def __post_init__(self):
        if min(self.L, self.a, self.M) < 1:
            raise ShapeMismatchError(f"lattice parameters must be positive: {self}")
        if self.L % self.a:
            raise ShapeMismatchError(f"a={self.a} does not divide L={self.L}")
        if self.L % self.M:
            raise ShapeMismatchError(f"M={self.M} does not divide L={self.L}")

    @property
    def b(self) -> int:
        return self.L // self.M

    @property
    def n_time(self) -> int:
        return self.L // self.a

    @property
    def count(self) -> int:
        return self.n_time * self.M

    @property
    def redundancy(self) -> float:
        return self.M / self.a

    def index(self, k: int, n: int) -> int:
        return k + self.M * n

    def check_indices(self, k: int, n: int) -> None:
        if not (0 <= k < self.M and 0 <= n < self.n_time):
            raise ShapeMismatchError(f"(k, n) = ({k}, {n}) outside [0, {self.M}) x [0, {self.n_time})")


@dataclass(frozen=True, eq=False)
class GaborSystem:
    lattice: GaborLattice
    window: np.ndarray

    def __post_init__(self):
        window = np.array(self.window, dtype=np.complex128).ravel()
        if window.size != self.lattice.L:
            raise ShapeMismatchError(f"window length {window.size} differs from L={self.lattice.L}")
        if not np.any(window):
            raise WindowError("window is identically zero")
        window.setflags(write=False)
        object.__setattr__(self, "window", window)

    @cached_property
    def frame(self) -> FiniteFrame:
        return gabor_frame(self)

    def with_window(self, window) -> "GaborSystem":
        return GaborSystem(self.lattice, window)


def _modulations(lattice: GaborLattice) -> np.ndarray:
    k = np.arange(lattice.M)[:, None]
    l = np.arange(lattice.L)[None, :]
    return np.exp(2j * np.pi * k * l / lattice.M)


def tf_shift(lattice: GaborLattice, k: int, n: int, f) -> np.ndarray:
    lattice.check_indices(k, n)
    f = np.asarray(f, dtype=np.complex128)
    if f.shape != (lattice.L,):
        raise ShapeMismatchError(f"signal must have length {lattice.L}, got shape {f.shape}")
    l = np.arange(lattice.L)
    return np.exp(2j * np.pi * k * l / lattice.M) * np.roll(f, n * lattice.a)


def shift_matrix(lattice: GaborLattice, k: int, n: int) -> np.ndarray:
    lattice.check_indices(k, n)
    l = np.arange(lattice.L)
    translation = np.roll(np.eye(lattice.L, dtype=np.complex128), n * lattice.a, axis=0)
    return np.exp(2j * np.pi * k * l / lattice.M)[:, None] * translation


def gabor_frame(system: GaborSystem) -> FiniteFrame:
    lattice = system.lattice
    modulations = _modulations(lattice)
    blocks = [
        (modulations * np.roll(system.window, n * lattice.a)[None, :]).T
        for n in range(lattice.n_time)
    ]
    return FiniteFrame(np.hstack(blocks))


# ---------------------------------------------------------------------------
# windows
# ---------------------------------------------------------------------------

def hann_window(L: int, wlen: int) -> np.ndarray:
    if not 1 <= wlen <= L:
        raise WindowError(f"window length {wlen} outside [1, {L}]")
    out = np.zeros(L)
    if wlen == 1:
        out[0] = 1.0
        return out
    j = np.arange(wlen)
    h = 0.5 * (1 - np.cos(2 * np.pi * j / wlen))
    out[(j - wlen // 2) % L] = h
    return out / np.linalg.norm(out)


def gauss_window(L: int, lattice: GaborLattice) -> np.ndarray:
    """Periodized Gaussian whose width matches the lattice, s = a*L/M."""
    if L != lattice.L:
        raise ShapeMismatchError(f"L={L} differs from lattice length {lattice.L}")
    s = lattice.a * L / lattice.M
    J = 1
    while np.exp(-np.pi * (J * L - L / 2) ** 2 / s) >= GAUSS_TAIL:
        J += 1
    l = np.arange(L)
    centered = np.where(l <= L / 2, l, l - L).astype(float)
    shifts = np.arange(-J, J + 1)[:, None] * L
    w = np.exp(-np.pi * (centered[None, :] + shifts) ** 2 / s).sum(axis=0)
    return w / np.linalg.norm(w)


def delta_window(L: int) -> np.ndarray:
    out = np.zeros(L)
    out[0] = 1.0
    return out


def parse_window_spec(spec: str, lattice: GaborLattice) -> np.ndarray:
    kind, _, rest = spec.partition(":")
    if kind == "hann":
        try:
            wlen = int(rest) if rest else lattice.L
        except ValueError:
            raise WindowError(f"bad window length in {spec!r}") from None
        return hann_window(lattice.L, wlen)
    if kind == "gauss":
        return gauss_window(lattice.L, lattice)
    if kind == "delta":
        return delta_window(lattice.L)
    if kind == "file":
        window = read_vector(rest)
        if window.size != lattice.L:
            raise ShapeMismatchError(f"window file has {window.size} samples, L={lattice.L}")
        return window
    raise WindowError(f"unknown window spec {spec!r}, expected hann:<wlen>|gauss|delta|file:<path>")


# ---------------------------------------------------------------------------
# frame-type operators
# ---------------------------------------------------------------------------

def _generators(lattice: GaborLattice) -> list[tuple[int, int]]:
    # a generator with out-of-range index is the identity and can be skipped
    gens = []
    if lattice.M > 1:
        gens.append((1, 0))
    if lattice.n_time > 1:
        gens.append((0, 1))
    return gens


def commutator_norm(V: np.ndarray, lattice: GaborLattice) -> float:
    V = np.asarray(V, dtype=np.complex128)
    if V.shape != (lattice.L, lattice.L):
        raise ShapeMismatchError(f"operator must be {lattice.L} x {lattice.L}, got {V.shape}")
    worst = 0.0
    for k, n in _generators(lattice):
        W = shift_matrix(lattice, k, n)
        worst = max(worst, spectral_norm(V @ W - W @ V))
    return worst


def commutes_with_lattice(V: np.ndarray, lattice: GaborLattice, tol: float = TOL_COMMUTE) -> bool:
    gap = commutator_norm(V, lattice)
    return gap <= tol * spectral_norm(np.asarray(V))


def _require_same_lattice(phi_system: GaborSystem, psi_system: GaborSystem) -> None:
    if phi_system.lattice != psi_system.lattice:
        raise ShapeMismatchError(f"lattices differ: {phi_system.lattice} vs {psi_system.lattice}")


def frame_type_operator(phi_system: GaborSystem, psi_system: GaborSystem) -> "multiplier.MultiplierOp":
    _require_same_lattice(phi_system, psi_system)
    return multiplier.build(
        constant_symbol(phi_system.lattice.count),
        phi_system.frame,
        psi_system.frame,
    )


def gabor_dual_window(system: GaborSystem) -> np.ndarray:
    frame = system.frame
    require_frame(frame, name="Gabor system")
    return np.linalg.solve(frame_operator(frame), system.window)


def gabor_tight_window(system: GaborSystem) -> np.ndarray:
    frame = system.frame
    require_frame(frame, name="Gabor system")
    return hermitian_power(frame_operator(frame), -0.5) @ system.window


def recover_frame_type_window(V: np.ndarray, phi_system: GaborSystem) -> np.ndarray:
    """Window u with V = M_{(1), Phi, (E T u)} for V commuting with the lattice.

    Taking Psi = V^H applied to the canonical dual of Phi gives T_Phi T_Psi^H = V;
    commutation makes that sequence the Gabor system of u = V^H S^{-1} g.
    """
    frame = phi_system.frame
    require_frame(frame, name="Gabor system")
    V = np.asarray(V, dtype=np.complex128)
    if not commutes_with_lattice(V, phi_system.lattice):
        log.warning("operator does not commute with lattice shifts", lattice=str(phi_system.lattice))
    return V.conj().T @ np.linalg.solve(frame_operator(frame), phi_system.window)
