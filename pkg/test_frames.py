import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import NotAFrameError, ShapeMismatchError, SymbolError
from frames import (
    FiniteFrame,
    SignPattern,
    Symbol,
    analysis,
    approximate_dual,
    approximate_dual_bound,
    block_symbol,
    canonical_dual,
    canonical_tight,
    frame_bounds,
    frame_operator,
    frames_equivalent,
    harmonic_symbol,
    is_dual,
    is_frame,
    orthonormal_basis,
    random_frame,
    spectral_norm,
    symbol_stats,
    synthesis,
    uniform_symbol,
    weighted_frame,
)

E1 = np.array([1, 0], dtype=complex)
E2 = np.array([0, 1], dtype=complex)


def e1e1e2() -> FiniteFrame:
    return FiniteFrame.from_columns([E1, E1, E2])


def mercedes() -> FiniteFrame:
    return FiniteFrame(np.array([[1, -0.5, -0.5], [0, np.sqrt(3) / 2, -np.sqrt(3) / 2]]))


def test_analysis_examples():
    assert np.allclose(analysis(orthonormal_basis(2), E1), [1, 0])
    assert np.allclose(analysis(e1e1e2(), E1 + E2), [1, 1, 1])


def test_analysis_matches_scalar_loop():
    frame = random_frame(3, 7, seed=1)
    rng = np.random.default_rng(2)
    f = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    expected = [sum(f[j] * np.conj(frame.vectors[j, n]) for j in range(3)) for n in range(7)]
    assert np.max(np.abs(analysis(frame, f) - expected)) <= 1e-14


def test_analysis_rejects_wrong_length():
    with pytest.raises(ShapeMismatchError):
        analysis(orthonormal_basis(2), np.ones(3))


def test_synthesis_examples():
    assert np.allclose(synthesis(orthonormal_basis(3), np.zeros(3)), 0)
    assert np.allclose(synthesis(e1e1e2(), [1, -1, 5]), 5 * E2)
    with pytest.raises(ShapeMismatchError):
        synthesis(e1e1e2(), [1, 2])


def test_synthesis_matches_scalar_loop():
    frame = random_frame(3, 7, seed=3)
    rng = np.random.default_rng(4)
    c = rng.standard_normal(7) + 1j * rng.standard_normal(7)
    expected = sum(c[n] * frame.vectors[:, n] for n in range(7))
    assert np.max(np.abs(synthesis(frame, c) - expected)) <= 1e-14


def test_frame_operator_examples():
    assert np.allclose(frame_operator(orthonormal_basis(2)), np.eye(2))
    assert np.allclose(frame_operator(e1e1e2()), np.diag([2, 1]))
    assert np.allclose(frame_operator(FiniteFrame.from_columns([2 * E1, 0.5 * E2])), np.diag([4, 0.25]))


def test_frame_operator_is_hermitian():
    S = frame_operator(random_frame(5, 12, seed=5))
    assert spectral_norm(S - S.conj().T) <= 1e-13 * spectral_norm(S)
    assert np.linalg.eigvalsh(S)[0] > 0


def test_frame_bounds_examples():
    b = frame_bounds(orthonormal_basis(4))
    assert (b.lower, b.upper) == pytest.approx((1, 1))
    b = frame_bounds(e1e1e2())
    assert (b.lower, b.upper) == pytest.approx((1, 2))
    b = frame_bounds(mercedes())
    assert (b.lower, b.upper) == pytest.approx((1.5, 1.5))


def test_is_frame_examples():
    assert is_frame(orthonormal_basis(3))
    assert not is_frame(FiniteFrame.from_columns([E1, E1]))
    assert not is_frame(FiniteFrame.from_columns([E1, 1e-15 * E2]))


def test_canonical_dual_examples():
    assert np.allclose(canonical_dual(orthonormal_basis(3)).vectors, np.eye(3))
    assert np.allclose(canonical_dual(mercedes()).vectors, mercedes().vectors / 1.5)
    assert np.allclose(canonical_dual(e1e1e2()).vectors, np.column_stack([E1 / 2, E1 / 2, E2]))
    with pytest.raises(NotAFrameError):
        canonical_dual(FiniteFrame.from_columns([E1, E1]))


def test_canonical_tight_examples():
    assert np.allclose(canonical_tight(orthonormal_basis(2)).vectors, np.eye(2))
    assert np.allclose(canonical_tight(mercedes()).vectors, mercedes().vectors / np.sqrt(1.5))
    tight = canonical_tight(e1e1e2())
    assert np.allclose(tight.vectors, np.column_stack([E1 / np.sqrt(2), E1 / np.sqrt(2), E2]))
    b = tight.bounds
    assert abs(b.lower - 1) <= 1e-10 and abs(b.upper - 1) <= 1e-10


def test_is_dual_examples():
    phi = random_frame(4, 9, seed=6)
    ok, eps = is_dual(phi, canonical_dual(phi))
    assert ok and eps <= 1e-12
    ok, eps = is_dual(phi, canonical_dual(phi).scaled(0.9))
    assert not ok and abs(eps - 0.1) <= 1e-12
    ok, eps = is_dual(e1e1e2(), FiniteFrame.from_columns([E1, 0 * E1, E2]))
    assert ok and eps <= 1e-12


def test_is_dual_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        is_dual(e1e1e2(), orthonormal_basis(2))


def test_approximate_dual_examples():
    _, eps = approximate_dual(mercedes(), 0)
    assert eps <= 1e-12
    _, eps = approximate_dual(e1e1e2(), 0)
    assert abs(eps - 1 / 3) <= 1e-12
    phi = random_frame(4, 8, seed=7)
    _, eps = approximate_dual(phi, 5)
    assert eps <= approximate_dual_bound(phi, 5) * (1 + 1e-9)


def test_weighted_frame():
    phi = random_frame(3, 6, seed=8)
    assert np.allclose(weighted_frame(phi, np.ones(6)).vectors, phi.vectors)
    assert np.allclose(weighted_frame(phi, np.full(6, 4.0)).vectors, 2 * phi.vectors)
    m = np.random.default_rng(9).uniform(0.5, 2, size=6)
    direct = phi.vectors @ np.diag(m) @ phi.vectors.conj().T
    assert spectral_norm(frame_operator(weighted_frame(phi, m)) - direct) <= 1e-13 * spectral_norm(direct)


def test_weighted_frame_rejects_bad_weights():
    phi = random_frame(2, 3, seed=10)
    with pytest.raises(SymbolError):
        weighted_frame(phi, [1, -1, 1])
    with pytest.raises(ShapeMismatchError):
        weighted_frame(phi, [1, 1])


def test_symbol_stats_examples():
    stats = symbol_stats(Symbol([1, 1, 1]))
    assert (stats.inf_abs, stats.sup_abs, stats.lam) == (1, 1, 0)
    assert stats.sign == SignPattern.POSITIVE and not stats.has_zero

    stats = uniform_symbol(200, 0.5, 1.0, seed=0).stats
    assert stats.inf_abs >= 0.5 and stats.sup_abs <= 1 and stats.lam <= 0.5

    assert list(block_symbol(9).values.real) == [1, 1, 1, 1, 2, 2, 1, 3, 3]
    assert block_symbol(9).stats.sup_abs == 3
    assert block_symbol(14).stats.sup_abs == 5


def test_symbol_stats_sign_and_zero():
    assert symbol_stats(Symbol([-1, -2])).sign == SignPattern.NEGATIVE
    assert symbol_stats(Symbol([1, -2])).sign == SignPattern.MIXED
    assert symbol_stats(Symbol([1, 1j])).sign == SignPattern.MIXED
    stats = symbol_stats(Symbol([0, 2]))
    assert stats.has_zero and stats.inf_abs == 0
    with pytest.raises(SymbolError):
        Symbol([0, 2]).reciprocal()


def test_harmonic_envelope_covers_the_whole_sequence():
    m = harmonic_symbol(8)
    assert m.stats.lam == pytest.approx(1 - 1 / 8)
    a, b, lam = m.condition_constants()
    assert a == 0 and b == 1 and lam == 1


def test_frames_equivalent_examples():
    phi = random_frame(3, 7, seed=11)
    assert frames_equivalent(phi, phi)
    assert frames_equivalent(phi, canonical_dual(phi))
    e = np.eye(3)
    phi = FiniteFrame.from_columns([e[0], e[0], e[1], e[1]])
    psi = FiniteFrame.from_columns([e[0], e[0], e[1], e[2]])
    assert not frames_equivalent(phi, psi)
    with pytest.raises(NotAFrameError):
        frames_equivalent(phi, psi, require_frames=True)


def test_frames_equivalent_under_invertible_maps():
    rng = np.random.default_rng(12)
    for seed in range(5):
        phi = random_frame(4, 9, seed=seed)
        psi = random_frame(4, 9, seed=seed + 100)
        G = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)) + 3 * np.eye(4)
        assert frames_equivalent(phi, FiniteFrame(G @ phi.vectors))
        assert frames_equivalent(phi, psi) == frames_equivalent(psi, phi)
        assert not frames_equivalent(phi, psi)


def test_random_frame():
    assert is_frame(random_frame(2, 2, seed=13))
    assert np.array_equal(random_frame(3, 5, seed=14).vectors, random_frame(3, 5, seed=14).vectors)
    assert random_frame(3, 9, seed=15).bounds.lower > 0
    with pytest.raises(ShapeMismatchError):
        random_frame(3, 2, seed=0)


def test_frame_invariants():
    rng = np.random.default_rng(16)
    for seed in range(5):
        phi = random_frame(4, 16, seed=seed).scaled(0.25)
        tight = canonical_tight(phi)
        assert spectral_norm(tight.vectors @ tight.vectors.conj().T - np.eye(4)) <= 1e-10
        dual = canonical_dual(phi)
        assert abs(is_dual(phi, dual)[1] - is_dual(dual, phi)[1]) <= 1e-12
        assert spectral_norm(canonical_dual(dual).vectors - phi.vectors) <= 1e-10
        b = phi.bounds
        for f in rng.standard_normal((100, 4)) + 1j * rng.standard_normal((100, 4)):
            energy = np.sum(np.abs(analysis(phi, f)) ** 2)
            norm2 = np.sum(np.abs(f) ** 2)
            assert b.lower * norm2 * (1 - 1e-12) <= energy <= b.upper * norm2 * (1 + 1e-12)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_analysis_is_adjoint_of_synthesis(seed):
    rng = np.random.default_rng(seed)
    phi = random_frame(3, 5, seed=seed)
    f = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    c = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    lhs = np.vdot(c, analysis(phi, f))
    rhs = np.vdot(synthesis(phi, c), f)
    assert abs(lhs - rhs) <= 1e-12 * (1 + abs(lhs))
