import json

import numpy as np
import pytest

import a_framemult
import multiplier
from errors import EXIT_CONDITION, EXIT_IO, EXIT_SHAPE
from frames import FiniteFrame, canonical_tight, dual_error, orthonormal_basis, random_frame
from gabor import GaborLattice, hann_window
from inversion import direct_invert
from matrix_io_helpers import MaskGrid, read_frame, read_matrix, write_mask, write_matrix, write_vector
from settings import load_settings
from wav_helpers import Signal, read_wav, write_wav


def run(capsys, *argv):
    code = a_framemult.main(list(argv))
    out = capsys.readouterr().out.strip().splitlines()
    return code, json.loads(out[-1])


def chirp(n, rate=8000, amplitude=0.5) -> np.ndarray:
    t = np.arange(n) / rate
    return amplitude * np.sin(2 * np.pi * (200 * t + 900 * t**2))


@pytest.fixture
def parseval_file(tmp_path):
    return write_matrix(tmp_path / "parseval.txt", canonical_tight(random_frame(3, 7, seed=0)))


def test_framecheck(tmp_path, capsys):
    code, payload = run(capsys, "framecheck", str(write_matrix(tmp_path / "id.txt", np.eye(2))))
    assert code == 0
    assert (payload["d"], payload["N"]) == (2, 2)
    assert payload["A"] == pytest.approx(1) and payload["B"] == pytest.approx(1)
    assert payload["is_frame"] and payload["condition"] == pytest.approx(1)

    e1e1e2 = np.array([[1, 1, 0], [0, 0, 1]])
    code, payload = run(capsys, "framecheck", str(write_matrix(tmp_path / "f.txt", e1e1e2)))
    assert payload["A"] == pytest.approx(1) and payload["B"] == pytest.approx(2)


def test_framecheck_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("2 2\n1 0\n0\n")
    code, payload = run(capsys, "framecheck", str(path))
    assert code == EXIT_IO == payload[a_framemult.EXIT_CODE]
    assert "line 3" in payload[a_framemult.ERROR]


def test_missing_file_is_an_io_failure(tmp_path, capsys):
    code, payload = run(capsys, "framecheck", str(tmp_path / "nope.txt"))
    assert code == EXIT_IO


@pytest.mark.parametrize("method", ["prop8", "prop9", "prop11", "direct"])
def test_invert_parseval_identity(method, parseval_file, tmp_path, capsys):
    out = tmp_path / "inv.txt"
    code, payload = run(
        capsys, "invert", "--phi", str(parseval_file), "--psi", str(parseval_file),
        "--symbol", "const:1", "--method", method, "--out", str(out),
    )
    assert code == 0
    assert payload["method"] == method and payload["n_planned"] == 0
    assert np.allclose(read_matrix(out), np.eye(3), atol=1e-10)


def test_invert_harmonic_symbol_is_a_condition_violation(tmp_path, capsys):
    onb = write_matrix(tmp_path / "onb.txt", orthonormal_basis(8))
    code, payload = run(capsys, "invert", "--phi", str(onb), "--psi", str(onb), "--symbol", "harmonic", "--method", "prop11")
    assert code == EXIT_CONDITION
    assert payload["constants"]["lambda"] == 1


def test_invert_symbol_length_mismatch(parseval_file, tmp_path, capsys):
    symbol = write_vector(tmp_path / "m.txt", np.ones(5))
    code, _ = run(capsys, "invert", "--phi", str(parseval_file), "--psi", str(parseval_file), "--symbol", str(symbol))
    assert code == EXIT_SHAPE


def test_invert_gabor_pair_with_report(tmp_path, capsys):
    report = tmp_path / "report.txt"
    code, payload = run(
        capsys, "--e", "1e-8", "invert", "--L", "64", "--a", "8", "--M", "16", "--window", "hann:16",
        "--g-window", "gauss", "--symbol", "uniform:0.5:1", "--method", "prop8", "--oracle", "--report", str(report),
    )
    assert code == 0 and payload["converged"]
    assert payload["constants"]["delta"] > 0
    lines = report.read_text().splitlines()
    assert lines[0].startswith("# method=prop8")
    assert len(lines) - 1 <= 15
    assert float(lines[-1].split(",")[2]) <= 1e-8


def test_invert_swapped_matches_direct(tmp_path, capsys):
    phi = random_frame(3, 9, seed=1).scaled(1 / 3)
    psi = FiniteFrame(phi.vectors + 0.005 * random_frame(3, 9, seed=2).vectors / 3)
    write_matrix(tmp_path / "phi.txt", phi)
    write_matrix(tmp_path / "psi.txt", psi)
    args = ["invert", "--phi", str(tmp_path / "phi.txt"), "--psi", str(tmp_path / "psi.txt"), "--symbol", "const:1"]
    run(capsys, *args, "--method", "direct", "--swap", "--out", str(tmp_path / "direct.txt"))
    code, payload = run(capsys, "--e", "1e-12", *args, "--method", "prop9", "--swap", "--oracle", "--out", str(tmp_path / "p9.txt"))
    assert code == 0 and payload["swapped"]
    assert np.allclose(read_matrix(tmp_path / "p9.txt"), read_matrix(tmp_path / "direct.txt"), atol=1e-10)


@pytest.mark.parametrize("method", ["prop9", "direct"])
def test_invert_writes_the_companion_inverse(method, tmp_path, capsys):
    phi = random_frame(3, 9, seed=1).scaled(1 / 3)
    psi = FiniteFrame(phi.vectors + 0.005 * random_frame(3, 9, seed=2).vectors / 3)
    code, payload = run(
        capsys, "--e", "1e-12", "invert", "--phi", str(write_matrix(tmp_path / "phi.txt", phi)),
        "--psi", str(write_matrix(tmp_path / "psi.txt", psi)), "--symbol", "const:1", "--method", method,
        "--companion-out", str(tmp_path / "companion.txt"),
    )
    assert code == 0 and payload["companion_out"] == str(tmp_path / "companion.txt")
    phi, psi = read_frame(tmp_path / "phi.txt"), read_frame(tmp_path / "psi.txt")
    expected = direct_invert(multiplier.multiplier_matrix(np.ones(9), psi, phi))
    assert np.allclose(read_matrix(tmp_path / "companion.txt"), expected, atol=1e-10)


BENCH = ["bench-convergence", "--L", "64", "--a", "8", "--M", "16", "--phi-window", "hann:16", "--g-window", "gauss"]


def test_bench_convergence_csv(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    code, payload = run(capsys, *BENCH, "--out", str(out))
    assert code == 0 and payload["dominated"]
    rows = out.read_text().splitlines()
    assert rows[0] == "iteration,measured_error,predicted_bound"
    assert len(rows) - 1 == payload["rows"] <= 15
    for k, row in enumerate(rows[1:]):
        index, measured, bound = row.split(",")
        assert int(index) == k
        assert float(measured) <= float(bound) * (1 + 1e-6) + 1e-10
    assert float(rows[-1].split(",")[1]) <= 1e-8

    again = tmp_path / "again.csv"
    run(capsys, *BENCH, "--out", str(again))
    assert again.read_bytes() == out.read_bytes()


def test_bench_convergence_without_perturbation(tmp_path, capsys):
    out = tmp_path / "flat.csv"
    code, payload = run(capsys, "--perturbation-ratio", "0", *BENCH, "--out", str(out))
    assert code == 0
    assert payload["rows"] == 1 and len(out.read_text().splitlines()) == 2
    assert payload["dominated"] and payload["constants"]["delta"] == 0


def write_signal(tmp_path, n, rate=8000):
    return write_wav(tmp_path / "in.wav", Signal(chirp(n, rate), rate))


def test_apply_mask_all_ones(tmp_path, capsys):
    lattice = GaborLattice(64, 8, 16)
    signal = write_signal(tmp_path, 100)
    mask = write_mask(tmp_path / "ones.txt", np.ones((16, 8)))
    code, payload = run(
        capsys, "apply-mask", str(signal), "--L", "64", "--a", "8", "--M", "16", "--window", "hann:16",
        "--mask", str(mask), "--out", str(tmp_path / "out.wav"),
    )
    assert code == 0 and payload["samples"] == lattice.L
    original = read_wav(signal).samples[:64]
    assert np.max(np.abs(read_wav(tmp_path / "out.wav").samples - original)) <= 2**-15


def test_apply_mask_binary_mask_contracts(tmp_path, capsys):
    grid = np.ones((16, 8))
    grid[4:12] = 0
    code, payload = run(
        capsys, "apply-mask", str(write_signal(tmp_path, 64)), "--L", "64", "--a", "8", "--M", "16",
        "--window", "hann:16", "--mask", str(write_mask(tmp_path / "bin.txt", grid)),
        "--out", str(tmp_path / "out.wav"), "--invert-after",
    )
    assert code == 0
    assert payload["masked_energy"] <= payload["input_energy"] * (1 + 1e-12)
    assert payload["method"] is None and "recovery_error" not in payload


def test_apply_mask_rejects_wrong_mask_shape(tmp_path, capsys):
    code, _ = run(
        capsys, "apply-mask", str(write_signal(tmp_path, 64)), "--L", "64", "--a", "8", "--M", "16",
        "--mask", str(write_mask(tmp_path / "m.txt", np.ones((8, 8)))), "--out", str(tmp_path / "out.wav"),
    )
    assert code == EXIT_SHAPE


def test_apply_mask_rejects_short_signal(tmp_path, capsys):
    code, _ = run(
        capsys, "apply-mask", str(write_signal(tmp_path, 32)), "--L", "64", "--a", "8", "--M", "16",
        "--mask", str(write_mask(tmp_path / "m.txt", np.ones((16, 8)))), "--out", str(tmp_path / "out.wav"),
    )
    assert code == EXIT_SHAPE


@pytest.mark.timeout(120)
def test_apply_mask_recovers_a_chirp(tmp_path, capsys):
    rate = 8000
    signal = write_signal(tmp_path, rate, rate)
    grid = np.random.default_rng(0).uniform(0.5, 1, size=(128, 16))
    recovered = tmp_path / "rec.wav"
    code, payload = run(
        capsys, "apply-mask", str(signal), "--L", "1024", "--a", "64", "--M", "128", "--window", "hann:128",
        "--mask", str(write_mask(tmp_path / "m.txt", grid)), "--out", str(tmp_path / "out.wav"),
        "--invert-after", "--recovered", str(recovered),
    )
    assert code == 0
    assert payload["method"] == "prop8"
    assert payload["recovery_error"] <= 1e-6
    assert len(read_wav(recovered)) == 1024


def test_mask_pipeline_all_ones_is_identity():
    lattice = GaborLattice(64, 8, 16)
    block = chirp(64)
    result = a_framemult.apply_mask_pipeline(block, lattice, hann_window(64, 16), MaskGrid(np.ones((16, 8))))
    assert np.linalg.norm(result.masked - block) <= 1e-8 * np.linalg.norm(block)


def test_duals_command(tmp_path, capsys):
    write_matrix(tmp_path / "phi.txt", random_frame(4, 7, seed=2))
    write_matrix(tmp_path / "psi.txt", random_frame(4, 7, seed=3))
    code, payload = run(
        capsys, "duals", "--phi", str(tmp_path / "phi.txt"), "--psi", str(tmp_path / "psi.txt"),
        "--symbol", "uniform:0.5:1", "--psi-out", str(tmp_path / "psi_d.txt"), "--phi-out", str(tmp_path / "phi_d.txt"),
    )
    assert code == 0
    assert payload["psi_dagger_dual_eps"] <= 1e-9 and payload["phi_dagger_dual_eps"] <= 1e-9
    psi_d = read_frame(tmp_path / "psi_d.txt")
    assert dual_error(read_frame(tmp_path / "psi.txt"), psi_d) <= 1e-9


def test_logs_go_to_stderr(parseval_file, capsys):
    code = a_framemult.main(["--log-level", "DEBUG", "framecheck", str(parseval_file)])
    captured = capsys.readouterr()
    assert code == 0
    json.loads(captured.out)
    assert "command" in captured.err


def test_settings_come_from_environment(monkeypatch):
    monkeypatch.setenv("FRAMEMULT_E", "1e-5")
    monkeypatch.setenv("FRAMEMULT_SEED", "7")
    settings = load_settings()
    assert settings.e == 1e-5 and settings.seed == 7
    assert load_settings(e=1e-9, seed=None).e == 1e-9
    assert load_settings(seed=3).seed == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["invert", "--method", "newton", "--symbol", "const:1"],
        ["invert", "--phi", "x.txt"],
        ["--e", "tiny", "framecheck", "f.txt"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_with_the_io_code(argv, capsys):
    code = a_framemult.main(argv)
    captured = capsys.readouterr()
    assert code == EXIT_IO != EXIT_CONDITION
    payload = json.loads(captured.out.strip().splitlines()[-1])
    assert payload[a_framemult.EXIT_CODE] == EXIT_IO
    assert "usage:" in captured.err


def test_help_still_exits_cleanly(capsys):
    with pytest.raises(SystemExit) as info:
        a_framemult.main(["--help"])
    assert info.value.code == 0
    assert "exit codes" in capsys.readouterr().out
