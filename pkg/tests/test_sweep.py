import numpy as np
import pytest

from channeg.channelkit import (
    CZ,
    Alpha,
    CZDoublePrime,
    CZPrime,
    Hadamard,
    Rabi,
    Rotation,
    RotationTheta,
)
from channeg.choi import assemble_choi, x_form_matrix
from channeg.cmatrix import eigvalsh
from channeg.errors import ConfigurationError
from channeg.negativity import negativity
from channeg.sweep import (
    CHUNK,
    Axis,
    SweepGrid,
    cp_map,
    evaluate_family,
    run_sweep,
    xform_spectrum,
)

TWO_PI = 2 * np.pi


def single(family, p):
    """Reference route: one assemble_choi plus negativity per point."""
    spec, sharp = {
        "utheta": lambda: (RotationTheta(p["theta"]), Hadamard()),
        "alpha": lambda: (CZ(), Alpha(p["alpha"])),
        "theta_alpha": lambda: (RotationTheta(p["theta"]), Alpha(p["alpha"])),
        "czprime": lambda: (CZPrime(p["delta"]), Hadamard()),
        "czdoubleprime": lambda: (CZDoublePrime(p["delta"], p["xi"]), Hadamard()),
        "rabi": lambda: (
            Rabi(p["kz"], p["t"], p.get("nu", 0.0), p.get("omega", 1.0)),
            Hadamard() if p.get("phi") is None else Rotation(p["phi"]),
        ),
    }[family]()
    return negativity(assemble_choi(spec, sharp)).eta


@pytest.mark.parametrize(
    "family,params",
    [
        ("utheta", {"theta": 1.1}),
        ("alpha", {"alpha": 0.37}),
        ("theta_alpha", {"theta": 4.0, "alpha": 0.8}),
        ("czprime", {"delta": 2.2}),
        ("czdoubleprime", {"delta": 0.5, "xi": 1.7}),
        ("rabi", {"kz": 1.3, "t": 2.1}),
        ("rabi", {"kz": 0.6, "t": 4.4, "phi": 0.9, "nu": 0.2, "omega": 1.3}),
    ],
)
def test_batched_family_matches_single_route(family, params):
    batched = evaluate_family(family, {k: np.array([v]) for k, v in params.items()})
    assert abs(batched[0] - single(family, params)) < 1e-12


def test_utheta_example():
    r = run_sweep(SweepGrid("utheta", (Axis("theta", 0.0, TWO_PI, 201),)))
    assert len(r) == 201
    for k in (0, 100, 200):
        assert r.eta[k] <= 1e-9
    best = r.eta.max()
    assert abs(best - 0.24) <= 0.01
    peaks = r.points[r.eta > best - 1e-3, 0]
    assert np.any(np.abs(peaks - np.pi / 3) < np.pi / 12)
    assert np.any(np.abs(peaks - 4 * np.pi / 3) < np.pi / 12)


def test_alpha_example():
    r = run_sweep(SweepGrid("alpha", (Axis("alpha", 0.0, 1.0, 201),)))
    (a,), best = r.argmax()
    assert abs(a - 2**-0.5) < 1 / 200
    # no grid point sits on 2^-1/2; the nearest one is ~2e-6 below the peak value
    assert 0 <= 1 / 6 - best < 2.5e-6
    exact = evaluate_family("alpha", {"alpha": np.array([2**-0.5])})[0]
    assert abs(exact - 1 / 6) <= 1e-6


def test_theta_alpha_example():
    grid = SweepGrid("theta_alpha", (Axis("theta", 0.0, TWO_PI, 101), Axis("alpha", 0.0, 1.0, 101)))
    r = run_sweep(grid)
    assert len(r) == 101 * 101
    (theta, a), best = r.argmax()
    assert abs(best - 0.24) <= 0.01
    assert min(abs(theta - np.pi / 3), abs(theta - 4 * np.pi / 3)) < np.pi / 12
    assert abs(a - 2**-0.5) < 0.1


def test_rows_are_row_major():
    grid = SweepGrid("theta_alpha", (Axis("theta", 0.0, 1.0, 3), Axis("alpha", 0.0, 1.0, 2)))
    pts = grid.points()
    assert pts.tolist() == [[0, 0], [0, 1], [0.5, 0], [0.5, 1], [1, 0], [1, 1]]
    r = run_sweep(grid)
    for (theta, a), eta in r.rows:
        assert abs(eta - single("theta_alpha", {"theta": theta, "alpha": a})) < 1e-12


def test_fixed_parameters_are_used():
    grid = SweepGrid("rabi", (Axis("t", 0.0, 3.0, 4),), {"kz": 0.8, "phi": 0.3})
    r = run_sweep(grid)
    for (t,), eta in r.rows:
        assert abs(eta - single("rabi", {"kz": 0.8, "t": t, "phi": 0.3})) < 1e-12


@pytest.mark.parametrize(
    "grid,message",
    [
        (SweepGrid("nope", (Axis("x", 0, 1, 2),)), "unknown family"),
        (SweepGrid("utheta", ()), "at least one axis"),
        (SweepGrid("utheta", (Axis("theta", 0, 1, 2), Axis("theta", 0, 1, 2))), "duplicate"),
        (SweepGrid("utheta", (Axis("theta", 0, 1, 2),), {"theta": 1.0}), "both swept and fixed"),
        (SweepGrid("utheta", (Axis("delta", 0, 1, 2),)), "no parameter 'delta'"),
        (SweepGrid("rabi", (Axis("t", 0, 1, 2),)), "missing parameters"),
        (SweepGrid("utheta", (Axis("theta", 0, 1, 1),)), "count >= 2"),
        (SweepGrid("utheta", (Axis("theta", 1, 0, 5),)), "start < stop"),
        (SweepGrid("alpha", (Axis("alpha", 0, 2, 5),)), "within"),
        (SweepGrid("theta_alpha", (Axis("theta", 0, 1, 5),), {"alpha": 3.0}), "must lie in"),
    ],
)
def test_configuration_errors(grid, message):
    with pytest.raises(ConfigurationError, match=message):
        run_sweep(grid)


def test_csv_format():
    r = run_sweep(SweepGrid("czdoubleprime", (Axis("delta", 0.0, 1.0, 2), Axis("xi", 0.0, 1.0, 3))))
    text = r.to_csv()
    lines = text.split("\n")
    assert lines[0] == "delta,xi,eta"
    assert lines[-1] == "" and len(lines) == 1 + 6 + 1
    assert "\r" not in text
    assert all(line == line.rstrip() for line in lines)
    assert lines[1].split(",")[:2] == ["0", "0"]
    assert float(lines[2].split(",")[2]) == r.eta[1]


def test_csv_deterministic_across_runs_and_threads(monkeypatch):
    grid = SweepGrid("rabi", (Axis("kz", 0.0, TWO_PI, 70), Axis("t", 0.0, TWO_PI, 70)))
    assert 70 * 70 > CHUNK
    first = run_sweep(grid).to_csv()
    assert run_sweep(grid).to_csv() == first
    assert run_sweep(grid, threads=4).to_csv() == first
    monkeypatch.setenv("NEGATIVITY_THREADS", "3")
    assert run_sweep(grid).to_csv() == first
    monkeypatch.setenv("NEGATIVITY_THREADS", "zero")
    with pytest.raises(ConfigurationError):
        run_sweep(grid)


def test_sweep_etas_bounded():
    grid = SweepGrid("rabi", (Axis("kz", 0.0, TWO_PI, 101), Axis("t", 0.0, TWO_PI, 101)))
    eta = run_sweep(grid).eta
    assert eta.min() >= 0 and eta.max() < 0.5


@pytest.mark.parametrize(
    "fixed,swept",
    [("kz", Axis("t", 0.0, TWO_PI, 201)), ("t", Axis("kz", 0.0, TWO_PI, 201))],
)
def test_rabi_zeros_are_sparse(fixed, swept):
    r = run_sweep(SweepGrid("rabi", (swept,), {fixed: np.pi / 2}))
    assert r.eta.min() >= 0
    zeros = r.points[r.eta < 1e-9, 0]
    assert 0 < len(zeros) <= 10
    assert 0.0 in zeros


def test_cp_map_examples():
    grid = SweepGrid("rabi", (Axis("t", 0.0, TWO_PI, 17), Axis("phi", 0.0, TWO_PI, 17)), {"kz": 0.0})
    assert len(cp_map(grid)) == 17 * 17
    grid = SweepGrid("rabi", (Axis("kz", 0.0, TWO_PI, 17), Axis("phi", 0.0, TWO_PI, 17)), {"t": 0.0})
    assert len(cp_map(grid)) == 17 * 17
    delta = np.linspace(0, TWO_PI, 33)
    etas = evaluate_family("czdoubleprime", {"delta": delta, "xi": delta})
    assert np.all(etas < 1e-9)


def test_cp_map_rabi_cube_excludes_trivial_planes():
    axes = tuple(Axis(n, 0.0, TWO_PI, 33) for n in ("kz", "t", "phi"))
    grid = SweepGrid("rabi", axes)
    full = cp_map(grid)
    kept = cp_map(grid, exclude_trivial=True)
    trivial = (full.points[:, 0] == 0) | (full.points[:, 1] == 0)
    assert trivial.sum() == 2 * 33 * 33 - 33
    assert len(kept) == len(full) - trivial.sum()
    assert np.all(kept.eta < 1e-9)
    assert np.all(kept.points[:, :2] != 0)


def test_cp_map_rejects_bad_tolerance():
    with pytest.raises(ConfigurationError):
        cp_map(SweepGrid("utheta", (Axis("theta", 0, 1, 2),)), eta_tol=0.0)


def test_xform_spectrum_examples():
    assert sorted(xform_spectrum(0, 0)) == [0, 0, 1, 1]
    assert sorted(xform_spectrum(0.5, 0.5)) == [-0.5, 0.5, 0.5, 1.5]
    x = np.exp(0.7j)
    spec = sorted(xform_spectrum(x, 0))
    brute = eigvalsh(x_form_matrix(x, 0))
    assert np.abs(np.array(spec) - brute).max() <= 1e-12
    assert negativity(x_form_matrix(x, 0)).eta == 0


def test_xform_spectrum_matches_brute_force(rng):
    for _ in range(100):
        x = rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, TWO_PI))
        y = rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, TWO_PI))
        spec = np.sort(xform_spectrum(x, y))
        assert np.abs(spec - eigvalsh(x_form_matrix(x, y))).max() <= 1e-10


def test_cp_criterion_consistency(rng):
    for _ in range(200):
        x = rng.uniform(0, 1.5) * np.exp(1j * rng.uniform(0, TWO_PI))
        y = rng.choice([0.0, rng.uniform(0, 1)]) * np.exp(1j * rng.uniform(0, TWO_PI))
        m = x_form_matrix(x, y)
        if min(xform_spectrum(x, y)) < -1e-9:
            assert negativity(m).eta > 0
        cp = negativity(m).eta < 1e-9
        assert cp == (abs(y) <= 1e-9 and abs(x) <= 1 + 1e-10)
