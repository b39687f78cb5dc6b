import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from automanifold.datagen import (FkdvParams, KsParams, SgParams, SpatialGrid, TimeSeriesDataset,
                                  fourier_reference, load_csv_matrix, make_sphere,
                                  make_swiss_roll, sg_energy, simulate_fkdv, simulate_ks,
                                  simulate_sg, write_dataset_csv)
from automanifold.datagen.integrators import lawson_dp54
from automanifold.datagen.spectral import derivative
from automanifold.errors import DivergenceError, DomainError, IntegrationError, ParseError

GRID = SpatialGrid(64)


# spectral derivatives

@pytest.mark.parametrize("m", range(1, 32))
def test_spectral_derivative_exact(m):
    x = GRID.x
    assert np.abs(derivative(np.cos(m * x), GRID) + m * np.sin(m * x)).max() < 1e-10


def test_higher_order_derivative():
    x = GRID.x
    assert np.abs(derivative(np.sin(3 * x), GRID, 3) + 27 * np.cos(3 * x)).max() < 1e-9


def test_grid_checks():
    with pytest.raises(DomainError):
        SpatialGrid(48).check_spectral()
    with pytest.raises(DomainError):
        SpatialGrid(64, periodic=False).check_spectral()
    assert GRID.dx == pytest.approx(2 * np.pi / 64)


# fKdV

def test_fkdv_shape_and_bounded(fkdv):
    assert fkdv.values.shape == (1000, 64)
    assert np.allclose(fkdv.times, 300 + 0.1 * np.arange(1000))
    assert np.isfinite(fkdv.values).all()
    assert np.abs(fkdv.values).max() < 10


def test_fkdv_zero_amplitude():
    ds = simulate_fkdv(GRID, FkdvParams(amp=0.0, t_start=1.0, n_snapshots=5))
    assert np.all(ds.values == 0)


def _mean_drift(ds):
    means = ds.values.mean(axis=1)
    return np.abs(means - means[0]).max() / np.abs(ds.values).max()


def test_fkdv_mean_conserved(fkdv):
    assert _mean_drift(fkdv) < 1e-6


def test_fkdv_dt_schedule_independent():
    p = FkdvParams(t_start=5.0, dt=0.1, n_snapshots=11)
    a = simulate_fkdv(GRID, p)
    b = simulate_fkdv(GRID, FkdvParams(t_start=5.0, dt=0.05, n_snapshots=21))
    assert np.abs(a.values - b.values[::2]).max() < 10 * p.tol


def test_fkdv_deterministic():
    p = FkdvParams(t_start=2.0, n_snapshots=3)
    assert np.array_equal(simulate_fkdv(GRID, p).values, simulate_fkdv(GRID, p).values)


@pytest.mark.parametrize("bad", [dict(tol=0.0), dict(dt=-1.0), dict(n_snapshots=1)])
def test_fkdv_bad_params(bad):
    with pytest.raises(DomainError):
        simulate_fkdv(GRID, FkdvParams(**bad))


# KS

def test_ks_shape_and_bursting(ks):
    assert ks.values.shape == (1000, 64)
    assert ks.times[0] == 300 and ks.times[-1] == pytest.approx(399.9)
    amp = np.abs(ks.values).max(axis=1)
    assert amp.std() > 0.05 * amp.mean()
    # not periodic: the amplitude envelope does not repeat at any lag of the window
    env = amp - amp.mean()
    ac = np.array([np.corrcoef(env[:-lag], env[lag:])[0, 1] for lag in range(10, 500)])
    assert ac.max() < 0.99


def test_ks_zero_ic():
    ds = simulate_ks(GRID, KsParams(amp=0.0, t_start=1.0, n_snapshots=3))
    assert np.all(ds.values == 0)


def test_ks_linear_mode_factor():
    p = KsParams(amp=1.0, phase=0.0, t_start=0.0, dt=0.1, n_snapshots=11)
    ds = simulate_ks(GRID, p, nonlinear=False)
    exact = np.exp((1 - p.nu) * ds.times)[:, None] * np.cos(GRID.x)[None, :]
    assert np.abs(ds.values - exact).max() < 1e-6
    assert ds.source == "ks-linear"


def test_ks_mean_conserved(ks):
    assert _mean_drift(ks) < 1e-6


def test_ks_dt_schedule_independent():
    a = simulate_ks(GRID, KsParams(t_start=5.0, dt=0.1, n_snapshots=11))
    b = simulate_ks(GRID, KsParams(t_start=5.0, dt=0.05, n_snapshots=21))
    assert np.abs(a.values - b.values[::2]).max() < 1e-5


def test_ks_bad_nu():
    with pytest.raises(DomainError):
        simulate_ks(GRID, KsParams(nu=0.0))


def test_non_spectral_grid_rejected():
    with pytest.raises(DomainError):
        simulate_ks(SpatialGrid(60), KsParams(n_snapshots=2, t_start=0.0))


# Sine-Gordon

def test_sg_shape(sg):
    assert sg.values.shape == (1000, 64)
    assert sg.extras["velocity"].shape == (1000, 64)


def test_sg_equilibrium():
    ds = simulate_sg(GRID, SgParams(amp=0.0, t_start=1.0, n_snapshots=3))
    assert np.all(ds.values == 0)


def test_sg_energy_drift(sg):
    E = sg_energy(sg.values, sg.extras["velocity"], sg.grid)
    assert np.abs(E - E[0]).max() / abs(E[0]) <= 1e-5


def test_sg_energy_of_rest_state():
    u = np.zeros((1, 64))
    assert sg_energy(u, u, GRID)[0] == 0.0


# integrator failure modes

def test_integrator_step_underflow():
    with pytest.raises(IntegrationError) as info:
        lawson_dp54(np.array([1.0]), lambda v, s: v, lambda v: v ** 2, lambda v: v,
                    np.array([2.0]), 1e-6)
    assert info.value.t == pytest.approx(1.0, abs=1e-3)


def test_integrator_divergence():
    with pytest.raises(DivergenceError):
        lawson_dp54(np.array([1.0]), lambda v, s: v, lambda v: np.full_like(v, np.nan),
                    lambda v: v, np.array([1.0]), 1e-6)


def test_integrator_linear_exact():
    lam = -2.0
    out = lawson_dp54(np.array([1.0]), lambda v, s: v * np.exp(lam * s), lambda v: 0 * v,
                      lambda v: v, np.array([0.5, 1.0]), 1e-8)
    assert np.allclose(out[:, 0], np.exp(lam * np.array([0.5, 1.0])), rtol=1e-12)


# static clouds

def test_swiss_roll():
    pc = make_swiss_roll(1000, 0)
    assert pc.values.shape == (1000, 3)
    t = pc.intrinsic_coords[:, 0]
    assert t.min() >= 1.5 * np.pi and t.max() <= 4.5 * np.pi
    assert np.allclose(pc.values[:, 0], t * np.cos(t))
    assert np.allclose(pc.values[:, 2], t * np.sin(t))
    assert np.array_equal(pc.values[:, 1], pc.intrinsic_coords[:, 1])
    assert np.array_equal(make_swiss_roll(1000, 0).values, pc.values)
    one = make_swiss_roll(1, 3)
    assert one.values.shape == (1, 3)
    t1 = one.intrinsic_coords[0, 0]
    assert np.allclose(one.values[0, [0, 2]], [t1 * np.cos(t1), t1 * np.sin(t1)])


def test_sphere():
    pc = make_sphere(1000, 0)
    assert np.abs(np.linalg.norm(pc.values, axis=1) - 1).max() < 1e-12
    assert len(np.unique(pc.values, axis=0)) == 1000
    assert make_sphere(1, 0).values.shape == (1, 3)
    polar, az = pc.intrinsic_coords.T
    rebuilt = np.column_stack([np.sin(polar) * np.cos(az), np.sin(polar) * np.sin(az),
                               np.cos(polar)])
    assert np.allclose(rebuilt, pc.values)


def test_sphere_uniform_mean():
    assert np.abs(make_sphere(100_000, 1).values.mean(axis=0)).max() < 0.02


@pytest.mark.parametrize("maker", [make_swiss_roll, make_sphere])
def test_static_bad_n(maker):
    with pytest.raises(DomainError):
        maker(0)


# CSV

def test_csv_124_by_81(tmp_path, rng):
    p = tmp_path / "era.csv"
    np.savetxt(p, rng.normal(size=(124, 81)), delimiter=",")
    ds = load_csv_matrix(p)
    assert ds.values.shape == (124, 81)
    assert np.array_equal(ds.times, np.arange(124))


def test_csv_single_cell(tmp_path):
    p = tmp_path / "one.csv"
    p.write_text("0.0\n")
    ds = load_csv_matrix(p)
    assert ds.values.shape == (1, 1)


def test_csv_round_trip(tmp_path, ks):
    p = tmp_path / "ks.csv"
    write_dataset_csv(ks, p)
    back = load_csv_matrix(p)
    assert np.array_equal(back.values, ks.values)
    assert np.array_equal(back.times, ks.times)
    assert back.grid == ks.grid and back.source == "ks"


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-1e300, 1e300, allow_nan=False), min_size=1, max_size=12))
def test_csv_round_trip_any_float(tmp_path_factory, vals):
    p = tmp_path_factory.mktemp("rt") / "a.csv"
    ds = TimeSeriesDataset(np.arange(len(vals), dtype=float), np.array(vals)[:, None])
    write_dataset_csv(ds, p)
    assert np.array_equal(load_csv_matrix(p).values, ds.values)


@pytest.mark.parametrize("text,row,col", [("1,2\n3\n", 2, None), ("1,2\n3,x\n", 2, 2)])
def test_csv_parse_errors(tmp_path, text, row, col):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    with pytest.raises(ParseError) as info:
        load_csv_matrix(p)
    assert info.value.row == row and info.value.column == col


def test_csv_empty(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("")
    with pytest.raises(ParseError):
        load_csv_matrix(p)


# Fourier reference

def _travelling(n_t=50):
    t = np.linspace(0, 2 * np.pi, n_t, endpoint=False)
    return TimeSeriesDataset(t, np.cos(GRID.x[None, :] + t[:, None]), GRID)


def test_fourier_rotating_cosine():
    ref = fourier_reference(_travelling())
    assert ref.config["modes"][0] == 1
    radius = np.hypot(ref.coords[:, 0], ref.coords[:, 1])
    assert np.allclose(radius, radius[0], atol=1e-12)
    assert radius[0] == pytest.approx(0.5)


def test_fourier_constant_field():
    t = np.arange(5.0)
    ds = TimeSeriesDataset(t, np.ones((5, 64)) * t[:, None], GRID)
    ref = fourier_reference(ds)
    assert ref.config["modes"][0] == 0
    assert np.allclose(ref.coords[:, 1], 0)


def test_fourier_ks_bursts(ks):
    ref = fourier_reference(ks)
    r = np.hypot(ref.coords[:, 0], ref.coords[:, 1])
    assert r.std() > 0.05 * r.mean()


def test_fourier_too_many_modes():
    with pytest.raises(DomainError):
        fourier_reference(_travelling(), n_modes=40)
