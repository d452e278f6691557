import math

import numpy as np
import pytest

from cmc_annuli import (
    Annulus,
    Field2D,
    NonConvergenceError,
    OuterBoundaryData,
    PolarGrid,
    bounding_box,
    cmc_residual,
    extremal_drops,
    max_gradient,
    solve_dirichlet_2d,
    solve_radial,
)

ANN = Annulus(0.5, 1.5)
H = 0.4


def radial_field(grid, fn):
    column = np.array([fn(r) for r in grid.rho])
    return Field2D(grid, np.tile(column[:, None], (1, grid.n_theta)))


class TestGridAndField:
    def test_grid_nodes(self):
        grid = PolarGrid(ANN, 5, 8)
        assert grid.rho[0] == ANN.a and grid.rho[-1] == ANN.b
        assert len(grid.theta) == 8
        assert grid.theta[0] == 0.0
        assert grid.d_theta == pytest.approx(2 * math.pi / 8)

    @pytest.mark.parametrize("n_rho, n_theta", [(2, 8), (5, 3)])
    def test_grid_validation(self, n_rho, n_theta):
        with pytest.raises(ValueError):
            PolarGrid(ANN, n_rho, n_theta)

    def test_field_shape_validation(self):
        grid = PolarGrid(ANN, 5, 8)
        with pytest.raises(ValueError):
            Field2D(grid, np.zeros((5, 7)))


class TestDiscreteOperator:
    def test_constant_field_residual(self):
        grid = PolarGrid(ANN, 16, 16)
        residual = cmc_residual(Field2D(grid, np.full((16, 16), 4.2)), H)
        assert residual.shape == (14, 16)
        assert np.allclose(residual, -2 * H, atol=1e-13)

    def test_radial_profile_residual_second_order(self):
        from cmc_annuli import height_profile

        profile = height_profile(H, 0.5)
        errs = []
        for n in (16, 32, 64):
            grid = PolarGrid(ANN, n, 8)
            field = radial_field(grid, profile.height)
            errs.append(float(np.abs(cmc_residual(field, H)).max()))
        assert errs[0] / errs[1] == pytest.approx(4.0, abs=1.2)
        assert errs[1] / errs[2] == pytest.approx(4.0, abs=1.2)

    def test_matches_analytic_operator_on_wavy_bump(self):
        # independent referee: symbolic differentiation of the full operator
        sp = pytest.importorskip("sympy")
        rho_s, th_s = sp.symbols("rho theta", positive=True)
        u_s = sp.Rational(1, 10) * sp.cos(th_s) * sp.exp(-((rho_s - 1) ** 2) * 10)
        w_s = sp.sqrt(1 + sp.diff(u_s, rho_s) ** 2 + sp.diff(u_s, th_s) ** 2 / sp.sinh(rho_s) ** 2)
        q_s = (
            sp.diff(sp.sinh(rho_s) * sp.diff(u_s, rho_s) / w_s, rho_s)
            + sp.diff(sp.diff(u_s, th_s) / (sp.sinh(rho_s) * w_s), th_s)
        ) / sp.sinh(rho_s)
        q_fn = sp.lambdify((rho_s, th_s), q_s, "numpy")
        u_fn = sp.lambdify((rho_s, th_s), u_s, "numpy")

        errs = []
        for n in (32, 64):
            grid = PolarGrid(ANN, n, n)
            mesh_r, mesh_t = np.meshgrid(grid.rho, grid.theta, indexing="ij")
            field = Field2D(grid, u_fn(mesh_r, mesh_t))
            discrete = cmc_residual(field, H) + 2 * H
            exact = q_fn(mesh_r, mesh_t)[1:-1, :]
            errs.append(float(np.abs(discrete - exact).max()))
        assert errs[0] / errs[1] == pytest.approx(4.0, abs=1.0)
        assert errs[1] < 5e-3

    def test_max_gradient_of_tilted_plane(self):
        grid = PolarGrid(ANN, 32, 16)
        field = radial_field(grid, lambda r: 3.0 * r)
        assert max_gradient(field) == pytest.approx(3.0, rel=1e-10)


class TestSolver:
    def test_matches_radial_oracle(self):
        drops = extremal_drops(H, ANN)
        u_a = 0.5 * (drops.d_min + drops.d_max)
        oracle = solve_radial(H, ANN, u_a, 0.0)
        errs = []
        for n in (32, 64):
            field, report = solve_dirichlet_2d(H, ANN, u_a, 0.0, grid=(n, n), tol=1e-9)
            assert report.converged and report.residual <= 1e-9
            radial_vals = np.array([oracle.evaluator(r) for r in field.grid.rho])
            errs.append(float(np.abs(field.values - radial_vals[:, None]).max()))
        assert errs[0] / errs[1] == pytest.approx(4.0, abs=1.2)

    def test_comparison_principle(self):
        low, _ = solve_dirichlet_2d(H, ANN, 0.0, 0.0, grid=(24, 16), tol=1e-9)
        high, _ = solve_dirichlet_2d(H, ANN, 0.2, 0.1, grid=(24, 16), tol=1e-9)
        assert np.all(high.values >= low.values - 1e-9)

    def test_nonradial_solution_respects_envelopes(self):
        box = bounding_box(H, ANN, OuterBoundaryData(-0.1, 0.1))
        inner = 0.5 * (box.lower.value(ANN.a) + box.upper.value(ANN.a))
        field, report = solve_dirichlet_2d(
            H, ANN, inner, lambda t: 0.1 * math.cos(t), grid=(48, 48), tol=1e-9
        )
        assert report.converged
        grid_tol = 10.0 * field.grid.d_rho**2
        upper = np.array([box.upper.value(r) for r in field.grid.rho])
        lower = np.array([box.lower.value(r) for r in field.grid.rho])
        assert np.all(field.values <= upper[:, None] + grid_tol)
        assert np.all(field.values >= lower[:, None] - grid_tol)

    def test_super_envelope_data_fails_or_blows_up(self):
        top = bounding_box(H, ANN, OuterBoundaryData(0.0, 0.0)).upper.value(ANN.a)
        try:
            field, report = solve_dirichlet_2d(
                H, ANN, top + 1.0, 0.0, grid=(32, 32), tol=1e-9, max_iter=40
            )
        except NonConvergenceError as exc:
            assert exc.report is not None
            assert not exc.report.converged
            assert exc.report.max_gradient > 5.0
        else:
            # a discrete solution may exist; the blow-up signature must show
            assert report.max_gradient > 1.0 / field.grid.d_rho

    def test_boundary_data_forms(self):
        values = np.full(12, 0.05)
        f1, _ = solve_dirichlet_2d(H, ANN, 0.05, 0.0, grid=(12, 12), tol=1e-8)
        f2, _ = solve_dirichlet_2d(H, ANN, values, 0.0, grid=(12, 12), tol=1e-8)
        f3, _ = solve_dirichlet_2d(H, ANN, lambda t: 0.05, 0.0, grid=(12, 12), tol=1e-8)
        assert np.allclose(f1.values, f2.values, atol=1e-12)
        assert np.allclose(f1.values, f3.values, atol=1e-12)

    def test_bad_boundary_array_rejected(self):
        with pytest.raises(ValueError):
            solve_dirichlet_2d(H, ANN, np.zeros(7), 0.0, grid=(12, 12))

    def test_grid_annulus_mismatch_rejected(self):
        other = PolarGrid(Annulus(0.6, 1.4), 12, 12)
        with pytest.raises(ValueError):
            solve_dirichlet_2d(H, ANN, 0.0, 0.0, grid=other)

    def test_boundary_rows_imposed_exactly(self):
        inner = lambda t: 0.02 * math.sin(t)
        field, _ = solve_dirichlet_2d(H, ANN, inner, 0.1, grid=(16, 16), tol=1e-8)
        expected = np.array([inner(t) for t in field.grid.theta])
        assert np.array_equal(field.values[0, :], expected)
        assert np.all(field.values[-1, :] == 0.1)
