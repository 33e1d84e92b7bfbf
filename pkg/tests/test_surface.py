"""Single-sheet solver, absorbance and emission amplitude tests."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sheetoptics import (
    FINE_STRUCTURE,
    GRAPHENE_COND,
    SheetParams,
    absorbance,
    emission_amplitude,
    solve_boundary_system,
    solve_single_sheet,
)

cond_values = st.floats(min_value=0.0, max_value=10.0,
                        allow_nan=False, allow_infinity=False)


class TestSheetParams:
    def test_defaults_are_graphene(self):
        p = SheetParams()
        assert p.cond == pytest.approx(np.pi * FINE_STRUCTURE)
        assert p.branching == 1.0
        assert p.f_sign == 1

    def test_rejects_gain(self):
        with pytest.raises(ValueError):
            SheetParams(cond=-0.1)
        with pytest.raises(ValueError):
            SheetParams(cond=-0.1 + 1.0j)

    def test_rejects_bad_branching(self):
        with pytest.raises(ValueError):
            SheetParams(branching=1.5)
        with pytest.raises(ValueError):
            SheetParams(branching=-0.1)

    def test_rejects_bad_sign(self):
        with pytest.raises(ValueError):
            SheetParams(f_sign=0)

    def test_complex_cond_allowed(self):
        SheetParams(cond=0.02 + 0.01j)


class TestSolvers:
    def test_transparent_vacuum(self):
        c = solve_single_sheet(SheetParams(cond=0.0))
        assert c.t == 1.0
        assert c.r == 0.0

    def test_perfect_asymmetric_point(self):
        c = solve_single_sheet(SheetParams(cond=2.0))
        assert c.t == pytest.approx(0.5, abs=1e-15)
        assert c.r == pytest.approx(-0.5, abs=1e-15)

    def test_graphene_values(self):
        # frozen from the closed form with CODATA alpha
        c = solve_single_sheet(SheetParams(cond=0.0229253))
        assert c.t == pytest.approx(0.988667, abs=1e-6)
        assert c.r == pytest.approx(-0.011333, abs=1e-6)

    def test_boundary_system_trivial(self):
        c = solve_boundary_system(SheetParams(cond=0.0))
        assert c.t == pytest.approx(1.0, abs=1e-15)
        assert c.r == pytest.approx(0.0, abs=1e-15)

    def test_boundary_system_paper_point(self):
        c = solve_boundary_system(SheetParams(cond=2.0))
        assert c.t == pytest.approx(0.5, abs=1e-14)
        assert c.r == pytest.approx(-0.5, abs=1e-14)

    def test_routes_agree_on_grid(self):
        for g in np.linspace(0.0, 10.0, 1000):
            p = SheetParams(cond=g)
            a, b = solve_single_sheet(p), solve_boundary_system(p)
            assert abs(a.t - b.t) <= 1e-12
            assert abs(a.r - b.r) <= 1e-12

    @given(cond_values)
    def test_continuity(self, g):
        c = solve_single_sheet(SheetParams(cond=g))
        assert abs(1.0 + c.r - c.t) <= 1e-12

    @given(cond_values)
    def test_poynting_conservation(self, g):
        c = solve_single_sheet(SheetParams(cond=g))
        assert abs(1.0 - abs(c.r) ** 2 - abs(c.t) ** 2 - g * abs(c.t) ** 2) <= 1e-12

    def test_monotone_and_limits(self):
        grid = np.linspace(0.0, 1000.0, 2001)
        t = np.array([solve_single_sheet(SheetParams(cond=g)).t.real for g in grid])
        r = np.array([solve_single_sheet(SheetParams(cond=g)).r.real for g in grid])
        assert np.all(np.diff(t) < 0)
        assert np.all(np.diff(r) < 0)
        assert t[-1] == pytest.approx(0.0, abs=2e-3)
        assert r[-1] == pytest.approx(-1.0, abs=2e-3)


class TestAbsorbance:
    def test_zero(self):
        p = SheetParams(cond=0.0)
        assert absorbance(solve_single_sheet(p), p) == 0.0

    def test_half(self):
        # conservation identity: 1 - 1/4 - 1/4
        p = SheetParams(cond=2.0)
        assert absorbance(solve_single_sheet(p), p) == pytest.approx(0.5, abs=1e-15)

    def test_graphene(self):
        p = SheetParams(cond=0.0229253)
        a = absorbance(solve_single_sheet(p), p)
        assert a == pytest.approx(0.022409, abs=1e-6)
        # close to, but distinct from, the bare single-pass value pi*alpha
        assert a < GRAPHENE_COND
        assert a == pytest.approx(GRAPHENE_COND, rel=0.03)


class TestEmission:
    def test_no_pathway(self):
        p = SheetParams(cond=1.0, branching=0.0)
        em = emission_amplitude(p, solve_single_sheet(p))
        assert em.b_r == 0.0
        assert em.b_l == 0.0

    def test_symmetric(self):
        p = SheetParams(cond=0.3, branching=0.7)
        em = emission_amplitude(p, solve_single_sheet(p))
        assert em.b_r == em.b_l

    def test_graphene_magnitude(self):
        p = SheetParams(cond=0.0229253, branching=1.0, f_sign=1)
        c = solve_single_sheet(p)
        em = emission_amplitude(p, c)
        # oracle: |b| = sqrt(0.5 * A) * t evaluated independently
        expected = np.sqrt(0.5 * absorbance(c, p)) * c.t.real
        assert abs(em.b_r) == pytest.approx(expected, abs=1e-14)
        assert em.b_r.real == pytest.approx(-0.104652, abs=2e-6)

    def test_strong_sheet_closed_form(self):
        p = SheetParams(cond=2.0)
        em = emission_amplitude(p, solve_single_sheet(p))
        assert abs(em.b_r) == pytest.approx(0.25, abs=1e-14)

    def test_f_sign_flips(self):
        p_plus = SheetParams(cond=1.0, f_sign=1)
        p_minus = SheetParams(cond=1.0, f_sign=-1)
        c = solve_single_sheet(p_plus)
        assert emission_amplitude(p_plus, c).b_r == -emission_amplitude(p_minus, c).b_r

    @given(cond_values, st.floats(min_value=0.0, max_value=1.0,
                                  allow_nan=False, allow_infinity=False))
    def test_magnitude_identity(self, g, branching):
        p = SheetParams(cond=g, branching=branching)
        c = solve_single_sheet(p)
        em = emission_amplitude(p, c)
        assert abs(em.b_r) ** 2 == pytest.approx(
            (branching / 2.0) * g * abs(c.t) ** 4, abs=1e-15
        )
