//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/test_formfactor.cpp
//---------------------------------------------------------------------------//
#include "entlab/formfactor.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

using entlab::Complex;
using entlab::Formfactor;
using entlab::FormfactorKind;
using entlab::QuadratureSpec;
using entlab::TransformMethod;

TEST_CASE("formfactor evaluation", "[formfactor]")
{
    auto const step = Formfactor::step_cutoff(1.0);
    CHECK(step(0.5) == 1.0);
    CHECK(step(2.0) == 0.0);

    auto const gauss = Formfactor::gaussian(1.0);
    CHECK(gauss(0.0) == 1.0);

    auto const bump = Formfactor::compact_bump(0.5, 2.0);
    CHECK(bump(0.5) == 0.0);
    CHECK(bump(2.0) == 0.0);
    CHECK(bump(1.0) > 0.0);
}

TEST_CASE("factory validation", "[formfactor]")
{
    CHECK_THROWS_AS(Formfactor::step_cutoff(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Formfactor::gaussian(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(Formfactor::compact_bump(2.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(Formfactor::compact_bump(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("bump vanishes smoothly at its support edges", "[formfactor]")
{
    auto const bump = Formfactor::compact_bump(0.5, 2.0);
    // One-sided difference quotients at both edges shrink with the step,
    // consistent with all derivatives vanishing there.
    double prev_lo = 1.0;
    double prev_hi = 1.0;
    for (double h : {1e-1, 1e-2, 1e-3})
    {
        double const dlo = bump(0.5 + h) / h;
        double const dhi = bump(2.0 - h) / h;
        CHECK(dlo < prev_lo);
        CHECK(dhi < prev_hi);
        prev_lo = dlo;
        prev_hi = dhi;
    }
    CHECK(prev_lo < 1e-200);
    CHECK(prev_hi < 1e-200);
}

TEST_CASE("closed form of the step transform", "[formfactor]")
{
    auto const step = Formfactor::step_cutoff(1.0);

    auto const at_zero = entlab::transform_closed_form(step, 0.0);
    REQUIRE(at_zero.has_value());
    CHECK(at_zero->value == Complex{1.0, 0.0});
    CHECK(at_zero->est_error == 0.0);
    CHECK(at_zero->method == TransformMethod::ClosedForm);

    auto const at_pi = entlab::transform_closed_form(step, std::numbers::pi);
    REQUIRE(at_pi.has_value());
    Complex const expected{0.0, -2.0 / std::numbers::pi};
    CHECK(std::abs(at_pi->value - expected) < 1e-15);

    CHECK_FALSE(
        entlab::transform_closed_form(Formfactor::gaussian(1.0), 2.0));
    CHECK_FALSE(
        entlab::transform_closed_form(Formfactor::compact_bump(0.5, 2.0), 2.0));
}

TEST_CASE("series branch joins the exact closed form continuously",
          "[formfactor]")
{
    auto const step = Formfactor::step_cutoff(1.0);
    auto const below = entlab::transform_closed_form(step, 0.999e-6)->value;
    auto const above = entlab::transform_closed_form(step, 1.001e-6)->value;
    CHECK(std::abs(below - above) < 2e-9);
    // Both sides sit on 1 - i alpha/2 - alpha^2/6; the series side is exact
    // to rounding while the exact form loses ~eps/alpha to cancellation.
    auto series = [](double a) {
        return Complex{1.0 - a * a / 6.0, -a / 2.0};
    };
    CHECK(std::abs(below - series(0.999e-6)) < 1e-15);
    CHECK(std::abs(above - series(1.001e-6)) < 1e-9);
}

TEST_CASE("quadrature transform reference values", "[formfactor]")
{
    auto const step = Formfactor::step_cutoff(1.0);
    auto const gauss = Formfactor::gaussian(1.0);
    auto const bump = Formfactor::compact_bump(0.5, 2.0);

    auto const step_pi = entlab::transform_quadrature(step, std::numbers::pi);
    auto const closed = entlab::transform_closed_form(step, std::numbers::pi);
    CHECK(std::abs(step_pi.value - closed->value) < 1e-10);
    CHECK(step_pi.method == TransformMethod::Quadrature);

    // Half-Gaussian integral sqrt(pi)/2
    auto const gauss_0 = entlab::transform_quadrature(gauss, 0.0);
    CHECK(std::abs(gauss_0.value - 0.8862269254527579) < 1e-9);

    auto const gauss_2 = entlab::transform_quadrature(gauss, 2.0);
    Complex const gauss_2_ref{0.32602466608664604, -0.5380795069127685};
    CHECK(std::abs(gauss_2.value - gauss_2_ref) < 1e-9);

    auto const bump_5 = entlab::transform_quadrature(bump, 5.0);
    Complex const bump_5_ref{0.048366155920659855, 0.0016056351943405827};
    CHECK(std::abs(bump_5.value - bump_5_ref) < 1e-9);

    auto const bump_0 = entlab::transform_quadrature(bump, 0.0);
    CHECK(std::abs(bump_0.value - 0.12947581113844184) < 1e-9);
}

TEST_CASE("dispatcher prefers the closed form", "[formfactor]")
{
    auto const step = Formfactor::step_cutoff(1.0);
    CHECK(entlab::transform(step, 3.0).method == TransformMethod::ClosedForm);

    auto const gauss = Formfactor::gaussian(1.0);
    CHECK(entlab::transform(gauss, 3.0).method == TransformMethod::Quadrature);
}

TEST_CASE("conjugation symmetry of the transform", "[formfactor]")
{
    std::vector<Formfactor> const kinds{Formfactor::step_cutoff(1.0),
                                        Formfactor::gaussian(1.0),
                                        Formfactor::compact_bump(0.5, 2.0)};
    for (auto const& f : kinds)
    {
        for (double alpha : {0.3, 7.7, 33.0})
        {
            auto const plus = entlab::transform_quadrature(f, alpha);
            auto const minus = entlab::transform_quadrature(f, -alpha);
            CHECK(std::abs(minus.value - std::conj(plus.value))
                  < 10.0 * plus.est_error + 1e-15);
        }
    }
}

TEST_CASE("quadrature agrees with the closed form across the alpha grid",
          "[formfactor]")
{
    auto const step = Formfactor::step_cutoff(1.0);
    QuadratureSpec const spec{};
    for (int i = -50; i <= 50; ++i)
    {
        double const alpha = static_cast<double>(i);
        auto const quad = entlab::transform_quadrature(step, alpha, spec);
        auto const closed = entlab::transform_closed_form(step, alpha);
        double const tol = std::max(spec.rel_tol * std::abs(closed->value),
                                    spec.abs_tol);
        CHECK(std::abs(quad.value - closed->value) < tol);
    }
}

TEST_CASE("bump transform decays super-polynomially", "[formfactor]")
{
    auto const bump = Formfactor::compact_bump(0.5, 2.0);
    std::vector<double> mags;
    for (double alpha : {100.0, 200.0, 400.0, 800.0})
    {
        mags.push_back(std::abs(entlab::transform_quadrature(bump, alpha).value));
    }
    CHECK(std::abs(mags[0] - 5.343311649e-7) < 1e-3 * mags[0]);
    CHECK(std::abs(mags[1] - 2.665840478e-9) < 1e-3 * mags[1]);
    CHECK(std::abs(mags[2] - 1.596673023e-12) < 1e-3 * mags[2]);
    CHECK(mags[3] < 1e-15);
    // Faster than alpha^-4: the weighted sequence still falls
    double const a4[4] = {1e8, 1.6e9, 2.56e10, 4.096e11};
    CHECK(mags[0] * a4[0] > mags[1] * a4[1]);
    CHECK(mags[1] * a4[1] > mags[2] * a4[2]);
    CHECK(mags[2] * a4[2] > mags[3] * a4[3]);
}

TEST_CASE("transform magnitude is bounded by the profile mass", "[formfactor]")
{
    struct Case
    {
        Formfactor f;
        double mass;
    };
    std::vector<Case> const cases{
        {Formfactor::step_cutoff(1.0), 1.0},
        {Formfactor::gaussian(1.0), 0.8862269254527579},
        {Formfactor::compact_bump(0.5, 2.0), 0.12947581113844184},
    };
    for (auto const& c : cases)
    {
        for (double alpha : {0.0, 1.0, 5.0, 17.0, 50.0})
        {
            auto const res = entlab::transform(c.f, alpha);
            CHECK(std::abs(res.value) <= c.mass + 1e-10);
        }
    }
}

TEST_CASE("transform propagates ToleranceNotMet", "[formfactor]")
{
    QuadratureSpec spec;
    spec.max_panels = 4;
    auto const bump = Formfactor::compact_bump(0.5, 2.0);
    CHECK_THROWS_AS(entlab::transform_quadrature(bump, 200.0, spec),
                    entlab::ToleranceNotMet);
}

TEST_CASE("support helpers", "[formfactor]")
{
    auto const step = Formfactor::step_cutoff(2.0);
    CHECK(step.upper_support(1e-12) == 2.0);
    CHECK(step.lower_support(1e-12) == 0.0);

    auto const gauss = Formfactor::gaussian(1.0);
    CHECK(gauss.upper_support(1e-12)
          == std::sqrt(std::log(1.0 / 1e-12)));

    auto const bump = Formfactor::compact_bump(0.5, 2.0);
    CHECK(bump.lower_support(1e-12) == 0.5);
    CHECK(bump.upper_support(1e-12) == 2.0);
}
