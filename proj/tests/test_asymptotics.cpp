//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/test_asymptotics.cpp
//---------------------------------------------------------------------------//
#include "entlab/asymptotics.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "entlab/field.hpp"
#include "entlab/grid.hpp"

using entlab::Formfactor;
using entlab::RadialSample;

namespace
{

std::vector<RadialSample> power_law(double c,
                                    double s,
                                    double lo,
                                    double hi,
                                    std::size_t n)
{
    std::vector<RadialSample> out;
    for (double r : entlab::make_grid(lo, hi, n, true))
    {
        out.push_back({r, c * std::pow(r, s)});
    }
    return out;
}

std::vector<RadialSample> phi_sq_samples(Formfactor const& f,
                                         double t,
                                         double lo,
                                         double hi,
                                         std::size_t n)
{
    std::vector<RadialSample> out;
    for (double r : entlab::make_grid(lo, hi, n, true))
    {
        out.push_back({r, std::norm(entlab::phi_radial(f, r, t).value)});
    }
    return out;
}

}  // namespace

TEST_CASE("envelope extraction", "[asymptotics]")
{
    // Start past the first few oscillations: the r^-4 factor drags early
    // peaks off the pure-envelope curve by more than the 2% allowance.
    std::vector<RadialSample> osc;
    for (double r = 3.0; r <= 20.0; r += 0.005)
    {
        double const c = std::cos(5.0 * r);
        osc.push_back({r, c * c / std::pow(r, 4.0)});
    }
    auto const peaks = entlab::envelope(osc);
    CHECK(peaks.size() >= 25);
    for (auto const& p : peaks)
    {
        CHECK(std::abs(p.y - std::pow(p.r, -4.0)) < 0.02 * std::pow(p.r, -4.0));
    }

    std::vector<RadialSample> monotone;
    for (double r = 1.0; r <= 10.0; r += 0.5)
    {
        monotone.push_back({r, 1.0 / (r * r)});
    }
    CHECK_THROWS_AS(entlab::envelope(monotone), entlab::NoPeaksFound);

    std::vector<RadialSample> flat{{1.0, 2.0}, {2.0, 2.0}, {3.0, 2.0}};
    CHECK_THROWS_AS(entlab::envelope(flat), entlab::NoPeaksFound);

    std::vector<RadialSample> two{{1.0, 2.0}, {2.0, 1.0}};
    CHECK_THROWS_AS(entlab::envelope(two), entlab::TooFewPoints);
}

TEST_CASE("decay fit recovers exact power laws", "[asymptotics]")
{
    for (double s : {-1.0, -2.0, -4.0, -8.0})
    {
        auto const fit = entlab::fit_decay(power_law(2.7, s, 10, 1e4, 64),
                                           false);
        CHECK(std::abs(fit.slope - s) < 1e-6);
        CHECK(std::abs(fit.intercept - std::log(2.7)) < 1e-6);
        CHECK(fit.residual_rms < 1e-9);
        CHECK(fit.n_points == 64);
        CHECK(fit.r_window.first == 10.0);
        CHECK(fit.r_window.second == 1e4);
    }

    auto const quartic = entlab::fit_decay(power_law(3.0, -4.0, 10, 1000, 64),
                                           false);
    CHECK(std::abs(quartic.slope - (-4.0)) < 1e-6);
}

TEST_CASE("rescaling the data moves only the intercept", "[asymptotics]")
{
    auto samples = power_law(1.0, -3.0, 5, 500, 48);
    auto const base = entlab::fit_decay(samples, false);
    for (auto& s : samples)
    {
        s.y *= 7.3;
    }
    auto const scaled = entlab::fit_decay(samples, false);
    CHECK(std::abs(base.slope - scaled.slope) < 1e-9);
    CHECK(std::abs(scaled.intercept - base.intercept - std::log(7.3)) < 1e-9);
}

TEST_CASE("decay fit guards", "[asymptotics]")
{
    std::vector<RadialSample> three{{1, 1}, {2, 1}, {4, 1}};
    CHECK_THROWS_AS(entlab::fit_decay(three, false), entlab::TooFewPoints);

    CHECK_THROWS_AS(entlab::fit_decay(power_law(1.0, -2.0, 10, 50, 16), false),
                    entlab::DegenerateFit);

    std::vector<RadialSample> with_zero{{1, 1}, {2, 0.5}, {5, 0.0}, {11, 0.1}};
    CHECK_THROWS_AS(entlab::fit_decay(with_zero, false),
                    std::invalid_argument);

    // Only two peaks survive envelope extraction over this window
    std::vector<RadialSample> sparse_peaks;
    for (double r = 1.0; r <= 15.0; r += 0.05)
    {
        double const c = std::cos(0.5 * r);
        sparse_peaks.push_back({r, c * c / r + 1e-3});
    }
    CHECK_THROWS_AS(entlab::fit_decay(sparse_peaks, true),
                    entlab::TooFewPoints);

    // Monotone data with the envelope requested falls back to a raw fit
    auto const fallback = entlab::fit_decay(power_law(1.0, -2.0, 10, 1e3, 32),
                                            true);
    CHECK(std::abs(fallback.slope - (-2.0)) < 1e-6);
}

TEST_CASE("step formfactor decays at least as fast as 1/r^2",
          "[asymptotics]")
{
    auto const samples
        = phi_sq_samples(Formfactor::step_cutoff(1.0), 1.0, 100, 1000, 4096);
    auto const fit = entlab::fit_decay(samples, true);
    CHECK(fit.slope <= -2.0 + 0.1);
    CHECK(std::abs(fit.slope - (-4.012492081121228)) < 1e-3);
}

TEST_CASE("gaussian formfactor decays at least as fast as 1/r^2",
          "[asymptotics]")
{
    auto const samples
        = phi_sq_samples(Formfactor::gaussian(1.0), 1.0, 100, 1000, 64);
    auto const fit = entlab::fit_decay(samples, false);
    CHECK(fit.slope <= -2.0 + 0.1);
    CHECK(std::abs(fit.slope - (-8.000866446707972)) < 1e-3);
}

TEST_CASE("coincidence base decays twice as fast as the amplitude square",
          "[asymptotics]")
{
    auto const f = Formfactor::step_cutoff(1.0);
    auto const grid = entlab::make_grid(100, 1000, 2048, true);
    std::vector<RadialSample> phi_sq;
    std::vector<RadialSample> base;
    for (double r : grid)
    {
        double const y = std::norm(entlab::phi_radial(f, r, 1.0).value);
        phi_sq.push_back({r, y});
        base.push_back({r, entlab::r0(f, r, r, 1.0).r0});
    }
    auto const fit_phi = entlab::fit_decay(phi_sq, true);
    auto const fit_r0 = entlab::fit_decay(base, true);
    CHECK(std::abs(fit_r0.slope - 2.0 * fit_phi.slope) < 0.05);
}

TEST_CASE("bump trend slopes over the oscillatory window", "[asymptotics]")
{
    auto const samples = phi_sq_samples(
        Formfactor::compact_bump(0.5, 2.0), 1.0, 20, 200, 64);
    auto const raw = entlab::fit_decay(samples, false);
    CHECK(std::abs(raw.slope - (-13.01722365521666)) < 1e-3);

    std::vector<RadialSample> weighted;
    for (auto const& s : samples)
    {
        weighted.push_back({s.r, std::pow(s.r, 6.0) * s.y});
    }
    auto const sixth = entlab::fit_decay(weighted, false);
    CHECK(sixth.slope < 0.0);
    CHECK(std::abs(sixth.slope - (-7.017223655216658)) < 1e-3);
}

TEST_CASE("super-polynomial decay certificate", "[asymptotics]")
{
    auto const bump = Formfactor::compact_bump(0.5, 2.0);
    auto const grid = entlab::make_grid(20, 200, 64, true);

    std::vector<int> const powers{0, 2, 4, 6};
    auto const verdicts
        = entlab::superpoly_certificate(bump, 1.0, powers, grid);
    REQUIRE(verdicts.size() == powers.size());
    for (std::size_t i = 0; i < verdicts.size(); ++i)
    {
        CHECK(verdicts[i].k == powers[i]);
        CHECK(verdicts[i].decreasing);
    }

    CHECK_THROWS_AS(entlab::superpoly_certificate(
                        Formfactor::step_cutoff(1.0), 1.0, {2}, grid),
                    std::invalid_argument);

    CHECK_THROWS_AS(
        entlab::superpoly_certificate(
            bump, 1.0, {2}, entlab::make_grid(20, 200, 2, true)),
        entlab::TooFewPoints);

    CHECK_THROWS_AS(
        entlab::superpoly_certificate(bump, 1.0, {2}, {5.0, 4.0, 3.0}),
        std::invalid_argument);
}
