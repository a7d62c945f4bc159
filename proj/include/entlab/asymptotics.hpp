//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file entlab/asymptotics.hpp
//! \brief Decay-rate extraction for |phi(r,t)|^2 and R0 at large distance.
//!
//! Sharp-cutoff amplitudes oscillate (a cos(rA) factor rides on the power
//! law), so raw log-log fits are meaningless; the envelope of local maxima is
//! fitted instead. Smooth formfactors decay monotonically in trend and are
//! fitted raw. The certificate op quantifies super-polynomial decay of
//! compactly supported smooth profiles by checking that r^k |phi|^2 still
//! trends downward over the top decade for every requested power k.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entlab/errors.hpp"
#include "entlab/field.hpp"

namespace entlab
{

//---------------------------------------------------------------------------//
//! One radial sample of a nonnegative quantity.
struct RadialSample
{
    double r = 0;
    double y = 0;
};

//! Least-squares power-law fit of y(r) in log-log coordinates.
struct DecayFit
{
    double slope = 0;
    double intercept = 0;
    std::pair<double, double> r_window{0, 0};
    std::size_t n_points = 0;
    double residual_rms = 0;
};

//---------------------------------------------------------------------------//
/*!
 * Strict interior local maxima of y over r, order preserving.
 *
 * Throws TooFewPoints below three samples and NoPeaksFound when no interior
 * peak exists (monotone or constant data); the caller falls back to a raw
 * fit in that case.
 */
inline std::vector<RadialSample>
envelope(std::vector<RadialSample> const& samples)
{
    if (samples.size() < 3)
    {
        throw TooFewPoints("envelope extraction needs at least three samples");
    }
    std::vector<RadialSample> peaks;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i)
    {
        if (samples[i].y > samples[i - 1].y && samples[i].y > samples[i + 1].y)
        {
            peaks.push_back(samples[i]);
        }
    }
    if (peaks.empty())
    {
        throw NoPeaksFound("no interior local maxima in the sample sequence");
    }
    return peaks;
}

namespace detail
{
//! Least-squares line through (log r, log y).
inline DecayFit fit_loglog(std::vector<RadialSample> const& pts)
{
    double const n = static_cast<double>(pts.size());
    double sx = 0;
    double sy = 0;
    for (auto const& p : pts)
    {
        sx += std::log(p.r);
        sy += std::log(p.y);
    }
    double const mx = sx / n;
    double const my = sy / n;
    double sxx = 0;
    double sxy = 0;
    for (auto const& p : pts)
    {
        double const dx = std::log(p.r) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p.y) - my);
    }
    if (!(sxx > 0))
    {
        throw DegenerateFit("log-r values do not spread");
    }
    DecayFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_window = {pts.front().r, pts.back().r};
    fit.n_points = pts.size();
    double ss = 0;
    for (auto const& p : pts)
    {
        double const res
            = std::log(p.y) - (fit.intercept + fit.slope * std::log(p.r));
        ss += res * res;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Power-law fit of the samples, optionally through the oscillation envelope.
 *
 * The supplied r values must span at least one decade (DegenerateFit
 * otherwise); at least four points must survive envelope extraction. With
 * use_envelope the peak sequence is fitted, falling back to the raw samples
 * when the data turns out monotone.
 */
inline DecayFit fit_decay(std::vector<RadialSample> const& samples,
                          bool use_envelope)
{
    if (samples.size() < 4)
    {
        throw TooFewPoints("decay fit needs at least four samples");
    }
    double const lo = samples.front().r;
    double const hi = samples.back().r;
    if (!(lo > 0) || hi < 10.0 * lo * (1.0 - 1e-12))
    {
        throw DegenerateFit("sample radii span less than one decade");
    }

    std::vector<RadialSample> pts;
    if (use_envelope)
    {
        try
        {
            pts = envelope(samples);
        }
        catch (NoPeaksFound const&)
        {
            pts = samples;
        }
    }
    else
    {
        pts = samples;
    }
    if (pts.size() < 4)
    {
        throw TooFewPoints("fewer than four points survive the envelope");
    }
    for (auto const& p : pts)
    {
        if (!(p.y > 0))
        {
            throw std::invalid_argument("decay fit requires positive values");
        }
    }
    return detail::fit_loglog(pts);
}

//---------------------------------------------------------------------------//
//! Downward-trend verdict for one weighting power.
struct PowerTrend
{
    int k = 0;
    bool decreasing = false;
};

/*!
 * Super-polynomial decay certificate for a compactly supported smooth
 * profile: for each power k, evaluates r^k |phi(r,t)|^2 on the grid and
 * reports whether its log-log trend over the top decade of the grid is
 * downward. Pointwise monotonicity is deliberately not required; the
 * amplitude oscillates, and the trend slope is the meaningful certificate.
 */
inline std::vector<PowerTrend>
superpoly_certificate(Formfactor const& f,
                      double t,
                      std::vector<int> const& powers,
                      std::vector<double> const& r_grid,
                      QuadratureSpec const& spec = {})
{
    if (f.kind() != FormfactorKind::CompactBump)
    {
        throw std::invalid_argument(
            "certificate applies to compactly supported smooth profiles only");
    }
    if (r_grid.size() < 2)
    {
        throw TooFewPoints("certificate needs a grid");
    }
    for (std::size_t i = 1; i < r_grid.size(); ++i)
    {
        if (!(r_grid[i] > r_grid[i - 1]))
        {
            throw std::invalid_argument("grid must be strictly increasing");
        }
    }
    if (!(r_grid.front() > 0))
    {
        throw std::invalid_argument("grid radii must be positive");
    }
    double const decades = std::log10(r_grid.back() / r_grid.front());
    if (!(decades > 0)
        || static_cast<double>(r_grid.size()) < 3.0 * decades)
    {
        throw TooFewPoints("certificate needs >= 3 grid points per decade");
    }

    std::vector<double> phi_sq(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i)
    {
        phi_sq[i] = std::norm(phi_radial(f, r_grid[i], t, spec).value);
    }

    double const top_lo = r_grid.back() / 10.0;
    std::vector<PowerTrend> verdicts;
    verdicts.reserve(powers.size());
    for (int k : powers)
    {
        std::vector<RadialSample> pts;
        for (std::size_t i = 0; i < r_grid.size(); ++i)
        {
            if (r_grid[i] >= top_lo && phi_sq[i] > 0)
            {
                pts.push_back({r_grid[i], std::pow(r_grid[i], k) * phi_sq[i]});
            }
        }
        if (pts.size() < 2)
        {
            throw TooFewPoints("top decade holds fewer than two usable points");
        }
        verdicts.push_back({k, detail::fit_loglog(pts).slope < 0});
    }
    return verdicts;
}

}  // namespace entlab
