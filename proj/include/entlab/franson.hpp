//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file entlab/franson.hpp
//! \brief Two-detector interferometer layer on top of the field model.
//!
//! Each detector sees the superposition of a short and a long path,
//! psi(r,t) = (1/2) phi(r,t) + (1/2) e^{i phase} phi(r,t - dT). The
//! coincidence rate for the interfering event class is
//!
//!     R_c = eta1 eta2 (1/4) R0 cos^2(phi1 - phi2),
//!
//! whose fringe visibility V = (max - min)/(max + min) admits the same
//! 1/sqrt(2) violation threshold as the spatial g factor.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "entlab/errors.hpp"
#include "entlab/field.hpp"

namespace entlab
{

//---------------------------------------------------------------------------//
//! Interferometer phases, path delay, and detector efficiencies.
struct FransonSettings
{
    double phi1 = 0;
    double phi2 = 0;
    double delta_t = 0;
    double eta1 = 1;
    double eta2 = 1;

    void validate() const
    {
        if (!(eta1 > 0 && eta1 <= 1) || !(eta2 > 0 && eta2 <= 1))
        {
            throw std::invalid_argument(
                "detection efficiencies must lie in (0, 1]");
        }
        if (!(delta_t >= 0))
        {
            throw std::invalid_argument("path delay must be nonnegative");
        }
    }
};

//---------------------------------------------------------------------------//
//! Interfering-class coincidence rate and its inputs.
struct CoincidenceResult
{
    double rc = 0;
    CoincidenceBase base;
    double fringe_phase = 0;
};

//! R_c = eta1 eta2 (1/4) R0 cos^2(phi1 - phi2).
inline CoincidenceResult coincidence_rate(CoincidenceBase const& base,
                                          FransonSettings const& s)
{
    s.validate();
    if (!(base.r0 >= 0))
    {
        throw std::invalid_argument("base rate must be nonnegative");
    }
    double const dphi = s.phi1 - s.phi2;
    double const c = std::cos(dphi);
    double const rc = s.eta1 * s.eta2 * 0.25 * base.r0 * c * c;
    return CoincidenceResult{rc, base, dphi};
}

//---------------------------------------------------------------------------//
/*!
 * Single-detector amplitude behind the interferometer,
 * (1/2) phi(r,t) + (1/2) e^{i phase} phi(r,t - delta_t).
 */
inline Complex superposed_amplitude(Formfactor const& f,
                                    double r,
                                    double t,
                                    double delta_t,
                                    double phase,
                                    QuadratureSpec const& spec = {})
{
    auto const direct = phi_radial(f, r, t, spec);
    auto const delayed = phi_radial(f, r, t - delta_t, spec);
    return 0.5 * direct.value
           + 0.5 * std::exp(Complex{0.0, phase}) * delayed.value;
}

//---------------------------------------------------------------------------//
/*!
 * Coincidence rate computed from the concrete field model rather than the
 * interferometric cross form: eta1 eta2 |psi(r1)|^2 |psi(r2)|^2.
 *
 * The vacuum expectation of this model factorizes per detector, which does
 * not manifestly reproduce the cos^2(phi1 - phi2) cross term; this probe
 * exists to measure the two side by side, not to assert their equality.
 */
inline double model_coincidence(Formfactor const& f,
                                double r1,
                                double r2,
                                double t,
                                FransonSettings const& s,
                                QuadratureSpec const& spec = {})
{
    s.validate();
    auto const a1
        = superposed_amplitude(f, r1, t, s.delta_t, s.phi1, spec);
    auto const a2
        = superposed_amplitude(f, r2, t, s.delta_t, s.phi2, spec);
    return s.eta1 * s.eta2 * std::norm(a1) * std::norm(a2);
}

//---------------------------------------------------------------------------//
//! One fringe sample: interferometer phase difference and measured rate.
struct PhaseRate
{
    double phase = 0;
    double rate = 0;
};

/*!
 * Fringe contrast V = (max - min)/(max + min) over the sampled rates.
 * All-zero rates give V = 0; fewer than two samples are rejected.
 */
inline double visibility(std::vector<PhaseRate> const& rates)
{
    if (rates.size() < 2)
    {
        throw EmptyInput("visibility needs at least two rate samples");
    }
    double max_rate = rates.front().rate;
    double min_rate = rates.front().rate;
    for (auto const& pr : rates)
    {
        if (!(pr.rate >= 0))
        {
            throw std::invalid_argument("rates must be nonnegative");
        }
        max_rate = std::max(max_rate, pr.rate);
        min_rate = std::min(min_rate, pr.rate);
    }
    if (max_rate == 0)
    {
        return 0;
    }
    return (max_rate - min_rate) / (max_rate + min_rate);
}

//! Strict-threshold classifier shared with the g factor semantics.
inline bool visibility_violates(double v)
{
    return v * (2 * std::numbers::sqrt2) > 2.0;
}

}  // namespace entlab
