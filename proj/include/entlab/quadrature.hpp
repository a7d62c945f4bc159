//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file entlab/quadrature.hpp
//! \brief Panel-based Gauss-Kronrod quadrature for complex integrands.
//!
//! The integrands in this project are products of a slowly varying real
//! profile with e^{-i a x}. A 15-point Kronrod rule resolves such a factor
//! essentially exactly as long as the phase advance per panel stays below
//! about pi, so the driver seeds the panel length at a fraction of the
//! oscillation half-period pi/|a| and then doubles the panel count until the
//! Gauss/Kronrod discrepancy falls under the requested tolerance.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "entlab/errors.hpp"

namespace entlab
{

using Complex = std::complex<double>;

//---------------------------------------------------------------------------//
//! Tolerances and budget for adaptive panel quadrature.
struct QuadratureSpec
{
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_panels = 65536;
    //! Controls the upper integration limit for profiles without compact
    //! support: the tail beyond the limit is bounded by this value.
    double truncation_epsilon = 1e-12;

    void validate() const
    {
        if (!(rel_tol > 0) || !(abs_tol > 0) || !(truncation_epsilon > 0))
        {
            throw std::invalid_argument(
                "QuadratureSpec: tolerances must be positive");
        }
        if (max_panels < 1)
        {
            throw std::invalid_argument(
                "QuadratureSpec: max_panels must be at least 1");
        }
    }
};

//---------------------------------------------------------------------------//
//! Value and error estimate of a panel-quadrature pass.
struct QuadratureResult
{
    Complex value{};
    double est_error = 0;
    int panels = 0;
};

namespace detail
{

// 15-point Kronrod extension of the 7-point Gauss rule (positive abscissae).
inline constexpr double gk15_nodes[7] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
};

inline constexpr double gk15_weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,  // center
};

inline constexpr double gauss7_weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,  // center
};

template<class F>
struct Gk15Panel
{
    Complex kronrod;
    Complex gauss;
};

//! Evaluate the Gauss-7 and Kronrod-15 estimates on [a, b].
template<class F>
inline Gk15Panel<F> gk15(F&& f, double a, double b)
{
    double const center = 0.5 * (a + b);
    double const half = 0.5 * (b - a);

    Complex const fc = f(center);
    Complex kron = gk15_weights[7] * fc;
    Complex gauss = gauss7_weights[3] * fc;
    for (int j = 0; j < 7; ++j)
    {
        double const dx = half * gk15_nodes[j];
        Complex const pair = f(center - dx) + f(center + dx);
        kron += gk15_weights[j] * pair;
        if (j % 2 == 1)
        {
            gauss += gauss7_weights[j / 2] * pair;
        }
    }
    return {kron * half, gauss * half};
}

}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Integrate a complex-valued function over [lo, hi].
 *
 * \c oscillation_rate is the largest |d(phase)/dx| of the integrand; it seeds
 * the initial panel length at a quarter of the oscillation half-period so the
 * first pass already resolves every oscillation. Pass zero for smooth
 * integrands. The panel count doubles until the summed Gauss/Kronrod
 * discrepancy drops below max(abs_tol, rel_tol * |integral|).
 *
 * Throws ToleranceNotMet once the panel budget is exhausted.
 */
template<class F>
QuadratureResult integrate_panels(F&& f,
                                  double lo,
                                  double hi,
                                  double oscillation_rate,
                                  QuadratureSpec const& spec = {})
{
    spec.validate();
    if (!(hi > lo))
    {
        return {};
    }

    double const length = hi - lo;
    double panel_len = length / 8.0;
    if (oscillation_rate > 0)
    {
        panel_len = std::min(
            panel_len, std::numbers::pi / (4.0 * oscillation_rate));
    }
    int panels = static_cast<int>(
        std::clamp(std::ceil(length / panel_len),
                   1.0,
                   static_cast<double>(spec.max_panels)));

    for (;;)
    {
        Complex total{};
        double err = 0;
        double const h = length / panels;
        for (int i = 0; i < panels; ++i)
        {
            double const a = lo + i * h;
            double const b = (i + 1 == panels) ? hi : lo + (i + 1) * h;
            auto const p = detail::gk15(f, a, b);
            total += p.kronrod;
            err += std::abs(p.kronrod - p.gauss);
        }

        double const tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (err <= tol)
        {
            return {total, err, panels};
        }
        if (panels >= spec.max_panels)
        {
            throw ToleranceNotMet(
                "quadrature error " + std::to_string(err)
                + " above tolerance " + std::to_string(tol) + " with "
                + std::to_string(panels) + " panels");
        }
        panels = std::min(2 * panels, spec.max_panels);
    }
}

}  // namespace entlab
