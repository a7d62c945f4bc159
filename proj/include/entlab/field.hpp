//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file entlab/field.hpp
//! \brief One-point field amplitude and the mirror-free coincidence base.
//!
//! The amplitude of a massless field sourced through a radial formfactor
//! reduces to a four-term combination of half-line transforms:
//!
//!     phi(r,t) = (2 pi / (i r)) (I(t-r) - I(t+r) + I(r) - I(-r)),
//!
//! with I the transform from formfactor.hpp. A direct quadrature of the
//! defining momentum-space integral is kept alongside as an independent
//! oracle. The coincidence base rate is R0 = |phi(r1,t)|^2 |phi(r2,t)|^2.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "entlab/formfactor.hpp"
#include "entlab/quadrature.hpp"

namespace entlab
{

//---------------------------------------------------------------------------//
//! Mode frequency law. Only the massless branch omega(p) = |p| is supported.
struct DispersionLaw
{
    enum class Kind
    {
        Massless,
    };

    Kind kind = Kind::Massless;

    double omega(double p) const { return std::abs(p); }
};

//---------------------------------------------------------------------------//
enum class PhiMethod
{
    RadialReduction,
    Direct3D,
};

//! Field amplitude at one spacetime point with evaluation metadata.
struct FieldAmplitude
{
    Complex value{};
    double r = 0;
    double t = 0;
    double est_error = 0;
    PhiMethod method = PhiMethod::RadialReduction;
};

//! Coincidence base rate R0 = |phi(r1,t)|^2 |phi(r2,t)|^2.
struct CoincidenceBase
{
    double r1 = 0;
    double r2 = 0;
    double t = 0;
    double r0 = 0;
};

namespace detail
{
inline void require_positive_radius(double r)
{
    if (!(r > 0))
    {
        throw std::invalid_argument("radial distance must be positive");
    }
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Amplitude via the radial reduction.
 *
 * The four transforms are combined pairwise as (I(t-r) - I(t+r)) +
 * (I(r) - I(-r)) so that at t = 0 the two pairs are computed from
 * bit-identical transform calls and cancel exactly. Transform errors add up
 * and are scaled by the 2 pi / r prefactor.
 */
inline FieldAmplitude phi_radial(Formfactor const& f,
                                 double r,
                                 double t,
                                 QuadratureSpec const& spec = {})
{
    detail::require_positive_radius(r);

    auto const i1 = transform(f, t - r, spec);
    auto const i2 = transform(f, t + r, spec);
    auto const i3 = transform(f, r, spec);
    auto const i4 = transform(f, -r, spec);

    Complex const four = (i1.value - i2.value) + (i3.value - i4.value);
    double const scale = 2 * std::numbers::pi / r;
    // 2 pi / (i r) = -(2 pi / r) i
    Complex const value = Complex{0.0, -scale} * four;
    double const err = scale
                       * (i1.est_error + i2.est_error + i3.est_error
                          + i4.est_error);
    return FieldAmplitude{value, r, t, err, PhiMethod::RadialReduction};
}

//---------------------------------------------------------------------------//
/*!
 * Amplitude by direct quadrature of the defining momentum integral.
 *
 * With the azimuthal angle done analytically the integral is two dimensional,
 *
 *   phi(r,t) = 2 pi int_0^inf dp int_0^pi dtheta
 *              p f(p) (e^{-i omega(p) t} - 1) sin(theta) e^{i p r cos(theta)},
 *
 * evaluated as nested panel quadrature with a 10x tighter inner tolerance.
 * This is deliberately independent of the radial reduction and exists as its
 * oracle; it is much slower and not meant for sweeps.
 */
inline FieldAmplitude phi_direct3d(Formfactor const& f,
                                   double r,
                                   double t,
                                   QuadratureSpec const& spec = {},
                                   DispersionLaw const& law = {})
{
    detail::require_positive_radius(r);

    QuadratureSpec inner_spec = spec;
    inner_spec.rel_tol *= 0.1;
    inner_spec.abs_tol *= 0.1;

    double const p_lo = f.lower_support(spec.truncation_epsilon);
    double const p_hi = f.upper_support(spec.truncation_epsilon);

    double inner_err_bound = 0;
    auto const outer = integrate_panels(
        [&](double p) {
            auto const angular = integrate_panels(
                [&](double theta) {
                    return std::sin(theta)
                           * std::exp(Complex{0.0, p * r * std::cos(theta)});
                },
                0.0,
                std::numbers::pi,
                std::abs(p) * r,
                inner_spec);
            Complex const weight
                = p * f(p)
                  * (std::exp(Complex{0.0, -law.omega(p) * t}) - 1.0);
            inner_err_bound = std::max(inner_err_bound,
                                       angular.est_error * std::abs(weight));
            return weight * angular.value;
        },
        p_lo,
        p_hi,
        std::abs(t) + r,
        spec);

    double const scale = 2 * std::numbers::pi;
    Complex const value = scale * outer.value;
    double const err
        = scale * (outer.est_error + (p_hi - p_lo) * inner_err_bound);
    return FieldAmplitude{value, r, t, err, PhiMethod::Direct3D};
}

//---------------------------------------------------------------------------//
//! Coincidence base rate from two radial-reduction amplitudes.
inline CoincidenceBase r0(Formfactor const& f,
                          double r1,
                          double r2,
                          double t,
                          QuadratureSpec const& spec = {})
{
    auto const p1 = phi_radial(f, r1, t, spec);
    auto const p2 = phi_radial(f, r2, t, spec);
    return CoincidenceBase{r1, r2, t, std::norm(p1.value) * std::norm(p2.value)};
}

}  // namespace entlab
