//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file entlab/formfactor.hpp
//! \brief Source formfactor profiles and their half-line Fourier transform.
//!
//! A formfactor is a nonnegative radial profile f(x), x >= 0, that couples
//! the source to the field modes. The quantity every downstream computation
//! needs is the half-line oscillatory transform
//!
//!     I(a) = integral_0^inf f(x) e^{-i a x} dx,
//!
//! evaluated in closed form where one is registered (the sharp cutoff) and by
//! oscillation-aware panel quadrature otherwise.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "entlab/quadrature.hpp"

namespace entlab
{

enum class FormfactorKind
{
    StepCutoff,   //!< f(x) = 1 for 0 <= x <= A, else 0
    Gaussian,     //!< f(x) = exp(-x^2 / A)
    CompactBump,  //!< f(x) = exp(-1 / ((x-a)(b-x))) on (a,b), else 0
};

//---------------------------------------------------------------------------//
/*!
 * Tagged formfactor profile.
 *
 * Note on the sharp cutoff: the profile keeps modes *below* the cutoff,
 * f(x) = theta(A - x). This is the convention consistent with the registered
 * closed form I(a) = i (e^{-iaA} - 1) / a, which integrates f over [0, A].
 */
class Formfactor
{
  public:
    static Formfactor step_cutoff(double cutoff)
    {
        if (!(cutoff > 0))
        {
            throw std::invalid_argument("step cutoff must be positive");
        }
        return Formfactor{FormfactorKind::StepCutoff, cutoff, 0.0};
    }

    static Formfactor gaussian(double width)
    {
        if (!(width > 0))
        {
            throw std::invalid_argument("gaussian width must be positive");
        }
        return Formfactor{FormfactorKind::Gaussian, width, 0.0};
    }

    static Formfactor compact_bump(double lo, double hi)
    {
        if (!(0 < lo) || !(lo < hi))
        {
            throw std::invalid_argument(
                "bump support must satisfy 0 < a < b");
        }
        return Formfactor{FormfactorKind::CompactBump, lo, hi};
    }

    FormfactorKind kind() const { return kind_; }

    //! Cutoff A (StepCutoff) or squared-width parameter A (Gaussian).
    double scale() const { return p0_; }
    //! Support interval of the bump profile.
    double support_lo() const { return p0_; }
    double support_hi() const { return p1_; }

    //! Profile value; total on x >= 0.
    double operator()(double x) const
    {
        switch (kind_)
        {
            case FormfactorKind::StepCutoff:
                return (x >= 0 && x <= p0_) ? 1.0 : 0.0;
            case FormfactorKind::Gaussian:
                return std::exp(-x * x / p0_);
            case FormfactorKind::CompactBump:
                if (x <= p0_ || x >= p1_)
                {
                    return 0.0;
                }
                return std::exp(-1.0 / ((x - p0_) * (p1_ - x)));
        }
        return 0.0;  // unreachable
    }

    //! Smallest x below which the profile vanishes identically.
    double lower_support(double) const
    {
        return kind_ == FormfactorKind::CompactBump ? p0_ : 0.0;
    }

    /*!
     * Upper integration limit: exact support edge for compactly supported
     * kinds, tail cut with mass below truncation_epsilon for the Gaussian.
     */
    double upper_support(double truncation_epsilon) const
    {
        switch (kind_)
        {
            case FormfactorKind::StepCutoff:
                return p0_;
            case FormfactorKind::Gaussian:
                return std::sqrt(p0_ * std::log(1.0 / truncation_epsilon));
            case FormfactorKind::CompactBump:
                return p1_;
        }
        return 0.0;  // unreachable
    }

  private:
    Formfactor(FormfactorKind kind, double p0, double p1)
        : kind_{kind}, p0_{p0}, p1_{p1}
    {
    }

    FormfactorKind kind_;
    double p0_;
    double p1_;
};

//---------------------------------------------------------------------------//
enum class TransformMethod
{
    ClosedForm,
    Quadrature,
};

//! Value of the half-line transform I(a) with its evaluation metadata.
struct TransformValue
{
    Complex value{};
    double est_error = 0;
    TransformMethod method = TransformMethod::Quadrature;
};

//---------------------------------------------------------------------------//
/*!
 * Closed-form transform where one is registered.
 *
 * StepCutoff: I(a) = i (e^{-iaA} - 1) / a, continued through a = 0 by a
 * three-term Taylor series (I(0) = A) to avoid the 0/0 cancellation. Other
 * kinds have no registered closed form and return nullopt.
 */
inline std::optional<TransformValue>
transform_closed_form(Formfactor const& f, double alpha)
{
    if (f.kind() != FormfactorKind::StepCutoff)
    {
        return std::nullopt;
    }
    double const a = f.scale();
    Complex value;
    if (std::abs(alpha * a) < 1e-6)
    {
        // I(a) = A - i a A^2/2 - a^2 A^3/6 + O((aA)^3 A)
        value = Complex{a - alpha * alpha * a * a * a / 6.0,
                        -alpha * a * a / 2.0};
    }
    else
    {
        value = Complex{0.0, 1.0}
                * (std::exp(Complex{0.0, -alpha * a}) - 1.0) / alpha;
    }
    return TransformValue{value, 0.0, TransformMethod::ClosedForm};
}

//---------------------------------------------------------------------------//
/*!
 * Transform by panel quadrature over the (possibly truncated) support.
 *
 * Throws ToleranceNotMet if the error estimate cannot be pushed below
 * max(abs_tol, rel_tol |I|) within spec.max_panels.
 */
inline TransformValue transform_quadrature(Formfactor const& f,
                                           double alpha,
                                           QuadratureSpec const& spec = {})
{
    double const lo = f.lower_support(spec.truncation_epsilon);
    double const hi = f.upper_support(spec.truncation_epsilon);
    auto const res = integrate_panels(
        [&](double x) {
            return f(x) * std::exp(Complex{0.0, -alpha * x});
        },
        lo,
        hi,
        std::abs(alpha),
        spec);
    return TransformValue{res.value, res.est_error, TransformMethod::Quadrature};
}

//---------------------------------------------------------------------------//
//! Best available transform: closed form when registered, else quadrature.
inline TransformValue transform(Formfactor const& f,
                                double alpha,
                                QuadratureSpec const& spec = {})
{
    if (auto cf = transform_closed_form(f, alpha))
    {
        return *cf;
    }
    return transform_quadrature(f, alpha, spec);
}

}  // namespace entlab
