//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file entlab/bell.hpp
//! \brief Spin correlations, CHSH combinations, and the spatial g factor.
//!
//! For a separable state (singlet spin part times a spatial wave packet) the
//! correlation measured by detectors restricted to regions O1, O2 factorizes
//! as E(a,O1,b,O2) = g(O1,O2) E_spin(a,b) with E_spin(a,b) = -a.b and
//! g = int_{O1 x O2} |phi(r1,r2)|^2. The CHSH combination then violates the
//! classical bound 2 only when g > 1/sqrt(2).
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

#include "entlab/errors.hpp"
#include "entlab/quadrature.hpp"
#include "entlab/rng.hpp"

namespace entlab
{

using Complex2x2 = std::array<Complex, 4>;   // row-major
using Complex4x4 = std::array<Complex, 16>;  // row-major
using Complex4 = std::array<Complex, 4>;

//---------------------------------------------------------------------------//
//! Detector setting direction; norm must be 1 within 1e-12.
struct UnitVector3
{
    double x = 0;
    double y = 0;
    double z = 1;

    static UnitVector3 normalized(double x, double y, double z)
    {
        double const n = std::sqrt(x * x + y * y + z * z);
        if (!(n > 0))
        {
            throw std::invalid_argument("cannot normalize the zero vector");
        }
        return UnitVector3{x / n, y / n, z / n};
    }

    void require_unit() const
    {
        if (std::abs(x * x + y * y + z * z - 1.0) > 1e-12)
        {
            throw std::invalid_argument("setting vector must have unit norm");
        }
    }
};

inline double dot(UnitVector3 const& a, UnitVector3 const& b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

//! Setting at a given angle in the x-z plane (radians from the z axis).
inline UnitVector3 coplanar_setting(double angle)
{
    return UnitVector3{std::sin(angle), 0.0, std::cos(angle)};
}

//---------------------------------------------------------------------------//
//! Pauli matrices and the two-qubit singlet state, kept explicit so the
//! correlation can be recomputed from raw matrix algebra as an oracle.
struct SingletSystem
{
    std::array<Complex2x2, 3> pauli{{
        {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0}},
        {Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0}},
        {Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{-1, 0}},
    }};
    //! (|01> - |10>) / sqrt(2) in the basis |00>, |01>, |10>, |11>
    Complex4 state{Complex{0, 0},
                   Complex{std::numbers::sqrt2 / 2, 0},
                   Complex{-std::numbers::sqrt2 / 2, 0},
                   Complex{0, 0}};
};

namespace detail
{
inline Complex2x2 sigma_dot(SingletSystem const& sys, UnitVector3 const& n)
{
    Complex2x2 m{};
    for (int i = 0; i < 4; ++i)
    {
        m[i] = n.x * sys.pauli[0][i] + n.y * sys.pauli[1][i]
               + n.z * sys.pauli[2][i];
    }
    return m;
}

inline Complex4x4 kron(Complex2x2 const& a, Complex2x2 const& b)
{
    Complex4x4 m{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                {
                    m[(2 * i + k) * 4 + (2 * j + l)]
                        = a[i * 2 + j] * b[k * 2 + l];
                }
    return m;
}
}  // namespace detail

//---------------------------------------------------------------------------//
//! Singlet spin correlation E_spin(a,b) = -a.b.
inline double spin_correlation(UnitVector3 const& a, UnitVector3 const& b)
{
    a.require_unit();
    b.require_unit();
    return -dot(a, b);
}

//---------------------------------------------------------------------------//
/*!
 * Correlation <psi|(sigma.a (x) sigma.b)|psi> by explicit 4x4 algebra.
 *
 * Exists as an independent oracle for spin_correlation. The result must be
 * real; an imaginary part above 1e-12 signals a construction bug.
 */
inline double singlet_oracle(SingletSystem const& sys,
                             UnitVector3 const& a,
                             UnitVector3 const& b)
{
    auto const m = detail::kron(detail::sigma_dot(sys, a),
                                detail::sigma_dot(sys, b));
    Complex4 mv{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
        {
            mv[i] += m[i * 4 + j] * sys.state[j];
        }
    Complex expect{};
    for (int i = 0; i < 4; ++i)
    {
        expect += std::conj(sys.state[i]) * mv[i];
    }
    if (std::abs(expect.imag()) > 1e-12)
    {
        throw NonHermitianResult(
            "singlet expectation has a non-negligible imaginary part");
    }
    return expect.real();
}

//---------------------------------------------------------------------------//
//! CHSH combination S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
template<class Correlation>
double chsh(UnitVector3 const& a,
            UnitVector3 const& a_prime,
            UnitVector3 const& b,
            UnitVector3 const& b_prime,
            Correlation&& correlation)
{
    return correlation(a, b) - correlation(a, b_prime)
           + correlation(a_prime, b) + correlation(a_prime, b_prime);
}

//---------------------------------------------------------------------------//
/*!
 * Local-hidden-variable correlation baseline.
 *
 * Monte Carlo estimate of E[sign(lambda.a) * (-sign(lambda.b))] with lambda
 * uniform on the sphere. Feeding this into chsh with one shared seed
 * reproduces the classical bound |S| <= 2.
 */
inline double lhv_baseline(UnitVector3 const& a,
                           UnitVector3 const& b,
                           std::int64_t samples,
                           std::uint64_t seed)
{
    if (samples < 1)
    {
        throw std::invalid_argument("lhv_baseline needs at least one sample");
    }
    std::mt19937_64 gen{seed};
    double sum = 0;
    for (std::int64_t i = 0; i < samples; ++i)
    {
        auto const lam = sphere_point(gen);
        double const sa = lam[0] * a.x + lam[1] * a.y + lam[2] * a.z;
        double const sb = lam[0] * b.x + lam[1] * b.y + lam[2] * b.z;
        sum += (sa >= 0 ? 1.0 : -1.0) * (sb >= 0 ? -1.0 : 1.0);
    }
    return sum / static_cast<double>(samples);
}

//---------------------------------------------------------------------------//
//! Axis-aligned detection box, or the whole space.
struct Region
{
    static Region all_space()
    {
        Region r;
        r.all = true;
        return r;
    }

    static Region box(std::array<double, 3> lo, std::array<double, 3> hi)
    {
        for (int i = 0; i < 3; ++i)
        {
            if (!(lo[i] <= hi[i]))
            {
                throw std::invalid_argument(
                    "region must satisfy lo <= hi on every axis");
            }
        }
        Region r;
        r.lo = lo;
        r.hi = hi;
        return r;
    }

    bool all = false;
    std::array<double, 3> lo{};
    std::array<double, 3> hi{};
};

//---------------------------------------------------------------------------//
//! Isotropic 3-D Gaussian probability density factor.
struct IsotropicGaussian
{
    std::array<double, 3> center{};
    double sigma = 1;
};

/*!
 * Two-particle spatial density |phi(r1,r2)|^2.
 *
 * Product: independent isotropic Gaussians for the two particles.
 * Correlated: Gaussian in the relative coordinate r1 - r2 (centered at a
 * fixed offset) times a Gaussian in the center of mass (r1 + r2)/2 centered
 * at the origin; the (u,v) change of variables has unit Jacobian, so both
 * families integrate to 1 over all space.
 */
struct WavePacketPair
{
    enum class Kind
    {
        Product,
        Correlated,
    };

    static WavePacketPair
    product(IsotropicGaussian const& one, IsotropicGaussian const& two)
    {
        if (!(one.sigma > 0) || !(two.sigma > 0))
        {
            throw std::invalid_argument("packet widths must be positive");
        }
        WavePacketPair p;
        p.kind = Kind::Product;
        p.one = one;
        p.two = two;
        return p;
    }

    static WavePacketPair correlated(std::array<double, 3> const& offset,
                                     double sigma_rel,
                                     double sigma_cm)
    {
        if (!(sigma_rel > 0) || !(sigma_cm > 0))
        {
            throw std::invalid_argument("packet widths must be positive");
        }
        WavePacketPair p;
        p.kind = Kind::Correlated;
        p.offset = offset;
        p.sigma_rel = sigma_rel;
        p.sigma_cm = sigma_cm;
        return p;
    }

    //! |phi(r1,r2)|^2 at a pair of points.
    double density(std::array<double, 3> const& r1,
                   std::array<double, 3> const& r2) const
    {
        auto norm3 = [](double sigma) {
            double const c = 2 * std::numbers::pi * sigma * sigma;
            return 1.0 / (c * std::sqrt(c));
        };
        if (kind == Kind::Product)
        {
            double q1 = 0;
            double q2 = 0;
            for (int i = 0; i < 3; ++i)
            {
                double const d1 = r1[i] - one.center[i];
                double const d2 = r2[i] - two.center[i];
                q1 += d1 * d1;
                q2 += d2 * d2;
            }
            return norm3(one.sigma) * norm3(two.sigma)
                   * std::exp(-q1 / (2 * one.sigma * one.sigma)
                              - q2 / (2 * two.sigma * two.sigma));
        }
        double qu = 0;
        double qv = 0;
        for (int i = 0; i < 3; ++i)
        {
            double const u = (r1[i] - r2[i]) - offset[i];
            double const v = 0.5 * (r1[i] + r2[i]);
            qu += u * u;
            qv += v * v;
        }
        return norm3(sigma_rel) * norm3(sigma_cm)
               * std::exp(-qu / (2 * sigma_rel * sigma_rel)
                          - qv / (2 * sigma_cm * sigma_cm));
    }

    Kind kind = Kind::Product;
    IsotropicGaussian one;
    IsotropicGaussian two;
    std::array<double, 3> offset{};
    double sigma_rel = 1;
    double sigma_cm = 1;
};

//---------------------------------------------------------------------------//
enum class GFactorMethod
{
    Tensorized,
    MonteCarlo,
};

//! Spatial localization factor g(O1,O2) with its error estimate.
struct GFactorResult
{
    double g = 0;
    double est_error = 0;
    GFactorMethod method = GFactorMethod::Tensorized;
};

namespace detail
{
//! Mass of a 1-D Gaussian N(c, sigma^2) on [lo, hi].
inline double gaussian_mass_1d(double c, double sigma, double lo, double hi)
{
    double const s = sigma * std::numbers::sqrt2;
    return 0.5 * (std::erf((hi - c) / s) - std::erf((lo - c) / s));
}

//! Mass of an isotropic 3-D Gaussian inside a region.
inline double
box_mass(std::array<double, 3> const& center, double sigma, Region const& o)
{
    if (o.all)
    {
        return 1.0;
    }
    double mass = 1;
    for (int i = 0; i < 3; ++i)
    {
        mass *= gaussian_mass_1d(center[i], sigma, o.lo[i], o.hi[i]);
    }
    return mass;
}

/*!
 * Stratified jittered Monte Carlo of the correlated density over the 6-D
 * box O1 x O2. The per-axis stratum count m is the largest with at least
 * two samples per cell; the error estimate combines per-cell variances.
 */
inline GFactorResult correlated_mc(WavePacketPair const& pair,
                                   Region const& o1,
                                   Region const& o2,
                                   std::int64_t budget,
                                   std::uint64_t seed)
{
    std::array<double, 6> lo{o1.lo[0], o1.lo[1], o1.lo[2],
                             o2.lo[0], o2.lo[1], o2.lo[2]};
    std::array<double, 6> hi{o1.hi[0], o1.hi[1], o1.hi[2],
                             o2.hi[0], o2.hi[1], o2.hi[2]};

    double volume = 1;
    for (int i = 0; i < 6; ++i)
    {
        volume *= hi[i] - lo[i];
    }
    if (volume == 0)
    {
        return GFactorResult{0.0, 0.0, GFactorMethod::MonteCarlo};
    }

    auto m = static_cast<std::int64_t>(
        std::floor(std::pow(static_cast<double>(budget) / 2.0, 1.0 / 6.0)));
    m = std::max<std::int64_t>(m, 1);
    std::int64_t cells = m * m * m * m * m * m;
    std::int64_t const per_cell = budget / cells;
    if (per_cell < 2)
    {
        throw BudgetTooSmall(
            "budget allows fewer than two samples per stratum");
    }

    double const cell_volume = volume / static_cast<double>(cells);
    std::mt19937_64 gen{seed};
    double g = 0;
    double var_sum = 0;
    std::array<double, 3> r1{};
    std::array<double, 3> r2{};
    for (std::int64_t cell = 0; cell < cells; ++cell)
    {
        std::array<std::int64_t, 6> idx{};
        std::int64_t rest = cell;
        for (int i = 0; i < 6; ++i)
        {
            idx[i] = rest % m;
            rest /= m;
        }
        double sum = 0;
        double sum_sq = 0;
        for (std::int64_t k = 0; k < per_cell; ++k)
        {
            for (int i = 0; i < 6; ++i)
            {
                double const step = (hi[i] - lo[i]) / static_cast<double>(m);
                double const x
                    = lo[i]
                      + step * (static_cast<double>(idx[i]) + uniform01(gen));
                (i < 3 ? r1[i] : r2[i - 3]) = x;
            }
            double const d = pair.density(r1, r2);
            sum += d;
            sum_sq += d * d;
        }
        double const n = static_cast<double>(per_cell);
        double const mean = sum / n;
        double const var
            = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
        g += cell_volume * mean;
        var_sum += cell_volume * cell_volume * var / n;
    }

    double const err = std::sqrt(var_sum);
    if (err > 0.1 * g)
    {
        throw BudgetTooSmall(
            "Monte Carlo error estimate exceeds 10% of the g factor");
    }
    return GFactorResult{g, err, GFactorMethod::MonteCarlo};
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Spatial factor g(O1,O2) = int_{O1 x O2} |phi(r1,r2)|^2 dr1 dr2.
 *
 * Product packets and marginalized correlated packets tensorize into per-axis
 * error-function masses; the genuinely 6-D correlated case falls back to
 * stratified Monte Carlo with the given sample budget and seed.
 */
inline GFactorResult g_factor(WavePacketPair const& pair,
                              Region const& o1,
                              Region const& o2,
                              std::int64_t budget,
                              std::uint64_t seed)
{
    if (o1.all && o2.all)
    {
        return GFactorResult{1.0, 0.0, GFactorMethod::Tensorized};
    }
    if (pair.kind == WavePacketPair::Kind::Product)
    {
        double const g = detail::box_mass(pair.one.center, pair.one.sigma, o1)
                         * detail::box_mass(pair.two.center, pair.two.sigma, o2);
        return GFactorResult{g, 0.0, GFactorMethod::Tensorized};
    }
    // Correlated: with one region unrestricted the other particle's marginal
    // is the Gaussian N(+-offset/2, sigma_cm^2 + sigma_rel^2/4) per axis.
    double const sig_marginal = std::sqrt(pair.sigma_cm * pair.sigma_cm
                                          + 0.25 * pair.sigma_rel
                                                * pair.sigma_rel);
    if (o1.all || o2.all)
    {
        double const sign = o1.all ? -0.5 : 0.5;
        std::array<double, 3> center{sign * pair.offset[0],
                                     sign * pair.offset[1],
                                     sign * pair.offset[2]};
        double const g
            = detail::box_mass(center, sig_marginal, o1.all ? o2 : o1);
        return GFactorResult{g, 0.0, GFactorMethod::Tensorized};
    }
    return detail::correlated_mc(pair, o1, o2, budget, seed);
}

//---------------------------------------------------------------------------//
//! Separable state: singlet spin part times a spatial packet pair.
struct SeparableState
{
    SingletSystem spin;
    WavePacketPair space;
};

//! E(a,O1,b,O2) = g(O1,O2) E_spin(a,b).
inline double localized_correlation(SeparableState const& state,
                                    UnitVector3 const& a,
                                    Region const& o1,
                                    UnitVector3 const& b,
                                    Region const& o2,
                                    std::int64_t budget,
                                    std::uint64_t seed)
{
    return g_factor(state.space, o1, o2, budget, seed).g
           * spin_correlation(a, b);
}

//---------------------------------------------------------------------------//
//! Verdict of the g > 1/sqrt(2) violation threshold.
struct ViolationVerdict
{
    double max_chsh = 0;
    bool violated = false;
};

/*!
 * Largest attainable |CHSH| for a given g and whether it beats the classical
 * bound. The threshold is strict: g = 1/sqrt(2) gives max_chsh = 2 exactly
 * and does not violate.
 */
inline ViolationVerdict violation_threshold(double g)
{
    if (!(g >= 0) || !(g <= 1))
    {
        throw std::invalid_argument("g must lie in [0, 1]");
    }
    double const max_chsh = g * (2 * std::numbers::sqrt2);
    return ViolationVerdict{max_chsh, max_chsh > 2.0};
}

}  // namespace entlab
