//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file entlab/rng.hpp
//! \brief Seeded sampling helpers with bit-stable output across platforms.
//!
//! std::uniform_real_distribution and std::normal_distribution are
//! implementation-defined, so all variates are derived here from raw
//! mt19937_64 words. Identical seeds give identical streams everywhere.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace entlab
{

//---------------------------------------------------------------------------//
//! Uniform double in [0, 1) from the top 53 bits of one generator word.
inline double uniform01(std::mt19937_64& gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

//! Uniform double in [lo, hi).
inline double uniform_in(std::mt19937_64& gen, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(gen);
}

//---------------------------------------------------------------------------//
//! Standard normal variate by Box-Muller (one half-pair per call discarded).
inline double normal01(std::mt19937_64& gen)
{
    double u;
    do
    {
        u = uniform01(gen);
    } while (u == 0.0);
    double const v = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u))
           * std::cos(2.0 * std::numbers::pi * v);
}

//---------------------------------------------------------------------------//
//! Point uniform on the unit sphere.
inline std::array<double, 3> sphere_point(std::mt19937_64& gen)
{
    double const z = 1.0 - 2.0 * uniform01(gen);
    double const az = 2.0 * std::numbers::pi * uniform01(gen);
    double const s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(az), s * std::sin(az), z};
}

}  // namespace entlab
