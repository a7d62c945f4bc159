//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file entlab/grid.hpp
//! \brief Linear and logarithmic evaluation grids with exact endpoints.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace entlab
{

//---------------------------------------------------------------------------//
/*!
 * Grid of count points from lo to hi, linearly or log spaced. Both
 * endpoints are assigned exactly so sweep boundaries are reproducible.
 */
inline std::vector<double>
make_grid(double lo, double hi, std::size_t count, bool log_spacing)
{
    if (count < 2)
    {
        throw std::invalid_argument("grid needs at least two points");
    }
    if (!(lo < hi))
    {
        throw std::invalid_argument("grid bounds must satisfy lo < hi");
    }
    if (log_spacing && !(lo > 0))
    {
        throw std::invalid_argument("log grid needs positive bounds");
    }

    std::vector<double> grid(count);
    double const n1 = static_cast<double>(count - 1);
    for (std::size_t i = 1; i + 1 < count; ++i)
    {
        double const s = static_cast<double>(i) / n1;
        grid[i] = log_spacing
                      ? std::exp((1.0 - s) * std::log(lo) + s * std::log(hi))
                      : lo + s * (hi - lo);
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

}  // namespace entlab
