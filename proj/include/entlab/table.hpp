//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file entlab/table.hpp
//! \brief Rectangular numeric sweep tables and their CSV serialization.
//!
//! Every number is printed with the shortest round-trip representation so
//! that identical runs produce byte-identical files on any platform.
//---------------------------------------------------------------------------//
#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "entlab/errors.hpp"

namespace entlab
{

//---------------------------------------------------------------------------//
//! Shortest decimal string that parses back to the identical double.
inline std::string format_double(double value)
{
    char buf[32];
    auto const res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

//---------------------------------------------------------------------------//
/*!
 * Named-column numeric table with free-form provenance lines.
 *
 * Rows must match the column count and contain finite values only; a
 * non-finite value is a numerical failure of the producing run.
 */
class SweepTable
{
  public:
    explicit SweepTable(std::vector<std::string> columns)
        : columns_{std::move(columns)}
    {
        if (columns_.empty())
        {
            throw std::invalid_argument("table needs at least one column");
        }
    }

    void add_provenance(std::string line)
    {
        provenance_.push_back(std::move(line));
    }

    void add_row(std::vector<double> row)
    {
        if (row.size() != columns_.size())
        {
            throw std::invalid_argument("row width does not match columns");
        }
        for (double v : row)
        {
            if (!std::isfinite(v))
            {
                throw NonFiniteValue("non-finite value in sweep row");
            }
        }
        rows_.push_back(std::move(row));
    }

    std::size_t column_index(std::string const& name) const
    {
        for (std::size_t i = 0; i < columns_.size(); ++i)
        {
            if (columns_[i] == name)
            {
                return i;
            }
        }
        throw std::invalid_argument("unknown column: " + name);
    }

    std::vector<std::string> const& columns() const { return columns_; }
    std::vector<std::vector<double>> const& rows() const { return rows_; }
    std::vector<std::string> const& provenance() const { return provenance_; }

    //! One column as a contiguous vector.
    std::vector<double> column(std::string const& name) const
    {
        std::size_t const idx = column_index(name);
        std::vector<double> out;
        out.reserve(rows_.size());
        for (auto const& row : rows_)
        {
            out.push_back(row[idx]);
        }
        return out;
    }

    //! CSV with '#'-prefixed provenance header lines.
    void write_csv(std::ostream& os) const
    {
        for (auto const& line : provenance_)
        {
            os << "# " << line << '\n';
        }
        for (std::size_t i = 0; i < columns_.size(); ++i)
        {
            os << (i ? "," : "") << columns_[i];
        }
        os << '\n';
        for (auto const& row : rows_)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
            {
                os << (i ? "," : "") << format_double(row[i]);
            }
            os << '\n';
        }
    }

  private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::string> provenance_;
};

}  // namespace entlab
