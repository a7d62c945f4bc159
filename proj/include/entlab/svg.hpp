//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file entlab/svg.hpp
//! \brief Self-contained deterministic SVG line charts for sweep tables.
//!
//! Rendering is plain string assembly with shortest round-trip number
//! formatting: the same table yields byte-identical SVG on every platform,
//! with no plotting process involved.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "entlab/errors.hpp"
#include "entlab/table.hpp"

namespace entlab
{

//---------------------------------------------------------------------------//
struct SvgOptions
{
    bool log_x = false;
    bool log_y = false;
    std::string title;
    //! Free-form provenance, embedded as an XML comment
    std::string comment;
};

namespace detail
{
inline std::string px(double v)
{
    return format_double(std::round(v * 100.0) / 100.0);
}

struct AxisRange
{
    double lo = 0;
    double hi = 1;

    void include(double v)
    {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Line chart of the named y columns against the x column.
 *
 * Log axes drop nonpositive points from the affected coordinate. Throws
 * EmptyInput when the table has no rows or nothing survives the log filter,
 * and invalid_argument for unknown column names.
 */
inline std::string render_svg(SweepTable const& table,
                              std::string const& x_col,
                              std::vector<std::string> const& y_cols,
                              SvgOptions const& opt = {})
{
    if (table.rows().empty())
    {
        throw EmptyInput("cannot plot an empty table");
    }
    if (y_cols.empty())
    {
        throw std::invalid_argument("at least one y column is required");
    }

    auto const xs = table.column(x_col);
    std::vector<std::vector<double>> series;
    series.reserve(y_cols.size());
    for (auto const& name : y_cols)
    {
        series.push_back(table.column(name));
    }

    auto tx = [&](double v) { return opt.log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return opt.log_y ? std::log10(v) : v; };
    auto usable = [&](double x, double y) {
        return (!opt.log_x || x > 0) && (!opt.log_y || y > 0);
    };

    bool first = true;
    detail::AxisRange xr;
    detail::AxisRange yr;
    for (auto const& ys : series)
    {
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            if (!usable(xs[i], ys[i]))
            {
                continue;
            }
            if (first)
            {
                xr = {tx(xs[i]), tx(xs[i])};
                yr = {ty(ys[i]), ty(ys[i])};
                first = false;
            }
            else
            {
                xr.include(tx(xs[i]));
                yr.include(ty(ys[i]));
            }
        }
    }
    if (first)
    {
        throw EmptyInput("no plottable points after axis filtering");
    }
    if (xr.hi == xr.lo)
    {
        xr.lo -= 0.5;
        xr.hi += 0.5;
    }
    if (yr.hi == yr.lo)
    {
        yr.lo -= 0.5;
        yr.hi += 0.5;
    }

    double const width = 860;
    double const height = 540;
    double const ml = 90;
    double const mr = 24;
    double const mt = 48;
    double const mb = 56;
    auto sx = [&](double v) {
        return ml + (width - ml - mr) * (tx(v) - xr.lo) / (xr.hi - xr.lo);
    };
    auto sy = [&](double v) {
        return height - mb
               - (height - mt - mb) * (ty(v) - yr.lo) / (yr.hi - yr.lo);
    };

    static constexpr std::array<char const*, 5> palette{
        "#1b6ca8", "#c0392b", "#2e8540", "#8e44ad", "#b7770d"};

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
           + detail::px(width) + "\" height=\"" + detail::px(height)
           + "\" viewBox=\"0 0 " + detail::px(width) + " "
           + detail::px(height) + "\">\n";
    if (!opt.comment.empty())
    {
        std::string safe = opt.comment;
        for (std::size_t pos = safe.find("--"); pos != std::string::npos;
             pos = safe.find("--", pos + 2))
        {
            safe.replace(pos, 2, "- -");
        }
        out += "<!-- " + safe + " -->\n";
    }
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opt.title.empty())
    {
        out += "<text x=\"" + detail::px(width / 2)
               + "\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
                 "font-size=\"15\">"
               + opt.title + "</text>\n";
    }
    out += "<rect x=\"" + detail::px(ml) + "\" y=\"" + detail::px(mt)
           + "\" width=\"" + detail::px(width - ml - mr) + "\" height=\""
           + detail::px(height - mt - mb)
           + "\" fill=\"none\" stroke=\"#444444\"/>\n";

    // Tick labels at five even stops, printed as untransformed values
    for (int k = 0; k <= 4; ++k)
    {
        double const s = k / 4.0;
        double const xv = xr.lo + s * (xr.hi - xr.lo);
        double const yv = yr.lo + s * (yr.hi - yr.lo);
        double const xpix = ml + s * (width - ml - mr);
        double const ypix = height - mb - s * (height - mt - mb);
        double const xlabel = opt.log_x ? std::pow(10.0, xv) : xv;
        double const ylabel = opt.log_y ? std::pow(10.0, yv) : yv;
        out += "<line x1=\"" + detail::px(xpix) + "\" y1=\""
               + detail::px(height - mb) + "\" x2=\"" + detail::px(xpix)
               + "\" y2=\"" + detail::px(height - mb + 6)
               + "\" stroke=\"#444444\"/>\n";
        out += "<text x=\"" + detail::px(xpix) + "\" y=\""
               + detail::px(height - mb + 20)
               + "\" text-anchor=\"middle\" font-family=\"monospace\" "
                 "font-size=\"11\">"
               + format_double(xlabel) + "</text>\n";
        out += "<line x1=\"" + detail::px(ml - 6) + "\" y1=\""
               + detail::px(ypix) + "\" x2=\"" + detail::px(ml) + "\" y2=\""
               + detail::px(ypix) + "\" stroke=\"#444444\"/>\n";
        out += "<text x=\"" + detail::px(ml - 10) + "\" y=\""
               + detail::px(ypix + 4)
               + "\" text-anchor=\"end\" font-family=\"monospace\" "
                 "font-size=\"11\">"
               + format_double(ylabel) + "</text>\n";
    }

    for (std::size_t s = 0; s < series.size(); ++s)
    {
        std::string points;
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            if (!usable(xs[i], series[s][i]))
            {
                continue;
            }
            if (!points.empty())
            {
                points += ' ';
            }
            points += detail::px(sx(xs[i])) + "," + detail::px(sy(series[s][i]));
        }
        char const* color = palette[s % palette.size()];
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color)
               + "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        double const ly = mt + 16 + 16 * static_cast<double>(s);
        out += "<line x1=\"" + detail::px(ml + 10) + "\" y1=\""
               + detail::px(ly - 4) + "\" x2=\"" + detail::px(ml + 34)
               + "\" y2=\"" + detail::px(ly - 4) + "\" stroke=\""
               + std::string(color) + "\" stroke-width=\"1.5\"/>\n";
        out += "<text x=\"" + detail::px(ml + 40) + "\" y=\"" + detail::px(ly)
               + "\" font-family=\"monospace\" font-size=\"12\">" + y_cols[s]
               + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

//---------------------------------------------------------------------------//
//! Render and write to a file (binary stream, so bytes are exact).
inline void emit_svg(SweepTable const& table,
                     std::string const& x_col,
                     std::vector<std::string> const& y_cols,
                     std::string const& path,
                     SvgOptions const& opt = {})
{
    auto const svg = render_svg(table, x_col, y_cols, opt);
    std::ofstream os(path, std::ios::binary);
    if (!os)
    {
        throw std::invalid_argument("cannot open output file: " + path);
    }
    os.write(svg.data(), static_cast<std::streamsize>(svg.size()));
}

}  // namespace entlab
