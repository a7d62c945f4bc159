//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/entangle_lab.cpp
//! \brief Command-line front end for the entanglement laboratory.
//!
//! Subcommands: phi, r0-sweep, decay-fit, chsh, g-factor, franson. Every
//! output embeds the resolved configuration and seed, numbers are printed
//! with shortest round-trip formatting, and identical configurations yield
//! byte-identical CSV/JSON/SVG files.
//!
//! Exit codes: 0 success, 1 argument or domain error, 2 numerical failure.
//---------------------------------------------------------------------------//
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "entlab/asymptotics.hpp"
#include "entlab/bell.hpp"
#include "entlab/errors.hpp"
#include "entlab/field.hpp"
#include "entlab/formfactor.hpp"
#include "entlab/franson.hpp"
#include "entlab/grid.hpp"
#include "entlab/parallel.hpp"
#include "entlab/svg.hpp"
#include "entlab/table.hpp"
#include "entlab/version.hpp"

using nlohmann::json;

namespace
{
//---------------------------------------------------------------------------//
// Configuration file handling
//---------------------------------------------------------------------------//
/*!
 * Locate and load the JSON config named on the raw command line. The file
 * supplies defaults that explicit flags override, so it is resolved before
 * CLI parsing; the schema mirrors the flag names exactly.
 */
json load_config(int argc, char** argv)
{
    std::string path;
    for (int i = 1; i < argc; ++i)
    {
        std::string const tok = argv[i];
        if (tok == "--config" && i + 1 < argc)
        {
            path = argv[i + 1];
        }
        else if (tok.rfind("--config=", 0) == 0)
        {
            path = tok.substr(9);
        }
    }
    if (path.empty())
    {
        return json::object();
    }
    std::ifstream is(path);
    if (!is)
    {
        throw std::invalid_argument("cannot open config file: " + path);
    }
    json cfg;
    try
    {
        cfg = json::parse(is);
    }
    catch (json::parse_error const& e)
    {
        throw std::invalid_argument("config file is not valid JSON: "
                                    + std::string(e.what()));
    }
    if (!cfg.is_object())
    {
        throw std::invalid_argument("config file must hold a JSON object");
    }
    return cfg;
}

//! Config applicator: remembers known keys and overrides the default value.
class ConfigReader
{
  public:
    explicit ConfigReader(json cfg) : cfg_(std::move(cfg)) {}

    template<class T>
    void operator()(char const* key, T& var)
    {
        known_.insert(key);
        if (!cfg_.contains(key))
        {
            return;
        }
        try
        {
            var = cfg_.at(key).get<T>();
        }
        catch (json::exception const&)
        {
            throw std::invalid_argument(std::string("config key '") + key
                                        + "' has the wrong type");
        }
    }

    //! Keys that only mark presence (regions may be boxes or absent).
    bool seen(char const* key)
    {
        known_.insert(key);
        return cfg_.contains(key);
    }

    void reject_unknown() const
    {
        for (auto const& item : cfg_.items())
        {
            if (!known_.count(item.key()))
            {
                throw std::invalid_argument(
                    "unknown config key for this command: " + item.key());
            }
        }
    }

  private:
    json cfg_;
    std::set<std::string> known_;
};

//---------------------------------------------------------------------------//
// Shared option bundles
//---------------------------------------------------------------------------//
struct FormfactorOpts
{
    std::string kind = "step";
    double cutoff = 1.0;
    double width = 1.0;
    std::vector<double> support{0.5, 2.0};
};

void add_formfactor_flags(CLI::App* sub, FormfactorOpts& o)
{
    sub->add_option("--formfactor", o.kind,
                    "profile kind: step, gaussian, or bump")
        ->check(CLI::IsMember({"step", "gaussian", "bump"}));
    sub->add_option("--cutoff", o.cutoff, "step profile cutoff A");
    sub->add_option("--width", o.width, "gaussian squared-width parameter A");
    sub->add_option("--support", o.support, "bump support edges a b")
        ->expected(2);
}

void apply_formfactor_config(ConfigReader& cfg, FormfactorOpts& o)
{
    cfg("formfactor", o.kind);
    cfg("cutoff", o.cutoff);
    cfg("width", o.width);
    cfg("support", o.support);
}

entlab::Formfactor make_formfactor(FormfactorOpts const& o)
{
    if (o.kind == "step")
    {
        if (!(o.cutoff > 0))
        {
            throw std::invalid_argument("--cutoff must be positive");
        }
        return entlab::Formfactor::step_cutoff(o.cutoff);
    }
    if (o.kind == "gaussian")
    {
        if (!(o.width > 0))
        {
            throw std::invalid_argument("--width must be positive");
        }
        return entlab::Formfactor::gaussian(o.width);
    }
    if (o.kind == "bump")
    {
        if (o.support.size() != 2)
        {
            throw std::invalid_argument("--support takes exactly two values");
        }
        if (!(0 < o.support[0]) || !(o.support[0] < o.support[1]))
        {
            throw std::invalid_argument("--support must satisfy 0 < a < b");
        }
        return entlab::Formfactor::compact_bump(o.support[0], o.support[1]);
    }
    throw std::invalid_argument("--formfactor must be step, gaussian, or bump");
}

void echo_formfactor(json& echo, FormfactorOpts const& o)
{
    echo["formfactor"] = o.kind;
    if (o.kind == "step")
    {
        echo["cutoff"] = o.cutoff;
    }
    else if (o.kind == "gaussian")
    {
        echo["width"] = o.width;
    }
    else
    {
        echo["support"] = o.support;
    }
}

//---------------------------------------------------------------------------//
struct GridOpts
{
    double r_min = 1.0;
    double r_max = 100.0;
    std::size_t points = 64;
    bool log_spacing = false;
};

void add_grid_flags(CLI::App* sub, GridOpts& o)
{
    sub->add_option("--r-min", o.r_min, "first radial grid point");
    sub->add_option("--r-max", o.r_max, "last radial grid point");
    sub->add_option("--points", o.points, "number of grid points");
    sub->add_flag("--log-spacing", o.log_spacing, "log-spaced radial grid");
}

void apply_grid_config(ConfigReader& cfg, GridOpts& o)
{
    cfg("r-min", o.r_min);
    cfg("r-max", o.r_max);
    cfg("points", o.points);
    cfg("log-spacing", o.log_spacing);
}

std::vector<double> make_radial_grid(GridOpts const& o)
{
    if (!(o.r_min > 0))
    {
        throw std::invalid_argument(
            "--r-min must be positive (r = 0 is outside the field domain)");
    }
    if (!(o.r_max > o.r_min))
    {
        throw std::invalid_argument("--r-max must exceed --r-min");
    }
    if (o.points < 2)
    {
        throw std::invalid_argument("--points must be at least 2");
    }
    return entlab::make_grid(o.r_min, o.r_max, o.points, o.log_spacing);
}

void echo_grid(json& echo, GridOpts const& o)
{
    echo["r-min"] = o.r_min;
    echo["r-max"] = o.r_max;
    echo["points"] = o.points;
    echo["log-spacing"] = o.log_spacing;
}

//---------------------------------------------------------------------------//
entlab::QuadratureSpec make_spec(double tol)
{
    if (!(tol > 0))
    {
        throw std::invalid_argument("--tol must be positive");
    }
    entlab::QuadratureSpec spec;
    spec.rel_tol = tol;
    spec.abs_tol = tol * 1e-2;
    return spec;
}

//---------------------------------------------------------------------------//
struct OutputOpts
{
    std::string out;
    std::string json_out;
    std::string plot;
    std::string plot_x;
    std::vector<std::string> plot_y;
    bool plot_logx = false;
    bool plot_logy = false;
    bool plot_logx_set = false;
    bool plot_logy_set = false;
};

void add_output_flags(CLI::App* sub, OutputOpts& o, bool with_table)
{
    sub->add_option("--json-out", o.json_out, "write the JSON result here");
    if (with_table)
    {
        sub->add_option("--out", o.out, "write the CSV table here (default stdout)");
        sub->add_option("--plot", o.plot, "write an SVG chart here");
        sub->add_option("--plot-x", o.plot_x, "x column for the chart");
        sub->add_option("--plot-y", o.plot_y, "y column(s) for the chart");
        sub->add_flag("--plot-logx", o.plot_logx, "log-scale x axis");
        sub->add_flag("--plot-logy", o.plot_logy, "log-scale y axis");
    }
}

//! Whether the user set the log-axis flags, so command defaults can yield.
void resolve_plot_flags(CLI::App* sub, OutputOpts& o)
{
    o.plot_logx_set = o.plot_logx_set || sub->count("--plot-logx") > 0;
    o.plot_logy_set = o.plot_logy_set || sub->count("--plot-logy") > 0;
}

void apply_output_config(ConfigReader& cfg, OutputOpts& o, bool with_table)
{
    cfg("json-out", o.json_out);
    if (with_table)
    {
        cfg("out", o.out);
        cfg("plot", o.plot);
        cfg("plot-x", o.plot_x);
        cfg("plot-y", o.plot_y);
        if (cfg.seen("plot-logx"))
        {
            o.plot_logx_set = true;
        }
        if (cfg.seen("plot-logy"))
        {
            o.plot_logy_set = true;
        }
    }
}

void write_file(std::string const& path, std::string const& content)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
    {
        throw std::invalid_argument("cannot open output file: " + path);
    }
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os)
    {
        throw std::invalid_argument("failed writing output file: " + path);
    }
}

//! Provenance header lines shared by every table output.
void stamp_table(entlab::SweepTable& table,
                 std::string const& command,
                 json const& echo,
                 std::uint64_t seed)
{
    table.add_provenance(std::string("entangle-lab ") + entlab::version_string);
    table.add_provenance("command: " + command);
    table.add_provenance("config: " + echo.dump());
    table.add_provenance("seed: " + std::to_string(seed));
}

/*!
 * Write the table as CSV (file or stdout) and render the optional chart.
 * Per-command default plot columns apply when the flags are absent.
 */
void output_table(entlab::SweepTable const& table,
                  OutputOpts const& o,
                  std::string const& command,
                  json const& echo,
                  std::string const& default_x,
                  std::vector<std::string> const& default_y,
                  bool default_logx,
                  bool default_logy)
{
    if (o.out.empty())
    {
        table.write_csv(std::cout);
    }
    else
    {
        std::ostringstream os;
        table.write_csv(os);
        write_file(o.out, os.str());
    }
    if (!o.plot.empty())
    {
        entlab::SvgOptions svg;
        svg.log_x = o.plot_logx_set ? o.plot_logx : default_logx;
        svg.log_y = o.plot_logy_set ? o.plot_logy : default_logy;
        svg.title = "entangle-lab " + command;
        svg.comment = "config: " + echo.dump() + " seed in config echo";
        std::string const x = o.plot_x.empty() ? default_x : o.plot_x;
        auto const y = o.plot_y.empty() ? default_y : o.plot_y;
        write_file(o.plot, entlab::render_svg(table, x, y, svg));
    }
}

//! Print the JSON result to stdout and optionally to a file.
void output_json(json const& doc, OutputOpts const& o)
{
    std::string const text = doc.dump(2) + "\n";
    std::cout << text;
    if (!o.json_out.empty())
    {
        write_file(o.json_out, text);
    }
}

json result_skeleton(std::string const& command, json const& echo)
{
    json doc;
    doc["command"] = command;
    doc["config"] = echo;
    doc["version"] = entlab::version_string;
    return doc;
}

//---------------------------------------------------------------------------//
// phi
//---------------------------------------------------------------------------//
struct PhiOpts
{
    FormfactorOpts ff;
    GridOpts grid;
    double t = 1.0;
    double tol = 1e-10;
    std::uint64_t seed = 12345;
    OutputOpts out;
    std::string config_path;
};

int run_phi(PhiOpts const& o)
{
    auto const f = make_formfactor(o.ff);
    auto const grid = make_radial_grid(o.grid);
    auto const spec = make_spec(o.tol);

    json echo;
    echo_formfactor(echo, o.ff);
    echo_grid(echo, o.grid);
    echo["t"] = o.t;
    echo["tol"] = o.tol;
    echo["seed"] = o.seed;

    std::vector<std::array<double, 6>> rows(grid.size());
    entlab::parallel_for(grid.size(), [&](std::size_t i) {
        auto const amp = entlab::phi_radial(f, grid[i], o.t, spec);
        rows[i] = {grid[i],
                   o.t,
                   amp.value.real(),
                   amp.value.imag(),
                   std::norm(amp.value),
                   amp.est_error};
    });

    entlab::SweepTable table(
        {"r", "t", "phi_re", "phi_im", "abs_phi_sq", "est_error"});
    stamp_table(table, "phi", echo, o.seed);
    for (auto const& row : rows)
    {
        table.add_row({row.begin(), row.end()});
    }
    output_table(table,
                 o.out,
                 "phi",
                 echo,
                 "r",
                 {"abs_phi_sq"},
                 o.grid.log_spacing,
                 o.grid.log_spacing);
    return 0;
}

//---------------------------------------------------------------------------//
// r0-sweep
//---------------------------------------------------------------------------//
struct R0Opts
{
    FormfactorOpts ff;
    GridOpts grid;
    double t = 1.0;
    double r2 = 0.0;
    bool has_r2 = false;
    double tol = 1e-10;
    std::uint64_t seed = 12345;
    OutputOpts out;
    std::string config_path;
};

int run_r0_sweep(R0Opts const& o)
{
    auto const f = make_formfactor(o.ff);
    auto const grid = make_radial_grid(o.grid);
    auto const spec = make_spec(o.tol);
    if (o.has_r2 && !(o.r2 > 0))
    {
        throw std::invalid_argument("--r2 must be positive");
    }

    json echo;
    echo_formfactor(echo, o.ff);
    echo_grid(echo, o.grid);
    echo["t"] = o.t;
    echo["tol"] = o.tol;
    echo["seed"] = o.seed;
    if (o.has_r2)
    {
        echo["r2"] = o.r2;
    }

    std::vector<std::array<double, 4>> rows(grid.size());
    entlab::parallel_for(grid.size(), [&](std::size_t i) {
        double const r2v = o.has_r2 ? o.r2 : grid[i];
        auto const base = entlab::r0(f, grid[i], r2v, o.t, spec);
        rows[i] = {base.r1, base.r2, base.t, base.r0};
    });

    entlab::SweepTable table({"r1", "r2", "t", "r0"});
    stamp_table(table, "r0-sweep", echo, o.seed);
    for (auto const& row : rows)
    {
        table.add_row({row.begin(), row.end()});
    }
    output_table(table,
                 o.out,
                 "r0-sweep",
                 echo,
                 "r1",
                 {"r0"},
                 o.grid.log_spacing,
                 o.grid.log_spacing);
    return 0;
}

//---------------------------------------------------------------------------//
// decay-fit
//---------------------------------------------------------------------------//
struct DecayOpts
{
    FormfactorOpts ff;
    GridOpts grid{100.0, 1000.0, 0, true};  // points 0 = auto by kind
    double t = 1.0;
    double tol = 1e-10;
    std::uint64_t seed = 12345;
    std::string input;
    std::string x_col = "r";
    std::string y_col = "abs_phi_sq";
    std::string envelope_mode = "auto";
    OutputOpts out;
    std::string config_path;
    bool points_given = false;
};

//! Parse a CSV produced by this tool: '#' comments, header, numeric rows.
entlab::SweepTable parse_csv(std::string const& path)
{
    std::ifstream is(path);
    if (!is)
    {
        throw std::invalid_argument("cannot open input file: " + path);
    }
    std::string line;
    std::vector<std::string> columns;
    while (std::getline(is, line))
    {
        if (line.empty() || line.front() == '#')
        {
            continue;
        }
        std::stringstream header(line);
        std::string name;
        while (std::getline(header, name, ','))
        {
            columns.push_back(name);
        }
        break;
    }
    if (columns.empty())
    {
        throw std::invalid_argument("input file has no header row: " + path);
    }
    entlab::SweepTable table(columns);
    while (std::getline(is, line))
    {
        if (line.empty() || line.front() == '#')
        {
            continue;
        }
        std::vector<double> row;
        std::stringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ','))
        {
            std::size_t used = 0;
            double v = 0;
            try
            {
                v = std::stod(cell, &used);
            }
            catch (std::exception const&)
            {
                throw std::invalid_argument("malformed numeric cell '" + cell
                                            + "' in " + path);
            }
            if (used != cell.size())
            {
                throw std::invalid_argument("malformed numeric cell '" + cell
                                            + "' in " + path);
            }
            row.push_back(v);
        }
        table.add_row(std::move(row));
    }
    return table;
}

int run_decay_fit(DecayOpts& o)
{
    if (o.envelope_mode != "auto" && o.envelope_mode != "on"
        && o.envelope_mode != "off")
    {
        throw std::invalid_argument("--envelope must be auto, on, or off");
    }

    json echo;
    std::vector<entlab::RadialSample> samples;
    bool use_env = false;
    if (!o.input.empty())
    {
        auto const table = parse_csv(o.input);
        auto const xs = table.column(o.x_col);
        auto const ys = table.column(o.y_col);
        samples.reserve(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            samples.push_back({xs[i], ys[i]});
        }
        for (std::size_t i = 1; i < samples.size(); ++i)
        {
            if (!(samples[i].r > samples[i - 1].r))
            {
                throw std::invalid_argument(
                    "--input table must be sorted by the x column");
            }
        }
        use_env = o.envelope_mode == "on";
        echo["input"] = o.input;
        echo["x-col"] = o.x_col;
        echo["y-col"] = o.y_col;
    }
    else
    {
        auto const f = make_formfactor(o.ff);
        if (o.points_given && o.grid.points < 2)
        {
            throw std::invalid_argument("--points must be at least 2");
        }
        if (o.grid.points == 0)
        {
            // Envelope extraction needs several samples per oscillation
            // period; smooth profiles need far fewer points.
            o.grid.points = o.ff.kind == "step" ? 4096 : 64;
        }
        auto const grid = make_radial_grid(o.grid);
        auto const spec = make_spec(o.tol);
        samples.resize(grid.size());
        entlab::parallel_for(grid.size(), [&](std::size_t i) {
            auto const amp = entlab::phi_radial(f, grid[i], o.t, spec);
            samples[i] = {grid[i], std::norm(amp.value)};
        });
        use_env = o.envelope_mode == "on"
                  || (o.envelope_mode == "auto" && o.ff.kind == "step");
        echo_formfactor(echo, o.ff);
        echo_grid(echo, o.grid);
        echo["t"] = o.t;
        echo["tol"] = o.tol;
    }
    echo["envelope"] = o.envelope_mode;
    echo["seed"] = o.seed;

    // Default fit window: the top decade of the supplied grid. When no
    // sample sits exactly on the decade boundary, keep the sample just
    // below it so the window still spans a full decade.
    std::vector<entlab::RadialSample> windowed;
    double const top_lo = samples.empty() ? 0.0 : samples.back().r / 10.0;
    std::size_t first = samples.size();
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        if (samples[i].r >= top_lo)
        {
            first = i;
            break;
        }
    }
    if (first < samples.size() && samples[first].r > top_lo && first > 0)
    {
        --first;
    }
    windowed.assign(samples.begin() + static_cast<std::ptrdiff_t>(first),
                    samples.end());

    auto const fit = entlab::fit_decay(windowed, use_env);
    bool used_envelope = false;
    if (use_env)
    {
        try
        {
            entlab::envelope(windowed);
            used_envelope = true;
        }
        catch (entlab::NoPeaksFound const&)
        {
        }
        catch (entlab::TooFewPoints const&)
        {
        }
    }

    json doc = result_skeleton("decay-fit", echo);
    doc["slope"] = fit.slope;
    doc["intercept"] = fit.intercept;
    doc["window"] = {fit.r_window.first, fit.r_window.second};
    doc["n_points"] = fit.n_points;
    doc["residual_rms"] = fit.residual_rms;
    doc["used_envelope"] = used_envelope;
    output_json(doc, o.out);
    return 0;
}

//---------------------------------------------------------------------------//
// Packet and region options (chsh, g-factor)
//---------------------------------------------------------------------------//
struct PacketOpts
{
    std::string packet = "product";
    std::vector<double> center1{0, 0, 0};
    std::vector<double> center2{0, 0, 0};
    double sigma_w1 = 1.0;
    double sigma_w2 = 1.0;
    std::vector<double> offset{0, 0, 0};
    double sigma_rel = 1.0;
    double sigma_cm = 1.0;
};

struct RegionOpts
{
    std::vector<double> lo{0, 0, 0};
    std::vector<double> hi{0, 0, 0};
    bool has_lo = false;
    bool has_hi = false;
};

void add_packet_flags(CLI::App* sub, PacketOpts& o)
{
    sub->add_option("--packet", o.packet, "spatial packet family")
        ->check(CLI::IsMember({"product", "correlated"}));
    sub->add_option("--center1", o.center1, "first packet center x y z")
        ->expected(3);
    sub->add_option("--center2", o.center2, "second packet center x y z")
        ->expected(3);
    sub->add_option("--sigma-w1", o.sigma_w1, "first packet width");
    sub->add_option("--sigma-w2", o.sigma_w2, "second packet width");
    sub->add_option("--offset", o.offset, "relative-coordinate center x y z")
        ->expected(3);
    sub->add_option("--sigma-rel", o.sigma_rel, "relative-coordinate width");
    sub->add_option("--sigma-cm", o.sigma_cm, "center-of-mass width");
}

void apply_packet_config(ConfigReader& cfg, PacketOpts& o)
{
    cfg("packet", o.packet);
    cfg("center1", o.center1);
    cfg("center2", o.center2);
    cfg("sigma-w1", o.sigma_w1);
    cfg("sigma-w2", o.sigma_w2);
    cfg("offset", o.offset);
    cfg("sigma-rel", o.sigma_rel);
    cfg("sigma-cm", o.sigma_cm);
}

std::array<double, 3> as_point(std::vector<double> const& v, char const* flag)
{
    if (v.size() != 3)
    {
        throw std::invalid_argument(std::string(flag)
                                    + " takes exactly three values");
    }
    return {v[0], v[1], v[2]};
}

entlab::WavePacketPair make_packet(PacketOpts const& o)
{
    if (o.packet == "product")
    {
        if (!(o.sigma_w1 > 0) || !(o.sigma_w2 > 0))
        {
            throw std::invalid_argument(
                "--sigma-w1/--sigma-w2 must be positive");
        }
        return entlab::WavePacketPair::product(
            {as_point(o.center1, "--center1"), o.sigma_w1},
            {as_point(o.center2, "--center2"), o.sigma_w2});
    }
    if (!(o.sigma_rel > 0) || !(o.sigma_cm > 0))
    {
        throw std::invalid_argument(
            "--sigma-rel/--sigma-cm must be positive");
    }
    return entlab::WavePacketPair::correlated(
        as_point(o.offset, "--offset"), o.sigma_rel, o.sigma_cm);
}

void echo_packet(json& echo, PacketOpts const& o)
{
    echo["packet"] = o.packet;
    if (o.packet == "product")
    {
        echo["center1"] = o.center1;
        echo["center2"] = o.center2;
        echo["sigma-w1"] = o.sigma_w1;
        echo["sigma-w2"] = o.sigma_w2;
    }
    else
    {
        echo["offset"] = o.offset;
        echo["sigma-rel"] = o.sigma_rel;
        echo["sigma-cm"] = o.sigma_cm;
    }
}

void add_region_flags(CLI::App* sub, RegionOpts& o, char const* which)
{
    std::string const lo_flag = std::string("--region") + which + "-lo";
    std::string const hi_flag = std::string("--region") + which + "-hi";
    sub->add_option(lo_flag, o.lo, "detection box lower corner x y z")
        ->expected(3);
    sub->add_option(hi_flag, o.hi, "detection box upper corner x y z")
        ->expected(3);
}

void apply_region_config(ConfigReader& cfg, RegionOpts& o, char const* which)
{
    std::string const lo_key = std::string("region") + which + "-lo";
    std::string const hi_key = std::string("region") + which + "-hi";
    if (cfg.seen(lo_key.c_str()))
    {
        o.has_lo = true;
    }
    if (cfg.seen(hi_key.c_str()))
    {
        o.has_hi = true;
    }
    // Re-read for the values themselves
    std::vector<double> tmp = o.lo;
    cfg(lo_key.c_str(), tmp);
    o.lo = tmp;
    tmp = o.hi;
    cfg(hi_key.c_str(), tmp);
    o.hi = tmp;
}

entlab::Region make_region(RegionOpts const& o, char const* which)
{
    if (!o.has_lo && !o.has_hi)
    {
        return entlab::Region::all_space();
    }
    if (o.has_lo != o.has_hi)
    {
        throw std::invalid_argument(std::string("--region") + which
                                    + "-lo and --region" + which
                                    + "-hi must be given together");
    }
    try
    {
        return entlab::Region::box(
            as_point(o.lo, (std::string("--region") + which + "-lo").c_str()),
            as_point(o.hi, (std::string("--region") + which + "-hi").c_str()));
    }
    catch (std::invalid_argument const& e)
    {
        throw std::invalid_argument(std::string("--region") + which + ": "
                                    + e.what());
    }
}

void echo_region(json& echo, RegionOpts const& o, char const* which)
{
    if (o.has_lo && o.has_hi)
    {
        echo[std::string("region") + which + "-lo"] = o.lo;
        echo[std::string("region") + which + "-hi"] = o.hi;
    }
}

//---------------------------------------------------------------------------//
// chsh and g-factor
//---------------------------------------------------------------------------//
struct ChshOpts
{
    std::vector<double> angles{0.0, 90.0, 45.0, 135.0};
    PacketOpts packet;
    RegionOpts region1;
    RegionOpts region2;
    std::int64_t budget = 400000;
    std::uint64_t seed = 12345;
    OutputOpts out;
    std::string config_path;
};

int run_g_factor(ChshOpts const& o, bool with_chsh)
{
    auto const pair = make_packet(o.packet);
    auto const o1 = make_region(o.region1, "1");
    auto const o2 = make_region(o.region2, "2");
    if (o.budget < 2)
    {
        throw std::invalid_argument("--budget must be at least 2");
    }

    json echo;
    echo_packet(echo, o.packet);
    echo_region(echo, o.region1, "1");
    echo_region(echo, o.region2, "2");
    echo["budget"] = o.budget;
    echo["seed"] = o.seed;
    if (with_chsh)
    {
        echo["angles"] = o.angles;
    }

    auto const gres = entlab::g_factor(pair, o1, o2, o.budget, o.seed);
    char const* method = gres.method == entlab::GFactorMethod::Tensorized
                             ? "tensorized"
                             : "monte-carlo";

    if (!with_chsh)
    {
        json doc = result_skeleton("g-factor", echo);
        doc["g"] = gres.g;
        doc["est_error"] = gres.est_error;
        doc["method"] = method;
        output_json(doc, o.out);
        return 0;
    }

    if (o.angles.size() != 4)
    {
        throw std::invalid_argument("--angles takes exactly four values");
    }
    auto rad = [](double deg) { return deg * std::numbers::pi / 180.0; };
    auto const a = entlab::coplanar_setting(rad(o.angles[0]));
    auto const ap = entlab::coplanar_setting(rad(o.angles[1]));
    auto const b = entlab::coplanar_setting(rad(o.angles[2]));
    auto const bp = entlab::coplanar_setting(rad(o.angles[3]));
    double const s_spin
        = entlab::chsh(a, ap, b, bp, [](auto const& u, auto const& v) {
              return entlab::spin_correlation(u, v);
          });
    auto const verdict
        = entlab::violation_threshold(std::clamp(gres.g, 0.0, 1.0));

    json doc = result_skeleton("chsh", echo);
    doc["g"] = gres.g;
    doc["g_error"] = gres.est_error;
    doc["method"] = method;
    doc["s_spin"] = s_spin;
    doc["s_weighted"] = gres.g * s_spin;
    doc["max_chsh"] = verdict.max_chsh;
    doc["violated"] = verdict.violated;
    output_json(doc, o.out);
    return 0;
}

//---------------------------------------------------------------------------//
// franson
//---------------------------------------------------------------------------//
struct FransonOpts
{
    FormfactorOpts ff;
    double r1 = 2.0;
    double r2 = 3.0;
    double t = 1.0;
    std::size_t points = 64;
    double eta1 = 1.0;
    double eta2 = 1.0;
    double delta_t = 0.0;
    double tol = 1e-10;
    std::uint64_t seed = 12345;
    OutputOpts out;
    std::string config_path;
};

int run_franson(FransonOpts const& o)
{
    auto const f = make_formfactor(o.ff);
    auto const spec = make_spec(o.tol);
    if (!(o.r1 > 0) || !(o.r2 > 0))
    {
        throw std::invalid_argument("--r1/--r2 must be positive");
    }
    if (o.points < 2)
    {
        throw std::invalid_argument("--points must be at least 2");
    }
    entlab::FransonSettings proto;
    proto.delta_t = o.delta_t;
    proto.eta1 = o.eta1;
    proto.eta2 = o.eta2;
    try
    {
        proto.validate();
    }
    catch (std::invalid_argument const& e)
    {
        throw std::invalid_argument(std::string("--eta1/--eta2/--delta-t: ")
                                    + e.what());
    }

    json echo;
    echo_formfactor(echo, o.ff);
    echo["r1"] = o.r1;
    echo["r2"] = o.r2;
    echo["t"] = o.t;
    echo["points"] = o.points;
    echo["eta1"] = o.eta1;
    echo["eta2"] = o.eta2;
    echo["delta-t"] = o.delta_t;
    echo["tol"] = o.tol;
    echo["seed"] = o.seed;

    auto const base = entlab::r0(f, o.r1, o.r2, o.t, spec);

    entlab::SweepTable table({"delta_phi", "rc", "rc_over_r0"});
    stamp_table(table, "franson", echo, o.seed);
    std::vector<entlab::PhaseRate> rates;
    rates.reserve(o.points);
    for (std::size_t i = 0; i < o.points; ++i)
    {
        double const phase = 2.0 * std::numbers::pi
                             * static_cast<double>(i)
                             / static_cast<double>(o.points);
        auto s = proto;
        s.phi1 = phase;
        s.phi2 = 0.0;
        auto const res = entlab::coincidence_rate(base, s);
        rates.push_back({phase, res.rc});
        table.add_row({phase, res.rc, res.rc / base.r0});
    }

    output_table(
        table, o.out, "franson", echo, "delta_phi", {"rc"}, false, false);

    json doc = result_skeleton("franson", echo);
    doc["visibility"] = entlab::visibility(rates);
    doc["r0"] = base.r0;
    output_json(doc, o.out);
    return 0;
}

//---------------------------------------------------------------------------//
// Option wiring per subcommand
//---------------------------------------------------------------------------//
void add_scalar_flags(CLI::App* sub,
                      double* t,
                      double* tol,
                      std::uint64_t* seed,
                      std::string* config_path)
{
    if (t)
    {
        sub->add_option("--t", *t, "evaluation time");
    }
    if (tol)
    {
        sub->add_option("--tol", *tol,
                        "relative quadrature tolerance (absolute = 1e-2 x)");
    }
    sub->add_option("--seed", *seed, "random seed recorded in outputs");
    sub->add_option("--config", *config_path,
                    "JSON file supplying defaults for any flag");
}

}  // namespace

//---------------------------------------------------------------------------//
int main(int argc, char** argv)
{
    CLI::App app{"Numerical laboratory for space-dependent Bell and "
                 "interferometric correlations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", entlab::version_string);

    try
    {
        ConfigReader cfg{load_config(argc, argv)};
        std::string const invoked = argc > 1 ? argv[1] : "";
        int rc = 0;

        PhiOpts phi_o;
        auto* phi_sub
            = app.add_subcommand("phi", "sweep the field amplitude over r");
        if (invoked == "phi")
        {
            apply_formfactor_config(cfg, phi_o.ff);
            apply_grid_config(cfg, phi_o.grid);
            cfg("t", phi_o.t);
            cfg("tol", phi_o.tol);
            cfg("seed", phi_o.seed);
            apply_output_config(cfg, phi_o.out, true);
            cfg.reject_unknown();
        }
        add_formfactor_flags(phi_sub, phi_o.ff);
        add_grid_flags(phi_sub, phi_o.grid);
        add_scalar_flags(phi_sub, &phi_o.t, &phi_o.tol, &phi_o.seed,
                         &phi_o.config_path);
        add_output_flags(phi_sub, phi_o.out, true);
        phi_sub->callback([&] {
            resolve_plot_flags(phi_sub, phi_o.out);
            rc = run_phi(phi_o);
        });

        R0Opts r0_o;
        auto* r0_sub = app.add_subcommand(
            "r0-sweep", "sweep the coincidence base rate R0 over r");
        if (invoked == "r0-sweep")
        {
            apply_formfactor_config(cfg, r0_o.ff);
            apply_grid_config(cfg, r0_o.grid);
            cfg("t", r0_o.t);
            cfg("tol", r0_o.tol);
            cfg("seed", r0_o.seed);
            if (cfg.seen("r2"))
            {
                r0_o.has_r2 = true;
            }
            cfg("r2", r0_o.r2);
            apply_output_config(cfg, r0_o.out, true);
            cfg.reject_unknown();
        }
        add_formfactor_flags(r0_sub, r0_o.ff);
        add_grid_flags(r0_sub, r0_o.grid);
        add_scalar_flags(r0_sub, &r0_o.t, &r0_o.tol, &r0_o.seed,
                         &r0_o.config_path);
        auto* r2_opt = r0_sub->add_option(
            "--r2", r0_o.r2, "hold the second detector at this radius");
        add_output_flags(r0_sub, r0_o.out, true);
        r0_sub->callback([&] {
            r0_o.has_r2 = r0_o.has_r2 || r2_opt->count() > 0;
            resolve_plot_flags(r0_sub, r0_o.out);
            rc = run_r0_sweep(r0_o);
        });

        DecayOpts decay_o;
        auto* decay_sub = app.add_subcommand(
            "decay-fit", "fit the large-distance decay exponent of |phi|^2");
        if (invoked == "decay-fit")
        {
            apply_formfactor_config(cfg, decay_o.ff);
            apply_grid_config(cfg, decay_o.grid);
            cfg("t", decay_o.t);
            cfg("tol", decay_o.tol);
            cfg("seed", decay_o.seed);
            cfg("input", decay_o.input);
            cfg("x-col", decay_o.x_col);
            cfg("y-col", decay_o.y_col);
            cfg("envelope", decay_o.envelope_mode);
            if (cfg.seen("points"))
            {
                decay_o.points_given = true;
            }
            apply_output_config(cfg, decay_o.out, false);
            cfg.reject_unknown();
        }
        add_formfactor_flags(decay_sub, decay_o.ff);
        add_grid_flags(decay_sub, decay_o.grid);
        add_scalar_flags(decay_sub, &decay_o.t, &decay_o.tol, &decay_o.seed,
                         &decay_o.config_path);
        decay_sub->add_option("--input", decay_o.input,
                              "fit a previously written CSV instead");
        decay_sub->add_option("--x-col", decay_o.x_col,
                              "x column of the input table");
        decay_sub->add_option("--y-col", decay_o.y_col,
                              "y column of the input table");
        decay_sub->add_option("--envelope", decay_o.envelope_mode,
                              "peak-envelope extraction: auto, on, or off");
        add_output_flags(decay_sub, decay_o.out, false);
        auto* points_opt = decay_sub->get_option("--points");
        decay_sub->callback([&] {
            decay_o.points_given
                = decay_o.points_given || points_opt->count() > 0;
            rc = run_decay_fit(decay_o);
        });

        ChshOpts chsh_o;
        auto* chsh_sub = app.add_subcommand(
            "chsh", "CHSH combination weighted by the spatial g factor");
        if (invoked == "chsh")
        {
            cfg("angles", chsh_o.angles);
            apply_packet_config(cfg, chsh_o.packet);
            apply_region_config(cfg, chsh_o.region1, "1");
            apply_region_config(cfg, chsh_o.region2, "2");
            cfg("budget", chsh_o.budget);
            cfg("seed", chsh_o.seed);
            apply_output_config(cfg, chsh_o.out, false);
            cfg.reject_unknown();
        }
        chsh_sub
            ->add_option("--angles", chsh_o.angles,
                         "coplanar setting angles a a' b b' in degrees")
            ->expected(4);
        add_packet_flags(chsh_sub, chsh_o.packet);
        RegionOpts* chsh_r1 = &chsh_o.region1;
        RegionOpts* chsh_r2 = &chsh_o.region2;
        add_region_flags(chsh_sub, *chsh_r1, "1");
        add_region_flags(chsh_sub, *chsh_r2, "2");
        chsh_sub->add_option("--budget", chsh_o.budget,
                             "Monte Carlo sample budget");
        add_scalar_flags(chsh_sub, nullptr, nullptr, &chsh_o.seed,
                         &chsh_o.config_path);
        add_output_flags(chsh_sub, chsh_o.out, false);
        chsh_sub->callback([&] {
            chsh_r1->has_lo |= chsh_sub->count("--region1-lo") > 0;
            chsh_r1->has_hi |= chsh_sub->count("--region1-hi") > 0;
            chsh_r2->has_lo |= chsh_sub->count("--region2-lo") > 0;
            chsh_r2->has_hi |= chsh_sub->count("--region2-hi") > 0;
            rc = run_g_factor(chsh_o, true);
        });

        ChshOpts gf_o;
        auto* gf_sub = app.add_subcommand(
            "g-factor", "spatial localization factor g(O1,O2)");
        if (invoked == "g-factor")
        {
            apply_packet_config(cfg, gf_o.packet);
            apply_region_config(cfg, gf_o.region1, "1");
            apply_region_config(cfg, gf_o.region2, "2");
            cfg("budget", gf_o.budget);
            cfg("seed", gf_o.seed);
            apply_output_config(cfg, gf_o.out, false);
            cfg.reject_unknown();
        }
        add_packet_flags(gf_sub, gf_o.packet);
        add_region_flags(gf_sub, gf_o.region1, "1");
        add_region_flags(gf_sub, gf_o.region2, "2");
        gf_sub->add_option("--budget", gf_o.budget,
                           "Monte Carlo sample budget");
        add_scalar_flags(gf_sub, nullptr, nullptr, &gf_o.seed,
                         &gf_o.config_path);
        add_output_flags(gf_sub, gf_o.out, false);
        gf_sub->callback([&] {
            gf_o.region1.has_lo |= gf_sub->count("--region1-lo") > 0;
            gf_o.region1.has_hi |= gf_sub->count("--region1-hi") > 0;
            gf_o.region2.has_lo |= gf_sub->count("--region2-lo") > 0;
            gf_o.region2.has_hi |= gf_sub->count("--region2-hi") > 0;
            rc = run_g_factor(gf_o, false);
        });

        FransonOpts fr_o;
        auto* fr_sub = app.add_subcommand(
            "franson", "interferometer fringe sweep and visibility");
        if (invoked == "franson")
        {
            apply_formfactor_config(cfg, fr_o.ff);
            cfg("r1", fr_o.r1);
            cfg("r2", fr_o.r2);
            cfg("t", fr_o.t);
            cfg("points", fr_o.points);
            cfg("eta1", fr_o.eta1);
            cfg("eta2", fr_o.eta2);
            cfg("delta-t", fr_o.delta_t);
            cfg("tol", fr_o.tol);
            cfg("seed", fr_o.seed);
            apply_output_config(cfg, fr_o.out, true);
            cfg.reject_unknown();
        }
        add_formfactor_flags(fr_sub, fr_o.ff);
        fr_sub->add_option("--r1", fr_o.r1, "first detector radius");
        fr_sub->add_option("--r2", fr_o.r2, "second detector radius");
        fr_sub->add_option("--points", fr_o.points,
                           "phase samples over one full period");
        fr_sub->add_option("--eta1", fr_o.eta1, "first detector efficiency");
        fr_sub->add_option("--eta2", fr_o.eta2, "second detector efficiency");
        fr_sub->add_option("--delta-t", fr_o.delta_t,
                           "long-short path delay");
        add_scalar_flags(fr_sub, &fr_o.t, &fr_o.tol, &fr_o.seed,
                         &fr_o.config_path);
        add_output_flags(fr_sub, fr_o.out, true);
        fr_sub->callback([&] {
            resolve_plot_flags(fr_sub, fr_o.out);
            rc = run_franson(fr_o);
        });

        app.parse(argc, argv);
        return rc;
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    catch (entlab::EmptyInput const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    catch (entlab::TooFewPoints const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    catch (std::invalid_argument const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    catch (std::out_of_range const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    catch (std::exception const& e)
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}
