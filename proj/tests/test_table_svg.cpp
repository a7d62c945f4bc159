//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/test_table_svg.cpp
//---------------------------------------------------------------------------//
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "entlab/grid.hpp"
#include "entlab/parallel.hpp"
#include "entlab/rng.hpp"
#include "entlab/svg.hpp"
#include "entlab/table.hpp"
#include "entlab/version.hpp"

TEST_CASE("grids hit both endpoints exactly", "[grid]")
{
    auto const lin = entlab::make_grid(0.5, 2.5, 5, false);
    REQUIRE(lin.size() == 5);
    CHECK(lin.front() == 0.5);
    CHECK(lin.back() == 2.5);
    CHECK(lin[2] == Catch::Approx(1.5));

    auto const log = entlab::make_grid(1.0, 1000.0, 4, true);
    REQUIRE(log.size() == 4);
    CHECK(log.front() == 1.0);
    CHECK(log.back() == 1000.0);
    CHECK(log[1] == Catch::Approx(10.0));
    CHECK(log[2] == Catch::Approx(100.0));
    for (std::size_t i = 1; i < log.size(); ++i)
    {
        CHECK(log[i] > log[i - 1]);
    }

    CHECK_THROWS_AS(entlab::make_grid(1.0, 2.0, 1, false),
                    std::invalid_argument);
    CHECK_THROWS_AS(entlab::make_grid(2.0, 1.0, 4, false),
                    std::invalid_argument);
    CHECK_THROWS_AS(entlab::make_grid(0.0, 1.0, 4, true),
                    std::invalid_argument);
}

TEST_CASE("doubles format with shortest round-trip digits", "[table]")
{
    for (double v : {0.0,
                     1.0,
                     0.1,
                     1.0 / 3.0,
                     1e300,
                     5e-324,
                     -2.5e-10,
                     123456789.123,
                     -0.0})
    {
        auto const s = entlab::format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(entlab::format_double(1.0) == "1");
    CHECK(entlab::format_double(0.1) == "0.1");
}

TEST_CASE("sweep table shape and CSV output", "[table]")
{
    entlab::SweepTable table({"r", "y"});
    table.add_provenance("tool 0.1.0");
    table.add_row({1.0, 2.5});
    table.add_row({2.0, 0.1});

    CHECK_THROWS_AS(table.add_row({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(
        table.add_row({1.0, std::numeric_limits<double>::quiet_NaN()}),
        entlab::NonFiniteValue);
    CHECK_THROWS_AS(
        table.add_row({std::numeric_limits<double>::infinity(), 1.0}),
        entlab::NonFiniteValue);

    CHECK(table.column_index("y") == 1);
    CHECK_THROWS_AS(table.column_index("z"), std::invalid_argument);
    CHECK(table.column("r") == std::vector<double>{1.0, 2.0});

    std::ostringstream os;
    table.write_csv(os);
    CHECK(os.str() == "# tool 0.1.0\nr,y\n1,2.5\n2,0.1\n");

    CHECK_THROWS_AS(entlab::SweepTable{std::vector<std::string>{}},
                    std::invalid_argument);
}

TEST_CASE("svg rendering", "[svg]")
{
    entlab::SweepTable table({"r", "a", "b"});
    table.add_row({1.0, 1.0, 10.0});
    table.add_row({10.0, 0.1, 5.0});
    table.add_row({100.0, 0.01, 1.0});

    entlab::SvgOptions opt;
    opt.log_x = true;
    opt.log_y = true;
    opt.title = "decay sweep";
    opt.comment = "cmd --x 1 -- raw";

    auto const one = entlab::render_svg(table, "r", {"a", "b"}, opt);
    auto const two = entlab::render_svg(table, "r", {"a", "b"}, opt);
    CHECK(one == two);
    CHECK(one.find("<svg") != std::string::npos);
    CHECK(one.find("polyline") != std::string::npos);
    CHECK(one.find("decay sweep") != std::string::npos);
    // Double hyphens may not appear inside an XML comment
    CHECK(one.find("cmd --x") == std::string::npos);
    CHECK(one.find("cmd - -x") != std::string::npos);

    CHECK_THROWS_AS(entlab::render_svg(table, "nope", {"a"}, opt),
                    std::invalid_argument);
    CHECK_THROWS_AS(entlab::render_svg(table, "r", {}, opt),
                    std::invalid_argument);

    entlab::SweepTable empty({"r", "a"});
    CHECK_THROWS_AS(entlab::render_svg(empty, "r", {"a"}, opt),
                    entlab::EmptyInput);

    // Log filtering drops nonpositive points; all-zero data leaves nothing
    entlab::SweepTable zeros({"r", "a"});
    zeros.add_row({1.0, 0.0});
    zeros.add_row({2.0, 0.0});
    CHECK_THROWS_AS(entlab::render_svg(zeros, "r", {"a"}, opt),
                    entlab::EmptyInput);
    entlab::SvgOptions linear;
    CHECK(entlab::render_svg(zeros, "r", {"a"}, linear).find("polyline")
          != std::string::npos);
}

TEST_CASE("parallel for covers every index once", "[parallel]")
{
    std::size_t const n = 1000;
    std::vector<double> out(n, -1.0);
    entlab::parallel_for(n, [&](std::size_t i) {
        out[i] = static_cast<double>(i);
    });
    for (std::size_t i = 0; i < n; ++i)
    {
        CHECK(out[i] == static_cast<double>(i));
    }

    CHECK_THROWS_AS(entlab::parallel_for(64,
                                         [](std::size_t i) {
                                             if (i == 7)
                                             {
                                                 throw std::runtime_error(
                                                     "boom");
                                             }
                                         }),
                    std::runtime_error);
}

TEST_CASE("worker count respects the environment cap", "[parallel]")
{
    std::size_t const hw
        = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    ::setenv("ENTANGLE_LAB_THREADS", "1", 1);
    CHECK(entlab::worker_count(100) == 1);
    // The variable caps the pool; it never raises it above the hardware.
    ::setenv("ENTANGLE_LAB_THREADS", "3", 1);
    CHECK(entlab::worker_count(100) == std::min<std::size_t>(hw, 3));
    ::unsetenv("ENTANGLE_LAB_THREADS");
    CHECK(entlab::worker_count(1) == 1);
    CHECK(entlab::worker_count(100) >= 1);
}

TEST_CASE("seeded randomness is deterministic", "[rng]")
{
    std::mt19937_64 g1{42};
    std::mt19937_64 g2{42};
    for (int i = 0; i < 1000; ++i)
    {
        double const u = entlab::uniform01(g1);
        CHECK(u == entlab::uniform01(g2));
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    for (int i = 0; i < 100; ++i)
    {
        auto const p = entlab::sphere_point(g1);
        double const norm
            = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        CHECK(std::abs(norm - 1.0) < 1e-12);
        CHECK(std::isfinite(entlab::normal01(g1)));
    }
    CHECK(entlab::uniform_in(g1, 3.0, 3.0) == 3.0);
}

TEST_CASE("version string is exposed", "[version]")
{
    CHECK(std::string(entlab::version_string) == "0.1.0");
}
