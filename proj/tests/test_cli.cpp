#include "rollframe/cli/config.hpp"
#include "rollframe/cli/emit.hpp"
#include "rollframe/cli/runner.hpp"

#include <doctest.h>
#include <sstream>

using namespace rollframe;
using namespace rollframe::cli;

namespace {

const char* kMinimalConfig = R"(
# minimal experiment
[manifold]
name = "plane"

[curve]
kind = "coordinate_line"
interval = [0.0, 1.0]

[grid]
steps = 64

[[task]]
id = "dev"
type = "trace"
t = 0.0
)";

} // namespace

TEST_CASE("parse_config accepts a minimal config") {
    const ExperimentConfig cfg = parse_config(kMinimalConfig);
    CHECK(cfg.manifold_name == "plane");
    CHECK(cfg.curve_kind == "coordinate_line");
    CHECK(cfg.steps == 64);
    CHECK(cfg.t1 == doctest::Approx(1.0));
    REQUIRE(cfg.tasks.size() == 1);
    CHECK(cfg.tasks[0].id == "dev");
    CHECK(cfg.tasks[0].type == "trace");
}

TEST_CASE("parse_config collects every violation") {
    const char* bad = R"(
[manifold]
name = "klein_bottle"
[curve]
kind = "coordinate_line"
interval = [0.0, 1.0]
[grid]
steps = 4
[[task]]
id = "a"
type = "warp"
)";
    try {
        parse_config(bad);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.violations.size() == 3);
        bool steps = false, manifold = false, type = false;
        for (const auto& v : e.violations) {
            if (v.find("steps") != std::string::npos) steps = true;
            if (v.find("klein_bottle") != std::string::npos) manifold = true;
            if (v.find("warp") != std::string::npos) type = true;
        }
        CHECK(steps);
        CHECK(manifold);
        CHECK(type);
    }
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_config("[manifold]\nname = \n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("duplicate output paths are rejected") {
    const char* dup = R"(
[manifold]
name = "plane"
[curve]
kind = "coordinate_line"
interval = [0.0, 1.0]
[grid]
steps = 64
[[task]]
type = "trace"
output = "same"
[[task]]
type = "holonomy"
output = "same"
)";
    CHECK_THROWS_AS(parse_config(dup), ValidationError);
}

TEST_CASE("run produces finite summaries and trace equals curve on the plane") {
    const ExperimentConfig cfg = parse_config(kMinimalConfig);
    const auto records = run(cfg);
    REQUIRE(records.size() == 1);
    const auto& rec = records[0];
    CHECK(rec.id == "dev");
    CHECK(rec.rows.size() == 65);
    // flat development: trace point k is gamma(s_k)
    for (size_t k = 0; k < rec.rows.size(); ++k) {
        const double s = rec.rows[k].s;
        CHECK(rec.rows[k].ambient(0) == doctest::Approx(s).epsilon(1e-12));
        CHECK(std::abs(rec.rows[k].ambient(2)) <= 1e-12);
    }
}

TEST_CASE("run is deterministic") {
    const ExperimentConfig cfg = parse_config(kMinimalConfig);
    std::ostringstream a, b;
    emit_json(run(cfg), a);
    emit_json(run(cfg), b);
    CHECK(a.str() == b.str());
}

TEST_CASE("emit_csv header-only for empty records and round-trip formatting") {
    ResultRecord rec;
    rec.id = "empty";
    rec.dim_domain = 2;
    rec.dim_ambient = 3;
    std::ostringstream out;
    emit_csv(rec, out);
    CHECK(out.str() == "s,coord_1,coord_2,ambient_1,ambient_2,ambient_3\n");

    TraceSample row;
    row.s = 0.1;
    row.coords = Eigen::Vector2d(1.0 / 3.0, -2.0e-17);
    row.ambient = Eigen::Vector3d(0.1 + 0.2, 1e300, 0.0);
    rec.rows.push_back(row);
    std::ostringstream out2;
    emit_csv(rec, out2);
    // every number round-trips exactly
    std::string line = out2.str().substr(out2.str().find('\n') + 1);
    std::istringstream in(line);
    std::string cell;
    std::vector<double> parsed;
    while (std::getline(in, cell, ',')) parsed.push_back(std::stod(cell));
    REQUIRE(parsed.size() == 6);
    CHECK(parsed[0] == 0.1);
    CHECK(parsed[1] == 1.0 / 3.0);
    CHECK(parsed[2] == -2.0e-17);
    CHECK(parsed[3] == 0.1 + 0.2);
    CHECK(parsed[4] == 1e300);
}

TEST_CASE("emit_json stamps the schema version and keys records by id") {
    ResultRecord rec;
    rec.id = "h1";
    rec.type = "holonomy";
    rec.dim_domain = 2;
    rec.dim_ambient = 3;
    rec.summary = {{"angle", 3.141592653589793}};
    std::ostringstream out;
    emit_json({rec}, out);
    const std::string s = out.str();
    CHECK(s.find("\"schema_version\": 1") != std::string::npos);
    CHECK(s.find("\"h1\"") != std::string::npos);
    CHECK(s.find("\"angle\"") != std::string::npos);
}

TEST_CASE("emit_svg draws one polyline and rejects non-planar frames") {
    ResultRecord rec;
    rec.id = "line";
    rec.dim_domain = 2;
    rec.dim_ambient = 3;
    for (int k = 0; k < 5; ++k) {
        TraceSample row;
        row.s = k;
        row.coords = Eigen::Vector2d(k, 2.0 * k);
        row.ambient = Eigen::Vector3d(k, 2.0 * k, 0.0);
        rec.rows.push_back(row);
    }
    std::ostringstream out;
    emit_svg(rec, out);
    CHECK(out.str().find("<polyline") != std::string::npos);

    rec.dim_domain = 3;
    std::ostringstream out2;
    CHECK_THROWS_AS(emit_svg(rec, out2), IoError);
}

TEST_CASE("verify mode runs only oracle_compare tasks") {
    const char* text = R"(
[manifold]
name = "sphere"
[curve]
kind = "great_circle"
interval = [0.0, 6.283185307179586]
[grid]
steps = 128
[[task]]
id = "t"
type = "trace"
[[task]]
id = "oc"
type = "oracle_compare"
h_oracle = 0.01
)";
    const ExperimentConfig cfg = parse_config(text);
    RunOptions opts;
    opts.oracle_only = true;
    const auto records = run(cfg, opts);
    REQUIRE(records.size() == 1);
    CHECK(records[0].id == "oc");
    for (const auto& [key, value] : records[0].summary)
        if (key == "develop_gap") CHECK(value <= 0.1);
}
