#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "mmho/config.hpp"
#include "mmho/report.hpp"

using namespace mmho;

namespace {

struct Csv {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text)
{
    Csv out;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            out.comments.push_back(line);
            continue;
        }
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ','))
            fields.push_back(f);
        if (ls.eof() && !line.empty() && line.back() == ',')
            fields.push_back("");
        if (!header_seen) {
            out.header = fields;
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        for (const auto& s : fields)
            row.push_back(s.empty() ? std::nan("") : std::stod(s));
        out.rows.push_back(row);
    }
    return out;
}

ExperimentConfig quick_config()
{
    ExperimentConfig cfg;
    cfg.fig3_samples = 20000;
    cfg.fig3_t_points = 10;
    cfg.trials = 3;
    cfg.mues = 1;
    cfg.frame_s = 10.0;
    cfg.speeds_kmh = {30.0, 60.0};
    return cfg;
}

} // namespace

TEST_CASE("csv quoting follows rfc 4180")
{
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("mode parsing")
{
    CHECK(parse_mode("analysis") == ReportMode::Analysis);
    CHECK(parse_mode("simulation") == ReportMode::Simulation);
    CHECK(parse_mode("compare") == ReportMode::Compare);
    CHECK_THROWS_AS(parse_mode("plot"), ConfigError);
}

TEST_CASE("fig3 emits both sides in compare mode and is deterministic")
{
    const ExperimentConfig cfg = quick_config();
    std::ostringstream a, b;
    run_fig3(cfg, ReportMode::Compare, a);
    run_fig3(cfg, ReportMode::Compare, b);
    CHECK(a.str() == b.str());

    const Csv csv = parse_csv(a.str());
    REQUIRE(csv.header.size() == 5);
    CHECK(csv.header[0] == "t0");
    CHECK(csv.header[2] == "F_analytic");
    REQUIRE(csv.rows.size() == cfg.fig3_r_list_m.size() * (cfg.fig3_t_points + 1));

    bool seed_found = false, hash_found = false, version_found = false;
    for (const auto& c : csv.comments) {
        seed_found |= c.rfind("# seed=", 0) == 0;
        hash_found |= c.rfind("# config_hash=", 0) == 0;
        version_found |= c.rfind("# version=", 0) == 0;
    }
    CHECK(seed_found);
    CHECK(hash_found);
    CHECK(version_found);

    double prev_r = -1.0, prev_f = 0.0;
    for (const auto& row : csv.rows) {
        const double t0 = row[0], r = row[1], fa = row[2], fe = row[3], ks = row[4];
        if (r != prev_r) {
            prev_r = r;
            prev_f = 0.0;
        }
        if (t0 == 0.0) {
            CHECK(fa == 0.0); // F(0) = 0 on every sweep start
        }
        CHECK(fa >= prev_f - 1e-12); // monotone per r
        CHECK(fa >= 0.0);
        CHECK(fa <= 1.0);
        CHECK(fe >= 0.0);
        CHECK(fe <= 1.0);
        CHECK(ks >= 0.0);
        prev_f = fa;
    }
}

TEST_CASE("fig3 analysis mode omits the empirical side only")
{
    const ExperimentConfig cfg = quick_config();
    std::ostringstream out;
    run_fig3(cfg, ReportMode::Analysis, out);
    const Csv csv = parse_csv(out.str());
    for (const auto& row : csv.rows) {
        CHECK(!std::isnan(row[2]));
        CHECK(std::isnan(row[3]));
    }
}

TEST_CASE("fig4 analysis mode is fast, ordered and reducing")
{
    const ExperimentConfig cfg = quick_config();
    std::ostringstream out;
    run_fig4(cfg, ReportMode::Analysis, out);
    const Csv csv = parse_csv(out.str());
    REQUIRE(csv.header.size() == 5);
    REQUIRE(csv.rows.size() == cfg.speeds_kmh.size());
    double prev_speed = 0.0, prev_off = -1.0;
    for (const auto& row : csv.rows) {
        CHECK(row[0] > prev_speed);   // sorted by speed
        CHECK(row[1] > prev_off);     // analytic HOF increases with speed
        CHECK(row[2] <= row[1]);      // caching never hurts
        CHECK(row[3] >= 0.0);
        prev_speed = row[0];
        prev_off = row[1];
    }
}

TEST_CASE("fig4 compare mode appends analytic and discrepancy columns")
{
    ExperimentConfig cfg = quick_config();
    cfg.trials = 2;
    std::ostringstream out;
    run_fig4(cfg, ReportMode::Compare, out);
    const Csv csv = parse_csv(out.str());
    REQUIRE(csv.header.size() == 7);
    CHECK(csv.header[5] == "hof_off_analytic");
    CHECK(csv.header[6] == "discrepancy");
    for (const auto& row : csv.rows)
        CHECK(row[6] >= 0.0);
}

TEST_CASE("fig5 rates are positive and non-increasing in distance")
{
    const ExperimentConfig cfg = quick_config();
    std::ostringstream a, b;
    run_fig5(cfg, ReportMode::Compare, a);
    run_fig5(cfg, ReportMode::Compare, b);
    CHECK(a.str() == b.str());

    const Csv csv = parse_csv(a.str());
    REQUIRE(csv.header.size() == 4);
    std::map<double, double> last_los, last_nlos;
    for (const auto& row : csv.rows) {
        const double theta = row[1], los = row[2], nlos = row[3];
        CHECK(los > 0.0);
        CHECK(nlos > 0.0);
        CHECK(los > nlos);
        if (last_los.count(theta)) {
            CHECK(los <= last_los[theta] + 1e-6);
            CHECK(nlos <= last_nlos[theta] + 1e-6);
        }
        last_los[theta] = los;
        last_nlos[theta] = nlos;
    }
}

TEST_CASE("single run emits a parsable trace")
{
    ExperimentConfig cfg = quick_config();
    std::ostringstream out;
    run_single(cfg, out);
    const std::string text = out.str();
    CHECK(text.find("time,mue,kind,cell,value") != std::string::npos);
    CHECK(text.find("# ho=") != std::string::npos);
}
