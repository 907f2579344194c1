#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "specres/cli.hpp"
#include "specres/estimator.hpp"
#include "specres/filters.hpp"
#include "specres/models.hpp"

using specres::RunConfig;

namespace {

struct StreamCapture {
    std::ostream& stream;
    std::ostringstream buffer;
    std::streambuf* saved;
    explicit StreamCapture(std::ostream& s) : stream(s), saved(s.rdbuf(buffer.rdbuf())) {}
    ~StreamCapture() { stream.rdbuf(saved); }
};

int run_main(std::vector<const char*> args, std::string* out = nullptr,
             std::string* err = nullptr) {
    args.insert(args.begin(), "specres");
    StreamCapture cout_cap(std::cout);
    StreamCapture cerr_cap(std::cerr);
    const int rc = specres::main_entry(static_cast<int>(args.size()), args.data());
    if (out != nullptr) {
        *out = cout_cap.buffer.str();
    }
    if (err != nullptr) {
        *err = cerr_cap.buffer.str();
    }
    return rc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct QuietGuard {
    QuietGuard() { setenv("SPECRES_QUIET", "1", 1); }
    ~QuietGuard() { unsetenv("SPECRES_QUIET"); }
};

}  // namespace

TEST_CASE("filter command prints the solved weights") {
    QuietGuard quiet;
    std::string out;
    const int rc = run_main({"filter", "--poles", "1,0", "--k", "1", "--scales", "1,2"}, &out);
    CHECK(rc == 0);
    CHECK(out.find("\"poles\": [1, 0]") != std::string::npos);
    CHECK(out.find("\"k\": 1") != std::string::npos);
    // The solver lands within a few ulp of the closed-form pair (-e, e);
    // check the rendered digits to 1e-12 rather than the last two places.
    CHECK(out.find("\"weights\": [-2.718281828459") != std::string::npos);
    CHECK(out.find(", 2.718281828459") != std::string::npos);
}

TEST_CASE("filter command defaults k to the last pole") {
    QuietGuard quiet;
    std::string out;
    CHECK(run_main({"filter", "--poles", "1.5,1,0.5"}, &out) == 0);
    CHECK(out.find("\"k\": 2") != std::string::npos);
    CHECK(out.find("\"scales\": [1, 2, 4]") != std::string::npos);
}

TEST_CASE("estimate emits JSON that parses back to the library value") {
    QuietGuard quiet;
    std::string out;
    const int rc =
        run_main({"estimate", "--model", "circle", "--k", "0", "--lambda", "100"}, &out);
    REQUIRE(rc == 0);
    const nlohmann::json j = nlohmann::json::parse(out);
    CHECK(j.at("lambda").get<double>() == 100.0);
    CHECK(j.at("n_terms").get<std::uint64_t>() == 20);

    const specres::Spectrum s = specres::circle_spectrum(100.0);
    const specres::Filter f =
        specres::build_filter(specres::PoleSet({0.5, 0.0}, 0));
    const auto r = specres::estimate_coefficient(s, f, 100.0, std::nullopt);
    CHECK(j.at("estimate").get<double>() == r.estimate);
    CHECK(j.at("oracle").get<double>() == 1.7724538509055161);
    CHECK(j.at("abs_error").get<double>() == *r.abs_error);
}

TEST_CASE("sweep defaults to CSV with the fixed column set") {
    QuietGuard quiet;
    std::string out;
    const int rc = run_main(
        {"sweep", "--model", "circle", "--k", "0", "--lambdas", "100,1000"}, &out);
    REQUIRE(rc == 0);
    std::istringstream lines(out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "lambda,m,epsilon,n_terms,estimate,oracle,abs_error,rel_error");
    std::string row1;
    std::string row2;
    REQUIRE(std::getline(lines, row1));
    REQUIRE(std::getline(lines, row2));
    CHECK(row1.substr(0, 4) == "100,");
    CHECK(row2.substr(0, 5) == "1000,");
    std::string extra;
    CHECK_FALSE(std::getline(lines, extra));
}

TEST_CASE("file spectra get empty oracle columns") {
    QuietGuard quiet;
    const std::string path = "cli_case_plain.csv";
    {
        std::ofstream f(path);
        f << "1,2\n4,2\n9,2\n";
    }
    std::string out;
    const int rc = run_main({"sweep", "--model", "file", "--input", path.c_str(), "--poles",
                             "0.5,0", "--k", "0", "--lambdas", "5,10", "--format", "csv"},
                            &out);
    REQUIRE(rc == 0);
    std::istringstream lines(out);
    std::string header;
    std::string row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(row.substr(row.size() - 3) == ",,,");
    std::remove(path.c_str());
}

TEST_CASE("stored filters reproduce inline estimates byte for byte") {
    QuietGuard quiet;
    const std::string path = "cli_case_filter.json";
    CHECK(run_main({"filter", "--poles", "0.5,0", "--k", "1", "--output", path.c_str()}) == 0);
    std::string inline_out;
    std::string file_out;
    CHECK(run_main({"estimate", "--model", "circle", "--k", "1", "--lambda", "1e6"},
                   &inline_out) == 0);
    CHECK(run_main({"estimate", "--model", "circle", "--k", "1", "--lambda", "1e6",
                    "--filter-file", path.c_str()},
                   &file_out) == 0);
    CHECK(inline_out == file_out);
    std::remove(path.c_str());
}

TEST_CASE("identical invocations produce identical bytes") {
    QuietGuard quiet;
    std::string a;
    std::string b;
    CHECK(run_main({"estimate", "--model", "sphere", "--k", "1", "--lambda", "1e5"}, &a) == 0);
    CHECK(run_main({"estimate", "--model", "sphere", "--k", "1", "--lambda", "1e5"}, &b) == 0);
    CHECK(a == b);
}

TEST_CASE("output flag writes the report to a file") {
    QuietGuard quiet;
    const std::string path = "cli_case_report.json";
    std::string stdout_text;
    CHECK(run_main({"estimate", "--model", "circle", "--k", "0", "--lambda", "1000",
                    "--output", path.c_str()},
                   &stdout_text) == 0);
    CHECK(stdout_text.empty());
    std::string direct;
    CHECK(run_main({"estimate", "--model", "circle", "--k", "0", "--lambda", "1000"},
                   &direct) == 0);
    CHECK(read_file(path) == direct);
    std::remove(path.c_str());
}

TEST_CASE("oracle command prints model heat data") {
    QuietGuard quiet;
    std::string out;
    CHECK(run_main({"oracle", "--model", "circle"}, &out) == 0);
    CHECK(out.find("\"model\": \"circle\"") != std::string::npos);
    CHECK(out.find("\"poles\": [0.5, 0]") != std::string::npos);
    CHECK(out.find("\"coefficients\": [1.7724538509055161, -1]") != std::string::npos);
}

TEST_CASE("localized command runs the projection estimate") {
    QuietGuard quiet;
    std::string out;
    const int rc = run_main(
        {"localized", "--model", "circle", "--keep", "even", "--k", "0", "--lambda", "1e6"},
        &out);
    REQUIRE(rc == 0);
    const nlohmann::json j = nlohmann::json::parse(out);
    CHECK(j.at("oracle").get<double>() == 0.88622692545275805);
    CHECK(j.at("rel_error").get<double>() < 0.05);
}

TEST_CASE("exit codes distinguish config, numerical, and io failures") {
    QuietGuard quiet;
    std::string err;

    CHECK(run_main({"estimate", "--model", "circle", "--k", "0", "--lambda", "1"}, nullptr,
                   &err) == 2);
    CHECK(err.find("error:") != std::string::npos);

    CHECK(run_main({"estimate", "--model", "circle", "--k", "1", "--lambda", "100", "--m",
                    "0.5"}) == 3);
    CHECK(run_main({"filter", "--poles", "0.5,0", "--k", "1", "--scales",
                    "2,2.0000000000002"}) == 3);
    CHECK(run_main({"estimate", "--model", "file", "--input", "no_such_file.csv", "--poles",
                    "1", "--lambda", "100"}) == 4);
    CHECK(run_main({"estimate", "--model", "file", "--poles", "1", "--lambda", "100"}) == 2);
    CHECK(run_main({"estimate", "--model", "circle", "--lambda", "100", "--poles", "1,0",
                    "--filter-file", "x.json"}) == 2);
    CHECK(run_main({"sweep", "--model", "circle", "--lambdas", "100"}) == 2);
    CHECK(run_main({"localized", "--model", "sphere", "--lambda", "100"}) == 2);
    CHECK(run_main({"estimate", "--model", "nosuch", "--lambda", "100"}) == 2);
    CHECK(run_main({"unknowncmd"}) == 2);
    CHECK(run_main({}) == 2);
    CHECK(run_main({"--help"}) == 0);

    const std::string bad = "cli_case_bad.csv";
    {
        std::ofstream f(bad);
        f << "1,2\nnot a line\n";
    }
    CHECK(run_main({"estimate", "--model", "file", "--input", bad.c_str(), "--poles", "0.5",
                    "--lambda", "100"}) == 4);
    std::remove(bad.c_str());
}

TEST_CASE("progress notes go to the diagnostic stream unless silenced") {
    unsetenv("SPECRES_QUIET");
    RunConfig config;
    config.command = RunConfig::Command::estimate;
    config.model = RunConfig::Model::circle;
    config.k = 0;
    config.cutoffs = {1000.0};
    std::ostringstream out;
    std::ostringstream diag;
    CHECK(specres::run(config, out, diag) == 0);
    CHECK(diag.str().find("spectrum:") != std::string::npos);
    CHECK(out.str().find("\"estimate\":") != std::string::npos);

    setenv("SPECRES_QUIET", "1", 1);
    std::ostringstream diag2;
    std::ostringstream out2;
    CHECK(specres::run(config, out2, diag2) == 0);
    CHECK(diag2.str().empty());
    CHECK(out2.str() == out.str());
    unsetenv("SPECRES_QUIET");
}
