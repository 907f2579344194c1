#include "specres/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specres/errors.hpp"
#include "specres/estimator.hpp"
#include "specres/filters.hpp"
#include "specres/localized.hpp"
#include "specres/models.hpp"

namespace specres {
namespace {

bool quiet_mode() {
    const char* q = std::getenv("SPECRES_QUIET");
    return q != nullptr && std::string(q) == "1";
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

std::string json_list(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += fmt17(values[i]);
    }
    out += "]";
    return out;
}

const char* model_name(RunConfig::Model model) {
    switch (model) {
        case RunConfig::Model::circle:
            return "circle";
        case RunConfig::Model::torus2:
            return "torus2";
        case RunConfig::Model::sphere:
            return "sphere";
        case RunConfig::Model::file:
            return "file";
    }
    return "?";
}

void append_result_json(std::string& out, const EstimateResult& r,
                        const std::string& indent) {
    out += indent + "{\n";
    out += indent + "  \"lambda\": " + fmt17(r.cutoff) + ",\n";
    out += indent + "  \"m\": " + fmt17(r.m) + ",\n";
    out += indent + "  \"epsilon\": " + fmt17(r.epsilon) + ",\n";
    out += indent + "  \"n_terms\": " + std::to_string(r.n_terms) + ",\n";
    out += indent + "  \"estimate\": " + fmt17(r.estimate);
    if (r.oracle.has_value()) {
        out += ",\n" + indent + "  \"oracle\": " + fmt17(*r.oracle);
        out += ",\n" + indent + "  \"abs_error\": " + fmt17(*r.abs_error);
        if (r.rel_error.has_value()) {
            out += ",\n" + indent + "  \"rel_error\": " + fmt17(*r.rel_error);
        }
    }
    out += "\n" + indent + "}";
}

std::string result_csv_row(const EstimateResult& r) {
    std::string row = fmt17(r.cutoff) + "," + fmt17(r.m) + "," + fmt17(r.epsilon) + "," +
                      std::to_string(r.n_terms) + "," + fmt17(r.estimate) + ",";
    if (r.oracle.has_value()) {
        row += fmt17(*r.oracle);
    }
    row += ",";
    if (r.abs_error.has_value()) {
        row += fmt17(*r.abs_error);
    }
    row += ",";
    if (r.rel_error.has_value()) {
        row += fmt17(*r.rel_error);
    }
    return row;
}

const char kCsvHeader[] = "lambda,m,epsilon,n_terms,estimate,oracle,abs_error,rel_error";

std::string render_results(const std::vector<EstimateResult>& results,
                           RunConfig::Format format) {
    std::string out;
    if (format == RunConfig::Format::csv) {
        out += kCsvHeader;
        out += "\n";
        for (const EstimateResult& r : results) {
            out += result_csv_row(r);
            out += "\n";
        }
        return out;
    }
    if (results.size() == 1) {
        append_result_json(out, results.front(), "");
        out += "\n";
        return out;
    }
    out += "[\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        append_result_json(out, results[i], "  ");
        out += (i + 1 < results.size()) ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

std::string render_filter(const Filter& filter) {
    std::string out = "{\n";
    out += "  \"poles\": " + json_list(filter.poles.poles) + ",\n";
    out += "  \"k\": " + std::to_string(filter.poles.k) + ",\n";
    out += "  \"scales\": " + json_list(filter.scales) + ",\n";
    out += "  \"weights\": " + json_list(filter.weights) + "\n";
    out += "}\n";
    return out;
}

Filter load_filter_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open filter file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path, 0, e.what());
    }
    std::vector<double> poles;
    std::vector<double> scales;
    std::vector<double> weights;
    std::size_t k = 0;
    try {
        poles = j.at("poles").get<std::vector<double>>();
        k = j.at("k").get<std::size_t>();
        scales = j.at("scales").get<std::vector<double>>();
        weights = j.at("weights").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path, 0, e.what());
    }
    if (scales.size() != k + 1 || weights.size() != k + 1) {
        throw ParseError(path, 0, "scales and weights must each have k+1 entries");
    }
    const double normalization = 1.0 / weights[0];
    try {
        PoleSet ps(std::move(poles), k);
        return Filter{std::move(ps), std::move(scales), std::move(weights), normalization};
    } catch (const InvalidArgument& e) {
        throw ParseError(path, 0, e.what());
    }
}

Spectrum make_spectrum(const RunConfig& config, double generation_cutoff) {
    switch (config.model) {
        case RunConfig::Model::circle:
            return circle_spectrum(generation_cutoff);
        case RunConfig::Model::torus2:
            return torus2_spectrum(generation_cutoff);
        case RunConfig::Model::sphere:
            return sphere_spectrum(generation_cutoff);
        case RunConfig::Model::file:
            if (!config.input_path.has_value()) {
                throw InvalidArgument("file model requires --input");
            }
            return load_spectrum(*config.input_path);
    }
    throw InvalidArgument("unknown model");
}

// Filter pole list: explicit --poles wins, then the model's heat exponents.
Filter make_filter(const RunConfig& config, const std::optional<OracleData>& oracle) {
    if (config.filter_file.has_value()) {
        if (config.poles.has_value() || config.scales.has_value()) {
            throw InvalidArgument("--filter-file excludes --poles and --scales");
        }
        return load_filter_file(*config.filter_file);
    }
    std::vector<double> poles;
    if (config.poles.has_value()) {
        poles = *config.poles;
    } else if (oracle.has_value()) {
        poles = oracle->poles;
    } else {
        throw InvalidArgument("file spectra need --poles or --filter-file");
    }
    PoleSet ps(std::move(poles), config.k);
    if (config.scales.has_value()) {
        return build_filter(ps, *config.scales);
    }
    return build_filter(ps);
}

void emit(const RunConfig& config, const std::string& report, std::ostream& out) {
    if (config.output_path.has_value()) {
        std::ofstream f(*config.output_path);
        if (!f) {
            throw IoError("cannot open output file '" + *config.output_path + "'");
        }
        f << report;
        if (!f) {
            throw IoError("failed writing output file '" + *config.output_path + "'");
        }
        return;
    }
    out << report;
}

double single_cutoff(const RunConfig& config) {
    if (config.cutoffs.size() != 1) {
        throw InvalidArgument("expected exactly one --lambda");
    }
    return config.cutoffs.front();
}

int run_filter(const RunConfig& config, std::ostream& out) {
    if (!config.poles.has_value() && !config.filter_file.has_value()) {
        throw InvalidArgument("filter requires --poles");
    }
    const Filter filter = make_filter(config, std::nullopt);
    emit(config, render_filter(filter), out);
    return 0;
}

int run_oracle(const RunConfig& config, std::ostream& out) {
    if (config.model == RunConfig::Model::file) {
        throw InvalidArgument("oracle requires a model with known heat data");
    }
    const double cutoff = config.cutoffs.empty() ? 4.0 : config.cutoffs.front();
    const Spectrum s = make_spectrum(config, cutoff);
    std::string report = "{\n";
    report += "  \"model\": \"" + std::string(model_name(config.model)) + "\",\n";
    report += "  \"poles\": " + json_list(s.oracle->poles) + ",\n";
    report += "  \"coefficients\": " + json_list(s.oracle->coefficients) + "\n";
    report += "}\n";
    emit(config, report, out);
    return 0;
}

int run_estimate(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    const double cutoff = single_cutoff(config);
    const Spectrum s = make_spectrum(config, cutoff);
    if (!quiet_mode()) {
        diag << "spectrum: " << s.description << ", " << s.entries.size()
             << " distinct eigenvalues\n";
    }
    const Filter filter = make_filter(config, s.oracle);
    const EstimateResult r = estimate_coefficient(s, filter, cutoff, config.m);
    emit(config, render_results({r}, config.format), out);
    return 0;
}

int run_sweep(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    if (config.cutoffs.size() < 2) {
        throw InvalidArgument("sweep requires at least two cutoffs");
    }
    const Spectrum s = make_spectrum(config, config.cutoffs.back());
    if (!quiet_mode()) {
        diag << "spectrum: " << s.description << ", " << s.entries.size()
             << " distinct eigenvalues, " << config.cutoffs.size() << " cutoffs\n";
    }
    const Filter filter = make_filter(config, s.oracle);
    const std::vector<EstimateResult> results = sweep(s, filter, config.cutoffs, config.m);
    emit(config, render_results(results, config.format), out);
    return 0;
}

int run_localized(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    const double cutoff = single_cutoff(config);
    WeightedSpectrum w;
    if (config.model == RunConfig::Model::circle) {
        w = circle_projection_weights(cutoff, config.keep);
    } else if (config.model == RunConfig::Model::file) {
        if (!config.input_path.has_value()) {
            throw InvalidArgument("file model requires --input");
        }
        w = load_weighted_spectrum(*config.input_path);
    } else {
        throw InvalidArgument("localized supports the circle model or file input");
    }
    if (!quiet_mode()) {
        diag << "weighted spectrum: " << w.description << ", " << w.entries.size()
             << " basis vectors\n";
    }
    const Filter filter = make_filter(config, w.oracle);
    const EstimateResult r = estimate_localized(w, filter, cutoff, config.m);
    emit(config, render_results({r}, config.format), out);
    return 0;
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const IllConditioned*>(&e) != nullptr ||
        dynamic_cast<const ScheduleViolation*>(&e) != nullptr ||
        dynamic_cast<const QuadratureFailure*>(&e) != nullptr ||
        dynamic_cast<const PoleOfGamma*>(&e) != nullptr ||
        dynamic_cast<const InsufficientData*>(&e) != nullptr) {
        return 3;
    }
    if (dynamic_cast<const ParseError*>(&e) != nullptr ||
        dynamic_cast<const EmptySpectrum*>(&e) != nullptr ||
        dynamic_cast<const NonpositiveEigenvalue*>(&e) != nullptr ||
        dynamic_cast<const IoError*>(&e) != nullptr) {
        return 4;
    }
    return 2;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    switch (config.command) {
        case RunConfig::Command::filter:
            return run_filter(config, out);
        case RunConfig::Command::oracle:
            return run_oracle(config, out);
        case RunConfig::Command::estimate:
            return run_estimate(config, out, diag);
        case RunConfig::Command::sweep:
            return run_sweep(config, out, diag);
        case RunConfig::Command::localized:
            return run_localized(config, out, diag);
    }
    throw InvalidArgument("unknown command");
}

int main_entry(int argc, const char* const* argv) {
    CLI::App app{"heat coefficients and zeta residues from operator spectra"};
    app.require_subcommand(1);

    const std::map<std::string, RunConfig::Model> model_map{
        {"circle", RunConfig::Model::circle},
        {"torus2", RunConfig::Model::torus2},
        {"sphere", RunConfig::Model::sphere},
        {"file", RunConfig::Model::file},
    };
    const std::map<std::string, RunConfig::Format> format_map{
        {"json", RunConfig::Format::json},
        {"csv", RunConfig::Format::csv},
    };
    const std::map<std::string, Parity> parity_map{
        {"even", Parity::even},
        {"odd", Parity::odd},
    };

    RunConfig config;
    std::vector<double> poles;
    std::vector<double> scales;
    double lambda = 0.0;
    std::vector<double> lambdas;
    double m = 0.0;
    std::string input;
    std::string filter_file;
    std::string output;
    bool format_given = false;
    bool k_given = false;

    auto add_common = [&](CLI::App* cmd, bool with_model) {
        if (with_model) {
            cmd->add_option("--model", config.model, "spectrum source")
                ->transform(CLI::CheckedTransformer(model_map, CLI::ignore_case));
            cmd->add_option("--input", input, "spectrum file for --model file");
        }
        cmd->add_option("--poles", poles, "heat exponents, decreasing")->delimiter(',');
        cmd->add_option("--k", config.k, "target pole index")
            ->each([&](const std::string&) { k_given = true; });
        cmd->add_option("--scales", scales, "filter scales, each >= 1")->delimiter(',');
        cmd->add_option("--format", config.format, "output format")
            ->transform(CLI::CheckedTransformer(format_map, CLI::ignore_case))
            ->each([&](const std::string&) { format_given = true; });
        cmd->add_option("--output", output, "write the report to this path");
    };

    CLI::App* filter_cmd = app.add_subcommand("filter", "build a filter and print it");
    add_common(filter_cmd, false);
    filter_cmd->add_option("--filter-file", filter_file, "reprint a stored filter");

    CLI::App* estimate_cmd = app.add_subcommand("estimate", "estimate one heat coefficient");
    add_common(estimate_cmd, true);
    estimate_cmd->add_option("--lambda", lambda, "truncation level")->required();
    estimate_cmd->add_option("--m", m, "schedule parameter");
    estimate_cmd->add_option("--filter-file", filter_file, "use a stored filter");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "estimate across several cutoffs");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--lambdas", lambdas, "increasing truncation levels")
        ->delimiter(',')
        ->required();
    sweep_cmd->add_option("--m", m, "schedule parameter");
    sweep_cmd->add_option("--filter-file", filter_file, "use a stored filter");

    CLI::App* localized_cmd =
        app.add_subcommand("localized", "estimate a localized coefficient");
    add_common(localized_cmd, true);
    localized_cmd->add_option("--lambda", lambda, "truncation level")->required();
    localized_cmd->add_option("--m", m, "schedule parameter");
    localized_cmd->add_option("--keep", config.keep, "parity kept by the projection")
        ->transform(CLI::CheckedTransformer(parity_map, CLI::ignore_case));
    localized_cmd->add_option("--filter-file", filter_file, "use a stored filter");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "print a model's heat data");
    oracle_cmd->add_option("--model", config.model, "model spectrum")
        ->transform(CLI::CheckedTransformer(model_map, CLI::ignore_case));
    oracle_cmd->add_option("--output", output, "write the report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (filter_cmd->parsed()) {
        config.command = RunConfig::Command::filter;
    } else if (estimate_cmd->parsed()) {
        config.command = RunConfig::Command::estimate;
    } else if (sweep_cmd->parsed()) {
        config.command = RunConfig::Command::sweep;
    } else if (localized_cmd->parsed()) {
        config.command = RunConfig::Command::localized;
    } else if (oracle_cmd->parsed()) {
        config.command = RunConfig::Command::oracle;
    }

    if (!poles.empty()) {
        config.poles = poles;
    }
    if (!scales.empty()) {
        config.scales = scales;
    }
    if (estimate_cmd->parsed() || localized_cmd->parsed()) {
        config.cutoffs = {lambda};
    } else if (sweep_cmd->parsed()) {
        config.cutoffs = lambdas;
    }
    if ((estimate_cmd->parsed() || sweep_cmd->parsed() || localized_cmd->parsed()) &&
        (estimate_cmd->count("--m") || sweep_cmd->count("--m") ||
         localized_cmd->count("--m"))) {
        config.m = m;
    }
    if (!input.empty()) {
        config.input_path = input;
    }
    if (!filter_file.empty()) {
        config.filter_file = filter_file;
    }
    if (!output.empty()) {
        config.output_path = output;
    }
    if (!format_given) {
        config.format = sweep_cmd->parsed() ? RunConfig::Format::csv : RunConfig::Format::json;
    }
    if (!k_given && config.command == RunConfig::Command::filter && config.poles.has_value()) {
        config.k = config.poles->size() - 1;
    }

    try {
        return run(config, std::cout, std::cerr);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace specres
