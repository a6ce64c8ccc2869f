// Copyright 2026 The ringcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ringcert/certify.hpp"
#include "ringcert/errors.hpp"
#include "ringcert/json_io.hpp"
#include "ringcert/rgb4.hpp"
#include "ringcert/ring.hpp"
#include "ringcert/verify.hpp"

namespace {

using namespace ringcert;

// Angles are radians, given as decimal literals; sweeps are start:stop:step
// with the start included and the stop excluded.
struct Sweep {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;

    std::vector<double> values() const {
        if (!(step > 0.0) || !(start < stop))
            throw validation_error("sweep must satisfy start < stop with step > 0");
        std::vector<double> out;
        for (int i = 0;; ++i) {
            const double t = start + i * step;
            if (t >= stop - 1e-12) break;
            out.push_back(t);
        }
        return out;
    }
};

Sweep parse_sweep(const std::string& text) {
    Sweep sweep;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> sweep.start >> c1 >> sweep.stop >> c2 >> sweep.step) ||
        c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
        throw validation_error("sweep format is start:stop:step");
    return sweep;
}

// --output is resolved against $RINGCERT_OUTPUT_DIR when relative; without
// --output everything goes to standard output.
void emit(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::path path(output);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("RINGCERT_OUTPUT_DIR"))
            path = std::filesystem::path(dir) / path;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw validation_error("cannot open output file: " + path.string());
    file << text;
    if (!file.good()) throw validation_error("failed writing: " + path.string());
}

std::string csv_join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line.push_back(',');
        line += cells[i];
    }
    line.push_back('\n');
    return line;
}

std::vector<double> parse_doubles(const std::string& text, char sep) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            throw validation_error("not a number: '" + item + "'");
        }
        if (used != item.size())
            throw validation_error("not a number: '" + item + "'");
        out.push_back(value);
    }
    if (out.empty()) throw validation_error("empty number list");
    return out;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_doubles(text, ',')) {
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw validation_error("expected an integer list");
        out.push_back(i);
    }
    return out;
}

// Support constraints are rendered with one letter per party: a, b, c, ...
std::string party_letters(int n) {
    std::string out;
    for (int k = 0; k < n; ++k) {
        if (k) out.push_back('+');
        out.push_back(static_cast<char>('a' + k));
    }
    return out;
}

int run_token_command(bool parity, const std::string& tokens_flag,
                      const std::string& probs_flag, int n_flag,
                      const std::string& format, const std::string& output) {
    TokenStrategy ts;
    ts.mode = parity ? TokenMode::PTC : TokenMode::TC;
    if (parity) {
        const auto p = parse_doubles(probs_flag, ',');
        ts.n = static_cast<int>(p.size());
        for (double pk : p) {
            if (!(pk >= 0.0) || !(pk <= 1.0))
                throw validation_error("parity probabilities must lie in [0, 1]");
            ts.tokens.push_back(1);
            ts.send_right_probs.push_back({pk, 1.0 - pk});
        }
    } else {
        ts.tokens = parse_ints(tokens_flag);
        ts.n = static_cast<int>(ts.tokens.size());
        if (probs_flag.empty()) {
            for (int n_tok : ts.tokens)
                ts.send_right_probs.emplace_back(
                    static_cast<std::size_t>(n_tok) + 1,
                    1.0 / (n_tok + 1));
        } else if (probs_flag.find(';') == std::string::npos &&
                   static_cast<int>(parse_doubles(probs_flag, ',').size()) == ts.n &&
                   *std::max_element(ts.tokens.begin(), ts.tokens.end()) == 1) {
            // Single-token shorthand: one value per source, the probability
            // that the token moves on to the next party around the ring.
            for (double q : parse_doubles(probs_flag, ','))
                ts.send_right_probs.push_back({q, 1.0 - q});
        } else {
            std::string group;
            std::istringstream in(probs_flag);
            while (std::getline(in, group, ';'))
                ts.send_right_probs.push_back(parse_doubles(group, ','));
        }
    }
    if (n_flag > 0 && n_flag != ts.n)
        throw validation_error("--n does not match the per-source parameter lists");
    ts.validate();
    const OutcomeDistribution dist = classical_distribution(ts);

    const int total = ts.total_tokens();
    const int wanted_parity = ts.n % 2;
    std::string constraint = party_letters(ts.n);
    constraint += parity ? "=" + std::to_string(wanted_parity) + " (mod 2)"
                         : "=" + std::to_string(total);
    const bool pass = support_check(dist, [&](const std::vector<std::string>& outcome) {
        int sum = 0;
        for (const auto& label : outcome) sum += std::stoi(label);
        return parity ? sum % 2 == wanted_parity : sum == total;
    });
    const std::string verdict = pass ? "PASS" : "FAIL";

    if (format == "csv") {
        std::string text = "# support: " + constraint + ": " + verdict + "\n";
        std::vector<std::string> header;
        for (int k = 0; k < ts.n; ++k)
            header.emplace_back(1, static_cast<char>('a' + k));
        header.emplace_back("p");
        text += csv_join(header);
        for (const auto& [outcome, p] : dist.table) {
            std::vector<std::string> row = outcome;
            row.push_back(format_number(p));
            text += csv_join(row);
        }
        emit(text, output);
    } else {
        JsonValue doc = JsonValue::object();
        doc["mode"] = parity ? "ptc" : "tc";
        doc["n"] = static_cast<std::int64_t>(ts.n);
        JsonValue tokens = JsonValue::array();
        for (int n_tok : ts.tokens) tokens.push_back(static_cast<std::int64_t>(n_tok));
        doc["tokens"] = std::move(tokens);
        doc["distribution"] = distribution_to_json(dist);
        JsonValue support = JsonValue::object();
        support["constraint"] = constraint;
        support["verdict"] = verdict;
        doc["support"] = std::move(support);
        emit(doc.dump(), output);
    }
    return 0;
}

int run_rgb4(double theta, const std::string& mode, const std::string& format,
             const std::string& output) {
    const OutcomeDistribution closed = rgb4_closed_form(theta);
    if (mode == "closed") {
        if (format == "csv") {
            std::string text = csv_join({"a", "b", "c", "p"});
            for (const auto& [outcome, p] : closed.table) {
                std::vector<std::string> row = outcome;
                row.push_back(format_number(p));
                text += csv_join(row);
            }
            emit(text, output);
        } else {
            JsonValue doc = JsonValue::object();
            doc["mode"] = "closed";
            doc["theta"] = theta;
            doc["distribution"] = distribution_to_json(closed);
            emit(doc.dump(), output);
        }
        return 0;
    }
    const OutcomeDistribution simulated =
        quantum_distribution(rgb4_strategy(theta).strategy);
    const double max_dev = distribution_distance(simulated, closed);
    if (format == "csv") {
        std::string text = "# max_abs_deviation = " + format_number(max_dev) + "\n";
        text += csv_join({"a", "b", "c", "p_simulated", "p_closed", "abs_deviation"});
        for (const auto& [outcome, p] : closed.table) {
            const double sim = simulated.prob(outcome);
            std::vector<std::string> row = outcome;
            row.push_back(format_number(sim));
            row.push_back(format_number(p));
            row.push_back(format_number(std::abs(sim - p)));
            text += csv_join(row);
        }
        emit(text, output);
    } else {
        JsonValue doc = JsonValue::object();
        doc["mode"] = "simulate";
        doc["theta"] = theta;
        doc["max_abs_deviation"] = max_dev;
        doc["distribution"] = distribution_to_json(simulated);
        emit(doc.dump(), output);
    }
    return 0;
}

int run_bounds(double theta, const std::string& sweep_flag,
               const std::string& format, const std::string& output) {
    std::vector<double> grid;
    if (!sweep_flag.empty()) {
        grid = parse_sweep(sweep_flag).values();
        if (grid.empty()) throw validation_error("sweep selects no angles");
    } else {
        grid.push_back(theta);
    }
    std::vector<CertificateBundle> bundles;
    bundles.reserve(grid.size());
    for (double t : grid) bundles.push_back(certificate(t));

    if (format == "csv") {
        std::string text =
            csv_join({"theta", "r_ideal", "r_floor", "eof_bound", "hmin_bound"});
        for (const auto& b : bundles)
            text += csv_join({format_number(b.theta), format_number(b.r_ideal),
                              format_number(b.r_floor), format_number(b.eof_bound),
                              format_number(b.hmin_bound)});
        emit(text, output);
    } else if (bundles.size() == 1) {
        emit(certificate_to_json(bundles[0]).dump(), output);
    } else {
        JsonValue doc = JsonValue::object();
        doc["schema"] = "ringcert.bounds.v1";
        JsonValue rows = JsonValue::array();
        for (const auto& b : bundles) {
            JsonValue row = JsonValue::object();
            row["theta"] = b.theta;
            row["r_ideal"] = b.r_ideal;
            row["r_floor"] = b.r_floor;
            row["eof_bound"] = b.eof_bound;
            row["hmin_bound"] = b.hmin_bound;
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
        JsonValue formulas = JsonValue::object();
        formulas["r_ideal"] = "sin^3(2 theta)/4";
        formulas["r_floor"] =
            "(1/2) sin^3(theta) (3 cos(theta) + cos(3 theta) - 6 sin(theta))";
        formulas["eof_bound"] = "h2((1 - sqrt(1 - 16 r^2))/2) at r = max(r_floor, 0)";
        formulas["hmin_bound"] = "-log2((1 + sqrt(1 - 4 r))/2) at r = max(r_floor, 0)";
        doc["formulas"] = std::move(formulas);
        emit(doc.dump(), output);
    }
    return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, int trials,
               const std::string& dims_flag, const std::string& output) {
    const std::vector<int> dims = parse_ints(dims_flag);
    VerificationReport report;
    if (suite == "lemmas")
        report = run_lemma_suite(seed, trials, dims);
    else if (suite == "rigidity")
        report = run_rigidity_suite(seed, trials, dims);
    else if (suite == "oracles")
        report = run_oracle_suite(seed, trials);
    else
        report = run_all_suites(seed, trials, dims);
    emit(report_to_json(report).dump(), output);
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact ring-network distributions, rigidity checks, and "
                 "certified entanglement/randomness bounds"};
    app.require_subcommand(1);

    std::string format = "csv", output, mode = "closed";
    double theta = 0.0;
    std::string sweep, tokens_flag, probs_flag, dims_flag = "2,3",
                        suite = "all";
    int n_flag = 0, trials = 50;
    std::uint64_t seed = 1;

    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format (json|csv)")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        cmd->add_option("--output", output,
                        "Output file; relative paths resolve against "
                        "$RINGCERT_OUTPUT_DIR; default is standard output");
    };

    CLI::App* rgb4 = app.add_subcommand(
        "rgb4", "Four-outcome triangle distribution at angle theta (radians)");
    rgb4->add_option("--theta", theta, "Angle in [0, pi/4], radians")->required();
    rgb4->add_option("--mode", mode, "closed: evaluate the closed form; "
                     "simulate: run the quantum strategy and compare")
        ->check(CLI::IsMember({"closed", "simulate"}))
        ->capture_default_str();
    add_io(rgb4);

    CLI::App* bounds = app.add_subcommand(
        "bounds", "Coherence floor and certified bounds at one angle or a sweep");
    bounds->add_option("--theta", theta, "Angle in (0, 0.48), radians");
    bounds->add_option("--sweep", sweep,
                       "start:stop:step angle grid, start included, stop excluded");
    add_io(bounds);

    CLI::App* tc = app.add_subcommand(
        "tc", "Exact distribution of a token-counting strategy");
    tc->add_option("--n", n_flag, "Ring size (checked against the lists)");
    tc->add_option("--tokens", tokens_flag, "Tokens per source, e.g. 1,1,1")
        ->required();
    tc->add_option(
        "--probs", probs_flag,
        "Per-source split distributions, ';'-separated groups of N_k+1 "
        "values; entry t of group k is the probability that t tokens stay "
        "with party k. With one token everywhere, a single group of n values "
        "gives per-source probabilities that the token moves to party k+1. "
        "Default: uniform over splits");
    add_io(tc);

    CLI::App* ptc = app.add_subcommand(
        "ptc", "Exact distribution of a parity token strategy");
    ptc->add_option("--p", probs_flag,
                    "Per-source probabilities that the token moves to party "
                    "k+1, e.g. 0.3,0.5,0.9")
        ->required();
    ptc->add_option("--n", n_flag, "Ring size (checked against --p)");
    add_io(ptc);

    CLI::App* verify = app.add_subcommand(
        "verify", "Seeded verification suites with a JSON report");
    verify->add_option("--suite", suite, "lemmas|rigidity|oracles|all")
        ->check(CLI::IsMember({"lemmas", "rigidity", "oracles", "all"}))
        ->capture_default_str();
    verify->add_option("--seed", seed, "Base seed")->capture_default_str();
    verify->add_option("--trials", trials, "Trials per case family")
        ->capture_default_str();
    verify->add_option("--dims", dims_flag, "Local dimension pool, e.g. 2,3")
        ->capture_default_str();
    verify->add_option("--output", output,
                       "Report file; relative paths resolve against "
                       "$RINGCERT_OUTPUT_DIR; default is standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (rgb4->parsed()) return run_rgb4(theta, mode, format, output);
        if (bounds->parsed()) {
            const bool have_theta = bounds->count("--theta") > 0;
            if (have_theta == !sweep.empty())
                throw validation_error("pass exactly one of --theta and --sweep");
            return run_bounds(theta, sweep, format, output);
        }
        if (tc->parsed())
            return run_token_command(false, tokens_flag, probs_flag, n_flag,
                                     format, output);
        if (ptc->parsed())
            return run_token_command(true, tokens_flag, probs_flag, n_flag,
                                     format, output);
        return run_verify(suite, seed, trials, dims_flag, output);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
