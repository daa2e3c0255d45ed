// Copyright 2026 The spinchar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Batch command-line front end. `run` is the whole program minus process
// plumbing, so it can be driven from tests with string streams.
//
// Exit codes: 0 success, 1 internal error, 2 invalid arguments,
// 3 resource limit, 4 precision failure (rounding or norm check).

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spinchar/character_engine.hpp"
#include "spinchar/combinatorics.hpp"
#include "spinchar/errors.hpp"
#include "spinchar/kostka_engine.hpp"
#include "spinchar/oracle.hpp"
#include "spinchar/sampling.hpp"

namespace spinchar::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kInvalidArguments = 2,
    kResourceLimit = 3,
    kPrecisionFailure = 4,
};

/// Environment variable holding the default --format.
inline constexpr const char* kFormatEnvironment = "SPINCHAR_FORMAT";

namespace detail {

using Json = nlohmann::ordered_json;

inline std::string format_double(double value) {
    std::ostringstream out;
    out << std::setprecision(17) << value;
    return out.str();
}

inline std::string quoted(const Partition& p) { return "\"" + p.to_string() + "\""; }

struct Options {
    int n = 0;
    std::string nu;
    std::string lambda;
    std::string mu;
    std::optional<double> epsilon;
    std::optional<std::size_t> max_bond;
    std::size_t bond_cap = kDefaultBondCap;
    std::string engine = "mps";
    std::string format;
    unsigned jobs = 1;
    std::string mode;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    std::optional<int> max_n;
    int n_start = 0;
    int n_end = 0;
    int step = 2;
};

inline TruncationPolicy policy(const Options& o, double default_epsilon) {
    TruncationPolicy p{o.epsilon.value_or(default_epsilon), o.max_bond};
    p.validate();
    return p;
}

inline void require_n(const Options& o) {
    if (o.n <= 0) {
        throw InvalidArgument("--n must be a positive integer");
    }
}

inline Partition partition_arg(const std::string& text, const char* flag, int n) {
    if (text.empty()) {
        throw InvalidArgument(std::string(flag) + " is required");
    }
    Partition p = Partition::parse(text);
    require_partition_of(p, n, flag);
    return p;
}

inline void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed) {
        if (format == a) {
            return;
        }
    }
    throw InvalidArgument("unsupported --format '" + format + "'");
}

inline void require_certified(const CharacterResult& r, const std::string& what) {
    if (r.precision_flag) {
        throw PrecisionFailure(what + ": amplitude " + format_double(r.amplitude) +
                               " can not be rounded reliably (residual " + format_double(r.residual) + ")");
    }
}

inline int cmd_character(const Options& o, std::ostream& out) {
    require_n(o);
    const Partition nu = partition_arg(o.nu, "--nu", o.n);
    const Partition lambda = partition_arg(o.lambda, "--lambda", o.n);
    const Engine engine = parse_engine(o.engine);
    if (engine == Engine::mn) {
        out << oracle::mn_character(lambda, nu) << '\n';
        return kOk;
    }
    const ChainState chain = build_psi(nu, o.n, policy(o, kDefaultCharacterEpsilon), o.bond_cap);
    const CharacterResult r =
        round_amplitude(amplitude(chain.state, encode_occupation(lambda, o.n)), chain.max_bond_seen);
    require_certified(r, "chi_" + lambda.to_string() + "(" + nu.to_string() + ")");
    const double norm_residual = psi_norm_residual(chain.state, nu);
    if (!(norm_residual <= kNormTolerance)) {
        throw PrecisionFailure("norm check failed: relative deviation " + format_double(norm_residual) +
                               " from |E_g|");
    }
    out << r.value << '\n';
    return kOk;
}

template <typename Row>
inline double max_residual(const Row& row) {
    double worst = 0.0;
    for (const auto& [lambda, r] : row.entries) {
        worst = std::max(worst, r.residual);
    }
    return worst;
}

/// Shared writer for character and Kostka rows; `key` names the fixed
/// partition ("nu" or "mu") and `value_name` the CSV value column.
template <typename Row>
inline void write_row(std::ostream& out, const std::string& format, const char* key, const Partition& fixed,
                      const Row& row, const char* value_name) {
    if (format == "json") {
        Json doc;
        doc["n"] = row.n;
        doc[key] = fixed.to_string();
        Json entries = Json::object();
        for (const auto& [lambda, r] : row.entries) {
            entries[lambda.to_string()] = r.value;
        }
        doc["entries"] = entries;
        doc["norm_residual"] = row.norm_residual;
        doc["max_residual"] = max_residual(row);
        doc["max_bond"] = row.max_bond_seen;
        out << doc.dump() << '\n';
    } else if (format == "csv") {
        out << "lambda," << value_name << ",residual,norm_residual,max_bond\n";
        for (const auto& [lambda, r] : row.entries) {
            out << quoted(lambda) << ',' << r.value << ',' << format_double(r.residual) << ','
                << format_double(row.norm_residual) << ',' << row.max_bond_seen << '\n';
        }
    } else {
        for (const auto& [lambda, r] : row.entries) {
            out << lambda.to_string() << '\t' << r.value << '\n';
        }
        out << "norm_residual=" << format_double(row.norm_residual) << " max_bond=" << row.max_bond_seen << '\n';
    }
}

inline int cmd_row(const Options& o, std::ostream& out) {
    require_n(o);
    check_format(o.format, {"text", "json", "csv"});
    const Partition nu = partition_arg(o.nu, "--nu", o.n);
    const CharacterRow row = character_row(nu, o.n, policy(o, kDefaultCharacterEpsilon), o.bond_cap);
    if (!row.certified()) {
        throw PrecisionFailure("row " + nu.to_string() + " is not certified: norm residual " +
                               format_double(row.norm_residual) + ", max rounding residual " +
                               format_double(max_residual(row)));
    }
    write_row(out, o.format, "nu", nu, row, "chi");
    return kOk;
}

inline int cmd_table(const Options& o, std::ostream& out) {
    require_n(o);
    check_format(o.format, {"text", "json", "csv"});
    const Engine engine = parse_engine(o.engine);
    const std::vector<Partition> partitions = enumerate_partitions(o.n);
    // values[class][irrep]
    std::vector<std::vector<std::int64_t>> values;
    if (engine == Engine::mn) {
        if (o.n > oracle::kCharacterCap) {
            throw ResourceLimit("--engine mn supports n <= " + std::to_string(oracle::kCharacterCap));
        }
        for (const auto& nu : partitions) {
            auto& row = values.emplace_back();
            for (const auto& lambda : partitions) {
                row.push_back(oracle::mn_character(lambda, nu));
            }
        }
    } else {
        const CharacterTable table = character_table(o.n, policy(o, kDefaultCharacterEpsilon), o.bond_cap, o.jobs);
        for (const auto& nu : partitions) {
            const CharacterRow& row = table.at(nu);
            if (!row.certified()) {
                throw PrecisionFailure("row " + nu.to_string() + " is not certified");
            }
            auto& out_row = values.emplace_back();
            for (const auto& lambda : partitions) {
                out_row.push_back(row.entries.at(lambda).value);
            }
        }
    }
    if (o.format == "json") {
        Json doc;
        doc["n"] = o.n;
        doc["engine"] = o.engine;
        Json labels = Json::array();
        for (const auto& p : partitions) {
            labels.push_back(p.to_string());
        }
        doc["irreps"] = labels;
        doc["classes"] = labels;
        doc["characters"] = values;
        out << doc.dump() << '\n';
    } else if (o.format == "csv") {
        out << "nu,lambda,chi\n";
        for (std::size_t c = 0; c < partitions.size(); ++c) {
            for (std::size_t i = 0; i < partitions.size(); ++i) {
                out << quoted(partitions[c]) << ',' << quoted(partitions[i]) << ',' << values[c][i] << '\n';
            }
        }
    } else {
        out << "nu\\lambda";
        for (const auto& p : partitions) {
            out << '\t' << p.to_string();
        }
        out << '\n';
        for (std::size_t c = 0; c < partitions.size(); ++c) {
            out << partitions[c].to_string();
            for (std::int64_t v : values[c]) {
                out << '\t' << v;
            }
            out << '\n';
        }
    }
    return kOk;
}

inline int cmd_kostka(const Options& o, std::ostream& out, std::ostream& err) {
    require_n(o);
    check_format(o.format, {"text", "json", "csv"});
    const Partition mu = partition_arg(o.mu, "--mu", o.n);
    if (auto warning = long_weight_warning(mu)) {
        err << "warning: " << *warning << '\n';
    }
    const TruncationPolicy p = policy(o, kDefaultKostkaEpsilon);
    if (!o.lambda.empty()) {
        const Partition lambda = partition_arg(o.lambda, "--lambda", o.n);
        const ChainState chain = build_psi_mu(mu, o.n, p, o.bond_cap);
        const CharacterResult r =
            round_amplitude(amplitude(chain.state, encode_occupation(lambda, o.n)), chain.max_bond_seen);
        require_certified(r, "K_" + lambda.to_string() + "," + mu.to_string());
        if (r.value < 0) {
            throw PrecisionFailure("negative Kostka amplitude " + format_double(r.amplitude));
        }
        out << r.value << '\n';
        return kOk;
    }
    const KostkaRow row = kostka_row(mu, o.n, p, o.bond_cap);
    if (!row.certified()) {
        throw PrecisionFailure("Kostka row " + mu.to_string() + " is not certified: norm residual " +
                               format_double(row.norm_residual));
    }
    write_row(out, o.format, "mu", mu, row, "kostka");
    return kOk;
}

inline int cmd_sample(const Options& o, std::ostream& out) {
    require_n(o);
    check_format(o.format, {"text", "json"});
    const Engine engine = parse_engine(o.engine);
    FiniteDistribution<Partition> dist;
    if (o.mode == "row") {
        dist = row_distribution(partition_arg(o.nu, "--nu", o.n), o.n, engine,
                                policy(o, kDefaultCharacterEpsilon));
    } else if (o.mode == "column") {
        dist = column_distribution(partition_arg(o.lambda, "--lambda", o.n), o.n, engine,
                                   policy(o, kDefaultCharacterEpsilon));
    } else {
        throw InvalidArgument("--mode must be row or column");
    }
    const std::vector<Partition> draws = sample(dist, o.shots, o.seed);
    if (o.format == "json") {
        Json doc = Json::array();
        for (const auto& d : draws) {
            doc.push_back(d.to_string());
        }
        out << doc.dump() << '\n';
    } else {
        for (const auto& d : draws) {
            out << d.to_string() << '\n';
        }
    }
    return kOk;
}

inline int cmd_granularity(const Options& o, std::ostream& out) {
    require_n(o);
    const Partition nu = partition_arg(o.nu, "--nu", o.n);
    out << granularity(nu, o.n).to_string() << '\n';
    return kOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
    require_n(o);
    const int last = o.max_n.value_or(o.n);
    if (last < o.n) {
        throw InvalidArgument("--max-n must be >= --n");
    }
    if (last > oracle::kCharacterCap) {
        throw ResourceLimit("verify: oracle cap is n <= " + std::to_string(oracle::kCharacterCap));
    }
    bool all_pass = true;
    auto report = [&](bool pass, const std::string& suite, int n, const std::string& detail) {
        all_pass = all_pass && pass;
        out << (pass ? "PASS " : "FAIL ") << suite << " n=" << n << ' ' << detail << '\n';
    };
    for (int n = o.n; n <= last; ++n) {
        const auto partitions = enumerate_partitions(n);
        std::size_t mismatches = 0;
        double worst_norm = 0.0;
        for (const auto& nu : partitions) {
            const CharacterRow row = character_row(nu, n, policy(o, kDefaultCharacterEpsilon), o.bond_cap);
            worst_norm = std::max(worst_norm, row.norm_residual);
            for (const auto& [lambda, r] : row.entries) {
                mismatches += static_cast<std::size_t>(r.precision_flag || r.value != oracle::mn_character(lambda, nu));
            }
        }
        report(mismatches == 0 && worst_norm <= kNormTolerance, "characters(mps==mn)", n,
               "mismatches=" + std::to_string(mismatches) + " max_norm_residual=" + format_double(worst_norm));

        if (n <= oracle::kTableauCap) {
            std::size_t kostka_mismatches = 0;
            for (const auto& mu : partitions) {
                const KostkaRow row = kostka_row(mu, n, policy(o, kDefaultKostkaEpsilon), o.bond_cap);
                for (const auto& [lambda, r] : row.entries) {
                    kostka_mismatches +=
                        static_cast<std::size_t>(r.precision_flag || BigInt(r.value) != oracle::ssyt_count(lambda, mu));
                }
            }
            report(kostka_mismatches == 0, "kostka(mps==ssyt)", n, "mismatches=" + std::to_string(kostka_mismatches));
        }
        if (n <= oracle::kDensePsiCap) {
            std::size_t dense_mismatches = 0;
            for (const auto& nu : partitions) {
                const ChainState chain = build_psi(nu, n, TruncationPolicy{0.0, std::nullopt}, o.bond_cap);
                for (const auto& [x, value] : oracle::dense_psi(nu, n)) {
                    const CharacterResult r = round_amplitude(amplitude(chain.state, x), chain.max_bond_seen);
                    dense_mismatches += static_cast<std::size_t>(BigInt(r.value) != value);
                }
            }
            report(dense_mismatches == 0, "dense_psi(eps=0)", n, "mismatches=" + std::to_string(dense_mismatches));
        }
    }
    out << (all_pass ? "all suites passed" : "some suites FAILED") << '\n';
    return all_pass ? kOk : kPrecisionFailure;
}

inline int cmd_bench(const Options& o, std::ostream& out) {
    if (o.n_start <= 0 || o.n_end < o.n_start || o.step <= 0) {
        throw InvalidArgument("bench needs 0 < --n-start <= --n-end and --step > 0");
    }
    const TruncationPolicy p = policy(o, kDefaultCharacterEpsilon);
    out << "n,wall_seconds,max_bond,bond_bound,norm_residual\n";
    for (int n = o.n_start; n <= o.n_end; n += o.step) {
        std::vector<int> cycles(static_cast<std::size_t>(n / 2), 2);
        if (n % 2 != 0) {
            cycles.push_back(1);
        }
        const Partition nu(cycles);
        const auto start = std::chrono::steady_clock::now();
        const CharacterRow row = character_row(nu, n, p, o.bond_cap);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out << n << ',' << format_double(seconds) << ',' << row.max_bond_seen << ','
            << character_bond_bound(nu).str() << ',' << format_double(row.norm_residual) << std::endl;
    }
    return kOk;
}

}  // namespace detail

/// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    detail::Options o;
    const char* env_format = std::getenv(kFormatEnvironment);
    const std::string default_format = env_format != nullptr ? env_format : "text";

    CLI::App app{"Characters of S_n and Kostka numbers from matrix product states", "spinchar"};
    app.require_subcommand(1);
    const std::string eps_help_chars = "relative truncation tolerance (default 1e-10)";
    const std::string eps_help_kostka = "relative truncation tolerance (default 1e-11)";

    auto add_n = [&](CLI::App* sub) { sub->add_option("--n", o.n, "size of the symmetric group")->required(); };
    auto add_truncation = [&](CLI::App* sub, const std::string& help) {
        sub->add_option("--epsilon", o.epsilon, help);
        sub->add_option("--max-bond", o.max_bond, "clamp every bond to this dimension");
        sub->add_option("--bond-cap", o.bond_cap, "abort when a bond exceeds this (default 4096)");
    };
    auto add_format = [&](CLI::App* sub, const std::string& choices) {
        o.format = default_format;
        sub->add_option("--format", o.format, "output format: " + choices + " (default from $SPINCHAR_FORMAT)");
    };

    auto* character_cmd = app.add_subcommand("character", "one character chi_lambda(nu)");
    add_n(character_cmd);
    character_cmd->add_option("--nu", o.nu, "cycle type, e.g. 2,1")->required();
    character_cmd->add_option("--lambda", o.lambda, "irrep, e.g. 2,1")->required();
    character_cmd->add_option("--engine", o.engine, "mps or mn (default mps)");
    add_truncation(character_cmd, eps_help_chars);

    auto* row_cmd = app.add_subcommand("row", "all characters at one conjugacy class");
    add_n(row_cmd);
    row_cmd->add_option("--nu", o.nu, "cycle type")->required();
    add_truncation(row_cmd, eps_help_chars);
    add_format(row_cmd, "text|json|csv");

    auto* table_cmd = app.add_subcommand("table", "full character table");
    add_n(table_cmd);
    table_cmd->add_option("--engine", o.engine, "mps or mn (default mps)");
    table_cmd->add_option("--jobs", o.jobs, "worker threads for the mps engine");
    add_truncation(table_cmd, eps_help_chars);
    add_format(table_cmd, "text|json|csv");

    auto* kostka_cmd = app.add_subcommand("kostka", "Kostka numbers K_{lambda,mu}");
    add_n(kostka_cmd);
    kostka_cmd->add_option("--mu", o.mu, "weight")->required();
    kostka_cmd->add_option("--lambda", o.lambda, "shape (omit for the full row)");
    add_truncation(kostka_cmd, eps_help_kostka);
    add_format(kostka_cmd, "text|json|csv");

    auto* sample_cmd = app.add_subcommand("sample", "draw from a row or column distribution");
    add_n(sample_cmd);
    sample_cmd->add_option("--mode", o.mode, "row or column")->required();
    sample_cmd->add_option("--nu", o.nu, "cycle type (row mode)");
    sample_cmd->add_option("--lambda", o.lambda, "irrep (column mode)");
    sample_cmd->add_option("--shots", o.shots, "number of draws")->required();
    sample_cmd->add_option("--seed", o.seed, "64-bit seed for mt19937_64")->required();
    sample_cmd->add_option("--engine", o.engine, "mps or mn (default mps)");
    add_format(sample_cmd, "text|json");

    auto* granularity_cmd = app.add_subcommand("granularity", "row-sampling granularity p(n)/|E_g|");
    add_n(granularity_cmd);
    granularity_cmd->add_option("--nu", o.nu, "cycle type")->required();

    auto* verify_cmd = app.add_subcommand("verify", "compare the MPS engines with the brute-force oracles");
    add_n(verify_cmd);
    verify_cmd->add_option("--max-n", o.max_n, "check every n up to this value");
    verify_cmd->add_option("--bond-cap", o.bond_cap, "abort when a bond exceeds this (default 4096)");

    auto* bench_cmd = app.add_subcommand("bench", "runtime and bond dimension for g = n/2 two-cycles (CSV)");
    bench_cmd->add_option("--n-start", o.n_start)->required();
    bench_cmd->add_option("--n-end", o.n_end)->required();
    bench_cmd->add_option("--step", o.step, "increment of n (default 2)");
    add_truncation(bench_cmd, eps_help_chars);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidArguments;
    }

    try {
        if (character_cmd->parsed()) {
            return detail::cmd_character(o, out);
        }
        if (row_cmd->parsed()) {
            return detail::cmd_row(o, out);
        }
        if (table_cmd->parsed()) {
            return detail::cmd_table(o, out);
        }
        if (kostka_cmd->parsed()) {
            return detail::cmd_kostka(o, out, err);
        }
        if (sample_cmd->parsed()) {
            return detail::cmd_sample(o, out);
        }
        if (granularity_cmd->parsed()) {
            return detail::cmd_granularity(o, out);
        }
        if (verify_cmd->parsed()) {
            return detail::cmd_verify(o, out);
        }
        if (bench_cmd->parsed()) {
            return detail::cmd_bench(o, out);
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArguments;
    } catch (const ResourceLimit& e) {
        err << "resource limit: " << e.what() << '\n';
        return kResourceLimit;
    } catch (const PrecisionFailure& e) {
        err << "precision failure: " << e.what() << '\n';
        return kPrecisionFailure;
    } catch (const InconsistentEngine& e) {
        err << "precision failure: " << e.what() << '\n';
        return kPrecisionFailure;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    err << "error: no subcommand\n";
    return kInvalidArguments;
}

}  // namespace spinchar::cli
