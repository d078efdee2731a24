#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "asymdof/errors.hpp"
#include "asymdof/region.hpp"
#include "report.hpp"

namespace asymdof::cli {

namespace {

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string_view command_name(Command c) {
    switch (c) {
        case Command::Classify: return "classify";
        case Command::Region: return "region";
        case Command::Scheme: return "scheme";
        case Command::Verify: return "verify";
        case Command::Oracle: return "oracle";
        case Command::Sweep: return "sweep";
    }
    return "?";
}

Rational flag_rational(const std::string& flag, const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

DofTuple flag_tuple(const std::string& flag, const std::string& text) {
    try {
        return parse_tuple(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

NetworkDims require_dims(const RunConfig& c) {
    if (!c.m) throw UsageError("--m is required for " + std::string(command_name(c.command)));
    if (!c.n) throw UsageError("--n is required for " + std::string(command_name(c.command)));
    return make_dims(*c.m, *c.n);
}

json base_document(const RunConfig& c) {
    json doc;
    doc["command"] = std::string(command_name(c.command));
    doc["input"] = nullptr;
    doc["regime"] = nullptr;
    doc["result"] = nullptr;
    doc["seed"] = c.seed;
    doc["tolerances"] = json{{"rank_tol", c.tol}, {"leakage_tol", c.leakage_tol}, {"max_iters", c.max_iters}};
    doc["version"] = kVersion;
    return doc;
}

void attach_dims(json& doc, const NetworkDims& dims) {
    doc["input"] = dims;
    doc["regime"] = regime_json(dims, classify(dims));
}

struct Outcome {
    json doc;
    int code = kExitPass;
};

Outcome run_classify(const RunConfig& c) {
    const auto dims = require_dims(c);
    Outcome o{base_document(c)};
    attach_dims(o.doc, dims);
    const auto regime = classify(dims);
    json result{{"gamma", dims.gamma()}, {"equal_antennas", dims.equal_antennas()}};
    if (regime.tree) {
        const int L = regime.tree->length;
        json dof = json::object();
        json interference = json::object();
        for (int r = 1; r <= kUsers; ++r) {
            dof[std::to_string(r)] = dof_basis(r, L);
            interference[std::to_string(r)] = interference_basis(r, L);
        }
        result["dof_basis"] = dof;
        result["interference_basis"] = interference;
    }
    o.doc["result"] = result;
    return o;
}

Outcome run_region(const RunConfig& c) {
    const auto dims = require_dims(c);
    Outcome o{base_document(c)};
    attach_dims(o.doc, dims);
    json result;
    if (dims.equal_antennas()) {
        result["kind"] = "equal_antennas";
        if (c.check) {
            const bool member = equal_antenna_member(dims.m, *c.check);
            result["check"] = *c.check;
            result["member"] = member;
            o.code = member ? kExitPass : kExitNegative;
        }
        if (c.enumerate || !c.check) {
            result["vertices"] = equal_antenna_vertices(dims.m);
        }
    } else {
        result["kind"] = "tree_allocations";
        if (c.check) {
            result["check"] = *c.check;
            result["pairwise_outer_bound"] = pairwise_outer_bound(dims, *c.check);
            const auto alloc = allocation_search(dims, *c.check);
            result["member"] = alloc.has_value();
            result["allocation"] = alloc ? json(*alloc) : json(nullptr);
            o.code = alloc ? kExitPass : kExitNegative;
        }
        if (c.enumerate || !c.check) {
            result["max_sum_dof"] = max_sum_dof(dims);
            result["frontier"] = achievable_frontier(dims);
        }
    }
    o.doc["result"] = result;
    return o;
}

Outcome run_scheme(const RunConfig& c) {
    const auto dims = require_dims(c);
    if (!c.target) throw UsageError("--target is required for scheme");
    Outcome o{base_document(c)};
    attach_dims(o.doc, dims);
    const auto alloc = allocation_search(dims, *c.target);
    json result{{"target", *c.target}, {"feasible", alloc.has_value()}};
    if (alloc) {
        result["allocation"] = *alloc;
        result["dof"] = alloc->dof(dims);
        std::vector<ChainSpec> chains;
        for (const auto& e : alloc->entries) chains.push_back(build_chain(e.root, e.length));
        result["chains"] = chains;
    } else {
        result["allocation"] = nullptr;
        o.code = kExitNegative;
    }
    o.doc["result"] = result;
    return o;
}

Outcome run_verify(const RunConfig& c) {
    const auto dims = require_dims(c);
    if (!c.target) throw UsageError("--target is required for verify");
    Outcome o{base_document(c)};
    attach_dims(o.doc, dims);
    try {
        const auto report = verify_point(dims, *c.target, c.trials, c.seed, c.tol, c.workers);
        o.doc["result"] = report;
        o.code = report.overall_pass ? kExitPass : kExitNegative;
    } catch (const InfeasibleTarget& e) {
        o.doc["result"] = json{{"target", *c.target}, {"feasible", false}, {"error", e.what()}};
        o.code = kExitNegative;
    }
    return o;
}

Outcome run_oracle(const RunConfig& c) {
    const auto dims = require_dims(c);
    if (!c.target) throw UsageError("--target is required for oracle");
    Outcome o{base_document(c)};
    attach_dims(o.doc, dims);
    const auto result = oracle_membership(dims, *c.target, c.trials, c.seed, c.max_iters, c.leakage_tol, c.workers);
    o.doc["result"] = result;
    o.code = result.verdict == OracleVerdict::FeasibleEvidence ? kExitPass : kExitNegative;
    return o;
}

std::vector<Rational> gamma_grid(const RunConfig& c, std::int64_t n) {
    const Rational step = c.gamma_step.value_or(Rational(1, n));
    const Rational lo = c.gamma_min.value_or(Rational(n + 1, n));
    const Rational hi = c.gamma_max.value_or(Rational(2 * n - 1, n));
    if (step <= 0) throw UsageError("--gamma-step: must be > 0");
    if (hi < lo) throw UsageError("--gamma-max: must be >= --gamma-min");
    std::vector<Rational> grid;
    for (Rational g = lo; g <= hi; g += step) grid.push_back(g);
    return grid;
}

}  // namespace

DofTuple parse_tuple(const std::string& text) {
    DofTuple t;
    std::stringstream ss(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i == 3) throw std::invalid_argument("expected three comma-separated values");
        t[i] = parse_rational(item);
        if (t[i] < 0) throw std::invalid_argument("components must be >= 0");
        ++i;
    }
    if (i != 3) throw std::invalid_argument("expected three comma-separated values");
    return t;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                    int& exit_code) {
    CLI::App app{"Asymmetric DoF region calculator for the 3-user MxN MIMO interference channel"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string m_text, n_text, target_text, check_text, out_path, format_text;
    std::string gmin_text, gmax_text, gstep_text;
    RunConfig cfg;

    struct Sub {
        Command command;
        CLI::App* app;
    };
    std::vector<Sub> subs;
    auto add = [&](Command cmd, const std::string& help) {
        auto* s = app.add_subcommand(std::string(command_name(cmd)), help);
        s->add_option("--m", m_text, "transmit antennas per user (decimal or p/q)");
        s->add_option("--n", n_text, "receive antennas per user (decimal or p/q)");
        s->add_option("--out", out_path, "write the report to PATH instead of stdout");
        s->add_option("--format", format_text, "json|csv");
        s->add_option("--seed", cfg.seed, "base seed");
        subs.push_back({cmd, s});
        return s;
    };

    add(Command::Classify, "regime, tree length and basis sets");
    auto* region = add(Command::Region, "region membership and enumeration");
    region->add_option("--check", check_text, "d1,d2,d3 membership query");
    region->add_flag("--enumerate", cfg.enumerate, "list vertices (M = N) or the achievable frontier");
    auto* scheme = add(Command::Scheme, "tree allocation for a target tuple");
    scheme->add_option("--target", target_text, "d1,d2,d3");
    auto* verify = add(Command::Verify, "Monte-Carlo rank verification of a target tuple");
    verify->add_option("--target", target_text, "d1,d2,d3");
    verify->add_option("--trials", cfg.trials, "number of channel draws");
    verify->add_option("--tol", cfg.tol, "relative singular-value tolerance");
    verify->add_option("--workers", cfg.workers, "worker threads");
    auto* oracle = add(Command::Oracle, "iterative leakage-minimization evidence");
    oracle->add_option("--target", target_text, "d1,d2,d3");
    oracle->add_option("--trials", cfg.trials, "number of channel draws");
    oracle->add_option("--leakage-tol", cfg.leakage_tol, "convergence threshold on total leakage");
    oracle->add_option("--max-iters", cfg.max_iters, "iteration cap per trial");
    oracle->add_option("--workers", cfg.workers, "worker threads");
    auto* sweep_cmd = add(Command::Sweep, "regime table over a ratio grid at fixed N");
    sweep_cmd->add_option("--gamma-min", gmin_text, "first ratio (default (N+1)/N)");
    sweep_cmd->add_option("--gamma-max", gmax_text, "last ratio (default (2N-1)/N)");
    sweep_cmd->add_option("--gamma-step", gstep_text, "ratio step (default 1/N)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        exit_code = kExitPass;
        return std::nullopt;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        exit_code = kExitPass;
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        exit_code = kExitError;
        return std::nullopt;
    }

    try {
        for (const auto& s : subs) {
            if (s.app->parsed()) cfg.command = s.command;
        }
        if (!m_text.empty()) cfg.m = flag_rational("--m", m_text);
        if (!n_text.empty()) cfg.n = flag_rational("--n", n_text);
        if (!target_text.empty()) cfg.target = flag_tuple("--target", target_text);
        if (!check_text.empty()) cfg.check = flag_tuple("--check", check_text);
        if (!gmin_text.empty()) cfg.gamma_min = flag_rational("--gamma-min", gmin_text);
        if (!gmax_text.empty()) cfg.gamma_max = flag_rational("--gamma-max", gmax_text);
        if (!gstep_text.empty()) cfg.gamma_step = flag_rational("--gamma-step", gstep_text);
        if (!out_path.empty()) cfg.output_path = out_path;

        cfg.format = cfg.command == Command::Sweep ? Format::Csv : Format::Json;
        if (format_text == "json") {
            cfg.format = Format::Json;
        } else if (format_text == "csv") {
            if (cfg.command != Command::Sweep) throw UsageError("--format: csv is only available for sweep");
            cfg.format = Format::Csv;
        } else if (!format_text.empty()) {
            throw UsageError("--format: expected json or csv, got '" + format_text + "'");
        }
        if (cfg.trials < 1) throw UsageError("--trials: must be >= 1");
        if (!(cfg.tol > 0)) throw UsageError("--tol: must be > 0");
        if (!(cfg.leakage_tol > 0)) throw UsageError("--leakage-tol: must be > 0");
        if (cfg.max_iters < 0) throw UsageError("--max-iters: must be >= 0");
        if (cfg.workers < 1) throw UsageError("--workers: must be >= 1");
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        exit_code = kExitError;
        return std::nullopt;
    }
    return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::ostringstream body;
    int code = kExitPass;
    try {
        if (config.command == Command::Sweep) {
            if (!config.n) throw UsageError("--n is required for sweep");
            if (!is_integral(*config.n) || *config.n < 1) throw UsageError("--n: sweep needs a positive integer N");
            const auto n = config.n->numerator();
            const auto rows = sweep(n, gamma_grid(config, n));
            if (config.format == Format::Csv) {
                write_sweep_csv(body, rows);
            } else {
                json doc = base_document(config);
                doc["input"] = json{{"n", n}};
                doc["result"] = json{{"rows", rows}};
                body << doc.dump(2) << '\n';
            }
        } else {
            Outcome o;
            switch (config.command) {
                case Command::Classify: o = run_classify(config); break;
                case Command::Region: o = run_region(config); break;
                case Command::Scheme: o = run_scheme(config); break;
                case Command::Verify: o = run_verify(config); break;
                case Command::Oracle: o = run_oracle(config); break;
                case Command::Sweep: break;
            }
            body << o.doc.dump(2) << '\n';
            code = o.code;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }

    if (config.output_path) {
        std::ofstream file(*config.output_path, std::ios::binary);
        if (!file) {
            err << "error: --out: cannot open '" << *config.output_path << "'\n";
            return kExitError;
        }
        file << body.str();
    } else {
        out << body.str();
    }
    return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    int code = kExitPass;
    auto config = parse_args(argc, argv, out, err, code);
    if (!config) return code;
    return run(*config, out, err);
}

}  // namespace asymdof::cli
