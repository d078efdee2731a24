#include "report.hpp"

#include <ostream>

namespace asymdof {

void to_json(json& j, const NetworkDims& d) {
    j = json{{"m", d.m}, {"n", d.n}, {"m_scaled", d.m_int}, {"n_scaled", d.n_int}, {"scale", d.scale}};
}

void from_json(const json& j, NetworkDims& d) {
    d = make_dims(j.at("m").get<Rational>(), j.at("n").get<Rational>());
    if (d.m_int != j.at("m_scaled").get<std::int64_t>() || d.n_int != j.at("n_scaled").get<std::int64_t>() ||
        d.scale != j.at("scale").get<std::int64_t>()) {
        throw std::invalid_argument("scaled antenna counts disagree with m and n");
    }
}

void to_json(json& j, const Regime& r) {
    j = json::object();
    j["loss_class"] = std::string(to_string(r.loss_class));
    const std::vector<const char*> keys{"L",     "sub_interval", "window_lo",    "window_hi", "d_o",
                                        "delta", "d_max",        "i_min",        "max_user_dof",
                                        "paper_sum_bound"};
    if (!r.tree) {
        for (const char* k : keys) j[k] = nullptr;
        return;
    }
    const auto& t = *r.tree;
    j["L"] = t.length;
    j["sub_interval"] = std::string(to_string(t.sub_interval));
    j["window_lo"] = t.window_lo;
    j["window_hi"] = t.window_hi;
    j["d_o"] = t.d_o;
    j["delta"] = t.delta;
    j["d_max"] = t.d_max;
    j["i_min"] = t.i_min;
    j["max_user_dof"] = t.max_user_dof;
    j["paper_sum_bound"] = t.paper_sum_bound;
}

void from_json(const json& j, Regime& r) {
    r.loss_class = parse_loss_class(j.at("loss_class").get<std::string>());
    if (j.at("L").is_null()) {
        r.tree.reset();
        return;
    }
    TreeRegime t;
    t.length = j.at("L").get<int>();
    t.sub_interval = parse_sub_interval(j.at("sub_interval").get<std::string>());
    t.window_lo = j.at("window_lo").get<Rational>();
    t.window_hi = j.at("window_hi").get<Rational>();
    t.d_o = j.at("d_o").get<Rational>();
    t.delta = j.at("delta").get<Rational>();
    t.d_max = j.at("d_max").get<Rational>();
    t.i_min = j.at("i_min").get<Rational>();
    t.max_user_dof = j.at("max_user_dof").get<Rational>();
    t.paper_sum_bound = j.at("paper_sum_bound").get<Rational>();
    r.tree = t;
}

json regime_json(const NetworkDims& dims, const Regime& regime) {
    json j = regime;
    j["d_o_scaled"] = regime.tree ? json((regime.tree->d_o * dims.scale).numerator()) : json(nullptr);
    return j;
}

void to_json(json& j, const TreeEntry& e) {
    j = json{{"root", e.root}, {"length", e.length}, {"branches_scaled", e.branches}};
}

void from_json(const json& j, TreeEntry& e) {
    e.root = j.at("root").get<int>();
    e.length = j.at("length").get<int>();
    e.branches = j.at("branches_scaled").get<std::int64_t>();
}

void to_json(json& j, const TreeAllocation& a) {
    j = json{{"trees", a.entries},
             {"induced_dof_scaled", a.induced_dof()},
             {"induced_interference_scaled", a.induced_interference()},
             {"occupancy_scaled", a.occupancy()}};
}

void from_json(const json& j, TreeAllocation& a) {
    a.entries = j.at("trees").get<std::vector<TreeEntry>>();
}

void to_json(json& j, const RegionPoint& p) {
    j = json{{"dof", p.dof}, {"certified", std::string(to_string(p.certified))}};
    j["allocation"] = p.allocation ? json(*p.allocation) : json(nullptr);
}

void from_json(const json& j, RegionPoint& p) {
    p.dof = j.at("dof").get<DofTuple>();
    p.certified = parse_certification(j.at("certified").get<std::string>());
    if (j.at("allocation").is_null()) {
        p.allocation.reset();
    } else {
        p.allocation = j.at("allocation").get<TreeAllocation>();
    }
}

void to_json(json& j, const ChainSpec& c) {
    j = json{{"root", c.root},
             {"length", c.length},
             {"segments", c.segments},
             {"alignments", c.alignments},
             {"start_null", c.start_null},
             {"end_null", c.end_null}};
}

void from_json(const json& j, ChainSpec& c) {
    c.root = j.at("root").get<int>();
    c.length = j.at("length").get<int>();
    c.segments = j.at("segments").get<std::vector<int>>();
    c.alignments = j.at("alignments").get<std::vector<int>>();
    c.start_null = j.at("start_null").get<int>();
    c.end_null = j.at("end_null").get<int>();
}

void to_json(json& j, const ReceiverCheck& r) {
    j = json{{"signal_rank", r.signal_rank},
             {"interference_rank", r.interference_rank},
             {"joint_rank", r.joint_rank},
             {"expected_signal", r.expected_signal},
             {"expected_interference", r.expected_interference},
             {"pass", r.pass}};
}

void from_json(const json& j, ReceiverCheck& r) {
    r.signal_rank = j.at("signal_rank").get<int>();
    r.interference_rank = j.at("interference_rank").get<int>();
    r.joint_rank = j.at("joint_rank").get<int>();
    r.expected_signal = j.at("expected_signal").get<std::int64_t>();
    r.expected_interference = j.at("expected_interference").get<std::int64_t>();
    r.pass = j.at("pass").get<bool>();
}

void to_json(json& j, const TrialRecord& r) {
    j = json{{"seed", r.seed},
             {"channel_seed", r.channel_seed},
             {"resamples", r.resamples},
             {"receivers", r.receivers},
             {"pass", r.pass},
             {"note", r.note}};
}

void from_json(const json& j, TrialRecord& r) {
    r.seed = j.at("seed").get<std::uint64_t>();
    r.channel_seed = j.at("channel_seed").get<std::uint64_t>();
    r.resamples = j.at("resamples").get<int>();
    r.receivers = j.at("receivers").get<std::array<ReceiverCheck, 3>>();
    r.pass = j.at("pass").get<bool>();
    r.note = j.at("note").get<std::string>();
}

void to_json(json& j, const VerificationReport& r) {
    j = json{{"dims", r.dims},
             {"target", r.target},
             {"allocation", r.allocation},
             {"trials", r.trials},
             {"tol", r.tol},
             {"records", r.records},
             {"overall_pass", r.overall_pass},
             {"failure_notes", r.failure_notes}};
}

void from_json(const json& j, VerificationReport& r) {
    r.dims = j.at("dims").get<NetworkDims>();
    r.target = j.at("target").get<DofTuple>();
    r.allocation = j.at("allocation").get<TreeAllocation>();
    r.trials = j.at("trials").get<int>();
    r.tol = j.at("tol").get<double>();
    r.records = j.at("records").get<std::vector<TrialRecord>>();
    r.overall_pass = j.at("overall_pass").get<bool>();
    r.failure_notes = j.at("failure_notes").get<std::vector<std::string>>();
}

void to_json(json& j, const OracleTrial& t) {
    j = json{{"seed", t.seed},
             {"iterations_used", t.iterations_used},
             {"final_leakage", t.final_leakage},
             {"converged", t.converged}};
}

void from_json(const json& j, OracleTrial& t) {
    t.seed = j.at("seed").get<std::uint64_t>();
    t.iterations_used = j.at("iterations_used").get<int>();
    t.final_leakage = j.at("final_leakage").get<double>();
    t.converged = j.at("converged").get<bool>();
    t.trace.clear();
}

void to_json(json& j, const OracleResult& r) {
    j = json{{"dims", r.dims},
             {"target", r.target},
             {"trials", r.trials},
             {"max_iters", r.max_iters},
             {"leakage_tol", r.leakage_tol},
             {"records", r.records},
             {"best_leakage", r.best_leakage()},
             {"verdict", std::string(to_string(r.verdict))}};
}

void from_json(const json& j, OracleResult& r) {
    r.dims = j.at("dims").get<NetworkDims>();
    r.target = j.at("target").get<DofTuple>();
    r.trials = j.at("trials").get<int>();
    r.max_iters = j.at("max_iters").get<int>();
    r.leakage_tol = j.at("leakage_tol").get<double>();
    r.records = j.at("records").get<std::vector<OracleTrial>>();
    r.verdict = parse_oracle_verdict(j.at("verdict").get<std::string>());
}

void to_json(json& j, const SweepRow& r) {
    j = json{{"gamma", r.gamma}, {"skipped", r.skipped}};
    if (r.skipped) {
        j["skip_reason"] = r.skip_reason;
        return;
    }
    j["L"] = r.length;
    j["loss_class"] = std::string(to_string(r.loss_class));
    j["max_sum_dof"] = r.max_sum_dof;
    j["max_user_dof"] = r.max_user_dof;
}

void from_json(const json& j, SweepRow& r) {
    r = SweepRow{};
    r.gamma = j.at("gamma").get<Rational>();
    r.skipped = j.at("skipped").get<bool>();
    if (r.skipped) {
        r.skip_reason = j.at("skip_reason").get<std::string>();
        return;
    }
    r.length = j.at("L").get<int>();
    r.loss_class = parse_loss_class(j.at("loss_class").get<std::string>());
    r.max_sum_dof = j.at("max_sum_dof").get<Rational>();
    r.max_user_dof = j.at("max_user_dof").get<Rational>();
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        out << to_string(r.gamma) << ',';
        if (r.skipped) {
            out << ",SKIPPED,,\n";
            continue;
        }
        out << r.length << ',' << to_string(r.loss_class) << ',' << to_string(r.max_sum_dof) << ','
            << to_string(r.max_user_dof) << '\n';
    }
}

}  // namespace asymdof
