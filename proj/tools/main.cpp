#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rturan/constructions.hpp"
#include "rturan/corpus.hpp"
#include "rturan/density.hpp"
#include "rturan/lemma_suites.hpp"
#include "rturan/semibounded.hpp"
#include "rturan/simulation.hpp"
#include "rturan/supersaturation.hpp"

#ifndef RTURAN_VERSION
#define RTURAN_VERSION "0.0.0"
#endif

using json = nlohmann::json;
using namespace rturan;

namespace {

constexpr int kExitLemma = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

// Nodes of exact search per millisecond of --budget-ms.
constexpr std::size_t kNodesPerMs = 2000;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t seed = 1;
    long long budget_ms = 0;  // 0: library defaults
    std::string out;
    std::string format;
};

std::string fmt_double(double x, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const Globals& g, const std::string& text) {
    if (g.out.empty() || g.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + g.out + "'");
    out << text;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError("bad integer '" + tok + "'");
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError("bad number '" + tok + "'");
        }
    }
    return out;
}

/// Pattern or host: a file, `-` for stdin, or one of
/// k:a,b  cycle:n  path:n  frst:r,s,t  fm:<multigraph file>  gnp:n,p
Graph resolve_graph(const std::string& spec, std::uint64_t seed) {
    auto colon = spec.find(':');
    if (colon != std::string::npos && colon > 0 && spec.find('/') > colon) {
        const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
        if (kind == "fm") return build_F_M(read_multigraph_file(arg)).result;
        if (kind == "gnp") {
            auto v = parse_double_list(arg);
            if (v.size() != 2) throw UsageError("gnp:<n>,<p> expected");
            return sample_gnp(static_cast<int>(v[0]), v[1], seed);
        }
        auto v = parse_int_list(arg);
        if (kind == "k" && v.size() == 2) return complete_bipartite(v[0], v[1]);
        if (kind == "cycle" && v.size() == 1) return cycle_graph(v[0]);
        if (kind == "path" && v.size() == 1) return path_graph(v[0]);
        if (kind == "frst" && v.size() == 3) return build_F_rst(v[0], v[1], v[2]).result;
        throw UsageError("unknown graph spec '" + spec + "'");
    }
    return parse_graph(read_text(spec));
}

json mask_json(VertexMask m) {
    json a = json::array();
    for (int v : mask_to_vertices(m)) a.push_back(v);
    return a;
}

json rational_json(const Rational& r) { return to_string(r); }

json triple_json(const SemiBoundedTriple& t) {
    return json{{"S", mask_json(t.S)}, {"T", mask_json(t.T)}, {"v_star", t.v_star}, {"r", t.r}};
}

/// `auto` or `S=1,2,3;v*=0` (T is the rest).
std::optional<SemiBoundedTriple> parse_triple(const Graph& f, const std::string& text, std::optional<int> r) {
    if (text.empty() || text == "auto") return std::nullopt;
    auto s_at = text.find("S=");
    auto v_at = text.find("v*=");
    if (s_at == std::string::npos || v_at == std::string::npos || v_at < s_at)
        throw UsageError("triple must look like S=1,2,3;v*=0");
    std::string s_part = text.substr(s_at + 2, v_at - s_at - 2);
    for (char& c : s_part)
        if (c == '{' || c == '}' || c == ';') c = ',';
    SemiBoundedTriple t;
    for (int v : parse_int_list(s_part)) {
        if (v < 0 || v >= f.vertex_count()) throw UsageError("triple vertex out of range");
        t.S |= bit(v);
    }
    auto vs = parse_int_list(text.substr(v_at + 3));
    if (vs.size() != 1) throw UsageError("triple needs exactly one v*");
    t.v_star = vs[0];
    if (t.v_star < 0 || t.v_star >= f.vertex_count()) throw UsageError("v* out of range");
    t.T = f.vertex_mask() & ~t.S;
    t.r = r ? *r : minimal_r(f, t.S, t.T, t.v_star);
    if (auto why = triple_violation(f, t); !why.empty()) throw UsageError("invalid triple: " + why);
    return t;
}

SemiBoundedTriple resolve_triple(const Graph& f, const std::string& text, std::optional<int> r) {
    if (auto t = parse_triple(f, text, r)) return *t;
    auto t = select_triple(f, r);
    if (!t) throw UsageError("pattern has no semi-bounded triple" + (r ? " with r=" + std::to_string(*r) : std::string()));
    return *t;
}

json header(const std::string& command, const json& config) {
    return json{{"tool", "rturan"}, {"version", RTURAN_VERSION}, {"command", command}, {"config", config}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

int cmd_density(const Globals& g, const std::string& file) {
    Graph f = resolve_graph(file, g.seed);
    auto rep = density_report(f);
    json j = header("params density", {{"graph", file}});
    j["m2"] = rational_json(rep.m2);
    json w = json::array();
    for (auto m : rep.witnesses) w.push_back(mask_json(m));
    j["witnesses"] = w;
    j["two_balanced"] = rep.two_balanced;
    j["strictly_two_balanced"] = rep.strictly_two_balanced;
    j["m2_star"] = rep.m2_star ? json(to_string(*rep.m2_star)) : json(nullptr);
    write_output(g, dump(j));
    return 0;
}

int cmd_semibounded(const Globals& g, const std::string& file, std::optional<int> r, const std::string& triple_text,
                    bool full_table) {
    Graph f = resolve_graph(file, g.seed);
    auto t = resolve_triple(f, triple_text, r);
    json cfg{{"graph", file}, {"triple", triple_text.empty() ? "auto" : triple_text}, {"full_table", full_table}};
    cfg["r"] = r ? json(*r) : json("auto");
    json j = header("params semibounded", cfg);
    j["triple"] = triple_json(t);
    auto add_threshold = [&](const char* key, auto fn) {
        try {
            auto w = fn(f, t);
            j[key] = {{"value", to_string(w.value)}, {"witness", mask_json(w.witness)}};
        } catch (const std::domain_error& e) {
            j[key] = {{"value", nullptr}, {"reason", e.what()}};
        }
    };
    add_threshold("a", a_of_F);
    add_threshold("b", b_of_F);
    if (full_table) {
        SemiBoundedProfile prof(f, t);
        const Rational m = f.vertex_count() >= 3 ? m2(f) : Rational(1);
        json rows = json::array();
        for (VertexMask nu = 1; nu <= f.vertex_mask(); ++nu) {
            if (f.edges_within(nu) == 0) continue;
            auto st = nu_stats(prof, nu, m);
            json row{{"nu", mask_json(nu)}, {"size", st.size}, {"e", st.e_nu}, {"min_degree", st.min_degree},
                     {"f", *st.f_nu}, {"in_A", st.in_A}, {"in_B", st.in_B}};
            row["a"] = st.a_nu ? json(to_string(*st.a_nu)) : json(nullptr);
            row["b"] = st.b_nu ? json(to_string(*st.b_nu)) : json(nullptr);
            rows.push_back(row);
        }
        j["table"] = rows;
    }
    write_output(g, dump(j));
    return 0;
}

json record_json(const ConstructionRecord& rec) {
    json labels = json::array();
    for (const auto& l : rec.labels) labels.push_back({{"role", to_string(l.role)}, {"detail", l.detail}, {"copy", l.copy}});
    return json{{"source", rec.source}, {"triple", triple_json(rec.triple)}, {"labels", labels},
                {"vertices", rec.result.vertex_count()}, {"edges", rec.result.edge_count()}};
}

int emit_construction(const Globals& g, const std::string& command, const json& config, const ConstructionRecord& rec) {
    json side = header(command, config);
    side["construction"] = record_json(rec);
    if (g.format == "json") {
        side["graph"] = format_graph(rec.result);
        write_output(g, dump(side));
        return 0;
    }
    std::string text = "# rturan " RTURAN_VERSION " " + command + " " + config.dump() + "\n" + format_graph(rec.result);
    if (text.back() != '\n') text += '\n';
    write_output(g, text);
    if (!g.out.empty() && g.out != "-") {
        std::ofstream out(g.out + ".json", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write sidecar '" + g.out + ".json'");
        out << dump(side);
    }
    return 0;
}

int cmd_construct_fm(const Globals& g, const std::string& file) {
    auto m = parse_multigraph(read_text(file));
    return emit_construction(g, "construct fm", {{"multigraph", file}}, build_F_M(m));
}

int cmd_construct_frst(const Globals& g, int r, int s, int t) {
    return emit_construction(g, "construct frst", {{"r", r}, {"s", s}, {"t", t}}, build_F_rst(r, s, t));
}

int cmd_supersat(const Globals& g, const std::string& pattern_spec, const std::string& host_spec, double delta,
                 const std::string& triple_text, std::optional<int> r, bool audit, double gamma, bool allow_sampling) {
    Graph f = resolve_graph(pattern_spec, g.seed);
    Graph host = resolve_graph(host_spec, g.seed);
    if (host.edge_count() == 0) throw UsageError("host has no edges");
    auto t = resolve_triple(f, triple_text, r);
    auto ctx = BalancingContext::from_host(host, delta);
    json cfg{{"pattern", pattern_spec}, {"host", host_spec}, {"delta", delta}, {"seed", g.seed}, {"audit", audit},
             {"gamma", gamma}, {"allow_sampling", allow_sampling}, {"budget_ms", g.budget_ms}};
    json j = header("supersat build", cfg);
    j["triple"] = triple_json(t);
    j["host"] = {{"n", host.vertex_count()}, {"edges", host.edge_count()}, {"q", ctx.q}};

    BuildStats stats;
    auto family = build_dgood(f, t, host, ctx, g.seed, &stats);
    const double norm = std::pow(ctx.q, f.edge_count()) * std::pow(ctx.n, f.vertex_count());
    j["family"] = {{"size", family.size()}, {"candidates", stats.candidates},
                   {"normalized_size", static_cast<double>(family.size()) / norm}};
    json caps = json::array();
    std::map<VertexMask, int> saturated;
    for (const auto& s : saturated_partials(family)) ++saturated[s.nu];
    for (VertexMask nu : family.capped_subsets()) {
        auto it = stats.binding.find(nu);
        caps.push_back({{"nu", mask_json(nu)}, {"D", family.cap(nu)}, {"integer_cap", family.integer_cap(nu)},
                        {"binding", it == stats.binding.end() ? 0 : it->second}, {"saturated", saturated[nu]}});
    }
    j["caps"] = caps;
    auto dc = check_double_counting(family);
    j["checks"] = {{"recount", recount_is_dgood(family)}, {"maximal", !find_insertable(family).has_value()},
                   {"double_counting", dc.holds}, {"worst_a_ratio", dc.worst_a_ratio},
                   {"worst_b_ratio", dc.worst_b_ratio}, {"checked_pairs", dc.checked_pairs}};
    int code = 0;
    if (audit) {
        AuditOptions ao;
        ao.gamma = gamma;
        ao.allow_sampling = allow_sampling;
        ao.seed = g.seed;
        if (g.budget_ms > 0) ao.budget = static_cast<std::size_t>(g.budget_ms) * kNodesPerMs * 10;
        try {
            auto h = to_edge_hypergraph(family);
            auto a = delta_audit(h, family, ao);
            json rows = json::array();
            for (const auto& row : a.rows)
                rows.push_back({{"i", row.i}, {"delta", row.delta}, {"bound", row.bound}, {"holds", row.holds},
                                {"shape", row.shape}, {"worst_sigma", row.worst_sigma}});
            j["audit"] = {{"tau", a.tau}, {"gamma", a.gamma}, {"smallest_gamma", a.smallest_gamma},
                          {"smallest_C", a.smallest_C}, {"sampled", a.sampled}, {"rows", rows}};
        } catch (const ResourceError& e) {
            j["audit"] = {{"error", e.what()}, {"partial", true}};
            code = kExitBudget;
        }
    }
    write_output(g, dump(j));
    return code;
}

json prediction_json(const ExponentPrediction& p) {
    json j{{"available", p.available}, {"theorem", to_string(p.theorem)}};
    if (!p.available) {
        j["reason"] = p.reason;
        return j;
    }
    auto opt = [](const std::optional<Rational>& r) { return r ? json(to_string(*r)) : json(nullptr); };
    j["thresholds"] = {{"p_lower", opt(p.p_lower_threshold)}, {"p_upper", opt(p.p_upper_threshold)},
                       {"plateau_exponent", opt(p.plateau_exponent)},
                       {"plateau_proven_until", opt(p.plateau_proven_until)}};
    j["dense"] = {{"p_exponent", opt(p.dense_p_exponent)}, {"n_exponent", opt(p.dense_n_exponent)}};
    j["sparse"] = p.sparse;
    j["degenerate"] = p.degenerate;
    j["triple"] = p.triple ? triple_json(*p.triple) : json(nullptr);
    j["provenance"] = p.provenance;
    j["assumptions"] = p.assumptions;
    return j;
}

ExponentPrediction run_predict(const Graph& f, const std::string& triple_text, std::optional<int> r,
                               const std::string& theorem) {
    PredictTheorem th;
    try {
        th = parse_predict_theorem(theorem);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    auto t = parse_triple(f, triple_text, r);
    if (!t && r) t = select_triple(f, r);
    return predict(f, t, th);
}

int cmd_predict(const Globals& g, const std::string& pattern_spec, const std::string& triple_text,
                std::optional<int> r, const std::string& theorem) {
    Graph f = resolve_graph(pattern_spec, g.seed);
    json cfg{{"pattern", pattern_spec}, {"theorem", theorem}, {"triple", triple_text.empty() ? "auto" : triple_text}};
    cfg["r"] = r ? json(*r) : json("auto");
    json j = header("predict", cfg);
    j["prediction"] = prediction_json(run_predict(f, triple_text, r, theorem));
    write_output(g, dump(j));
    return 0;
}

int cmd_simulate(const Globals& g, const std::string& pattern_spec, const std::string& n_text,
                 const std::string& p_text, int reps, const std::string& method, int threads, bool record_timing,
                 bool uncoupled, int restarts) {
    SweepConfig c;
    c.pattern = resolve_graph(pattern_spec, g.seed);
    c.n_list = parse_int_list(n_text);
    c.p_exponents = parse_double_list(p_text);
    if (c.n_list.empty() || c.p_exponents.empty()) throw UsageError("--n and --p-exp need at least one value");
    c.replicates = reps;
    try {
        c.method = parse_sim_method(method);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    c.seed = g.seed;
    c.threads = threads;
    c.record_timing = record_timing;
    c.coupled = !uncoupled;
    c.heuristic.restarts = restarts;
    if (g.budget_ms > 0) c.exact.node_budget = static_cast<std::size_t>(g.budget_ms) * kNodesPerMs;
    auto res = sweep(c);

    json cfg{{"pattern", pattern_spec}, {"n", c.n_list}, {"p_exp", c.p_exponents}, {"reps", reps},
             {"method", to_string(c.method)}, {"seed", g.seed}, {"coupled", c.coupled}, {"restarts", restarts},
             {"budget_ms", g.budget_ms}, {"record_timing", record_timing}};
    bool failed = false;
    for (const auto& row : res.rows) failed |= row.ex_est < 0;

    if (g.format == "json") {
        json j = header("simulate", cfg);
        json rows = json::array(), cells = json::array(), sn = json::object(), sp = json::object();
        for (const auto& r : res.rows)
            rows.push_back({{"n", r.n}, {"p_exp", r.p_exp}, {"p", r.p}, {"seed", r.seed}, {"replicate", r.replicate},
                            {"host_edges", r.host_edges}, {"ex_est", r.ex_est}, {"method", to_string(r.method)},
                            {"time_ms", r.time_ms}, {"error", r.error}});
        for (const auto& cl : res.cells)
            cells.push_back({{"n", cl.n}, {"p_exp", cl.p_exp}, {"p", cl.p}, {"median", cl.median}, {"min", cl.min},
                             {"max", cl.max}, {"ok", cl.ok}});
        for (const auto& [x, fit] : res.slope_in_n) sn[fmt_double(x, 6)] = {{"slope", fit.slope}, {"stderr", fit.slope_stderr}};
        for (const auto& [n, fit] : res.slope_in_p) sp[std::to_string(n)] = {{"slope", fit.slope}, {"stderr", fit.slope_stderr}};
        j["rows"] = rows;
        j["cells"] = cells;
        j["slope_in_n"] = sn;
        j["slope_in_p"] = sp;
        write_output(g, dump(j));
    } else {
        std::ostringstream out;
        out << "# rturan " << RTURAN_VERSION << " simulate\n# config " << cfg.dump() << "\n";
        out << "n,p_exp,p,seed,replicate,host_edges,ex_est,method,time_ms\n";
        for (const auto& r : res.rows) {
            out << r.n << ',' << fmt_double(r.p_exp, 6) << ',' << fmt_double(r.p) << ',' << r.seed << ','
                << r.replicate << ',' << r.host_edges << ',' << r.ex_est << ',' << to_string(r.method) << ','
                << fmt_double(r.time_ms, 6) << '\n';
        }
        for (const auto& r : res.rows)
            if (!r.error.empty())
                out << "# error n=" << r.n << " p_exp=" << fmt_double(r.p_exp, 6) << " rep=" << r.replicate << ": "
                    << r.error << '\n';
        write_output(g, out.str());
    }
    return failed ? kExitBudget : 0;
}

struct CsvRow {
    int n = 0;
    double p_exp = 0;
    double p = 0;
    int ex_est = -1;
};

std::vector<CsvRow> read_sweep_csv(const std::string& path) {
    std::stringstream in(read_text(path));
    std::string line;
    std::vector<std::string> cols;
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        if (cols.empty()) {
            cols = cells;
            continue;
        }
        auto at = [&](const char* name) -> const std::string& {
            auto it = std::find(cols.begin(), cols.end(), name);
            if (it == cols.end() || static_cast<std::size_t>(it - cols.begin()) >= cells.size())
                throw UsageError(std::string("csv lacks column '") + name + "'");
            return cells[static_cast<std::size_t>(it - cols.begin())];
        };
        try {
            rows.push_back({std::stoi(at("n")), std::stod(at("p_exp")), std::stod(at("p")), std::stoi(at("ex_est"))});
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError("bad csv line: " + line);
        }
    }
    if (cols.empty()) throw UsageError("csv has no header");
    return rows;
}

std::string regime(const ExponentPrediction& p, double x) {
    if (!p.available || !p.p_lower_threshold || !p.p_upper_threshold) return "unknown";
    if (x < to_double(*p.p_lower_threshold)) return "sparse";
    if (x <= to_double(*p.p_upper_threshold)) return "plateau";
    return "dense";
}

int cmd_report(const Globals& g, const std::string& csv, const std::string& pattern_spec, const std::string& triple_text,
               std::optional<int> r, const std::string& theorem) {
    auto rows = read_sweep_csv(csv);
    Graph f = resolve_graph(pattern_spec, g.seed);
    auto pred = run_predict(f, triple_text, r, theorem);
    std::map<std::pair<int, double>, std::vector<double>> groups;
    std::map<std::pair<int, double>, double> p_of;
    for (const auto& row : rows) {
        p_of[{row.n, row.p_exp}] = row.p;
        if (row.ex_est >= 0) groups[{row.n, row.p_exp}].push_back(row.ex_est);
    }
    json series = json::array();
    std::map<double, std::vector<std::pair<double, double>>> by_p;
    std::map<int, std::vector<std::pair<double, double>>> by_n;
    for (const auto& [key, p] : p_of) {
        auto it = groups.find(key);
        json cell{{"n", key.first}, {"p_exp", key.second}, {"p", p}, {"regime", regime(pred, key.second)}};
        if (it == groups.end()) {
            cell["median"] = nullptr;
        } else {
            const double med = median(it->second);
            cell["median"] = med;
            cell["replicates"] = it->second.size();
            cell["ratio_to_p_pairs"] = med / (p * key.first * (key.first - 1) / 2.0);
            if (med > 0) {
                by_p[key.second].push_back({std::log(key.first), std::log(med)});
                by_n[key.first].push_back({std::log(p), std::log(med)});
            }
        }
        series.push_back(cell);
    }
    json fits_n = json::object(), fits_p = json::object();
    for (const auto& [x, pts] : by_p) {
        if (pts.size() < 2) continue;
        auto fit = fit_slope(pts);
        fits_n[fmt_double(x, 6)] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"max_residual", fit.max_residual}};
    }
    for (const auto& [n, pts] : by_n) {
        if (pts.size() < 2) continue;
        auto fit = fit_slope(pts);
        fits_p[std::to_string(n)] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"max_residual", fit.max_residual}};
    }
    json cfg{{"csv", csv}, {"pattern", pattern_spec}, {"theorem", theorem}};
    json j = header("report", cfg);
    j["prediction"] = prediction_json(pred);
    j["series"] = series;
    j["slope_in_n"] = fits_n;
    j["slope_in_p"] = fits_p;
    j["note"] = "exponents only; deviations within log-factor slack are inconclusive";
    write_output(g, dump(j));
    return 0;
}

int cmd_verify(const Globals& g, int max_vertices, const std::vector<std::string>& only, int examples) {
    SuiteOptions o;
    o.max_vertices = max_vertices;
    o.seed = g.seed;
    o.max_counterexamples = static_cast<std::size_t>(std::max(0, examples));
    std::vector<SuiteResult> results;
    try {
        results = run_lemma_suites(o, only);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    bool all = true;
    for (const auto& s : results) all &= s.passed;
    if (g.format == "json") {
        json cfg{{"max_vertices", max_vertices}, {"suites", only}, {"seed", g.seed}};
        json j = header("verify-lemmas", cfg);
        json arr = json::array();
        for (const auto& s : results)
            arr.push_back({{"name", s.name}, {"statement", s.statement}, {"passed", s.passed}, {"checks", s.checks},
                           {"violations", s.violations}, {"counterexamples", s.counterexamples}});
        j["suites"] = arr;
        j["passed"] = all;
        write_output(g, dump(j));
    } else {
        std::ostringstream out;
        out << "# rturan " << RTURAN_VERSION << " verify-lemmas max_vertices=" << max_vertices << " seed=" << g.seed
            << "\n";
        int passed = 0;
        for (const auto& s : results) {
            passed += s.passed;
            out << (s.passed ? "PASS " : "FAIL ") << s.name << "  checks=" << s.checks
                << " violations=" << s.violations << "\n  " << s.statement << "\n";
            for (const auto& c : s.counterexamples) out << "    counterexample: " << c << "\n";
        }
        out << passed << "/" << results.size() << " suites passed\n";
        write_output(g, out.str());
    }
    return all ? 0 : kExitLemma;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rturan: random Turan exponents, semi-bounded parameters and supersaturation audits"};
    app.set_version_flag("--version", std::string(RTURAN_VERSION));
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "base seed")->capture_default_str();
    app.add_option("--budget-ms", g.budget_ms, "work budget for exact searches, in ms of nominal work");
    app.add_option("--out", g.out, "output file (default stdout)");
    app.add_option("--format", g.format, "json | csv | text | graph (default depends on command)")
        ->check(CLI::IsMember({"json", "csv", "text", "graph"}));

    std::function<int()> run;

    auto* params = app.add_subcommand("params", "structural parameters");
    params->require_subcommand(1);
    std::string density_file;
    auto* density = params->add_subcommand("density", "m2, witnesses and balance");
    density->add_option("graph", density_file)->required();
    density->callback([&] { run = [&] { return cmd_density(g, density_file); }; });

    std::string sb_file, sb_triple;
    std::optional<int> sb_r;
    bool sb_table = false;
    auto* sb = params->add_subcommand("semibounded", "a(F), b(F) and the per-subset table");
    sb->add_option("graph", sb_file)->required();
    sb->add_option("--r", sb_r);
    sb->add_option("--triple", sb_triple, "auto or S=1,2,3;v*=0");
    sb->add_flag("--full-table", sb_table);
    sb->callback([&] { run = [&] { return cmd_semibounded(g, sb_file, sb_r, sb_triple, sb_table); }; });

    auto* construct = app.add_subcommand("construct", "F_M and F_{r,s,t} constructions");
    construct->require_subcommand(1);
    std::string fm_file;
    auto* fm = construct->add_subcommand("fm", "subdivide a multigraph and add an apex");
    fm->add_option("multigraph", fm_file)->required();
    fm->callback([&] { run = [&] { return cmd_construct_fm(g, fm_file); }; });
    int fr = 0, fs = 0, ft = 0;
    auto* frst = construct->add_subcommand("frst", "apex over S plus t private vertices per r-subset");
    frst->add_option("--r", fr)->required();
    frst->add_option("--s", fs)->required();
    frst->add_option("--t", ft)->required();
    frst->callback([&] { run = [&] { return cmd_construct_frst(g, fr, fs, ft); }; });

    auto* supersat = app.add_subcommand("supersat", "D-good families");
    supersat->require_subcommand(1);
    std::string ss_pattern, ss_host, ss_triple;
    std::optional<int> ss_r;
    double ss_delta = 0.5, ss_gamma = 1;
    bool ss_audit = false, ss_sampling = false;
    auto* build = supersat->add_subcommand("build", "greedy maximal D-good family with checks");
    build->add_option("--pattern", ss_pattern)->required();
    build->add_option("--host", ss_host)->required();
    build->add_option("--delta", ss_delta)->capture_default_str();
    build->add_option("--triple", ss_triple);
    build->add_option("--r", ss_r);
    build->add_flag("--audit", ss_audit, "edge hypergraph degree audit");
    build->add_option("--gamma", ss_gamma)->capture_default_str();
    build->add_flag("--allow-sampling", ss_sampling);
    build->callback([&] {
        run = [&] {
            return cmd_supersat(g, ss_pattern, ss_host, ss_delta, ss_triple, ss_r, ss_audit, ss_gamma, ss_sampling);
        };
    });

    std::string sim_pattern, sim_n = "40,80,160", sim_p = "-0.67,-0.5,-0.33", sim_method = "auto";
    int sim_reps = 5, sim_threads = 0, sim_restarts = 3;
    bool sim_timing = false, sim_uncoupled = false;
    auto* sim = app.add_subcommand("simulate", "estimate ex(G(n,p), F) over a grid");
    sim->add_option("--pattern", sim_pattern)->required();
    sim->add_option("--n", sim_n)->capture_default_str();
    sim->add_option("--p-exp", sim_p, "p = n^x for each x")->capture_default_str();
    sim->add_option("--reps", sim_reps)->capture_default_str()->check(CLI::PositiveNumber);
    sim->add_option("--method", sim_method, "auto | exact | heuristic")->capture_default_str();
    sim->add_option("--threads", sim_threads, "0 = hardware concurrency");
    sim->add_option("--restarts", sim_restarts)->capture_default_str();
    sim->add_flag("--record-timing", sim_timing, "fill time_ms (breaks byte-identical output)");
    sim->add_flag("--uncoupled", sim_uncoupled, "no warm start between p values");
    sim->callback([&] {
        run = [&] {
            return cmd_simulate(g, sim_pattern, sim_n, sim_p, sim_reps, sim_method, sim_threads, sim_timing,
                                sim_uncoupled, sim_restarts);
        };
    });

    std::string pr_pattern, pr_triple, pr_theorem = "auto";
    std::optional<int> pr_r;
    auto* pr = app.add_subcommand("predict", "exponent prediction as JSON");
    pr->add_option("--pattern", pr_pattern)->required();
    pr->add_option("--theorem", pr_theorem, "auto | kst | multigraph | general | maxdeg | smallp | semibounded")
        ->capture_default_str();
    pr->add_option("--triple", pr_triple);
    pr->add_option("--r", pr_r);
    pr->callback([&] { run = [&] { return cmd_predict(g, pr_pattern, pr_triple, pr_r, pr_theorem); }; });

    std::string rp_csv, rp_pattern, rp_triple, rp_theorem = "auto";
    std::optional<int> rp_r;
    auto* rp = app.add_subcommand("report", "merge a simulate CSV with the prediction into plot data");
    rp->add_option("--csv", rp_csv)->required();
    rp->add_option("--pattern", rp_pattern)->required();
    rp->add_option("--theorem", rp_theorem)->capture_default_str();
    rp->add_option("--triple", rp_triple);
    rp->add_option("--r", rp_r);
    rp->callback([&] { run = [&] { return cmd_report(g, rp_csv, rp_pattern, rp_triple, rp_r, rp_theorem); }; });

    int vl_max = 7, vl_examples = 5;
    std::vector<std::string> vl_only;
    auto* vl = app.add_subcommand("verify-lemmas", "invariant suites over the small bipartite corpus");
    vl->add_option("--max-vertices", vl_max)->capture_default_str()->check(CLI::Range(2, 9));
    vl->add_option("--suite", vl_only, "run only these suites");
    vl->add_option("--examples", vl_examples, "counterexamples shown per suite")->capture_default_str();
    vl->callback([&] { run = [&] { return cmd_verify(g, vl_max, vl_only, vl_examples); }; });

    if (argc <= 1) {
        std::cerr << app.help();
        return kExitUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitUsage;
    }
    try {
        return run();
    } catch (const UsageError& e) {
        std::cerr << "rturan: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "rturan: parse error, " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceError& e) {
        std::cerr << "rturan: budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "rturan: " << e.what() << "\n";
        return 1;
    }
}
