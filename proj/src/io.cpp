#include "fap/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fap {

namespace {

using nlohmann::json;

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::bad_input, "cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::bad_input, "cannot write " + path);
    return out;
}

// key=value pairs from a leading `# fap-v1 ...` comment line.
std::map<std::string, std::string> parse_metadata(const std::string& line) {
    std::map<std::string, std::string> meta;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        auto eq = tok.find('=');
        if (eq != std::string::npos) meta[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return meta;
}

double meta_num(const std::map<std::string, std::string>& meta, const std::string& key) {
    auto it = meta.find(key);
    if (it == meta.end()) throw Error(ErrorCode::bad_input, "metadata misses " + key);
    return std::stod(it->second);
}

}  // namespace

void save_topology(const std::string& path, const TopologyFile& t) {
    json j;
    j["version"] = kFileFormatVersion;
    j["seed"] = t.seed;
    j["nodes"] = json::array();
    for (const auto& n : t.topology.nodes) j["nodes"].push_back({{"id", n.id}, {"x", n.x}, {"y", n.y}});
    j["links"] = json::array();
    for (const auto& l : t.topology.links)
        j["links"].push_back({{"id", l.id}, {"tx", l.tx}, {"rx", l.rx}});
    if (t.plan) {
        j["plan"] = {{"f_start", t.plan->f_start},
                     {"f_end", t.plan->f_end},
                     {"B", t.plan->bandwidth},
                     {"delta_f", t.plan->step}};
    }
    open_out(path) << j.dump(2) << "\n";
}

TopologyFile load_topology(const std::string& path) {
    json j;
    try {
        open_in(path) >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::bad_input, path + ": " + e.what());
    }
    TopologyFile t;
    try {
        for (const auto& n : j.at("nodes"))
            t.topology.nodes.push_back({n.at("id").get<int>(), n.at("x").get<double>(), n.at("y").get<double>()});
        for (const auto& l : j.at("links"))
            t.topology.links.push_back({l.at("id").get<int>(), l.at("tx").get<int>(), l.at("rx").get<int>()});
        if (j.contains("plan")) {
            const auto& p = j["plan"];
            t.plan = build_plan(p.at("f_start").get<double>(), p.at("f_end").get<double>(),
                                p.at("B").get<double>(), p.at("delta_f").get<double>());
        }
        if (j.contains("seed")) t.seed = j["seed"].get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::bad_input, path + ": " + e.what());
    }
    t.topology.validate();
    return t;
}

void save_assignment(const std::string& path, const Assignment& a, const SolutionMetrics& metrics,
                     const std::string& strategy, std::uint64_t seed) {
    json j;
    j["version"] = kFileFormatVersion;
    j["strategy"] = strategy;
    j["seed"] = seed;
    json assignments = json::object();
    for (const auto& [id, k] : a.freq_index) assignments[std::to_string(id)] = k;
    j["assignments"] = assignments;
    j["metrics"] = {{"used_count", metrics.used_count},
                    {"range_mhz", metrics.range_mhz},
                    {"feasible", metrics.feasible},
                    {"fail_count", metrics.fail_count}};
    open_out(path) << j.dump(2) << "\n";
}

Assignment load_assignment(const std::string& path) {
    json j;
    try {
        open_in(path) >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::bad_input, path + ": " + e.what());
    }
    Assignment a;
    try {
        for (const auto& [key, value] : j.at("assignments").items())
            a.freq_index[std::stoi(key)] = value.get<int>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::bad_input, path + ": " + e.what());
    }
    return a;
}

namespace {

std::vector<std::pair<double, double>> load_two_column(const std::string& path) {
    auto in = open_in(path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double a, b;
        if (ss >> a >> b) rows.push_back({a, b});
    }
    if (rows.empty()) throw Error(ErrorCode::bad_input, path + ": no samples");
    return rows;
}

}  // namespace

AntennaPattern load_antenna_pattern(const std::string& path) {
    AntennaPattern p;
    p.samples = load_two_column(path);
    p.validate();
    return p;
}

void save_antenna_pattern(const std::string& path, const AntennaPattern& p) {
    auto out = open_out(path);
    out << "# " << kFileFormatVersion << " antenna pattern: angle_deg attenuation_dB\n";
    for (const auto& [a, v] : p.samples) out << a << " " << v << "\n";
}

SpectralMask load_mask(const std::string& path, double floor_db) {
    SpectralMask m;
    m.samples = load_two_column(path);
    m.floor_db = floor_db;
    m.validate();
    return m;
}

void save_mask(const std::string& path, const SpectralMask& m) {
    auto out = open_out(path);
    out << "# " << kFileFormatVersion << " spectral mask: offset_MHz level_dB (floor " << m.floor_db
        << " dB)\n";
    for (const auto& [o, v] : m.samples) out << o << " " << v << "\n";
}

void save_separation_csv(const std::string& path, const SeparationMatrix& sep,
                         const FrequencyPlan& plan, std::uint64_t seed) {
    auto out = open_out(path);
    out.precision(12);
    bool canonical_ids = true;
    for (int i = 0; i < sep.n; ++i)
        if (sep.link_ids[i] != i) canonical_ids = false;
    out << "# " << kFileFormatVersion << " separation n_links=" << sep.n << " f_start=" << plan.f_start
        << " f_end=" << plan.f_end << " B=" << plan.bandwidth << " delta_f=" << plan.step
        << " n_f=" << plan.count << " seed=" << seed << " sentinel_pairs=" << sep.sentinel_pairs();
    if (!canonical_ids) {
        // Non-contiguous link ids (e.g. a CELAR import): keep the id list so
        // isolated links survive the round trip.
        out << " ids=";
        for (int i = 0; i < sep.n; ++i) out << (i > 0 ? ";" : "") << sep.link_ids[i];
    }
    out << "\n";
    out << "i,j,S_MHz,sep_quantized\n";
    for (int i = 0; i < sep.n; ++i) {
        for (int j = i + 1; j < sep.n; ++j) {
            if (sep.at(i, j) < 1) continue;
            out << sep.link_ids[i] << "," << sep.link_ids[j] << ",";
            if (sep.is_sentinel(i, j))
                out << "inf";
            else
                out << sep.s_at(i, j);
            out << "," << sep.at(i, j) << "\n";
        }
    }
}

SeparationFile load_separation_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("#", 0) != 0)
        throw Error(ErrorCode::bad_input, path + ": missing metadata comment line");
    auto meta = parse_metadata(line);

    SeparationFile f;
    f.plan = build_plan(meta_num(meta, "f_start"), meta_num(meta, "f_end"), meta_num(meta, "B"),
                        meta_num(meta, "delta_f"));
    int n = static_cast<int>(meta_num(meta, "n_links"));
    if (n < 0) throw Error(ErrorCode::bad_input, path + ": bad n_links");
    if (meta.count("seed")) f.seed = std::stoull(meta["seed"]);

    f.sep.n = n;
    f.sep.link_ids.resize(n);
    for (int i = 0; i < n; ++i) f.sep.link_ids[i] = i;
    if (meta.count("ids")) {
        std::istringstream ss(meta["ids"]);
        std::string tok;
        std::vector<int> ids;
        while (std::getline(ss, tok, ';')) ids.push_back(std::stoi(tok));
        if (static_cast<int>(ids.size()) != n)
            throw Error(ErrorCode::bad_input, path + ": ids list disagrees with n_links");
        f.sep.link_ids = std::move(ids);
    }
    std::map<int, int> pos;
    for (int i = 0; i < n; ++i) pos[f.sep.link_ids[i]] = i;
    std::size_t cells = static_cast<std::size_t>(n) * n;
    f.sep.sep.assign(cells, 0);
    f.sep.s_mhz.assign(cells, 0.0);
    f.sep.sentinel.assign(cells, 0);

    if (!std::getline(in, line) || line.rfind("i,j", 0) != 0)
        throw Error(ErrorCode::bad_input, path + ": missing header row");
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(ss, tok, ',')) cols.push_back(tok);
        if (cols.size() != 4) throw Error(ErrorCode::bad_input, path + ": malformed row '" + line + "'");
        auto i = pos.find(std::stoi(cols[0]));
        auto j = pos.find(std::stoi(cols[1]));
        if (i == pos.end() || j == pos.end() || i->second == j->second)
            throw Error(ErrorCode::bad_input, path + ": unknown link id in row '" + line + "'");
        bool sentinel = cols[2] == "inf";
        double s = sentinel ? std::numeric_limits<double>::infinity() : std::stod(cols[2]);
        int d = std::stoi(cols[3]);
        f.sep.set(std::min(i->second, j->second), std::max(i->second, j->second), d, s, sentinel);
    }
    return f;
}

SeparationMatrix load_celar_constraints(const std::string& path) {
    auto in = open_in(path);
    struct Row {
        int i, j, s;
        bool strict;
    };
    std::vector<Row> rows;
    std::set<int> ids;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::vector<std::string> tok;
        std::string t;
        while (ss >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() < 4)
            throw Error(ErrorCode::bad_input, path + ": malformed constraint '" + line + "'");
        // `i j > s` or the RLFAP form `i j D > s`.
        int op_pos = -1;
        for (std::size_t k = 2; k + 1 < tok.size(); ++k) {
            if (tok[k] == ">" || tok[k] == ">=") {
                op_pos = static_cast<int>(k);
                break;
            }
        }
        if (op_pos < 0) throw Error(ErrorCode::bad_input, path + ": no comparison in '" + line + "'");
        Row r;
        try {
            r.i = std::stoi(tok[0]);
            r.j = std::stoi(tok[1]);
            r.s = std::stoi(tok[op_pos + 1]);
        } catch (const std::exception&) {
            throw Error(ErrorCode::bad_input, path + ": malformed constraint '" + line + "'");
        }
        r.strict = tok[op_pos] == ">";
        if (r.i == r.j) throw Error(ErrorCode::bad_input, path + ": self constraint on " + tok[0]);
        rows.push_back(r);
        ids.insert(r.i);
        ids.insert(r.j);
    }
    if (rows.empty()) throw Error(ErrorCode::bad_input, path + ": no constraints");

    SeparationMatrix sep;
    sep.link_ids.assign(ids.begin(), ids.end());
    sep.n = static_cast<int>(sep.link_ids.size());
    std::size_t cells = static_cast<std::size_t>(sep.n) * sep.n;
    sep.sep.assign(cells, 0);
    sep.s_mhz.assign(cells, 0.0);
    sep.sentinel.assign(cells, 0);
    std::map<int, int> pos;
    for (int v = 0; v < sep.n; ++v) pos[sep.link_ids[v]] = v;

    for (const auto& r : rows) {
        // |f_i - f_j| > s in index units means a quantized separation of s+1.
        int d = r.strict ? r.s + 1 : r.s;
        int a = pos[r.i], b = pos[r.j];
        if (d > sep.at(a, b)) sep.set(std::min(a, b), std::max(a, b), d, static_cast<double>(d));
    }
    return sep;
}

void save_pool_csv(const std::string& path, const SolutionPool& pool, std::uint64_t master_seed) {
    auto out = open_out(path);
    out.precision(10);
    out << "# " << kFileFormatVersion << " pool seed=" << master_seed
        << " attempted=" << pool.attempted << " infeasible_runs=" << pool.infeasible_runs << "\n";
    out << "seed,strategy,used_count,range_mhz,psi,pareto_flag\n";
    for (const auto& e : pool.entries) {
        out << e.seed << "," << e.strategy << "," << e.metrics.used_count << "," << e.metrics.range_mhz
            << "," << e.psi << "," << (e.pareto ? 1 : 0) << "\n";
    }
}

void save_benchmark_csv(const std::string& path, const std::vector<BenchmarkRecord>& records,
                        std::uint64_t seed) {
    auto out = open_out(path);
    out.precision(10);
    out << "# " << kFileFormatVersion << " benchmark seed=" << seed << "\n";
    out << "method,time_limit_s,replication,stream_seed,feasible,used_count,range_mhz,wall_time_s,"
           "iterations,trace\n";
    for (const auto& r : records) {
        out << r.method << "," << r.time_limit_s << "," << r.replication << "," << r.stream_seed << ","
            << (r.feasible ? 1 : 0) << "," << r.used_count << "," << r.range_mhz << "," << r.wall_time_s
            << "," << r.iterations << ",";
        for (std::size_t i = 0; i < r.trace.size(); ++i) {
            if (i > 0) out << ";";
            out << r.trace[i].first << ":" << r.trace[i].second;
        }
        out << "\n";
    }
}

void save_benchmark_summary_csv(const std::string& path, const std::vector<BenchmarkSummary>& summaries,
                                std::uint64_t seed) {
    auto out = open_out(path);
    out.precision(10);
    out << "# " << kFileFormatVersion << " benchmark-summary seed=" << seed << "\n";
    out << "method,time_limit_s,feasible_runs,total_runs,mean_used,min_used,max_used\n";
    for (const auto& s : summaries) {
        out << s.method << "," << s.time_limit_s << "," << s.feasible_runs << "," << s.total_runs << ","
            << s.mean_used << "," << s.min_used << "," << s.max_used << "\n";
    }
}

std::string bounds_report_text(const BoundsReport& r) {
    std::ostringstream out;
    out << "constraint graph: " << r.n_vertices << " vertices, " << r.n_edges << " edges, "
        << r.n_components << " component(s)\n";
    out << "clique lower bound on |A|: " << r.clique.size
        << (r.clique.confirmed ? " (confirmed clique)" : " (filter-only, unconfirmed)") << "\n";
    out << "MST span bound: " << r.mst.max_component << " index units";
    if (r.has_plan) out << " = " << r.mst_mhz << " MHz range";
    if (r.n_components > 1) out << " (max over components; per-component sum " << r.mst.sum << ")";
    out << "\n";
    out << "Hamiltonian span bound: " << r.ham.max_component << " index units";
    if (r.has_plan) out << " = " << r.ham_mhz << " MHz range";
    out << (r.ham.exact ? " (exact)" : " (MST fallback)");
    if (r.n_components > 1) out << " (max over components; per-component sum " << r.ham.sum << ")";
    out << "\n";
    out << "triangle inequality: completion " << (r.triangle_ok ? "ok" : "violated") << ", real edges "
        << (r.triangle_ok_edges ? "ok" : "violated") << "\n";
    if (r.range_certificate)
        out << "certificate: Hamiltonian bound equals the minimum achievable span\n";
    return out.str();
}

void save_bounds_csv(const std::string& path, const BoundsReport& r, std::uint64_t seed) {
    auto out = open_out(path);
    out.precision(10);
    out << "# " << kFileFormatVersion << " bounds seed=" << seed << "\n";
    out << "n_vertices,n_edges,n_components,clique_lb,clique_confirmed,mst_lb,mst_lb_mhz,ham_lb,"
           "ham_lb_mhz,ham_exact,triangle_ok,triangle_ok_edges,range_certificate\n";
    out << r.n_vertices << "," << r.n_edges << "," << r.n_components << "," << r.clique.size << ","
        << (r.clique.confirmed ? 1 : 0) << "," << r.mst.max_component << ","
        << (r.has_plan ? r.mst_mhz : 0.0) << "," << r.ham.max_component << ","
        << (r.has_plan ? r.ham_mhz : 0.0) << "," << (r.ham.exact ? 1 : 0) << ","
        << (r.triangle_ok ? 1 : 0) << "," << (r.triangle_ok_edges ? 1 : 0) << ","
        << (r.range_certificate ? 1 : 0) << "\n";
}

}  // namespace fap
