#include "srrw/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "srrw/csv.hpp"
#include "srrw/errors.hpp"

namespace srrw {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

long long parse_ll(const std::string& s, const std::string& context) {
    long long v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        throw ParseError(context + ": expected an integer, got '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& context) {
    std::uint64_t v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        throw ParseError(context + ": expected a nonnegative integer, got '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            parts.push_back(s.substr(pos));
            return parts;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
}

bool parse_onoff(const std::string& v, const std::string& context) {
    if (v == "on") return true;
    if (v == "off") return false;
    throw ParseError(context + ": expected on or off, got '" + v + "'");
}

void set_key(ExperimentConfig& cfg, const std::string& key, const std::string& value,
             std::size_t line_no) {
    const std::string where = "config line " + std::to_string(line_no) + ", " + key;
    if (key == "graph") {
        if (value.rfind("er:", 0) == 0) {
            auto parts = split(value.substr(3), ',');
            if (parts.size() != 2) throw ParseError(where + ": expected er:N,M");
            cfg.graph_source = ExperimentConfig::GraphSource::ErdosRenyi;
            cfg.er_n = parse_int(trim(parts[0]), where);
            cfg.er_m = parse_ll(trim(parts[1]), where);
            if (cfg.er_n < 2 || cfg.er_m < 1)
                throw ParseError(where + ": need N >= 2 and M >= 1");
            cfg.graph_path.clear();
        } else {
            cfg.graph_source = ExperimentConfig::GraphSource::File;
            cfg.graph_path = value;
            cfg.er_n = 0;
            cfg.er_m = 0;
        }
    } else if (key == "graph_seed") {
        cfg.graph_seed = parse_u64(value, where);
    } else if (key == "lcc") {
        cfg.lcc = parse_onoff(value, where);
    } else if (key == "kernel") {
        if (value == "srw") {
            cfg.kernel = ExperimentConfig::KernelKind::Srw;
            cfg.kernel_path.clear();
            cfg.kernel_mu_path.clear();
        } else if (value == "mhrw") {
            cfg.kernel = ExperimentConfig::KernelKind::Mhrw;
            cfg.kernel_path.clear();
            cfg.kernel_mu_path.clear();
        } else if (value.rfind("file:", 0) == 0) {
            auto parts = split(value.substr(5), ',');
            if (parts.size() != 2 || trim(parts[0]).empty() || trim(parts[1]).empty())
                throw ParseError(where + ": expected file:KERNEL.csv,MU.csv");
            cfg.kernel = ExperimentConfig::KernelKind::File;
            cfg.kernel_path = trim(parts[0]);
            cfg.kernel_mu_path = trim(parts[1]);
        } else {
            throw ParseError(where + ": expected srw, mhrw, or file:KERNEL.csv,MU.csv");
        }
    } else if (key == "target") {
        if (value == "uniform") {
            cfg.target = ExperimentConfig::TargetKind::Uniform;
            cfg.target_path.clear();
        } else if (value == "degree") {
            cfg.target = ExperimentConfig::TargetKind::Degree;
            cfg.target_path.clear();
        } else if (value.rfind("file:", 0) == 0 && value.size() > 5) {
            cfg.target = ExperimentConfig::TargetKind::File;
            cfg.target_path = value.substr(5);
        } else {
            throw ParseError(where + ": expected uniform, degree, or file:PATH");
        }
    } else if (key == "alpha") {
        std::istringstream ts(value);
        std::vector<AlphaSpec> specs;
        std::string token;
        while (ts >> token) specs.push_back(parse_alpha_spec(token));
        if (specs.empty()) throw ParseError(where + ": need at least one schedule token");
        cfg.alphas = std::move(specs);
    } else if (key == "n_max") {
        cfg.n_max = parse_ll(value, where);
        if (cfg.n_max < 0) throw ParseError(where + ": horizon must be nonnegative");
    } else if (key == "checkpoints") {
        if (value == "geometric") {
            cfg.checkpoint_kind = ExperimentConfig::CheckpointKind::Geometric;
            cfg.checkpoint_ratio = 1.2;
        } else if (value.rfind("geometric:", 0) == 0) {
            cfg.checkpoint_kind = ExperimentConfig::CheckpointKind::Geometric;
            cfg.checkpoint_ratio = parse_double(value.substr(10), where);
            if (!(cfg.checkpoint_ratio > 1.0))
                throw ParseError(where + ": ratio must exceed 1");
        } else if (value.rfind("list:", 0) == 0) {
            cfg.checkpoint_kind = ExperimentConfig::CheckpointKind::List;
            cfg.checkpoint_list.clear();
            for (const auto& part : split(value.substr(5), ',')) {
                const long long c = parse_ll(trim(part), where);
                if (c < 0 || (!cfg.checkpoint_list.empty() && c <= cfg.checkpoint_list.back()))
                    throw ParseError(where + ": checkpoints must be ascending and nonnegative");
                cfg.checkpoint_list.push_back(c);
            }
        } else {
            throw ParseError(where + ": expected geometric:RATIO or list:N0,N1,...");
        }
    } else if (key == "K") {
        cfg.K = parse_int(value, where);
        if (cfg.K < 1) throw ParseError(where + ": ensemble size must be positive");
    } else if (key == "seed") {
        cfg.seed = parse_u64(value, where);
    } else if (key == "truncation") {
        if (value == "off") {
            cfg.truncation = false;
            cfg.truncation_M = 0.0;
        } else {
            cfg.truncation_M = parse_double(value, where);
            if (!(cfg.truncation_M > 0.0))
                throw ParseError(where + ": M must be positive (or off)");
            cfg.truncation = true;
        }
    } else if (key == "restart") {
        if (value == "reuse")
            cfg.restart = RestartPolicy::ReuseInitial;
        else if (value == "dirichlet")
            cfg.restart = RestartPolicy::DirichletResample;
        else
            throw ParseError(where + ": expected reuse or dirichlet");
    } else if (key == "init") {
        if (value == "uniform") {
            cfg.init = ExperimentConfig::InitKind::Uniform;
            cfg.init_path.clear();
        } else if (value == "degree") {
            cfg.init = ExperimentConfig::InitKind::Degree;
            cfg.init_path.clear();
        } else if (value.rfind("file:", 0) == 0 && value.size() > 5) {
            cfg.init = ExperimentConfig::InitKind::File;
            cfg.init_path = value.substr(5);
        } else {
            throw ParseError(where + ": expected uniform, degree, or file:PATH");
        }
    } else if (key == "g") {
        if (value == "degree") {
            cfg.g = ExperimentConfig::TestFunction::Degree;
            cfg.g_path.clear();
        } else if (value.rfind("file:", 0) == 0 && value.size() > 5) {
            cfg.g = ExperimentConfig::TestFunction::File;
            cfg.g_path = value.substr(5);
        } else {
            throw ParseError(where + ": expected degree or file:PATH");
        }
    } else if (key == "start_node") {
        if (value == "random") {
            cfg.start_node = -1;
        } else {
            cfg.start_node = parse_int(value, where);
            if (cfg.start_node < 0) throw ParseError(where + ": expected random or a node id");
        }
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "ode_T") {
        cfg.ode_T = parse_double(value, where);
        if (!(cfg.ode_T > 0.0)) throw ParseError(where + ": horizon must be positive");
    } else if (key == "ode_dt") {
        cfg.ode_dt = parse_double(value, where);
        if (!(cfg.ode_dt > 0.0)) throw ParseError(where + ": step must be positive");
    } else if (key == "tvd") {
        if (value == "with-prior")
            cfg.prior_free_tvd = false;
        else if (value == "visits-only")
            cfg.prior_free_tvd = true;
        else
            throw ParseError(where + ": expected with-prior or visits-only");
    } else {
        throw ParseError("config line " + std::to_string(line_no) + ": unknown key '" +
                         key + "'");
    }
}

Eigen::VectorXd load_vector_csv(const std::string& path, int n, const std::string& context) {
    auto rows = read_csv(path, 2);
    if (static_cast<int>(rows.size()) != n)
        throw ParseError(context + ": expected " + std::to_string(n) + " entries, got " +
                         std::to_string(rows.size()));
    Eigen::VectorXd v(n);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const auto& r : rows) {
        const int i = parse_int(r[0], context);
        if (i < 0 || i >= n) throw ParseError(context + ": index out of range");
        if (seen[static_cast<std::size_t>(i)]++) throw ParseError(context + ": duplicate index");
        v[i] = parse_double(r[1], context);
    }
    return v;
}

} // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(line_no) +
                             ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ParseError("config line " + std::to_string(line_no) + ": empty key");
        set_key(cfg, key, value, line_no);
    }
    // Schedules are bound to a kernel later; reject bad parameters up front.
    for (const auto& spec : cfg.alphas) AlphaSchedule::make(spec, 2);
    return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "graph = ";
    if (cfg.graph_source == ExperimentConfig::GraphSource::ErdosRenyi)
        out << "er:" << cfg.er_n << ',' << cfg.er_m;
    else
        out << cfg.graph_path;
    out << '\n';
    out << "graph_seed = " << cfg.graph_seed << '\n';
    out << "lcc = " << (cfg.lcc ? "on" : "off") << '\n';
    out << "kernel = ";
    switch (cfg.kernel) {
        case ExperimentConfig::KernelKind::Srw: out << "srw"; break;
        case ExperimentConfig::KernelKind::Mhrw: out << "mhrw"; break;
        case ExperimentConfig::KernelKind::File:
            out << "file:" << cfg.kernel_path << ',' << cfg.kernel_mu_path;
            break;
    }
    out << '\n';
    out << "target = ";
    switch (cfg.target) {
        case ExperimentConfig::TargetKind::Uniform: out << "uniform"; break;
        case ExperimentConfig::TargetKind::Degree: out << "degree"; break;
        case ExperimentConfig::TargetKind::File: out << "file:" << cfg.target_path; break;
    }
    out << '\n';
    out << "alpha =";
    for (const auto& spec : cfg.alphas) out << ' ' << spec.label();
    out << '\n';
    out << "n_max = " << cfg.n_max << '\n';
    out << "checkpoints = ";
    if (cfg.checkpoint_kind == ExperimentConfig::CheckpointKind::Geometric) {
        out << "geometric:" << format_double(cfg.checkpoint_ratio);
    } else {
        out << "list:";
        for (std::size_t i = 0; i < cfg.checkpoint_list.size(); ++i)
            out << (i ? "," : "") << cfg.checkpoint_list[i];
    }
    out << '\n';
    out << "K = " << cfg.K << '\n';
    out << "seed = " << cfg.seed << '\n';
    out << "truncation = ";
    if (cfg.truncation)
        out << format_double(cfg.truncation_M);
    else
        out << "off";
    out << '\n';
    out << "restart = "
        << (cfg.restart == RestartPolicy::ReuseInitial ? "reuse" : "dirichlet") << '\n';
    out << "init = ";
    switch (cfg.init) {
        case ExperimentConfig::InitKind::Uniform: out << "uniform"; break;
        case ExperimentConfig::InitKind::Degree: out << "degree"; break;
        case ExperimentConfig::InitKind::File: out << "file:" << cfg.init_path; break;
    }
    out << '\n';
    out << "g = ";
    if (cfg.g == ExperimentConfig::TestFunction::Degree)
        out << "degree";
    else
        out << "file:" << cfg.g_path;
    out << '\n';
    out << "start_node = ";
    if (cfg.start_node < 0)
        out << "random";
    else
        out << cfg.start_node;
    out << '\n';
    out << "out = " << cfg.out << '\n';
    out << "ode_T = " << format_double(cfg.ode_T) << '\n';
    out << "ode_dt = " << format_double(cfg.ode_dt) << '\n';
    out << "tvd = " << (cfg.prior_free_tvd ? "visits-only" : "with-prior") << '\n';
    return out.str();
}

Materialized materialize(const ExperimentConfig& cfg) {
    Materialized m;
    if (cfg.kernel == ExperimentConfig::KernelKind::File) {
        m.kernel = load_kernel_csv(cfg.kernel_path, cfg.kernel_mu_path);
    } else {
        Graph g = [&] {
            if (cfg.graph_source == ExperimentConfig::GraphSource::ErdosRenyi)
                return erdos_renyi(cfg.er_n, cfg.er_m, cfg.graph_seed);
            if (cfg.graph_path.empty())
                throw ParseError("config: a graph is required for the srw/mhrw kernels");
            return load_edge_list_file(cfg.graph_path);
        }();
        if (cfg.lcc)
            g = largest_connected_component(g);
        else if (!g.connected())
            throw DomainError("config: graph is disconnected and lcc is off");
        m.graph = std::move(g);
        if (cfg.kernel == ExperimentConfig::KernelKind::Srw) {
            m.kernel = build_srw(*m.graph);
        } else {
            Eigen::VectorXd target;
            switch (cfg.target) {
                case ExperimentConfig::TargetKind::Uniform:
                    break; // empty means uniform
                case ExperimentConfig::TargetKind::Degree:
                    target.resize(m.graph->node_count());
                    for (int i = 0; i < m.graph->node_count(); ++i)
                        target[i] = m.graph->degree(i);
                    break;
                case ExperimentConfig::TargetKind::File:
                    target = load_vector_csv(cfg.target_path, m.graph->node_count(),
                                             "target file");
                    break;
            }
            m.kernel = build_mhrw(*m.graph, target);
        }
    }

    const int n = m.kernel.node_count();
    if (cfg.g == ExperimentConfig::TestFunction::Degree) {
        if (!m.graph)
            throw ParseError("config: g = degree needs a graph; use g = file:PATH");
        m.g.resize(n);
        for (int i = 0; i < n; ++i) m.g[i] = m.graph->degree(i);
    } else {
        m.g = load_vector_csv(cfg.g_path, n, "g file");
    }

    switch (cfg.init) {
        case ExperimentConfig::InitKind::Uniform:
            m.init = init_measure(n, InitMode::UniformFake);
            break;
        case ExperimentConfig::InitKind::Degree:
            if (!m.graph)
                throw ParseError("config: init = degree needs a graph");
            m.init = init_measure(n, InitMode::DegreeFake, &*m.graph);
            break;
        case ExperimentConfig::InitKind::File: {
            const Eigen::VectorXd nu = load_vector_csv(cfg.init_path, n, "init file");
            m.init = init_measure(n, InitMode::Explicit, nullptr, &nu);
            break;
        }
    }

    if (cfg.start_node >= n) throw DomainError("config: start node out of range");
    return m;
}

std::vector<long long> checkpoints_of(const ExperimentConfig& cfg) {
    if (cfg.checkpoint_kind == ExperimentConfig::CheckpointKind::Geometric)
        return geometric_checkpoints(cfg.n_max, cfg.checkpoint_ratio);
    for (long long c : cfg.checkpoint_list)
        if (c > cfg.n_max)
            throw DomainError("config: checkpoint beyond the horizon");
    return cfg.checkpoint_list;
}

SimConfig sim_config_of(const ExperimentConfig& cfg, const Materialized& m,
                        const AlphaSpec& spec) {
    SimConfig s;
    s.schedule = AlphaSchedule::make(spec, m.kernel.node_count());
    s.n_max = cfg.n_max;
    s.checkpoints = checkpoints_of(cfg);
    s.init = m.init;
    s.start_node = cfg.start_node;
    s.truncation = cfg.truncation;
    s.truncation_M = cfg.truncation_M;
    s.restart = cfg.restart;
    s.g = m.g;
    s.prior_free_tvd = cfg.prior_free_tvd;
    return s;
}

} // namespace srrw
