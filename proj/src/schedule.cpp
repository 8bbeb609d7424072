#include "srrw/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srrw/csv.hpp"
#include "srrw/errors.hpp"
#include "srrw/srrw_kernel.hpp"

namespace srrw {

std::string AlphaSpec::label() const {
    switch (kind) {
        case Kind::Constant:
            return format_double(alpha);
        case Kind::Sigmoid1:
            return "sigmoid1(" + format_double(a) + "," + format_double(b) + ")";
        case Kind::Sigmoid2:
            return "sigmoid2(" + format_double(a) + "," + format_double(b) + ")";
        case Kind::Table: {
            std::string s = "table(";
            for (std::size_t i = 0; i < table.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(table[i].first) + ":" + format_double(table[i].second);
            }
            return s + ")";
        }
    }
    return {};
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t p = s.find(sep, start);
        if (p == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, p - start));
        start = p + 1;
    }
}

} // namespace

AlphaSpec parse_alpha_spec(const std::string& token) {
    AlphaSpec spec;
    const auto open = token.find('(');
    if (open == std::string::npos) {
        spec.kind = AlphaSpec::Kind::Constant;
        spec.alpha = parse_double(token, "alpha spec");
        return spec;
    }
    if (token.back() != ')') throw ParseError("alpha spec: missing ')': " + token);
    const std::string name = token.substr(0, open);
    const std::string args = token.substr(open + 1, token.size() - open - 2);
    if (name == "sigmoid1" || name == "sigmoid2") {
        auto parts = split(args, ',');
        if (parts.size() != 2)
            throw ParseError("alpha spec: " + name + " takes two parameters");
        spec.kind = name == "sigmoid1" ? AlphaSpec::Kind::Sigmoid1 : AlphaSpec::Kind::Sigmoid2;
        spec.a = parse_double(parts[0], "alpha spec");
        spec.b = parse_double(parts[1], "alpha spec");
        return spec;
    }
    if (name == "table") {
        for (const auto& part : split(args, ',')) {
            auto kv = split(part, ':');
            if (kv.size() != 2) throw ParseError("alpha spec: table entries are n:alpha");
            long long n = 0;
            try {
                n = std::stoll(kv[0]);
            } catch (const std::exception&) {
                throw ParseError("alpha spec: bad table breakpoint: " + kv[0]);
            }
            spec.table.emplace_back(n, parse_double(kv[1], "alpha spec"));
        }
        spec.kind = AlphaSpec::Kind::Table;
        return spec;
    }
    throw ParseError("alpha spec: unknown schedule kind: " + name);
}

AlphaSchedule AlphaSchedule::make(const AlphaSpec& spec, int graph_n) {
    AlphaSchedule s;
    s.spec_ = spec;
    s.graph_n_ = graph_n;
    switch (spec.kind) {
        case AlphaSpec::Kind::Constant:
            validate_alpha(spec.alpha);
            break;
        case AlphaSpec::Kind::Sigmoid1:
            if (!(spec.a > 0.0) || spec.b < 0.0 || graph_n <= 0)
                throw DomainError("sigmoid1 schedule: requires a > 0, b >= 0");
            break;
        case AlphaSpec::Kind::Sigmoid2:
            if (!(spec.a > 0.0) || spec.b < 0.0)
                throw DomainError("sigmoid2 schedule: requires a > 0, b >= 0");
            break;
        case AlphaSpec::Kind::Table: {
            if (spec.table.empty()) throw DomainError("table schedule: no breakpoints");
            long long prev = std::numeric_limits<long long>::min();
            for (const auto& [n, alpha] : spec.table) {
                if (n <= prev || n < 0)
                    throw DomainError("table schedule: breakpoints must be ascending and "
                                      "nonnegative");
                validate_alpha(alpha);
                prev = n;
            }
            break;
        }
    }
    return s;
}

AlphaSchedule AlphaSchedule::constant(double alpha) {
    AlphaSpec spec;
    spec.kind = AlphaSpec::Kind::Constant;
    spec.alpha = alpha;
    return make(spec, 1);
}

double AlphaSchedule::at(long long n) const {
    switch (spec_.kind) {
        case AlphaSpec::Kind::Constant:
            return spec_.alpha;
        case AlphaSpec::Kind::Sigmoid1:
            return 1.0 / (spec_.a + std::exp(-static_cast<double>(n) +
                                             spec_.b * static_cast<double>(graph_n_)));
        case AlphaSpec::Kind::Sigmoid2:
            return n == 0 ? 0.0
                          : static_cast<double>(n) /
                                (spec_.a + spec_.b * static_cast<double>(n));
        case AlphaSpec::Kind::Table: {
            auto it = std::upper_bound(
                spec_.table.begin(), spec_.table.end(), n,
                [](long long v, const auto& e) { return v < e.first; });
            if (it == spec_.table.begin()) return it->second;
            return std::prev(it)->second;
        }
    }
    return 0.0;
}

double AlphaSchedule::cap() const {
    switch (spec_.kind) {
        case AlphaSpec::Kind::Constant:
            return spec_.alpha;
        case AlphaSpec::Kind::Sigmoid1:
            return 1.0 / spec_.a;
        case AlphaSpec::Kind::Sigmoid2:
            return spec_.b > 0.0 ? 1.0 / spec_.b
                                 : std::numeric_limits<double>::infinity();
        case AlphaSpec::Kind::Table: {
            double m = -0.5;
            for (const auto& [n, alpha] : spec_.table) m = std::max(m, alpha);
            return m;
        }
    }
    return 0.0;
}

} // namespace srrw
