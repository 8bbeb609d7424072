#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace srrw {

// Repellence-exponent schedule alpha(n), evaluated at the number of completed
// steps. Supported kinds:
//   constant  fixed alpha
//   sigmoid1  alpha(n) = 1 / (a + exp(-n + b N));  saturates at 1/a
//   sigmoid2  alpha(n) = n / (a + b n);            saturates at 1/b
//   table     piecewise constant over breakpoints (n_k, alpha_k)
// Every evaluated value must stay above -0.5; the sigmoid kinds are
// nondecreasing by construction. sigmoid1 depends on the graph size N, which
// is bound when the schedule is materialized.

struct AlphaSpec {
    enum class Kind { Constant, Sigmoid1, Sigmoid2, Table };
    Kind kind = Kind::Constant;
    double alpha = 1.0;     // Constant
    double a = 0.0;         // sigmoid parameter
    double b = 0.0;         // sigmoid parameter
    std::vector<std::pair<long long, double>> table;

    // Canonical token, e.g. "1", "sigmoid1(0.5,0.25)", "table(0:0,100:1)".
    std::string label() const;
};

// Parses a schedule token (the label grammar above). Validation happens at
// materialization. Throws ParseError on malformed tokens.
AlphaSpec parse_alpha_spec(const std::string& token);

class AlphaSchedule {
public:
    // Binds a spec to a graph of size n. Throws DomainError when parameters
    // are out of range or some alpha(n) could reach -0.5.
    static AlphaSchedule make(const AlphaSpec& spec, int graph_n);
    static AlphaSchedule constant(double alpha);

    double at(long long n) const;
    bool is_constant() const { return spec_.kind == AlphaSpec::Kind::Constant; }
    // Saturation value (largest value ever returned, +inf when unbounded).
    double cap() const;
    const AlphaSpec& spec() const { return spec_; }

private:
    AlphaSpec spec_;
    int graph_n_ = 0;
};

} // namespace srrw
