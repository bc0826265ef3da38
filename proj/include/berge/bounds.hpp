#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "berge/constructions.hpp"
#include "berge/core.hpp"
#include "berge/error.hpp"
#include "berge/generate.hpp"

namespace berge {

using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Exact Turán-number oracles

struct OracleConfig {
    int limit = 9; // largest n searched
    GenerationConfig generation;
};

namespace detail {

inline void check_oracle_limit(int n, const OracleConfig& cfg, const char* what) {
    if (n < 0) throw DomainError(std::string(what) + ": negative n");
    if (n > cfg.limit) {
        throw DomainError(std::string(what) + ": n=" + std::to_string(n) + " exceeds the configured limit " +
                          std::to_string(cfg.limit));
    }
}

} // namespace detail

/// ex(n, F) by isomorph-free generation of the F-free graphs on n vertices.
inline std::uint64_t exact_graph_turan(int n, const Graph& f, const OracleConfig& cfg = {}) {
    detail::check_oracle_limit(n, cfg, "exact_graph_turan");
    auto accept = [&](const Hypergraph& child, std::size_t) { return !contains_subgraph(as_graph(child), f); };
    auto result = generate_levels(n, 2, accept, cfg.generation);
    if (!result.exact) throw BudgetExhausted("exact_graph_turan: node budget exhausted");
    return result.level_sizes.size() - 1;
}

/// ex(n, H, F): the most copies of H in an F-free graph on n vertices.
inline std::uint64_t exact_generalized_turan(int n, const Graph& h, const Graph& f, const OracleConfig& cfg = {}) {
    detail::check_oracle_limit(n, cfg, "exact_generalized_turan");
    auto accept = [&](const Hypergraph& child, std::size_t) { return !contains_subgraph(as_graph(child), f); };
    std::uint64_t best = 0;
    auto visit = [&](std::size_t, const GenerationLevel& level) {
        for (const auto& rep : level.reps) best = std::max(best, count_subgraphs(as_graph(rep), h));
    };
    auto result = generate_levels(n, 2, accept, cfg.generation, visit);
    if (!result.exact) throw BudgetExhausted("exact_generalized_turan: node budget exhausted");
    return best;
}

// ---------------------------------------------------------------------------
// Bound specifications

enum class Theorem {
    gkl_path,
    trees_es,
    tree_delta,
    tree_prop35,
    star,
    k2t,
    c2k,
    theta,
    forest_deletion,
    deletion_lemma,
    cliques,
    sandwich_lower,
    sandwich_upper,
    cor_3_uniform,
};

inline const std::vector<std::pair<Theorem, std::string>>& theorem_names() {
    static const std::vector<std::pair<Theorem, std::string>> names{
        {Theorem::gkl_path, "gkl-path"},
        {Theorem::trees_es, "trees-es"},
        {Theorem::tree_delta, "tree-delta"},
        {Theorem::tree_prop35, "tree-prop35"},
        {Theorem::star, "star"},
        {Theorem::k2t, "k2t"},
        {Theorem::c2k, "c2k"},
        {Theorem::theta, "theta"},
        {Theorem::forest_deletion, "forest-deletion"},
        {Theorem::deletion_lemma, "deletion-lemma"},
        {Theorem::cliques, "cliques"},
        {Theorem::sandwich_lower, "sandwich-lower"},
        {Theorem::sandwich_upper, "sandwich-upper"},
        {Theorem::cor_3_uniform, "cor-3-uniform"},
    };
    return names;
}

inline std::string to_string(Theorem t) {
    for (const auto& [id, name] : theorem_names()) {
        if (id == t) return name;
    }
    return "?";
}

inline Theorem parse_theorem(const std::string& name) {
    for (const auto& [id, n] : theorem_names()) {
        if (n == name) return id;
    }
    throw DomainError("bound: unknown theorem '" + name + "'");
}

/// An extremal number a theorem consumes: given outright, or computed by the
/// exact oracle for the pattern. Which number an oracle computes depends on the
/// slot (ex(n,F) or ex(n,K_r,F)).
struct ExInput {
    std::optional<Rational> value;
    std::optional<Graph> oracle;
    std::string oracle_name;
};

/// Parameters by name: n, k, r, t, delta, c.
struct BoundSpec {
    Theorem theorem = Theorem::gkl_path;
    std::map<std::string, Rational> params;
    std::vector<ExInput> ex_inputs;
    OracleConfig oracle;
};

enum class Assumption { erdos_sos };
enum class Direction { upper, lower, exact };

inline const char* to_string(Assumption) { return "ErdosSosForAllTrees"; }
inline const char* to_string(Direction d) {
    switch (d) {
    case Direction::upper: return "upper";
    case Direction::lower: return "lower";
    case Direction::exact: return "exact";
    }
    return "?";
}

/// value, or for asymptotic bounds value * sqrt(sqrt_factor) * n^exponent.
struct BoundValue {
    Rational value;
    std::optional<Rational> sqrt_factor;
    std::optional<std::string> exponent;
    bool asymptotic = false;
    std::set<Assumption> assumptions;
    Direction direction = Direction::upper;
    std::string applies_to;

    bool operator==(const BoundValue&) const = default;
};

namespace detail {

inline Rational rational_binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    boost::multiprecision::cpp_int out = 1;
    for (long long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return Rational(out);
}

inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    auto integer = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos ||
            s.find('-', 1) != std::string::npos || s == "-") {
            throw DomainError("bound: '" + text + "' is not a rational number");
        }
        return boost::multiprecision::cpp_int(s);
    };
    if (slash == std::string::npos) return Rational(integer(text));
    const auto den = integer(text.substr(slash + 1));
    if (den == 0) throw DomainError("bound: zero denominator in '" + text + "'");
    return Rational(integer(text.substr(0, slash)), den);
}

inline std::string show(const Rational& x) { return x.str(); }

class Evaluator {
public:
    explicit Evaluator(const BoundSpec& spec) : spec_(spec) {}

    long long integer(const std::string& name) const {
        const Rational x = rational(name);
        if (boost::multiprecision::denominator(x) != 1) throw DomainError("bound: parameter " + name + " must be an integer");
        return static_cast<long long>(boost::multiprecision::numerator(x));
    }

    Rational rational(const std::string& name) const {
        auto it = spec_.params.find(name);
        if (it == spec_.params.end()) {
            throw DomainError("bound " + to_string(spec_.theorem) + ": missing parameter " + name);
        }
        return it->second;
    }

    /// Slot `i` of the ex inputs; oracle slots compute ex(n,F), or ex(n,K_r,F) when `clique_count`.
    Rational ex(std::size_t i, bool clique_count = false) const {
        if (spec_.ex_inputs.size() <= i) {
            throw DomainError("bound " + to_string(spec_.theorem) + ": missing exInput #" + std::to_string(i + 1));
        }
        const auto& in = spec_.ex_inputs[i];
        if (in.value) {
            if (*in.value < 0) throw DomainError("bound: exInput must be non-negative");
            return *in.value;
        }
        if (!in.oracle) throw DomainError("bound: empty exInput");
        const int n = static_cast<int>(integer("n"));
        if (clique_count) {
            const int r = static_cast<int>(integer("r"));
            return Rational(exact_generalized_turan(n, build_pattern({PatternKind::clique, {r}, std::nullopt}),
                                                    *in.oracle, spec_.oracle));
        }
        return Rational(exact_graph_turan(n, *in.oracle, spec_.oracle));
    }

    std::string pattern_name(std::size_t i, const std::string& fallback) const {
        if (spec_.ex_inputs.size() > i && !spec_.ex_inputs[i].oracle_name.empty()) return spec_.ex_inputs[i].oracle_name;
        return fallback;
    }

    [[noreturn]] void outside(const std::string& why) const {
        throw DomainError("bound " + to_string(spec_.theorem) + ": parameters outside every arm (" + why + ")");
    }

    BoundValue evaluate() const {
        BoundValue out;
        const auto ns = [&] { return std::to_string(integer("n")); };
        const auto rs = [&] { return std::to_string(integer("r")); };
        auto ex_r = [&](const std::string& f) { return "ex_" + rs() + "(" + ns() + ", Berge-" + f + ")"; };
        switch (spec_.theorem) {
        case Theorem::gkl_path: {
            const long long k = integer("k"), r = integer("r");
            const Rational n = integer("n");
            if (k > r + 1 && r + 1 > 3) {
                out.value = n / k * rational_binomial(k, r);
            } else if (k == r + 1 && k > 2) {
                out.value = n;
            } else if (r >= k && k > 2) {
                out.value = n * (k - 1) / (r + 1);
            } else {
                outside("needs k > r+1 > 3, k = r+1 > 2 or r >= k > 2");
            }
            out.applies_to = ex_r("P_" + std::to_string(k));
            break;
        }
        case Theorem::trees_es: {
            const long long k = integer("k"), r = integer("r");
            const Rational n = integer("n");
            if (k > r + 1 && r + 1 > 3) {
                out.value = n / k * rational_binomial(k, r);
            } else if (k <= r + 1 && k >= 1) {
                out.value = Rational(k - 1) * n / 2;
            } else {
                outside("needs k > r+1 > 3 or k <= r+1");
            }
            out.assumptions.insert(Assumption::erdos_sos);
            out.applies_to = ex_r("T") + ", T a tree with " + std::to_string(k) + " edges";
            break;
        }
        case Theorem::tree_delta: {
            const long long k = integer("k"), r = integer("r"), delta = integer("delta");
            if (k > r || k < 1 || delta < 1 || delta > k) outside("needs 1 <= delta <= k <= r");
            out.value = Rational(delta - 1) * integer("n");
            out.applies_to = ex_r("T") + ", T a tree with " + std::to_string(k) + " edges and maximum degree " +
                             std::to_string(delta);
            break;
        }
        case Theorem::tree_prop35: {
            const long long k = integer("k"), r = integer("r");
            const Rational n = integer("n");
            if (k < 1 || r < 2) outside("needs k >= 1 and r >= 2");
            if (k > r) {
                out.value = Rational(2 * (r - 1)) / k * rational_binomial(k, r) * n;
            } else {
                out.value = Rational(k - 1) * n;
            }
            out.applies_to = ex_r("T") + ", T a tree with " + std::to_string(k) + " edges";
            break;
        }
        case Theorem::star: {
            const long long k = integer("k"), r = integer("r");
            const Rational n = integer("n");
            if (k < 1 || r < 2) outside("needs k >= 1 and r >= 2");
            if (k > r + 1) {
                out.value = n / k * rational_binomial(k, r);
            } else {
                const Rational q = n * (k - 1) / r;
                out.value = Rational(boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q));
            }
            out.applies_to = ex_r("S_" + std::to_string(k));
            break;
        }
        case Theorem::k2t: {
            const long long t = integer("t"), r = integer("r");
            if (t < 2 || r < 2) outside("needs t >= 2 and r >= 2");
            if (t >= r + 1) {
                out.value = rational_binomial(t, r - 1) / (r * t);
            } else {
                out.value = Rational(1, 2);
            }
            out.sqrt_factor = Rational(t - 1);
            out.exponent = "3/2";
            out.asymptotic = true;
            out.applies_to = "ex_" + rs() + "(n, Berge-K_{2," + std::to_string(t) + "}) up to a (1+o(1)) factor";
            break;
        }
        case Theorem::c2k: {
            const long long k = integer("k"), r = integer("r");
            if (r != 3 || k < 3) outside("needs r = 3 and k >= 3");
            out.value = Rational(2 * k - 3, 3) * ex(0);
            out.applies_to = ex_r("C_" + std::to_string(2 * k));
            break;
        }
        case Theorem::theta: {
            const long long k = integer("k"), t = integer("t"), r = integer("r");
            if (k < 2 || t < 2 || r < 2) outside("needs k, t, r >= 2");
            const long long m = (k - 1) * t;
            Rational coef;
            if (m > r) {
                coef = Rational(2, r * (r - 1)) * rational_binomial(m - 1, r - 2);
            } else if (m == r) {
                coef = Rational(m - 1, m);
            } else {
                coef = Rational(2 * (t - 1), r);
            }
            out.value = coef * ex(0);
            out.applies_to = ex_r("Theta_{" + std::to_string(k) + "," + std::to_string(t) + "}");
            break;
        }
        case Theorem::forest_deletion: {
            const long long k = integer("k"), r = integer("r");
            if (r < 3 || k < 1) outside("needs r >= 3 and k >= 1");
            Rational coef;
            if (k > r + 1) {
                coef = Rational(4 * (r - 2), (r - 1) * r) * rational_binomial(k - 3, r - 2);
            } else if (2 * k > r + 6) {
                coef = Rational(2 * (k - 3), r);
            } else {
                coef = 1;
            }
            out.value = coef * ex(0);
            out.applies_to = ex_r(pattern_name(0, "F")) + ", F on " + std::to_string(k) +
                             " vertices with a vertex whose deletion leaves a forest";
            break;
        }
        case Theorem::deletion_lemma: {
            const long long r = integer("r");
            const Rational c = rational("c");
            if (r < 2 || c < 0) outside("needs r >= 2 and c >= 0");
            out.value = std::max(Rational(2) * c / r, Rational(1)) * ex(0);
            out.applies_to = ex_r(pattern_name(0, "F")) + " given ex(n, K_{r-1}, F') <= c n";
            break;
        }
        case Theorem::cliques: {
            const long long k = integer("k"), r = integer("r"), n = integer("n");
            if (k < 2 || r < 2 || n < 0 || n > 4096) outside("needs k >= 2, r >= 2 and 0 <= n <= 4096");
            const Graph t = turan_graph(static_cast<int>(n), static_cast<int>(k - 1));
            out.value = std::max(Rational(t.size()), Rational(count_cliques(t, static_cast<int>(r))));
            out.applies_to = ex_r("K_" + std::to_string(k));
            break;
        }
        case Theorem::sandwich_lower: {
            integer("r");
            out.value = ex(0, true);
            out.direction = Direction::lower;
            out.applies_to = ex_r(pattern_name(0, "F"));
            break;
        }
        case Theorem::sandwich_upper: {
            integer("r");
            out.value = ex(0, true) + ex(1);
            out.applies_to = ex_r(pattern_name(0, "F"));
            break;
        }
        case Theorem::cor_3_uniform: {
            const long long k = integer("k"), n = integer("n");
            if (k < 4 || n < 1 || n > 4096) outside("needs k >= 4 and 1 <= n <= 4096");
            if (k >= 6 || n >= 6) {
                out.value = Rational(turan_hypergraph_size(static_cast<int>(n), static_cast<int>(k - 1), 3));
            } else if (n <= 4) {
                out.value = rational_binomial(n, 3);
            } else {
                out.value = k == 4 ? 5 : 9;
            }
            out.direction = Direction::exact;
            out.applies_to = "ex_3(" + ns() + ", Berge-K_" + std::to_string(k) + ")";
            break;
        }
        }
        if (out.value < 0) throw std::logic_error("bound: negative value");
        return out;
    }

private:
    const BoundSpec& spec_;
};

} // namespace detail

/// Exact value of the named bound; DomainError when the parameters fall outside
/// every arm of the theorem or a required input is missing.
inline BoundValue evaluate(const BoundSpec& spec) { return detail::Evaluator(spec).evaluate(); }

/// The value as a finite number, or nullopt for asymptotic descriptors.
inline std::optional<Rational> finite_value(const BoundValue& b) {
    if (b.asymptotic) return std::nullopt;
    return b.value;
}

inline Rational floor_of(const Rational& x) {
    using boost::multiprecision::cpp_int;
    cpp_int q = boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
    if (x < 0 && Rational(q) != x) q -= 1;
    return Rational(q);
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline Rational rational_from_json(const nlohmann::json& j, const std::string& what) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw DomainError("bound: " + what + " must be an integer or a rational string");
}

inline ExInput ex_input_from_json(const nlohmann::json& j) {
    ExInput in;
    if (j.is_object()) {
        if (!j.contains("oracle") || !j["oracle"].is_string()) throw DomainError("bound: exInput object needs an oracle pattern");
        in.oracle_name = j["oracle"].get<std::string>();
        in.oracle = parse_pattern(in.oracle_name);
    } else {
        in.value = rational_from_json(j, "exInput");
    }
    return in;
}

} // namespace detail

/// {"theorem": name, "params": {...}, "exInput": value | {"oracle": pattern} | [ ... ]}
inline BoundSpec bound_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("theorem") || !j["theorem"].is_string()) {
        throw DomainError("bound: spec must be an object with a theorem name");
    }
    BoundSpec spec;
    spec.theorem = parse_theorem(j["theorem"].get<std::string>());
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw DomainError("bound: params must be an object");
        for (const auto& [name, value] : j["params"].items()) {
            spec.params[name] = detail::rational_from_json(value, "parameter " + name);
        }
    }
    if (j.contains("exInput")) {
        const auto& x = j["exInput"];
        if (x.is_array()) {
            for (const auto& item : x) spec.ex_inputs.push_back(detail::ex_input_from_json(item));
        } else {
            spec.ex_inputs.push_back(detail::ex_input_from_json(x));
        }
    }
    return spec;
}

inline nlohmann::json to_json(const BoundValue& b) {
    nlohmann::json j;
    j["value"] = detail::show(b.value);
    j["direction"] = to_string(b.direction);
    j["asymptotic"] = b.asymptotic;
    if (b.sqrt_factor) j["sqrtFactor"] = detail::show(*b.sqrt_factor);
    if (b.exponent) j["exponent"] = *b.exponent;
    j["assumptions"] = nlohmann::json::array();
    for (auto a : b.assumptions) j["assumptions"].push_back(to_string(a));
    j["appliesTo"] = b.applies_to;
    return j;
}

} // namespace berge
