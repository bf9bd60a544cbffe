#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sdg::harness {

/// Bad suite id, groupoid spec or bound. Raised before anything runs.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::array<std::string_view, 7> kSuites = {"flows",      "module",  "bracket", "liederiv",
                                                            "strongdiff", "jacobi2", "oracle"};

inline constexpr long kCoefficientBound = 3;

struct GroupoidSpec {
  enum class Kind { pair, gauge } kind = Kind::pair;
  std::size_t dimension = 0;  // pair
  unsigned degree = 0;        // pair
  std::size_t base = 0;       // gauge
  std::size_t k = 0;          // gauge

  std::string to_string() const {
    if (kind == Kind::pair) return "pair:dim=" + std::to_string(dimension) + ":deg=" + std::to_string(degree);
    return "gauge:base=" + std::to_string(base) + ":k=" + std::to_string(k);
  }
};

enum class Mutation { none, sign_flip_bracket };

struct SuiteConfig {
  std::string suite = "all";
  GroupoidSpec groupoid;
  std::size_t trials = 25;
  std::uint64_t seed = 0;
  Mutation mutation = Mutation::none;
};

namespace detail {

inline std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("bad " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

/// Splits "key=value" and checks the key.
inline std::string_view value_of(std::string_view field, std::string_view key) {
  const auto eq = field.find('=');
  if (eq == std::string_view::npos || field.substr(0, eq) != key)
    throw ConfigError("expected '" + std::string(key) + "=<n>', got '" + std::string(field) + "'");
  return field.substr(eq + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto at = s.find(sep);
    out.push_back(s.substr(0, at));
    if (at == std::string_view::npos) return out;
    s.remove_prefix(at + 1);
  }
}

}  // namespace detail

/// "pair:dim=N:deg=D" (N <= 3, D <= 3) or "gauge:base=M:k=K" (M <= 4, K <= 3).
inline GroupoidSpec parse_groupoid_spec(std::string_view text) {
  const auto parts = detail::split(text, ':');
  GroupoidSpec g;
  if (parts.size() == 3 && parts[0] == "pair") {
    g.kind = GroupoidSpec::Kind::pair;
    g.dimension = detail::parse_count(detail::value_of(parts[1], "dim"), "dimension");
    g.degree = static_cast<unsigned>(detail::parse_count(detail::value_of(parts[2], "deg"), "degree"));
    if (g.dimension < 1 || g.dimension > 3) throw ConfigError("pair dimension must be between 1 and 3");
    if (g.degree > 3) throw ConfigError("field degree must be at most 3");
    return g;
  }
  if (parts.size() == 3 && parts[0] == "gauge") {
    g.kind = GroupoidSpec::Kind::gauge;
    g.base = detail::parse_count(detail::value_of(parts[1], "base"), "base size");
    g.k = detail::parse_count(detail::value_of(parts[2], "k"), "matrix size");
    if (g.base < 1 || g.base > 4) throw ConfigError("gauge base size must be between 1 and 4");
    if (g.k < 1 || g.k > 3) throw ConfigError("gauge matrix size must be between 1 and 3");
    return g;
  }
  throw ConfigError("groupoid spec must be 'pair:dim=N:deg=D' or 'gauge:base=M:k=K', got '" + std::string(text) + "'");
}

inline bool is_known_suite(std::string_view id) {
  if (id == "all") return true;
  for (auto s : kSuites)
    if (s == id) return true;
  return false;
}

inline void validate(const SuiteConfig& c) {
  if (!is_known_suite(c.suite)) throw ConfigError("unknown suite '" + c.suite + "'");
  const auto& g = c.groupoid;
  if (g.kind == GroupoidSpec::Kind::pair) {
    if (g.dimension < 1 || g.dimension > 3 || g.degree > 3) throw ConfigError("pair spec out of bounds");
  } else if (g.base < 1 || g.base > 4 || g.k < 1 || g.k > 3) {
    throw ConfigError("gauge spec out of bounds");
  }
  if (c.trials > 10000) throw ConfigError("at most 10000 trials per law");
}

inline Mutation parse_mutation(std::string_view text) {
  if (text == "none") return Mutation::none;
  if (text == "sign-flip-bracket") return Mutation::sign_flip_bracket;
  throw ConfigError("unknown mutation '" + std::string(text) + "'");
}

inline std::string to_string(Mutation m) { return m == Mutation::none ? "none" : "sign-flip-bracket"; }

}  // namespace sdg::harness
