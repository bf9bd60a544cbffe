// sdg verify  --suite S --groupoid G --trials T --seed N --format text|json [--mutation M]
// sdg bracket --groupoid pair:dim=N --x "<field>" --y "<field>"
//
// Exit codes: 0 success, 1 law failure, 2 usage or configuration error.

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "sdg/harness/suites.hpp"
#include "sdg/vf_parser.hpp"

namespace {

constexpr int kUsage = 2;

std::size_t pair_dimension(const std::string& spec) {
  const std::string prefix = "pair:dim=";
  if (spec.rfind(prefix, 0) != 0) throw sdg::harness::ConfigError("bracket needs --groupoid pair:dim=N");
  std::string rest = spec.substr(prefix.size());
  if (const auto colon = rest.find(':'); colon != std::string::npos) {
    sdg::harness::parse_groupoid_spec(spec);  // validates the deg part
    rest = rest.substr(0, colon);
  }
  const std::size_t n = sdg::harness::detail::parse_count(rest, "dimension");
  if (n < 1 || n > 8) throw sdg::harness::ConfigError("dimension must be between 1 and 8");
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the Lie algebra of a microlinear groupoid"};
  app.require_subcommand(1);

  std::string suite = "all", groupoid = "pair:dim=3:deg=3", format = "text", mutation = "none";
  std::size_t trials = 25;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suite, "all|flows|module|bracket|liederiv|strongdiff|jacobi2|oracle")
      ->capture_default_str();
  verify->add_option("--groupoid", groupoid, "pair:dim=N:deg=D or gauge:base=M:k=K")->capture_default_str();
  verify->add_option("--trials", trials, "cases per law")->capture_default_str();
  verify->add_option("--seed", seed, "base seed")->capture_default_str();
  verify->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  verify->add_option("--mutation", mutation, "none or sign-flip-bracket (negates the bracket under test)")
      ->capture_default_str();

  std::string bgroupoid, x, y;
  auto* br = app.add_subcommand("bracket", "print the bracket of two polynomial vector fields");
  br->add_option("--groupoid", bgroupoid, "pair:dim=N")->required();
  br->add_option("--x", x, "first field, components separated by ';'")->required();
  br->add_option("--y", y, "second field")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  if (*verify) {
    sdg::harness::SuiteConfig cfg;
    try {
      cfg.suite = suite;
      cfg.groupoid = sdg::harness::parse_groupoid_spec(groupoid);
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.mutation = sdg::harness::parse_mutation(mutation);
      sdg::harness::validate(cfg);
    } catch (const sdg::harness::ConfigError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kUsage;
    }
    const auto report = sdg::harness::run_suite(cfg);
    if (format == "json")
      std::cout << sdg::harness::to_json(report).dump(2) << '\n';
    else
      std::cout << sdg::harness::to_text(report);
    return report.ok() ? 0 : 1;
  }

  try {
    const std::size_t n = pair_dimension(bgroupoid);
    const sdg::PairGroupoid g(n);
    const sdg::AGSection<sdg::PairGroupoid> X(g, sdg::parse_vector_field(x, n));
    const sdg::AGSection<sdg::PairGroupoid> Y(g, sdg::parse_vector_field(y, n));
    std::cout << sdg::to_string(sdg::bracket(X, Y)) << '\n';
  } catch (const sdg::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const sdg::harness::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return 0;
}
