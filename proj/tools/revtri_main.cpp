#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "revtri/cli.hpp"
#include "revtri/errors.hpp"

namespace {

using revtri::cli::ParamMap;

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw revtri::InputError(what + ": '" + item + "' is not a number");
    }
  }
  if (values.empty()) throw revtri::InputError(what + ": empty list");
  return values;
}

// --param key=v or key=v1,v2,...
ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw revtri::InputError("--param expects key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    out[key] = parse_list(item.substr(eq + 1), "--param " + key);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reverse triangle inequality certificates in C^d"};
  app.require_subcommand(1);

  std::string input, grid, output, theorem, norms;
  std::vector<std::string> params;
  double tol = revtri::kDefaultTolerance;
  std::uint64_t seed = 0;
  std::size_t trials = 0, dim = 1, frame_size = 1, d_max = 8, n_max = 6;
  unsigned threads = 0;

  auto* certify = app.add_subcommand("certify", "Certify one instance file");
  certify->add_option("--input", input, "Instance file")->required();
  certify->add_option("--tol", tol, "Hypothesis and inequality tolerance");
  certify->add_option("--output", output, "Report file (stdout when omitted)");

  auto* scan = app.add_subcommand("scan", "Rank every applicable theorem of a grid");
  scan->add_option("--input", input, "Instance file")->required();
  scan->add_option("--grid", grid, "Grid file")->required();
  scan->add_option("--tol", tol, "Hypothesis and inequality tolerance");
  scan->add_option("--output", output, "Report file (stdout when omitted)");

  auto* equality = app.add_subcommand("equality", "Build and certify an equality-case family");
  equality->add_option("--theorem", theorem, "Theorem id")->required();
  equality->add_option("--param", params, "key=value or key=v1,v2 (repeatable)");
  equality->add_option("--norms", norms, "Comma-separated norms")->required();
  equality->add_option("--dim", dim, "Dimension d");
  equality->add_option("--frame-size", frame_size, "Frame size m for cor8");
  equality->add_option("--seed", seed, "Seed");
  equality->add_option("--tol", tol, "Tolerance");
  equality->add_option("--output", output, "Report file")->required();

  auto* fuzz = app.add_subcommand("fuzz", "Randomized soundness campaign");
  fuzz->add_option("--theorem", theorem, "Theorem id")->required();
  fuzz->add_option("--trials", trials, "Number of trials")->required();
  fuzz->add_option("--dim", d_max, "Largest dimension");
  fuzz->add_option("--n", n_max, "Largest family size");
  fuzz->add_option("--seed", seed, "Seed");
  fuzz->add_option("--threads", threads, "Worker threads (0 = all cores)");
  fuzz->add_option("--output", output, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return revtri::cli::kExitInputError;
  }

  try {
    if (*certify) return revtri::cli::cmd_certify(input, tol, output, std::cout, std::cerr);
    if (*scan) return revtri::cli::cmd_scan(input, grid, tol, output, std::cout, std::cerr);
    if (*equality) {
      revtri::cli::EqualityRequest req;
      req.theorem = revtri::parse_theorem_id(theorem);
      req.params = parse_params(params);
      req.norms = parse_list(norms, "--norms");
      req.dimension = dim;
      req.frame_size = frame_size;
      req.seed = seed;
      req.tol = tol;
      req.output_path = output;
      return revtri::cli::cmd_equality(req, std::cout, std::cerr);
    }
    revtri::cli::FuzzRequest req;
    req.theorem = revtri::parse_theorem_id(theorem);
    req.trials = trials;
    req.d_max = d_max;
    req.n_max = n_max;
    req.seed = seed;
    req.threads = threads;
    req.output_path = output;
    return revtri::cli::cmd_fuzz(req, std::cout, std::cerr);
  } catch (const revtri::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return revtri::cli::kExitInputError;
  }
}
