// Copyright 2026 The photodisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "photodisc/cache.hpp"
#include "photodisc/cli/cli.hpp"
#include "photodisc/error.hpp"
#include "photodisc/networks.hpp"
#include "photodisc/scattering.hpp"
#include "photodisc/states.hpp"

namespace photodisc::cli {
namespace {

struct Options {
  std::string cache_dir;
  int particles = 0;
  int modes = 0;
  std::string target;
  int bad_mode = 0;  // 1-based on the command line, 0 = last mode
  std::string network;
  std::string pathway = "auto";
  std::string format = "csv";
  std::string output;
  std::string xi_ladder;
  double eta = 10.0;
  int restarts = 20;
  std::uint64_t seed = 1;
  double epsilon = 1e-9;
  int jobs = 1;
  int hops = 10;
  bool force_coincidence = false;
  std::string single_outcome;
  int table = 1;
  int n_min = 0;
  int n_max = 0;
  std::string data;
  std::uint64_t verify_seed = 7;
};

/// A target as given by --target, resolved against the transforms it needs.
struct TargetSpec {
  std::string name;  // i, s, d, sm or fock
  std::optional<FockArray> array;
  int particles = 0;
  int modes = 0;
};

TargetSpec parse_target(const Options& o, bool allow_reference) {
  TargetSpec t;
  if (o.target.rfind("fock:", 0) == 0) {
    t.name = "fock";
    t.array = fock_array_from_json(read_json_file(o.target.substr(5)));
    t.particles = t.array->particles();
    t.modes = t.array->system_modes();
    if (o.particles != 0 && o.particles != t.particles) {
      throw InvalidArgument("--n " + std::to_string(o.particles) + " disagrees with the array's " +
                            std::to_string(t.particles) + " photons");
    }
    return t;
  }
  if (o.target != "s" && o.target != "d" && o.target != "sm" && !(allow_reference && o.target == "i")) {
    throw InvalidArgument("unknown target \"" + o.target + "\" (expected " + (allow_reference ? "i, " : "") +
                          "s, d, sm or fock:<file>)");
  }
  if (o.particles < 2) throw InvalidArgument("--n must be at least 2");
  t.name = o.target;
  t.particles = o.particles;
  t.modes = o.particles;
  if (o.bad_mode < 0 || o.bad_mode > o.particles) {
    throw InvalidArgument("--bad-mode must lie in 1.." + std::to_string(o.particles));
  }
  return t;
}

int bad_mode_index(const Options& o, int modes) { return o.bad_mode == 0 ? modes - 1 : o.bad_mode - 1; }

ReducedState build_state(const TargetSpec& t, const Options& o, const std::filesystem::path& dir) {
  auto tr = transform_for(t.particles, t.modes, dir);
  if (t.name == "i") return rho_indistinguishable(*tr);
  if (t.name == "s") return rho_singly(*tr, bad_mode_index(o, t.modes));
  if (t.name == "sm") return rho_singly_mixed(*tr);
  if (t.name == "d") return rho_completely(*tr);
  auto label = transform_for(t.particles, t.array->label_modes(), dir);
  return rho_from_fock_array(*t.array, *tr, *label);
}

std::optional<Rational> bound_for(const TargetSpec& t) {
  if (t.name == "s" || t.name == "sm") return bound_singly(t.particles);
  if (t.name == "d") return bound_completely(t.particles);
  if (t.name == "fock" && t.array->system_occupation().is_coincident()) {
    return bound_general(t.array->label_occupation());
  }
  return std::nullopt;
}

std::vector<double> parse_ladder(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad --xi-ladder entry \"" + part + "\"");
    }
    if (!(out.back() > 0.0)) throw InvalidArgument("--xi-ladder entries must be positive");
  }
  return out;
}

/// Rounding noise below 1e-15 is printed as 0.
double tidy(double p) { return std::abs(p) < 1e-15 ? 0.0 : p; }

std::ostream& sink(const Options& o, std::ofstream& file, std::ostream& out) {
  if (o.output.empty()) return out;
  file.open(o.output);
  if (!file) throw InvalidArgument("cannot write " + o.output);
  return file;
}

int cmd_cache_build(const Options& o, const std::filesystem::path& dir, std::ostream& out) {
  const int modes = o.modes == 0 ? o.particles : o.modes;
  if (o.particles < 1 || modes < 1) throw InvalidArgument("--n and --d must be positive");
  const auto t = build_transform(o.particles, modes);
  std::mt19937_64 rng(o.verify_seed);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto rep = verify_transform(t, random_unitary(modes, rng));
    worst = std::max({worst, rep.unitarity, rep.weight_preservation, rep.off_block_mass, rep.copy_disagreement});
    if (!rep.ok(1e-9)) {
      throw InternalConsistency("verification failed: unitarity " + std::to_string(rep.unitarity) +
                                ", off-block mass " + std::to_string(rep.off_block_mass));
    }
  }
  const auto path = save_cache(t, dir);
  out << "N=" << o.particles << " d=" << modes << " basis states " << t.dim() << '\n';
  out << std::left << std::setw(16) << "irrep" << std::setw(12) << "dim U(d)" << std::setw(12) << "dim S_N"
      << "copies x dim" << std::right << '\n';
  for (const auto& irrep : t.irreps()) {
    out << std::left << std::setw(16) << irrep.shape.to_string() << std::setw(12) << irrep.unitary_dim
        << std::setw(12) << irrep.sym_dim << irrep.unitary_dim * irrep.sym_dim << std::right << '\n';
  }
  out << "verified with 5 random unitaries, worst deviation " << std::scientific << std::setprecision(2) << worst
      << std::defaultfloat << '\n';
  out << "saved " << path.string() << '\n';
  return kExitOk;
}

int cmd_cache_verify(const Options& o, const std::filesystem::path& dir, std::ostream& out) {
  const int modes = o.modes == 0 ? o.particles : o.modes;
  const auto t = load_cache(o.particles, modes, dir);
  std::mt19937_64 rng(o.verify_seed);
  bool ok = true;
  for (int k = 0; k < 5; ++k) {
    const auto rep = verify_transform(t, random_unitary(modes, rng));
    out << "unitary " << k << ": unitarity " << std::scientific << std::setprecision(2) << rep.unitarity
        << " weight " << rep.weight_preservation << " off-block " << rep.off_block_mass << " copies "
        << rep.copy_disagreement << std::defaultfloat << '\n';
    ok = ok && rep.ok(1e-9);
  }
  out << (ok ? "cache entry verified" : "cache entry FAILED verification") << '\n';
  return ok ? kExitOk : kExitFailure;
}

int cmd_prob(const Options& o, const Context& ctx, std::ostream& out) {
  const auto t = parse_target(o, true);
  const auto u = parse_network(o.network.empty() ? "qft" : o.network, t.modes);
  std::ofstream file;
  std::ostream& os = sink(o, file, out);
  os << std::setprecision(15);
  const bool permanent = t.name != "fock" && (ctx.pathway == Pathway::kPermanent ||
                                              (ctx.pathway == Pathway::kAuto && std::pow(t.modes, t.modes) > 3125.0));
  if (permanent) {
    const auto in = Occupation::coincident(t.modes);
    const int bad = bad_mode_index(o, t.modes);
    Json rows = Json::array();
    if (o.format == "csv") os << "outcome,p_total\n";
    for (const auto& n : enumerate_outcomes(t.particles, t.modes, false)) {
      double p = 0.0;
      if (t.name == "i") p = indistinguishable_probability(u, in, n);
      if (t.name == "d") p = classical_probability(u, in, n);
      if (t.name == "s") p = singly_probability(u, bad, n);
      if (t.name == "sm") {
        for (int b = 0; b < t.modes; ++b) p += singly_probability(u, b, n) / t.modes;
      }
      if (o.format == "csv") {
        os << n.to_string() << ',' << tidy(p) << '\n';
      } else {
        rows.push_back({{"outcome", n.to_string()}, {"p_total", tidy(p)}});
      }
    }
    if (o.format == "json") os << rows.dump(2) << '\n';
    return kExitOk;
  }
  const auto rho = build_state(t, o, ctx.cache_dir);
  const auto tr = transform_for(t.particles, t.modes, ctx.cache_dir);
  const auto table = outcome_table(rho, u, *tr);
  if (o.format == "csv") {
    os << "outcome,p_total";
    for (const auto& [shape, c] : rho.components()) os << ",p_" << shape.to_string();
    os << '\n';
    for (const auto& row : table) {
      os << row.outcome.to_string() << ',' << tidy(row.total);
      for (const auto& [shape, p] : row.per_irrep) os << ',' << tidy(p);
      os << '\n';
    }
  } else {
    Json rows = Json::array();
    for (const auto& row : table) {
      Json per = Json::object();
      for (const auto& [shape, p] : row.per_irrep) per[shape.to_string()] = tidy(p);
      rows.push_back({{"outcome", row.outcome.to_string()}, {"p_total", tidy(row.total)}, {"per_irrep", per}});
    }
    os << rows.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_optimize(const Options& o, const Context& ctx, std::ostream& out, std::ostream& err) {
  const auto t = parse_target(o, false);
  auto tr = transform_for(t.particles, t.modes, ctx.cache_dir);
  auto rho = build_state(t, o, ctx.cache_dir);
  const Occupation input = t.array ? t.array->system_occupation() : Occupation::coincident(t.modes);
  const DiscriminationProblem problem(tr, std::move(rho), input, ctx.epsilon);

  OptimizerConfig config;
  config.restarts = o.restarts;
  config.seed = o.seed;
  config.eta = o.eta;
  config.jobs = o.jobs;
  config.hops = o.hops;
  config.xi_ladder = parse_ladder(o.xi_ladder);
  std::string objective = "penalized";
  if (o.force_coincidence && !o.single_outcome.empty()) {
    throw InvalidArgument("--force-coincidence and --single-outcome are exclusive");
  }
  if (o.force_coincidence) {
    if (!input.is_coincident()) throw InvalidArgument("--force-coincidence needs a coincident input");
    config.objective = OptimizerConfig::Objective::kForcedCoincidence;
    objective = "forced_coincidence";
  }
  if (!o.single_outcome.empty()) {
    config.objective = OptimizerConfig::Objective::kSingleOutcome;
    config.single_outcome = Occupation::parse(o.single_outcome);
    objective = "single_outcome";
  }

  Json desc{{"N", t.particles},
            {"d", t.modes},
            {"target", t.name == "fock" ? o.target : t.name},
            {"input", input.to_string()},
            {"epsilon", ctx.epsilon},
            {"objective", objective}};
  if (t.name == "s") desc["bad_mode"] = bad_mode_index(o, t.modes) + 1;
  if (config.single_outcome) desc["single_outcome"] = config.single_outcome->to_string();

  DiscriminationResult result;
  if (!o.network.empty()) {
    // Evaluate a given interferometer instead of searching.
    const auto u = parse_network(o.network, t.modes);
    result = config.single_outcome ? single_outcome_success(u, *config.single_outcome, problem)
                                   : success_probability(u, problem);
    desc["network"] = o.network;
  } else {
    result = optimize(problem, config);
    desc["restarts"] = config.restarts;
    desc["eta"] = config.eta;
    desc["hops"] = config.hops;
    desc["jobs"] = config.jobs;
    desc["xi_ladder"] = config.xi_ladder.empty() ? default_xi_ladder(t.particles) : config.xi_ladder;
  }
  const auto bound = bound_for(t);
  Json doc = result_to_json(result, desc, bound);

  std::ofstream file;
  std::ostream& os = sink(o, file, out);
  os << doc.dump(2) << '\n';
  std::ostream& msg = o.output.empty() ? err : out;
  msg << std::setprecision(10) << "success " << result.success;
  if (auto r = recognise_rational(result.success, 100000, 1e-9)) msg << " (~" << to_string(*r) << ")";
  if (bound) msg << "  bound " << to_string(*bound) << " = " << to_double(*bound);
  msg << "  |D| = " << result.discriminating.size() << '\n';
  return kExitOk;
}

int cmd_reproduce(const Options& o, const Context& ctx, std::ostream& out) {
  const Json reference = o.data.empty() ? embedded_reference() : read_json_file(o.data);
  Report report;
  if (o.table == 1) {
    report = reproduce_table1(reference, o.n_min == 0 ? 2 : o.n_min, o.n_max == 0 ? 8 : o.n_max, ctx);
  } else if (o.table == 2) {
    report = reproduce_table2(reference, o.n_min == 0 ? 2 : o.n_min, o.n_max == 0 ? 5 : o.n_max, ctx);
  } else {
    throw InvalidArgument("--table must be 1 or 2");
  }
  report.print(out);
  return report.failed() ? kExitFailure : kExitOk;
}

int cmd_state_show(const Options& o, const Context& ctx, std::ostream& out) {
  const auto t = parse_target(o, true);
  const auto rho = build_state(t, o, ctx.cache_dir);
  std::ofstream file;
  sink(o, file, out) << to_json(rho).dump(2) << '\n';
  return kExitOk;
}

void add_state_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.particles, "Photon number (and mode count)");
  cmd->add_option("--target", o.target, "i, s, d, sm or fock:<file>")->required();
  cmd->add_option("--bad-mode", o.bad_mode, "Mode of the distinguishable photon, 1-based (default: last)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Unambiguous discrimination of partially distinguishable photons"};
  app.require_subcommand(1);
  app.add_option("--cache-dir", o.cache_dir, "Transform cache directory (default: $PHOTODISC_CACHE_DIR)");
  app.add_option("--pathway", o.pathway, "Probability pathway: auto, irrep or permanent");
  app.add_option("--epsilon", o.epsilon, "Residual at or below which an outcome discriminates");

  auto* cache = app.add_subcommand("cache", "Build or verify cached Schur-Weyl transforms");
  cache->require_subcommand(1);
  auto* build = cache->add_subcommand("build", "Build, verify and store the transform for (N, d)");
  auto* verify = cache->add_subcommand("verify", "Reload a cached transform and verify it");
  for (auto* c : {build, verify}) {
    c->add_option("--n", o.particles, "Photon number")->required();
    c->add_option("--d", o.modes, "Mode count (default: N)");
    c->add_option("--verify-seed", o.verify_seed, "Seed for the random test unitaries");
  }

  auto* prob = app.add_subcommand("prob", "Outcome probability table");
  add_state_flags(prob, o);
  prob->add_option("--network", o.network, "qft, table1 or reck:<file>");
  prob->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  prob->add_option("--output", o.output, "Write to a file instead of stdout");

  auto* opt = app.add_subcommand("optimize", "Search for the best interferometer");
  opt->add_option("--n", o.particles, "Photon number (and mode count)");
  opt->add_option("--target", o.target, "s, d, sm or fock:<file>")->required();
  opt->add_option("--bad-mode", o.bad_mode, "Mode of the distinguishable photon, 1-based (default: last)");
  opt->add_option("--xi-ladder", o.xi_ladder, "Comma separated penalties, e.g. 2,4,6,8,10");
  opt->add_option("--eta", o.eta, "Coincidence weight for --force-coincidence");
  opt->add_option("--restarts", o.restarts, "Random restarts")->check(CLI::PositiveNumber);
  opt->add_option("--seed", o.seed, "Master seed");
  opt->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  opt->add_option("--hops", o.hops, "Perturb-and-descend steps per restart")->check(CLI::NonNegativeNumber);
  opt->add_flag("--force-coincidence", o.force_coincidence, "Push the coincidence outcome into D");
  opt->add_option("--single-outcome", o.single_outcome, "Optimise for one outcome, e.g. 111");
  opt->add_option("--network", o.network, "Score qft, table1 or reck:<file> instead of searching");
  opt->add_option("--output", o.output, "Result JSON file (default: stdout)");

  auto* rep = app.add_subcommand("reproduce", "Recompute the reference tables");
  rep->add_option("--table", o.table, "1 (success probabilities) or 2 (ambiguous outcomes)")->required();
  rep->add_option("--n-min", o.n_min, "First N");
  rep->add_option("--n-max", o.n_max, "Last N");
  rep->add_option("--data", o.data, "Reference JSON (default: built-in copy)");

  auto* state = app.add_subcommand("state", "Inspect reduced states");
  state->require_subcommand(1);
  auto* show = state->add_subcommand("show", "Print a reduced state as JSON");
  add_state_flags(show, o);
  show->add_option("--output", o.output, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Context ctx;
    ctx.cache_dir = o.cache_dir.empty() ? default_cache_directory() : std::filesystem::path(o.cache_dir);
    ctx.pathway = parse_pathway(o.pathway);
    if (!(o.epsilon > 0.0)) throw InvalidArgument("--epsilon must be positive");
    ctx.epsilon = o.epsilon;
    if (*build) return cmd_cache_build(o, ctx.cache_dir, out);
    if (*verify) return cmd_cache_verify(o, ctx.cache_dir, out);
    if (*prob) return cmd_prob(o, ctx, out);
    if (*opt) return cmd_optimize(o, ctx, out, err);
    if (*rep) return cmd_reproduce(o, ctx, out);
    if (*show) return cmd_state_show(o, ctx, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace photodisc::cli
