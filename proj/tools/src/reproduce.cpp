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


#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "photodisc/cli/cli.hpp"
#include "photodisc/error.hpp"
#include "photodisc/networks.hpp"

namespace photodisc::cli {
namespace {

std::string describe(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  if (auto r = recognise_rational(x)) s << " (" << to_string(*r) << ")";
  return s.str();
}

const Json& row_for(const Json& table, int n) {
  for (const auto& row : table) {
    if (row.at("N").get<int>() == n) return row;
  }
  throw InvalidArgument("reference table has no row for N=" + std::to_string(n));
}

double tolerance_for(int n) { return n <= 6 ? 1e-9 : 1e-8; }

Check value_check(int n, const std::string& cell, double computed, const std::string& expected) {
  const double ref = to_double(parse_rational(expected));
  const bool ok = std::abs(computed - ref) <= tolerance_for(n);
  return {1, n, cell, describe(computed), expected, ok ? Status::kPass : Status::kFail, ""};
}

Check exact_check(int n, const std::string& cell, const Rational& computed, const std::string& expected) {
  const bool ok = computed == parse_rational(expected);
  return {1, n, cell, to_string(computed), expected, ok ? Status::kPass : Status::kFail, ""};
}

/// Cells whose printed fraction and decimal disagree: PASS on the fraction,
/// WARN when only the decimal matches.
Check printed_pair_check(int n, const std::string& cell, double computed, const std::string& fraction,
                         double decimal) {
  Check c = value_check(n, cell, computed, fraction);
  if (c.status == Status::kPass) return c;
  // Decimals are printed to four places.
  if (std::abs(computed - decimal) <= 5e-5) {
    std::ostringstream s;
    s << "matches the printed decimal " << decimal << "; the printed fraction " << fraction << " does not";
    c.status = Status::kWarn;
    c.detail = s.str();
  }
  return c;
}

struct SinglySpread {
  double best = 0.0;
  double worst = 1.0;
  double avg = 0.0;
};

SinglySpread singly_spread(const Interferometer& u, const Context& ctx) {
  SinglySpread s;
  const int n = u.modes();
  for (int b = 0; b < n; ++b) {
    const double p = named_success(u, NamedState::kSingly, b, ctx).success;
    s.best = std::max(s.best, p);
    s.worst = std::min(s.worst, p);
    s.avg += p / n;
  }
  return s;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& i : items) out += (out.empty() ? "" : ",") + i;
  return out.empty() ? "-" : out;
}

Check set_check(int n, const std::string& cell, const DiscriminationResult& r, const Json& expected_list) {
  std::set<std::string> expected;
  for (const auto& e : expected_list) expected.insert(e.get<std::string>());
  std::set<std::string> computed;
  std::map<std::string, double> target;
  for (const auto& s : r.per_outcome) {
    target[s.outcome.to_string()] = s.target;
    if (!s.discriminating) computed.insert(s.outcome.to_string());
  }
  std::vector<std::string> missing, extra;
  std::set_difference(expected.begin(), expected.end(), computed.begin(), computed.end(), std::back_inserter(missing));
  std::set_difference(computed.begin(), computed.end(), expected.begin(), expected.end(), std::back_inserter(extra));
  Check c{2, n, cell, std::to_string(computed.size()) + " outcomes", std::to_string(expected.size()) + " outcomes",
          Status::kPass, ""};
  if (missing.empty() && extra.empty()) return c;
  c.detail = "missing " + join(missing) + "; unexpected " + join(extra);
  // Outcomes the target never produces do not change the success probability.
  bool harmless = true;
  for (const auto& o : missing) harmless = harmless && target.count(o) && target[o] <= 1e-12;
  for (const auto& o : extra) harmless = harmless && target.count(o) && target[o] <= 1e-12;
  c.status = harmless ? Status::kWarn : Status::kFail;
  return c;
}

}  // namespace

bool Report::failed() const { return count(Status::kFail) > 0; }

int Report::count(Status s) const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [s](const Check& c) { return c.status == s; }));
}

void Report::print(std::ostream& out) const {
  for (const auto& c : checks) {
    const char* tag = c.status == Status::kPass ? "PASS" : c.status == Status::kWarn ? "WARN" : "FAIL";
    out << tag << "  table" << c.table << " N=" << c.particles << " " << std::left << std::setw(14) << c.cell
        << std::right << " computed " << c.computed << "  reference " << c.expected;
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    out << '\n';
  }
  out << "summary: " << count(Status::kPass) << " pass, " << count(Status::kWarn) << " warn, "
      << count(Status::kFail) << " fail\n";
}

Report reproduce_table1(const Json& reference, int n_min, int n_max, const Context& ctx) {
  if (n_min < 2 || n_max > 8 || n_min > n_max) throw InvalidArgument("table 1 covers N = 2..8");
  Report report;
  const auto& table = reference.at("table1");
  for (int n = n_min; n <= n_max; ++n) {
    const auto& row = row_for(table, n);
    report.checks.push_back(exact_check(n, "bound_s", bound_singly(n), row.at("bound_s")));
    report.checks.push_back(exact_check(n, "bound_d", bound_completely(n), row.at("bound_d")));

    const auto q = qft(n);
    const auto qs = singly_spread(q, ctx);
    report.checks.push_back(value_check(n, "qft s_best", qs.best, row.at("qft").at("s")));
    report.checks.push_back(value_check(n, "qft s_worst", qs.worst, row.at("qft").at("s")));
    report.checks.push_back(
        value_check(n, "qft d", named_success(q, NamedState::kCompletely, -1, ctx).success, row.at("qft").at("d")));

    if (!row.contains("network")) continue;
    const auto& ref = row.at("network");
    const auto net = table1_network(n);
    const auto s = singly_spread(net, ctx);
    if (row.contains("printed_decimals")) {
      const auto& dec = row.at("printed_decimals");
      report.checks.push_back(printed_pair_check(n, "net s_best", s.best, ref.at("s_best"), dec.at("s_best")));
      report.checks.push_back(value_check(n, "net s_worst", s.worst, ref.at("s_worst")));
      report.checks.push_back(printed_pair_check(n, "net s_avg", s.avg, ref.at("s_avg"), dec.at("s_avg")));
    } else {
      report.checks.push_back(value_check(n, "net s_best", s.best, ref.at("s_best")));
      report.checks.push_back(value_check(n, "net s_worst", s.worst, ref.at("s_worst")));
      report.checks.push_back(value_check(n, "net s_avg", s.avg, ref.at("s_avg")));
    }
    report.checks.push_back(
        value_check(n, "net d", named_success(net, NamedState::kCompletely, -1, ctx).success, ref.at("d")));
  }
  return report;
}

Report reproduce_table2(const Json& reference, int n_min, int n_max, const Context& ctx) {
  if (n_min < 2 || n_max > 5 || n_min > n_max) throw InvalidArgument("table 2 covers N = 2..5");
  Report report;
  const auto& table = reference.at("table2");
  for (int n = n_min; n <= n_max; ++n) {
    const auto& row = row_for(table, n);
    report.checks.push_back(
        set_check(n, "ambiguous s", named_success(qft(n), NamedState::kSinglyMixed, -1, ctx), row.at("s")));
    report.checks.push_back(set_check(
        n, "ambiguous d", named_success(table1_network(n), NamedState::kCompletely, -1, ctx), row.at("d")));
  }
  return report;
}

}  // namespace photodisc::cli
