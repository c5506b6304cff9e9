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


#include "photodisc/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "photodisc/error.hpp"

namespace photodisc {
namespace {

Json complex_list(const Eigen::MatrixXcd& m) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return entries;
}

Eigen::MatrixXcd square_from_entries(const Json& entries, int dim) {
  if (!entries.is_array()) throw InvalidArgument("\"entries\" must be an array");
  if (dim < 1 || entries.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
    throw InvalidArgument("expected " + std::to_string(dim) + "^2 entries, got " + std::to_string(entries.size()));
  }
  Eigen::MatrixXcd m(dim, dim);
  std::size_t k = 0;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c, ++k) {
      const auto& e = entries[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw InvalidArgument("entry " + std::to_string(k) + " is not a [re, im] pair");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

int require_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw InvalidArgument(std::string("missing integer field \"") + key + "\"");
  }
  return j[key].get<int>();
}

std::vector<double> double_list(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw InvalidArgument(std::string("missing array \"") + key + "\"");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw InvalidArgument(std::string("non-numeric value in \"") + key + "\"");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Partition parse_partition(const std::string& text) {
  std::string body;
  for (char c : text) {
    if (c != '(' && c != ')' && c != ' ') body += c;
  }
  if (body.empty()) throw InvalidArgument("empty partition");
  std::vector<int> rows;
  if (body.find(',') != std::string::npos) {
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        std::size_t used = 0;
        rows.push_back(std::stoi(part, &used));
        if (used != part.size()) throw InvalidArgument("bad partition \"" + text + "\"");
      } catch (const std::logic_error&) {
        throw InvalidArgument("bad partition \"" + text + "\"");
      }
    }
  } else {
    for (char c : body) {
      if (c < '0' || c > '9') throw InvalidArgument("bad partition \"" + text + "\"");
      rows.push_back(c - '0');
    }
  }
  return Partition(rows);
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("only square matrices are serialised");
  return Json{{"dim", m.rows()}, {"entries", complex_list(m)}};
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("matrix must be a JSON object");
  const int dim = j.contains("dim") ? require_int(j, "dim") : require_int(j, "d");
  if (!j.contains("entries")) throw InvalidArgument("matrix has no \"entries\"");
  return square_from_entries(j["entries"], dim);
}

Json to_json(const Interferometer& u) {
  Json j{{"d", u.modes()}, {"entries", complex_list(u.matrix())}};
  if (u.reck) j["reck"] = Json{{"thetas", u.reck->thetas}, {"omegas", u.reck->omegas}};
  if (!u.network.empty()) {
    Json net = Json::array();
    for (const auto& b : u.network) net.push_back({{"offset", b.offset}, {"block", matrix_to_json(b.block)}});
    j["network"] = net;
  }
  return j;
}

Interferometer interferometer_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("interferometer must be a JSON object");
  const int d = require_int(j, "d");
  std::optional<ReckParams> reck;
  if (j.contains("reck")) reck = ReckParams{double_list(j["reck"], "thetas"), double_list(j["reck"], "omegas")};
  std::vector<NetworkBlock> network;
  if (j.contains("network")) {
    if (!j["network"].is_array()) throw InvalidArgument("\"network\" must be an array");
    for (const auto& b : j["network"]) {
      if (!b.contains("block")) throw InvalidArgument("network entry has no \"block\"");
      network.push_back({require_int(b, "offset"), matrix_from_json(b["block"])});
    }
  }
  if (!j.contains("entries")) {
    if (reck) return from_reck(*reck, d);
    if (!network.empty()) return layered_network(d, network);
    throw InvalidArgument("interferometer needs \"entries\", \"reck\" or \"network\"");
  }
  Interferometer u(square_from_entries(j["entries"], d), 1e-10);
  if (reck) {
    const double gap = (from_reck(*reck, d).matrix() - u.matrix()).cwiseAbs().maxCoeff();
    if (gap > 1e-9) throw InvalidArgument("\"reck\" parameters disagree with \"entries\"");
    u.reck = reck;
  }
  u.network = std::move(network);
  return u;
}

Json to_json(const ReducedState& rho) {
  Json j = Json::object();
  for (const auto& [shape, c] : rho.components()) {
    j[shape.to_string()] = Json{{"weight", c->weight}, {"block", matrix_to_json(c->block)}};
  }
  return j;
}

ReducedState reduced_state_from_json(const Json& j, int particles, int modes) {
  if (!j.is_object()) throw InvalidArgument("reduced state must be a JSON object");
  ReducedState rho(particles, modes);
  for (const auto& [key, value] : j.items()) {
    if (!value.contains("weight") || !value["weight"].is_number()) {
      throw InvalidArgument("component " + key + " has no numeric \"weight\"");
    }
    if (!value.contains("block")) throw InvalidArgument("component " + key + " has no \"block\"");
    rho.set(parse_partition(key), value["weight"].get<double>(), matrix_from_json(value["block"]));
  }
  return rho;
}

FockArray fock_array_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw InvalidArgument("Fock array must be a non-empty integer matrix");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXi counts(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InvalidArgument("Fock array rows differ in length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number_integer()) throw InvalidArgument("Fock array entries must be integers");
      counts(r, c) = v.get<int>();
    }
  }
  return FockArray(counts);
}

Json result_to_json(const DiscriminationResult& result, const Json& problem,
                    const std::optional<Rational>& bound) {
  Json d = Json::array();
  for (const auto& n : result.discriminating) d.push_back(n.to_string());
  Json per = Json::array();
  for (const auto& s : result.per_outcome) {
    per.push_back({{"outcome", s.outcome.to_string()},
                   {"target", s.target},
                   {"residual", s.residual},
                   {"discriminating", s.discriminating}});
  }
  return Json{{"problem", problem},
              {"U", to_json(result.u)},
              {"D", d},
              {"success", result.success},
              {"failure", result.failure},
              {"per_outcome", per},
              {"bound", bound ? Json{{"exact", to_string(*bound)}, {"value", to_double(*bound)}} : Json()},
              {"seed", result.seed},
              {"restarts", result.restarts},
              {"restart_scores", result.restart_scores},
              {"cost_trace", result.cost_trace}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw InvalidArgument("write failed for " + path.string());
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    const auto num = std::stoll(text.substr(0, slash), &used);
    if (used != text.substr(0, slash).size()) throw InvalidArgument("bad rational \"" + text + "\"");
    if (slash == std::string::npos) return Rational(num);
    const auto den_text = text.substr(slash + 1);
    const auto den = std::stoll(den_text, &used);
    if (used != den_text.size() || den == 0) throw InvalidArgument("bad rational \"" + text + "\"");
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad rational \"" + text + "\"");
  }
}

}  // namespace photodisc
