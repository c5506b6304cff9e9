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

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "photodisc/cache.hpp"
#include "photodisc/error.hpp"
#include "photodisc/networks.hpp"

using namespace photodisc;

TEST(parse_partition, forms) {
  EXPECT_EQ(parse_partition("(2,1)"), (Partition{2, 1}));
  EXPECT_EQ(parse_partition("2,1"), (Partition{2, 1}));
  EXPECT_EQ(parse_partition("21"), (Partition{2, 1}));
  EXPECT_EQ(parse_partition("(1,1,1)"), (Partition{1, 1, 1}));
  EXPECT_THROW(parse_partition("()"), InvalidArgument);
  EXPECT_THROW(parse_partition("(2,x)"), InvalidArgument);
  EXPECT_THROW(parse_partition("(1,2)"), InvalidArgument);
}

TEST(rational, text_round_trip) {
  EXPECT_EQ(to_string(Rational(19, 24)), "19/24");
  EXPECT_EQ(to_string(Rational(3)), "3");
  EXPECT_EQ(parse_rational("45095/46656"), Rational(45095, 46656));
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
  EXPECT_THROW(parse_rational("a/2"), InvalidArgument);
  EXPECT_THROW(parse_rational("1/2x"), InvalidArgument);
}

TEST(matrix_json, round_trip_and_errors) {
  std::mt19937_64 rng(4);
  const Eigen::MatrixXcd m = random_unitary(3, rng);
  const Json j = matrix_to_json(m);
  EXPECT_EQ(j["dim"], 3);
  EXPECT_EQ(j["entries"].size(), 9u);
  EXPECT_EQ((matrix_from_json(j) - m).norm(), 0.0);
  EXPECT_THROW(matrix_to_json(Eigen::MatrixXcd::Zero(2, 3)), DimensionMismatch);
  EXPECT_THROW(matrix_from_json(Json{{"dim", 2}, {"entries", Json::array({Json::array({1, 0})})}}),
               InvalidArgument);
  EXPECT_THROW(matrix_from_json(Json{{"dim", 1}, {"entries", Json::array({Json::array({1})})}}), InvalidArgument);
  EXPECT_THROW(matrix_from_json(Json::array()), InvalidArgument);
}

TEST(interferometer_json, entries_reck_and_network) {
  std::mt19937_64 rng(5);
  const auto dec = reck_decompose(random_unitary(4, rng));
  const auto reck_only = from_reck(dec.params, 4);
  const Json jr = to_json(reck_only);
  ASSERT_TRUE(jr.contains("reck"));
  const auto back = interferometer_from_json(jr);
  EXPECT_LT((back.matrix() - reck_only.matrix()).norm(), 1e-12);
  ASSERT_TRUE(back.reck.has_value());

  Json params_only = jr;
  params_only.erase("entries");
  EXPECT_LT((interferometer_from_json(params_only).matrix() - reck_only.matrix()).norm(), 1e-12);

  Json wrong = jr;
  wrong["reck"]["thetas"][0] = wrong["reck"]["thetas"][0].get<double>() + 0.1;
  EXPECT_THROW(interferometer_from_json(wrong), InvalidArgument);

  const auto net = table1_network(5);
  const Json jn = to_json(net);
  ASSERT_TRUE(jn.contains("network"));
  Json blocks_only = jn;
  blocks_only.erase("entries");
  const auto rebuilt = interferometer_from_json(blocks_only);
  EXPECT_LT((rebuilt.matrix() - net.matrix()).norm(), 1e-13);
  EXPECT_EQ(rebuilt.network.size(), net.network.size());

  EXPECT_THROW(interferometer_from_json(Json{{"d", 2}}), InvalidArgument);
  Json not_unitary = to_json(qft(2));
  not_unitary["entries"][0] = Json::array({2.0, 0.0});
  EXPECT_THROW(interferometer_from_json(not_unitary), InvalidArgument);
}

TEST(reduced_state_json, round_trip) {
  const auto t = shared_transform(3, 3);
  const auto rho = rho_singly(*t, 1);
  const Json j = to_json(rho);
  EXPECT_TRUE(j.contains("(3)"));
  EXPECT_TRUE(j.contains("(2,1)"));
  EXPECT_FALSE(j.contains("(1,1,1)"));
  const auto back = reduced_state_from_json(j, 3, 3);
  for (const auto& [shape, c] : rho.components()) {
    EXPECT_DOUBLE_EQ(back.weight(shape), c->weight);
    EXPECT_EQ((back.component(shape).block - c->block).norm(), 0.0);
  }
  Json bad = j;
  bad["(3)"].erase("weight");
  EXPECT_THROW(reduced_state_from_json(bad, 3, 3), InvalidArgument);
}

TEST(fock_array_json, parsing) {
  const auto a = fock_array_from_json(Json::parse("[[2,0],[0,1]]"));
  EXPECT_EQ(a.particles(), 3);
  EXPECT_EQ(a.system_modes(), 2);
  EXPECT_EQ(a.counts()(0, 0), 2);
  EXPECT_THROW(fock_array_from_json(Json::parse("[[1,0],[1]]")), InvalidArgument);
  EXPECT_THROW(fock_array_from_json(Json::parse("[[1.5]]")), InvalidArgument);
  EXPECT_THROW(fock_array_from_json(Json::parse("[]")), InvalidArgument);
}

TEST(result_json, document_layout) {
  const auto r = success_probability_permanent(qft(2), NamedState::kCompletely);
  const Json j = result_to_json(r, Json{{"n", 2}}, Rational(1, 2));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"problem", "U", "D", "success", "failure", "per_outcome", "bound",
                                            "seed", "restarts", "restart_scores", "cost_trace"}));
  EXPECT_EQ(j["D"], Json::array({"11"}));
  EXPECT_EQ(j["bound"]["exact"], "1/2");
  EXPECT_EQ(j["per_outcome"].size(), 3u);
  EXPECT_TRUE(result_to_json(r, Json::object(), std::nullopt)["bound"].is_null());
}

TEST(json_files, write_then_read) {
  const auto path = std::filesystem::temp_directory_path() / "photodisc_io_test.json";
  write_json_file(path, Json{{"a", 1}});
  EXPECT_EQ(read_json_file(path)["a"], 1);
  std::filesystem::remove(path);
  EXPECT_THROW(read_json_file(path), InvalidArgument);
}
