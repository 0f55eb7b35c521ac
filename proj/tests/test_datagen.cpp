// Copyright 2026 the voranon authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <map>

#include "test_support.hpp"
#include "voranon/datagen.hpp"

using namespace voranon;
namespace ts = testsupport;

namespace {

Schema coin_schema() { return Schema({{"coin", {"heads", "tails"}}}, "region"); }

DistributionSpec coin_spec(double heads) {
  return DistributionSpec({{"s", {{"coin", {heads, 1.0 - heads}}}}});
}

std::vector<RegionTemplate> grid_templates(int count,
                                           std::optional<std::int64_t> population = {}) {
  std::vector<RegionTemplate> templates;
  for (int i = 0; i < count; ++i) {
    templates.push_back(RegionTemplate{"t" + std::to_string(i),
                                       Point{double(i % 10), double(i / 10)}, "s", population});
  }
  return templates;
}

}  // namespace

TEST_SUITE("datagen") {

TEST_CASE("populations without a declared value land in [400, 700]") {
  const Schema schema = coin_schema();
  const GeneratedData data = generate(grid_templates(50), coin_spec(0.5), schema, 31);
  REQUIRE(data.regions.size() == 50);
  for (const InitialRegion& region : data.regions) {
    CHECK(region.population >= 400);
    CHECK(region.population <= 700);
    CHECK(region.class_table.total() == region.population);
  }
}

TEST_CASE("declared populations are honored exactly") {
  const GeneratedData data = generate(grid_templates(5, 12), coin_spec(0.5), coin_schema(), 7);
  std::size_t records = 0;
  for (const InitialRegion& region : data.regions) {
    CHECK(region.population == 12);
    records += 12;
  }
  CHECK(data.records.size() == records);
}

TEST_CASE("a degenerate distribution produces a single category") {
  const GeneratedData data = generate(grid_templates(3), coin_spec(1.0), coin_schema(), 5);
  for (const Record& record : data.records) {
    CHECK(record.values[0] == "heads");
  }
}

TEST_CASE("sampled frequencies stay within three binomial standard errors") {
  const int regions = 200;  // * ~550 records, comfortably over 100k samples
  const double p = 0.3;
  const GeneratedData data = generate(grid_templates(regions), coin_spec(p), coin_schema(), 97);
  const auto n = static_cast<double>(data.records.size());
  REQUIRE(n > 100000);
  std::int64_t heads = 0;
  for (const Record& record : data.records) {
    if (record.values[0] == "heads") ++heads;
  }
  const double freq = static_cast<double>(heads) / n;
  const double sigma = std::sqrt(p * (1.0 - p) / n);
  CHECK(std::abs(freq - p) <= 3.0 * sigma);
}

TEST_CASE("generation is deterministic in the seed and region ids") {
  const Schema schema = coin_schema();
  const auto templates = grid_templates(10);
  const GeneratedData first = generate(templates, coin_spec(0.4), schema, 123);
  const GeneratedData second = generate(templates, coin_spec(0.4), schema, 123);
  REQUIRE(first.records.size() == second.records.size());
  for (std::size_t i = 0; i < first.records.size(); ++i) {
    CHECK(first.records[i].record_id == second.records[i].record_id);
    CHECK(first.records[i].values == second.records[i].values);
  }
  const GeneratedData other_seed = generate(templates, coin_spec(0.4), schema, 124);
  bool any_difference = other_seed.records.size() != first.records.size();
  for (std::size_t i = 0; !any_difference && i < first.records.size(); ++i) {
    any_difference = first.records[i].values != other_seed.records[i].values;
  }
  CHECK(any_difference);
}

TEST_CASE("region substreams do not depend on template order") {
  const Schema schema = coin_schema();
  auto templates = grid_templates(6);
  const GeneratedData forward = generate(templates, coin_spec(0.4), schema, 55);
  std::reverse(templates.begin(), templates.end());
  const GeneratedData reversed = generate(templates, coin_spec(0.4), schema, 55);

  std::map<std::string, std::int64_t> forward_pops;
  for (const InitialRegion& r : forward.regions) forward_pops[r.region_id] = r.population;
  for (const InitialRegion& r : reversed.regions) {
    CHECK(forward_pops.at(r.region_id) == r.population);
  }
}

TEST_CASE("chi-square goodness of fit is non-significant at the 0.001 level") {
  const Schema schema =
      Schema({{"grade", {"a", "b", "c", "d", "e"}}}, "region");
  const std::vector<double> probs = {0.1, 0.25, 0.3, 0.2, 0.15};
  const DistributionSpec spec({{"s", {{"grade", probs}}}});
  const GeneratedData data = generate(grid_templates(40), spec, schema, 2024);
  REQUIRE(data.records.size() >= 10000);

  std::map<std::string, std::int64_t> observed;
  for (const Record& record : data.records) ++observed[record.values[0]];
  const auto n = static_cast<double>(data.records.size());
  double chi_square = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double expected = n * probs[i];
    const double diff = static_cast<double>(observed[schema.attributes()[0].domain[i]]) - expected;
    chi_square += diff * diff / expected;
  }
  // 4 degrees of freedom, z(0.999) = 3.0902.
  CHECK(chi_square < ts::chi_square_critical(4, 3.090232306167813));
}

TEST_CASE("spec validation rejects structural faults") {
  const Schema schema = coin_schema();
  CHECK_THROWS_AS(
      DistributionSpec({{"s", DistributionSpec::AttributeDistributions{}}}).validate(schema),
      ValidationError);
  CHECK_THROWS_AS(DistributionSpec({{"s", {{"coin", {0.5}}}}}).validate(schema),
                  ValidationError);
  CHECK_THROWS_AS(DistributionSpec({{"s", {{"coin", {0.7, 0.4}}}}}).validate(schema),
                  ValidationError);
  CHECK_THROWS_AS(DistributionSpec({{"s", {{"coin", {-0.1, 1.1}}}}}).validate(schema),
                  ValidationError);

  std::vector<RegionTemplate> bad_stratum = {
      RegionTemplate{"t0", Point{0.0, 0.0}, "unknown", {}}};
  CHECK_THROWS_AS(generate(bad_stratum, coin_spec(0.5), schema, 1), ValidationError);

  std::vector<RegionTemplate> duplicate = {RegionTemplate{"t0", Point{0.0, 0.0}, "s", {}},
                                           RegionTemplate{"t0", Point{1.0, 0.0}, "s", {}}};
  CHECK_THROWS_AS(generate(duplicate, coin_spec(0.5), schema, 1), ValidationError);
}

}  // TEST_SUITE
