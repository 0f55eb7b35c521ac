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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>
#include <optional>

#include "voranon/adc.hpp"
#include "voranon/aggregate.hpp"
#include "voranon/balanced.hpp"
#include "voranon/datagen.hpp"
#include "voranon/io.hpp"
#include "voranon/metrics.hpp"
#include "voranon/pipeline.hpp"
#include "voranon/site_count.hpp"
#include "voranon/svg.hpp"

namespace py = pybind11;
using namespace voranon;

namespace {

LogBase log_base_from_string(const std::string& text) {
  if (text == "e") return LogBase::Natural;
  if (text == "2") return LogBase::Two;
  if (text == "10") return LogBase::Ten;
  throw ValidationError("log base must be 'e', '2', or '10'");
}

py::dict entries_to_dict(const ClassTable& table) {
  py::dict entries;
  for (const auto& [key, count] : table.entries()) {
    py::tuple key_tuple(key.size());
    for (std::size_t i = 0; i < key.size(); ++i) key_tuple[i] = key[i];
    entries[key_tuple] = count;
  }
  return entries;
}

std::vector<WeightedPoint> weighted_from_tuples(
    const std::vector<std::tuple<double, double, std::int64_t>>& points) {
  std::vector<WeightedPoint> weighted;
  weighted.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& [x, y, population] = points[i];
    weighted.push_back(WeightedPoint{Point{x, y}, population, "p" + std::to_string(i)});
  }
  return weighted;
}

PipelineConfig config_from_args(int k, const py::object& site_count_spec,
                                const std::string& placement, const std::string& adc_seed,
                                const std::string& gaps_preset,
                                std::optional<double> gaps_multiplier,
                                std::optional<double> gaps_exponent,
                                const std::string& log_base, std::uint64_t seed, int max_moves,
                                bool classical) {
  PipelineConfig config;
  config.k = k;
  if (py::isinstance<py::int_>(site_count_spec)) {
    config.site_count_approach = SiteCountApproach::Fixed;
    config.fixed_site_count = site_count_spec.cast<int>();
  } else {
    const auto text = site_count_spec.cast<std::string>();
    if (text == "entropy") {
      config.site_count_approach = SiteCountApproach::Entropy;
    } else if (text == "maxcombs") {
      config.site_count_approach = SiteCountApproach::MaxCombs;
    } else {
      throw ValidationError("site_count must be 'entropy', 'maxcombs', or an integer");
    }
  }
  if (placement == "balanced") {
    config.placement = PlacementApproach::Balanced;
  } else if (placement == "adc") {
    config.placement = PlacementApproach::Adc;
  } else {
    throw ValidationError("placement must be 'balanced' or 'adc'");
  }
  if (adc_seed == "balanced") {
    config.adc_seed_method = AdcSeedMethod::Balanced;
  } else if (adc_seed == "random") {
    config.adc_seed_method = AdcSeedMethod::Random;
  } else {
    throw ValidationError("adc_seed must be 'balanced' or 'random'");
  }
  const auto preset = GapsModel::preset(gaps_preset);
  if (!preset) {
    throw ValidationError("gaps_preset must be 'western', 'central', or 'eastern'");
  }
  config.gaps_model = *preset;
  config.gaps_preset_name = gaps_preset;
  if (gaps_multiplier || gaps_exponent) {
    if (!gaps_multiplier || !gaps_exponent) {
      throw ValidationError("custom cutoff models need both gaps_multiplier and gaps_exponent");
    }
    config.gaps_model = GapsModel{*gaps_multiplier, *gaps_exponent};
    config.gaps_preset_name.clear();
  }
  config.log_base = log_base_from_string(log_base);
  config.rng_seed = seed;
  config.adc_max_committed_moves = max_moves;
  config.classical_discernibility = classical;
  return config;
}

py::dict run_pipeline_files(const std::filesystem::path& regions_path,
                            const std::filesystem::path& records_path,
                            const std::filesystem::path& schema_path, int k,
                            const py::object& site_count_spec, const std::string& placement,
                            const std::string& adc_seed, const std::string& gaps_preset,
                            std::optional<double> gaps_multiplier,
                            std::optional<double> gaps_exponent, const std::string& log_base,
                            std::uint64_t seed, int max_moves, bool classical,
                            std::optional<std::filesystem::path> out_dir) {
  const PipelineConfig config =
      config_from_args(k, site_count_spec, placement, adc_seed, gaps_preset, gaps_multiplier,
                       gaps_exponent, log_base, seed, max_moves, classical);
  const Dataset dataset = load_inputs(regions_path, records_path, schema_path);
  const PipelineOutput output = run_pipeline(config, dataset);

  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    write_published_csv(*out_dir / "anonymized_records.csv", dataset.schema, output.result);
    write_mapping_csv(*out_dir / "region_mapping.csv", output.result);
    write_sites_csv(*out_dir / "sites.csv", output.result.sites);
    std::ofstream report(*out_dir / "report.json", std::ios::binary);
    report << report_to_json(config, output);
  }

  const py::object loads = py::module_::import("json").attr("loads");
  py::dict report = loads(report_to_json(config, output));
  report["k_anonymous"] = verify_k_anonymity(output.result, config.k);
  report["published_records"] = output.result.published_records.size();
  report["suppressed_records"] = output.result.suppressed_record_count;
  report["warnings"] = output.warnings;
  py::dict mapping;
  for (const auto& [region_id, aggregated_id] : output.result.region_mapping) {
    mapping[py::str(region_id)] = aggregated_id;
  }
  report["region_mapping"] = mapping;
  return report;
}

py::dict generate_files(const std::filesystem::path& templates_path,
                        const std::filesystem::path& distribution_path,
                        const std::filesystem::path& schema_path, std::uint64_t seed,
                        const std::filesystem::path& out_dir) {
  const Schema schema = load_schema(schema_path);
  const std::vector<RegionTemplate> templates = load_region_templates(templates_path);
  const DistributionSpec spec = load_distribution(distribution_path);
  const GeneratedData data = generate(templates, spec, schema, seed);
  std::filesystem::create_directories(out_dir);
  write_regions_csv(out_dir / "regions.csv", data.regions, templates);
  write_records_csv(out_dir / "records.csv", schema, data.records);
  py::dict info;
  info["regions"] = data.regions.size();
  info["records"] = data.records.size();
  return info;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Voronoi-guided geographic aggregation for k-anonymous microdata release";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<Point>(m, "Point")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readonly("x", &Point::x)
      .def_readonly("y", &Point::y)
      .def("__repr__", [](const Point& p) {
        return "Point(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
      });

  py::class_<Schema>(m, "Schema")
      .def(py::init([](const std::vector<std::pair<std::string, std::vector<std::string>>>&
                           attributes,
                       const std::string& geographic_attribute) {
             std::vector<Attribute> attrs;
             for (const auto& [name, domain] : attributes) {
               attrs.push_back(Attribute{name, domain});
             }
             return Schema(std::move(attrs), geographic_attribute);
           }),
           py::arg("attributes"), py::arg("geographic_attribute"))
      .def_property_readonly("geographic_attribute", &Schema::geographic_attribute)
      .def_property_readonly("attribute_names",
                             [](const Schema& schema) {
                               std::vector<std::string> names;
                               for (const Attribute& attr : schema.attributes()) {
                                 names.push_back(attr.name);
                               }
                               return names;
                             })
      .def("domain", [](const Schema& schema, const std::string& name) {
        const auto index = schema.attribute_index(name);
        if (!index) throw ValidationError("unknown attribute '" + name + "'");
        return schema.attributes()[*index].domain;
      });

  py::class_<Record>(m, "Record")
      .def(py::init<std::string, std::string, std::vector<std::string>>(),
           py::arg("record_id"), py::arg("region_id"), py::arg("values"))
      .def_readonly("record_id", &Record::record_id)
      .def_readonly("region_id", &Record::region_id)
      .def_readonly("values", &Record::values);

  py::class_<ClassTable>(m, "ClassTable")
      .def(py::init<>())
      .def("add",
           [](ClassTable& table, const std::vector<std::string>& key, std::int64_t count) {
             table.add(key, count);
           },
           py::arg("key"), py::arg("count") = 1)
      .def_property_readonly("total", &ClassTable::total)
      .def("entries", &entries_to_dict)
      .def("min_cardinality", &ClassTable::min_cardinality)
      .def("__len__", [](const ClassTable& table) { return table.entries().size(); });

  m.def("build_class_table", [](const std::vector<Record>& records, const Schema& schema) {
    return build_class_table(records, schema);
  }, py::arg("records"), py::arg("schema"));

  m.def("merge_tables", [](const std::vector<ClassTable>& tables) {
    return merge_tables(tables);
  }, py::arg("tables"));

  py::class_<GapsModel>(m, "GapsModel")
      .def(py::init<double, double>(), py::arg("multiplier"), py::arg("exponent"))
      .def_readonly("multiplier", &GapsModel::multiplier)
      .def_readonly("exponent", &GapsModel::exponent)
      .def_static("preset", [](const std::string& name) {
        const auto preset = GapsModel::preset(name);
        if (!preset) throw ValidationError("unknown preset '" + name + "'");
        return *preset;
      });

  m.def("dataset_entropy",
        [](const ClassTable& table, const std::string& base) {
          return dataset_entropy(table, log_base_from_string(base));
        },
        py::arg("table"), py::arg("base") = "e");
  m.def("max_combinations", &max_combinations, py::arg("schema"));
  m.def("gaps_cutoff", &gaps_cutoff, py::arg("value"), py::arg("model"));
  m.def("site_count", &site_count, py::arg("total_population"), py::arg("cutoff"),
        py::arg("region_count"));
  m.def("initial_row_count", &initial_row_count, py::arg("site_count"));

  m.def("balanced_sites",
        [](const std::vector<std::tuple<double, double, std::int64_t>>& points,
           int site_count) {
          std::vector<std::pair<double, double>> result;
          for (const Point& p : balanced_sites(weighted_from_tuples(points), site_count)) {
            result.emplace_back(p.x, p.y);
          }
          return result;
        },
        py::arg("points"), py::arg("site_count"),
        "Balanced-density placement over (x, y, population) tuples.");

  py::class_<VoronoiDiagram>(m, "VoronoiDiagram")
      .def_static("build",
                  [](const std::vector<std::pair<double, double>>& sites) {
                    std::vector<Point> points;
                    for (const auto& [x, y] : sites) points.push_back(Point{x, y});
                    return VoronoiDiagram::build(points, bounding_rect(points));
                  },
                  py::arg("sites"))
      .def_property_readonly("site_count", &VoronoiDiagram::site_count)
      .def_property_readonly("sites",
                             [](const VoronoiDiagram& d) {
                               std::vector<std::pair<double, double>> sites;
                               for (const Point& s : d.sites()) sites.emplace_back(s.x, s.y);
                               return sites;
                             })
      .def("nearest_site",
           [](const VoronoiDiagram& d, double x, double y) {
             return d.nearest_site(Point{x, y});
           },
           py::arg("x"), py::arg("y"))
      .def("neighbors",
           [](const VoronoiDiagram& d, std::size_t site) { return d.neighbors(site); },
           py::arg("site"))
      .def("cell", [](const VoronoiDiagram& d, std::size_t site) {
        std::vector<std::pair<double, double>> cell;
        for (const Point& v : d.cell(site)) cell.emplace_back(v.x, v.y);
        return cell;
      }, py::arg("site"));

  m.def("polygon_centroid",
        [](const std::vector<std::pair<double, double>>& vertices) {
          Polygon poly;
          for (const auto& [x, y] : vertices) poly.push_back(Point{x, y});
          const Point c = polygon_centroid(poly);
          return std::make_pair(c.x, c.y);
        },
        py::arg("vertices"));

  m.def("run_pipeline", &run_pipeline_files, py::arg("regions"), py::arg("records"),
        py::arg("schema"), py::kw_only(), py::arg("k") = 2,
        py::arg("site_count") = py::str("entropy"), py::arg("placement") = "balanced",
        py::arg("adc_seed") = "balanced", py::arg("gaps_preset") = "western",
        py::arg("gaps_multiplier") = std::nullopt, py::arg("gaps_exponent") = std::nullopt,
        py::arg("log_base") = "e", py::arg("seed") = 0, py::arg("max_moves") = 1000,
        py::arg("classical_discernibility") = false, py::arg("out_dir") = std::nullopt,
        "Anonymize the given files; returns the evaluation report as a dict.");

  m.def("generate_data", &generate_files, py::arg("templates"), py::arg("distribution"),
        py::arg("schema"), py::kw_only(), py::arg("seed") = 0, py::arg("out_dir"),
        "Generate synthetic regions.csv and records.csv under out_dir.");

  m.attr("__version__") = "0.1.0";
}
