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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "voranon/adc.hpp"
#include "voranon/aggregate.hpp"
#include "voranon/datagen.hpp"
#include "voranon/io.hpp"
#include "voranon/metrics.hpp"
#include "voranon/pipeline.hpp"
#include "voranon/svg.hpp"

namespace fs = std::filesystem;
using namespace voranon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitWarnings = 3;

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write '" + path.string() + "'");
  }
  out << content;
}

void emit_manifest(const fs::path& out_dir, const RunManifest& manifest) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  std::ofstream out(out_dir / "manifest.json", std::ios::binary);
  if (out) out << manifest_to_json(manifest);
}

struct AnonymizeOptions {
  std::string regions_path;
  std::string records_path;
  std::string schema_path;
  std::string config_path;
  std::string out_dir = "out";
  std::string site_count_spec;
  std::string placement;
  std::string adc_seed;
  std::string gaps_preset;
  double gaps_multiplier = 0.0;
  double gaps_exponent = 0.0;
  std::string log_base;
  int k = 0;
  std::uint64_t seed = 0;
  int max_moves = 0;
  bool map = false;
  bool classical = false;
};

void apply_site_count_spec(PipelineConfig& config, const std::string& spec) {
  if (spec == "entropy") {
    config.site_count_approach = SiteCountApproach::Entropy;
  } else if (spec == "maxcombs") {
    config.site_count_approach = SiteCountApproach::MaxCombs;
  } else if (spec.rfind("fixed:", 0) == 0) {
    config.site_count_approach = SiteCountApproach::Fixed;
    try {
      config.fixed_site_count = std::stoi(spec.substr(6));
    } catch (const std::exception&) {
      throw ValidationError("--site-count fixed:<n> needs an integer");
    }
  } else {
    throw ValidationError("--site-count must be entropy, maxcombs, or fixed:<n>");
  }
}

PipelineConfig build_config(const AnonymizeOptions& options, const CLI::App* cmd) {
  PipelineConfig config;
  if (!options.config_path.empty()) {
    config = load_config(options.config_path);
  }
  if (cmd->count("--k") > 0) config.k = options.k;
  if (cmd->count("--site-count") > 0) apply_site_count_spec(config, options.site_count_spec);
  if (cmd->count("--placement") > 0) {
    if (options.placement == "balanced") {
      config.placement = PlacementApproach::Balanced;
    } else if (options.placement == "adc") {
      config.placement = PlacementApproach::Adc;
    } else {
      throw ValidationError("--placement must be balanced or adc");
    }
  }
  if (cmd->count("--adc-seed") > 0) {
    if (options.adc_seed == "balanced") {
      config.adc_seed_method = AdcSeedMethod::Balanced;
    } else if (options.adc_seed == "random") {
      config.adc_seed_method = AdcSeedMethod::Random;
    } else {
      throw ValidationError("--adc-seed must be balanced or random");
    }
  }
  if (cmd->count("--gaps-preset") > 0) {
    const auto preset = GapsModel::preset(options.gaps_preset);
    if (!preset) {
      throw ValidationError("--gaps-preset must be western, central, or eastern");
    }
    config.gaps_model = *preset;
    config.gaps_preset_name = options.gaps_preset;
  }
  if (cmd->count("--gaps-multiplier") > 0 || cmd->count("--gaps-exponent") > 0) {
    if (cmd->count("--gaps-multiplier") == 0 || cmd->count("--gaps-exponent") == 0) {
      throw ValidationError(
          "custom cutoff models need both --gaps-multiplier and --gaps-exponent");
    }
    config.gaps_model = GapsModel{options.gaps_multiplier, options.gaps_exponent};
    config.gaps_preset_name.clear();
  }
  if (cmd->count("--log-base") > 0) {
    if (options.log_base == "e") {
      config.log_base = LogBase::Natural;
    } else if (options.log_base == "2") {
      config.log_base = LogBase::Two;
    } else if (options.log_base == "10") {
      config.log_base = LogBase::Ten;
    } else {
      throw ValidationError("--log-base must be e, 2, or 10");
    }
  }
  if (cmd->count("--seed") > 0) config.rng_seed = options.seed;
  if (cmd->count("--max-moves") > 0) config.adc_max_committed_moves = options.max_moves;
  if (options.classical) config.classical_discernibility = true;
  return config;
}

int run_anonymize(const AnonymizeOptions& options, const CLI::App* cmd) {
  const fs::path out_dir(options.out_dir);
  RunManifest manifest;
  manifest.verb = "anonymize";

  try {
    const PipelineConfig config = build_config(options, cmd);
    manifest.config_json = config_to_json(config);
    manifest.input_digests["regions"] = file_digest(options.regions_path);
    manifest.input_digests["records"] = file_digest(options.records_path);
    manifest.input_digests["schema"] = file_digest(options.schema_path);

    const Dataset dataset = load_inputs(options.regions_path, options.records_path,
                                        options.schema_path, &manifest.warnings);
    PipelineOutput output = run_pipeline(config, dataset);
    manifest.warnings.insert(manifest.warnings.end(), output.warnings.begin(),
                             output.warnings.end());
    manifest.timings = output.metrics.timings;

    fs::create_directories(out_dir);
    write_published_csv(out_dir / "anonymized_records.csv", dataset.schema, output.result);
    write_mapping_csv(out_dir / "region_mapping.csv", output.result);
    write_sites_csv(out_dir / "sites.csv", output.result.sites);
    write_text_file(out_dir / "report.json", report_to_json(config, output));
    manifest.output_files = {"anonymized_records.csv", "region_mapping.csv", "sites.csv",
                             "report.json"};
    if (options.map) {
      std::vector<Point> region_points;
      for (const InitialRegion& region : dataset.regions) {
        region_points.push_back(region.location);
      }
      const VoronoiDiagram diagram =
          VoronoiDiagram::build(output.result.sites, bounding_rect(region_points));
      write_text_file(out_dir / "map.svg",
                      render_map_svg(dataset.regions, output.result, &diagram));
      manifest.output_files.push_back("map.svg");
    }
    manifest.success = true;
    emit_manifest(out_dir, manifest);

    std::cout << "anonymize: " << output.result.published_records.size() << " of "
              << output.result.input_record_count << " records published, "
              << output.metrics.suppression_count << " suppressed across "
              << output.result.sites.size() << " aggregated regions\n";
    for (const std::string& warning : manifest.warnings) {
      std::cerr << "warning: " << warning << '\n';
    }
    return manifest.warnings.empty() ? kExitOk : kExitWarnings;
  } catch (const StageError& e) {
    manifest.failed_stage = e.stage();
    manifest.error = e.what();
    emit_manifest(out_dir, manifest);
    std::cerr << "error (" << e.stage() << "): " << e.what() << '\n';
    return kExitRuntime;
  } catch (const ValidationError& e) {
    manifest.failed_stage = "load";
    manifest.error = e.what();
    emit_manifest(out_dir, manifest);
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

struct GenerateOptions {
  std::string templates_path;
  std::string distribution_path;
  std::string schema_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
};

int run_generate(const GenerateOptions& options) {
  const fs::path out_dir(options.out_dir);
  RunManifest manifest;
  manifest.verb = "generate";

  try {
    manifest.input_digests["templates"] = file_digest(options.templates_path);
    manifest.input_digests["distribution"] = file_digest(options.distribution_path);
    manifest.input_digests["schema"] = file_digest(options.schema_path);
    manifest.config_json = "{\"seed\": " + std::to_string(options.seed) + "}";

    const Schema schema = load_schema(options.schema_path);
    const std::vector<RegionTemplate> templates = load_region_templates(options.templates_path);
    const DistributionSpec spec = load_distribution(options.distribution_path);
    const GeneratedData data = generate(templates, spec, schema, options.seed);

    fs::create_directories(out_dir);
    write_regions_csv(out_dir / "regions.csv", data.regions, templates);
    write_records_csv(out_dir / "records.csv", schema, data.records);
    manifest.output_files = {"regions.csv", "records.csv"};
    manifest.success = true;
    emit_manifest(out_dir, manifest);

    std::cout << "generate: " << data.records.size() << " records across "
              << data.regions.size() << " regions\n";
    return kExitOk;
  } catch (const ValidationError& e) {
    manifest.failed_stage = "generate";
    manifest.error = e.what();
    emit_manifest(out_dir, manifest);
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

struct EvaluateOptions {
  std::string regions_path;
  std::string records_path;
  std::string schema_path;
  std::string in_dir;
  std::string out_dir;
  int k = 2;
  bool classical = false;
};

int run_evaluate(const EvaluateOptions& options) {
  const fs::path in_dir(options.in_dir);
  const fs::path out_dir(options.out_dir.empty() ? options.in_dir : options.out_dir);
  RunManifest manifest;
  manifest.verb = "evaluate";

  try {
    manifest.input_digests["regions"] = file_digest(options.regions_path);
    manifest.input_digests["records"] = file_digest(options.records_path);
    manifest.input_digests["schema"] = file_digest(options.schema_path);
    manifest.input_digests["sites"] = file_digest(in_dir / "sites.csv");

    const Dataset dataset = load_inputs(options.regions_path, options.records_path,
                                        options.schema_path, &manifest.warnings);
    const std::vector<Point> sites = load_sites(in_dir / "sites.csv");

    // Nearest-site assignment is a pure function of the sites, so the
    // aggregation is reproduced from them rather than parsed back.
    PipelineConfig config;
    config.k = options.k;
    config.classical_discernibility = options.classical;
    PipelineOutput output;
    output.result = aggregate(dataset.regions, dataset.records, sites, options.k);
    output.metrics =
        evaluate_metrics(dataset.regions, output.result, options.k, options.classical);
    output.site_count.site_count = static_cast<int>(sites.size());

    const fs::path published_path = in_dir / "anonymized_records.csv";
    if (fs::exists(published_path)) {
      const std::vector<PublishedRecord> published =
          load_published(published_path, dataset.schema);
      if (published.size() != output.result.published_records.size()) {
        manifest.warnings.push_back(
            "published file holds " + std::to_string(published.size()) + " records, expected " +
            std::to_string(output.result.published_records.size()) + " from these sites and k");
      }
    }

    manifest.config_json = config_to_json(config);
    fs::create_directories(out_dir);
    write_text_file(out_dir / "report.json", report_to_json(config, output));
    manifest.output_files = {"report.json"};
    manifest.timings = output.metrics.timings;
    manifest.success = true;
    emit_manifest(out_dir, manifest);

    std::cout << "evaluate: suppression " << output.metrics.suppression_count << " ("
              << output.metrics.suppression_fraction << "), compactness "
              << output.metrics.compactness << ", discernibility "
              << output.metrics.discernibility << ", non-uniform entropy "
              << output.metrics.non_uniform_entropy << " bits\n";
    for (const std::string& warning : manifest.warnings) {
      std::cerr << "warning: " << warning << '\n';
    }
    return manifest.warnings.empty() ? kExitOk : kExitWarnings;
  } catch (const ValidationError& e) {
    manifest.failed_stage = "evaluate";
    manifest.error = e.what();
    emit_manifest(out_dir, manifest);
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

struct RenderOptions {
  std::string regions_path;
  std::string in_dir;
  std::string out_path;
  bool edges = false;
};

int run_render(const RenderOptions& options) {
  const fs::path in_dir(options.in_dir);
  RunManifest manifest;
  manifest.verb = "render";

  const fs::path out_path =
      options.out_path.empty() ? in_dir / "map.svg" : fs::path(options.out_path);
  const fs::path manifest_dir =
      out_path.parent_path().empty() ? fs::path(".") : out_path.parent_path();
  try {
    manifest.input_digests["regions"] = file_digest(options.regions_path);
    manifest.input_digests["sites"] = file_digest(in_dir / "sites.csv");
    manifest.input_digests["mapping"] = file_digest(in_dir / "region_mapping.csv");

    const std::vector<RegionTemplate> templates = load_region_templates(options.regions_path);
    std::vector<InitialRegion> regions;
    regions.reserve(templates.size());
    std::vector<Point> region_points;
    for (const RegionTemplate& tmpl : templates) {
      regions.push_back(InitialRegion{tmpl.region_id, tmpl.location, 0, {}});
      region_points.push_back(tmpl.location);
    }

    AggregationResult result;
    result.sites = load_sites(in_dir / "sites.csv");
    result.region_mapping = load_mapping(in_dir / "region_mapping.csv");

    std::string svg;
    if (options.edges) {
      const VoronoiDiagram diagram =
          VoronoiDiagram::build(result.sites, bounding_rect(region_points));
      svg = render_map_svg(regions, result, &diagram);
    } else {
      svg = render_map_svg(regions, result, nullptr);
    }
    if (!out_path.parent_path().empty()) fs::create_directories(out_path.parent_path());
    write_text_file(out_path, svg);
    manifest.output_files = {out_path.filename().string()};
    manifest.success = true;
    emit_manifest(manifest_dir, manifest);

    std::cout << "render: wrote " << out_path.string() << '\n';
    return kExitOk;
  } catch (const ValidationError& e) {
    manifest.failed_stage = "render";
    manifest.error = e.what();
    emit_manifest(manifest_dir, manifest);
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voronoi-guided geographic aggregation for k-anonymous microdata release"};
  app.require_subcommand(1);

  AnonymizeOptions anonymize_options;
  CLI::App* anonymize = app.add_subcommand("anonymize", "Aggregate regions and release records");
  anonymize->add_option("--regions", anonymize_options.regions_path, "Regions CSV")->required();
  anonymize->add_option("--records", anonymize_options.records_path, "Records CSV")->required();
  anonymize->add_option("--schema", anonymize_options.schema_path, "Schema JSON")->required();
  anonymize->add_option("--config", anonymize_options.config_path,
                        "Config JSON (flags override it)");
  anonymize->add_option("--k", anonymize_options.k, "Anonymity level (>= 2)");
  anonymize->add_option("--site-count", anonymize_options.site_count_spec,
                        "entropy | maxcombs | fixed:<n>");
  anonymize->add_option("--placement", anonymize_options.placement, "balanced | adc");
  anonymize->add_option("--adc-seed", anonymize_options.adc_seed, "balanced | random");
  anonymize->add_option("--gaps-preset", anonymize_options.gaps_preset,
                        "western | central | eastern");
  anonymize->add_option("--gaps-multiplier", anonymize_options.gaps_multiplier,
                        "Custom cutoff multiplier");
  anonymize->add_option("--gaps-exponent", anonymize_options.gaps_exponent,
                        "Custom cutoff exponent");
  anonymize->add_option("--log-base", anonymize_options.log_base, "e | 2 | 10");
  anonymize->add_option("--seed", anonymize_options.seed, "RNG seed");
  anonymize->add_option("--max-moves", anonymize_options.max_moves,
                        "Clustering committed-move cap");
  anonymize->add_option("--out-dir", anonymize_options.out_dir, "Output directory");
  anonymize->add_flag("--map", anonymize_options.map, "Also render map.svg");
  anonymize->add_flag("--classical-discernibility", anonymize_options.classical,
                      "Add the per-suppressed-record penalty to discernibility");

  GenerateOptions generate_options;
  CLI::App* generate = app.add_subcommand("generate", "Generate synthetic test data");
  generate->add_option("--templates", generate_options.templates_path, "Region template CSV")
      ->required();
  generate->add_option("--dist", generate_options.distribution_path, "Distribution JSON")
      ->required();
  generate->add_option("--schema", generate_options.schema_path, "Schema JSON")->required();
  generate->add_option("--seed", generate_options.seed, "RNG seed");
  generate->add_option("--out-dir", generate_options.out_dir, "Output directory");

  EvaluateOptions evaluate_options;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Re-measure an existing aggregation");
  evaluate->add_option("--regions", evaluate_options.regions_path, "Regions CSV")->required();
  evaluate->add_option("--records", evaluate_options.records_path, "Records CSV")->required();
  evaluate->add_option("--schema", evaluate_options.schema_path, "Schema JSON")->required();
  evaluate->add_option("--in-dir", evaluate_options.in_dir, "Directory with sites.csv")
      ->required();
  evaluate->add_option("--k", evaluate_options.k, "Anonymity level used for the run")->required();
  evaluate->add_option("--out-dir", evaluate_options.out_dir,
                       "Report directory (defaults to --in-dir)");
  evaluate->add_flag("--classical-discernibility", evaluate_options.classical,
                     "Add the per-suppressed-record penalty to discernibility");

  RenderOptions render_options;
  CLI::App* render = app.add_subcommand("render", "Draw an aggregation as SVG");
  render->add_option("--regions", render_options.regions_path, "Regions CSV")->required();
  render->add_option("--in-dir", render_options.in_dir,
                     "Directory with sites.csv and region_mapping.csv")
      ->required();
  render->add_option("--out", render_options.out_path, "Output SVG path");
  render->add_flag("--edges", render_options.edges, "Draw Voronoi cell edges");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(anonymize)) return run_anonymize(anonymize_options, anonymize);
    if (app.got_subcommand(generate)) return run_generate(generate_options);
    if (app.got_subcommand(evaluate)) return run_evaluate(evaluate_options);
    if (app.got_subcommand(render)) return run_render(render_options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
