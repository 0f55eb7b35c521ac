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

#include "voranon/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace voranon {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

double parse_double(const std::string& text, const std::filesystem::path& path,
                    std::size_t line_number, const char* what) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError(path.string() + ":" + std::to_string(line_number) + ": bad " + what +
                          " '" + text + "'");
  }
  return value;
}

std::int64_t parse_int(const std::string& text, const std::filesystem::path& path,
                       std::size_t line_number, const char* what) {
  std::int64_t value = 0;
  const auto* begin = text.data();
  const auto* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError(path.string() + ":" + std::to_string(line_number) + ": bad " + what +
                          " '" + text + "'");
  }
  return value;
}

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

// Reads line by line, tracking 1-based line numbers for diagnostics.
class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path) : path_(path), in_(path) {
    if (!in_) {
      throw ValidationError("cannot open '" + path.string() + "'");
    }
  }

  bool next(std::string* line) {
    while (std::getline(in_, *line)) {
      ++line_number_;
      if (!line->empty() && line->back() == '\r') line->pop_back();
      if (line->empty()) continue;
      return true;
    }
    return false;
  }

  std::size_t line_number() const { return line_number_; }
  const std::filesystem::path& path() const { return path_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ValidationError(path_.string() + ":" + std::to_string(line_number_) + ": " + message);
  }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t line_number_ = 0;
};

ordered_json parse_json_file(const std::filesystem::path& path) {
  ordered_json parsed = ordered_json::parse(read_file(path), nullptr, false);
  if (parsed.is_discarded()) {
    throw ValidationError("'" + path.string() + "' is not valid JSON");
  }
  return parsed;
}

}  // namespace

Schema load_schema(const std::filesystem::path& path) {
  const ordered_json doc = parse_json_file(path);
  if (!doc.contains("attributes") || !doc["attributes"].is_array()) {
    throw ValidationError("'" + path.string() + "': missing \"attributes\" array");
  }
  if (!doc.contains("geographic_attribute") || !doc["geographic_attribute"].is_string()) {
    throw ValidationError("'" + path.string() + "': missing \"geographic_attribute\"");
  }
  std::vector<Attribute> attributes;
  for (const auto& entry : doc["attributes"]) {
    if (!entry.contains("name") || !entry.contains("domain") || !entry["domain"].is_array()) {
      throw ValidationError("'" + path.string() + "': each attribute needs a name and a domain");
    }
    Attribute attr;
    attr.name = entry["name"].get<std::string>();
    for (const auto& label : entry["domain"]) {
      attr.domain.push_back(label.get<std::string>());
    }
    attributes.push_back(std::move(attr));
  }
  return Schema(std::move(attributes), doc["geographic_attribute"].get<std::string>());
}

std::vector<RegionTemplate> load_region_templates(const std::filesystem::path& path) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(&line)) {
    throw ValidationError("'" + path.string() + "' is empty");
  }
  const std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 4 || header[0] != "region_id" || header[1] != "x" || header[2] != "y" ||
      header[3] != "stratum" || (header.size() == 5 && header[4] != "population") ||
      header.size() > 5) {
    reader.fail("expected header region_id,x,y,stratum[,population]");
  }
  const bool has_population = header.size() == 5;

  std::vector<RegionTemplate> templates;
  while (reader.next(&line)) {
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      reader.fail("expected " + std::to_string(header.size()) + " fields, got " +
                  std::to_string(fields.size()));
    }
    RegionTemplate tmpl;
    tmpl.region_id = fields[0];
    if (tmpl.region_id.empty()) reader.fail("empty region_id");
    tmpl.location.x = parse_double(fields[1], path, reader.line_number(), "x coordinate");
    tmpl.location.y = parse_double(fields[2], path, reader.line_number(), "y coordinate");
    tmpl.stratum = fields[3];
    if (has_population && !fields[4].empty()) {
      const std::int64_t population =
          parse_int(fields[4], path, reader.line_number(), "population");
      if (population < 0) reader.fail("negative population");
      tmpl.population = population;
    }
    templates.push_back(std::move(tmpl));
  }
  if (templates.empty()) {
    throw ValidationError("'" + path.string() + "' declares no regions");
  }
  return templates;
}

std::vector<Record> load_records(const std::filesystem::path& path, const Schema& schema) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(&line)) {
    throw ValidationError("'" + path.string() + "' is empty");
  }
  const std::vector<std::string> header = split_csv_line(line);
  const std::size_t expected = 2 + schema.attribute_count();
  if (header.size() != expected || header[0] != "record_id" || header[1] != "region_id") {
    reader.fail("expected header record_id,region_id,<attributes in schema order>");
  }
  for (std::size_t i = 0; i < schema.attribute_count(); ++i) {
    if (header[2 + i] != schema.attributes()[i].name) {
      reader.fail("column " + std::to_string(i + 3) + " is '" + header[2 + i] + "', expected '" +
                  schema.attributes()[i].name + "'");
    }
  }

  std::vector<Record> records;
  while (reader.next(&line)) {
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != expected) {
      reader.fail("expected " + std::to_string(expected) + " fields, got " +
                  std::to_string(fields.size()));
    }
    Record record;
    record.record_id = std::move(fields[0]);
    record.region_id = std::move(fields[1]);
    if (record.record_id.empty()) reader.fail("empty record_id");
    if (record.region_id.empty()) reader.fail("empty region_id");
    record.values.assign(std::make_move_iterator(fields.begin() + 2),
                         std::make_move_iterator(fields.end()));
    for (std::size_t i = 0; i < record.values.size(); ++i) {
      if (!schema.domain_index(i, record.values[i])) {
        reader.fail("record '" + record.record_id + "': value '" + record.values[i] +
                    "' is not in the domain of attribute '" + schema.attributes()[i].name + "'");
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

Dataset load_inputs(const std::filesystem::path& regions_path,
                    const std::filesystem::path& records_path,
                    const std::filesystem::path& schema_path,
                    std::vector<std::string>* warnings) {
  Schema schema = load_schema(schema_path);
  const std::vector<RegionTemplate> templates = load_region_templates(regions_path);
  std::vector<Record> records = load_records(records_path, schema);

  std::unordered_map<std::string, std::size_t> region_index;
  std::vector<InitialRegion> regions;
  regions.reserve(templates.size());
  for (const RegionTemplate& tmpl : templates) {
    if (region_index.count(tmpl.region_id) > 0) {
      throw ValidationError("duplicate region '" + tmpl.region_id + "' in '" +
                            regions_path.string() + "'");
    }
    region_index[tmpl.region_id] = regions.size();
    regions.push_back(InitialRegion{tmpl.region_id, tmpl.location, 0, {}});
  }

  for (const Record& record : records) {
    const auto it = region_index.find(record.region_id);
    if (it == region_index.end()) {
      throw ValidationError("record '" + record.record_id + "' references unknown region '" +
                            record.region_id + "'");
    }
    InitialRegion& region = regions[it->second];
    region.class_table.add(record.values);
    ++region.population;
  }

  for (std::size_t i = 0; i < templates.size(); ++i) {
    if (templates[i].population && *templates[i].population != regions[i].population &&
        warnings != nullptr) {
      warnings->push_back("region '" + regions[i].region_id + "': declared population " +
                          std::to_string(*templates[i].population) + " reconciled to " +
                          std::to_string(regions[i].population) + " loaded records");
    }
  }

  return Dataset{std::move(schema), std::move(regions), std::move(records)};
}

DistributionSpec load_distribution(const std::filesystem::path& path) {
  const ordered_json doc = parse_json_file(path);
  if (!doc.contains("strata") || !doc["strata"].is_object()) {
    throw ValidationError("'" + path.string() + "': missing \"strata\" object");
  }
  std::map<std::string, DistributionSpec::AttributeDistributions> strata;
  for (const auto& [stratum, attributes] : doc["strata"].items()) {
    DistributionSpec::AttributeDistributions distributions;
    if (!attributes.is_object()) {
      throw ValidationError("'" + path.string() + "': stratum '" + stratum +
                            "' must map attributes to probability arrays");
    }
    for (const auto& [attribute, probabilities] : attributes.items()) {
      if (!probabilities.is_array()) {
        throw ValidationError("'" + path.string() + "': stratum '" + stratum + "', attribute '" +
                              attribute + "' must be a probability array");
      }
      distributions[attribute] = probabilities.get<std::vector<double>>();
    }
    strata[stratum] = std::move(distributions);
  }
  return DistributionSpec(std::move(strata));
}

void write_regions_csv(const std::filesystem::path& path,
                       std::span<const InitialRegion> regions,
                       std::span<const RegionTemplate> templates) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write '" + path.string() + "'");
  }
  out << "region_id,x,y,stratum,population\n";
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const std::string stratum = i < templates.size() ? templates[i].stratum : "";
    out << regions[i].region_id << ',' << format_double(regions[i].location.x) << ','
        << format_double(regions[i].location.y) << ',' << stratum << ','
        << regions[i].population << '\n';
  }
}

void write_records_csv(const std::filesystem::path& path, const Schema& schema,
                       std::span<const Record> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write '" + path.string() + "'");
  }
  out << "record_id,region_id";
  for (const Attribute& attr : schema.attributes()) out << ',' << attr.name;
  out << '\n';
  for (const Record& record : records) {
    out << record.record_id << ',' << record.region_id;
    for (const std::string& value : record.values) out << ',' << value;
    out << '\n';
  }
}

void write_published_csv(const std::filesystem::path& path, const Schema& schema,
                         const AggregationResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write '" + path.string() + "'");
  }
  out << "record_id," << schema.geographic_attribute();
  for (const Attribute& attr : schema.attributes()) out << ',' << attr.name;
  out << '\n';
  for (const PublishedRecord& record : result.published_records) {
    out << record.record_id << ',' << record.aggregated_id;
    for (const std::string& value : record.values) out << ',' << value;
    out << '\n';
  }
}

void write_mapping_csv(const std::filesystem::path& path, const AggregationResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write '" + path.string() + "'");
  }
  out << "region_id,aggregated_id\n";
  for (const auto& [region_id, aggregated_id] : result.region_mapping) {
    out << region_id << ',' << aggregated_id << '\n';
  }
}

void write_sites_csv(const std::filesystem::path& path, std::span<const Point> sites) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write '" + path.string() + "'");
  }
  out << "aggregated_id,x,y\n";
  for (std::size_t i = 0; i < sites.size(); ++i) {
    out << i << ',' << format_double(sites[i].x) << ',' << format_double(sites[i].y) << '\n';
  }
}

std::vector<Point> load_sites(const std::filesystem::path& path) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(&line) || split_csv_line(line) != std::vector<std::string>{"aggregated_id", "x", "y"}) {
    throw ValidationError("'" + path.string() + "': expected header aggregated_id,x,y");
  }
  std::vector<Point> sites;
  while (reader.next(&line)) {
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 3) {
      reader.fail("expected 3 fields, got " + std::to_string(fields.size()));
    }
    const std::int64_t id = parse_int(fields[0], path, reader.line_number(), "aggregated_id");
    if (id != static_cast<std::int64_t>(sites.size())) {
      reader.fail("aggregated ids must be consecutive from 0");
    }
    sites.push_back(Point{parse_double(fields[1], path, reader.line_number(), "x coordinate"),
                          parse_double(fields[2], path, reader.line_number(), "y coordinate")});
  }
  if (sites.empty()) {
    throw ValidationError("'" + path.string() + "' declares no sites");
  }
  return sites;
}

std::map<std::string, int> load_mapping(const std::filesystem::path& path) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(&line) ||
      split_csv_line(line) != std::vector<std::string>{"region_id", "aggregated_id"}) {
    throw ValidationError("'" + path.string() + "': expected header region_id,aggregated_id");
  }
  std::map<std::string, int> mapping;
  while (reader.next(&line)) {
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 2) {
      reader.fail("expected 2 fields, got " + std::to_string(fields.size()));
    }
    mapping[fields[0]] =
        static_cast<int>(parse_int(fields[1], path, reader.line_number(), "aggregated_id"));
  }
  return mapping;
}

std::vector<PublishedRecord> load_published(const std::filesystem::path& path,
                                            const Schema& schema) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(&line)) {
    throw ValidationError("'" + path.string() + "' is empty");
  }
  const std::vector<std::string> header = split_csv_line(line);
  const std::size_t expected = 2 + schema.attribute_count();
  if (header.size() != expected || header[0] != "record_id" ||
      header[1] != schema.geographic_attribute()) {
    reader.fail("expected header record_id," + schema.geographic_attribute() +
                ",<attributes in schema order>");
  }
  std::vector<PublishedRecord> published;
  while (reader.next(&line)) {
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != expected) {
      reader.fail("expected " + std::to_string(expected) + " fields, got " +
                  std::to_string(fields.size()));
    }
    PublishedRecord record;
    record.record_id = std::move(fields[0]);
    record.aggregated_id =
        static_cast<int>(parse_int(fields[1], path, reader.line_number(), "aggregated id"));
    record.values.assign(std::make_move_iterator(fields.begin() + 2),
                         std::make_move_iterator(fields.end()));
    published.push_back(std::move(record));
  }
  return published;
}

namespace {

LogBase parse_log_base(const std::string& text) {
  if (text == "e") return LogBase::Natural;
  if (text == "2") return LogBase::Two;
  if (text == "10") return LogBase::Ten;
  throw ValidationError("log base must be one of e, 2, 10; got '" + text + "'");
}

}  // namespace

PipelineConfig load_config(const std::filesystem::path& path) {
  const ordered_json doc = parse_json_file(path);
  PipelineConfig config;
  if (doc.contains("k")) config.k = doc["k"].get<int>();
  if (doc.contains("site_count")) {
    const auto& node = doc["site_count"];
    if (node.is_string()) {
      const auto text = node.get<std::string>();
      if (text == "entropy") {
        config.site_count_approach = SiteCountApproach::Entropy;
      } else if (text == "maxcombs") {
        config.site_count_approach = SiteCountApproach::MaxCombs;
      } else {
        throw ValidationError("site_count must be entropy, maxcombs, or {\"fixed\": n}");
      }
    } else if (node.is_object() && node.contains("fixed")) {
      config.site_count_approach = SiteCountApproach::Fixed;
      config.fixed_site_count = node["fixed"].get<int>();
    } else {
      throw ValidationError("site_count must be entropy, maxcombs, or {\"fixed\": n}");
    }
  }
  if (doc.contains("placement")) {
    const auto text = doc["placement"].get<std::string>();
    if (text == "balanced") {
      config.placement = PlacementApproach::Balanced;
    } else if (text == "adc") {
      config.placement = PlacementApproach::Adc;
    } else {
      throw ValidationError("placement must be balanced or adc");
    }
  }
  if (doc.contains("adc_seed")) {
    const auto text = doc["adc_seed"].get<std::string>();
    if (text == "balanced") {
      config.adc_seed_method = AdcSeedMethod::Balanced;
    } else if (text == "random") {
      config.adc_seed_method = AdcSeedMethod::Random;
    } else {
      throw ValidationError("adc_seed must be balanced or random");
    }
  }
  if (doc.contains("gaps_preset")) {
    const auto name = doc["gaps_preset"].get<std::string>();
    const auto preset = GapsModel::preset(name);
    if (!preset) {
      throw ValidationError("unknown cutoff preset '" + name + "'");
    }
    config.gaps_model = *preset;
    config.gaps_preset_name = name;
  }
  if (doc.contains("gaps_multiplier") || doc.contains("gaps_exponent")) {
    if (!doc.contains("gaps_multiplier") || !doc.contains("gaps_exponent")) {
      throw ValidationError("custom cutoff models need both gaps_multiplier and gaps_exponent");
    }
    config.gaps_model =
        GapsModel{doc["gaps_multiplier"].get<double>(), doc["gaps_exponent"].get<double>()};
    config.gaps_preset_name.clear();
  }
  if (doc.contains("log_base")) {
    config.log_base = parse_log_base(doc["log_base"].is_string()
                                         ? doc["log_base"].get<std::string>()
                                         : doc["log_base"].dump());
  }
  if (doc.contains("seed")) config.rng_seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("max_moves")) config.adc_max_committed_moves = doc["max_moves"].get<int>();
  if (doc.contains("classical_discernibility")) {
    config.classical_discernibility = doc["classical_discernibility"].get<bool>();
  }
  return config;
}

std::string config_to_json(const PipelineConfig& config) {
  ordered_json doc;
  doc["k"] = config.k;
  switch (config.site_count_approach) {
    case SiteCountApproach::Entropy:
      doc["site_count"] = "entropy";
      break;
    case SiteCountApproach::MaxCombs:
      doc["site_count"] = "maxcombs";
      break;
    case SiteCountApproach::Fixed:
      doc["site_count"] = ordered_json{{"fixed", config.fixed_site_count}};
      break;
  }
  doc["placement"] = to_string(config.placement);
  doc["adc_seed"] = to_string(config.adc_seed_method);
  if (!config.gaps_preset_name.empty()) {
    doc["gaps_preset"] = config.gaps_preset_name;
  }
  doc["gaps_multiplier"] = config.gaps_model.multiplier;
  doc["gaps_exponent"] = config.gaps_model.exponent;
  doc["log_base"] = to_string(config.log_base);
  doc["seed"] = config.rng_seed;
  doc["max_moves"] = config.adc_max_committed_moves;
  doc["classical_discernibility"] = config.classical_discernibility;
  return doc.dump(2);
}

std::string file_digest(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buffer);
}

std::string to_string(LogBase base) {
  switch (base) {
    case LogBase::Two:
      return "2";
    case LogBase::Ten:
      return "10";
    case LogBase::Natural:
    default:
      return "e";
  }
}

std::string to_string(SiteCountApproach approach) {
  switch (approach) {
    case SiteCountApproach::Entropy:
      return "entropy";
    case SiteCountApproach::MaxCombs:
      return "maxcombs";
    case SiteCountApproach::Fixed:
    default:
      return "fixed";
  }
}

std::string to_string(PlacementApproach approach) {
  return approach == PlacementApproach::Balanced ? "balanced" : "adc";
}

std::string to_string(AdcSeedMethod method) {
  return method == AdcSeedMethod::Balanced ? "balanced" : "random";
}

}  // namespace voranon
