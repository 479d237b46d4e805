#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "roadgen/roadgen.h"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

// Failure that maps to an exit code.
struct CliError {
  int code;
  std::string message;
};

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
  const char* env = std::getenv("ROADGEN_LOG");
  if (env == nullptr) return LogLevel::Info;
  const std::string v = env;
  if (v == "quiet" || v == "0" || v == "off") return LogLevel::Quiet;
  if (v == "debug" || v == "2") return LogLevel::Debug;
  return LogLevel::Info;
}

void log(LogLevel level, const std::string& message) {
  if (static_cast<int>(level) <= static_cast<int>(log_level())) std::cerr << "roadgen: " << message << "\n";
}

struct StringDeleter {
  void operator()(char* p) const { rg_string_free(p); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct CatalogDeleter {
  void operator()(rg_catalog* p) const { rg_catalog_free(p); }
};
struct ConstraintsDeleter {
  void operator()(rg_constraints* p) const { rg_constraints_free(p); }
};
struct ScenarioDeleter {
  void operator()(rg_scenario* p) const { rg_scenario_free(p); }
};
struct GeneratorDeleter {
  void operator()(rg_generator* p) const { rg_generator_free(p); }
};
using CatalogPtr = std::unique_ptr<rg_catalog, CatalogDeleter>;
using ConstraintsPtr = std::unique_ptr<rg_constraints, ConstraintsDeleter>;
using ScenarioPtr = std::unique_ptr<rg_scenario, ScenarioDeleter>;
using GeneratorPtr = std::unique_ptr<rg_generator, GeneratorDeleter>;

void check(rg_status status, const std::string& context) {
  if (status == RG_OK) return;
  throw CliError{kExitIo, context + ": " + rg_last_error()};
}

std::string take(char* text) {
  OwnedString owned(text);
  return std::string(owned.get());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitIo, "cannot read " + path.string()};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError{kExitIo, "cannot write " + path.string()};
  out << text;
  if (!out.flush()) throw CliError{kExitIo, "cannot write " + path.string()};
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw CliError{kExitIo, "cannot create directory " + dir.string()};
}

CatalogPtr load_catalog(const std::string& path) {
  rg_catalog* raw = nullptr;
  if (path.empty()) {
    check(rg_catalog_default(&raw), "default catalog");
  } else {
    const std::string text = read_file(path);
    check(rg_catalog_from_text(text.data(), text.size(), &raw), path);
  }
  return CatalogPtr(raw);
}

ConstraintsPtr load_constraints(const std::string& path) {
  rg_constraints* raw = nullptr;
  if (path.empty()) {
    check(rg_constraints_default(&raw), "default constraints");
  } else {
    const std::string text = read_file(path);
    check(rg_constraints_from_text(text.data(), text.size(), &raw), path);
  }
  return ConstraintsPtr(raw);
}

bool is_reserved(const std::string& name) { return name == "manifest.json" || name == "dedup_report.json"; }

// Scenario documents in a directory, by file name.
std::vector<fs::path> scenario_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw CliError{kExitIo, "not a directory: " + dir.string()};
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    if (is_reserved(entry.path().filename().string())) continue;
    out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ScenarioPtr load_scenario(const fs::path& path) {
  const std::string text = read_file(path);
  rg_scenario* raw = nullptr;
  check(rg_scenario_from_json(text.data(), text.size(), &raw), path.string());
  return ScenarioPtr(raw);
}

std::vector<ScenarioPtr> load_scenarios(const std::vector<fs::path>& files) {
  std::vector<ScenarioPtr> out;
  for (const fs::path& f : files) out.push_back(load_scenario(f));
  return out;
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* fixed = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(fixed, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string hash_text(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Budget {
  bool is_count = true;
  std::uint64_t value = 0;  // scenarios or milliseconds
  std::string text;
};

Budget parse_budget(const std::string& text) {
  static const std::regex count_re(R"(^\d+$)");
  static const std::regex duration_re(R"(^(\d+)(ms|s|m|h)$)");
  std::smatch m;
  Budget b;
  b.text = text;
  if (std::regex_match(text, count_re)) {
    b.value = std::stoull(text);
  } else if (std::regex_match(text, m, duration_re)) {
    b.is_count = false;
    const std::uint64_t n = std::stoull(m[1].str());
    const std::string unit = m[2].str();
    const std::uint64_t scale = unit == "ms" ? 1 : unit == "s" ? 1000 : unit == "m" ? 60000 : 3600000;
    b.value = n * scale;
  } else {
    throw CliError{kExitUsage, "--budget must be a scenario count (500) or a duration (90s, 30m, 24h)"};
  }
  if (b.value == 0) throw CliError{kExitUsage, "--budget must be positive"};
  return b;
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

Json rate_json(std::size_t before, std::size_t after) {
  if (before == 0) return "n/a";
  double rate = 0.0;
  check(rg_uniqueness_rate(before, after, &rate), "uniqueness rate");
  return rate;
}

std::vector<std::size_t> dedup_indices(const std::vector<ScenarioPtr>& scenarios, double threshold) {
  std::vector<const rg_scenario*> raw;
  for (const auto& s : scenarios) raw.push_back(s.get());
  std::vector<std::size_t> kept(raw.size());
  std::size_t kept_count = 0;
  check(rg_deduplicate(raw.data(), raw.size(), threshold, kept.data(), &kept_count), "deduplicate");
  kept.resize(kept_count);
  return kept;
}

// generate -------------------------------------------------------------------

struct GenerateOptions {
  int size = 6;
  std::string budget = "10";
  std::uint64_t seed = 1;
  std::string mode = "guided";
  std::string constraints;
  std::string catalog;
  std::string out;
};

int cmd_generate(const GenerateOptions& o) {
  const Budget budget = parse_budget(o.budget);
  if (o.size < 1) throw CliError{kExitUsage, "--size must be >= 1"};
  const rg_mode mode = o.mode == "guided" ? RG_MODE_GUIDED : RG_MODE_RANDOM;
  CatalogPtr catalog = load_catalog(o.catalog);
  ConstraintsPtr constraints = load_constraints(o.constraints);
  const fs::path out_dir = o.out;
  ensure_dir(out_dir);

  const std::string catalog_hash = take([&] {
    char* s = nullptr;
    check(rg_catalog_hash(catalog.get(), &s), "catalog hash");
    return s;
  }());
  const std::string constraints_json = take([&] {
    char* s = nullptr;
    check(rg_constraints_to_json(constraints.get(), &s), "constraints");
    return s;
  }());

  rg_generator* raw_gen = nullptr;
  check(rg_generator_new(catalog.get(), constraints.get(), mode, o.size, o.seed, &raw_gen), "generator");
  GeneratorPtr gen(raw_gen);

  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  const auto deadline = t0 + std::chrono::milliseconds(budget.value);
  std::vector<ScenarioPtr> scenarios;
  std::vector<std::string> names;
  std::ostringstream csv;
  csv << "index,file,instances,connections,short,cumulative_components,templates_covered\n";
  std::size_t short_count = 0;
  std::size_t cumulative = 0;
  std::vector<bool> seen(rg_catalog_size(catalog.get()), false);
  std::size_t covered = 0;

  while (budget.is_count ? scenarios.size() < budget.value : std::chrono::steady_clock::now() < deadline) {
    rg_scenario* raw = nullptr;
    check(rg_generator_next(gen.get(), &raw), "generate");
    ScenarioPtr s(raw);
    char name[32];
    std::snprintf(name, sizeof(name), "scenario_%05zu.json", scenarios.size());
    const std::string json = take([&] {
      char* text = nullptr;
      check(rg_scenario_to_json(s.get(), &text), "serialize");
      return text;
    }());
    write_file(out_dir / name, json);

    const std::size_t n = rg_scenario_instance_count(s.get());
    for (std::size_t i = 0; i < n; ++i) {
      rg_instance_info info{};
      check(rg_scenario_instance(s.get(), i, &info), "instance");
      const auto id = static_cast<std::size_t>(info.template_id);
      if (id < seen.size() && !seen[id]) {
        seen[id] = true;
        ++covered;
      }
    }
    cumulative += n;
    short_count += static_cast<std::size_t>(rg_scenario_is_short(s.get()));
    csv << scenarios.size() << "," << name << "," << n << "," << rg_scenario_connection_count(s.get()) << ","
        << rg_scenario_is_short(s.get()) << "," << cumulative << "," << covered << "\n";
    names.emplace_back(name);
    scenarios.push_back(std::move(s));
    if (scenarios.size() % 100 == 0) log(LogLevel::Info, std::to_string(scenarios.size()) + " scenarios");
  }

  const std::vector<std::size_t> kept = dedup_indices(scenarios, 1.0);
  std::vector<const rg_scenario*> raw;
  for (const auto& s : scenarios) raw.push_back(s.get());
  rg_coverage_report report{};
  check(rg_coverage(raw.data(), raw.size(), catalog.get(), &report), "coverage");
  const std::string finished = utc_now();

  Json manifest;
  manifest["tool"] = "roadgen";
  manifest["mode"] = o.mode;
  manifest["seed"] = o.seed;
  manifest["budget"] = Json{{"kind", budget.is_count ? "count" : "duration"},
                            {"text", budget.text},
                            {budget.is_count ? "scenarios" : "milliseconds", budget.value}};
  manifest["total_count"] = o.size;
  manifest["constraints_hash"] = hash_text(constraints_json);
  manifest["catalog_hash"] = catalog_hash;
  manifest["catalog_size"] = rg_catalog_size(catalog.get());
  manifest["started_at"] = started;
  manifest["finished_at"] = finished;
  manifest["scenario_count"] = scenarios.size();
  manifest["short_count"] = short_count;
  manifest["dedup"] = Json{{"threshold", 1.0},
                           {"before", scenarios.size()},
                           {"after", kept.size()},
                           {"uniqueness_rate", rate_json(scenarios.size(), kept.size())}};
  Json cov;
  cov["templates_covered"] = report.templates_covered;
  cov["placed_components"] = report.placed_components;
  cov["scenarios_to_coverage"] =
      report.scenarios_to_coverage < 0 ? Json(nullptr) : Json(report.scenarios_to_coverage);
  cov["components_to_coverage"] =
      report.components_to_coverage < 0 ? Json(nullptr) : Json(report.components_to_coverage);
  manifest["coverage"] = std::move(cov);
  Json hist = Json::object();
  for (int k = 0; k < 8; ++k) hist[rg_kind_name(k)] = report.kind_histogram[k];
  manifest["kind_histogram"] = std::move(hist);
  manifest["files"] = names;
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  write_file(out_dir / "coverage.csv", csv.str());

  std::cout << "generated " << scenarios.size() << " scenarios (" << short_count << " short) in " << out_dir.string()
            << "\n"
            << "unique " << kept.size() << "/" << scenarios.size() << ", coverage " << report.templates_covered
            << "/" << report.catalog_size << " templates\n";
  return kExitOk;
}

// dedup ----------------------------------------------------------------------

int cmd_dedup(const std::string& in, double threshold, const std::string& out_arg) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw CliError{kExitUsage, "--threshold must be within (0, 1]"};
  const fs::path in_dir = in;
  const std::vector<fs::path> files = scenario_files(in_dir);
  const fs::path out_dir = out_arg.empty() ? in_dir / "dedup" : fs::path(out_arg);
  const std::vector<ScenarioPtr> scenarios = load_scenarios(files);
  const std::vector<std::size_t> kept = dedup_indices(scenarios, threshold);
  ensure_dir(out_dir);

  Json kept_names = Json::array();
  Json removed_names = Json::array();
  std::vector<bool> keep(files.size(), false);
  for (std::size_t i : kept) keep[i] = true;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string name = files[i].filename().string();
    if (keep[i]) {
      write_file(out_dir / name, read_file(files[i]));
      kept_names.push_back(name);
    } else {
      removed_names.push_back(name);
    }
  }
  Json report;
  report["input"] = in_dir.string();
  report["threshold"] = threshold;
  report["before"] = files.size();
  report["after"] = kept.size();
  report["uniqueness_rate"] = rate_json(files.size(), kept.size());
  report["kept"] = std::move(kept_names);
  report["removed"] = std::move(removed_names);
  write_file(out_dir / "dedup_report.json", report.dump(2) + "\n");

  const Json& rate = report["uniqueness_rate"];
  std::cout << "before " << files.size() << ", after " << kept.size() << ", uniqueness "
            << (rate.is_string() ? rate.get<std::string>() : fmt3(rate.get<double>())) << "\n";
  return kExitOk;
}

// export ---------------------------------------------------------------------

int cmd_export(const std::string& in, const std::string& format, const std::string& out_arg, double scale) {
  if (!(scale > 0.0)) throw CliError{kExitUsage, "--scale must be positive"};
  const fs::path in_path = in;
  std::vector<fs::path> files;
  if (fs::is_regular_file(in_path)) {
    files.push_back(in_path);
  } else {
    files = scenario_files(in_path);
  }
  const fs::path out_dir = out_arg.empty() ? (fs::is_directory(in_path) ? in_path : in_path.parent_path())
                                           : fs::path(out_arg);
  ensure_dir(out_dir);
  for (const fs::path& f : files) {
    ScenarioPtr s = load_scenario(f);
    char* text = nullptr;
    std::string ext;
    if (format == "xodr") {
      check(rg_scenario_to_xodr(s.get(), &text), f.string());
      ext = ".xodr";
    } else if (format == "svg") {
      check(rg_scenario_to_svg(s.get(), scale, &text), f.string());
      ext = ".svg";
    } else {
      check(rg_scenario_to_json(s.get(), &text), f.string());
      ext = ".json";
    }
    fs::path target = out_dir / f.filename();
    target.replace_extension(ext);
    write_file(target, take(text));
    log(LogLevel::Debug, "wrote " + target.string());
  }
  std::cout << "exported " << files.size() << " " << format << " files to " << out_dir.string() << "\n";
  return kExitOk;
}

// stats ----------------------------------------------------------------------

struct RunStats {
  std::string label;
  std::string mode;
  std::size_t scenarios = 0;
  std::size_t unique = 0;
  Json rate;
  rg_coverage_report coverage{};
  std::size_t instances_total = 0;
};

RunStats collect(const fs::path& dir, const rg_catalog* catalog) {
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::is_regular_file(manifest_path)) throw CliError{kExitIo, "missing manifest: " + manifest_path.string()};
  Json manifest;
  try {
    manifest = Json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw CliError{kExitIo, manifest_path.string() + ": " + e.what()};
  }
  RunStats r;
  r.label = dir.filename().string().empty() ? dir.parent_path().filename().string() : dir.filename().string();
  r.mode = manifest.value("mode", "");

  std::vector<fs::path> files;
  if (manifest.contains("files") && manifest["files"].is_array()) {
    for (const auto& name : manifest["files"]) files.push_back(dir / name.get<std::string>());
  } else {
    files = scenario_files(dir);
  }
  const std::vector<ScenarioPtr> scenarios = load_scenarios(files);
  r.scenarios = scenarios.size();
  r.unique = dedup_indices(scenarios, 1.0).size();
  r.rate = rate_json(r.scenarios, r.unique);
  std::vector<const rg_scenario*> raw;
  for (const auto& s : scenarios) {
    raw.push_back(s.get());
    r.instances_total += rg_scenario_instance_count(s.get());
  }
  check(rg_coverage(raw.data(), raw.size(), catalog, &r.coverage), "coverage");
  return r;
}

std::string opt_index(std::int64_t v) { return v < 0 ? "not reached" : std::to_string(v); }

int cmd_stats(const std::vector<std::string>& dirs, const std::string& catalog_path, const std::string& rows_path) {
  if (dirs.empty() || dirs.size() > 2) throw CliError{kExitUsage, "stats takes one or two --in directories"};
  CatalogPtr catalog = load_catalog(catalog_path);
  std::vector<RunStats> runs;
  for (const std::string& d : dirs) runs.push_back(collect(d, catalog.get()));

  const auto rate_text = [](const Json& rate) { return rate.is_string() ? rate.get<std::string>() : fmt3(rate.get<double>()); };
  std::ostringstream out;
  char line[256];
  const auto row = [&](const std::string& name, const std::vector<std::string>& values) {
    std::snprintf(line, sizeof(line), "%-26s", name.c_str());
    out << line;
    for (const std::string& v : values) {
      std::snprintf(line, sizeof(line), "%-18s", v.c_str());
      out << line;
    }
    out << "\n";
  };
  std::vector<std::string> labels, modes, counts, uniques, rates, covered, s2c, c2c;
  for (const RunStats& r : runs) {
    labels.push_back(r.label);
    modes.push_back(r.mode);
    counts.push_back(std::to_string(r.scenarios));
    uniques.push_back(std::to_string(r.unique));
    rates.push_back(rate_text(r.rate));
    covered.push_back(std::to_string(r.coverage.templates_covered) + "/" + std::to_string(r.coverage.catalog_size));
    s2c.push_back(opt_index(r.coverage.scenarios_to_coverage));
    c2c.push_back(opt_index(r.coverage.components_to_coverage));
  }
  row("run", labels);
  row("mode", modes);
  row("scenarios", counts);
  row("unique scenarios", uniques);
  row("uniqueness rate", rates);
  row("templates covered", covered);
  row("scenarios to coverage", s2c);
  row("components to coverage", c2c);
  out << "kind histogram\n";
  for (int k = 0; k < 8; ++k) {
    std::vector<std::string> values;
    for (const RunStats& r : runs) values.push_back(std::to_string(r.coverage.kind_histogram[k]));
    row(std::string("  ") + rg_kind_name(k), values);
  }
  std::vector<std::string> totals;
  for (const RunStats& r : runs) totals.push_back(std::to_string(r.instances_total));
  row("  total", totals);
  if (runs.size() == 2) {
    const auto a = runs[0].coverage.components_to_coverage;
    const auto b = runs[1].coverage.components_to_coverage;
    std::string verdict = "neither run covers the catalog";
    if (a >= 0 && (b < 0 || a <= b)) verdict = runs[0].label + " covers with fewer or equal components";
    else if (b >= 0) verdict = runs[1].label + " covers with fewer components";
    out << "coverage comparison: " << verdict << "\n";
  }
  std::cout << out.str();

  if (!rows_path.empty()) {
    std::ostringstream csv;
    csv << "run,mode,metric,value\n";
    for (const RunStats& r : runs) {
      const auto emit = [&](const std::string& metric, const std::string& value) {
        csv << r.label << "," << r.mode << "," << metric << "," << value << "\n";
      };
      emit("scenarios", std::to_string(r.scenarios));
      emit("unique", std::to_string(r.unique));
      emit("uniqueness_rate", rate_text(r.rate));
      emit("templates_covered", std::to_string(r.coverage.templates_covered));
      emit("catalog_size", std::to_string(r.coverage.catalog_size));
      emit("scenarios_to_coverage", std::to_string(r.coverage.scenarios_to_coverage));
      emit("components_to_coverage", std::to_string(r.coverage.components_to_coverage));
      for (int k = 0; k < 8; ++k) {
        emit(std::string("kind_") + rg_kind_name(k), std::to_string(r.coverage.kind_histogram[k]));
      }
    }
    write_file(rows_path, csv.str());
  }
  return kExitOk;
}

int cmd_catalog_list(const std::string& catalog_path) {
  CatalogPtr catalog = load_catalog(catalog_path);
  char* listing = nullptr;
  check(rg_catalog_listing(catalog.get(), &listing), "catalog");
  char* hash = nullptr;
  check(rg_catalog_hash(catalog.get(), &hash), "catalog");
  std::cout << take(listing) << rg_catalog_size(catalog.get()) << " templates, hash " << take(hash) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Procedural road scenario generator"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Generate a batch of scenarios");
  generate->add_option("--size", gen.size, "Components per scenario")->check(CLI::PositiveNumber);
  generate->add_option("--budget", gen.budget, "Scenario count (500) or duration (90s, 30m, 24h)");
  generate->add_option("--seed", gen.seed, "Batch seed");
  generate->add_option("--mode", gen.mode, "guided or random")->check(CLI::IsMember({"guided", "random"}));
  generate->add_option("--constraints", gen.constraints, "Constraints JSON file")->check(CLI::ExistingFile);
  generate->add_option("--catalog", gen.catalog, "Catalog validity table JSON file")->check(CLI::ExistingFile);
  generate->add_option("--out", gen.out, "Output directory")->required();

  std::string dedup_in, dedup_out;
  double threshold = 1.0;
  auto* dedup = app.add_subcommand("dedup", "Remove topologically duplicated scenarios");
  dedup->add_option("--in", dedup_in, "Directory of scenario documents")->required();
  dedup->add_option("--threshold", threshold, "Similarity threshold in (0, 1]");
  dedup->add_option("--out", dedup_out, "Directory for the kept set (default: IN/dedup)");

  std::string export_in, export_format, export_out;
  double scale = 4.0;
  auto* exp = app.add_subcommand("export", "Convert scenario documents");
  exp->add_option("--in", export_in, "Scenario document or directory")->required();
  exp->add_option("--format", export_format, "xodr, svg or json")
      ->required()
      ->check(CLI::IsMember({"xodr", "svg", "json"}));
  exp->add_option("--out", export_out, "Output directory (default: input directory)");
  exp->add_option("--scale", scale, "SVG pixels per meter");

  std::vector<std::string> stats_in;
  std::string stats_catalog, stats_rows;
  auto* stats = app.add_subcommand("stats", "Report uniqueness and coverage for one or two runs");
  stats->add_option("--in,dirs", stats_in, "Run directories (one or two)")->required()->expected(1, 2);
  stats->add_option("--catalog", stats_catalog, "Catalog the runs used (default: shipped catalog)");
  stats->add_option("--rows", stats_rows, "Also write metric rows as CSV");

  std::string catalog_path;
  auto* catalog = app.add_subcommand("catalog", "Catalog inspection");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "Print the template catalog");
  list->add_option("--catalog", catalog_path, "Catalog validity table JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (dedup->parsed()) return cmd_dedup(dedup_in, threshold, dedup_out);
    if (exp->parsed()) return cmd_export(export_in, export_format, export_out, scale);
    if (stats->parsed()) return cmd_stats(stats_in, stats_catalog, stats_rows);
    if (list->parsed()) return cmd_catalog_list(catalog_path);
  } catch (const CliError& e) {
    std::cerr << "roadgen: " << e.message << "\n";
    if (e.code == kExitUsage) std::cerr << app.help();
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "roadgen: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
