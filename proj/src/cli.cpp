#include "floodfill/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "floodfill/ascii_grid.hpp"
#include "floodfill/bench.hpp"
#include "floodfill/error.hpp"
#include "floodfill/fill.hpp"
#include "floodfill/flow.hpp"
#include "floodfill/oracles.hpp"
#include "floodfill/watershed.hpp"

namespace floodfill {

namespace {

using nlohmann::json;

struct Common {
  int conn = 8;
  bool quiet = false;
  std::string report_path;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--conn", common.conn, "Neighborhood connectivity")
      ->check(CLI::IsMember({4, 8}))
      ->capture_default_str();
  cmd->add_flag("--quiet", common.quiet, "Suppress the text run report");
}

Connectivity to_conn(int conn) { return conn == 4 ? Connectivity::Four : Connectivity::Eight; }

json report_json(std::string_view algorithm, const FillReport& r) {
  return json{{"algorithm", algorithm},
              {"backend", backend_name(r.backend)},
              {"cells_raised", r.cells_raised},
              {"volume_added", r.volume_added},
              {"max_raise", r.max_raise},
              {"pit_warnings", r.pit_warnings},
              {"notes", r.notes}};
}

void write_report(const Common& common, const json& report, std::ostream& out) {
  if (!common.report_path.empty()) {
    std::ofstream f(common.report_path, std::ios::trunc);
    if (!f) throw IoError("cannot open " + common.report_path + " for writing");
    f << report.dump(2) << '\n';
    if (!f) throw IoError("write failed: " + common.report_path);
  }
  if (common.quiet) return;
  for (const auto& [key, value] : report.items()) {
    if (value.is_array()) {
      for (const auto& note : value) out << "note: " << note.get<std::string>() << '\n';
    } else if (value.is_string()) {
      out << key << ": " << value.get<std::string>() << '\n';
    } else {
      out << key << ": " << value.dump() << '\n';
    }
  }
}

std::uint64_t effective_seed(std::uint64_t seed) {
  const char* env = std::getenv("FLOODFILL_SEED");
  if (env == nullptr || *env == '\0') return seed;
  std::uint64_t value = 0;
  const std::string_view text(env);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvariantError("FLOODFILL_SEED must be an unsigned integer");
  }
  return value;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Depression filling, flow directions and watershed labels for raster DEMs", "floodfill"};
  app.require_subcommand(1);

  Common common;
  std::string input, output, second;

  auto* fill = app.add_subcommand("fill", "Fill depressions (flat surfaces over pits)");
  std::string algorithm = "improved";
  std::string backend = "auto";
  fill->add_option("input", input, "Input ESRI ASCII grid")->required();
  fill->add_option("output", output, "Output ESRI ASCII grid")->required();
  fill->add_option("--backend", backend, "Priority queue backend")
      ->check(CLI::IsMember({"heap", "bucket", "auto"}))
      ->capture_default_str();
  fill->add_option("--algorithm", algorithm, "Flooding variant")
      ->check(CLI::IsMember({"original", "improved"}))
      ->capture_default_str();
  fill->add_option("--report", common.report_path, "Write a JSON run report");
  add_common(fill, common);

  auto* fill_eps = app.add_subcommand("fill-eps", "Fill depressions leaving a minimal gradient");
  fill_eps->add_option("input", input, "Input ESRI ASCII grid")->required();
  fill_eps->add_option("output", output, "Output ESRI ASCII grid")->required();
  fill_eps->add_option("--report", common.report_path, "Write a JSON run report");
  add_common(fill_eps, common);

  auto* flowdirs = app.add_subcommand("flowdirs", "Flow directions carved through depressions");
  bool esri_codes = false;
  flowdirs->add_option("input", input, "Input ESRI ASCII grid")->required();
  flowdirs->add_option("output", output, "Output integer grid of direction codes")->required();
  flowdirs->add_flag("--esri-codes", esri_codes, "Write ESRI power-of-two codes instead of 0..8");
  add_common(flowdirs, common);

  auto* watersheds = app.add_subcommand("watersheds", "Label watersheds by edge outlet");
  std::string fill_out, boundaries_out;
  watersheds->add_option("input", input, "Input ESRI ASCII grid")->required();
  watersheds->add_option("output", output, "Output integer grid of labels")->required();
  watersheds->add_option("--fill-out", fill_out, "Also write the filled DEM from the same sweep");
  watersheds->add_option("--boundaries", boundaries_out, "Also write a 0/1 watershed boundary grid");
  add_common(watersheds, common);

  auto* verify = app.add_subcommand("verify", "Check a filled DEM against its source");
  bool strict = false;
  verify->add_option("original", input, "Original DEM")->required();
  verify->add_option("filled", second, "Filled DEM")->required();
  verify->add_flag("--strict", strict, "Require strictly descending drainage (epsilon fills)");
  add_common(verify, common);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic DEM");
  std::string kind;
  std::int32_t rows = 64, cols = 64;
  std::uint64_t seed = 1;
  std::optional<std::int32_t> pits;
  bool integer = false;
  synth->add_option("kind", kind, "slope, pits, nested, plateau or noise")
      ->required()
      ->check(CLI::IsMember({"slope", "pits", "nested", "plateau", "noise"}));
  synth->add_option("output", output, "Output ESRI ASCII grid")->required();
  synth->add_option("--rows", rows)->check(CLI::Range(2, 1 << 15))->capture_default_str();
  synth->add_option("--cols", cols)->check(CLI::Range(2, 1 << 15))->capture_default_str();
  synth->add_option("--seed", seed, "Random seed (FLOODFILL_SEED overrides)")->capture_default_str();
  synth->add_option("--pits", pits, "Number of basins for the pits kind")->check(CLI::NonNegativeNumber);
  synth->add_flag("--integer", integer, "Round to an integer raster");
  add_common(synth, common);

  auto* bench = app.add_subcommand("bench", "Time the fill variants on synthetic DEMs");
  BenchConfig config;
  std::string csv_path;
  bool no_planchon = false;
  bench->add_option("--sizes", config.sizes, "Square raster sizes")->delimiter(',')->capture_default_str();
  bench->add_option("--fractions", config.depression_percents, "Depression percentages")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--repeats", config.repeats)->check(CLI::Range(3, 1000))->capture_default_str();
  bench->add_option("--seed", config.seed, "Random seed (FLOODFILL_SEED overrides)")->capture_default_str();
  bench->add_option("--csv", csv_path, "Write records as CSV");
  bench->add_flag("--no-planchon", no_planchon, "Skip the fixpoint baseline");
  add_common(bench, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    for (const auto* sub : app.get_subcommands()) err << sub->help();
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  const auto conn = to_conn(common.conn);
  try {
    if (fill->parsed()) {
      const auto dem = load_ascii_grid(input);
      const auto queue = parse_backend(backend);
      const auto result = algorithm == "original" ? priority_flood(dem, conn, queue)
                                                  : improved_priority_flood(dem, conn, queue);
      save_ascii_grid(result.filled, output);
      write_report(common,
                   report_json(algorithm == "original" ? "priority_flood" : "improved_priority_flood",
                               result.report),
                   out);
    } else if (fill_eps->parsed()) {
      const auto dem = load_ascii_grid(input);
      const auto result = priority_flood_epsilon(dem, conn);
      save_ascii_grid(result.filled, output);
      write_report(common, report_json("priority_flood_epsilon", result.report), out);
      if (result.report.pit_warnings > 0) {
        err << "warning: " << result.report.pit_warnings
            << " cells were raised above terrain that stood higher than their pit outlet\n";
      }
    } else if (flowdirs->parsed()) {
      const auto dem = load_ascii_grid(input);
      const auto field = priority_flood_flowdirs(dem, conn);
      save_flow_field(field, output, esri_codes ? FlowEncoding::Esri : FlowEncoding::Compact);
      if (!common.quiet) out << "flow directions written to " << output << '\n';
    } else if (watersheds->parsed()) {
      const auto dem = load_ascii_grid(input);
      const auto result = priority_flood_watersheds(dem, conn, !fill_out.empty());
      save_label_field(result.labels, output);
      if (result.filled) save_ascii_grid(*result.filled, fill_out);
      if (!boundaries_out.empty()) {
        const auto mask = watershed_boundaries(result.labels, conn);
        std::vector<std::int32_t> codes(mask.begin(), mask.end());
        for (std::size_t i = 0; i < codes.size(); ++i) {
          if (result.labels.labels[i] == kLabelNoData) codes[i] = -1;
        }
        save_int_grid(dem.header(), codes, -1, boundaries_out);
      }
      if (!common.quiet) out << "watersheds: " << result.labels.count << '\n';
    } else if (verify->parsed()) {
      const auto z = load_ascii_grid(input);
      const auto w = load_ascii_grid(second);
      const auto result = verify_fill(z, w, conn, strict);
      if (!common.quiet) {
        out << "criterion1 (raised only): " << (result.criterion1_ok ? "ok" : "FAIL") << '\n';
        out << "criterion2 (drains): " << (result.criterion2_ok ? "ok" : "FAIL") << '\n';
        out << "criterion3 (minimal): "
            << (!result.criterion3_checked ? "skipped" : result.criterion3_ok ? "ok" : "FAIL") << '\n';
      }
      if (!result.ok()) {
        const auto& f = *result.first_failure;
        err << "verification failed at row " << f.cell.row << ", col " << f.cell.col << ": " << f.reason
            << '\n';
        return kExitVerifyFailed;
      }
    } else if (synth->parsed()) {
      auto dem = synth_dem(parse_synth_kind(kind), rows, cols, effective_seed(seed), pits);
      if (integer) dem = round_to_integer(dem);
      save_ascii_grid(dem, output);
      if (!common.quiet) out << "wrote " << kind << ' ' << rows << 'x' << cols << " to " << output << '\n';
    } else if (bench->parsed()) {
      config.seed = effective_seed(config.seed);
      config.conn = conn;
      config.include_planchon = !no_planchon;
      const auto records = bench_suite(config, common.quiet ? nullptr : &out);
      const auto csv = bench_csv(records);
      if (!csv_path.empty()) {
        std::ofstream f(csv_path, std::ios::trunc);
        if (!f) throw IoError("cannot open " + csv_path + " for writing");
        f << csv;
      } else {
        out << csv;
      }
      if (!common.quiet) {
        for (const auto& p : improved_speedup_series(records)) {
          out << "speedup " << p.raster_id << " depression " << p.pct_depression << "%: " << p.speedup_pct
              << "%\n";
        }
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace floodfill
