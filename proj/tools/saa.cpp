// saa — command-line laboratory for gate-level static approximate adders:
// single sums, error statistics, histograms, the FFT/IFFT image benchmark,
// structural Verilog emission, and behavioral/netlist verification.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "saa/adder.hpp"
#include "saa/benchmark.hpp"
#include "saa/equivalence.hpp"
#include "saa/error_stats.hpp"
#include "saa/fixed_fft.hpp"
#include "saa/manifest.hpp"
#include "saa/pgm.hpp"
#include "saa/quality.hpp"
#include "saa/verilog.hpp"
#include "saa/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit codes: 0 ok, 1 domain/config error, 2 usage error, 3 verify mismatch.
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMismatch = 3;

std::string fmt10(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json json_real(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

uint64_t parse_operand(const std::string& text) {
  try {
    size_t used = 0;
    uint64_t v = 0;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
      v = std::stoull(text.substr(2), &used, 16);
      used += 2;
    } else if (text.size() > 2 && text[0] == '0' && (text[1] == 'b' || text[1] == 'B')) {
      v = std::stoull(text.substr(2), &used, 2);
      used += 2;
    } else {
      v = std::stoull(text, &used, 10);
    }
    if (used != text.size()) throw saa::ConfigError("bad numeric literal: " + text);
    return v;
  } catch (const saa::ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw saa::ConfigError("bad numeric literal: " + text);
  }
}

std::vector<saa::AdderKind> parse_kinds(const std::string& name) {
  if (name == "all")
    return {saa::all_adder_kinds.begin(), saa::all_adder_kinds.end()};
  const auto kind = saa::kind_from_name(name);
  if (!kind)
    throw CLI::ValidationError("--adder", "unknown adder kind '" + name + "'");
  return {*kind};
}

struct CommonFlags {
  std::string adder = "accurate";
  int n = 32;
  int p = 10;
  std::optional<int> l;
  std::optional<int> k;

  void attach(CLI::App* cmd, bool with_lk = true) {
    cmd->add_option("--adder", adder, "adder kind, or 'all'")->required();
    cmd->add_option("--n", n, "total adder width in bits")->required();
    cmd->add_option("--p", p, "imprecise part width in bits")->required();
    if (with_lk) {
      cmd->add_option("--l", [this](const CLI::results_t& r) {
        try {
          l = std::stoi(r[0]);
        } catch (const std::exception&) {
          return false;  // CLI11 turns this into a conversion error
        }
        return true;
      }, "LDCA lower-section size (default p/2)");
      cmd->add_option("--k", [this](const CLI::results_t& r) {
        try {
          k = std::stoi(r[0]);
        } catch (const std::exception&) {
          return false;
        }
        return true;
      }, "M-HERLOA constant-one count (default p-4)");
    }
  }

  std::vector<saa::AdderConfig> resolve() const {
    std::vector<saa::AdderConfig> cfgs;
    for (saa::AdderKind kind : parse_kinds(adder)) {
      const auto lv = kind == saa::AdderKind::Ldca ? l : std::nullopt;
      const auto kv = kind == saa::AdderKind::MHerloa ? k : std::nullopt;
      cfgs.push_back(saa::validate_config(kind, n, p, lv, kv));
    }
    return cfgs;
  }
};

unsigned env_threads() {
  if (const char* env = std::getenv("SAA_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 0;  // auto
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw saa::ConfigError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

void write_manifest_sidecar(const fs::path& artifact, const saa::RunManifest& m) {
  write_text_file(artifact.string() + ".manifest.json", to_json(m).dump(2) + "\n");
}

saa::RunManifest make_manifest(const std::string& command,
                               const std::vector<saa::AdderConfig>& cfgs,
                               const std::string& mode, uint64_t samples,
                               uint64_t seed) {
  saa::RunManifest m;
  m.command = command;
  m.configs = cfgs;
  m.mode = mode;
  m.samples = samples;
  m.seed = seed;
  m.timestamp = saa::manifest_timestamp();
  return m;
}

// ---- stats/hist -----------------------------------------------------------

saa::ErrorStats run_stats(const saa::AdderConfig& cfg, const std::string& mode,
                          uint64_t samples, uint64_t seed) {
  if (mode == "exhaustive-low") return saa::exhaustive_low_stats(cfg);
  if (mode == "exhaustive-full") return saa::exhaustive_full_stats(cfg);
  return saa::monte_carlo_stats(cfg, samples, {seed});
}

int cmd_stats(const CommonFlags& flags, const std::string& mode, uint64_t samples,
              uint64_t seed, const std::string& out_path) {
  const std::vector<saa::AdderConfig> cfgs = flags.resolve();
  const saa::RunManifest manifest = make_manifest("stats", cfgs, mode, samples, seed);

  std::vector<std::pair<saa::AdderConfig, saa::ErrorStats>> rows;
  for (const saa::AdderConfig& cfg : cfgs)
    rows.emplace_back(cfg, run_stats(cfg, mode, samples, seed));

  const fs::path out(out_path);
  if (out.extension() == ".json") {
    json jrows = json::array();
    for (const auto& [cfg, st] : rows)
      jrows.push_back({{"adder", std::string(saa::kind_name(cfg.kind))},
                       {"n", cfg.n},
                       {"p", cfg.p},
                       {"total", st.total},
                       {"mae", st.mae},
                       {"rmse", st.rmse},
                       {"mean_signed", st.mean_signed},
                       {"max_abs", st.max_abs},
                       {"error_rate", st.error_rate}});
    write_text_file(out, json{{"manifest", to_json(manifest)}, {"rows", jrows}}.dump(2) + "\n");
  } else {
    std::string csv = "adder,n,p,total,mae,rmse,mean_signed,max_abs,error_rate\n";
    for (const auto& [cfg, st] : rows) {
      csv += std::string(saa::kind_name(cfg.kind)) + "," + std::to_string(cfg.n) +
             "," + std::to_string(cfg.p) + "," + std::to_string(st.total) + "," +
             fmt10(st.mae) + "," + fmt10(st.rmse) + "," + fmt10(st.mean_signed) +
             "," + std::to_string(st.max_abs) + "," + fmt10(st.error_rate) + "\n";
    }
    write_text_file(out, csv);
    write_manifest_sidecar(out, manifest);
  }
  return 0;
}

int cmd_hist(const CommonFlags& flags, const std::string& mode, uint64_t samples,
             uint64_t seed, const std::string& out_path) {
  const std::vector<saa::AdderConfig> cfgs = flags.resolve();
  if (cfgs.size() != 1)
    throw CLI::ValidationError("--adder", "hist takes a single adder kind");
  const saa::RunManifest manifest = make_manifest("hist", cfgs, mode, samples, seed);
  const saa::ErrorStats st = run_stats(cfgs.front(), mode, samples, seed);
  const auto rows = saa::histogram_percentages(st);

  const fs::path out(out_path);
  if (out.extension() == ".json") {
    json jrows = json::array();
    for (const auto& [e, pct] : rows) {
      jrows.push_back({{"error", e},
                       {"count", st.histogram.at(e)},
                       {"percent", pct}});
    }
    write_text_file(out, json{{"manifest", to_json(manifest)}, {"rows", jrows}}.dump(2) + "\n");
  } else {
    std::string csv = "error,count,percent\n";
    for (const auto& [e, pct] : rows)
      csv += std::to_string(e) + "," + std::to_string(st.histogram.at(e)) + "," +
             fmt10(pct) + "\n";
    write_text_file(out, csv);
    write_manifest_sidecar(out, manifest);
  }
  return 0;
}

// ---- image ----------------------------------------------------------------

int cmd_image(const CommonFlags& flags, const std::vector<std::string>& inputs,
              const std::string& outdir, const std::string& report_path,
              const std::string& csv_path) {
  const std::vector<saa::AdderConfig> cfgs = flags.resolve();
  const saa::RunManifest manifest = make_manifest("image", cfgs, "fft-roundtrip", 0, 0);

  std::vector<saa::GrayImage> images;
  std::vector<std::string> names;
  for (const std::string& path : inputs) {
    images.push_back(saa::load_pgm_file(path));
    names.push_back(fs::path(path).stem().string());
  }

  const saa::BenchReport report =
      saa::benchmark(images, names, cfgs, {}, env_threads());

  fs::create_directories(outdir);
  for (size_t ii = 0; ii < names.size(); ++ii)
    for (size_t ai = 0; ai < cfgs.size(); ++ai) {
      const saa::BenchCell& cell = report.cells[ii * cfgs.size() + ai];
      const fs::path out = fs::path(outdir) /
                           (names[ii] + "_" + std::string(saa::kind_name(cell.kind)) + ".pgm");
      saa::save_pgm_file(cell.reconstructed, out.string());
    }

  json jpsnr = json::object(), jssim = json::object();
  for (size_t ai = 0; ai < cfgs.size(); ++ai) {
    json prow = json::object(), srow = json::object();
    for (size_t ii = 0; ii < names.size(); ++ii) {
      const saa::BenchCell& cell = report.cells[ii * cfgs.size() + ai];
      prow[names[ii]] = json_real(cell.psnr_db);
      srow[names[ii]] = json_real(cell.ssim);
    }
    prow["average"] = json_real(report.avg_psnr[ai]);
    srow["average"] = json_real(report.avg_ssim[ai]);
    const std::string kname{saa::kind_name(cfgs[ai].kind)};
    jpsnr[kname] = prow;
    jssim[kname] = srow;
  }
  json adders = json::array();
  for (const saa::AdderConfig& cfg : cfgs) adders.push_back(std::string(saa::kind_name(cfg.kind)));
  write_text_file(report_path, json{{"manifest", to_json(manifest)},
                                    {"images", names},
                                    {"adders", adders},
                                    {"psnr", jpsnr},
                                    {"ssim", jssim}}.dump(2) + "\n");

  if (!csv_path.empty()) {
    std::string csv = "image,adder,psnr_db,ssim\n";
    for (const saa::BenchCell& cell : report.cells)
      csv += cell.image + "," + std::string(saa::kind_name(cell.kind)) + "," +
             fmt10(cell.psnr_db) + "," + fmt10(cell.ssim) + "\n";
    write_text_file(csv_path, csv);
    write_manifest_sidecar(csv_path, manifest);
  }
  return 0;
}

// ---- emit / verify ---------------------------------------------------------

int cmd_emit(const CommonFlags& flags, const std::string& outdir, bool force) {
  const std::vector<saa::AdderConfig> cfgs = flags.resolve();
  fs::create_directories(outdir);
  for (const saa::AdderConfig& cfg : cfgs) {
    const std::string name = saa::module_name_for(cfg);
    const fs::path path = fs::path(outdir) / (name + ".v");
    if (fs::exists(path) && !force)
      throw saa::ConfigError(path.string() + " exists (use --force to overwrite)");
    write_text_file(path, saa::emit_verilog(saa::build_adder_netlist(cfg), name));
  }
  return 0;
}

int cmd_verify(const CommonFlags& flags, const std::string& mode, uint64_t samples,
               uint64_t seed, bool inject_fault) {
  const std::vector<saa::AdderConfig> cfgs = flags.resolve();
  const saa::EquivalenceMode emode = mode == "exhaustive"
                                         ? saa::EquivalenceMode::Exhaustive
                                         : saa::EquivalenceMode::Sampled;
  bool all_ok = true;
  for (const saa::AdderConfig& cfg : cfgs) {
    saa::Netlist nl = saa::build_adder_netlist(cfg);
    if (inject_fault) {
      for (saa::Gate& g : nl.gates)
        if (g.kind == saa::GateKind::Or2) {
          g.kind = saa::GateKind::And2;
          break;
        }
    }
    const saa::EquivalenceReport r =
        saa::check_equivalence(cfg, emode, samples, {seed}, &nl);
    std::printf("%s: pairs_checked=%" PRIu64 " mismatches=%" PRIu64 "\n",
                std::string(saa::kind_name(cfg.kind)).c_str(), r.pairs_checked,
                r.mismatches);
    if (r.first_mismatch)
      std::printf("  first mismatch: x=%" PRIu64 " y=%" PRIu64
                  " behavioral=%" PRIu64 " netlist=%" PRIu64 "\n",
                  r.first_mismatch->x, r.first_mismatch->y,
                  r.first_mismatch->behavioral, r.first_mismatch->netlist);
    all_ok = all_ok && r.ok();
  }
  return all_ok ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gate-level static approximate adder laboratory"};
  app.set_version_flag("--version", saa::version);
  app.require_subcommand(1);

  int status = 0;

  // sum
  auto* sum = app.add_subcommand("sum", "add two operands through one adder");
  CommonFlags sum_flags;
  sum_flags.attach(sum);
  std::string sum_x, sum_y;
  sum->add_option("--x", sum_x, "first operand (decimal, 0x.., or 0b..)")->required();
  sum->add_option("--y", sum_y, "second operand")->required();
  sum->callback([&] {
    const saa::AdderConfig cfg = sum_flags.resolve().at(0);
    const saa::Word x(parse_operand(sum_x), cfg.n);
    const saa::Word y(parse_operand(sum_y), cfg.n);
    const uint64_t approx = saa::approx_sum(cfg, x, y).value;
    const uint64_t accurate = saa::accurate_sum(cfg, x, y).value;
    std::printf("approx=%" PRIu64 " accurate=%" PRIu64 " error=%" PRId64 "\n",
                approx, accurate,
                static_cast<int64_t>(approx) - static_cast<int64_t>(accurate));
  });

  // stats
  auto* stats = app.add_subcommand("stats", "error statistics table (CSV or JSON)");
  CommonFlags stats_flags;
  stats_flags.attach(stats);
  std::string stats_mode, stats_out;
  uint64_t stats_samples = 1'000'000, stats_seed = 0;
  stats->add_option("--mode", stats_mode, "exhaustive-low | exhaustive-full | monte-carlo")
      ->required()
      ->check(CLI::IsMember({"exhaustive-low", "exhaustive-full", "monte-carlo"}));
  stats->add_option("--samples", stats_samples, "monte-carlo sample count");
  stats->add_option("--seed", stats_seed, "monte-carlo seed");
  stats->add_option("--out", stats_out, "output path (.csv or .json)")->required();
  stats->callback([&] {
    status = cmd_stats(stats_flags, stats_mode, stats_samples, stats_seed, stats_out);
  });

  // hist
  auto* hist = app.add_subcommand("hist", "error histogram (CSV or JSON)");
  CommonFlags hist_flags;
  hist_flags.attach(hist);
  std::string hist_mode, hist_out;
  uint64_t hist_samples = 1'000'000, hist_seed = 0;
  hist->add_option("--mode", hist_mode, "exhaustive-low | exhaustive-full | monte-carlo")
      ->required()
      ->check(CLI::IsMember({"exhaustive-low", "exhaustive-full", "monte-carlo"}));
  hist->add_option("--samples", hist_samples, "monte-carlo sample count");
  hist->add_option("--seed", hist_seed, "monte-carlo seed");
  hist->add_option("--out", hist_out, "output path (.csv or .json)")->required();
  hist->callback([&] {
    status = cmd_hist(hist_flags, hist_mode, hist_samples, hist_seed, hist_out);
  });

  // image
  auto* image = app.add_subcommand("image", "FFT/IFFT reconstruction benchmark");
  CommonFlags image_flags;
  image_flags.attach(image);
  std::vector<std::string> image_inputs;
  std::string image_outdir, image_report, image_csv;
  image->add_option("--input", image_inputs, "input PGM files")->required()->expected(-1);
  image->add_option("--outdir", image_outdir, "directory for reconstructed PGMs")->required();
  image->add_option("--report", image_report, "JSON report path")->required();
  image->add_option("--csv", image_csv, "optional CSV report path");
  image->callback([&] {
    status = cmd_image(image_flags, image_inputs, image_outdir, image_report, image_csv);
  });

  // emit
  auto* emit = app.add_subcommand("emit", "emit structural Verilog netlists");
  CommonFlags emit_flags;
  emit_flags.attach(emit);
  std::string emit_outdir;
  bool emit_force = false;
  emit->add_option("--outdir", emit_outdir, "output directory for .v files")->required();
  emit->add_flag("--force", emit_force, "overwrite existing files");
  emit->callback([&] { status = cmd_emit(emit_flags, emit_outdir, emit_force); });

  // verify
  auto* verify = app.add_subcommand("verify", "check netlists against the behavioral models");
  CommonFlags verify_flags;
  verify_flags.attach(verify);
  std::string verify_mode;
  uint64_t verify_samples = 1'000'000, verify_seed = 0;
  bool inject_fault = false;
  verify->add_option("--mode", verify_mode, "exhaustive | sampled")
      ->required()
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  verify->add_option("--samples", verify_samples, "sampled-mode pair count");
  verify->add_option("--seed", verify_seed, "sampled-mode seed");
  verify->add_flag("--inject-fault", inject_fault)->group("");  // test hook
  verify->callback([&] {
    status = cmd_verify(verify_flags, verify_mode, verify_samples, verify_seed,
                        inject_fault);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const saa::OverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return status;
}
