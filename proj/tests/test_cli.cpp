#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "saa/manifest.hpp"
#include "saa/pgm.hpp"
#include "saa/rng.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string cli_path() {
  const char* env = std::getenv("SAA_CLI");
  REQUIRE(env != nullptr);
  return env;
}

RunResult run(const std::string& args) {
  const std::string cmd = "SOURCE_DATE_EPOCH=1700000000 " + cli_path() + " " +
                          args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (size_t got = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("saa_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("run manifests round-trip through JSON losslessly") {
  saa::RunManifest m;
  m.command = "stats";
  m.configs = {saa::validate_config(saa::AdderKind::Ldca, 32, 10),
               saa::validate_config(saa::AdderKind::MHerloa, 32, 10),
               saa::validate_config(saa::AdderKind::Accurate, 16, 3)};
  m.mode = "monte-carlo";
  m.samples = 1'000'000;
  m.seed = 42;
  m.timestamp = 1700000000;
  const auto back = saa::manifest_from_json(
      nlohmann::json::parse(saa::to_json(m).dump()));
  CHECK(back == m);
}

TEST_CASE("sum prints approx, accurate and error") {
  const RunResult r = run("sum --adder loa --n 4 --p 2 --x 7 --y 1");
  CHECK(r.code == 0);
  CHECK(r.out == "approx=7 accurate=8 error=-1\n");

  const RunResult zero = run("sum --adder accurate --n 32 --p 0 --x 0 --y 0");
  CHECK(zero.code == 0);
  CHECK(zero.out == "approx=0 accurate=0 error=0\n");

  const RunResult hex = run("sum --adder loa --n 8 --p 2 --x 0x07 --y 0b1");
  CHECK(hex.code == 0);
  CHECK(hex.out == "approx=7 accurate=8 error=-1\n");
}

TEST_CASE("exit codes separate usage, domain and mismatch failures") {
  CHECK(run("sum --adder herloa --n 32 --p 1 --x 0 --y 0").code == 1);
  CHECK(run("sum --adder loa --n 4 --p 2 --x 99 --y 0").code == 1);  // operand too wide
  CHECK(run("sum --adder loa --n 4 --p 2 --x 7").code == 2);         // missing --y
  CHECK(run("sum --adder nosuch --n 4 --p 2 --x 1 --y 1").code == 2);
  CHECK(run("bogus-subcommand").code == 2);
  CHECK(run("stats --adder loa --n 40 --p 17 --mode exhaustive-low --out /tmp/x.csv").code == 1);
}

TEST_CASE("stats writes the CSV contract") {
  const fs::path dir = fresh_dir("stats");
  const fs::path out = dir / "stats.csv";
  const RunResult r = run("stats --adder accurate --n 32 --p 10 --mode exhaustive-low --out " +
                          out.string());
  REQUIRE(r.code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("adder,n,p,total,mae,rmse,mean_signed,max_abs,error_rate\n") == 0);
  CHECK(csv.find("accurate,32,10,1048576,0,0,0,0,0") != std::string::npos);
  CHECK(fs::exists(out.string() + ".manifest.json"));

  const fs::path full = dir / "lzta.csv";
  REQUIRE(run("stats --adder lzta --n 4 --p 2 --mode exhaustive-full --out " +
              full.string()).code == 0);
  CHECK(slurp(full).find("lzta,4,2,256,1,") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
  const fs::path dir = fresh_dir("determinism");
  const fs::path a = dir / "a.csv";
  const fs::path b = dir / "b.csv";
  const std::string flags =
      " --adder all --n 32 --p 10 --mode monte-carlo --samples 20000 --seed 7 --out ";
  REQUIRE(run("stats" + flags + a.string()).code == 0);
  REQUIRE(run("stats" + flags + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a.string() + ".manifest.json") == slurp(b.string() + ".manifest.json"));

  // 14 kinds in canonical order, accurate first
  const std::string csv = slurp(a);
  CHECK(csv.find("accurate,") < csv.find("loa,"));
  CHECK(csv.find("loa,") < csv.find("loawa,"));
  CHECK(csv.find("herloa,") < csv.find("m_herloa,"));
}

TEST_CASE("hist emits the derived LOAWA distribution") {
  const fs::path dir = fresh_dir("hist");
  const fs::path out = dir / "h.csv";
  REQUIRE(run("hist --adder loawa --n 4 --p 2 --mode exhaustive-low --out " +
              out.string()).code == 0);
  CHECK(slurp(out) ==
        "error,count,percent\n"
        "-3,1,6.25\n"
        "-2,3,18.75\n"
        "-1,3,18.75\n"
        "0,9,56.25\n");

  const fs::path acc = dir / "acc.csv";
  REQUIRE(run("hist --adder accurate --n 8 --p 4 --mode exhaustive-full --out " +
              acc.string()).code == 0);
  CHECK(slurp(acc) == "error,count,percent\n0,65536,100\n");
}

TEST_CASE("emit writes deterministic Verilog files and refuses overwrites") {
  const fs::path dir = fresh_dir("emit");
  REQUIRE(run("emit --adder accurate --n 32 --p 0 --outdir " + dir.string()).code == 0);
  const fs::path vfile = dir / "accurate_n32_p0.v";
  REQUIRE(fs::exists(vfile));
  const std::string text = slurp(vfile);
  CHECK(text.find("module accurate_n32_p0 (X, Y, SUM);") != std::string::npos);
  CHECK(text.find("\r") == std::string::npos);  // LF line endings

  CHECK(run("emit --adder accurate --n 32 --p 0 --outdir " + dir.string()).code == 1);
  CHECK(run("emit --adder accurate --n 32 --p 0 --force --outdir " + dir.string()).code == 0);

  const fs::path all = fresh_dir("emit_all");
  REQUIRE(run("emit --adder all --n 32 --p 10 --outdir " + all.string()).code == 0);
  size_t vcount = 0;
  for (const auto& entry : fs::directory_iterator(all))
    if (entry.path().extension() == ".v") ++vcount;
  CHECK(vcount == 14);
  CHECK(fs::exists(all / "ldca_n32_p10_l5.v"));
  CHECK(fs::exists(all / "m_herloa_n32_p10_k6.v"));
}

TEST_CASE("verify reports per-kind pair counts and honors fault injection") {
  const RunResult ok = run("verify --adder all --n 8 --p 4 --mode exhaustive");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("loa: pairs_checked=65536 mismatches=0") != std::string::npos);
  CHECK(ok.out.find("m_herloa: pairs_checked=65536 mismatches=0") != std::string::npos);

  const RunResult sampled =
      run("verify --adder herloa --n 32 --p 10 --mode sampled --samples 5000 --seed 3");
  CHECK(sampled.code == 0);
  CHECK(sampled.out.find("pairs_checked=5004") != std::string::npos);

  const RunResult bad = run("verify --adder loa --n 8 --p 4 --mode exhaustive --inject-fault");
  CHECK(bad.code == 3);
  CHECK(bad.out.find("first mismatch") != std::string::npos);
}

TEST_CASE("image benchmark reports inf PSNR for the accurate pipeline") {
  const fs::path dir = fresh_dir("image");
  saa::GrayImage img = saa::make_image(64, 64);
  saa::SplitMix64 gen(5);
  for (auto& px : img.pixels) px = static_cast<uint8_t>(gen.next_bits(8));
  const fs::path in = dir / "tiny.pgm";
  saa::save_pgm_file(img, in.string());

  const fs::path report = dir / "report.json";
  const fs::path csv = dir / "cells.csv";
  const RunResult r = run("image --adder accurate --n 32 --p 10 --input " + in.string() +
                          " --outdir " + (dir / "out").string() + " --report " +
                          report.string() + " --csv " + csv.string());
  REQUIRE(r.code == 0);
  REQUIRE(fs::exists(dir / "out" / "tiny_accurate.pgm"));
  CHECK(saa::load_pgm_file((dir / "out" / "tiny_accurate.pgm").string()) == img);

  const std::string jtext = slurp(report);
  CHECK(jtext.find("\"inf\"") != std::string::npos);
  CHECK(jtext.find("\"manifest\"") != std::string::npos);
  CHECK(slurp(csv).find("tiny,accurate,inf,1\n") != std::string::npos);

  CHECK(run("image --adder accurate --n 32 --p 10 --input /nonexistent.pgm --outdir " +
            (dir / "out").string() + " --report " + report.string()).code == 1);
}
