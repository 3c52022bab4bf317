#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using noisemax::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "noisemax_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_CASE("alpha >= 1 is a usage error citing the hypothesis") {
  const Outcome r = invoke({"gumbel", "--alpha", "1.2", "--n", "64", "--reps", "100"});
  CHECK(r.code == 2);
  CHECK(r.err.find("alpha") != std::string::npos);
  CHECK(r.err.find("< 1") != std::string::npos);
  CHECK(invoke({"conditions", "--alpha", "1", "--n", "64"}).code == 2);
}

TEST_CASE("malformed input is a usage error") {
  CHECK(invoke({"conditions", "--alpha", "0", "--n", "64", "--bogus"}).code == 2);
  CHECK(invoke({"conditions", "--alpha", "zero", "--n", "64"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"gumbel", "--alpha", "0", "--n", "64", "--reps", "10"}).code == 2);
  CHECK(invoke({"gumbel", "--alpha", "0", "--n", "1", "--reps", "100"}).code == 2);
  CHECK(invoke({"gumbel", "--alpha", "0", "--n", "64", "--reps", "100", "--oversample", "2"}).code == 2);
  CHECK(invoke({"gumbel", "--n", "64"}).code == 2);
  CHECK(invoke({"covariance", "--alpha", "0", "--n", "4,8"}).code == 2);
  CHECK(invoke({"conditions", "--alpha", "0", "--n", "64", "--format", "xml"}).code == 2);
  CHECK(invoke({"conditions", "--alpha", "0", "--family", "pareto", "--n", "64"}).code == 2);
  CHECK(invoke({"conditions", "--alpha", "0", "--c0", "-1", "--n", "64"}).code == 2);
}

TEST_CASE("help exits cleanly") {
  const Outcome r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("gumbel") != std::string::npos);
}

TEST_CASE("conditions records") {
  const Outcome r = invoke({"conditions", "--alpha", "0", "--family", "constant", "--n", "4096"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto& recs = j.at("records");
  REQUIRE(recs.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(recs[i].at("condition") == i + 1);
    CHECK(recs[i].at("n") == 4096);
    CHECK(recs[i].at("pass") == true);
    CHECK(recs[i].contains("sup_value"));
    CHECK(recs[i].contains("achieving_t"));
    CHECK(recs[i].at("family") == "constant");
    CHECK(recs[i].at("alpha") == 0.0);
  }
  CHECK(j.at("config").at("model") == "alpha=0 family=constant c0=1 cut=1");
}

TEST_CASE("conditions at n = 1") {
  const Outcome r = invoke({"conditions", "--alpha", "0", "--n", "1"});
  REQUIRE(r.code == 0);
  const auto recs = nlohmann::json::parse(r.out).at("records");
  REQUIRE(recs.size() == 3);
  CHECK(recs[1].at("pass") == false);
  CHECK(recs[1].at("sup_value").is_null());
  CHECK(recs[2].at("condition") == 3);
  CHECK(recs[2].at("pass") == false);
  CHECK(recs[2].at("sup_value").get<double>() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("covariance table") {
  const Outcome r = invoke({"covariance", "--alpha", "0", "--n", "2", "--per-unit", "4"});
  REQUIRE(r.code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "t,rho");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto comma = lines[i].find(',');
    const double t = std::stod(lines[i].substr(0, comma));
    const double v = std::stod(lines[i].substr(comma + 1));
    CHECK(t == doctest::Approx(0.25 * double(i - 1)));
    CHECK(v == doctest::Approx((std::cos(std::numbers::pi * t) + std::cos(2 * std::numbers::pi * t)) / 2)
                   .epsilon(1e-14));
  }
  CHECK(r.out.find("sigma_sq=2") != std::string::npos);

  const Outcome big = invoke({"covariance", "--alpha", "0", "--n", "1000000", "--t-max", "1"});
  REQUIRE(big.code == 0);
  const auto pos = big.out.find("c_n=");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(big.out.substr(pos + 4)) == doctest::Approx(6.57974).epsilon(0.01));

  CHECK(invoke({"covariance", "--alpha", "0.3", "--n", "64"}).out ==
        invoke({"covariance", "--alpha", "0.3", "--n", "64"}).out);
}

TEST_CASE("gumbel output is independent of thread count") {
  const fs::path a = scratch("g1.json"), b = scratch("g4.json"), c = scratch("g4.csv"),
                 d = scratch("g1.csv");
  const std::vector<std::string> base = {"gumbel", "--alpha", "0", "--family", "constant",
                                         "--n", "64,256", "--reps", "200", "--seed", "7"};
  auto with = [&](std::string threads, const fs::path& out) {
    auto args = base;
    args.insert(args.end(), {"--threads", threads, "--out", out.string()});
    return invoke(args).code;
  };
  REQUIRE(with("1", a) == 0);
  REQUIRE(with("4", b) == 0);
  REQUIRE(with("4", c) == 0);
  REQUIRE(with("1", d) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(c) == slurp(d));

  const auto j = nlohmann::json::parse(slurp(a));
  CHECK(j.at("config").at("seed") == "7");
  CHECK_FALSE(j.at("config").contains("threads"));
  REQUIRE(j.at("reports").size() == 2);
  CHECK(j.at("reports")[0].at("replicates") == 200);
  CHECK(j.at("reports")[0].at("ks_distance").get<double>() >= 0);
  CHECK(j.at("reports")[0].at("quantiles").size() == 7);

  const auto csv = data_lines(slurp(c));
  CHECK(csv[0] == "kind,n,replicates,p,empirical,gumbel,ks_distance,p_value,sample_mean,sample_var");
  CHECK(csv.size() == 1 + 2 * 8);
  CHECK(slurp(c).find("# seed=7") != std::string::npos);
}

TEST_CASE("config file with flag override") {
  const fs::path cfg = scratch("run.cfg");
  {
    std::ofstream f(cfg);
    f << "alpha=0.5\nn=128\nreps=100\nseed=3\n";
  }
  const Outcome from_file = invoke({"gumbel", "--config", cfg.string()});
  const Outcome by_flags =
      invoke({"gumbel", "--alpha", "0.5", "--n", "128", "--reps", "100", "--seed", "3"});
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out == by_flags.out);

  const Outcome overridden = invoke({"gumbel", "--config", cfg.string(), "--seed", "4"});
  const Outcome seed4 =
      invoke({"gumbel", "--alpha", "0.5", "--n", "128", "--reps", "100", "--seed", "4"});
  REQUIRE(overridden.code == 0);
  CHECK(overridden.out == seed4.out);
  CHECK(overridden.out != from_file.out);

  {
    std::ofstream f(cfg);
    f << "alpha=0.5\nn=128\nwhatever=1\n";
  }
  CHECK(invoke({"gumbel", "--config", cfg.string()}).code == 2);
}

TEST_CASE("model text and flags combine") {
  const Outcome a = invoke({"conditions", "--model", "alpha=0.5 family=logpower beta=1", "--n", "512"});
  const Outcome b = invoke({"conditions", "--alpha", "0.5", "--family", "logpower", "--beta", "1", "--n", "512"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("selftest") {
  const Outcome ok = invoke({"selftest", "--n", "4"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("all checks passed") != std::string::npos);
  const Outcome bad = invoke({"selftest", "--n", "4", "--inject-perturbation"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("installed binary honors exit codes") {
  const std::string exe = NOISEMAX_CLI_PATH;
  const fs::path log = scratch("bin.log");
  auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " > " + log.string() + " 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status("selftest --n 4") == 0);
  CHECK(status("gumbel --alpha 1.2 --n 64") == 2);
  CHECK(slurp(log).find("< 1") != std::string::npos);
  CHECK(status("conditions --alpha 0 --n 64 --nope") == 2);
  CHECK(status("selftest --n 4 --inject-perturbation") == 1);
}
