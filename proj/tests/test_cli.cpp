#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "radial_gate/cli.hpp"
#include "radial_gate/error.hpp"
#include "radial_gate/serialize.hpp"

using namespace radial_gate;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("radial_gate_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("indicial command") {
  const auto r = run({"indicial", "--potential", "invsq:v0=0.08", "--l", "0", "--mass", "1",
                      "--policy", "dirichlet"});
  REQUIRE(r.code == cli::exit_ok);
  const auto j = Json::parse(r.out);
  CHECK(j["p_value"].get<double>() == doctest::Approx(0.3));
  CHECK(j["s_plus"].get<double>() == doctest::Approx(0.8));
  CHECK(j["s_minus"].get<double>() == doctest::Approx(0.2));
  CHECK(j["ambiguous"].get<bool>());

  const auto round = indicial_report_from_json(j);
  CHECK(to_json(round) == j);
}

TEST_CASE("fall to center exits with a domain diagnostic") {
  const auto r = run({"indicial", "--potential", "invsq:v0=0.25", "--l", "0", "--mass", "1"});
  CHECK(r.code == cli::exit_domain);
  CHECK(r.err.find("fall to center") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("spectrum command") {
  const std::vector<std::string> args = {"spectrum", "--potential", "coulomb:alpha=1", "--l", "0",
                                         "--policy", "dirichlet", "--window", "-0.6,-0.01", "--k", "3"};
  const auto r = run(args);
  REQUIRE(r.code == cli::exit_ok);
  const auto j = Json::parse(r.out);
  REQUIRE(j["entries"].size() == 3);
  CHECK(j["entries"][0]["energy"].get<double>() == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(j["entries"][1]["energy"].get<double>() == doctest::Approx(-0.125).epsilon(1e-6));
  CHECK(j["entries"][2]["energy"].get<double>() == doctest::Approx(-0.0556).epsilon(1e-3));
  CHECK(j["outer_boundary"] == "decaying");

  SUBCASE("round trip") {
    const auto s = spectrum_from_json(j);
    CHECK(to_json(s) == j);
    CHECK(spectrum_from_json(to_json(s)) == s);
  }
  SUBCASE("identical argv gives identical bytes") {
    CHECK(run(args).out == r.out);
  }
  SUBCASE("csv") {
    auto csv_args = args;
    csv_args.insert(csv_args.end(), {"--format", "csv"});
    const auto c = run(csv_args);
    REQUIRE(c.code == cli::exit_ok);
    std::istringstream lines(c.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "k,E,nodes,width");
    std::string row;
    std::getline(lines, row);
    CHECK(row.rfind("0,-0.49999999", 0) == 0);
  }
}

TEST_CASE("boxed inverse square reports its wall") {
  const auto r = run({"spectrum", "--potential", "invsq:v0=0.08", "--grid", "1e-4,1,4001",
                      "--window", "0,100", "--k", "2"});
  REQUIRE(r.code == cli::exit_ok);
  CHECK(Json::parse(r.out)["outer_boundary"] == "wall");
}

TEST_CASE("output file and wavefunction dump") {
  const std::string out = temp_path("spectrum.json");
  const std::string wave = temp_path("wave.csv");
  const auto r = run({"spectrum", "--potential", "harmonic:omega=1", "--grid", "1e-4,10,4000",
                      "--window", "0.5,4", "--k", "2", "--output", out, "--dump-wavefunction", "1",
                      wave});
  REQUIRE(r.code == cli::exit_ok);
  CHECK(r.out.empty());
  const auto j = Json::parse(slurp(out));
  CHECK(j["entries"].size() == 2);
  std::istringstream rows(slurp(wave));
  std::string line;
  std::getline(rows, line);
  CHECK(line == "r,u");
  std::size_t count = 0;
  while (std::getline(rows, line)) ++count;
  CHECK(count == 4000);
  std::remove(out.c_str());
  std::remove(wave.c_str());
}

TEST_CASE("kg-spectrum command") {
  const auto ok = run({"kg-spectrum", "--potential", "coulomb:alpha=0.3", "--grid", "1e-4,120,30000",
                       "--window", "0.5,0.999", "--k", "1"});
  REQUIRE(ok.code == cli::exit_ok);
  const auto j = Json::parse(ok.out);
  CHECK(j["equation"] == "klein_gordon");
  CHECK(j["entries"][0]["energy"].get<double>() == doctest::Approx(0.948683).epsilon(1e-5));

  const auto bad = run({"kg-spectrum", "--potential", "coulomb:alpha=0.6", "--window", "0.5,0.999"});
  CHECK(bad.code == cli::exit_domain);
  CHECK(bad.err.find("KGFallToCenter") != std::string::npos);

  const auto wrong = run({"kg-spectrum", "--potential", "harmonic:omega=1", "--window", "0.5,0.999"});
  CHECK(wrong.code == cli::exit_usage);
  CHECK(wrong.err.find("--potential") != std::string::npos);
}

TEST_CASE("residual command") {
  const auto r = run({"residual", "--u", "one", "--a", "0.1", "--h", "1e-4"});
  REQUIRE(r.code == cli::exit_ok);
  const auto j = Json::parse(r.out);
  CHECK(j["relative_error"].get<double>() < 1e-3);
  CHECK(to_json(residual_report_from_json(j)) == j);

  const auto c = run({"residual", "--u", "cos", "--a", "0.3", "--h", "1e-3", "--levels", "3",
                      "--format", "csv"});
  REQUIRE(c.code == cli::exit_ok);
  CHECK(c.out.rfind("h,integral,relative_error\n", 0) == 0);
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 4);

  const std::string csv = temp_path("profile.csv");
  {
    std::ofstream f(csv);
    f << "r,u\n";
    for (int i = 1; i <= 400; ++i) f << i * 1e-3 << ",1\n";
  }
  const auto fromfile = run({"residual", "--u-csv", csv, "--a", "0.2"});
  REQUIRE(fromfile.code == cli::exit_ok);
  CHECK(Json::parse(fromfile.out)["integral"].get<double>() == doctest::Approx(-12.566).epsilon(1e-3));
  std::remove(csv.c_str());

  const auto both = run({"residual", "--u", "one", "--u-csv", csv});
  CHECK(both.code == cli::exit_usage);
  CHECK(both.err.find("--u") != std::string::npos);
}

TEST_CASE("identity-defect command") {
  const auto r = run({"identity-defect", "--u", "sin", "--r-low", "0.5", "--h", "1e-3"});
  REQUIRE(r.code == cli::exit_ok);
  CHECK(Json::parse(r.out)["defect"].get<double>() < 1e-4);
}

TEST_CASE("classify command") {
  const auto r = run({"classify", "--potential", "power:g=0.1,n=3"});
  REQUIRE(r.code == cli::exit_ok);
  const auto j = Json::parse(r.out);
  CHECK(j["class"] == "strongly_singular");
  CHECK(origin_class_from_json(j) == model::OriginClass{model::StronglySingular{3.0, 0.1}});
}

TEST_CASE("contrast command") {
  const auto r = run({"contrast", "--potential", "invsq:v0=-0.12", "--grid", "1e-5,1,20001",
                      "--window", "-50,50", "--thetas", "0,0.785398163397"});
  REQUIRE(r.code == cli::exit_ok);
  const auto j = Json::parse(r.out);
  REQUIRE(j["spectra"].size() == 3);
  const double d = j["spectra"][0]["entries"][0]["energy"].get<double>();
  CHECK(j["spectra"][1]["entries"][0]["energy"].get<double>() == d);
  CHECK(j["spectra"][2]["entries"][0]["energy"].get<double>() < d);
  CHECK(j["spectra"][2]["policy"]["kind"] == "square_integrable");
}

TEST_CASE("oracle3d command") {
  const auto r = run({"oracle3d", "--potential", "harmonic:omega=1", "--n", "32", "--L", "6", "--k", "1"});
  REQUIRE(r.code == cli::exit_ok);
  const auto j = Json::parse(r.out);
  CHECK(j["eigenvalues"][0].get<double>() == doctest::Approx(1.5).epsilon(0.03));
  CHECK(j["residuals"][0].get<double>() <= 1e-8);
  const auto res = eigen_result_from_json(j);
  CHECK(res.eigenvalues.size() == 1);

  const auto odd = run({"oracle3d", "--potential", "harmonic:omega=1", "--n", "33"});
  CHECK(odd.code == cli::exit_usage);
  CHECK(odd.err.find("--n") != std::string::npos);
}

TEST_CASE("usage errors name the flag") {
  auto check = [](const std::vector<std::string>& args, const std::string& flag) {
    const auto r = run(args);
    CHECK(r.code == cli::exit_usage);
    CHECK_MESSAGE(r.err.find(flag) != std::string::npos, r.err);
  };
  check({}, "ubcommand");
  check({"spectrum", "--potential", "coulomb:alpha=1", "--window", "-0.6"}, "--window");
  check({"spectrum", "--potential", "coulomb:alpha=1", "--window", "-0.6,abc"}, "--window");
  check({"spectrum", "--potential", "coulomb:alpha=1", "--window", "-0.6,-0.1", "--grid", "1,2"}, "--grid");
  check({"spectrum", "--potential", "coulomb:alpha=x", "--window", "-0.6,-0.1"}, "--potential");
  check({"indicial", "--potential", "invsq:v0=0.1", "--policy", "si"}, "--policy");
  check({"indicial", "--potential", "invsq:v0=0.1", "--policy", "si:theta=4"}, "--policy");
  check({"indicial", "--potential", "invsq:v0=0.1", "--policy", "robin"}, "--policy");
  check({"indicial", "--potential", "invsq:v0=0.1", "--mass", "-1"}, "--mass");
  check({"indicial", "--potential", "invsq:v0=0.1", "--format", "xml"}, "--format");
  check({"residual", "--u", "tanh"}, "--u");
  check({"bogus"}, "bogus");
}

TEST_CASE("policy grammar") {
  CHECK(cli::parse_policy("dirichlet") == indicial::BoundaryPolicy{indicial::DirichletOrigin{}});
  CHECK(cli::parse_policy("si:theta=0.5,rref=2") ==
        indicial::BoundaryPolicy{indicial::SquareIntegrableOnly{0.5, 2.0}});
  CHECK(cli::parse_policy("si:theta=0.5") ==
        indicial::BoundaryPolicy{indicial::SquareIntegrableOnly{0.5, 1.0}});
  const auto d = cli::parse_policy("dirichlet:theta=0.2");
  CHECK(std::get<indicial::DirichletOrigin>(d).theta == 0.2);
  CHECK(policy_from_json(to_json(d)) == d);
}

TEST_CASE("twelve significant digits") {
  CHECK(format12(1.0 / 3.0) == "0.333333333333");
  CHECK(format12(-0.5) == "-0.5");
  CHECK(round12(0.1234567890123456) == 0.123456789012);
}
