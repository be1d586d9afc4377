#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "hublax/report_io.hpp"

using namespace hublax;
namespace fs = std::filesystem;

TEST_CASE("residual report json carries the parameter echo") {
  ResidualReport r;
  r.name = "gLOD";
  r.params = LaxParams{Complex(0.1, 0.2), Complex(0.3, -0.4), 2.0};
  r.cutoff_K = 4;
  r.residual_fro = 1e-14;
  r.operand_scale = 10.0;
  r.passed = true;
  const json j = r;
  CHECK(j["identity_name"] == "gLOD");
  CHECK(j["params"]["lambda"]["im"] == 0.2);
  CHECK(j["params"]["omega"]["re"] == 0.3);
  CHECK(j["params"]["u"] == 2.0);
  CHECK(j["cutoff_K"] == 4);
  CHECK(j["tol"] == kDefaultTol);
  CHECK(j["tier"] == "identity");
  CHECK(j["relative"].get<double>() == doctest::Approx(1e-15));
  CHECK_FALSE(j.contains("partner_params"));
}

TEST_CASE("driving config and diagnostics") {
  DrivingConfig c;
  c.n_sites = 5;
  c.gamma_R = 0.5;
  const json j = c;
  CHECK(j["n"] == 5);
  CHECK(j["gammaR"] == 0.5);
  NessDiagnostics d;
  const json k = d;
  CHECK(k["lindblad_residual"].is_null());
}

TEST_CASE("operator entries use vertex labels") {
  const AuxSpace s(1);
  AuxOperator op(s.dim(), s.dim());
  op.insert(0, 1) = Complex(1.5, -2.0);
  const json e = operator_entries(s, op);
  REQUIRE(e.size() == 1);
  CHECK(e[0][0] == "0+");
  CHECK(e[0][1] == "1/2+");
  CHECK(e[0][2] == 1.5);
  CHECK(e[0][3] == -2.0);
}

TEST_CASE("binary density matrix round trip and corruption detection") {
  const fs::path dir = fs::temp_directory_path() / "hublax_report_io_test";
  fs::create_directories(dir);
  const std::string path = (dir / "rho.bin").string();
  DenseMatrix rho(3, 3);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) rho(i, j) = Complex(i + 0.25 * j, i - j);
  write_rho_binary(path, rho);
  CHECK(fs::file_size(path) == 8 + 8 + 9 * 16 + 8);
  const DenseMatrix back = read_rho_binary(path);
  CHECK(back == rho);
  {
    std::ifstream is(path, std::ios::binary);
    char magic[8];
    is.read(magic, 8);
    CHECK(std::string(magic, 8) == "HUBRHO01");
    std::uint64_t dim = 0;
    is.read(reinterpret_cast<char*>(&dim), 8);
    CHECK(dim == 3);
    double first[4];
    is.read(reinterpret_cast<char*>(first), sizeof(first));
    CHECK(first[2] == 0.25);  // row-major: (0,1) follows (0,0)
    CHECK(first[3] == -1.0);
  }
  {
    std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
    f.seekp(20);
    f.put('\x7f');
  }
  CHECK_THROWS(read_rho_binary(path));
  fs::remove_all(dir);
}

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a("", 0) == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a", 1) == 0xaf63dc4c8601ec8cULL);
}
