#include "oracles.hpp"
#include "pipdim/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pipdim;

TEST_CASE("matrix text round trip is exact") {
  Matrix m = oracle::gaussian(7, 3, 5);
  m(0, 0) = 1e-300;
  m(1, 2) = -0.1;
  m(2, 1) = 123456789.123456789;
  std::stringstream ss;
  io::write_matrix(ss, m);
  const Matrix back = io::read_matrix(ss);
  REQUIRE(back.rows() == 7);
  REQUIRE(back.cols() == 3);
  CHECK((back.array() == m.array()).all());

  const auto path = std::filesystem::temp_directory_path() / "pipdim_io_roundtrip.mat";
  io::write_matrix(path, m);
  CHECK((io::read_matrix(path).array() == m.array()).all());
  std::filesystem::remove(path);
}

TEST_CASE("malformed matrix files") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return io::read_matrix(in);
  };
  CHECK_THROWS_AS(parse(""), io::DataError);
  CHECK_THROWS_AS(parse("2\n1\n2\n"), io::DataError);
  CHECK_THROWS_AS(parse("2 2 2\n1 2\n3 4\n"), io::DataError);
  CHECK_THROWS_AS(parse("2 2\n1 2\n"), io::DataError);
  CHECK_THROWS_AS(parse("2 2\n1 2\n3\n"), io::DataError);
  CHECK_THROWS_AS(parse("2 2\n1 2\n3 4 5\n"), io::DataError);
  CHECK_THROWS_AS(parse("1 2\n1 x\n"), io::DataError);
  CHECK_THROWS_AS(parse("1 1\n1\n2\n"), io::DataError);
  CHECK(parse("1 2\n1 2\n\n").cols() == 2);
  CHECK_THROWS_AS(io::read_matrix(std::filesystem::path("/nonexistent/x.mat")), io::DataError);
}

TEST_CASE("spectrum JSON") {
  const auto rec = io::spectrum_from_json(
      nlohmann::json::parse(R"({"spectrum": [3, 2, 1], "ambient": 10, "sigma": 0.5})"));
  CHECK(rec.spectrum.rank() == 3);
  CHECK(rec.spectrum.ambient() == 10);
  REQUIRE(rec.sigma.has_value());
  CHECK(*rec.sigma == 0.5);
  CHECK_FALSE(io::spectrum_from_json(nlohmann::json::parse(R"({"spectrum": [1]})")).sigma);
  CHECK_THROWS_AS(io::spectrum_from_json(nlohmann::json::parse(R"({"values": [1]})")),
                  io::DataError);
  CHECK_THROWS_AS(io::spectrum_from_json(nlohmann::json::parse(R"({"spectrum": ["a"]})")),
                  io::DataError);
  CHECK_THROWS_AS(io::spectrum_from_json(nlohmann::json::parse(R"({"spectrum": [1, -2]})")),
                  io::DataError);

  const auto path = std::filesystem::temp_directory_path() / "pipdim_io_bad.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(io::read_spectrum(path), io::DataError);
  std::filesystem::remove(path);
}

TEST_CASE("report JSON layout") {
  PipCurve c;
  c.k_values = {1, 2, 3};
  c.losses = {3.0, 1.0, 2.0};
  c.stddevs = {0, 0, 0};
  const std::vector<double> p{5, 12.5};
  const auto j = io::report_to_json(select_dimension(c, p));
  CHECK(j["version"] == io::kReportVersion);
  CHECK(j["k_star"] == 2);
  CHECK(j["intervals"].contains("5"));
  CHECK(j["intervals"].contains("12.5"));
  CHECK(j["intervals"]["5"][0] == 2);
  CHECK(j["curve"]["loss"].size() == 3);
  CHECK(io::format_double(0.1) == "0.10000000000000001");
}
