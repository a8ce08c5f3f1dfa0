#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <string>

#include "fock/io.hpp"

using namespace fock;
using io::json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string file_contents(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("step symbol survives a JSON round trip") {
  const symbols::StepRadialSymbol f({{0.0, 0.5, 1.25}, {1.0, 2.0, -0.75}},
                                    {0.3, -1.7});
  const symbols::StepRadialSymbol g =
      io::symbol_from_json(io::to_json(f), "roundtrip");
  REQUIRE(g.pieces().size() == f.pieces().size());
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    CHECK(g.pieces()[i].a == f.pieces()[i].a);
    CHECK(g.pieces()[i].b == f.pieces()[i].b);
    CHECK(g.pieces()[i].value == f.pieces()[i].value);
  }
  CHECK(g.center() == f.center());
}

TEST_CASE("symbol parse diagnostics name the offending field") {
  auto expect = [](const json& j, const std::string& fragment) {
    try {
      io::symbol_from_json(j, "doc");
      FAIL("expected parse_error for " << j.dump());
    } catch (const io::parse_error& e) {
      INFO(e.what());
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect(json::array(), "expected a JSON object");
  expect({{"pieces", json::array()}}, "kind");
  expect({{"kind", "annuli"}}, "step_radial");
  expect({{"kind", "step_radial"}}, "pieces");
  expect({{"kind", "step_radial"}, {"pieces", {{{"a", 0.0}, {"b", 1.0}}}}},
         "pieces[0]");
  expect({{"kind", "step_radial"},
          {"pieces", {{{"a", 0.0}, {"b", 1.0}, {"value", "x"}}}}},
         "must be a number");
  expect({{"kind", "step_radial"},
          {"center", {1.0}},
          {"pieces", json::array()}},
         "expected [x, y]");
  // overlapping pieces are caught by the symbol's own validation
  expect({{"kind", "step_radial"},
          {"pieces",
           {{{"a", 0.0}, {"b", 2.0}, {"value", 1.0}},
            {{"a", 1.0}, {"b", 3.0}, {"value", 1.0}}}}},
         "pieces");
}

TEST_CASE("malformed JSON reports the byte position") {
  const auto path = temp_file("fock_io_malformed.json");
  io::write_text(path, "{\"kind\": \"step_radial\", \"pieces\": [ oops ]}");
  try {
    io::load_symbol(path);
    FAIL("expected parse_error");
  } catch (const io::parse_error& e) {
    const std::string msg = e.what();
    INFO(msg);
    CHECK(msg.find("byte") != std::string::npos);
    CHECK(msg.find(path.filename().string()) != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("missing files are reported as such") {
  CHECK_THROWS_AS(io::load_symbol(temp_file("fock_io_does_not_exist.json")),
                  io::parse_error);
}

TEST_CASE("planar sets survive JSON round trips") {
  const geometry::PlanarSet sets[] = {
      geometry::Annuli{{0.5, -0.25},
                       geometry::IntervalUnion::of({{0.0, 1.0}, {2.0, 2.5}})},
      geometry::DiscUnion{{{{0.0, 0.0}, 1.0}, {{3.0, 0.5}, 0.75}}},
      geometry::angular_profile_of(
          geometry::PlanarSet{geometry::DiscUnion{{{{1.0, 0.0}, 0.5}}}}, 16)};
  for (const auto& s : sets) {
    const json j = io::to_json(s);
    const json again = io::to_json(io::set_from_json(j, "roundtrip"));
    CHECK(j == again);
  }
}

TEST_CASE("interval lists accept both object and pair spellings") {
  const json a = {{"kind", "annuli"},
                  {"rings", {{{"lo", 0.5}, {"hi", 1.0}}}}};
  const json b = {{"kind", "annuli"}, {"rings", {{0.5, 1.0}}}};
  const auto sa = io::set_from_json(a, "a");
  const auto sb = io::set_from_json(b, "b");
  CHECK(std::get<geometry::Annuli>(sa).rings ==
        std::get<geometry::Annuli>(sb).rings);
}

TEST_CASE("set parse diagnostics") {
  auto expect = [](const json& j, const std::string& fragment) {
    try {
      io::set_from_json(j, "doc");
      FAIL("expected parse_error for " << j.dump());
    } catch (const io::parse_error& e) {
      INFO(e.what());
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect({{"kind", "squares"}}, "unknown set kind");
  expect({{"kind", "annuli"}}, "rings");
  expect({{"kind", "annuli"}, {"rings", {{1.0, 0.5}}}}, "rings");
  expect({{"kind", "annuli"}, {"rings", {{{"lo", 0.0}}}}}, "rings[0]");
  expect({{"kind", "discs"}}, "discs");
  expect({{"kind", "discs"}, {"discs", {{{"center", {0.0, 0.0}}}}}},
         "missing field 'radius'");
  expect({{"kind", "discs"}, {"discs", {{{"radius", 1.0}}}}},
         "expected {center, radius}");
  expect({{"kind", "discs"},
          {"discs", {{{"center", {0.0, 0.0}}, {"radius", -1.0}}}}},
         "radius must be positive");
  // overlapping discs rejected at parse time
  expect({{"kind", "discs"},
          {"discs",
           {{{"center", {0.0, 0.0}}, {"radius", 1.0}},
            {{"center", {1.0, 0.0}}, {"radius", 1.0}}}}},
         "discs");
  expect({{"kind", "angular_profile"},
          {"profiles", {json::array(), json::array()}}},
         "at least 8 rays");
}

TEST_CASE("audit reports serialize with parameters and optional seed") {
  AuditReport r = make_audit("demo", 0.5, 1.0, 1e-12);
  r.with("alpha", 2.5).with("beta", -1.0);
  json j = io::to_json(r);
  CHECK(j["context"] == "demo");
  CHECK(j["lhs"] == 0.5);
  CHECK(j["rhs"] == 1.0);
  CHECK(j["holds"] == true);
  CHECK(j["params"]["alpha"] == 2.5);
  CHECK(j["params"]["beta"] == -1.0);
  CHECK(!j.contains("seed"));

  r.seed = 12345;
  j = io::to_json(r);
  CHECK(j["seed"] == 12345);
}

TEST_CASE("localization matrix survives a JSON round trip") {
  const geometry::PlanarSet disc = geometry::DiscUnion{{{{1.0, 0.0}, 0.8}}};
  const timefreq::LocalizationMatrix m =
      timefreq::localization_matrix(disc, 3, 256);
  const json j = io::to_json(m);
  const timefreq::LocalizationMatrix back =
      io::localization_from_json(j, "roundtrip");
  CHECK(back.N == m.N);
  CHECK(back.K == m.K);
  CHECK(back.quad_error == m.quad_error);
  CHECK(back.entries.max_abs_diff(m.entries) == 0.0);
  CHECK(io::to_json(back.set) == io::to_json(m.set));

  json bad = j;
  bad["entries_re"] = {1.0, 2.0};
  CHECK_THROWS_AS(io::localization_from_json(bad, "doc"), io::parse_error);
  bad = j;
  bad.erase("quad_error");
  CHECK_THROWS_AS(io::localization_from_json(bad, "doc"), io::parse_error);
}

TEST_CASE("diagonal CSV is well formed") {
  const geometry::PlanarSet disc =
      geometry::Annuli{{}, geometry::IntervalUnion::of({{0.0, 1.0}})};
  const timefreq::LocalizationMatrix m =
      timefreq::localization_matrix(disc, 4, 256);
  const std::string csv = io::matrix_diag_csv(m);
  CHECK(csv.rfind("n,diagonal\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 rows
  // first row is n = 0 with the disc's ground mass
  const auto line_end = csv.find('\n', csv.find('\n') + 1);
  const std::string first_row =
      csv.substr(csv.find('\n') + 1, line_end - csv.find('\n') - 1);
  CHECK(first_row.rfind("0,", 0) == 0);
  CHECK_THAT(std::stod(first_row.substr(2)),
             Catch::Matchers::WithinAbs(0.95678608173622775, 1e-14));
}

TEST_CASE("write_text writes exactly and fails loudly") {
  const auto path = temp_file("fock_io_write_test.txt");
  io::write_text(path, "line one\nline two\n");
  CHECK(file_contents(path) == "line one\nline two\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(
      io::write_text(temp_file("no_such_dir") / "x.txt", "content"),
      std::runtime_error);
}
