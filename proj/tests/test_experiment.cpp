#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rcdyn/experiment.hpp"
#include "rcdyn/graph.hpp"
#include "rcdyn/oracle.hpp"

using namespace rcdyn;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rcdyn_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("boundary specs parse to the right conditions") {
  const Lattice lat(4);
  CHECK(parse_bc(lat, json("free")) == free_boundary(lat));
  CHECK(parse_bc(lat, json("wired")) == wired_boundary(lat));
  CHECK(parse_bc(lat, json::parse(R"({"sides":[1,3]})")) ==
        side_homogeneous(lat, 0b101u));
  // explicit blocks: unlisted boundary vertices become singletons
  const auto bc = parse_bc(
      lat, json::parse(R"({"blocks":[[[0,0],[3,3]]]})"));
  CHECK(bc.wired(lat.vertex_id(0, 0), lat.vertex_id(3, 3)));
  CHECK_FALSE(bc.wired(lat.vertex_id(0, 0), lat.vertex_id(3, 0)));

  CHECK_THROWS_AS(parse_bc(lat, json("diagonal")), SpecError);
  CHECK_THROWS_AS(parse_bc(lat, json::parse(R"({"sides":[5]})")), SpecError);
  CHECK_THROWS_AS(parse_bc(lat, json::parse(R"({"blocks":[[[1,1]]]})")),
                  SpecError);
}

TEST_CASE("edge specs") {
  const Lattice lat(4);
  CHECK(parse_edge(lat, json::parse(R"(["h", 1, 2])")) ==
        lat.horizontal_edge(1, 2));
  CHECK(parse_edge(lat, json::parse(R"(["v", 3, 0])")) ==
        lat.vertical_edge(3, 0));
  CHECK_THROWS_AS(parse_edge(lat, json::parse(R"(["h", 3, 0])")), SpecError);
  CHECK_THROWS_AS(parse_edge(lat, json::parse(R"(["d", 0, 0])")), SpecError);
}

TEST_CASE("spec hashing is stable and key-order independent") {
  const json a = json::parse(R"({"kind":"oracle","n":2,"p":0.5})");
  const json b = json::parse(R"({"p":0.5,"n":2,"kind":"oracle"})");
  const json c = json::parse(R"({"kind":"oracle","n":3,"p":0.5})");
  CHECK(spec_hash(a) == spec_hash(b));
  CHECK(spec_hash(a) != spec_hash(c));
  CHECK(spec_hash(a).size() == 16);
}

TEST_CASE("invalid specs are rejected with SpecError") {
  const fs::path out = fresh_dir("invalid");
  auto run = [&](const std::string& text) {
    return run_experiment(json::parse(text), out);
  };
  CHECK_THROWS_AS(run(R"({"kind":"nope","n":2,"p":0.5,"q":2,"seed":1})"),
                  SpecError);
  // missing seed
  CHECK_THROWS_AS(run(R"({"kind":"couple","n":2,"p":0.5,"q":2})"), SpecError);
  // unknown field
  CHECK_THROWS_AS(
      run(R"({"kind":"couple","n":2,"p":0.5,"q":2,"seed":1,"bogus":3})"),
      SpecError);
  // out-of-range parameters
  CHECK_THROWS_AS(run(R"({"kind":"couple","n":2,"p":1.5,"q":2,"seed":1})"),
                  SpecError);
  CHECK_THROWS_AS(run(R"({"kind":"couple","n":2,"p":0.5,"q":0.5,"seed":1})"),
                  SpecError);
  CHECK_THROWS_AS(run(R"({"kind":"couple","n":1,"p":0.5,"q":2,"seed":1})"),
                  SpecError);
}

TEST_CASE("oracle experiment matches library values") {
  const fs::path out = fresh_dir("oracle");
  const json spec = json::parse(
      R"({"kind":"oracle","n":2,"p":0.5,"q":2,"bc":"free","seed":1})");
  const RunOutput run = run_experiment(spec, out);
  const json result = json::parse(slurp(run.dir / "oracle.json"));

  const Lattice lat(2);
  const ExactMeasure mu(as_graph(lat, free_boundary(lat)), RcParams(0.5, 2.0));
  CHECK(result["Z"].get<double>() ==
        doctest::Approx(mu.partition_function()).epsilon(1e-12));
  REQUIRE(result["edge_marginals"].size() == 4);
  for (int e = 0; e < 4; ++e)
    CHECK(result["edge_marginals"][e].get<double>() ==
          doctest::Approx(mu.edge_marginal(e)).epsilon(1e-12));
}

TEST_CASE("reruns are byte-identical") {
  const json spec = json::parse(
      R"({"kind":"cftp","n":3,"p":0.5,"q":2,"bc":"free","seed":77,"samples":50})");
  const fs::path out1 = fresh_dir("rerun1");
  const fs::path out2 = fresh_dir("rerun2");
  const RunOutput a = run_experiment(spec, out1);
  const RunOutput b = run_experiment(spec, out2);
  CHECK(slurp(a.dir / "samples.csv") == slurp(b.dir / "samples.csv"));
  CHECK(slurp(a.dir / "summary.json") == slurp(b.dir / "summary.json"));

  const json decay_spec = json::parse(
      R"({"kind":"decay","n":6,"p":0.4,"q":2,"bc":"free","seed":5,
          "samples":200,"distances":[1,2]})");
  const RunOutput c = run_experiment(decay_spec, fresh_dir("rerun3"));
  const RunOutput d = run_experiment(decay_spec, fresh_dir("rerun4"));
  CHECK(slurp(c.dir / "decay.csv") == slurp(d.dir / "decay.csv"));
}

TEST_CASE("couple experiment output shape") {
  const json spec = json::parse(
      R"({"kind":"couple","n":3,"p":0.5,"q":2,"bc":"wired","seed":9,
          "replicas":5})");
  const RunOutput run = run_experiment(spec, fresh_dir("couple"));
  std::istringstream csv(slurp(run.dir / "couple.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "replica,coalescence_step,wall_time");
  int rows = 0;
  while (std::getline(csv, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 5);

  const json summary = json::parse(slurp(run.dir / "summary.json"));
  CHECK(summary["median"].get<std::uint64_t>() > 0);
  CHECK_FALSE(summary["any_capped"].get<bool>());
}

TEST_CASE("estimator CSV carries the contracted columns") {
  const json spec = json::parse(
      R"({"kind":"spatial","n":4,"p":0.5,"q":2,"bc":{"sides":[2]},"seed":3,
          "edge":["h",1,1],"radii":[1],"samples":50})");
  const RunOutput run = run_experiment(spec, fresh_dir("spatial"));
  std::istringstream csv(slurp(run.dir / "spatial.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "experiment,n,p,q,bc,r_or_d,estimate,stderr,samples,backend,seed");
  std::string row;
  std::getline(csv, row);
  CHECK(row.rfind("spatial,4,0.5,2,sides:2,1,", 0) == 0);
}

TEST_CASE("run directories are content-addressed and self-describing") {
  const json spec = json::parse(
      R"({"kind":"oracle","n":2,"p":0.4,"q":1.5,"bc":"wired","seed":2})");
  const fs::path out = fresh_dir("hash");
  const RunOutput run = run_experiment(spec, out);
  CHECK(run.dir.filename().string() == "oracle-" + spec_hash(spec));
  CHECK(json::parse(slurp(run.dir / "spec.json")) == spec);
}

TEST_CASE("atomic write leaves no temp file behind") {
  const fs::path dir = fresh_dir("atomic");
  atomic_write_file(dir / "x.txt", "hello\n");
  CHECK(slurp(dir / "x.txt") == "hello\n");
  CHECK_FALSE(fs::exists(dir / "x.txt.tmp"));
}

TEST_CASE("dual-sample requires a super-critical parameter") {
  CHECK_THROWS_AS(
      run_experiment(
          json::parse(
              R"({"kind":"dual-sample","n":3,"p":0.3,"q":2,"seed":4})"),
          fresh_dir("dual_bad")),
      SpecError);
  const RunOutput run = run_experiment(
      json::parse(
          R"({"kind":"dual-sample","n":3,"p":0.8,"q":2,"seed":4,"samples":20})"),
      fresh_dir("dual_ok"));
  const json summary = json::parse(slurp(run.dir / "summary.json"));
  CHECK(summary["backend"].get<std::string>() == "dual-cftp");
}
