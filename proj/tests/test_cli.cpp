#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "wllab/generators.hpp"
#include "wllab/graph_doc.hpp"

using namespace wllab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() / ("wllab_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string binary() {
  const char* bin = std::getenv("WLLAB_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "WLLAB_BIN must point at the wllab executable");
  return bin;
}

int run(const std::string& args, const std::string& stdout_file = "/dev/null") {
  std::string cmd = binary() + " " + args + " > " + stdout_file + " 2> /dev/null";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

json slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

}  // namespace

TEST_CASE("gen and refine round-trip through files") {
  Sandbox box;
  CHECK(run("gen --name path --params 3 --out " + box.path("p3.ccg.json")) == 0);
  CHECK(run("refine --family wl --k 2 --out " + box.path("out.json") + " " +
            box.path("p3.ccg.json")) == 0);
  json doc = slurp(box.path("out.json"));
  CHECK(doc.at("schema") == "wllab-partition/1");
  CHECK(doc.at("n") == 3);
  CHECK(doc.at("classes").size() == 5);
}

TEST_CASE("usage errors exit with 1") {
  Sandbox box;
  CHECK(run("refine --family wl") == 1);                       // missing input
  CHECK(run("gen --name moebius --out " + box.path("x")) == 1);  // unknown name
}

TEST_CASE("refine with k = 0 is a usage error") {
  Sandbox box;
  CHECK(run("gen --name path --params 3 --out " + box.path("p3.ccg.json")) == 0);
  CHECK(run("refine --family wl --k 0 " + box.path("p3.ccg.json")) == 1);
}

TEST_CASE("parse errors exit with 2") {
  Sandbox box;
  std::ofstream(box.path("bad.ccg.json")) << "{ not json";
  CHECK(run("refine --family wl --k 2 " + box.path("bad.ccg.json")) == 2);
}

TEST_CASE("cap violations exit with 3") {
  Sandbox box;
  CHECK(run("gen --name cycle --params 5 --out " + box.path("c5.ccg.json")) == 0);
  CHECK(run("refine --family wl --k 9 --cap-tuples 100 " + box.path("c5.ccg.json")) == 3);
}

TEST_CASE("the environment cap is honoured unless the flag overrides it") {
  Sandbox box;
  CHECK(run("gen --name cycle --params 5 --out " + box.path("c5.ccg.json")) == 0);
  std::string cmd = "WLLAB_CAP_TUPLES=100 " + binary() + " refine --family wl --k 9 " +
                    box.path("c5.ccg.json") + " > /dev/null 2> /dev/null";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 3);
  cmd = "WLLAB_CAP_TUPLES=100 " + binary() + " refine --family wl --k 2 --cap-tuples 1000000 " +
        box.path("c5.ccg.json") + " > /dev/null 2> /dev/null";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
}

TEST_CASE("compare reports the refinement order") {
  Sandbox box;
  CHECK(run("gen --name path --params 3 --out " + box.path("p3.ccg.json")) == 0);
  CHECK(run("refine --family wl --k 2 --out " + box.path("wl2.json") + " " +
            box.path("p3.ccg.json")) == 0);
  CHECK(run("refine --family c --k 3 --out " + box.path("c3.json") + " " +
            box.path("p3.ccg.json")) == 0);
  CHECK(run("compare " + box.path("wl2.json") + " " + box.path("wl2.json"),
            box.path("same.txt")) == 0);
  std::ifstream same(box.path("same.txt"));
  std::string verdict;
  same >> verdict;
  CHECK(verdict == "Equivalent");

  CHECK(run("compare " + box.path("wl2.json") + " " + box.path("c3.json"),
            box.path("cf.txt")) == 0);
  std::ifstream cf(box.path("cf.txt"));
  cf >> verdict;
  CHECK(verdict == "Equivalent");
}

TEST_CASE("suite runs a manifest and reports failures via the exit code") {
  Sandbox box;
  fs::create_directories(box.path("corpus"));
  save_graph_doc(path_graph(3), box.path("corpus/p3.ccg.json"));
  save_graph_doc(cycle_graph(5), box.path("corpus/c5.ccg.json"));

  json manifest;
  manifest["schema"] = "wllab-suite/1";
  manifest["corpus"] = {"p3.ccg.json", "c5.ccg.json"};
  manifest["checks"] = json::array();
  manifest["checks"].push_back({{"type", "pair"},
                                {"left", {{"family", "c"}, {"k", 3}}},
                                {"right", {{"family", "wl"}, {"k", 2}}},
                                {"expect", {"Equivalent"}}});
  manifest["checks"].push_back({{"type", "axioms"}, {"scheme", {{"family", "wl"}}}});
  manifest["checks"].push_back({{"type", "distinguishes"},
                                {"scheme", {{"family", "wl"}}},
                                {"k", 2},
                                {"left", "p3.ccg.json"},
                                {"right", "p3.ccg.json"},
                                {"expect", false}});
  std::ofstream(box.path("manifest.json")) << manifest.dump(2);

  CHECK(run("suite --manifest " + box.path("manifest.json") + " --corpus " + box.path("corpus") +
            " --out " + box.path("report.json")) == 0);
  json report = slurp(box.path("report.json"));
  CHECK(report.at("schema") == "wllab-report/1");
  CHECK(report.at("ok") == true);
  CHECK(report.at("checks").size() == 3);

  // corrupt one expectation: now the wl level-2 output should differ from the
  // level-1 partition on the path, so Equivalent is wrong
  manifest["checks"][0]["right"]["k"] = 1;
  std::ofstream(box.path("manifest.json")) << manifest.dump(2);
  CHECK(run("suite --manifest " + box.path("manifest.json") + " --corpus " + box.path("corpus") +
            " --out " + box.path("report2.json")) == 5);
  CHECK(slurp(box.path("report2.json")).at("ok") == false);
}

TEST_CASE("outputs are byte-deterministic") {
  Sandbox box;
  CHECK(run("gen --random 5 --colours 3 --seed 11 --out " + box.path("r1.ccg.json")) == 0);
  CHECK(run("gen --random 5 --colours 3 --seed 11 --out " + box.path("r2.ccg.json")) == 0);
  auto bytes = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  };
  CHECK(bytes(box.path("r1.ccg.json")) == bytes(box.path("r2.ccg.json")));

  CHECK(run("refine --family im --k 3 --field gf:3 --out " + box.path("a.json") + " " +
            box.path("r1.ccg.json")) == 0);
  CHECK(run("refine --family im --k 3 --field gf:3 --out " + box.path("b.json") + " " +
            box.path("r1.ccg.json")) == 0);
  CHECK(bytes(box.path("a.json")) == bytes(box.path("b.json")));
}

TEST_CASE("all-n4 corpus generation") {
  Sandbox box;
  CHECK(run("gen --all-n4 --out-dir " + box.path("n4")) == 0);
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(box.path("n4"))) {
    ++count;
    CHECK_NOTHROW(load_graph_doc(entry.path().string()));
  }
  CHECK(count == 11);
}
