#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "wllab/wllab.hpp"

namespace wllab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
  std::optional<std::uint64_t> cap_tuples;
  std::optional<std::uint64_t> cap_sim;
  std::uint64_t seed = Caps{}.seed;
  bool allow_large_pair_scheme = false;

  Caps caps() const {
    Caps c;
    c.seed = seed;
    c.allow_large_pair_scheme = allow_large_pair_scheme;
    if (cap_tuples.has_value()) {
      c.max_tuples = *cap_tuples;
    } else if (const char* env = std::getenv("WLLAB_CAP_TUPLES")) {
      c.max_tuples = std::strtoull(env, nullptr, 10);
    }
    if (cap_sim.has_value()) c.max_similarity_search = *cap_sim;
    return c;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--cap-tuples", opts.cap_tuples,
                  "Maximum colour-table size (env WLLAB_CAP_TUPLES; the flag wins)");
  cmd->add_option("--cap-sim", opts.cap_sim, "Maximum exhaustive similarity search size");
  cmd->add_option("--seed", opts.seed, "Seed for deterministic probing");
  cmd->add_flag("--allow-large-ep", opts.allow_large_pair_scheme,
                "Allow the pair-scheme lift beyond its default k cap");
}

SpasFamily parse_family(const std::string& name) {
  if (name == "wl") return SpasFamily::WL;
  if (name == "c") return SpasFamily::C;
  if (name == "im") return SpasFamily::IM;
  if (name == "imt") return SpasFamily::IMt;
  if (name == "imr") return SpasFamily::IMr;
  if (name == "ep") return SpasFamily::EP;
  throw CLI::ValidationError("--family", "unknown family '" + name + "'");
}

SpasId make_scheme(const std::string& family, std::uint32_t r,
                   const std::optional<std::string>& field, const Caps& caps) {
  SpasId id;
  id.family = parse_family(family);
  id.r = r;
  bool needs_field = id.family == SpasFamily::IM || id.family == SpasFamily::IMt ||
                     id.family == SpasFamily::IMr;
  if (needs_field) {
    if (!field.has_value())
      throw CLI::ValidationError("--field", "family '" + family + "' needs --field q|gf:<p>");
    id.field = FieldSpec::parse(*field, caps);
  }
  return id;
}

// Writes text atomically: temp file in the target directory, then rename.
void write_file_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << text;
  }
  fs::rename(tmp, path);
}

json partition_to_json(const Partition& arcs, std::uint32_t iterations) {
  const std::uint32_t n = arcs.n();
  std::vector<std::vector<std::array<std::uint32_t, 2>>> classes(arcs.class_count());
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      classes[arcs.colour(static_cast<TupleCode>(u) * n + v)].push_back({u, v});
  json jclasses = json::array();
  for (const auto& cls : classes) {
    json jc = json::array();
    for (const auto& [u, v] : cls) jc.push_back({u, v});
    jclasses.push_back(std::move(jc));
  }
  json doc;
  doc["schema"] = "wllab-partition/1";
  doc["n"] = n;
  doc["arity"] = 2;
  doc["classes"] = std::move(jclasses);
  doc["iterations"] = iterations;
  return doc;
}

Partition partition_from_json(const json& doc) {
  const std::uint32_t n = doc.at("n").get<std::uint32_t>();
  if (doc.at("arity").get<std::uint32_t>() != 2)
    throw ParseError("partition document: only arity 2 is stored");
  std::vector<Colour> colours(static_cast<std::size_t>(n) * n, 0xffffffffu);
  Colour id = 0;
  for (const json& cls : doc.at("classes")) {
    for (const json& arc : cls) {
      const std::uint64_t u = arc.at(0).get<std::uint64_t>();
      const std::uint64_t v = arc.at(1).get<std::uint64_t>();
      if (u >= n || v >= n) throw ParseError("partition document: arc out of range");
      if (colours[u * n + v] != 0xffffffffu)
        throw ParseError("partition document: duplicate arc");
      colours[u * n + v] = id;
    }
    ++id;
  }
  for (Colour c : colours)
    if (c == 0xffffffffu) throw ParseError("partition document: arcs missing");
  return Partition(n, 2, std::move(colours));
}

json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// ---- refine ----------------------------------------------------------

struct RefineArgs {
  std::string family = "wl";
  std::uint32_t k = 2;
  std::uint32_t r = 1;
  std::optional<std::string> field;
  std::string input;
  std::string out;
  CommonOpts common;
};

int cmd_refine(const RefineArgs& args) {
  if (args.k == 0) {
    std::cerr << "refine: --k must be at least 1\n";
    return kUsage;
  }
  Caps caps = args.common.caps();
  SpasId scheme = make_scheme(args.family, args.r, args.field, caps);
  Graph g = load_graph_doc(args.input);
  SpasResult result = spas_apply_detailed(scheme, g, args.k, caps);
  json doc = partition_to_json(result.arcs, result.iterations);
  std::string text = doc.dump(2) + "\n";
  if (!args.out.empty())
    write_file_atomic(args.out, text);
  else
    std::cout << text;
  std::cerr << "refine: " << scheme.name() << " k=" << args.k << " classes="
            << result.arcs.class_count() << " iterations=" << result.iterations << "\n";
  return kOk;
}

// ---- compare ---------------------------------------------------------

int cmd_compare(const std::string& left, const std::string& right) {
  Partition a = partition_from_json(load_json(left));
  Partition b = partition_from_json(load_json(right));
  if (a.n() != b.n()) throw ParseError("compare: partitions have different vertex counts");
  std::cout << to_string(compare(a, b)) << "\n";
  return kOk;
}

// ---- suite -----------------------------------------------------------

SpasId scheme_from_json(const json& j, const Caps& caps) {
  std::uint32_t r = j.value("r", 1u);
  std::optional<std::string> field;
  if (j.contains("field")) field = j.at("field").get<std::string>();
  return make_scheme(j.at("family").get<std::string>(), r, field, caps);
}

struct SuiteArgs {
  std::string manifest;
  std::string corpus;
  std::string out;
  CommonOpts common;
};

int cmd_suite(const SuiteArgs& args) {
  Caps caps = args.common.caps();
  json manifest = load_json(args.manifest);
  if (manifest.value("schema", "") != "wllab-suite/1")
    throw ParseError("suite manifest: unknown schema");

  std::vector<std::pair<std::string, Graph>> corpus;
  for (const json& f : manifest.at("corpus")) {
    std::string name = f.get<std::string>();
    corpus.emplace_back(name, load_graph_doc((fs::path(args.corpus) / name).string()));
  }
  auto find_graph = [&](const std::string& name) -> const Graph& {
    for (const auto& [n, g] : corpus)
      if (n == name) return g;
    throw ParseError("suite manifest: graph '" + name + "' is not in the corpus");
  };

  json results = json::array();
  bool all_ok = true;
  std::size_t index = 0;
  for (const json& check : manifest.at("checks")) {
    const std::string type = check.at("type").get<std::string>();
    json entry;
    entry["index"] = index++;
    entry["type"] = type;
    bool ok = true;
    if (type == "pair") {
      SpasPoint left{scheme_from_json(check.at("left"), caps),
                     check.at("left").at("k").get<std::uint32_t>()};
      SpasPoint right{scheme_from_json(check.at("right"), caps),
                      check.at("right").at("k").get<std::uint32_t>()};
      std::vector<std::string> allowed = check.at("expect").get<std::vector<std::string>>();
      DominanceReport report = dominance_report(corpus, {{left, right}}, caps);
      json outcomes = json::array();
      for (const DominanceEntry& e : report.pairs[0].entries) {
        const char* oc = to_string(e.outcome);
        outcomes.push_back({{"graph", e.graph}, {"outcome", oc}});
        if (std::find(allowed.begin(), allowed.end(), oc) == allowed.end()) ok = false;
      }
      entry["entries"] = std::move(outcomes);
    } else if (type == "axioms") {
      SpasId scheme = scheme_from_json(check.at("scheme"), caps);
      json outcomes = json::array();
      for (const auto& [name, g] : corpus) {
        AxiomCheckReport report = spas_axiom_check(scheme, g, caps);
        outcomes.push_back({{"graph", name}, {"ok", report.ok()}, {"detail", report.detail}});
        if (!report.ok()) ok = false;
      }
      entry["entries"] = std::move(outcomes);
    } else if (type == "distinguishes") {
      SpasId scheme = scheme_from_json(check.at("scheme"), caps);
      std::uint32_t k = check.at("k").get<std::uint32_t>();
      bool expect = check.at("expect").get<bool>();
      bool got = distinguishes(scheme, k, find_graph(check.at("left").get<std::string>()),
                               find_graph(check.at("right").get<std::string>()), caps);
      entry["observed"] = got;
      ok = (got == expect);
    } else {
      throw ParseError("suite manifest: unknown check type '" + type + "'");
    }
    entry["ok"] = ok;
    all_ok = all_ok && ok;
    results.push_back(std::move(entry));
  }

  json report;
  report["schema"] = "wllab-report/1";
  report["checks"] = std::move(results);
  report["ok"] = all_ok;
  std::string text = report.dump(2) + "\n";
  if (!args.out.empty())
    write_file_atomic(args.out, text);
  else
    std::cout << text;

  for (const json& entry : report.at("checks"))
    std::cerr << "suite: check " << entry.at("index") << " (" << entry.at("type").get<std::string>()
              << ") " << (entry.at("ok").get<bool>() ? "ok" : "FAILED") << "\n";
  return all_ok ? kOk : kExpectationFailed;
}

// ---- gen -------------------------------------------------------------

struct GenArgs {
  std::string name;
  std::vector<std::uint32_t> params;
  bool all_n4 = false;
  std::uint32_t random_n = 0;
  std::uint32_t random_colours = 3;
  std::uint64_t seed = 1;
  std::string out;
  std::string out_dir;
};

int cmd_gen(const GenArgs& args) {
  if (args.all_n4) {
    if (args.out_dir.empty()) {
      std::cerr << "gen: --all-n4 needs --out-dir\n";
      return kUsage;
    }
    fs::create_directories(args.out_dir);
    auto graphs = all_graphs_on_4_vertices();
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "n4_%02zu.ccg.json", i);
      GraphDocMeta meta;
      meta.fields["name"] = std::string("n4_") + std::to_string(i);
      meta.fields["family"] = "all_n4";
      save_graph_doc(graphs[i], (fs::path(args.out_dir) / name).string(), meta);
    }
    std::cerr << "gen: wrote " << graphs.size() << " graphs to " << args.out_dir << "\n";
    return kOk;
  }
  if (args.out.empty()) {
    std::cerr << "gen: need --out\n";
    return kUsage;
  }
  Graph g = args.random_n > 0
                ? random_coloured_digraph(args.random_n, args.random_colours, args.seed)
                : named_graph(args.name, args.params);
  GraphDocMeta meta;
  meta.fields["name"] = args.random_n > 0 ? "random" : args.name;
  if (args.random_n > 0) meta.fields["seed"] = std::to_string(args.seed);
  save_graph_doc(g, args.out, meta);
  std::cerr << "gen: wrote " << args.out << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"partition refinement operators on tuples of graph vertices"};
  app.require_subcommand(1);

  RefineArgs refine;
  CLI::App* cmd_ref = app.add_subcommand("refine", "stabilize one graph under a scheme level");
  cmd_ref->add_option("--family", refine.family, "wl|c|im|imt|imr|ep")->required();
  cmd_ref->add_option("--k", refine.k, "tuple arity of the scheme level")->required();
  cmd_ref->add_option("--r", refine.r, "substitution arity (wl/c/imr)");
  cmd_ref->add_option("--field", refine.field, "q or gf:<p> (im/imt/imr)");
  cmd_ref->add_option("--out", refine.out, "output partition file (default: stdout)");
  cmd_ref->add_option("input", refine.input, "input .ccg.json graph")->required();
  add_common(cmd_ref, refine.common);

  std::string cmp_left, cmp_right;
  CLI::App* cmd_cmp = app.add_subcommand("compare", "compare two stored arc partitions");
  cmd_cmp->add_option("left", cmp_left)->required();
  cmd_cmp->add_option("right", cmp_right)->required();

  SuiteArgs suite;
  CLI::App* cmd_sui = app.add_subcommand("suite", "run a manifest of checks over a corpus");
  cmd_sui->add_option("--manifest", suite.manifest)->required();
  cmd_sui->add_option("--corpus", suite.corpus, "directory with the corpus graphs")->required();
  cmd_sui->add_option("--out", suite.out, "report file (default: stdout)");
  add_common(cmd_sui, suite.common);

  GenArgs gen;
  CLI::App* cmd_g = app.add_subcommand("gen", "write corpus graphs");
  cmd_g->add_option("--name", gen.name, "path|cycle|complete|complete_bipartite|grid|petersen|shrikhande|rook44");
  cmd_g->add_option("--params", gen.params, "size parameters for --name");
  cmd_g->add_flag("--all-n4", gen.all_n4, "write all 11 graphs on 4 vertices");
  cmd_g->add_option("--random", gen.random_n, "random coloured digraph on this many vertices");
  cmd_g->add_option("--colours", gen.random_colours, "palette size for --random");
  cmd_g->add_option("--seed", gen.seed, "seed for --random");
  cmd_g->add_option("--out", gen.out, "output file");
  cmd_g->add_option("--out-dir", gen.out_dir, "output directory for --all-n4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (cmd_ref->parsed()) return cmd_refine(refine);
    if (cmd_cmp->parsed()) return cmd_compare(cmp_left, cmp_right);
    if (cmd_sui->parsed()) return cmd_suite(suite);
    if (cmd_g->parsed()) return cmd_gen(gen);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCaps;
  } catch (const SimilarityUndecided& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUndecided;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const NotRainbow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace wllab::cli
