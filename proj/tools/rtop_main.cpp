// File-driven command line for finite r-set topology: construction,
// Hom/singular complexes, homology, folding, and the verification suites.
#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "rtop/rtop.hpp"

namespace {

using namespace rtop;

struct Options {
  std::string format = "text";
  Limits lim;
  std::uint64_t seed = 1729;
  int dim = 3;
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  std::vector<CorpusEntry> out;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files)
    out.push_back(CorpusEntry{f.stem().string(), load_rset(f.string())});
  if (out.empty())
    throw ValidationError("corpus directory has no .json files: " + dir);
  return out;
}

int run_info(const Options& opt, const std::string& path) {
  RSet X = load_rset(path);
  auto bps = beat_points(X);
  if (opt.format == "json") {
    json j;
    j["r"] = X.arity();
    j["vertex_count"] = X.size();
    j["tuple_count"] = X.tuple_count();
    j["loop_count"] = X.loops().count();
    j["beat_point_count"] = bps.size();
    j["minimal"] = bps.empty();
    emit(j);
  } else {
    std::cout << "r-set: r = " << X.arity() << ", " << X.size()
              << " vertices, " << X.tuple_count() << " tuples, "
              << X.loops().count() << " looped vertices\n"
              << (bps.empty() ? "minimal (no beat points)\n"
                              : std::to_string(bps.size()) + " beat pairs\n");
  }
  return 0;
}

int run_verify(const Options& opt, const std::string& suite,
               const std::string& corpus_dir) {
  std::vector<CorpusEntry> corpus =
      corpus_dir.empty() ? builtin_corpus() : load_corpus(corpus_dir);
  SuiteReport rep;
  if (suite == "thm31")
    rep = verify_thm31(corpus, opt.dim, opt.lim);
  else if (suite == "prop44")
    rep = verify_prop44(corpus, opt.lim);
  else if (suite == "core-uniqueness")
    rep = verify_core_uniqueness(opt.seed, 100, 5, opt.lim);
  else if (suite == "lemma27")
    rep = verify_lemma27(opt.dim, opt.lim);
  else if (suite == "lemma29")
    rep = verify_lemma29(opt.dim, opt.lim);
  else if (suite == "example46")
    rep = verify_example46(opt.seed, 50, 20, opt.lim);
  else
    throw ValidationError("unknown verification suite: " + suite);
  if (opt.format == "json")
    emit(report_to_json(rep));
  else
    std::cout << report_to_text(rep);
  return rep.ok() ? 0 : 1;
}

int dispatch(const Options& opt, const std::string& cmd,
             const std::vector<std::string>& files, const std::string& fpath,
             const std::string& gpath, const std::string& method,
             const std::vector<std::string>& hom_files,
             const std::vector<std::string>& sing_files,
             const std::string& clique_file, bool seeded,
             const std::string& corpus_dir) {
  if (cmd == "info") return run_info(opt, files.at(0));

  if (cmd == "product") {
    emit(rset_to_json(product(load_rset(files.at(0)), load_rset(files.at(1)))));
    return 0;
  }
  if (cmd == "exp") {
    emit(rset_to_json(
        exponential(load_rset(files.at(0)), load_rset(files.at(1)), opt.lim)));
    return 0;
  }
  if (cmd == "maps") {
    RSet X = load_rset(files.at(0)), Y = load_rset(files.at(1));
    auto maps = enumerate_rmaps(X, Y, opt.lim);
    if (opt.format == "json") {
      json out = json::array();
      for (const auto& f : maps) {
        json m = json::object();
        for (Vertex v = 0; v < X.size(); ++v) m[X.name(v)] = Y.name(f.img[v]);
        out.push_back(std::move(m));
      }
      emit(out);
    } else {
      for (const auto& f : maps) {
        for (Vertex v = 0; v < X.size(); ++v)
          std::cout << (v ? " " : "") << X.name(v) << "->" << Y.name(f.img[v]);
        std::cout << "\n";
      }
      std::cout << maps.size() << " maps\n";
    }
    return 0;
  }
  if (cmd == "iso") {
    RSet X = load_rset(files.at(0)), Y = load_rset(files.at(1));
    auto iso = find_isomorphism(X, Y, opt.lim);
    if (opt.format == "json") {
      json j;
      j["isomorphic"] = iso.has_value();
      if (iso) {
        json m = json::object();
        for (Vertex v = 0; v < X.size(); ++v)
          m[X.name(v)] = Y.name(iso->img[v]);
        j["isomorphism"] = std::move(m);
      }
      emit(j);
    } else if (iso) {
      for (Vertex v = 0; v < X.size(); ++v)
        std::cout << X.name(v) << " -> " << Y.name(iso->img[v]) << "\n";
    } else {
      std::cout << "not isomorphic\n";
    }
    return iso ? 0 : 1;
  }
  if (cmd == "hom") {
    emit(hom_poset_to_json(
        hom_poset(load_rset(files.at(0)), load_rset(files.at(1)), opt.lim)));
    return 0;
  }
  if (cmd == "sing") {
    emit(sing_to_json(sing_truncated(load_rset(files.at(0)),
                                     load_rset(files.at(1)), opt.dim,
                                     opt.lim)));
    return 0;
  }
  if (cmd == "beats") {
    RSet X = load_rset(files.at(0));
    auto bps = beat_points(X);
    if (opt.format == "json") {
      json out = json::array();
      for (const auto& w : bps)
        out.push_back(json::array({w.point_name, w.witness_name}));
      emit(out);
    } else {
      for (const auto& w : bps)
        std::cout << w.point_name << " beaten by " << w.witness_name << "\n";
      std::cout << bps.size() << " beat pairs\n";
    }
    return 0;
  }
  if (cmd == "core") {
    RSet X = load_rset(files.at(0));
    auto R =
        core(X, seeded ? FoldPolicy::random(opt.seed) : FoldPolicy::first());
    emit(core_to_json(R));
    return 0;
  }
  if (cmd == "seq") {
    bool eq = strong_equivalent_rsets(load_rset(files.at(0)),
                                      load_rset(files.at(1)), opt.lim);
    if (opt.format == "json") {
      json j;
      j["strong_homotopy_equivalent"] = eq;
      emit(j);
    } else {
      std::cout << (eq ? "strong homotopy equivalent\n"
                       : "not strong homotopy equivalent\n");
    }
    return eq ? 0 : 1;
  }
  if (cmd == "homotopic") {
    RSet X = load_rset(files.at(0)), Y = load_rset(files.at(1));
    RMap f = load_rmap(fpath, X, Y);
    RMap g = load_rmap(gpath, X, Y);
    std::optional<HomotopyPath> path;
    bool verdict = false;
    std::string note;
    if (method == "hom-poset") {
      verdict = strongly_homotopic_maps(f, g, HomotopyMethod::HomPoset,
                                        opt.lim)
                    .homotopic;
    } else if (method == "path") {
      auto d = strongly_homotopic_maps(f, g, HomotopyMethod::Path, opt.lim);
      verdict = d.homotopic;
      path = d.path;
    } else {  // both, cross-checked; the Hom side may be guard-limited
      auto d = strongly_homotopic_maps(f, g, HomotopyMethod::Path, opt.lim);
      verdict = d.homotopic;
      path = d.path;
      try {
        bool via_hom = strongly_homotopic_maps(f, g, HomotopyMethod::HomPoset,
                                               opt.lim)
                           .homotopic;
        if (via_hom != verdict)
          throw ValidationError("homotopy methods disagree");
      } catch (const GuardError& e) {
        note = std::string("hom-poset method skipped: ") + e.what();
      }
    }
    if (opt.format == "json") {
      json j;
      j["homotopic"] = verdict;
      if (!note.empty()) j["note"] = note;
      if (path && verdict) {
        json steps = json::array();
        for (const auto& h : path->steps) {
          json m = json::object();
          for (Vertex v = 0; v < X.size(); ++v)
            m[X.name(v)] = Y.name(h.img[v]);
          steps.push_back(std::move(m));
        }
        j["path"] = std::move(steps);
      }
      emit(j);
    } else {
      std::cout << (verdict ? "strongly homotopic" : "not strongly homotopic");
      if (path && verdict)
        std::cout << " (path with " << path->length() << " steps)";
      std::cout << "\n";
      if (!note.empty()) std::cout << note << "\n";
    }
    return verdict ? 0 : 1;
  }
  if (cmd == "homology") {
    HomologyResult H;
    if (!hom_files.empty()) {
      RSet T = load_rset(hom_files.at(0));
      RSet X = load_rset(hom_files.at(1));
      auto C = complex_chains(
          order_complex(hom_poset(T, X, opt.lim), opt.lim), opt.lim);
      H = homology(C, std::max(C.top(), opt.dim - 1), opt.lim);
    } else if (!sing_files.empty()) {
      RSet T = load_rset(sing_files.at(0));
      RSet X = load_rset(sing_files.at(1));
      auto C =
          normalized_chains(sing_truncated(T, X, opt.dim, opt.lim), opt.lim);
      H = homology(C, std::min(C.valid_up_to, opt.dim - 1), opt.lim);
    } else if (!clique_file.empty()) {
      auto C = complex_chains(clique_complex(load_rset(clique_file), opt.lim),
                              opt.lim);
      H = homology(C, std::max(C.top(), opt.dim - 1), opt.lim);
    } else {
      throw ValidationError("homology needs --hom, --sing or --clique");
    }
    if (opt.format == "json")
      emit(homology_to_json(H));
    else
      std::cout << homology_to_text(H);
    return 0;
  }
  if (cmd == "verify") return run_verify(opt, files.at(0), corpus_dir);
  throw ValidationError("unknown command: " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "finite r-set topology: Hom complexes, singular complexes, homology, "
      "folding and cores"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "output format: text | json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-exp-vertices", opt.lim.max_exponential_vertices,
                 "cap on exponential r-set vertices");
  app.add_option("--max-visits", opt.lim.max_enumeration_visits,
                 "cap on enumeration visits");
  app.add_option("--max-cells", opt.lim.max_chain_cells,
                 "cap on chain-complex cells");
  app.add_option("--max-poset", opt.lim.max_poset_elements,
                 "cap on materialized poset elements");

  std::vector<std::string> files;
  std::string fpath, gpath, method = "both", clique_file, corpus_dir;
  std::vector<std::string> hom_files, sing_files;

  auto add_files = [&](CLI::App* sub, int n) {
    sub->add_option("files", files, "r-set file(s)")->expected(n);
  };

  add_files(app.add_subcommand("info", "summary of an r-set file"), 1);
  add_files(app.add_subcommand("product", "product of two r-sets"), 2);
  add_files(app.add_subcommand("exp", "exponential Y^X (args: Y X)"), 2);
  add_files(app.add_subcommand("maps", "all r-set maps X -> Y"), 2);
  add_files(app.add_subcommand("iso", "search for an isomorphism"), 2);
  add_files(app.add_subcommand("hom", "Hom complex poset export"), 2);
  auto* sing = app.add_subcommand("sing", "truncated singular complex export");
  add_files(sing, 2);
  sing->add_option("--dim", opt.dim, "dimension bound");
  add_files(app.add_subcommand("beats", "beat points with witnesses"), 1);
  auto* core_cmd = app.add_subcommand("core", "core and fold sequence");
  add_files(core_cmd, 1);
  auto* seed_opt =
      core_cmd->add_option("--seed", opt.seed, "random fold policy seed");
  add_files(app.add_subcommand("seq", "strong homotopy equivalence of r-sets"),
            2);
  auto* htp = app.add_subcommand("homotopic", "strong homotopy of two maps");
  add_files(htp, 2);
  htp->add_option("--f", fpath, "first map file")->required();
  htp->add_option("--g", gpath, "second map file")->required();
  htp->add_option("--method", method, "hom-poset | path | both")
      ->check(CLI::IsMember({"hom-poset", "path", "both"}));

  auto* hml = app.add_subcommand("homology", "integer homology reports");
  hml->add_option("--hom", hom_files, "T.json X.json: order complex of Hom(T,X)")
      ->expected(2);
  hml->add_option("--sing", sing_files, "T.json X.json: normalized chains")
      ->expected(2);
  hml->add_option("--clique", clique_file, "X.json: clique complex chains");
  hml->add_option("--dim", opt.dim, "truncation bound for --sing");

  auto* ver = app.add_subcommand("verify", "built-in verification suites");
  ver->add_option("suite", files,
                  "thm31 | prop44 | core-uniqueness | lemma27 | lemma29 | "
                  "example46")
      ->expected(1);
  ver->add_option("--corpus", corpus_dir, "directory of r-set files");
  ver->add_option("--seed", opt.seed, "seed for randomized suites");
  ver->add_option("--dim", opt.dim, "truncation bound");

  CLI11_PARSE(app, argc, argv);

  try {
    std::string cmd = app.get_subcommands().front()->get_name();
    bool seeded = seed_opt->count() > 0;
    return dispatch(opt, cmd, files, fpath, gpath, method, hom_files,
                    sing_files, clique_file, seeded, corpus_dir);
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
