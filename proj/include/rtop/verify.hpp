#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rtop/corpus.hpp"
#include "rtop/homology.hpp"
#include "rtop/json_io.hpp"
#include "rtop/strong_homotopy.hpp"

namespace rtop {

enum class CheckStatus { Pass, Fail, Skip };

struct CheckLine {
  std::string name;
  CheckStatus status = CheckStatus::Skip;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckLine> lines;

  std::size_t count(CheckStatus s) const {
    std::size_t c = 0;
    for (const auto& l : lines) c += (l.status == s);
    return c;
  }
  /// Verified: nothing failed and at least one case actually ran.
  bool ok() const {
    return count(CheckStatus::Fail) == 0 && count(CheckStatus::Pass) > 0;
  }
};

namespace detail {

inline void add(SuiteReport& rep, std::string name, CheckStatus st,
                std::string detail = "") {
  rep.lines.push_back(CheckLine{std::move(name), st, std::move(detail)});
}

}  // namespace detail

/// Homological agreement of the two pipelines: for every corpus pair with a
/// nonempty map set (and within guards), the integer homology of the
/// normalized chains of Sing(T,X) truncated at N equals the homology of the
/// order complex of Hom(T,X) in degrees 0..N-1, and component counts match.
inline SuiteReport verify_thm31(const std::vector<CorpusEntry>& corpus,
                                int N = 3, const Limits& lim = Limits{}) {
  SuiteReport rep{"thm31", {}};
  for (const auto& [tname, T] : corpus) {
    for (const auto& [xname, X] : corpus) {
      std::string name = tname + "," + xname;
      if (T.arity() != X.arity()) continue;
      try {
        auto maps = enumerate_rmaps(T, X, lim);
        if (maps.empty()) {
          detail::add(rep, name, CheckStatus::Skip, "no r-set maps");
          continue;
        }
        auto S = sing_truncated(T, X, N, lim);
        auto CS = normalized_chains(S, lim);
        auto HS = homology(CS, N - 1, lim);

        auto P = hom_poset(T, X, lim);
        auto CH = complex_chains(order_complex(P, lim), lim);
        auto HH = homology(CH, N - 1, lim);

        bool same = components(S).count == components(P).count;
        for (int n = 0; n < N && same; ++n)
          same = HS.degrees[n] == HH.degrees[n];
        if (same) {
          std::ostringstream d;
          for (int n = 0; n < N; ++n) {
            if (n) d << ", ";
            d << "H_" << n << " = " << homology_degree_to_text(HS.degrees[n]);
          }
          detail::add(rep, name, CheckStatus::Pass, d.str());
        } else {
          detail::add(rep, name, CheckStatus::Fail,
                      "pipelines disagree:\n    sing: " + homology_to_text(HS) +
                          "    hom:  " + homology_to_text(HH));
        }
      } catch (const GuardError& e) {
        detail::add(rep, name, CheckStatus::Skip, e.what());
      }
    }
  }
  return rep;
}

/// Method agreement for strong homotopy of maps: Hom-complex components and
/// map-graph reachability give identical verdicts on every map pair, and
/// every returned path re-validates (including as an explicit interval
/// homotopy).
inline SuiteReport verify_prop44(const std::vector<CorpusEntry>& corpus,
                                 const Limits& lim = Limits{}) {
  SuiteReport rep{"prop44", {}};
  for (const auto& [tname, T] : corpus) {
    for (const auto& [xname, X] : corpus) {
      std::string name = tname + "," + xname;
      if (T.arity() != X.arity()) continue;
      try {
        MapGraph G = map_graph(T, X, lim);
        if (G.maps.empty()) {
          detail::add(rep, name, CheckStatus::Skip, "no r-set maps");
          continue;
        }
        auto hom = hom_complex(T, X, lim);
        if (hom.size() > lim.max_poset_elements)
          throw GuardError("poset elements", lim.max_poset_elements);
        auto hcomp = hom_components(hom.elements);

        std::size_t checked = 0, disagreements = 0, bad_paths = 0;
        for (std::size_t i = 0; i < G.maps.size(); ++i) {
          std::size_t hi = hom.index_of(as_multimap(G.maps[i]));
          for (std::size_t j = i; j < G.maps.size(); ++j) {
            std::size_t hj = hom.index_of(as_multimap(G.maps[j]));
            bool via_hom = hcomp[hi] == hcomp[hj];
            bool via_path = G.comp[i] == G.comp[j];
            ++checked;
            if (via_hom != via_path) {
              ++disagreements;
              continue;
            }
            if (via_path) {
              auto path = path_in_graph(G, i, j);
              bool good = path && validate_path(*path) &&
                          path->steps.front() == G.maps[i] &&
                          path->steps.back() == G.maps[j] &&
                          is_rmap(path_as_interval_homotopy(*path));
              if (!good) ++bad_paths;
            }
          }
        }
        std::ostringstream d;
        d << checked << " map pairs";
        if (disagreements + bad_paths == 0)
          detail::add(rep, name, CheckStatus::Pass, d.str());
        else {
          d << ", " << disagreements << " verdict disagreements, " << bad_paths
            << " invalid paths";
          detail::add(rep, name, CheckStatus::Fail, d.str());
        }
      } catch (const GuardError& e) {
        detail::add(rep, name, CheckStatus::Skip, e.what());
      }
    }
  }
  return rep;
}

/// Core uniqueness: over a seeded random corpus, cores computed under
/// different fold policies are pairwise isomorphic.
inline SuiteReport verify_core_uniqueness(std::uint64_t seed,
                                          std::size_t instances = 100,
                                          std::size_t policies = 5,
                                          const Limits& lim = Limits{}) {
  SuiteReport rep{"core-uniqueness", {}};
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < instances; ++i) {
    RSet X = random_rset(rng);
    std::string name = "rset-" + std::to_string(i) + " (r=" +
                       std::to_string(X.arity()) + ", n=" +
                       std::to_string(X.size()) + ")";
    std::vector<CoreResult> cores;
    cores.push_back(core(X, FoldPolicy::first()));
    for (std::size_t p = 1; p < policies; ++p)
      cores.push_back(core(X, FoldPolicy::random(seed + 1000 * i + p)));
    bool ok = true;
    for (std::size_t p = 1; p < cores.size() && ok; ++p)
      ok = find_isomorphism(cores[0].core, cores[p].core, lim).has_value();
    for (const auto& c : cores)
      if (!beat_points(c.core).empty()) ok = false;
    detail::add(rep, name, ok ? CheckStatus::Pass : CheckStatus::Fail,
                "core size " + std::to_string(cores[0].core.size()) + ", " +
                    std::to_string(cores[0].folds.size()) + " folds");
  }
  return rep;
}

/// Constructive fold data: for every beat pair of every instance in the
/// seeded random corpus, the retraction is a map of r-sets and the
/// connecting multi-map sits above both the identity and the round trip.
inline SuiteReport verify_fold_witnesses(std::uint64_t seed,
                                         std::size_t instances = 100,
                                         const Limits& lim = Limits{}) {
  SuiteReport rep{"fold-witnesses", {}};
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < instances; ++i) {
    RSet X = random_rset(rng);
    std::string name = "rset-" + std::to_string(i);
    auto bps = beat_points(X);
    if (bps.empty()) {
      detail::add(rep, name, CheckStatus::Pass, "minimal, nothing to fold");
      continue;
    }
    bool ok = true;
    for (const auto& w : bps) {
      try {
        auto F = fold(X, w);
        ok = ok && is_rmap(F.retraction) && is_rmap(F.inclusion) &&
             is_multimap(F.eta) &&
             multimap_leq(as_multimap(identity_rmap(X)), F.eta) &&
             multimap_leq(as_multimap(compose(F.inclusion, F.retraction)),
                          F.eta);
      } catch (const ValidationError&) {
        ok = false;
      }
    }
    detail::add(rep, name, ok ? CheckStatus::Pass : CheckStatus::Fail,
                std::to_string(bps.size()) + " beat pairs validated");
    (void)lim;
  }
  return rep;
}

namespace detail {

inline std::vector<std::tuple<std::string, RSet, RSet, RSet>>
comparison_triples() {
  return {
      {"(sigma0,k2,k3)", standard_sigma(0, 2), standard_complete(2),
       standard_complete(3)},
      {"(k2,k2,k3)", standard_complete(2), standard_complete(2),
       standard_complete(3)},
      {"(sigma1,sigma1,sigma2)", standard_sigma(1, 2), standard_sigma(1, 2),
       standard_sigma(2, 2)},
  };
}

}  // namespace detail

/// Product comparison: p o i = id and i o p >= id on the Hom side (exact),
/// and the dimension-wise product isomorphism of singular complexes
/// commuting with faces and degeneracies (largest in-guard dimension <= N).
inline SuiteReport verify_lemma27(int N = 3, const Limits& lim = Limits{}) {
  SuiteReport rep{"lemma27", {}};
  for (const auto& [name, X, Y, Z] : detail::comparison_triples()) {
    try {
      auto R = product_compare(X, Y, Z, lim);
      bool pi_id = true, ip_up = true;
      for (std::size_t a = 0; a < R.hom_x_y.size() && pi_id; ++a)
        for (std::size_t b = 0; b < R.hom_x_z.size() && pi_id; ++b)
          pi_id = R.p[R.i[a][b]] == std::make_pair(a, b);
      for (std::size_t e = 0; e < R.hom_x_yz.size() && ip_up; ++e) {
        auto [a, b] = R.p[e];
        ip_up = multimap_leq(R.hom_x_yz.elements[e],
                             R.hom_x_yz.elements[R.i[a][b]]);
      }
      std::string d = "|Hom(X,YxZ)| = " + std::to_string(R.hom_x_yz.size());
      detail::add(rep, "poset " + name,
                  (pi_id && ip_up) ? CheckStatus::Pass : CheckStatus::Fail, d);
    } catch (const GuardError& e) {
      detail::add(rep, "poset " + name, CheckStatus::Skip, e.what());
    }

    bool done = false;
    for (int n = N; n >= 1 && !done; --n) {
      try {
        auto R = product_iso(X, Y, Z, n, lim);
        std::string d = "dim " + std::to_string(n) + ", " +
                        std::to_string(R.lhs.total_count()) + " simplices";
        if (n < N) d += " (guard-limited)";
        detail::add(rep, "sing " + name,
                    R.iso.ok ? CheckStatus::Pass : CheckStatus::Fail,
                    R.iso.ok ? d : R.iso.detail);
        done = true;
      } catch (const GuardError&) {
        // retry one dimension lower
      }
    }
    if (!done)
      detail::add(rep, "sing " + name, CheckStatus::Skip,
                  "guards exceeded at every dimension");
  }
  return rep;
}

/// Currying comparison: Psi' o Phi' = id, Phi' o Psi' >= id on the Hom side,
/// and the currying isomorphism of singular complexes.
inline SuiteReport verify_lemma29(int N = 3, const Limits& lim = Limits{}) {
  SuiteReport rep{"lemma29", {}};
  for (const auto& [name, X, Y, Z] : detail::comparison_triples()) {
    try {
      auto R = exp_compare(X, Y, Z, lim);
      bool psiphi_id = true, phipsi_up = true;
      for (std::size_t e = 0; e < R.hom_prod.size() && psiphi_id; ++e)
        psiphi_id = R.psi[R.phi[e]] == e;
      for (std::size_t e = 0; e < R.hom_exp.size() && phipsi_up; ++e)
        phipsi_up = multimap_leq(R.hom_exp.elements[e],
                                 R.hom_exp.elements[R.phi[R.psi[e]]]);
      std::string d = "|Hom(XxY,Z)| = " + std::to_string(R.hom_prod.size()) +
                      ", |Hom(X,Z^Y)| = " + std::to_string(R.hom_exp.size());
      detail::add(rep, "poset " + name,
                  (psiphi_id && phipsi_up) ? CheckStatus::Pass
                                           : CheckStatus::Fail,
                  d);
    } catch (const GuardError& e) {
      detail::add(rep, "poset " + name, CheckStatus::Skip, e.what());
    }

    bool done = false;
    for (int n = N; n >= 1 && !done; --n) {
      try {
        auto R = curry_iso(X, Y, Z, n, lim);
        std::string d = "dim " + std::to_string(n) + ", " +
                        std::to_string(R.lhs.total_count()) + " simplices";
        if (n < N) d += " (guard-limited)";
        detail::add(rep, "sing " + name,
                    R.iso.ok ? CheckStatus::Pass : CheckStatus::Fail,
                    R.iso.ok ? d : R.iso.detail);
        done = true;
      } catch (const GuardError&) {
      }
    }
    if (!done)
      detail::add(rep, "sing " + name, CheckStatus::Skip,
                  "guards exceeded at every dimension");
  }
  return rep;
}

/// Beat-point cross-validation against the classical specializations, as
/// stated: order-theoretic upper/lower beat points on random preorders and
/// vertex domination on random complexes at r = dim+1. The sharpened
/// variants that hold in general (duplicate points; domination at
/// r >= dim+2) are reported alongside.
inline SuiteReport verify_example46(std::uint64_t seed,
                                    std::size_t preorders = 50,
                                    std::size_t complexes = 20,
                                    const Limits& lim = Limits{}) {
  SuiteReport rep{"example46", {}};
  (void)lim;
  std::mt19937_64 rng(seed);

  auto def45_beat = [](const RSet& X, Vertex x) {
    for (Vertex y = 0; y < X.size(); ++y)
      if (is_beat_witness(X, x, y)) return true;
    return false;
  };

  for (std::size_t i = 0; i < preorders; ++i) {
    RSet P = random_preorder(rng);
    bool literal = true, sharpened = true;
    for (Vertex x = 0; x < P.size(); ++x) {
      bool def = def45_beat(P, x);
      if (def != oracle_poset_beat(P, x)) literal = false;
      if (def != oracle_poset_duplicate(P, x)) sharpened = false;
    }
    detail::add(rep, "preorder-" + std::to_string(i) + " vs upper/lower-beat",
                literal ? CheckStatus::Pass : CheckStatus::Fail,
                literal ? "" : "single-coordinate beat points differ");
    detail::add(rep,
                "preorder-" + std::to_string(i) + " vs duplicate-point",
                sharpened ? CheckStatus::Pass : CheckStatus::Fail, "");
  }

  for (std::size_t i = 0; i < complexes; ++i) {
    auto K = random_complex(rng);
    int r_edge = K.dim() + 1;
    RSet enc_edge = complex_to_rset(K, r_edge);
    bool literal = true;
    for (Vertex v = 0; v < enc_edge.size(); ++v)
      if (def45_beat(enc_edge, v) != oracle_complex_dominated(K, v, r_edge))
        literal = false;
    detail::add(rep,
                "complex-" + std::to_string(i) + " vs domination (r=dim+1)",
                literal ? CheckStatus::Pass : CheckStatus::Fail,
                literal ? "" : "beat points differ at the boundary arity");

    int r_safe = K.dim() + 2;
    RSet enc_safe = complex_to_rset(K, r_safe);
    bool sharpened = true;
    for (Vertex v = 0; v < enc_safe.size(); ++v)
      if (def45_beat(enc_safe, v) != oracle_complex_dominated(K, v, r_safe))
        sharpened = false;
    detail::add(rep,
                "complex-" + std::to_string(i) + " vs domination (r=dim+2)",
                sharpened ? CheckStatus::Pass : CheckStatus::Fail, "");
  }
  return rep;
}

inline std::string status_text(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    default:
      return "SKIP";
  }
}

inline std::string report_to_text(const SuiteReport& rep) {
  std::ostringstream out;
  for (const auto& line : rep.lines) {
    out << status_text(line.status) << "  " << line.name;
    if (!line.detail.empty()) out << "  [" << line.detail << "]";
    out << "\n";
  }
  out << rep.suite << ": " << rep.count(CheckStatus::Pass) << " passed, "
      << rep.count(CheckStatus::Fail) << " failed, "
      << rep.count(CheckStatus::Skip) << " skipped\n";
  return out.str();
}

inline json report_to_json(const SuiteReport& rep) {
  json j;
  j["suite"] = rep.suite;
  json lines = json::array();
  for (const auto& line : rep.lines) {
    json l;
    l["name"] = line.name;
    l["status"] = status_text(line.status);
    l["detail"] = line.detail;
    lines.push_back(std::move(l));
  }
  j["checks"] = std::move(lines);
  j["passed"] = rep.count(CheckStatus::Pass);
  j["failed"] = rep.count(CheckStatus::Fail);
  j["skipped"] = rep.count(CheckStatus::Skip);
  j["ok"] = rep.ok();
  return j;
}

}  // namespace rtop
