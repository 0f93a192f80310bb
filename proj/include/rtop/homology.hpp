#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rtop/core.hpp"
#include "rtop/poset.hpp"
#include "rtop/simplicial.hpp"

namespace rtop {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Dense integer matrices and Smith normal form

struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BigInt> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  BigInt& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const BigInt& at(std::size_t i, std::size_t j) const {
    return a[i * cols + j];
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
};

inline IntMatrix multiply(const IntMatrix& A, const IntMatrix& B) {
  if (A.cols != B.rows) throw ValidationError("matrix shape mismatch");
  IntMatrix C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      const BigInt& aik = A.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

/// Fraction-free determinant (Bareiss); used as the independent unimodularity
/// oracle for SNF transforms.
inline BigInt det_bareiss(IntMatrix m) {
  if (m.rows != m.cols) throw ValidationError("determinant of non-square");
  const std::size_t n = m.rows;
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m.at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j)
        std::swap(m.at(k, j), m.at(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) =
            (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

struct SnfResult {
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix d;  // diagonal with divisibility chain, rows x cols
  IntMatrix v;  // unimodular, cols x cols
};

struct RankFactors {
  std::size_t rank = 0;
  std::vector<BigInt> nontrivial;  // invariant factors > 1, divisibility order
};

namespace detail {

/// Division rounded to the nearest integer; keeps remainders at most half
/// the pivot, which is what keeps elimination entries from exploding.
inline BigInt round_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  BigInt r = a - q * b;
  if (2 * abs(r) > abs(b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
  return q;
}

}  // namespace detail

/// Diagonalizes an integer matrix by unimodular row/column operations,
/// tracking the transforms: u*m*v = d. The pivot is re-selected as the
/// smallest nonzero absolute value of the remaining submatrix on every pass.
inline SnfResult smith_normal_form(const IntMatrix& input) {
  SnfResult R{IntMatrix::identity(input.rows), input,
              IntMatrix::identity(input.cols)};
  IntMatrix& D = R.d;
  IntMatrix& U = R.u;
  IntMatrix& V = R.v;
  const std::size_t n = std::min(D.rows, D.cols);

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < D.cols; ++j) std::swap(D.at(a, j), D.at(b, j));
    for (std::size_t j = 0; j < U.cols; ++j) std::swap(U.at(a, j), U.at(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < D.rows; ++i) std::swap(D.at(i, a), D.at(i, b));
    for (std::size_t i = 0; i < V.rows; ++i) std::swap(V.at(i, a), V.at(i, b));
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    // row_dst += q * row_src
    for (std::size_t j = 0; j < D.cols; ++j) D.at(dst, j) += q * D.at(src, j);
    for (std::size_t j = 0; j < U.cols; ++j) U.at(dst, j) += q * U.at(src, j);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t i = 0; i < D.rows; ++i) D.at(i, dst) += q * D.at(i, src);
    for (std::size_t i = 0; i < V.rows; ++i) V.at(i, dst) += q * V.at(i, src);
  };
  // moves the submatrix entry of least magnitude to (t,t); false when the
  // submatrix is all zero
  auto select_pivot = [&](std::size_t t) {
    bool found = false;
    std::size_t pi = t, pj = t;
    BigInt best = 0;
    for (std::size_t i = t; i < D.rows; ++i)
      for (std::size_t j = t; j < D.cols; ++j) {
        if (D.at(i, j) == 0) continue;
        BigInt mag = abs(D.at(i, j));
        if (!found || mag < best) {
          found = true;
          best = mag;
          pi = i;
          pj = j;
        }
      }
    if (found) {
      swap_rows(t, pi);
      swap_cols(t, pj);
    }
    return found;
  };

  bool exhausted = false;
  for (std::size_t t = 0; t < n && !exhausted; ++t) {
    bool done = false;
    while (!done) {
      if (!select_pivot(t)) {  // nothing left anywhere
        exhausted = true;
        break;
      }
      bool dirty = false;
      for (std::size_t i = t + 1; i < D.rows; ++i) {
        if (D.at(i, t) == 0) continue;
        add_row(i, t, -detail::round_div(D.at(i, t), D.at(t, t)));
        if (D.at(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < D.cols; ++j) {
        if (D.at(t, j) == 0) continue;
        add_col(j, t, -detail::round_div(D.at(t, j), D.at(t, t)));
        if (D.at(t, j) != 0) dirty = true;
      }
      if (dirty) continue;  // a strictly smaller pivot exists now

      done = true;
      for (std::size_t i = t + 1; i < D.rows && done; ++i)
        for (std::size_t j = t + 1; j < D.cols && done; ++j)
          if (D.at(i, j) % D.at(t, t) != 0) {
            add_row(t, i, 1);  // pull the offending row in and redo
            done = false;
          }
    }
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (D.at(t, t) < 0) {
      for (std::size_t j = 0; j < D.cols; ++j) D.at(t, j) = -D.at(t, j);
      for (std::size_t j = 0; j < U.cols; ++j) U.at(t, j) = -U.at(t, j);
    }
  }
  return R;
}

/// Nontrivial invariant factors straight from a dense matrix.
inline RankFactors dense_invariant_factors(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  RankFactors R;
  for (std::size_t t = 0; t < std::min(m.rows, m.cols); ++t) {
    const BigInt& d = snf.d.at(t, t);
    if (d == 0) break;
    ++R.rank;
    if (d > 1) R.nontrivial.push_back(d);
  }
  return R;
}

// ---------------------------------------------------------------------------
// Sparse rank / invariant factors for boundary matrices

namespace detail {

struct Int64Overflow {};

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Int64Overflow{};
  return r;
}
inline long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Int64Overflow{};
  return r;
}

template <class I>
I sp_mul(const I& a, const I& b) {
  if constexpr (std::is_same_v<I, long long>)
    return checked_mul(a, b);
  else
    return a * b;
}
template <class I>
I sp_sub(const I& a, const I& b) {
  if constexpr (std::is_same_v<I, long long>)
    return checked_sub(a, b);
  else
    return a - b;
}

/// One column of a sparse integer matrix: (row, value) pairs.
using SparseCol = std::vector<std::pair<std::uint32_t, long long>>;

/// Unit-pivot sparse elimination. Every +-1 pivot contributes an invariant
/// factor 1; what survives is densified and finished by the dense SNF.
template <class I>
RankFactors sparse_invariant_factors_impl(std::size_t nrows,
                                          const std::vector<SparseCol>& cols_in,
                                          std::size_t dense_cap) {
  const std::size_t ncols = cols_in.size();
  std::vector<std::unordered_map<std::uint32_t, I>> rows(nrows);
  std::vector<std::unordered_set<std::uint32_t>> cols(ncols);
  for (std::uint32_t c = 0; c < ncols; ++c) {
    for (auto [r, v] : cols_in[c]) {
      if (v == 0) continue;
      rows[r][c] = I(v);
      cols[c].insert(r);
    }
  }

  using Cand = std::tuple<std::size_t, std::uint32_t, std::uint32_t>;
  std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> queue;
  auto is_unit = [](const I& v) { return v == 1 || v == -1; };
  auto score = [&](std::uint32_t r, std::uint32_t c) {
    return (rows[r].size() - 1) * (cols[c].size() - 1);
  };
  for (std::uint32_t r = 0; r < nrows; ++r)
    for (auto& [c, v] : rows[r])
      if (is_unit(v)) queue.emplace(score(r, c), r, c);

  std::size_t pivots = 0;
  while (!queue.empty()) {
    auto [s, pr, pc] = queue.top();
    queue.pop();
    auto it = rows[pr].find(pc);
    if (it == rows[pr].end() || !is_unit(it->second)) continue;
    std::size_t cur = score(pr, pc);
    if (cur > s) {
      queue.emplace(cur, pr, pc);
      continue;
    }
    const I pivot = it->second;  // +-1

    // eliminate pivot column from all other rows
    std::vector<std::uint32_t> col_rows(cols[pc].begin(), cols[pc].end());
    std::vector<std::pair<std::uint32_t, I>> pivot_row(rows[pr].begin(),
                                                       rows[pr].end());
    for (std::uint32_t r : col_rows) {
      if (r == pr) continue;
      I factor = sp_mul(rows[r][pc], pivot);  // value / pivot
      for (auto& [c, v] : pivot_row) {
        auto jt = rows[r].find(c);
        I nv = sp_sub(jt == rows[r].end() ? I(0) : jt->second,
                      sp_mul(factor, v));
        if (nv == 0) {
          if (jt != rows[r].end()) {
            rows[r].erase(jt);
            cols[c].erase(r);
          }
        } else {
          if (jt == rows[r].end()) {
            rows[r][c] = nv;
            cols[c].insert(r);
          } else {
            jt->second = nv;
          }
          if (is_unit(nv)) queue.emplace(score(r, c), r, c);
        }
      }
    }
    // drop the pivot row and column
    for (auto& [c, v] : pivot_row) cols[c].erase(pr);
    rows[pr].clear();
    cols[pc].clear();
    ++pivots;
  }

  // densify the residual
  std::vector<std::uint32_t> live_rows, live_cols;
  {
    std::unordered_set<std::uint32_t> col_set;
    for (std::uint32_t r = 0; r < nrows; ++r) {
      if (rows[r].empty()) continue;
      live_rows.push_back(r);
      for (auto& [c, v] : rows[r]) col_set.insert(c);
    }
    live_cols.assign(col_set.begin(), col_set.end());
    std::sort(live_cols.begin(), live_cols.end());
  }
  RankFactors R;
  R.rank = pivots;
  if (live_rows.empty()) return R;
  if (live_rows.size() > dense_cap || live_cols.size() > dense_cap)
    throw GuardError("snf residual", dense_cap);

  std::unordered_map<std::uint32_t, std::size_t> col_pos;
  for (std::size_t j = 0; j < live_cols.size(); ++j)
    col_pos[live_cols[j]] = j;
  IntMatrix M(live_rows.size(), live_cols.size());
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (auto& [c, v] : rows[live_rows[i]]) M.at(i, col_pos[c]) = BigInt(v);

  RankFactors resid = dense_invariant_factors(M);
  R.rank += resid.rank;
  R.nontrivial = std::move(resid.nontrivial);
  return R;
}

}  // namespace detail

/// Rank and invariant factors of a sparse integer matrix given by columns.
/// Fast path uses checked 64-bit arithmetic and falls back to arbitrary
/// precision when an intermediate value overflows.
inline RankFactors sparse_invariant_factors(
    std::size_t nrows, const std::vector<detail::SparseCol>& cols,
    std::size_t dense_cap = 2000) {
  try {
    return detail::sparse_invariant_factors_impl<long long>(nrows, cols,
                                                            dense_cap);
  } catch (const detail::Int64Overflow&) {
    return detail::sparse_invariant_factors_impl<BigInt>(nrows, cols,
                                                         dense_cap);
  }
}

// ---------------------------------------------------------------------------
// Chain complexes

/// Integer chain complex: per-degree ranks and sparse boundary matrices,
/// boundaries[n] : C_n -> C_{n-1} stored by columns. boundaries[0] is empty.
struct ChainComplex {
  std::vector<std::size_t> ranks;
  std::vector<std::vector<detail::SparseCol>> boundaries;
  /// Highest degree whose homology the producer vouches for (degree-N cycles
  /// of an N-truncated simplicial set cannot be tested against boundaries).
  int valid_up_to = std::numeric_limits<int>::max();

  int top() const { return static_cast<int>(ranks.size()) - 1; }

  std::size_t total_cells() const {
    std::size_t c = 0;
    for (auto r : ranks) c += r;
    return c;
  }
};

/// Exact check that consecutive boundaries compose to zero.
inline bool boundaries_compose_to_zero(const ChainComplex& C) {
  for (int n = 2; n <= C.top(); ++n) {
    const auto& dn = C.boundaries[n];
    const auto& dn1 = C.boundaries[n - 1];
    for (const auto& col : dn) {
      std::unordered_map<std::uint32_t, long long> acc;
      for (auto [mid, v] : col)
        for (auto [row, w] : dn1[mid]) acc[row] += v * w;
      for (auto& [row, v] : acc)
        if (v != 0) return false;
    }
  }
  return true;
}

namespace detail {

inline void check_cells(std::size_t cells, const Limits& lim) {
  if (cells > lim.max_chain_cells)
    throw GuardError("chain cells", lim.max_chain_cells);
}

}  // namespace detail

/// Normalized chains of a truncated simplicial set: basis = nondegenerate
/// simplices, boundary = alternating face sum with degenerate faces dropped.
inline ChainComplex normalized_chains(const TruncatedSimplicialSet& S,
                                      const Limits& lim = Limits{}) {
  ChainComplex C;
  const int N = S.dim_bound;
  std::vector<std::vector<std::uint32_t>> nd_index(N + 1);
  std::size_t cells = 0;
  for (int n = 0; n <= N; ++n) {
    nd_index[n].assign(S.count(n), UINT32_MAX);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < S.count(n); ++i) {
      if (!is_degenerate(S.simplices[n][i])) nd_index[n][i] = next++;
    }
    cells += next;
    detail::check_cells(cells, lim);
    C.ranks.push_back(next);
  }
  C.boundaries.assign(N + 1, {});
  for (int n = 1; n <= N; ++n) {
    C.boundaries[n].assign(C.ranks[n], {});
    std::size_t col = 0;
    for (std::size_t i = 0; i < S.count(n); ++i) {
      if (nd_index[n][i] == UINT32_MAX) continue;
      const Tuple& s = S.simplices[n][i];
      std::unordered_map<std::uint32_t, long long> acc;
      for (int k = 0; k <= n; ++k) {
        Tuple f = face(s, k);
        if (is_degenerate(f)) continue;
        std::uint32_t row = nd_index[n - 1][S.index_of(f)];
        acc[row] += (k % 2 == 0) ? 1 : -1;
      }
      auto& out = C.boundaries[n][col++];
      for (auto& [row, v] : acc)
        if (v != 0) out.emplace_back(row, v);
      std::sort(out.begin(), out.end());
    }
  }
  // trustworthy through N-1 unless the set is empty (then nothing is missing)
  C.valid_up_to = (C.total_cells() == 0) ? N : N - 1;
  return C;
}

/// Simplicial chains of a complex, vertices in declared order.
inline ChainComplex complex_chains(const AbstractSimplicialComplex& K,
                                   const Limits& lim = Limits{}) {
  ChainComplex C;
  detail::check_cells(K.simplex_count(), lim);
  const int top = K.dim();
  for (int d = 0; d <= top; ++d) C.ranks.push_back(K.count(d));
  C.boundaries.assign(std::max(top + 1, 1), {});
  for (int d = 1; d <= top; ++d) {
    C.boundaries[d].assign(K.count(d), {});
    for (std::size_t i = 0; i < K.count(d); ++i) {
      const Tuple& s = K.by_dim[d][i];
      auto& out = C.boundaries[d][i];
      for (int k = 0; k <= d; ++k) {
        Tuple f;
        f.reserve(s.size() - 1);
        for (std::size_t q = 0; q < s.size(); ++q)
          if (static_cast<int>(q) != k) f.push_back(s[q]);
        const auto& level = K.by_dim[d - 1];
        auto it = std::lower_bound(level.begin(), level.end(), f);
        out.emplace_back(static_cast<std::uint32_t>(it - level.begin()),
                         (k % 2 == 0) ? 1 : -1);
      }
      std::sort(out.begin(), out.end());
    }
  }
  return C;
}

// ---------------------------------------------------------------------------
// Order complex and components

/// Order complex: simplices are the nonempty chains of the poset.
template <class T>
AbstractSimplicialComplex order_complex(const FinitePoset<T>& P,
                                        const Limits& lim = Limits{}) {
  VisitCounter visits("enumeration visits", lim.max_enumeration_visits);
  auto comparable = [&](const Tuple& t) {
    return P.leq(t[0], t[1]) || P.leq(t[1], t[0]);
  };
  auto chains =
      detail::enumerate_r_cliques(P.size(), 2, comparable, P.size(), visits);
  detail::check_cells(chains.size(), lim);
  AbstractSimplicialComplex K{numeric_names(P.size()), {}};
  detail::finalize_complex(K, std::move(chains));
  return K;
}

struct Components {
  std::vector<int> labels;  // -1 marks vertices absent from the structure
  int count = 0;
};

inline Components components(const AbstractSimplicialComplex& K) {
  const std::size_t n = K.vertex_names.size();
  UnionFind uf(n);
  if (K.dim() >= 1)
    for (const Tuple& e : K.by_dim[1]) uf.unite(e[0], e[1]);
  Components R;
  R.labels.assign(n, -1);
  // label only vertices that occur as 0-simplices
  std::vector<char> present(n, 0);
  if (K.dim() >= 0)
    for (const Tuple& v : K.by_dim[0]) present[v[0]] = 1;
  auto raw = uf.labels();
  std::unordered_map<int, int> relabel;
  for (std::size_t v = 0; v < n; ++v) {
    if (!present[v]) continue;
    auto [it, fresh] = relabel.emplace(raw[v], R.count);
    if (fresh) ++R.count;
    R.labels[v] = it->second;
  }
  return R;
}

inline Components components(const TruncatedSimplicialSet& S) {
  const std::size_t n = S.count(0);
  UnionFind uf(n);
  if (S.dim_bound >= 1)
    for (const Tuple& e : S.simplices[1]) uf.unite(e[0], e[1]);
  Components R;
  R.labels = uf.labels();
  R.count = component_count(R.labels);
  if (n == 0) R.count = 0;
  return R;
}

template <class T>
Components components(const FinitePoset<T>& P) {
  Components R;
  R.labels = poset_components(P);
  R.count = component_count(R.labels);
  return R;
}

// ---------------------------------------------------------------------------
// Homology

struct HomologyDegree {
  std::size_t betti = 0;
  std::vector<BigInt> torsion;  // coefficients > 1, divisibility order
};

struct HomologyResult {
  std::vector<HomologyDegree> degrees;  // 0..max requested
  int valid_up_to = 0;
};

/// Integer homology in degrees 0..max_degree: Betti numbers from boundary
/// ranks, torsion from the invariant factors of the incoming boundary.
inline HomologyResult homology(const ChainComplex& C, int max_degree,
                               const Limits& lim = Limits{}) {
  if (max_degree < 0) throw ValidationError("homology: negative degree");
  if (max_degree > C.valid_up_to)
    throw ValidationError(
        "homology: requested degree exceeds the validity bound of this "
        "complex");
  detail::check_cells(C.total_cells(), lim);

  auto rank_at = [&](int n) -> std::size_t {
    return (n >= 0 && n <= C.top()) ? C.ranks[n] : 0;
  };
  std::vector<RankFactors> rf(std::max(max_degree + 2, 1));
  for (int n = 1; n <= max_degree + 1; ++n) {
    if (n <= C.top())
      rf[n] = sparse_invariant_factors(rank_at(n - 1), C.boundaries[n]);
  }
  HomologyResult R;
  R.valid_up_to = std::min(max_degree, C.valid_up_to);
  for (int n = 0; n <= max_degree; ++n) {
    HomologyDegree deg;
    std::size_t rank_in = (n >= 1 && n <= C.top()) ? rf[n].rank : 0;
    std::size_t rank_out = (n + 1 <= C.top()) ? rf[n + 1].rank : 0;
    deg.betti = rank_at(n) - rank_in - rank_out;
    if (n + 1 <= C.top()) deg.torsion = rf[n + 1].nontrivial;
    R.degrees.push_back(std::move(deg));
  }
  return R;
}

inline bool operator==(const HomologyDegree& a, const HomologyDegree& b) {
  return a.betti == b.betti && a.torsion == b.torsion;
}
inline bool operator!=(const HomologyDegree& a, const HomologyDegree& b) {
  return !(a == b);
}

}  // namespace rtop
