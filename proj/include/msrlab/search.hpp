#pragma once

// Feasibility searches: repair schemes for a fixed code, and the largest
// helper-independent system (S_i, Phi_i) at given (ell, r, q).

#include <msrlab/certificates.hpp>
#include <msrlab/reduction.hpp>
#include <msrlab/repair.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <random>
#include <thread>
#include <unordered_map>
#include <vector>

namespace msrlab {

/// Number of dim-dimensional subspaces of GF(q)^ell, saturated at UINT64_MAX.
inline std::uint64_t gaussian_binomial(std::size_t ell, std::size_t dim, std::uint64_t q) {
  if (dim > ell) return 0;
  using boost::multiprecision::cpp_int;
  cpp_int num = 1, den = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    num *= boost::multiprecision::pow(cpp_int(q), unsigned(ell - i)) - 1;
    den *= boost::multiprecision::pow(cpp_int(q), unsigned(i + 1)) - 1;
  }
  const cpp_int v = num / den;
  return v > cpp_int(UINT64_MAX) ? UINT64_MAX : static_cast<std::uint64_t>(v);
}

/// |GL(ell, q)|, saturated.
inline std::uint64_t general_linear_order(std::size_t ell, std::uint64_t q) {
  using boost::multiprecision::cpp_int;
  cpp_int v = 1;
  const cpp_int qe = boost::multiprecision::pow(cpp_int(q), unsigned(ell));
  cpp_int qi = 1;
  for (std::size_t i = 0; i < ell; ++i) {
    v *= qe - qi;
    qi *= q;
  }
  return v > cpp_int(UINT64_MAX) ? UINT64_MAX : static_cast<std::uint64_t>(v);
}

inline constexpr std::uint64_t kMaxEnumeratedSubspaces = 1'000'000;

/// All dim-dimensional subspaces of F^ell, sorted in canonical (RREF-lexicographic) order.
inline std::vector<Subspace> enumerate_subspaces(std::size_t ell, std::size_t dim, const Field& f) {
  if (dim > ell) return {};
  if (gaussian_binomial(ell, dim, f.order()) > kMaxEnumeratedSubspaces)
    throw Error(ErrorKind::TooLarge, "too many subspaces to enumerate");
  const auto q = f.order();
  std::vector<Subspace> out;
  std::vector<std::size_t> piv(dim);
  for (std::size_t i = 0; i < dim; ++i) piv[i] = i;
  while (true) {
    // free positions: (row, col) with col > piv[row] and col not a pivot
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = piv[r] + 1; c < ell; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
    std::vector<FieldElem> digits(free.size(), 0);
    while (true) {
      Matrix m(f, dim, ell);
      for (std::size_t r = 0; r < dim; ++r) m(r, piv[r]) = 1;
      for (std::size_t x = 0; x < free.size(); ++x) m(free[x].first, free[x].second) = digits[x];
      out.push_back(Subspace::span(m));
      std::size_t x = free.size();
      while (x > 0 && ++digits[x - 1] == q) digits[--x] = 0;
      if (x == 0) break;
    }
    if (dim == 0) break;
    std::size_t i = dim;
    while (i > 0 && piv[i - 1] == ell - dim + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < dim; ++j) piv[j] = piv[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All invertible ell x ell matrices in row-major lexicographic order.
inline std::vector<Matrix> enumerate_invertible(std::size_t ell, const Field& f, std::uint64_t limit) {
  if (general_linear_order(ell, f.order()) > limit) throw Error(ErrorKind::TooLarge, "too many invertible matrices to enumerate");
  const auto q = f.order();
  // all vectors in lexicographic order
  std::vector<std::vector<FieldElem>> vecs;
  std::vector<FieldElem> v(ell, 0);
  while (true) {
    vecs.push_back(v);
    std::size_t x = ell;
    while (x > 0 && ++v[x - 1] == q) v[--x] = 0;
    if (x == 0) break;
  }
  std::vector<Matrix> out;
  std::vector<std::size_t> choice;
  auto rec = [&](auto&& self, std::vector<FieldElem>& rows) -> void {
    const auto depth = rows.size() / ell;
    if (depth == ell) {
      out.emplace_back(f, ell, ell, rows);
      return;
    }
    for (const auto& cand : vecs) {
      std::vector<FieldElem> next = rows;
      next.insert(next.end(), cand.begin(), cand.end());
      if (rank(Matrix(f, depth + 1, ell, next)) != depth + 1) continue;
      self(self, next);
    }
  };
  std::vector<FieldElem> rows;
  rec(rec, rows);
  return out;
}

inline Matrix random_full_rank(std::size_t rows, std::size_t cols, const Field& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<FieldElem> dist(0, f.order() - 1);
  while (true) {
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
    if (rank(m) == std::min(rows, cols)) return m;
  }
}

/// rowspan [I_d | 0].
inline Subspace coordinate_subspace(std::size_t ell, std::size_t dim, const Field& f) {
  Matrix m(f, dim, ell);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return Subspace::span(m);
}

enum class SearchMode { SchemeForCode, MaxKPairs };
enum class SearchStrategy { Auto, Exhaustive, Randomized };

struct SearchConfig {
  std::size_t ell = 2;
  std::size_t r = 2;
  Field field;
  SearchMode mode = SearchMode::MaxKPairs;
  std::uint64_t seed = 0;
  std::uint64_t budget = 10'000'000;  // node expansions
  bool symmetry_fix = true;
  SearchStrategy strategy = SearchStrategy::Auto;
  std::size_t threads = 0;  // 0: MSRLAB_THREADS or hardware concurrency

  void validate() const {
    if (budget == 0) throw Error(ErrorKind::InvalidParams, "budget must be positive");
    if (r == 0 || ell == 0 || ell % r != 0) throw Error(ErrorKind::InvalidParams, "r must divide ell");
  }
};

inline std::size_t worker_count(std::size_t requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("MSRLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------
// Repair schemes for a given code

struct NodeSchemeSearch {
  std::size_t failed = 0;
  std::vector<std::vector<Subspace>> solutions;  // per solution: S_{i,k+t}, t = 0..r-1
  bool exhaustive = false;
  std::uint64_t expansions = 0;
};

struct SchemeSearchResult {
  RepairScheme scheme;  // first solution of every node, re-verified
  std::vector<NodeSchemeSearch> nodes;
  bool exhaustive = false;
  std::uint64_t expansions = 0;
};

struct SchemeSearchOptions {
  std::optional<std::size_t> failed;  // only this node
  std::uint64_t seed = 0;
  std::uint64_t budget = 10'000'000;
  SearchStrategy strategy = SearchStrategy::Auto;
};

inline constexpr std::uint64_t kMaxSchemeCandidates = 100'000;

namespace detail {

/// Checks a tuple of parity subspaces for node i; systematic subspaces are
/// forced to span(S_{i,k+1} A_{1,j}).
inline bool parity_tuple_valid(const ArrayCode& code, std::size_t i, const std::vector<Subspace>& par) {
  const auto& p = code.params();
  for (std::size_t j = 0; j < p.k; ++j) {
    if (j == i) continue;
    const auto target = par[0].apply(code.a(0, j));
    for (std::size_t t = 1; t < p.r; ++t)
      if (!(par[t].apply(code.a(t, j)) == target)) return false;
  }
  std::vector<Subspace> imgs;
  for (std::size_t t = 0; t < p.r; ++t) imgs.push_back(par[t].apply(code.a(t, i)));
  return sum_all(imgs, code.field(), p.ell).is_full();
}

inline NodeRepair node_repair_from(const ArrayCode& code, std::size_t i, const std::vector<Subspace>& par) {
  const auto& p = code.params();
  NodeRepair nr;
  nr.failed = i;
  nr.helpers.resize(p.n());
  for (std::size_t j = 0; j < p.k; ++j)
    if (j != i) nr.helpers[j] = par[0].apply(code.a(0, j)).basis();
  for (std::size_t t = 0; t < p.r; ++t) nr.helpers[p.k + t] = par[t].basis();
  return nr;
}

}  // namespace detail

/// Finds repair subspaces satisfying the alignment and full-sum properties
/// for each failed systematic node independently. Exhaustive runs list every
/// solution; the scheme holds the first one per node.
inline SchemeSearchResult search_scheme(const ArrayCode& code, const SchemeSearchOptions& opt = {}) {
  const auto& p = code.params();
  const auto d = p.repair_dim();
  const Field& f = code.field();
  for (const auto& row : code.encoding())
    for (const auto& a : row)
      if (!is_invertible(a)) throw Error(ErrorKind::SingularEncodingMatrix, "scheme search needs invertible encoding matrices");

  const auto count = gaussian_binomial(p.ell, d, f.order());
  bool exhaustive = opt.strategy == SearchStrategy::Exhaustive ||
                    (opt.strategy == SearchStrategy::Auto && count <= kMaxSchemeCandidates);
  if (opt.strategy == SearchStrategy::Exhaustive && count > kMaxSchemeCandidates)
    throw Error(ErrorKind::TooLarge, "too many candidate subspaces for an exhaustive scheme search");
  std::vector<Subspace> cands;
  if (exhaustive) cands = enumerate_subspaces(p.ell, d, f);

  SchemeSearchResult res;
  res.exhaustive = true;
  std::mt19937_64 rng(opt.seed);
  std::uint64_t remaining = opt.budget;

  for (std::size_t i = 0; i < p.k; ++i) {
    if (opt.failed && *opt.failed != i) continue;
    NodeSchemeSearch ns;
    ns.failed = i;
    bool out_of_budget = false;
    auto spend = [&]() {
      if (remaining == 0) {
        out_of_budget = true;
        return false;
      }
      --remaining;
      ++ns.expansions;
      return true;
    };
    if (p.k >= 2) {
      // S_{i,k+t} = S_{i,k+1} A_{1,j0} A_{t,j0}^{-1} for the first helper j0
      const std::size_t j0 = i == 0 ? 1 : 0;
      std::vector<Matrix> derive(p.r);
      for (std::size_t t = 0; t < p.r; ++t) derive[t] = code.a(0, j0) * invert(code.a(t, j0));
      auto try_one = [&](const Subspace& u) {
        std::vector<Subspace> par;
        for (std::size_t t = 0; t < p.r; ++t) par.push_back(t == 0 ? u : u.apply(derive[t]));
        if (detail::parity_tuple_valid(code, i, par)) ns.solutions.push_back(std::move(par));
      };
      if (exhaustive) {
        for (const auto& u : cands) {
          if (!spend()) break;
          try_one(u);
        }
      } else {
        while (ns.solutions.empty() && spend()) try_one(Subspace::span(random_full_rank(d, p.ell, f, rng)));
      }
    } else {
      // single systematic node: parity subspaces are unconstrained apart from the sum
      std::vector<Subspace> par;
      auto rec = [&](auto&& self, std::size_t t, const Subspace& acc) -> void {
        if (out_of_budget) return;
        if (t == p.r) {
          if (acc.is_full()) ns.solutions.push_back(par);
          return;
        }
        auto step = [&](const Subspace& u) {
          if (!spend()) return;
          const auto next = sum(acc, u.apply(code.a(t, i)));
          if (next.dim() != (t + 1) * d) return;
          par.push_back(u);
          self(self, t + 1, next);
          par.pop_back();
        };
        if (exhaustive) {
          for (const auto& u : cands) {
            step(u);
            if (out_of_budget) return;
          }
        } else {
          while (ns.solutions.empty() && !out_of_budget) step(Subspace::span(random_full_rank(d, p.ell, f, rng)));
        }
      };
      rec(rec, 0, Subspace::zero(f, p.ell));
    }
    ns.exhaustive = exhaustive && !out_of_budget;
    res.expansions += ns.expansions;
    if (!ns.exhaustive) res.exhaustive = false;
    if (ns.solutions.empty()) {
      if (ns.exhaustive) throw Error(ErrorKind::NoSchemeExists, "no repair scheme for node " + std::to_string(i + 1));
      throw Error(ErrorKind::BudgetExhausted, "budget exhausted before a scheme for node " + std::to_string(i + 1) + " was found");
    }
    res.scheme.set(detail::node_repair_from(code, i, ns.solutions.front()));
    if (!verify_scheme(code, res.scheme, i).ok) throw Error(ErrorKind::SchemeInvalid, "internal: emitted scheme fails verification");
    res.nodes.push_back(std::move(ns));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Maximum helper-independent systems

struct SearchResult {
  std::size_t kmax = 0;
  PhiSystem witness;
  bool exhaustive = false;
  std::uint64_t expansions = 0;
};

inline constexpr std::uint64_t kMaxPairCandidates = 1'000'000;

namespace detail {

struct PairTables {
  std::vector<Subspace> subs;
  std::vector<Matrix> mats;
  std::vector<std::uint32_t> image;  // image[m * nsub + s] = index of subs[s] * mats[m]
  std::size_t nsub() const { return subs.size(); }
  bool fixes(std::size_t m, std::size_t s) const { return image[m * nsub() + s] == s; }
};

struct Candidate {
  std::uint32_t s;
  std::uint32_t m;
};

struct BranchResult {
  std::vector<std::uint32_t> best;  // candidate indices
  std::uint64_t expansions = 0;
  bool capped = false;
};

class CliqueSearch {
 public:
  CliqueSearch(const PairTables& tab, const std::vector<Candidate>& cands, std::uint64_t cap)
      : tab_(tab), cands_(cands), cap_(cap) {}

  bool compatible(std::uint32_t a, std::uint32_t b) const {
    const auto& ca = cands_[a];
    const auto& cb = cands_[b];
    return ca.s != cb.s && tab_.fixes(cb.m, ca.s) && tab_.fixes(ca.m, cb.s);
  }

  BranchResult run(std::uint32_t top, const std::vector<std::uint32_t>& pool) {
    res_ = {};
    clique_ = {top};
    res_.best = clique_;
    res_.expansions = 1;
    extend(pool);
    return res_;
  }

 private:
  void extend(const std::vector<std::uint32_t>& pool) {
    for (std::size_t x = 0; x < pool.size(); ++x) {
      if (clique_.size() + (pool.size() - x) <= res_.best.size()) return;
      if (res_.expansions >= cap_) {
        res_.capped = true;
        return;
      }
      ++res_.expansions;
      const auto v = pool[x];
      std::vector<std::uint32_t> next;
      for (std::size_t y = x + 1; y < pool.size(); ++y)
        if (compatible(v, pool[y])) next.push_back(pool[y]);
      clique_.push_back(v);
      if (clique_.size() > res_.best.size()) res_.best = clique_;
      extend(next);
      clique_.pop_back();
      if (res_.capped) return;
    }
  }

  const PairTables& tab_;
  const std::vector<Candidate>& cands_;
  std::uint64_t cap_;
  std::vector<std::uint32_t> clique_;
  BranchResult res_;
};

inline PhiSystem system_from(const SearchConfig& cfg, std::vector<PhiPair> pairs) {
  PhiSystem sys;
  sys.field = cfg.field;
  sys.ell = cfg.ell;
  sys.r = cfg.r;
  sys.pairs = std::move(pairs);
  return sys;
}

inline void reverify(const PhiSystem& sys) {
  if (!check_sc(sys).ok) throw Error(ErrorKind::ConditionsViolated, "internal: search witness fails verification");
  if (sys.r == 2 && !check_constant_conditions(sys).ok)
    throw Error(ErrorKind::ConditionsViolated, "internal: search witness fails the two-parity conditions");
}

inline SearchResult max_k_exhaustive(const SearchConfig& cfg) {
  const Field& f = cfg.field;
  const auto d = cfg.ell / cfg.r;
  PairTables tab;
  tab.subs = enumerate_subspaces(cfg.ell, d, f);
  tab.mats = enumerate_invertible(cfg.ell, f, kMaxPairCandidates);
  std::unordered_map<Subspace, std::uint32_t> index;
  for (std::uint32_t s = 0; s < tab.nsub(); ++s) index.emplace(tab.subs[s], s);
  tab.image.resize(tab.mats.size() * tab.nsub());
  for (std::size_t m = 0; m < tab.mats.size(); ++m)
    for (std::size_t s = 0; s < tab.nsub(); ++s) tab.image[m * tab.nsub() + s] = index.at(tab.subs[s].apply(tab.mats[m]));

  std::vector<Candidate> cands;
  std::vector<std::vector<std::uint32_t>> bucket(tab.nsub());
  for (std::uint32_t s = 0; s < tab.nsub(); ++s) {
    for (std::uint32_t m = 0; m < tab.mats.size(); ++m) {
      if (!intersect(tab.subs[tab.image[m * tab.nsub() + s]], tab.subs[s]).is_zero()) continue;
      bucket[s].push_back(static_cast<std::uint32_t>(cands.size()));
      cands.push_back({s, m});
    }
  }

  SearchResult out;
  out.exhaustive = true;
  out.witness = system_from(cfg, {});
  if (cands.empty()) return out;

  std::vector<std::uint32_t> tops;
  if (cfg.symmetry_fix) {
    tops = bucket[index.at(coordinate_subspace(cfg.ell, d, f))];
  } else {
    for (std::uint32_t c = 0; c < cands.size(); ++c) tops.push_back(c);
  }

  std::vector<BranchResult> results(tops.size());
  std::vector<bool> done(tops.size(), false);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> stop_at{tops.size()};
  std::atomic<std::uint64_t> total{0};

  auto worker = [&]() {
    CliqueSearch cs(tab, cands, cfg.budget);
    while (true) {
      const std::size_t b = next.fetch_add(1);
      if (b >= tops.size()) return;
      if (b >= stop_at.load()) return;
      if (total.load() > cfg.budget) {
        // every branch below b has been claimed and will finish
        std::size_t cur = stop_at.load();
        while (b < cur && !stop_at.compare_exchange_weak(cur, b)) {
        }
        return;
      }
      const auto v = tops[b];
      std::vector<std::uint32_t> pool;
      const auto& cv = cands[v];
      for (std::uint32_t s = 0; s < tab.nsub(); ++s) {
        if (s == cv.s || !tab.fixes(cv.m, s)) continue;
        for (auto c : bucket[s]) {
          if (!cfg.symmetry_fix && c <= v) continue;
          if (tab.fixes(cands[c].m, cv.s)) pool.push_back(c);
        }
      }
      std::sort(pool.begin(), pool.end());
      results[b] = cs.run(v, pool);
      done[b] = true;
      total.fetch_add(results[b].expansions);
      if (results[b].capped) {
        std::size_t cur = stop_at.load();
        while (b + 1 < cur && !stop_at.compare_exchange_weak(cur, b + 1)) {
        }
      }
    }
  };
  const auto nthreads = std::min(worker_count(cfg.threads), std::max<std::size_t>(tops.size(), 1));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // deterministic merge in branch order
  std::vector<std::uint32_t> best;
  std::uint64_t used = 0;
  for (std::size_t b = 0; b < tops.size(); ++b) {
    if (!done[b] || results[b].capped || used + results[b].expansions > cfg.budget) {
      out.exhaustive = false;
      break;
    }
    used += results[b].expansions;
    if (results[b].best.size() > best.size()) best = results[b].best;
  }
  out.expansions = used;
  out.kmax = best.size();
  std::vector<PhiPair> pairs;
  for (auto c : best) pairs.push_back({tab.mats[cands[c].m], tab.subs[cands[c].s]});
  out.witness = system_from(cfg, std::move(pairs));
  return out;
}

/// Basis (as ell x ell matrices) of {Phi : S Phi is inside S for every S given}.
inline std::vector<Matrix> stabilizer_algebra(const std::vector<Subspace>& subs, std::size_t ell, const Field& f) {
  std::vector<std::vector<FieldElem>> rows;
  for (const auto& s : subs) {
    const Matrix ker = kernel(s.basis());  // ell x (ell - dim)
    for (std::size_t b = 0; b < s.dim(); ++b) {
      for (std::size_t c = 0; c < ker.cols(); ++c) {
        std::vector<FieldElem> row(ell * ell, 0);
        for (std::size_t p = 0; p < ell; ++p)
          for (std::size_t q = 0; q < ell; ++q) row[p * ell + q] = f.mul(s.basis()(b, p), ker(q, c));
        rows.push_back(std::move(row));
      }
    }
  }
  Matrix cons(f, rows.size(), ell * ell);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < ell * ell; ++c) cons(r, c) = rows[r][c];
  const Matrix k = kernel(cons);
  std::vector<Matrix> basis;
  for (std::size_t c = 0; c < k.cols(); ++c) {
    Matrix m(f, ell, ell);
    for (std::size_t x = 0; x < ell * ell; ++x) m(x / ell, x % ell) = k(x, 0 + c);
    basis.push_back(std::move(m));
  }
  return basis;
}

inline SearchResult max_k_randomized(const SearchConfig& cfg) {
  const Field& f = cfg.field;
  const auto d = cfg.ell / cfg.r;
  const std::size_t kTriesPerSubspace = 16;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<FieldElem> coeff(0, f.order() - 1);
  const bool enumerable = gaussian_binomial(cfg.ell, d, f.order()) <= kMaxSchemeCandidates;
  std::vector<Subspace> all;
  if (enumerable) all = enumerate_subspaces(cfg.ell, d, f);

  SearchResult out;
  out.witness = system_from(cfg, {});
  std::uint64_t used = 0;
  while (used < cfg.budget) {
    std::vector<PhiPair> cur;
    while (used < cfg.budget) {
      // subspaces invariant under every operator so far
      std::vector<Subspace> options;
      if (cur.empty() && cfg.symmetry_fix) {
        options.push_back(coordinate_subspace(cfg.ell, d, f));
      } else if (enumerable) {
        for (const auto& s : all) {
          bool ok = std::none_of(cur.begin(), cur.end(), [&](const PhiPair& pp) { return pp.s == s; }) &&
                    std::all_of(cur.begin(), cur.end(), [&](const PhiPair& pp) { return s.apply(pp.phi) == s; });
          if (ok) options.push_back(s);
        }
        std::shuffle(options.begin(), options.end(), rng);
      } else {
        for (int x = 0; x < 64; ++x) {
          auto s = Subspace::span(random_full_rank(d, cfg.ell, f, rng));
          if (std::all_of(cur.begin(), cur.end(), [&](const PhiPair& pp) { return !(pp.s == s) && s.apply(pp.phi) == s; }))
            options.push_back(s);
        }
      }
      std::vector<Subspace> fixed;
      for (const auto& pp : cur) fixed.push_back(pp.s);
      const auto alg = stabilizer_algebra(fixed, cfg.ell, f);
      bool added = false;
      for (const auto& s : options) {
        for (std::size_t t = 0; t < kTriesPerSubspace && used < cfg.budget; ++t) {
          ++used;
          Matrix phi(f, cfg.ell, cfg.ell);
          for (const auto& b : alg) phi = phi + b.scaled(coeff(rng));
          if (!is_invertible(phi)) continue;
          if (!intersect(s.apply(phi), s).is_zero()) continue;
          cur.push_back({phi, s});
          added = true;
          break;
        }
        if (added || used >= cfg.budget) break;
      }
      if (!added) break;
    }
    if (cur.size() > out.kmax) {
      out.kmax = cur.size();
      out.witness = system_from(cfg, cur);
    }
  }
  out.expansions = used;
  out.exhaustive = false;
  return out;
}

}  // namespace detail

/// Largest k admitting k pairs (S_i, Phi_i) with S_i Phi_j = S_i (i != j) and
/// S_i Phi_i meeting S_i only in zero. Non-exhaustive results are lower bounds.
inline SearchResult search_max_k(const SearchConfig& cfg) {
  cfg.validate();
  if (cfg.mode != SearchMode::MaxKPairs) throw Error(ErrorKind::InvalidParams, "search_max_k needs MaxKPairs mode");
  const auto d = cfg.ell / cfg.r;
  const auto nsub = gaussian_binomial(cfg.ell, d, cfg.field.order());
  const auto ngl = general_linear_order(cfg.ell, cfg.field.order());
  const bool small = nsub <= kMaxPairCandidates && ngl <= kMaxPairCandidates &&
                     (static_cast<long double>(nsub) * ngl <= static_cast<long double>(kMaxPairCandidates));
  if (cfg.strategy == SearchStrategy::Exhaustive && !small)
    throw Error(ErrorKind::TooLarge, "candidate pairs exceed the exhaustive enumeration cap");
  const bool exhaustive = cfg.strategy == SearchStrategy::Exhaustive || (cfg.strategy == SearchStrategy::Auto && small);
  SearchResult res = exhaustive ? detail::max_k_exhaustive(cfg) : detail::max_k_randomized(cfg);
  detail::reverify(res.witness);
  return res;
}

}  // namespace msrlab
