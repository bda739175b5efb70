#pragma once

// Empirical checks of the two L-reduction inequalities
//   opt(f(x)) <= alpha * opt(x)
//   |opt(x) - val(g(y))| <= beta * |opt(f(x)) - val(y)|
// for both reductions, plus the source-side bounds behind the alphas.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "poa/errors.hpp"
#include "poa/extensions.hpp"
#include "poa/graph.hpp"
#include "poa/metrics.hpp"
#include "poa/mis3.hpp"
#include "poa/sat32.hpp"
#include "poa/solvers.hpp"

namespace poa {

// Removes the smallest remaining vertex together with its neighbours until
// the graph is empty.
inline IndependentSet greedy_mis(const Graph& g) {
  if (g.max_degree() > 3) throw InvalidArgument("greedy bound needs maximum degree <= 3");
  std::vector<char> gone(g.vertex_count() + 1, 0);
  IndependentSet out;
  for (std::size_t v = 1; v <= g.vertex_count(); ++v) {
    if (gone[v]) continue;
    out.vertices.push_back(v);
    gone[v] = 1;
    for (auto w : g.neighbors(v)) gone[w] = 1;
  }
  return out;
}

inline constexpr std::size_t kBruteMisLimit = 25;
inline constexpr std::size_t kBruteMaxsatLimit = 20;

namespace detail {

inline std::size_t mis_branch(std::uint32_t alive, const std::vector<std::uint32_t>& nbr, std::size_t taken,
                              std::size_t best) {
  if (alive == 0) return std::max(best, taken);
  if (taken + static_cast<std::size_t>(std::popcount(alive)) <= best) return best;
  const int v = std::countr_zero(alive);
  const std::uint32_t bit = std::uint32_t{1} << v;
  // A vertex with no live neighbour is always worth taking.
  if ((nbr[v] & alive) == 0) return mis_branch(alive & ~bit, nbr, taken + 1, best);
  best = mis_branch(alive & ~bit & ~nbr[v], nbr, taken + 1, best);
  return mis_branch(alive & ~bit, nbr, taken, best);
}

}  // namespace detail

inline std::size_t brute_mis(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kBruteMisLimit)
    throw InvalidArgument("brute-force independent set is limited to " + std::to_string(kBruteMisLimit) +
                          " vertices");
  std::vector<std::uint32_t> nbr(n, 0);
  for (const auto& e : g.edges()) {
    nbr[e.left - 1] |= std::uint32_t{1} << (e.right - 1);
    nbr[e.right - 1] |= std::uint32_t{1} << (e.left - 1);
  }
  const std::uint32_t all = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  return detail::mis_branch(all, nbr, 0, 0);
}

inline Assignment naive_assignment(const Sat32Instance& sat) {
  return Assignment{std::vector<bool>(sat.variable_count(), true)};
}

inline std::size_t brute_maxsat(const Sat32Instance& sat) {
  const std::size_t n = sat.variable_count();
  if (n > kBruteMaxsatLimit)
    throw InvalidArgument("brute-force MAX-SAT is limited to " + std::to_string(kBruteMaxsatLimit) + " variables");
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    std::size_t k = 0;
    for (const auto& c : sat.clauses()) {
      auto sat_lit = [&](const Literal& l) { return (((mask >> (l.variable - 1)) & 1u) != 0) == l.positive; };
      if (sat_lit(c[0]) || sat_lit(c[1])) ++k;
    }
    best = std::max(best, k);
  }
  return best;
}

enum class LRedKind { mis3_maxadj, mis3_minbrk, sat32_maxadj, sat32_minbrk };

inline const char* to_string(LRedKind k) noexcept {
  switch (k) {
    case LRedKind::mis3_maxadj: return "mis3-maxadj";
    case LRedKind::mis3_minbrk: return "mis3-minbrk";
    case LRedKind::sat32_maxadj: return "sat32-maxadj";
    case LRedKind::sat32_minbrk: return "sat32-minbrk";
  }
  return "?";
}

inline std::optional<LRedKind> parse_lred_kind(std::string_view s) {
  for (auto k : {LRedKind::mis3_maxadj, LRedKind::mis3_minbrk, LRedKind::sat32_maxadj, LRedKind::sat32_minbrk})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

inline bool is_mis3(LRedKind k) noexcept { return k == LRedKind::mis3_maxadj || k == LRedKind::mis3_minbrk; }
inline bool is_minbrk(LRedKind k) noexcept { return k == LRedKind::mis3_minbrk || k == LRedKind::sat32_minbrk; }

inline std::int64_t lred_alpha(LRedKind k) noexcept {
  switch (k) {
    case LRedKind::mis3_maxadj: return 7;
    case LRedKind::mis3_minbrk: return 29;
    case LRedKind::sat32_maxadj: return 9;
    case LRedKind::sat32_minbrk: return 30;
  }
  return 0;
}

inline constexpr std::int64_t kLRedBeta = 1;

// FNV-1a over both extensions.
inline std::uint64_t solution_digest(const AlignmentSolution& s) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::string_view text) {
    for (unsigned char ch : text) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  for (const auto& m : s.gamma_ext.perm()) mix(m), mix(" ");
  mix("|");
  for (const auto& m : s.pi_ext.perm()) mix(m), mix(" ");
  return h;
}

struct LRedSample {
  std::uint64_t digest = 0;
  std::string origin;         // random, source, perturbed, optimum
  std::int64_t val_y = 0;     // adjacencies or breakpoints of y
  std::int64_t val_gy = 0;    // size of g(y) in the source problem
  std::int64_t lhs = 0, rhs = 0;
  std::int64_t floor = 0;     // lower bound on val_gy implied by the adjacency count of y
  bool pass = true;
};

struct LRedViolation {
  std::uint64_t digest = 0;
  std::string check;
  std::int64_t lhs = 0, rhs = 0;
};

struct LRedReport {
  LRedKind kind = LRedKind::mis3_maxadj;
  std::int64_t alpha = 0;
  std::int64_t beta = kLRedBeta;
  std::int64_t opt_source = 0;
  std::int64_t opt_target = 0;
  std::int64_t eq1_lhs = 0, eq1_rhs = 0;
  std::size_t checked_solutions = 0;
  std::vector<LRedSample> samples;
  std::vector<LRedViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

namespace detail {

// Random swaps of neighbouring entries that the order leaves incomparable.
inline LinearOrder perturb(const LinearOrder& ext, const Order& order, std::mt19937_64& rng, std::size_t swaps) {
  std::vector<Marker> perm = ext.perm();
  if (perm.size() < 2) return ext;
  for (std::size_t s = 0; s < swaps; ++s) {
    const std::size_t k = uniform_index(rng, perm.size() - 1);
    if (!precedes(order, perm[k], perm[k + 1])) std::swap(perm[k], perm[k + 1]);
  }
  return LinearOrder(std::move(perm));
}

struct SampleContext {
  LRedReport& report;
  std::int64_t total_pairs;  // |markers| - 1
  std::int64_t opt_adj;
};

inline void record(SampleContext& ctx, const AlignmentSolution& y, std::string origin, std::int64_t val_gy,
                   std::int64_t floor, bool extracted) {
  LRedReport& r = ctx.report;
  LRedSample s;
  s.digest = solution_digest(y);
  s.origin = std::move(origin);
  const auto adj = static_cast<std::int64_t>(y.n_adj);
  s.val_y = is_minbrk(r.kind) ? static_cast<std::int64_t>(y.n_brk) : adj;
  s.val_gy = val_gy;
  s.floor = floor;
  s.lhs = r.opt_source > val_gy ? r.opt_source - val_gy : val_gy - r.opt_source;
  s.rhs = r.beta * (r.opt_target > s.val_y ? r.opt_target - s.val_y : s.val_y - r.opt_target);
  const bool eq2 = s.lhs <= s.rhs;
  const bool bound = extracted && val_gy >= floor;
  s.pass = eq2 && bound;
  if (!eq2) r.violations.push_back({s.digest, "eq2", s.lhs, s.rhs});
  if (!bound) r.violations.push_back({s.digest, "extract", val_gy, floor});
  r.samples.push_back(std::move(s));
  ++r.checked_solutions;
}

inline void finish(LRedReport& r) {
  r.eq1_lhs = r.opt_target;
  r.eq1_rhs = r.alpha * r.opt_source;
  if (r.eq1_lhs > r.eq1_rhs) r.violations.push_back({0, "eq1", r.eq1_lhs, r.eq1_rhs});
  std::stable_sort(r.violations.begin(), r.violations.end(),
                   [](const LRedViolation& a, const LRedViolation& b) { return a.digest < b.digest; });
}

inline LRedReport start_report(LRedKind kind, std::int64_t opt_source, std::int64_t total_pairs,
                               std::int64_t opt_adj) {
  LRedReport r;
  r.kind = kind;
  r.alpha = lred_alpha(kind);
  r.opt_source = opt_source;
  r.opt_target = is_minbrk(kind) ? total_pairs - opt_adj : opt_adj;
  return r;
}

}  // namespace detail

// Samples cycle through three sources: uniformly random extensions, solutions
// built from random source solutions and lightly perturbed, and perturbations
// of the optimum. The optimum itself is checked as well.
inline LRedReport verify_lreduction(LRedKind kind, const Graph& g, std::size_t samples, std::uint64_t seed,
                                    std::size_t cap = kDefaultOracleCap) {
  if (!is_mis3(kind)) throw InvalidArgument(std::string(to_string(kind)) + " needs a 2SAT source, not a graph");
  const auto [inst, cert] = reduce_mis3(g);
  const AlignmentSolution opt = oracle_align(inst, cap);
  const auto m = static_cast<std::int64_t>(g.edge_count());
  const auto total = static_cast<std::int64_t>(inst.markers().size()) - 1;
  LRedReport report =
      detail::start_report(kind, static_cast<std::int64_t>(brute_mis(g)), total, static_cast<std::int64_t>(opt.n_adj));
  detail::SampleContext ctx{report, total, static_cast<std::int64_t>(opt.n_adj)};
  std::mt19937_64 rng(seed);

  auto check = [&](const AlignmentSolution& y, const char* origin) {
    std::int64_t val_gy = 0;
    bool ok = true;
    try {
      val_gy = static_cast<std::int64_t>(extract_independent_set(cert, y).size());
    } catch (const std::logic_error&) {
      ok = false;
    }
    detail::record(ctx, y, origin, val_gy, static_cast<std::int64_t>(y.n_adj) - m, ok);
  };

  const Order pi = inst.pi();
  for (std::size_t s = 0; s < samples; ++s) {
    switch (s % 3) {
      case 0:
        check(make_solution(cert.gamma, random_linear_extension(pi, rng)), "random");
        break;
      case 1: {
        std::vector<std::size_t> order(g.vertex_count());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i + 1;
        std::shuffle(order.begin(), order.end(), rng);
        IndependentSet vs;
        std::vector<char> blocked(g.vertex_count() + 1, 0);
        for (auto v : order) {
          if (blocked[v] || detail::uniform_index(rng, 2) == 0) continue;
          vs.vertices.push_back(v);
          blocked[v] = 1;
          for (auto w : g.neighbors(v)) blocked[w] = 1;
        }
        std::sort(vs.vertices.begin(), vs.vertices.end());
        const auto base = solution_from_independent_set(cert, vs);
        check(make_solution(cert.gamma, detail::perturb(base.pi_ext, pi, rng, detail::uniform_index(rng, 4))),
              "source");
        break;
      }
      default:
        check(make_solution(cert.gamma, detail::perturb(opt.pi_ext, pi, rng, 1 + detail::uniform_index(rng, 8))),
              "perturbed");
    }
  }
  check(opt, "optimum");
  detail::finish(report);
  return report;
}

inline LRedReport verify_lreduction(LRedKind kind, const Sat32Instance& sat, std::size_t samples,
                                    std::uint64_t seed, std::size_t cap = kDefaultOracleCap) {
  if (is_mis3(kind)) throw InvalidArgument(std::string(to_string(kind)) + " needs a graph source, not a 2SAT instance");
  const auto [inst, cert] = reduce_sat32(sat);
  const AlignmentSolution opt = oracle_align(inst, cap);
  const auto n = static_cast<std::int64_t>(sat.variable_count());
  const auto total = static_cast<std::int64_t>(inst.markers().size()) - 1;
  LRedReport report = detail::start_report(kind, static_cast<std::int64_t>(brute_maxsat(sat)), total,
                                           static_cast<std::int64_t>(opt.n_adj));
  detail::SampleContext ctx{report, total, static_cast<std::int64_t>(opt.n_adj)};
  std::mt19937_64 rng(seed);

  auto check = [&](const AlignmentSolution& y, const char* origin) {
    std::int64_t val_gy = 0;
    bool ok = true;
    try {
      val_gy = static_cast<std::int64_t>(count_satisfied(sat, extract_assignment(cert, y)));
    } catch (const std::logic_error&) {
      ok = false;
    }
    detail::record(ctx, y, origin, val_gy, static_cast<std::int64_t>(y.n_adj) - 4 * n, ok);
  };

  const Order gamma = inst.gamma(), pi = inst.pi();
  auto shake = [&](const AlignmentSolution& base, std::size_t swaps) {
    return make_solution(detail::perturb(base.gamma_ext, gamma, rng, swaps),
                         detail::perturb(base.pi_ext, pi, rng, swaps));
  };
  for (std::size_t s = 0; s < samples; ++s) {
    switch (s % 3) {
      case 0: {
        LinearOrder ge = random_linear_extension(gamma, rng);
        check(make_solution(std::move(ge), random_linear_extension(pi, rng)), "random");
        break;
      }
      case 1: {
        Assignment a;
        for (std::size_t i = 0; i < sat.variable_count(); ++i) a.values.push_back(detail::uniform_index(rng, 2) == 1);
        check(shake(solution_from_assignment(cert, a), detail::uniform_index(rng, 4)), "source");
        break;
      }
      default:
        check(shake(opt, 1 + detail::uniform_index(rng, 8)), "perturbed");
    }
  }
  check(opt, "optimum");
  detail::finish(report);
  return report;
}

inline std::string render_report(const LRedReport& r) {
  std::ostringstream os;
  os << "# kind=" << to_string(r.kind) << " alpha=" << r.alpha << " beta=" << r.beta << " opt_source=" << r.opt_source
     << " opt_target=" << r.opt_target << " checked=" << r.checked_solutions
     << " violations=" << r.violations.size() << '\n';
  os << "CHECK eq1 lhs=" << r.eq1_lhs << " rhs=" << r.eq1_rhs << (r.eq1_lhs <= r.eq1_rhs ? " PASS" : " FAIL") << '\n';
  char hex[17];
  for (const auto& s : r.samples) {
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(s.digest));
    os << "CHECK eq2 y=" << hex << " origin=" << s.origin << " val_y=" << s.val_y << " val_gy=" << s.val_gy
       << " lhs=" << s.lhs << " rhs=" << s.rhs << " floor=" << s.floor << (s.pass ? " PASS" : " FAIL") << '\n';
  }
  for (const auto& v : r.violations) {
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(v.digest));
    os << "VIOLATION " << v.check << " y=" << hex << " lhs=" << v.lhs << " rhs=" << v.rhs << '\n';
  }
  return os.str();
}

}  // namespace poa
