#pragma once

// Reduction from MAX-2SAT with exactly three occurrences per variable (mixed
// polarity) to aligning two weak orders whose buckets hold at most two
// markers, with the maps between assignments and alignment solutions.

#include <algorithm>
#include <array>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "poa/errors.hpp"
#include "poa/metrics.hpp"
#include "poa/orders.hpp"
#include "poa/solvers.hpp"

namespace poa {

struct Literal {
  std::size_t variable = 0;  // 1-based
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 2>;

// Occurrence of a literal: clause j (1-based), slot h in {1, 2}.
struct LiteralRef {
  std::size_t clause = 0;
  std::size_t slot = 0;

  friend bool operator==(const LiteralRef&, const LiteralRef&) = default;
};

enum class Sat32ErrorKind { variable_out_of_range, duplicate_variable, occurrence_count, uniform_polarity };

class Sat32Error : public InvalidArgument {
 public:
  Sat32Error(Sat32ErrorKind kind, const std::string& what) : InvalidArgument(what), kind_(kind) {}
  Sat32ErrorKind kind() const noexcept { return kind_; }

 private:
  Sat32ErrorKind kind_;
};

class Sat32Instance {
 public:
  Sat32Instance() = default;

  std::size_t variable_count() const noexcept { return occurrences_.size(); }
  std::size_t clause_count() const noexcept { return clauses_.size(); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  const Literal& literal(LiteralRef r) const { return clauses_.at(r.clause - 1).at(r.slot - 1); }

  // occurrences(i)[g - 1] is the literal x_i^g; x_i^1 is positive and x_i^3
  // negative.
  const std::array<LiteralRef, 3>& occurrences(std::size_t i) const { return occurrences_.at(i - 1); }

  friend bool operator==(const Sat32Instance& a, const Sat32Instance& b) { return a.clauses_ == b.clauses_; }

 private:
  friend Sat32Instance normalize_sat32(std::size_t, std::vector<Clause>);
  std::vector<Clause> clauses_;
  std::vector<std::array<LiteralRef, 3>> occurrences_;
};

// Validates the occurrence structure and orders each variable's literals as
// positives then negatives, each by clause position, so the first is
// positive and the third negative.
inline Sat32Instance normalize_sat32(std::size_t n, std::vector<Clause> clauses) {
  Sat32Instance out;
  std::vector<std::vector<LiteralRef>> occ(n);
  for (std::size_t j = 1; j <= clauses.size(); ++j) {
    const auto& c = clauses[j - 1];
    for (std::size_t h = 1; h <= 2; ++h) {
      const auto v = c[h - 1].variable;
      if (v < 1 || v > n)
        throw Sat32Error(Sat32ErrorKind::variable_out_of_range,
                         "clause " + std::to_string(j) + " mentions variable " + std::to_string(v) + " outside 1.." +
                             std::to_string(n));
      occ[v - 1].push_back({j, h});
    }
    if (c[0].variable == c[1].variable)
      throw Sat32Error(Sat32ErrorKind::duplicate_variable,
                       "clause " + std::to_string(j) + " contains variable " + std::to_string(c[0].variable) + " twice");
  }
  out.clauses_ = std::move(clauses);
  for (std::size_t i = 1; i <= n; ++i) {
    auto& refs = occ[i - 1];
    if (refs.size() != 3)
      throw Sat32Error(Sat32ErrorKind::occurrence_count, "variable " + std::to_string(i) + " occurs " +
                                                             std::to_string(refs.size()) + " times, expected 3");
    std::stable_partition(refs.begin(), refs.end(), [&](LiteralRef r) { return out.literal(r).positive; });
    if (!out.literal(refs[0]).positive || out.literal(refs[2]).positive)
      throw Sat32Error(Sat32ErrorKind::uniform_polarity,
                       "variable " + std::to_string(i) + " has three literals of the same polarity");
    out.occurrences_.push_back({refs[0], refs[1], refs[2]});
  }
  return out;
}

struct Assignment {
  std::vector<bool> values;  // [i - 1] for variable i

  bool operator[](std::size_t i) const { return values.at(i - 1); }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

inline bool satisfies(const Assignment& a, const Literal& l) { return a[l.variable] == l.positive; }

inline std::size_t count_satisfied(const Sat32Instance& sat, const Assignment& a) {
  std::size_t k = 0;
  for (const auto& c : sat.clauses())
    if (satisfies(a, c[0]) || satisfies(a, c[1])) ++k;
  return k;
}

struct VariableGadgetMarkers {
  Marker p, q, r, s, t, u, v;
  Marker a_pos, b_pos, a_neg, b_neg;
  Marker d;
};

struct ClauseGadgetMarkers {
  std::array<Marker, 2> e, f;  // [h - 1]
  Marker z;
};

using BucketList = std::vector<std::vector<Marker>>;

// Bucket positions inside the variable gadget of gamma and the selection
// gadget of pi.
namespace xb {
inline constexpr std::size_t P = 0, Q = 1, R = 2, S = 3, T = 4, U = 5, V = 6, D = 7;
}
namespace yb {
inline constexpr std::size_t P = 0, Q = 1, R = 2, S = 3, T = 4, U = 5, V = 6, A = 7, B = 8;
}

struct Sat32Certificate {
  Sat32Instance sat;
  std::vector<VariableGadgetMarkers> variables;  // [i - 1]
  std::vector<ClauseGadgetMarkers> clauses;      // [j - 1]
  std::vector<BucketList> clause_gadgets;        // E_j, F_j
  std::vector<BucketList> x_gadgets;             // P'..V', D (eight buckets)
  std::vector<BucketList> y_gadgets;             // P..V, A, B (nine buckets)

  const Marker& e_of(LiteralRef r) const { return clauses.at(r.clause - 1).e.at(r.slot - 1); }
  const Marker& f_of(LiteralRef r) const { return clauses.at(r.clause - 1).f.at(r.slot - 1); }

  BucketList gamma_buckets() const {
    BucketList out;
    for (std::size_t j = 0; j < clauses.size(); ++j) {
      out.insert(out.end(), clause_gadgets[j].begin(), clause_gadgets[j].end());
      out.push_back({clauses[j].z});
    }
    for (const auto& x : x_gadgets) out.insert(out.end(), x.begin(), x.end());
    return out;
  }

  BucketList pi_buckets() const {
    BucketList out;
    for (const auto& y : y_gadgets) out.insert(out.end(), y.begin(), y.end());
    for (const auto& c : clauses) out.push_back({c.z});
    return out;
  }

  WeakOrder gamma() const { return WeakOrder(gamma_buckets()); }
  WeakOrder pi() const { return WeakOrder(pi_buckets()); }

  AlignmentInstance instance() const {
    WeakOrder g = gamma();
    MarkerSet ms = g.markers();
    return AlignmentInstance(std::move(ms), std::move(g), pi());
  }
};

inline Sat32Certificate build_sat32_certificate(const Sat32Instance& sat) {
  Sat32Certificate c;
  c.sat = sat;
  for (std::size_t j = 1; j <= sat.clause_count(); ++j) {
    const auto s = std::to_string(j);
    ClauseGadgetMarkers cm{{"e" + s + "^1", "e" + s + "^2"}, {"f" + s + "^1", "f" + s + "^2"}, "z" + s};
    c.clause_gadgets.push_back({{cm.e[0], cm.e[1]}, {cm.f[0], cm.f[1]}});
    c.clauses.push_back(std::move(cm));
  }
  for (std::size_t i = 1; i <= sat.variable_count(); ++i) {
    const auto s = std::to_string(i);
    VariableGadgetMarkers vm{"p" + s,       "q" + s,       "r" + s,       "s" + s, "t" + s, "u" + s, "v" + s,
                             "a" + s + "+", "b" + s + "+", "a" + s + "-", "b" + s + "-", "d" + s};
    c.x_gadgets.push_back({{vm.p, vm.a_pos}, {vm.q, vm.b_pos}, {vm.r}, {vm.s}, {vm.t}, {vm.u, vm.a_neg},
                           {vm.v, vm.b_neg}, {vm.d}});

    const auto& occ = sat.occurrences(i);
    const LiteralRef x1 = occ[0], x2 = occ[1], x3 = occ[2];
    const bool x2_positive = sat.literal(x2).positive;
    BucketList y{{vm.p, c.e_of(x1)}, {vm.q, c.f_of(x1)}, {vm.r}, {vm.s}, {vm.t}, {vm.u, c.e_of(x3)},
                 {vm.v, c.f_of(x3)}, {vm.a_pos, vm.a_neg}, {vm.b_pos, vm.b_neg}};
    if (x2_positive) {
      y[yb::R].push_back(c.e_of(x2));
      y[yb::S].push_back(c.f_of(x2));
      y[yb::T].push_back(vm.d);
    } else {
      y[yb::R].push_back(vm.d);
      y[yb::S].push_back(c.e_of(x2));
      y[yb::T].push_back(c.f_of(x2));
    }
    c.y_gadgets.push_back(std::move(y));
    c.variables.push_back(std::move(vm));
  }
  return c;
}

inline std::pair<AlignmentInstance, Sat32Certificate> reduce_sat32(const Sat32Instance& sat) {
  Sat32Certificate c = build_sat32_certificate(sat);
  AlignmentInstance inst = c.instance();
  return {std::move(inst), std::move(c)};
}

namespace detail {

// Working copy of every bucket's internal order for both weak orders.
struct Sat32Layout {
  std::vector<BucketList> clause;  // E_j, F_j
  std::vector<BucketList> x;
  std::vector<BucketList> y;

  LinearOrder gamma_ext(const Sat32Certificate& c) const {
    std::vector<Marker> perm;
    for (std::size_t j = 0; j < clause.size(); ++j) {
      for (const auto& b : clause[j]) perm.insert(perm.end(), b.begin(), b.end());
      perm.push_back(c.clauses[j].z);
    }
    for (const auto& g : x)
      for (const auto& b : g) perm.insert(perm.end(), b.begin(), b.end());
    return LinearOrder(std::move(perm));
  }

  LinearOrder pi_ext(const Sat32Certificate& c) const {
    std::vector<Marker> perm;
    for (const auto& g : y)
      for (const auto& b : g) perm.insert(perm.end(), b.begin(), b.end());
    for (const auto& cm : c.clauses) perm.push_back(cm.z);
    return LinearOrder(std::move(perm));
  }
};

inline void put_first(std::vector<Marker>& bucket, const Marker& m) {
  auto it = std::find(bucket.begin(), bucket.end(), m);
  std::rotate(bucket.begin(), it, it + 1);
}

inline void put_last(std::vector<Marker>& bucket, const Marker& m) {
  auto it = std::find(bucket.begin(), bucket.end(), m);
  std::rotate(it, it + 1, bucket.end());
}

// Bucket orders for a variable gadget realizing
//   true:  a+ b+, q r, s t, u v (and the literal pairs in P|Q, R|S)
//   false: a- b-, p q, r s, t u (and the literal pairs in U|V, S|T)
inline void apply_variable_pattern(const VariableGadgetMarkers& vm, bool value, BucketList& x, BucketList& y) {
  if (value) {
    put_first(y[yb::P], vm.p);
    put_last(y[yb::Q], vm.q);
    put_first(y[yb::R], vm.r);
    put_last(y[yb::S], vm.s);
    put_first(y[yb::T], vm.t);
    put_last(y[yb::U], vm.u);
    put_first(y[yb::V], vm.v);
    put_last(y[yb::A], vm.a_pos);
    put_first(y[yb::B], vm.b_pos);
    put_last(x[xb::P], vm.a_pos);
    put_last(x[xb::Q], vm.q);
    put_last(x[xb::U], vm.u);
    put_first(x[xb::V], vm.v);
  } else {
    put_last(y[yb::P], vm.p);
    put_first(y[yb::Q], vm.q);
    put_last(y[yb::R], vm.r);
    put_first(y[yb::S], vm.s);
    put_last(y[yb::T], vm.t);
    put_first(y[yb::U], vm.u);
    put_last(y[yb::V], vm.v);
    put_last(y[yb::A], vm.a_neg);
    put_first(y[yb::B], vm.b_neg);
    put_last(x[xb::P], vm.p);
    put_first(x[xb::Q], vm.q);
    put_first(x[xb::U], vm.u);
    put_first(x[xb::V], vm.b_neg);
  }
}

inline void require_feasible(const Sat32Certificate& c, const AlignmentSolution& sol) {
  const WeakOrder g = c.gamma(), p = c.pi();
  if (!sol.gamma_ext.markers().same_members(g.markers()) || !is_linear_extension(sol.gamma_ext, g))
    throw InvalidArgument("gamma extension is not a linear extension of the weak order gamma");
  if (!sol.pi_ext.markers().same_members(p.markers()) || !is_linear_extension(sol.pi_ext, p))
    throw InvalidArgument("pi extension is not a linear extension of the weak order pi");
}

inline BucketList ordered_like(const BucketList& buckets, const LinearOrder& ext) {
  BucketList out = buckets;
  for (auto& b : out)
    std::sort(b.begin(), b.end(),
              [&](const Marker& a, const Marker& z) { return ext.position(a) < ext.position(z); });
  return out;
}

}  // namespace detail

// Direct map: variable gadgets follow the truth value; each clause gadget is
// ordered for the first true literal met (by variable, then x^1/x^3 before
// x^2); buckets left unconstrained keep ascending marker id order.
inline AlignmentSolution solution_from_assignment(const Sat32Certificate& c, const Assignment& asg) {
  const std::size_t n = c.sat.variable_count();
  if (asg.values.size() != n) throw InvalidArgument("assignment must give a value to every variable");
  detail::Sat32Layout lay{c.clause_gadgets, c.x_gadgets, c.y_gadgets};
  auto sort_all = [](std::vector<BucketList>& gs) {
    for (auto& g : gs)
      for (auto& b : g) std::sort(b.begin(), b.end());
  };
  sort_all(lay.clause);
  sort_all(lay.x);
  sort_all(lay.y);

  std::vector<char> clause_ordered(c.sat.clause_count(), 0);
  auto realize = [&](LiteralRef r) {
    if (clause_ordered[r.clause - 1]) return false;
    clause_ordered[r.clause - 1] = 1;
    detail::put_last(lay.clause[r.clause - 1][0], c.e_of(r));
    detail::put_first(lay.clause[r.clause - 1][1], c.f_of(r));
    return true;
  };

  for (std::size_t i = 1; i <= n; ++i) {
    const auto& vm = c.variables[i - 1];
    const auto& occ = c.sat.occurrences(i);
    auto& y = lay.y[i - 1];
    const bool value = asg[i];
    detail::apply_variable_pattern(vm, value, lay.x[i - 1], y);
    const bool x2_positive = c.sat.literal(occ[1]).positive;
    // The P bucket (true) and V bucket (false) are only fixed when their
    // literal pair is the one realized; otherwise they stay in id order.
    std::sort(y[value ? yb::P : yb::V].begin(), y[value ? yb::P : yb::V].end());
    if (value) {
      if (realize(occ[0])) detail::put_last(y[yb::P], c.e_of(occ[0]));
      if (x2_positive) realize(occ[1]);
    } else {
      if (realize(occ[2])) detail::put_first(y[yb::V], c.f_of(occ[2]));
      if (!x2_positive) realize(occ[1]);
    }
  }
  return make_solution(lay.gamma_ext(c), lay.pi_ext(c));
}

struct Sat32Repair {
  AlignmentSolution solution;
  Assignment assignment;
  std::vector<std::size_t> inconsistent_variables;  // variables whose realized literals mixed polarities
};

// Reorders the buckets of every variable gadget and selection gadget so
// that each variable contributes exactly four variable/selection adjacencies
// and only literals of one polarity are realized. Clause gadgets are left
// untouched, so every realized literal of the kept polarity survives.
inline Sat32Repair repair_sat32_solution(const Sat32Certificate& c, const AlignmentSolution& sol) {
  detail::require_feasible(c, sol);
  const auto adj = adjacency_set(sol.gamma_ext, sol.pi_ext);
  const std::size_t before = adj.size();
  auto realized = [&](LiteralRef r) { return adj.count({c.e_of(r), c.f_of(r)}) != 0; };

  detail::Sat32Layout lay;
  for (const auto& g : c.clause_gadgets) lay.clause.push_back(detail::ordered_like(g, sol.gamma_ext));
  for (const auto& g : c.x_gadgets) lay.x.push_back(detail::ordered_like(g, sol.gamma_ext));
  for (const auto& g : c.y_gadgets) lay.y.push_back(detail::ordered_like(g, sol.pi_ext));

  Sat32Repair out;
  out.assignment.values.resize(c.sat.variable_count());
  for (std::size_t i = 1; i <= c.sat.variable_count(); ++i) {
    const auto& occ = c.sat.occurrences(i);
    bool pos = false, neg = false;
    for (const auto& r : occ)
      if (realized(r)) (c.sat.literal(r).positive ? pos : neg) = true;
    bool value;
    if (pos && neg) {
      // Keep the polarity that owns two literals, i.e. the polarity of x^2.
      value = c.sat.literal(occ[1]).positive;
      out.inconsistent_variables.push_back(i);
    } else {
      value = !neg;
    }
    detail::apply_variable_pattern(c.variables[i - 1], value, lay.x[i - 1], lay.y[i - 1]);
    out.assignment.values[i - 1] = value;
  }

  out.solution = make_solution(lay.gamma_ext(c), lay.pi_ext(c));
  if (out.solution.n_adj < before) throw std::logic_error("assignment repair decreased the adjacency count");
  return out;
}

// Reverse map: x_i is true iff a_i+ b_i+ is an adjacency after repair.
inline Assignment extract_assignment(const Sat32Certificate& c, const AlignmentSolution& sol) {
  const Sat32Repair repaired = repair_sat32_solution(c, sol);
  const auto adj = adjacency_set(repaired.solution.gamma_ext, repaired.solution.pi_ext);
  Assignment out;
  for (const auto& vm : c.variables) {
    const bool t = adj.count({vm.a_pos, vm.b_pos}) != 0;
    const bool f = adj.count({vm.a_neg, vm.b_neg}) != 0;
    if (t == f) throw std::logic_error("repaired solution does not select exactly one polarity for " + vm.p);
    out.values.push_back(t);
  }
  return out;
}

}  // namespace poa
