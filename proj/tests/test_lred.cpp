#include <gtest/gtest.h>

#include "support.hpp"

using namespace poa;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> out;
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

void expect_consistent_samples(const LRedReport& r) {
  for (const auto& s : r.samples) {
    EXPECT_EQ(s.lhs, std::abs(r.opt_source - s.val_gy));
    EXPECT_EQ(s.rhs, r.beta * std::abs(r.opt_target - s.val_y));
    EXPECT_EQ(s.pass, s.lhs <= s.rhs && s.val_gy >= s.floor);
  }
}

}  // namespace

TEST(SourceSolvers, GreedyAndBruteExamples) {
  const Graph k2(2, {{1, 2}});
  EXPECT_EQ(greedy_mis(k2).vertices, (std::vector<std::size_t>{1}));
  EXPECT_EQ(brute_mis(k2), 1u);
  EXPECT_EQ(brute_mis(Graph(3, {{1, 2}, {2, 3}})), 2u);
  EXPECT_EQ(brute_mis(Graph(4, {})), 4u);
  EXPECT_EQ(brute_mis(oracle::cubic6_graph()), 2u);
  EXPECT_GE(greedy_mis(oracle::cubic6_graph()).size(), 2u);
  EXPECT_THROW(greedy_mis(Graph(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}})), InvalidArgument);
  EXPECT_THROW(brute_mis(Graph(26, {})), InvalidArgument);

  const auto sat = oracle::sat2_instance();
  EXPECT_EQ(naive_assignment(sat).values, (std::vector<bool>{true, true}));
  EXPECT_EQ(brute_maxsat(sat), 3u);
}

TEST(SourceSolvers, BruteMisMatchesSubsets) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& g : oracle::all_graphs(n, 3)) ASSERT_EQ(brute_mis(g), oracle::mis_by_subsets(g));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph g = random_graph(6 + seed % 12, seed);
    ASSERT_EQ(brute_mis(g), oracle::mis_by_subsets(g)) << "seed " << seed;
  }
}

TEST(SourceSolvers, BruteMaxsatMatchesMasks) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto sat = random_sat32(2 + 2 * (seed % 5), seed);
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << sat.variable_count()); ++mask)
      best = std::max(best, oracle::satisfied(sat, mask));
    ASSERT_EQ(brute_maxsat(sat), best);
    ASSERT_EQ(count_satisfied(sat, naive_assignment(sat)), oracle::satisfied(sat, (1u << sat.variable_count()) - 1));
  }
}

// The bounds behind the alphas: greedy keeps at least n/4 vertices, m <= 3n/2,
// and half of all 2SAT clauses are always satisfiable.
TEST(SourceSolvers, GreedyAndEdgeBounds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 1 + seed % 12;
    const Graph g = random_graph(n, seed);
    const auto vs = greedy_mis(g);
    ASSERT_TRUE(is_independent(g, vs));
    ASSERT_GE(4 * vs.size(), n);
    ASSERT_LE(2 * g.edge_count(), 3 * n);
  }
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto sat = random_sat32(2 + 2 * (seed % 6), seed);
    ASSERT_EQ(3 * sat.variable_count(), 2 * sat.clause_count());
    ASSERT_GE(2 * brute_maxsat(sat), sat.clause_count());
  }
}

TEST(LRed, Kinds) {
  for (auto k : {LRedKind::mis3_maxadj, LRedKind::mis3_minbrk, LRedKind::sat32_maxadj, LRedKind::sat32_minbrk})
    EXPECT_EQ(parse_lred_kind(to_string(k)), k);
  EXPECT_FALSE(parse_lred_kind("mis3"));
  EXPECT_EQ(lred_alpha(LRedKind::mis3_maxadj), 7);
  EXPECT_EQ(lred_alpha(LRedKind::mis3_minbrk), 29);
  EXPECT_EQ(lred_alpha(LRedKind::sat32_maxadj), 9);
  EXPECT_EQ(lred_alpha(LRedKind::sat32_minbrk), 30);
  EXPECT_THROW(verify_lreduction(LRedKind::sat32_maxadj, Graph(2, {{1, 2}}), 1, 1), InvalidArgument);
  EXPECT_THROW(verify_lreduction(LRedKind::mis3_maxadj, oracle::sat2_instance(), 1, 1), InvalidArgument);
}

TEST(LRed, K2Examples) {
  const Graph k2(2, {{1, 2}});
  const auto adj = verify_lreduction(LRedKind::mis3_maxadj, k2, 30, 1);
  EXPECT_EQ(adj.opt_source, 1);
  EXPECT_EQ(adj.opt_target, 2);
  EXPECT_EQ(adj.eq1_lhs, 2);
  EXPECT_EQ(adj.eq1_rhs, 7);
  EXPECT_TRUE(adj.ok());
  EXPECT_EQ(adj.checked_solutions, 31u);
  expect_consistent_samples(adj);

  const auto brk = verify_lreduction(LRedKind::mis3_minbrk, k2, 30, 1);
  EXPECT_EQ(brk.opt_target, 7);  // 9 marker pairs, 2 adjacencies
  EXPECT_EQ(brk.eq1_rhs, 29);
  EXPECT_TRUE(brk.ok());
  expect_consistent_samples(brk);
}

TEST(LRed, Sat2Examples) {
  const auto adj = verify_lreduction(LRedKind::sat32_maxadj, oracle::sat2_instance(), 60, 3);
  EXPECT_EQ(adj.opt_source, 3);
  EXPECT_EQ(adj.opt_target, 11);
  EXPECT_EQ(adj.eq1_rhs, 27);
  EXPECT_TRUE(adj.ok());
  expect_consistent_samples(adj);

  const auto brk = verify_lreduction(LRedKind::sat32_minbrk, oracle::sat2_instance(), 60, 3);
  EXPECT_EQ(brk.opt_target, 38 - 11);
  EXPECT_EQ(brk.eq1_rhs, 90);
  EXPECT_TRUE(brk.ok());
}

TEST(LRed, AllSmallConnectedGraphs) {
  for (std::size_t n = 2; n <= 4; ++n)
    for (const auto& g : oracle::all_graphs(n, 3)) {
      if (!oracle::connected(g)) continue;
      for (auto k : {LRedKind::mis3_maxadj, LRedKind::mis3_minbrk}) {
        const auto r = verify_lreduction(k, g, 60, n);
        ASSERT_TRUE(r.ok()) << render_report(r);
        ASSERT_EQ(r.opt_source, static_cast<std::int64_t>(oracle::mis_by_subsets(g)));
        expect_consistent_samples(r);
        for (const auto& s : r.samples) ASSERT_GE(s.val_gy, s.floor);
      }
    }
}

TEST(LRed, OptimumMatchesSourceOptimum) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = random_graph(3 + seed % 3, seed);
    const auto r = verify_lreduction(LRedKind::mis3_maxadj, g, 3, seed);
    EXPECT_EQ(r.opt_target, static_cast<std::int64_t>(g.edge_count()) + r.opt_source);
  }
}

TEST(LRed, ReportFormatAndDeterminism) {
  const Graph p3(3, {{1, 2}, {2, 3}});
  const auto r = verify_lreduction(LRedKind::mis3_maxadj, p3, 9, 5);
  const std::string text = render_report(r);
  const auto lines = lines_of(text);
  ASSERT_EQ(lines.size(), 2u + 10u);
  EXPECT_EQ(lines[0], "# kind=mis3-maxadj alpha=7 beta=1 opt_source=2 opt_target=4 checked=10 violations=0");
  EXPECT_EQ(lines[1], "CHECK eq1 lhs=4 rhs=14 PASS");
  for (std::size_t i = 2; i < lines.size(); ++i) {
    EXPECT_EQ(lines[i].rfind("CHECK eq2 y=", 0), 0u);
    EXPECT_EQ(lines[i].substr(lines[i].size() - 5), " PASS");
  }
  EXPECT_NE(lines.back().find("origin=optimum"), std::string::npos);
  EXPECT_EQ(render_report(verify_lreduction(LRedKind::mis3_maxadj, p3, 9, 5)), text);
  EXPECT_NE(render_report(verify_lreduction(LRedKind::mis3_maxadj, p3, 9, 6)), text);
}

TEST(LRed, ViolationsAreRendered) {
  LRedReport r;
  r.kind = LRedKind::sat32_maxadj;
  r.alpha = 9;
  r.eq1_lhs = 30;
  r.eq1_rhs = 27;
  r.violations.push_back({0xab, "eq2", 5, 3});
  const auto lines = lines_of(render_report(r));
  EXPECT_EQ(lines[1], "CHECK eq1 lhs=30 rhs=27 FAIL");
  EXPECT_EQ(lines.back(), "VIOLATION eq2 y=00000000000000ab lhs=5 rhs=3");
  EXPECT_FALSE(r.ok());
}

TEST(LRed, DigestSeparatesSolutions) {
  const auto a = make_solution(LinearOrder({"a", "b"}), LinearOrder({"b", "a"}));
  const auto b = make_solution(LinearOrder({"b", "a"}), LinearOrder({"a", "b"}));
  EXPECT_EQ(solution_digest(a), solution_digest(a));
  EXPECT_NE(solution_digest(a), solution_digest(b));
}
