#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace poa;

namespace {

WeakOrder ab_c() { return WeakOrder({{"a", "b"}, {"c"}}); }

LinearOrder lin(std::vector<Marker> p) { return LinearOrder(std::move(p)); }

DagOrder dag(std::vector<Marker> ids, std::vector<std::pair<Marker, Marker>> rel) {
  return DagOrder(MarkerSet(std::move(ids)), std::move(rel));
}

OrderFamily family_by_search(const oracle::Rel& r) {
  const auto n = static_cast<long long>(r.size());
  if (oracle::is_total(r)) return OrderFamily::linear;
  if (oracle::is_weak_by_search(r)) return OrderFamily::weak;
  if (oracle::has_interval_realization(r, n * n, n)) return OrderFamily::semiorder;
  if (oracle::has_interval_realization(r, 2 * n)) return OrderFamily::interval;
  return OrderFamily::partial;
}

}  // namespace

TEST(Precedes, WeakAndInterval) {
  EXPECT_TRUE(precedes(Order{ab_c()}, "a", "c"));
  EXPECT_FALSE(precedes(Order{ab_c()}, "a", "b"));
  const IntervalOrder iv({{"a", {8, 9}}, {"e", {10, 17}}});
  EXPECT_TRUE(iv.precedes("a", "e"));
  EXPECT_FALSE(iv.precedes("e", "a"));
  // Touching open intervals are ordered.
  EXPECT_TRUE(IntervalOrder({{"x", {0, 2}}, {"y", {2, 3}}}).precedes("x", "y"));
}

TEST(Precedes, UnknownMarkerThrows) {
  EXPECT_THROW(precedes(Order{ab_c()}, "a", "zz"), InvalidArgument);
  EXPECT_THROW(dag({"a", "b"}, {{"a", "b"}}).precedes("a", "q"), InvalidArgument);
}

TEST(Orders, ConstructionErrors) {
  EXPECT_THROW(LinearOrder({"a", "a"}), InvalidArgument);
  EXPECT_THROW(LinearOrder({"a b"}), InvalidArgument);
  EXPECT_THROW(WeakOrder({{"a"}, {}}), InvalidArgument);
  EXPECT_THROW(IntervalOrder({{"a", {3, 3}}}), InvalidArgument);
  EXPECT_THROW(dag({"a", "b"}, {{"a", "b"}, {"b", "a"}}), InvalidArgument);
  EXPECT_THROW(dag({"a"}, {{"a", "a"}}), InvalidArgument);
}

TEST(LinearExtension, Examples) {
  EXPECT_TRUE(is_linear_extension(lin({"b", "a", "c"}), ab_c()));
  EXPECT_FALSE(is_linear_extension(lin({"a", "c", "b"}), ab_c()));
  EXPECT_FALSE(is_linear_extension(lin({"c", "a", "b"}), dag({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}})));
  EXPECT_THROW(is_linear_extension(lin({"a", "b"}), ab_c()), InvalidArgument);
}

TEST(LinearExtension, IntervalOrderAgreesWithPairwiseDefinition) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto inst = random_instance({5, GenFamily::interval, GenFamily::linear, 2, static_cast<std::uint64_t>(t)});
    std::vector<Marker> perm = inst.markers().ids();
    std::sort(perm.begin(), perm.end());
    do {
      ASSERT_EQ(is_linear_extension(LinearOrder(perm), inst.gamma()), oracle::respects(perm, inst.gamma()));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate_linear_extensions(dag({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}), 10).size(), 1u);
  EXPECT_EQ(enumerate_linear_extensions(dag({"a", "b", "c"}, {}), 10).size(), 6u);
  EXPECT_EQ(enumerate_linear_extensions(ab_c(), 10).size(), 2u);
}

TEST(Enumerate, CapExceededCarriesPartialCount) {
  try {
    enumerate_linear_extensions(dag({"a", "b", "c"}, {}), 4);
    FAIL() << "expected a cap error";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.partial_count(), 4u);
  }
  EXPECT_THROW(enumerate_linear_extensions(ab_c(), 0), InvalidArgument);
}

TEST(Enumerate, MatchesPermutationFilterOnAllSmallPosets) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& r : oracle::all_posets(n)) {
      const DagOrder d = oracle::to_dag(r);
      const auto got = enumerate_linear_extensions(d, 1000);
      const auto want = oracle::extensions_by_permutation(d);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t k = 0; k < got.size(); ++k) {
        ASSERT_EQ(got[k].perm(), want[k]);
        ASSERT_TRUE(is_linear_extension(got[k], d));
      }
    }
}

TEST(Enumerate, WeakOrderCountIsProductOfFactorials) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = random_instance({7, GenFamily::weak, GenFamily::linear, 4, seed});
    const auto& w = std::get<WeakOrder>(inst.gamma());
    std::size_t want = 1;
    for (const auto& b : w.buckets())
      for (std::size_t k = 2; k <= b.size(); ++k) want *= k;
    const auto all = enumerate_linear_extensions(w, 100000);
    EXPECT_EQ(all.size(), want);
    std::set<std::vector<Marker>> distinct;
    for (const auto& e : all) distinct.insert(e.perm());
    EXPECT_EQ(distinct.size(), want);
    EXPECT_EQ(count_linear_extensions(w, 100000), want);
  }
}

TEST(Enumerate, RandomExtensionIsFeasibleAndSeeded) {
  const auto inst = random_instance({12, GenFamily::dag, GenFamily::interval, 3, 9});
  for (const auto* o : {&inst.gamma(), &inst.pi()}) {
    std::mt19937_64 r1(5), r2(5);
    const auto e1 = random_linear_extension(*o, r1);
    EXPECT_TRUE(is_linear_extension(e1, *o));
    EXPECT_EQ(e1, random_linear_extension(*o, r2));
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(dag({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}})), OrderFamily::linear);
  EXPECT_EQ(classify(dag({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}})), OrderFamily::weak);
  EXPECT_EQ(classify(dag({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}})), OrderFamily::partial);
  EXPECT_EQ(classify(dag({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}})), OrderFamily::interval);
}

TEST(Classify, TwoPlusTwoHasNoIntervalRealization) {
  oracle::Rel r(4, std::vector<bool>(4, false));
  r[0][1] = r[2][3] = true;
  EXPECT_FALSE(oracle::has_interval_realization(r, 8));
  EXPECT_TRUE(oracle::has_2plus2(r));
}

TEST(Classify, AgreesWithExhaustiveRealizationSearch) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& r : oracle::all_posets(n)) {
      const DagOrder d = oracle::to_dag(r);
      const OrderFamily got = classify(d);
      ASSERT_EQ(got, family_by_search(r)) << "n=" << n;
      const bool interval = !oracle::has_2plus2(r);
      const bool semi = interval && !oracle::has_3plus1(r);
      ASSERT_EQ(got != OrderFamily::partial, interval);
      ASSERT_EQ(got != OrderFamily::partial && got != OrderFamily::interval, semi);
    }
}

TEST(Classify, HierarchySoundness) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_instance({8, GenFamily::weak, GenFamily::linear, 3, seed});
    const auto f = classify(to_dag(inst.gamma()));
    EXPECT_TRUE(f == OrderFamily::linear || f == OrderFamily::weak);
    EXPECT_EQ(classify(inst.pi()), OrderFamily::linear);
    EXPECT_NO_THROW(to_interval_representation(to_dag(inst.gamma())));
  }
}

TEST(ToWeak, Examples) {
  EXPECT_EQ(to_weak(dag({"a", "b"}, {{"a", "b"}})).buckets(), (std::vector<std::vector<Marker>>{{"a"}, {"b"}}));
  EXPECT_EQ(to_weak(dag({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}})).buckets(),
            (std::vector<std::vector<Marker>>{{"a", "b"}, {"c"}}));
  EXPECT_THROW(to_weak(dag({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}})), FamilyMismatch);
}

TEST(ToWeak, RoundTripOnSmallWeakPosets) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& r : oracle::all_posets(n)) {
      if (!oracle::is_weak_by_search(r)) continue;
      const WeakOrder w = to_weak(oracle::to_dag(r));
      const auto ids = oracle::names(n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) ASSERT_EQ(w.precedes(ids[a], ids[b]), bool(r[a][b]));
    }
}

TEST(IntervalRepresentation, Examples) {
  const auto chain = to_interval_representation(dag({"a", "b"}, {{"a", "b"}}));
  EXPECT_LE(chain.interval("a").right, chain.interval("b").left);
  const auto anti = to_interval_representation(dag({"a", "b"}, {}));
  EXPECT_FALSE(anti.precedes("a", "b"));
  EXPECT_FALSE(anti.precedes("b", "a"));
  const auto w = to_interval_representation(to_dag(ab_c()));
  int related = 0;
  for (const char* x : {"a", "b", "c"})
    for (const char* y : {"a", "b", "c"}) related += w.precedes(x, y);
  EXPECT_EQ(related, 2);
  EXPECT_THROW(to_interval_representation(dag({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}})), FamilyMismatch);
}

TEST(IntervalRepresentation, RoundTripOnAllPosetsUpToFive) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& r : oracle::all_posets(n)) {
      const DagOrder d = oracle::to_dag(r);
      if (oracle::has_2plus2(r)) {
        ASSERT_THROW(to_interval_representation(d), FamilyMismatch);
        continue;
      }
      const IntervalOrder iv = to_interval_representation(d);
      const auto ids = oracle::names(n);
      for (std::size_t a = 0; a < n; ++a) {
        ASSERT_LT(iv.interval(ids[a]).left, iv.interval(ids[a]).right);
        for (std::size_t b = 0; b < n; ++b) ASSERT_EQ(iv.precedes(ids[a], ids[b]), bool(r[a][b]));
      }
    }
}

TEST(Metrics, Examples) {
  EXPECT_EQ(count_adjacencies(lin({"a", "b", "c"}), lin({"a", "b", "c"})), 2u);
  EXPECT_EQ(count_adjacencies(lin({"a", "b"}), lin({"b", "a"})), 0u);
  EXPECT_EQ(count_adjacencies(lin({"a", "b", "c", "d"}), lin({"d", "b", "c", "a"})), 1u);
  EXPECT_EQ(count_breakpoints(lin({"a", "b", "c"}), lin({"a", "b", "c"})), 0u);
  EXPECT_EQ(count_breakpoints(lin({"a", "b", "c", "d"}), lin({"d", "b", "c", "a"})), 2u);
  EXPECT_EQ(count_breakpoints(lin({"a"}), lin({"a"})), 0u);
  EXPECT_EQ(adjacency_set(lin({"a", "b", "c"}), lin({"a", "b", "c"})),
            (std::set<MarkerPair>{{"a", "b"}, {"b", "c"}}));
  EXPECT_TRUE(adjacency_set(lin({"a", "b"}), lin({"b", "a"})).empty());
  EXPECT_EQ(adjacency_set(lin({"a", "b", "c", "d"}), lin({"d", "b", "c", "a"})),
            (std::set<MarkerPair>{{"b", "c"}}));
}

TEST(Metrics, Errors) {
  EXPECT_THROW(count_adjacencies(lin({"a", "b"}), lin({"a", "c"})), InvalidArgument);
  EXPECT_THROW(adjacency_set(lin({"a"}), lin({"a", "b"})), InvalidArgument);
  EXPECT_THROW(count_breakpoints(lin({}), lin({})), InvalidArgument);
}

TEST(Metrics, RandomPermutationInvariants) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 12;
    std::vector<Marker> p = oracle::names(n), q = p;
    std::shuffle(p.begin(), p.end(), rng);
    std::shuffle(q.begin(), q.end(), rng);
    const auto adj = count_adjacencies(lin(p), lin(q));
    EXPECT_EQ(adj, oracle::adjacencies(p, q));
    EXPECT_EQ(adj + count_breakpoints(lin(p), lin(q)), n - 1);
    EXPECT_EQ(count_breakpoints(lin(p), lin(q)), count_breakpoints(lin(q), lin(p)));
    EXPECT_EQ(adjacency_set(lin(p), lin(q)).size(), adj);
  }
}
