#include <gtest/gtest.h>

#include "generators.hpp"
#include "imc/imc.hpp"

namespace imc {
namespace {

using testing::Rng;

const StateSpace ab{"a", "b"};
const StateSpace abc{"a", "b", "c"};

TEST(StateSpace, LabelsAndIndices) {
  EXPECT_EQ(abc.size(), 3u);
  EXPECT_EQ(abc.index("c"), 2u);
  EXPECT_EQ(abc.label(1), "b");
  EXPECT_TRUE(abc.contains("a"));
  EXPECT_FALSE(abc.contains("d"));
  EXPECT_THROW(abc.index("d"), ArgumentError);
  EXPECT_THROW(StateSpace({"a", "a"}), ArgumentError);
  EXPECT_THROW(StateSpace(std::vector<std::string>{}), ArgumentError);
  EXPECT_EQ(StateSpace::numbered(3).labels(), (std::vector<std::string>{"0", "1", "2"}));
  EXPECT_EQ(abc, StateSpace({"a", "b", "c"}));
  EXPECT_FALSE(abc == ab);
}

TEST(StateSet, SetAlgebra) {
  auto s = StateSet::of(abc, {"a", "c"});
  EXPECT_EQ(s.count(), 2u);
  EXPECT_EQ(s.complement(), StateSet::of(abc, {"b"}));
  EXPECT_TRUE((s | s.complement()).is_full());
  EXPECT_TRUE((s & s.complement()).empty());
  EXPECT_TRUE(StateSet::of(abc, {"a"}).is_subset_of(s));
  EXPECT_EQ(s.indices(), (std::vector<std::size_t>{0, 2}));
}

TEST(Gamble, ArithmeticAndNorms) {
  Gamble h(abc, {1.0, -2.0, 3.0});
  EXPECT_EQ(h.min(), -2.0);
  EXPECT_EQ(h.max(), 3.0);
  EXPECT_EQ(h.at("b"), -2.0);
  EXPECT_EQ((h + 1.0)[1], -1.0);
  EXPECT_EQ((-h)[2], -3.0);
  EXPECT_EQ((2.0 * h)[0], 2.0);
  EXPECT_DOUBLE_EQ(h.distance(Gamble::zero(abc)), 3.0);
  EXPECT_EQ(Gamble::indicator(abc, StateSet::of(abc, {"b", "c"})).values()[0], 0.0);
  EXPECT_THROW(Gamble(abc, {1.0, 2.0}), DimensionError);
  EXPECT_THROW(Gamble(ab, {1.0, std::nan("")}), ArgumentError);
  EXPECT_THROW(Gamble(ab, {1.0, 0.0}) + Gamble(abc, {1.0, 0.0, 0.0}), DimensionError);
}

TEST(MassFunction, ValidationAndClamping) {
  MassFunction m(ab, {1.0 + 5e-10, -5e-10});
  EXPECT_EQ(m[1], 0.0);
  EXPECT_DOUBLE_EQ(m[0], 1.0);
  EXPECT_THROW(MassFunction(ab, {0.7, 0.7}), ArgumentError);
  EXPECT_THROW(MassFunction(ab, {1.1, -0.1}), ArgumentError);
  EXPECT_THROW(MassFunction(ab, {1.0}), DimensionError);
  EXPECT_DOUBLE_EQ(MassFunction::uniform(abc)[2], 1.0 / 3.0);
  EXPECT_EQ(MassFunction::point(abc, 1).support(), StateSet::of(abc, {"b"}));
}

TEST(Expectation, WorkedValues) {
  EXPECT_DOUBLE_EQ(expectation(MassFunction::uniform(ab), Gamble(ab, {1.0, 0.0})), 0.5);
  EXPECT_DOUBLE_EQ(expectation(MassFunction(ab, {0.9, 0.1}), Gamble::indicator(ab, 0)), 0.9);
  EXPECT_NEAR(expectation(MassFunction(ab, {0.15, 0.85}), Gamble(ab, {2.0, -1.0})), -0.55, 1e-15);
  EXPECT_THROW(expectation(MassFunction::uniform(ab), Gamble::zero(abc)), DimensionError);
}

void expect_vertices(const std::vector<MassFunction>& got, const std::vector<std::vector<double>>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i)
    for (std::size_t j = 0; j < want[i].size(); ++j) EXPECT_NEAR(got[i][j], want[i][j], 1e-12) << i << "," << j;
}

TEST(VertexEnumeration, SimplexCorners) {
  expect_vertices(CredalPolytope::simplex(ab).vertices(), {{0.0, 1.0}, {1.0, 0.0}});
  EXPECT_EQ(CredalPolytope::simplex(abc).vertices().size(), 3u);
}

TEST(VertexEnumeration, IntervalOnTwoStates) {
  // 0.6 <= m(a) <= 0.9
  CredalPolytope p(ab, {{Gamble::indicator(ab, 0), 0.9}, {-Gamble::indicator(ab, 0), -0.6}});
  expect_vertices(p.vertices(), {{0.6, 0.4}, {0.9, 0.1}});
}

TEST(VertexEnumeration, ThreeStateIntervalRowIsTriangle) {
  std::vector<Halfspace> hs;
  const double lo[] = {9, 9, 162}, up[] = {19, 19, 172};
  for (std::size_t x = 0; x < 3; ++x) {
    hs.push_back({Gamble::indicator(abc, x), up[x] / 200});
    hs.push_back({-Gamble::indicator(abc, x), -lo[x] / 200});
  }
  expect_vertices(enumerate_vertices(abc, hs),
                  {{9.0 / 200, 19.0 / 200, 172.0 / 200},
                   {19.0 / 200, 9.0 / 200, 172.0 / 200},
                   {19.0 / 200, 19.0 / 200, 162.0 / 200}});
}

TEST(VertexEnumeration, DegenerateAndDuplicateConstraints) {
  // m(a) <= 0.5 twice and m(a) >= 0.5: a single point on two states.
  auto ind = Gamble::indicator(ab, 0);
  CredalPolytope p(ab, {{ind, 0.5}, {ind, 0.5}, {-ind, -0.5}});
  expect_vertices(p.vertices(), {{0.5, 0.5}});
}

TEST(VertexEnumeration, InfeasibleNamesConstraints) {
  auto ind = Gamble::indicator(abc, 0);
  try {
    CredalPolytope(abc, {{Gamble::indicator(abc, 2), 0.9}, {ind, 0.2}, {-ind, -0.4}});
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("{1, 2}"), std::string::npos) << e.what();
  }
}

TEST(UpperLp, WorkedValues) {
  Rng rng(7);
  auto h = testing::random_gamble(abc, rng);
  EXPECT_NEAR(upper_expectation_lp(CredalPolytope::simplex(abc), h), h.max(), 1e-12);
  auto m = testing::random_mass(abc, rng);
  auto single = CredalPolytope::hull(abc, {m});
  EXPECT_NEAR(upper_expectation_lp(single, h), expectation(m, h), 1e-9);
  CredalPolytope p(ab, {{Gamble::indicator(ab, 0), 0.9}, {-Gamble::indicator(ab, 0), -0.6}});
  EXPECT_NEAR(upper_expectation_lp(p, Gamble::indicator(ab, 0)), 0.9, 1e-12);
  EXPECT_NEAR(lower_expectation_lp(p, Gamble::indicator(ab, 0)), 0.6, 1e-12);
}

TEST(UpperLp, AgreesWithVerticesAndAxiomsOnRandomPolytopes) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto space = StateSpace::numbered(testing::pick(rng, 2, 5));
    auto region = testing::random_polytope(space, rng).as<PolytopeModel>().region;
    auto h = testing::random_gamble(space, rng);
    double best = -1e300;
    for (const auto& v : region.vertices()) {
      best = std::max(best, expectation(v, h));
      EXPECT_TRUE(region.contains(v));
    }
    double u = upper_expectation_lp(region, h);
    EXPECT_NEAR(u, best, 1e-9);
    EXPECT_LE(u, h.max() + 1e-9);
    EXPECT_GE(u, h.min() - 1e-9);
    const double mu = testing::uniform(rng, -3, 3);
    EXPECT_NEAR(upper_expectation_lp(region, h + mu), u + mu, 1e-9);
  }
}

TEST(VertexEnumeration, HullRoundTripIsIdempotent) {
  Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    auto space = StateSpace::numbered(testing::pick(rng, 2, 4));
    auto region = testing::random_polytope(space, rng).as<PolytopeModel>().region;
    auto again = CredalPolytope::hull(space, region.vertices());
    ASSERT_EQ(again.vertices().size(), region.vertices().size()) << "trial " << trial;
    for (std::size_t i = 0; i < region.vertices().size(); ++i)
      for (std::size_t j = 0; j < space.size(); ++j)
        EXPECT_NEAR(again.vertices()[i][j], region.vertices()[i][j], 1e-9);
  }
}

TEST(Matrix, ProductsAndStochasticity) {
  Matrix t{{0.15, 0.85}, {0.85, 0.15}};
  EXPECT_TRUE(t.is_stochastic());
  auto sq = t * t;
  EXPECT_NEAR(sq(0, 0), 0.15 * 0.15 + 0.85 * 0.85, 1e-15);
  EXPECT_EQ(Matrix::identity(2) * t, t);
  std::vector<double> h{1.0, 0.0};
  EXPECT_DOUBLE_EQ((t * std::span<const double>(h))[1], 0.85);
  EXPECT_FALSE(Matrix({{0.5, 0.6}, {1.0, 0.0}}).is_stochastic());
}

}  // namespace
}  // namespace imc
