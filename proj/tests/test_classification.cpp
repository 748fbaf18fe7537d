#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "aging/classification.hpp"
#include "random_models.hpp"

using aging::ClassLabel;
using aging::ClassTarget;
using aging::HazardModel;

namespace {

std::map<ClassTarget, ClassLabel> labels(const HazardModel& m, const std::vector<double>& grid,
                                         std::span<const ClassTarget> targets = aging::kAllTargets) {
  std::map<ClassTarget, ClassLabel> out;
  for (const auto& v : aging::classify(m, grid, aging::kAnalyticTolerance, targets)) out[v.target] = v.label;
  return out;
}

constexpr ClassTarget kNonHarmonic[] = {ClassTarget::FR, ClassTarget::AFR, ClassTarget::GFR,
                                        ClassTarget::AI, ClassTarget::GAI};

}  // namespace

TEST(Classify, Pareto) {
  const auto l = labels(HazardModel::pareto(2, 1), testing_support::linear_grid(1.1, 10, 32));
  EXPECT_EQ(l.at(ClassTarget::FR), ClassLabel::Decreasing);
  EXPECT_EQ(l.at(ClassTarget::GAI), ClassLabel::Decreasing);
  EXPECT_EQ(l.at(ClassTarget::HAI), ClassLabel::Decreasing);
  EXPECT_EQ(l.at(ClassTarget::GFR), ClassLabel::Decreasing);
}

TEST(Classify, Uniform) {
  // L(t) = x / ((1 - x)(-ln(1 - x))) with x = t/2 rises from 1 to infinity,
  // so the AI label is Increasing.
  double prev = 0.0;
  for (double t : testing_support::linear_grid(0.05, 1.95, 32)) {
    const double x = t / 2;
    const double l = x / ((1 - x) * -std::log1p(-x));
    EXPECT_GT(l, prev);
    prev = l;
  }
  const auto l = labels(HazardModel::uniform(0, 2), testing_support::linear_grid(0.05, 1.95, 32));
  EXPECT_EQ(l.at(ClassTarget::AI), ClassLabel::Increasing);
  EXPECT_EQ(l.at(ClassTarget::GAI), ClassLabel::Increasing);
  EXPECT_EQ(l.at(ClassTarget::HAI), ClassLabel::Increasing);
}

TEST(Classify, ExponentialIsConstantEverywhere) {
  for (const auto& [target, label] : labels(HazardModel::exponential(1), testing_support::linear_grid(0.1, 5, 16))) {
    EXPECT_EQ(label, ClassLabel::Constant) << to_string(target);
  }
}

TEST(Classify, Rayleigh) {
  const auto l = labels(HazardModel::rayleigh(1, 1), testing_support::linear_grid(0.1, 5, 32));
  EXPECT_EQ(l.at(ClassTarget::AI), ClassLabel::Increasing);
  EXPECT_EQ(l.at(ClassTarget::GAI), ClassLabel::Increasing);
  EXPECT_EQ(l.at(ClassTarget::HAI), ClassLabel::Increasing);
  EXPECT_EQ(l.at(ClassTarget::FR), ClassLabel::Increasing);
  EXPECT_EQ(l.at(ClassTarget::AFR), ClassLabel::Increasing);
}

TEST(Classify, WeibullDecreasingShape) {
  const auto l = labels(HazardModel::weibull(1, 0.6), testing_support::linear_grid(0.1, 5, 32));
  EXPECT_EQ(l.at(ClassTarget::FR), ClassLabel::Decreasing);
  EXPECT_EQ(l.at(ClassTarget::AFR), ClassLabel::Decreasing);
  EXPECT_EQ(l.at(ClassTarget::GFR), ClassLabel::Decreasing);
  EXPECT_EQ(l.at(ClassTarget::HFR), ClassLabel::Decreasing);
  EXPECT_EQ(l.at(ClassTarget::AI), ClassLabel::Constant);
  EXPECT_EQ(l.at(ClassTarget::GAI), ClassLabel::Constant);
}

TEST(Classify, NonMonotoneHasWitness) {
  // Bathtub: decreasing then increasing.
  const auto bathtub = HazardModel::tabulated({0, 1, 2, 3}, {3, 1, 1.5, 4});
  const auto verdicts = aging::classify(bathtub, testing_support::linear_grid(0.1, 3, 30));
  const auto& fr = verdicts.front();
  ASSERT_EQ(fr.target, ClassTarget::FR);
  EXPECT_EQ(fr.label, ClassLabel::NonMonotone);
  ASSERT_TRUE(fr.witness.has_value());
  EXPECT_LT(fr.witness->first, fr.witness->second);
}

TEST(Classify, DivergentHarmonicTargetsThrow) {
  const auto grid = testing_support::linear_grid(0.1, 5, 16);
  const ClassTarget hfr[] = {ClassTarget::HFR};
  try {
    aging::classify(HazardModel::erlang_like(1), grid, aging::kAnalyticTolerance, hfr);
    FAIL();
  } catch (const aging::Error& e) {
    EXPECT_EQ(e.code(), aging::ErrorCode::DivergentFunctional);
  }
  // L^G = (1 + t)^(1/t) falls toward 1.
  EXPECT_EQ(labels(HazardModel::erlang_like(1), grid, kNonHarmonic).at(ClassTarget::GAI),
            ClassLabel::Decreasing);
}

TEST(Classify, RejectsShortGridsAndBadTolerance) {
  EXPECT_THROW(aging::classify(HazardModel::exponential(1), testing_support::linear_grid(0.1, 1, 15)),
               aging::Error);
  EXPECT_THROW(aging::classify(HazardModel::exponential(1), testing_support::linear_grid(0.1, 1, 16), 0.0),
               aging::Error);
}

TEST(Classify, IntensityLabelsAreScaleFree) {
  testing_support::ModelSampler rng(5);
  const ClassTarget intensities[] = {ClassTarget::GAI, ClassTarget::HAI};
  for (int i = 0; i < 20; ++i) {
    const auto m = rng.zero_left();
    const auto grid = testing_support::linear_grid(0.05, testing_support::horizon(m), 20);
    const auto base = labels(m, grid, intensities);
    const auto scaled = labels(HazardModel::scaled(m, rng.log_uniform()), grid, intensities);
    EXPECT_EQ(base, scaled) << m.describe();
  }
}

TEST(Classify, SequenceHelper) {
  const double t[] = {1, 2, 3, 4};
  const double up[] = {1, 2, 3, 4};
  const double flat[] = {1, 1 + 1e-12, 1, 1};
  const double wiggle[] = {1, 2, 1.5, 3};
  EXPECT_EQ(aging::classify_sequence(ClassTarget::FR, t, up, 1e-7).label, ClassLabel::Increasing);
  EXPECT_EQ(aging::classify_sequence(ClassTarget::FR, t, flat, 1e-7).label, ClassLabel::Constant);
  const auto v = aging::classify_sequence(ClassTarget::FR, t, wiggle, 1e-7);
  EXPECT_EQ(v.label, ClassLabel::NonMonotone);
  ASSERT_TRUE(v.witness.has_value());
}

TEST(Bounds, ExponentialChainIsEquality) {
  const auto prof = aging::profile(HazardModel::exponential(3), testing_support::linear_grid(0.1, 4, 16));
  const auto rep = aging::check_bounds(prof);
  EXPECT_TRUE(rep.all_hold());
  EXPECT_EQ(rep.fr_label, ClassLabel::Constant);
  for (const auto& row : prof.rows) {
    EXPECT_NEAR(row.ai, 1.0, 1e-12);
    EXPECT_NEAR(row.gai, 1.0, 1e-12);
    EXPECT_NEAR(row.hai, 1.0, 1e-12);
  }
}

TEST(Bounds, WeibullConstants) {
  const auto prof = aging::profile(HazardModel::weibull(0.5, 1.5), testing_support::linear_grid(0.1, 5, 16));
  EXPECT_TRUE(aging::check_bounds(prof).all_hold());
  for (const auto& row : prof.rows) {
    EXPECT_NEAR(row.ai, 1.5, 1e-9);
    EXPECT_NEAR(row.gai, std::exp(0.5), 1e-9);
    EXPECT_NEAR(row.hai, 2.0, 1e-9);
    EXPECT_LE(row.ai, row.gai);
    EXPECT_LE(row.gai, row.hai);
  }
}

TEST(Bounds, ErlangLikeIfrHasGaiAboveOne) {
  const auto prof = aging::profile(HazardModel::erlang_like(1), testing_support::linear_grid(0.1, 5, 16));
  const auto rep = aging::check_bounds(prof);
  EXPECT_TRUE(rep.all_hold());
  EXPECT_EQ(rep.fr_label, ClassLabel::Increasing);
  for (const auto& row : prof.rows) EXPECT_GE(row.gai, 1.0);
}

TEST(Bounds, RandomModelsSatisfyChain) {
  testing_support::ModelSampler rng(99);
  for (int i = 0; i < 40; ++i) {
    const auto m = rng.zero_left();
    const auto prof = aging::profile(m, testing_support::linear_grid(0.02, testing_support::horizon(m), 24));
    const auto rep = aging::check_bounds(prof);
    EXPECT_TRUE(rep.all_hold()) << m.describe() << " violations=" << rep.violations();
  }
}

TEST(Bounds, GridExtremesAloneAreNotEnough) {
  // Over a window that starts at 0, a decreasing Weibull hazard exceeds every
  // grid value, so r / max_grid r is not a valid lower bound for L. The
  // report uses extremes over the whole averaging window instead.
  const auto prof = aging::profile(HazardModel::weibull(1, 0.5), testing_support::linear_grid(1, 4, 16));
  const auto& first = prof.rows.front();
  EXPECT_LT(first.ai, 1.0);  // r / max over {grid} = 1 would exceed L
  EXPECT_TRUE(aging::check_bounds(prof).all_hold());
  EXPECT_TRUE(std::isinf(first.r_max));
}
