#include <gtest/gtest.h>

#include "scatterkit/potentials.hpp"

using namespace scatterkit;

TEST(Potentials, FamilyNamesRoundTrip) {
  for (Family f : {Family::Free, Family::Delta, Family::SquareWell, Family::Sech2, Family::Linear})
    EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_THROW(parse_family("harmonic"), InvalidArgument);
}

TEST(Potentials, SquareWellEvaluation) {
  const auto p = square_well(1.0, 2.0);
  EXPECT_EQ(evaluate(p, 0.0), 1.0);
  EXPECT_EQ(evaluate(p, 0.99), 1.0);
  EXPECT_EQ(evaluate(p, 1.0), 0.5);
  EXPECT_EQ(evaluate(p, -1.0), 0.5);
  EXPECT_EQ(evaluate(p, 1.5), 0.0);
  EXPECT_EQ(evaluate(p, -7.0), 0.0);
}

TEST(Potentials, Sech2AndLinear) {
  const auto s = sech2_potential(-0.7, 2.0);
  EXPECT_DOUBLE_EQ(evaluate(s, 0.0), -0.7);
  EXPECT_NEAR(evaluate(s, 0.5), -0.7 / std::pow(std::cosh(1.0), 2), 1e-15);
  EXPECT_LT(std::abs(evaluate(s, 40.0)), 1e-30);
  const auto l = make_potential(Family::Linear, {{"g", 2.5}});
  EXPECT_DOUBLE_EQ(evaluate(l, -3.0), -7.5);
  EXPECT_EQ(evaluate(free_potential(), 3.0), 0.0);
}

TEST(Potentials, DeltaHasNoPointwiseValue) {
  EXPECT_THROW(evaluate(delta_potential(), 0.0), UnsupportedOperation);
  EXPECT_THROW(evaluate(free_potential(), std::nan("")), InvalidArgument);
}

TEST(Potentials, Validation) {
  EXPECT_THROW(make_potential(Family::SquareWell, {{"V0", 1.0}}), InvalidArgument);
  EXPECT_THROW(make_potential(Family::SquareWell, {{"V0", 1.0}, {"a", 0.0}}), InvalidArgument);
  EXPECT_THROW(make_potential(Family::SquareWell, {{"V0", 1.0}, {"a", 1.0}, {"b", 1.0}}), InvalidArgument);
  EXPECT_THROW(make_potential(Family::Sech2, {{"V0", 1.0}, {"mu", -1.0}}), InvalidArgument);
  EXPECT_THROW(make_potential(Family::Linear, {{"g", 0.0}}), InvalidArgument);
  EXPECT_THROW(make_potential(Family::Free, {{"g", 0.0}}), InvalidArgument);
  EXPECT_EQ(delta_potential().strength, -1.0);
  EXPECT_EQ(make_potential(Family::Sech2, {{"V0", 0.3}}).inverse_range, 1.0);
}

TEST(Potentials, SpecGrammar) {
  const auto p = parse_potential_spec("squarewell:V0=1.0,a=2.0");
  EXPECT_EQ(p, square_well(1.0, 2.0));
  EXPECT_EQ(potential_spec(p), "squarewell:V0=1,a=2");
  EXPECT_EQ(parse_potential_spec("free"), free_potential());
  EXPECT_EQ(potential_spec(parse_potential_spec("delta")), "delta:g=-1");
  EXPECT_EQ(potential_spec(parse_potential_spec("sech2:V0=-0.7")), "sech2:V0=-0.69999999999999996,mu=1");
  for (const char* bad : {"squarewell:V0=0.5", "squarewell:V0=x,a=1", "squarewell:V0=1,a=2,", "squarewell:",
                          "well:V0=1", "sech2:V0=1,V0=2", "squarewell:V0=1e400,a=1", "delta:g=nan", "sech2:=1"})
    EXPECT_THROW(parse_potential_spec(bad), InvalidArgument) << bad;
}

TEST(Potentials, CanonicalSpecRoundTrips) {
  for (const char* s : {"free", "delta:g=0.3", "squarewell:V0=-1.25,a=0.1", "sech2:V0=0.9,mu=1.5", "linear:g=3"}) {
    const auto p = parse_potential_spec(s);
    EXPECT_EQ(parse_potential_spec(potential_spec(p)), p);
    EXPECT_EQ(potential_spec(parse_potential_spec(potential_spec(p))), potential_spec(p));
  }
}

TEST(Potentials, NumberParsing) {
  EXPECT_EQ(parse_number("+1.5", "x"), 1.5);
  EXPECT_EQ(parse_number("-2e-3", "x"), -2e-3);
  EXPECT_THROW(parse_number("1.5abc", "x"), InvalidArgument);
  EXPECT_THROW(parse_number("", "x"), InvalidArgument);
  EXPECT_THROW(parse_number("inf", "x"), InvalidArgument);
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(parse_number(format_number(1.0 / 3.0), "x"), 1.0 / 3.0);
}
