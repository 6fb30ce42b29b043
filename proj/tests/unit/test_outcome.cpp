#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sprint/angular.hpp"
#include "sprint/dynamics.hpp"
#include "sprint/outcome.hpp"

using namespace sprint;

namespace {

// Relative decay weight |F' m'> -> |F m> for the D2 line, summed over photon
// polarization, from explicit hyperfine-state decompositions.
double oracle_weight(double Fe, double me, double Fg, double mg) {
  const double I = 1.5, Je = 1.5, Jg = 0.5;
  static const oracle::ClebschGordan exc(Je, I), gnd(Jg, I), dip(Jg, 1.0);
  double total = 0.0;
  for (int q = -1; q <= 1; ++q) {
    double amp = 0.0;
    for (double mI = -I; mI <= I; mI += 1.0)
      for (double mJg = -Jg; mJg <= Jg; mJg += 1.0) {
        const double mJe = mJg + q;
        if (std::abs(mJe) > Je) continue;
        amp += gnd(mJg, mI, Fg, mg) * exc(mJe, mI, Fe, me) * dip(mJg, q, Je, mJe);
      }
    total += amp * amp;
  }
  return total;
}

std::array<double, 4> oracle_row(int Fe, int me) {
  std::array<double, 4> row{};
  row[0] = oracle_weight(Fe, me, 1, -1);
  row[1] = oracle_weight(Fe, me, 1, 0);
  row[2] = oracle_weight(Fe, me, 1, 1);
  for (int m = -2; m <= 2; ++m) row[3] += oracle_weight(Fe, me, 2, m);
  return row;
}

Trajectory blank(const LevelScheme& s) {
  const std::size_t ng = s.grounds.size(), ne = s.excited.size();
  Trajectory t;
  t.flux_T.assign(ng, 0.0);
  t.flux_R.assign(ng, 0.0);
  t.flux_Li.assign(ng, 0.0);
  t.flux_sp.assign(ne, 0.0);
  t.final_state.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(1 + 2 * ng + ne));
  return t;
}

}  // namespace

TEST(Angular, ThreeJMatchesBruteForceClebschGordan) {
  for (double j1 : {0.5, 1.0, 1.5, 2.0})
    for (double j2 : {0.5, 1.0, 1.5}) {
      const oracle::ClebschGordan cg(j1, j2);
      for (double J = std::abs(j1 - j2); J <= j1 + j2 + 1e-9; J += 1.0)
        for (double m1 = -j1; m1 <= j1; m1 += 1.0)
          for (double m2 = -j2; m2 <= j2; m2 += 1.0) {
            const double M = m1 + m2;
            if (std::abs(M) > J) continue;
            const double sign = std::lround(j1 - j2 + M) % 2 == 0 ? 1.0 : -1.0;
            const double expected = sign / std::sqrt(2 * J + 1) * cg(m1, m2, J, M);
            EXPECT_NEAR(wigner_3j(j1, j2, J, m1, m2, -M), expected, 1e-12)
                << j1 << " " << j2 << " " << J << " " << m1 << " " << m2;
          }
    }
  EXPECT_EQ(wigner_3j(1, 1, 3, 0, 0, 0), 0.0);
  EXPECT_EQ(wigner_3j(1, 1, 1, 1, 1, -1), 0.0);
}

TEST(Angular, SixJOrthogonality) {
  for (double j : {0.5, 1.5, 2.5})
    for (double jp : {0.5, 1.5, 2.5}) {
      const double a = 1.5, b = 1.0, c = 1.5, d = 1.0;
      double s = 0.0;
      for (double x = 0.5; x <= 2.5; x += 1.0)
        s += (2 * x + 1) * (2 * j + 1) * wigner_6j(a, b, x, c, d, j) * wigner_6j(a, b, x, c, d, jp);
      EXPECT_NEAR(s, j == jp ? 1.0 : 0.0, 1e-12) << j << " " << jp;
    }
  // {a b c; b a 0} = (-1)^(a+b+c) / sqrt((2a+1)(2b+1))
  EXPECT_NEAR(wigner_6j(0.5, 0.5, 1, 0.5, 0.5, 0), 0.5, 1e-15);
  EXPECT_NEAR(wigner_6j(1.5, 1, 1.5, 1, 1.5, 0), 1.0 / std::sqrt(12.0), 1e-15);
}

TEST(Branching, Rb87RowsMatchHyperfineOracle) {
  const auto scheme = rb87_scheme(0.18, 0.13);
  const auto B = branching_matrix(scheme);
  ASSERT_EQ(B.rows.size(), 4u);
  const double norm = [] {
    const auto r = oracle_row(0, 0);
    return r[0] + r[1] + r[2] + r[3];
  }();
  for (std::size_t e = 0; e < 4; ++e) {
    const auto qn = *scheme.excited[e].qn;
    const auto expected = oracle_row(qn.F, qn.m);
    double total = 0.0;
    for (int c = 0; c < 4; ++c) {
      EXPECT_NEAR(B.rows[e][c], expected[c] / norm, 1e-12) << scheme.excited[e].label << " col " << c;
      total += expected[c];
    }
    // every excited sublevel decays at the same total rate
    EXPECT_NEAR(total, norm, 1e-12);
  }
  const double third = 1.0 / 3, f = 5.0 / 12, s = 1.0 / 6;
  const std::array<std::array<double, 4>, 4> literal{{{third, third, third, 0}, {f, f, 0, s}, {f, 0, f, s}, {0, f, f, s}}};
  for (std::size_t e = 0; e < 4; ++e)
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(B.rows[e][c], literal[e][c], 1e-12);
}

TEST(Branching, CouplingRatioMatchesClebschGordan) {
  // |g'|^2 / |g|^2 from the G1 -> e and G1 -> e' weights equals the default ratio 5/4
  EXPECT_NEAR(oracle_weight(1, 0, 1, -1) / oracle_weight(0, 0, 1, -1), 5.0 / 4.0, 1e-12);
}

TEST(Branching, UnlabelledSchemesSplitEvenly) {
  const auto B3 = branching_matrix(three_level_scheme());
  ASSERT_EQ(B3.rows.size(), 1u);
  EXPECT_EQ(B3.rows[0], (std::array<double, 4>{0.5, 0.0, 0.5, 0.0}));
  const auto B4 = branching_matrix(four_level_scheme(-1));
  EXPECT_EQ(B4.rows[1], (std::array<double, 4>{0.5, 0.0, 0.5, 0.0}));

  auto s = three_level_scheme();
  s.excited.push_back({"dark", Manifold::primed, {}});
  EXPECT_THROW(branching_matrix(s), std::invalid_argument);
}

TEST(Classify, BooksFluxesByFinalGround) {
  const auto s = rb87_scheme(0.18, 0.13);
  const auto B = branching_matrix(s);
  auto t = blank(s);
  t.flux_R = {0.01, 0.02, 0.40};  // G1, G0, G2
  t.flux_T = {0.05, 0.00, 0.01};
  t.flux_Li = {0.10, 0.01, 0.10};
  t.flux_sp = {0.12, 0.06, 0.0, 0.0};
  t.final_state.amplitudes(0) = std::sqrt(0.02);  // unused source
  t.final_state.amplitudes(6) = std::sqrt(0.01);  // b,G2 photon still in the resonator
  t.residual_norm = 0.03;
  const auto out = classify(t, B, s);
  EXPECT_DOUBLE_EQ(out.at(Photon::R, Atom::toggle), 0.40);
  EXPECT_DOUBLE_EQ(out.at(Photon::R, Atom::no_toggle), 0.01);
  EXPECT_DOUBLE_EQ(out.at(Photon::R, Atom::lost), 0.02);
  EXPECT_DOUBLE_EQ(out.at(Photon::T, Atom::toggle), 0.01);
  EXPECT_DOUBLE_EQ(out.at(Photon::T, Atom::no_toggle), 0.05);
  // e splits 1/3 each way, e1' goes 5/12 G1, 5/12 G0, 1/6 F=2
  EXPECT_NEAR(out.at(Photon::L, Atom::toggle), 0.10 + 0.01 + 0.04, 1e-15);
  EXPECT_NEAR(out.at(Photon::L, Atom::no_toggle), 0.10 + 0.02 + 0.04 + 0.025, 1e-15);
  EXPECT_NEAR(out.at(Photon::L, Atom::lost), 0.01 + 0.04 + 0.025 + 0.01, 1e-15);
  EXPECT_NEAR(out.total(), 0.91, 1e-15);  // fluxes plus the 0.03 still in the system
  EXPECT_NEAR(out.fidelity(), 0.43 / 0.49, 1e-15);
  EXPECT_NEAR(out.toggle_given_R(), 0.40 / 0.43, 1e-15);
}

TEST(Classify, StartingInG2SwapsToggleMeaning) {
  const auto s = with_initial_ground(rb87_scheme(0.18, 0.13), "G2");
  auto t = blank(s);
  t.flux_R = {0.3, 0.0, 0.1};
  const auto out = classify(t, branching_matrix(s), s);
  EXPECT_DOUBLE_EQ(out.at(Photon::R, Atom::toggle), 0.3);
  EXPECT_DOUBLE_EQ(out.at(Photon::R, Atom::no_toggle), 0.1);
}

TEST(Classify, ThreeLevelNeverLosesTheAtom) {
  const auto s = three_level_scheme();
  auto t = blank(s);
  t.flux_sp = {0.5};
  t.flux_R = {0.2, 0.3};
  const auto out = classify(t, branching_matrix(s), s);
  EXPECT_EQ(out.atom(Atom::lost), 0.0);
  EXPECT_DOUBLE_EQ(out.at(Photon::L, Atom::toggle), 0.25);
}

TEST(Classify, IdentityBranchingIsPureRelabeling) {
  const auto s = four_level_scheme(-1);
  BranchingMatrix B = branching_matrix(s);
  for (auto& row : B.rows) row = {1.0, 0.0, 0.0, 0.0};
  SystemParams p;
  p.gamma = 1e-9;
  p.gamma_prime = 1e-9;
  const auto traj = integrate(build_generator(p, s), shaped_schedule(gaussian_envelope(53.0)));
  const auto out = classify(traj, B, s);
  EXPECT_DOUBLE_EQ(out.at(Photon::R, Atom::toggle), traj.flux_R[1]);
  EXPECT_DOUBLE_EQ(out.at(Photon::R, Atom::no_toggle), traj.flux_R[0]);
  EXPECT_DOUBLE_EQ(out.at(Photon::T, Atom::toggle), traj.flux_T[1]);
  EXPECT_DOUBLE_EQ(out.at(Photon::T, Atom::no_toggle), traj.flux_T[0]);
  EXPECT_NEAR(out.total(), 1.0, 1e-8);
}

TEST(Classify, RejectsInconsistentInput) {
  auto s = rb87_scheme(0.18, 0.13);
  const auto B = branching_matrix(s);
  auto t = blank(s);
  t.flux_T.pop_back();
  EXPECT_THROW(classify(t, B, s), std::invalid_argument);
  s.initial_ground = "G0";
  EXPECT_THROW(classify(blank(s), B, s), std::invalid_argument);
}

TEST(OutcomeTable, NamesAndArithmetic) {
  EXPECT_EQ(to_string(Atom::no_toggle), "No toggle");
  EXPECT_EQ(to_string(Atom::lost), "Atom lost");
  EXPECT_EQ(to_string(Photon::L), "L");
  OutcomeTable a;
  a.at(Photon::R, Atom::toggle) = 0.5;
  a.residual_norm = 0.1;
  OutcomeTable b = a;
  b += a;
  b *= 0.5;
  EXPECT_DOUBLE_EQ(b.at(Photon::R, Atom::toggle), 0.5);
  EXPECT_DOUBLE_EQ(b.residual_norm, 0.1);
  EXPECT_EQ(OutcomeTable{}.fidelity(), 0.0);
}
