#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "dynlink/embedding.hpp"
#include "dynlink/error.hpp"
#include "dynlink/rng.hpp"

namespace dynlink {
namespace {

using cplx = std::complex<double>;

ComplexVec make(std::initializer_list<cplx> xs) {
  ComplexVec v(xs.size());
  std::size_t k = 0;
  for (cplx x : xs) {
    v.re[k] = x.real();
    v.im[k] = x.imag();
    ++k;
  }
  return v;
}

ComplexVec random_vec(Rng& rng, std::size_t d) {
  ComplexVec v(d);
  for (std::size_t k = 0; k < d; ++k) {
    v.re[k] = rng.uniform(-2.0, 2.0);
    v.im[k] = rng.uniform(-2.0, 2.0);
  }
  return v;
}

/// Full d x d complex matrix-vector product, then the Hermitian inner product.
double dense_oracle(const ComplexVec& vi, const DiagonalPhase& w, const ComplexVec& vj) {
  const std::size_t d = vi.dim();
  std::vector<cplx> mat(d * d, 0.0);
  for (std::size_t k = 0; k < d; ++k) mat[k * d + k] = std::polar(1.0, w.theta[k]);
  std::vector<cplx> wv(d, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) wv[r] += mat[r * d + c] * cplx(vj.re[c], vj.im[c]);
  }
  cplx acc = 0.0;
  for (std::size_t k = 0; k < d; ++k) acc += std::conj(cplx(vi.re[k], vi.im[k])) * wv[k];
  return acc.real();
}

TEST(HermitianScore, IdentityCase) {
  const ComplexVec v = make({{1.0, 0.0}});
  EXPECT_DOUBLE_EQ(hermitian_score(v.view(), DiagonalPhase(1, 0.0), v.view()), 1.0);
}

// conj(1) * i * i = -1 and conj(i) * i * 1 = 1: only the sine term survives.
TEST(HermitianScore, QuarterTurnPicksSinTerm) {
  const ComplexVec one = make({{1.0, 0.0}});
  const ComplexVec unit_i = make({{0.0, 1.0}});
  const DiagonalPhase w(1, std::numbers::pi / 2);
  EXPECT_NEAR(hermitian_score(one.view(), w, unit_i.view()), -1.0, 1e-15);
  EXPECT_NEAR(hermitian_score(unit_i.view(), w, one.view()), 1.0, 1e-15);
}

// Reference value from tests/oracle/freeze_values.py (numpy).
TEST(HermitianScore, FrozenNumpyFixture) {
  const ComplexVec vi = make({{0.3, -0.2}, {-0.7, 0.1}, {0.25, 0.9}, {-0.05, -0.4}});
  const ComplexVec vj = make({{-0.6, 0.5}, {0.2, 0.3}, {0.8, -0.1}, {0.45, 0.15}});
  const DiagonalPhase w(std::vector<double>{0.4, 2.1, -1.3, 3.0});
  EXPECT_NEAR(hermitian_score(vi.view(), w, vj.view()), -0.6466032001627366, 1e-14);
  EXPECT_NEAR(context_score(vi.view(), vj.view()), -0.3625, 1e-14);
}

TEST(HermitianScore, MatchesDenseOracleD4) {
  Rng rng(5);
  for (int n = 0; n < 200; ++n) {
    const ComplexVec vi = random_vec(rng, 4), vj = random_vec(rng, 4);
    DiagonalPhase w(4);
    for (double& t : w.theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    EXPECT_NEAR(hermitian_score(vi.view(), w, vj.view()), dense_oracle(vi, w, vj), 1e-12);
  }
}

TEST(HermitianScore, DimensionMismatchIsContractViolation) {
  const ComplexVec a(2), b(3);
  EXPECT_THROW(hermitian_score(a.view(), DiagonalPhase(2), b.view()), ContractViolation);
  EXPECT_THROW(hermitian_score(a.view(), DiagonalPhase(3), a.view()), ContractViolation);
  EXPECT_THROW(context_score(a.view(), b.view()), ContractViolation);
}

TEST(ContextScore, MatchingVectorsGiveHermitianNorm) {
  const ComplexVec v = make({{1.0, 0.0}, {0.0, 1.0}});
  EXPECT_DOUBLE_EQ(context_score(v.view(), v.view()), 2.0);
  const ComplexVec x = make({{1.0, 0.0}, {0.0, 0.0}});
  const ComplexVec y = make({{0.0, 0.0}, {1.0, 0.0}});
  EXPECT_DOUBLE_EQ(context_score(x.view(), y.view()), 0.0);
}

TEST(ContextScore, EqualsHermitianWithZeroPhases) {
  Rng rng(8);
  for (int n = 0; n < 100; ++n) {
    const std::size_t d = 1 + rng.below(8);
    const ComplexVec a = random_vec(rng, d), b = random_vec(rng, d);
    EXPECT_EQ(context_score(a.view(), b.view()), hermitian_score(a.view(), DiagonalPhase(d), b.view()));
  }
}

TEST(Property, SymmetricAtZeroPhase) {
  Rng rng(13);
  for (int n = 0; n < 1000; ++n) {
    const std::size_t d = 1 + rng.below(8);
    const ComplexVec a = random_vec(rng, d), b = random_vec(rng, d);
    const DiagonalPhase w(d, 0.0);
    ASSERT_EQ(hermitian_score(a.view(), w, b.view()), hermitian_score(b.view(), w, a.view()));
  }
}

// cos(pi/2) rounds to 6.1e-17 in double, which bounds how far from exact
// the antisymmetry can be.
TEST(Property, AntisymmetricAtQuarterTurn) {
  Rng rng(17);
  for (int n = 0; n < 1000; ++n) {
    const std::size_t d = 1 + rng.below(8);
    const ComplexVec a = random_vec(rng, d), b = random_vec(rng, d);
    const DiagonalPhase w(d, std::numbers::pi / 2);
    const double ab = hermitian_score(a.view(), w, b.view());
    const double ba = hermitian_score(b.view(), w, a.view());
    ASSERT_NEAR(ab, -ba, 1e-14);
  }
}

TEST(Property, BilinearInRealScalars) {
  Rng rng(19);
  for (int n = 0; n < 1000; ++n) {
    const std::size_t d = 1 + rng.below(8);
    const ComplexVec x = random_vec(rng, d), y = random_vec(rng, d), z = random_vec(rng, d);
    DiagonalPhase w(d);
    for (double& t : w.theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double alpha = rng.uniform(-3.0, 3.0), beta = rng.uniform(-3.0, 3.0);
    ComplexVec mix(d);
    for (std::size_t k = 0; k < d; ++k) {
      mix.re[k] = alpha * x.re[k] + beta * y.re[k];
      mix.im[k] = alpha * x.im[k] + beta * y.im[k];
    }
    const double left = hermitian_score(mix.view(), w, z.view());
    const double right = alpha * hermitian_score(x.view(), w, z.view()) + beta * hermitian_score(y.view(), w, z.view());
    ASSERT_NEAR(left, right, 1e-12);
    const double left2 = hermitian_score(z.view(), w, mix.view());
    const double right2 = alpha * hermitian_score(z.view(), w, x.view()) + beta * hermitian_score(z.view(), w, y.view());
    ASSERT_NEAR(left2, right2, 1e-12);
  }
}

TEST(Sigmoid, FixedPoints) {
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_NEAR(sigmoid(50.0), 1.0, 1e-15);
  EXPECT_GT(sigmoid(-800.0), -1e-300);
  EXPECT_NEAR(log_sigmoid(0.0), std::log(0.5), 1e-15);
  EXPECT_TRUE(std::isfinite(log_sigmoid(-800.0)));
}

TEST(Sigmoid, ComplementIdentity) {
  Rng rng(23);
  for (int n = 0; n < 1000; ++n) {
    const double x = rng.uniform(-40.0, 40.0);
    ASSERT_NEAR(sigmoid(x) + sigmoid(-x), 1.0, 1e-15);
    const LogisticPair lp = logistic_pair(x);
    ASSERT_NEAR(lp.sigmoid_neg, sigmoid(-x), 1e-15);
    ASSERT_NEAR(lp.log_sigmoid, log_sigmoid(x), 1e-13);
  }
}

TEST(InitState, DeterministicAndUnitModulus) {
  const EmbeddingState a = init_state(30, 3, 77);
  const EmbeddingState b = init_state(30, 3, 77);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, init_state(30, 3, 78));
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(a.theta_f.modulus(k), 1.0, 1e-15);
    EXPECT_NEAR(a.theta_d.modulus(k), 1.0, 1e-15);
  }
  EXPECT_LE(a.max_abs(), 0.5 / 3.0);
  EXPECT_TRUE(a.all_finite());
}

TEST(InitState, EntryMeanNearZero) {
  // 12500 nodes x 4 dims x (re, im) = 1e5 entries per block
  const EmbeddingState s = init_state(12500, 4, 5);
  const auto xs = s.v_f.raw();
  ASSERT_EQ(xs.size(), 100000u);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  const double width = 2.0 * 0.5 / 4.0;
  const double sigma = width / std::sqrt(12.0) / std::sqrt(static_cast<double>(xs.size()));
  EXPECT_LT(std::abs(mean), 3.0 * sigma);
}

TEST(ModelFile, RoundTripIsExact) {
  EmbeddingState s = init_state(17, 5, 4);
  s.v_d.raw()[3] = 1.0 / 3.0;
  s.theta_f.theta[0] = -1e-300;
  std::stringstream buf;
  write_model(buf, s);
  EXPECT_EQ(read_model(buf), s);
}

TEST(ModelFile, RejectsGarbage) {
  std::stringstream bad("not-a-model 1\n");
  EXPECT_THROW(read_model(bad), IoError);
  std::stringstream buf;
  write_model(buf, init_state(3, 2, 1));
  const std::string text = buf.str();
  std::stringstream truncated(text.substr(0, text.size() / 2));
  EXPECT_THROW(read_model(truncated), IoError);
  EXPECT_THROW(load_model("/nonexistent/model.txt"), IoError);
}

}  // namespace
}  // namespace dynlink
