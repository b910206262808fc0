#include "mti/csw.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mti;
using S64 = Sl2Matrix<std::int64_t>;
using M = IntMatrix<std::int64_t>;

namespace {

bool in_lattice(const M& m, std::int64_t x, std::int64_t y) {
  // m^-1 (x, y) is integral iff adj(m) (x, y) is divisible by det m.
  const std::int64_t det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const std::int64_t u = m(1, 1) * x - m(0, 1) * y, v = -m(1, 0) * x + m(0, 0) * y;
  return u % det == 0 && v % det == 0;
}

double modular_gap(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

const std::vector<S64> kSamples{S64(2, 1, 1, 1), S64(3, 1, 2, 1),   S64(10, 3, 3, 1), S64(4, 3, 5, 4),
                                S64(27, 1, -1, 0), S64(-5, 2, -3, 1), S64(-2, -1, -1, -1), S64(1, 2, 3, 7)};

}  // namespace

TEST(CosetReps, CountAndDistinctness) {
  EXPECT_EQ(coset_reps(M{{1, 0}, {0, 5}}).size(), 5u);
  EXPECT_EQ(coset_reps(M{{2, 1}, {1, 1}}).size(), 1u);
  for (const M& m : {M{{1, 0}, {0, 5}}, M{{3, 1}, {1, 4}}, M{{6, 4}, {2, 8}}, M{{-3, 1}, {-1, -1}}}) {
    const auto reps = coset_reps(m);
    const std::int64_t det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    ASSERT_EQ(std::int64_t(reps.size()), std::abs(det));
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j)
        EXPECT_FALSE(in_lattice(m, reps[i][0] - reps[j][0], reps[i][1] - reps[j][1])) << m.str();
  }
  EXPECT_THROW((void)coset_reps(M{{1, 2}, {2, 4}}), std::domain_error);
}

TEST(GaussSum, AgreesWithBoxSumInModularConvention) {
  for (const auto& a : kSamples)
    for (std::int64_t k : {1, 2, 3, 5}) {
      const auto ours = csw_invariant(a, k);
      const auto ref = oracle::csw_naive(a, k, true, true, -1);
      EXPECT_LT(std::abs(ours - ref), 1e-10) << a.str() << " k=" << k;
    }
  EXPECT_LT(std::abs(csw_invariant(S64(2, 1, 1, 1), 1) - oracle::csw_naive(S64(2, 1, 1, 1), 1, true, true, -1)), 1e-10);
  EXPECT_LT(std::abs(csw_invariant(S64(3, 1, 2, 1), 2) - oracle::csw_naive(S64(3, 1, 2, 1), 2, true, true, -1)), 1e-10);
}

TEST(GaussSum, PrintedConventionWhenTheFormIsCosetInvariant) {
  // Q_A(x, y) need not be constant on cosets of (A - Id) Z^2. When it happens to be,
  // the coset sum and the box average agree.
  std::size_t compared = 0;
  for (const auto& a : kSamples) {
    const auto t = a.trace();
    bool invariant = true;
    for (int sign : {1, -1}) {
      const std::int64_t den = t - 2 * sign;
      const S64 sa = sign > 0 ? a : -a;
      // Columns of sA - Id generate the lattice; test each generator shift on a grid.
      const std::array<std::array<std::int64_t, 2>, 2> gens{{{sa.a() - 1, sa.c()}, {sa.b(), sa.d() - 1}}};
      for (std::int64_t x = 0; x < 4 && invariant; ++x)
        for (std::int64_t y = 0; y < 4 && invariant; ++y)
          for (const auto& g : gens) {
            const auto q0 = gauss_form(a, x, y, false), q1 = gauss_form(a, x + g[0], y + g[1], false);
            if ((q1 - q0) % den != 0) invariant = false;
          }
    }
    if (!invariant) continue;
    ++compared;
    for (std::int64_t k : {1, 2, 4})
      EXPECT_LT(std::abs(csw_invariant(a, k, kPrintedConvention) - oracle::csw_naive(a, k, false, false, +1)), 1e-10)
          << a.str();
  }
  EXPECT_GT(compared, 0u);
}

TEST(GaussSum, RepresentativeIndependence) {
  // Shifting v by (A - Id) w leaves r P(v) mod (t - 2) unchanged, exactly.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> w(-7, 7);
  for (const auto& a : kSamples) {
    const auto t = a.trace();
    for (int sign : {1, -1}) {
      const std::int64_t den = t - 2 * sign;
      const S64 sa = sign > 0 ? a : -a;
      for (const auto& v : coset_reps(sa.minus_identity()))
        for (int trial = 0; trial < 10; ++trial) {
          const std::int64_t w0 = w(rng), w1 = w(rng);
          const std::int64_t x = v[0] + (sa.a() - 1) * w0 + sa.b() * w1;
          const std::int64_t y = v[1] + sa.c() * w0 + (sa.d() - 1) * w1;
          EXPECT_EQ(mod_floor(gauss_form(a, x, y, true) - gauss_form(a, v[0], v[1], true), std::abs(den)), 0)
              << a.str();
        }
    }
  }
}

TEST(GaussSum, ConjugationInvariance) {
  std::mt19937_64 rng(9);
  for (const auto& a : kSamples) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto g = oracle::random_sl2(rng, 3, 2);
      const auto b = g * a * g.inverse();
      for (std::int64_t k : {1, 3}) EXPECT_LT(std::abs(csw_invariant(a, k) - csw_invariant(b, k)), 1e-10) << a.str();
    }
  }
}

TEST(GaussSum, Validation) {
  EXPECT_THROW((void)csw_invariant(S64(1, 1, 0, 1), 1), std::domain_error);
  EXPECT_THROW((void)csw_invariant(S64(2, 1, 1, 1), 0), std::invalid_argument);
  EXPECT_EQ(csw_level_modulus(1), 24);
}

TEST(ModularData, UnitarityAndRelations) {
  for (std::int64_t k = 1; k <= 8; ++k) {
    const auto md = su2_modular_data(k);
    const auto id = Eigen::MatrixXcd::Identity(k + 1, k + 1);
    EXPECT_LT(modular_gap(md.s * md.s.adjoint(), id), 1e-12);
    EXPECT_LT(modular_gap(md.t * md.t.adjoint(), id), 1e-12);
    const Eigen::MatrixXcd st = md.s * md.t;
    EXPECT_LT(modular_gap(st * st * st, md.s * md.s), 1e-12) << k;
    EXPECT_LT(modular_gap(md.s * md.s * md.s * md.s, id), 1e-12);
    EXPECT_LT(modular_gap(md.s, md.s.transpose()), 1e-15);
  }
  EXPECT_THROW((void)su2_modular_data(0), std::invalid_argument);
}

TEST(ModularData, RepresentationIsMultiplicative) {
  std::mt19937_64 rng(17);
  for (std::int64_t k : {1, 2, 5}) {
    const auto md = su2_modular_data(k);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = oracle::random_sl2(rng, 3, 3), b = oracle::random_sl2(rng, 3, 3);
      EXPECT_LT(modular_gap(rep_matrix(a * b, md), rep_matrix(a, md) * rep_matrix(b, md)), 1e-9)
          << a.str() << " " << b.str();
    }
  }
}

TEST(Words, ExamplesAndRoundTrip) {
  EXPECT_EQ(word_string(word_in_generators(generator_t<std::int64_t>())), "T");
  EXPECT_EQ(word_string(word_in_generators(generator_s<std::int64_t>())), "S");
  EXPECT_EQ(word_string(word_in_generators(S64(1, 0, 0, 1))), "T^0");
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = oracle::random_sl2(rng, 5, 4);
    EXPECT_EQ(word_product(word_in_generators(a)), a) << a.str();
    EXPECT_EQ(word_product(word_in_generators(-a)), -a) << a.str();
  }
  const auto big = Sl2Matrix<BigInt>(BigInt(1189), BigInt(360), BigInt(360), BigInt(109));
  EXPECT_EQ(word_product(word_in_generators(big)), big);
}

TEST(RepTrace, ModulusMatchesGaussSum) {
  for (std::int64_t k : {1, 2, 3}) {
    const auto a = S64(2, 1, 1, 1);
    EXPECT_NEAR(std::abs(rep_trace(a, k)), std::abs(csw_invariant(a, k)), 1e-10) << k;
  }
  for (const auto& a : kSamples)
    for (std::int64_t k = 1; k <= 6; ++k)
      EXPECT_NEAR(std::abs(rep_trace(a, k)), std::abs(csw_invariant(a, k)), 1e-9) << a.str() << " k=" << k;
}

TEST(RepTrace, CongruentPartnersModN) {
  for (const auto& a : {S64(2, 1, 1, 1), S64(3, 1, 2, 1)}) {
    for (std::int64_t k : {1, 2}) {
      const std::int64_t n = csw_level_modulus(k);
      const auto partners = congruent_partners(a, n);
      ASSERT_FALSE(partners.empty());
      for (const auto& b : partners) {
        EXPECT_EQ(reduce_mod(b, n), reduce_mod(a, n));
        EXPECT_LT(std::abs(rep_trace(a, k) - rep_trace(b, k)), 1e-8) << b.str();
        EXPECT_NEAR(std::abs(csw_invariant(a, k)), std::abs(csw_invariant(b, k)), 1e-8) << b.str();
      }
    }
  }
}
