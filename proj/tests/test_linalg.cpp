#include <catch2/catch_amalgamated.hpp>

#include "fuzzobs/fuzzobs.hpp"
#include "test_support.hpp"

using namespace fuzzobs;
using testsupport::rng;

TEST_CASE("hermitian_eig on fixed matrices") {
  SECTION("identity") {
    const auto eig = hermitian_eig(CMat::identity(3));
    for (double v : eig.eigenvalues) CHECK(v == Catch::Approx(1.0).margin(1e-14));
  }

  SECTION("diagonal") {
    CMat h(2);
    h(0, 0) = 0.2;
    h(1, 1) = 0.9;
    const auto eig = hermitian_eig(h);
    CHECK(eig.eigenvalues[0] == Catch::Approx(0.2).margin(1e-14));
    CHECK(eig.eigenvalues[1] == Catch::Approx(0.9).margin(1e-14));
    // Eigenvectors are the standard basis up to phase.
    CHECK(std::abs(eig.eigenvectors(0, 0)) == Catch::Approx(1.0).margin(1e-12));
    CHECK(std::abs(eig.eigenvectors(1, 1)) == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("rank-one 2x2") {
    CMat h(2);
    h(0, 0) = h(0, 1) = h(1, 0) = h(1, 1) = 0.5;
    // Oracle: characteristic polynomial of the 2x2 block.
    const auto [lo, hi] = testsupport::eig2x2(h);
    CHECK(lo == Catch::Approx(0.0).margin(1e-14));
    CHECK(hi == Catch::Approx(1.0).margin(1e-14));
    const auto eig = hermitian_eig(h);
    CHECK(eig.eigenvalues[0] == Catch::Approx(lo).margin(1e-12));
    CHECK(eig.eigenvalues[1] == Catch::Approx(hi).margin(1e-12));
  }

  SECTION("rejects non-Hermitian input") {
    CMat h(2);
    h(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(h), NotHermitianError);
  }
}

TEST_CASE("hermitian_eig invariants on random matrices") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto gen = rng(1000 + seed);
    const int dim = 2 + static_cast<int>(seed % 15);
    const CMat h = testsupport::random_hermitian(dim, gen);
    const auto eig = hermitian_eig(h);

    // Reconstruction V L V^dagger = H.
    CMat rebuilt(dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        Complex s = 0.0;
        for (int k = 0; k < dim; ++k)
          s += eig.eigenvectors(r, k) * eig.eigenvalues[k] * std::conj(eig.eigenvectors(c, k));
        rebuilt(r, c) = s;
      }
    REQUIRE(max_abs_diff(rebuilt, h) <= 1e-10 * (1.0 + h.max_abs()));

    // Columns orthonormal.
    REQUIRE(max_abs_diff(eig.eigenvectors.adjoint() * eig.eigenvectors,
                         CMat::identity(dim)) <= 1e-10);

    // Ascending order.
    for (std::size_t i = 1; i < eig.eigenvalues.size(); ++i)
      REQUIRE(eig.eigenvalues[i - 1] <= eig.eigenvalues[i]);

    // Trace equals the eigenvalue sum.
    double sum = 0.0;
    for (double v : eig.eigenvalues) sum += v;
    REQUIRE(std::abs(sum - h.trace().real()) <= 1e-9 * (1.0 + std::abs(sum)));

    // Spectrum is unitarily invariant; conjugate by eigenvectors of another
    // random Hermitian matrix.
    const CMat u = hermitian_eig(testsupport::random_hermitian(dim, gen)).eigenvectors;
    const CMat conjugated = u * h * u.adjoint();
    const auto eig2 = hermitian_eig(conjugated, 1e-8);
    for (int i = 0; i < dim; ++i)
      REQUIRE(std::abs(eig.eigenvalues[i] - eig2.eigenvalues[i]) <= 1e-9);

    // operator_norm agrees with the extreme eigenvalues.
    const double norm = operator_norm(h);
    REQUIRE(norm == Catch::Approx(std::max(std::abs(eig.eigenvalues.front()),
                                           std::abs(eig.eigenvalues.back())))
                        .margin(1e-10));
  }
}

TEST_CASE("operator_norm on fixed matrices") {
  CHECK(operator_norm(CMat(3)) == Catch::Approx(0.0).margin(1e-14));

  // Rank-one projection has norm one; scaling scales the spectrum.
  auto gen = rng(7);
  const auto psi = testsupport::random_state(4, gen);
  const CMat proj = outer(psi.amplitudes());
  CHECK(operator_norm(proj) == Catch::Approx(1.0).margin(1e-12));
  CHECK(operator_norm(0.7 * proj) == Catch::Approx(0.7).margin(1e-12));
  CHECK_THROWS_AS(operator_norm([] {
                    CMat h(2);
                    h(0, 1) = 1.0;
                    return h;
                  }()),
                  NotHermitianError);
}

TEST_CASE("is_effect") {
  CHECK(is_effect(CMat::identity(3)));
  CMat neg(2);
  neg(0, 0) = -0.1;
  neg(1, 1) = 0.5;
  CHECK_FALSE(is_effect(neg));

  // 0.3 P + 0.8 (I - P) has spectrum {0.3, 0.8}.
  auto gen = rng(11);
  const CMat p = outer(testsupport::random_state(3, gen).amplitudes());
  const CMat mix = 0.3 * p + 0.8 * (CMat::identity(3) - p);
  CHECK(is_effect(mix));

  CMat skew(2);
  skew(0, 1) = 1.0;
  CHECK_FALSE(is_effect(skew));
}

TEST_CASE("is_projection") {
  CHECK(is_projection(CMat::identity(3)));
  CHECK_FALSE(is_projection(0.5 * CMat::identity(2)));

  CMat half(2);
  half(0, 0) = half(0, 1) = half(1, 0) = half(1, 1) = 0.5;  // projector onto (1,1)/sqrt(2)
  CHECK(is_projection(half));

  // Projections are effects.
  auto gen = rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto eig = hermitian_eig(testsupport::random_hermitian(5, gen));
    CMat proj(5);
    for (int k = 0; k < 2; ++k)
      for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c)
          proj(r, c) += eig.eigenvectors(r, k) * std::conj(eig.eigenvectors(c, k));
    REQUIRE(is_projection(proj));
    REQUIRE(is_effect(proj));
  }
}

TEST_CASE("unitary_exp_i matches a Taylor-series oracle") {
  auto gen = rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const CMat h = testsupport::random_hermitian(4, gen);
    const double theta = 0.3 * (trial + 1);
    const CMat via_eig = unitary_exp_i(h, theta);
    const CMat via_taylor = testsupport::taylor_exp_i(h, theta);
    REQUIRE(max_abs_diff(via_eig, via_taylor) <= 1e-10);
    REQUIRE(max_abs_diff(via_eig.adjoint() * via_eig, CMat::identity(4)) <= 1e-12);
  }
}
