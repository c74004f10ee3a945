// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qwalk/lattice_state.hpp"

#include <gtest/gtest.h>

#include "qwalk/measurement.hpp"
#include "unit/test_util.hpp"

namespace qwalk {
namespace {

TEST(LatticeState, localized_state_at_origin) {
  const PureState psi = new_localized(25, 0, Spin::Up);
  EXPECT_EQ(psi.dim(), 102u);
  EXPECT_EQ(psi.amplitude(0, Spin::Up), cplx(1.0));
  EXPECT_EQ(psi.norm_squared(), 1.0);
  EXPECT_EQ(position_distribution(psi).at(0), 1.0);
}

TEST(LatticeState, basis_order_is_site_then_spin) {
  const PureState psi = new_localized(1, 0, Spin::Down);
  const std::vector<cplx> expected{0, 0, 0, 1, 0, 0};
  ASSERT_EQ(psi.amplitudes().size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(psi.amplitudes()[i], expected[i]);
}

TEST(LatticeState, boundary_site_is_rejected) {
  try {
    new_localized(1, 1, Spin::Up);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("|x0| < L"), std::string::npos);
  }
  EXPECT_THROW(new_localized(3, -3, Spin::Down), DomainError);
  EXPECT_THROW(new_localized(0, 0, Spin::Up), DomainError);
}

TEST(LatticeState, basis_round_trip) {
  for (int L : {1, 4, 17}) {
    for (std::size_t i = 0; i < dimension(L); ++i) {
      EXPECT_EQ(basis_index(L, basis_site(L, i), basis_spin(i)), i);
    }
  }
}

TEST(LatticeState, wrong_length_is_a_shape_error) {
  EXPECT_THROW(PureState(2, std::vector<cplx>(9)), ShapeError);
  EXPECT_THROW(DensityOperator(1, std::vector<cplx>(35)), ShapeError);
}

TEST(LatticeState, density_of_basis_state_is_a_projector) {
  const DensityOperator rho = to_density(new_localized(3, 0, Spin::Up));
  const std::size_t k = basis_index(3, 0, Spin::Up);
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j)
      EXPECT_EQ(rho(i, j), (i == k && j == k) ? cplx(1.0) : cplx(0.0));
}

TEST(LatticeState, density_of_equal_superposition) {
  const DensityOperator rho = to_density(new_localized(2, 0, Spinor::equatorial(0.0)));
  const std::size_t u = basis_index(2, 0, Spin::Up);
  const std::size_t d = basis_index(2, 0, Spin::Down);
  for (std::size_t i : {u, d})
    for (std::size_t j : {u, d}) EXPECT_NEAR(std::abs(rho(i, j) - 0.5), 0.0, 1e-15);
}

TEST(LatticeState, density_invariants_on_random_states) {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const PureState psi = test::random_state(6, seed);
    const DensityOperator rho = to_density(psi);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(rho.trace().imag(), 0.0, 1e-12);
    EXPECT_LE(rho.max_hermitian_defect(), 1e-12);
    EXPECT_GE(test::min_eigenvalue(rho), -1e-10);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(test::to_eigen(rho));
    EXPECT_NEAR(svd.singularValues()(0), 1.0, 1e-10);
    EXPECT_LE(svd.singularValues()(1), 1e-10);

    const PositionDistribution from_rho = position_distribution(rho);
    const PositionDistribution from_psi = position_distribution(psi);
    for (int x = -6; x <= 6; ++x) EXPECT_NEAR(from_rho.at(x), from_psi.at(x), 1e-14);
  }
}

TEST(LatticeState, inner_product) {
  const PureState up = new_localized(2, 0, Spin::Up);
  const PureState down = new_localized(2, 0, Spin::Down);
  EXPECT_EQ(inner(up, up), cplx(1.0));
  EXPECT_EQ(inner(up, down), cplx(0.0));
  for (unsigned seed = 10; seed < 15; ++seed) {
    const PureState a = test::random_state(4, seed);
    const PureState b = test::random_state(4, seed + 100);
    EXPECT_NEAR(std::abs(inner(a, b) - std::conj(inner(b, a))), 0.0, 1e-15);
    EXPECT_NEAR(inner(a, a).real(), a.norm_squared(), 1e-14);
    EXPECT_NEAR(inner(a, a).imag(), 0.0, 1e-14);
  }
  EXPECT_THROW(inner(up, new_localized(3, 0, Spin::Up)), ShapeError);
}

TEST(LatticeState, json_round_trip) {
  const PureState psi = test::random_state(3, 42);
  const nlohmann::json j = to_json(psi);
  EXPECT_EQ(j.at("half_width"), 3);
  EXPECT_EQ(j.at("amplitudes").size(), psi.dim());
  const PureState back = pure_state_from_json(nlohmann::json::parse(j.dump()));
  for (std::size_t i = 0; i < psi.dim(); ++i) EXPECT_EQ(back.amplitudes()[i], psi.amplitudes()[i]);
}

}  // namespace
}  // namespace qwalk
