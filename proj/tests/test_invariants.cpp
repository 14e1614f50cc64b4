#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "miquel/invariants.hpp"
#include "miquel/twobytwo.hpp"
#include "support.hpp"

using namespace miquel;

TEST_CASE("theta on the standard grid is pi/2 everywhere") {
  const auto th = theta_map(standard_grid(4, 2, 0));
  for (const auto& [k, v] : th) CHECK(v == doctest::Approx(M_PI / 2));
}

TEST_CASE("theta geometric value agrees with the phi expression") {
  // theta_map throws InconsistentPattern if the two routes disagree; also
  // assert the tighter bound explicitly.
  const TorusPattern p = testsup::forged(4, 2, 2, 0.09, 14);
  const PhiField f = extract_phi(p);
  const auto th = theta_map(p);
  for (int fy = 0; fy < 2; ++fy)
    for (int fx = 0; fx < 4; ++fx) {
      const double h = th.at({FaceId{fx, fy}, Axis::horizontal});
      const double want_h = normalize_angle(
          M_PI - 0.5 * (f.at(fx, fy, Dir::E) + f.at(fx + 1, fy, Dir::W)));
      CHECK(angle_dist(h, want_h) < 1e-9);
      const double v = th.at({FaceId{fx, fy}, Axis::vertical});
      const double want_v = normalize_angle(
          M_PI - 0.5 * (f.at(fx, fy, Dir::N) + f.at(fx, fy + 1, Dir::S)));
      CHECK(angle_dist(v, want_v) < 1e-9);
    }
}

TEST_CASE("theta vertex sums vanish mod 2*pi") {
  for (auto [m, n, s] : {std::tuple{4, 2, 0}, {4, 2, 2}, {2, 4, 0}}) {
    const TorusPattern p = testsup::forged(m, n, s, 0.09, 700 + m + 10 * n + s);
    CHECK(invariant_report(p).worst_theta_vertex_sum < 1e-9);
  }
}

TEST_CASE("gamma of null-homologous loops vanishes") {
  const TorusPattern p = testsup::forged(4, 2, 0, 0.09, 15);
  // boundary of the dual face around vertex (1,1)
  const std::vector<DirectedDualEdge> square = {
      {{0, 0}, {1, 0}}, {{1, 0}, {1, 1}}, {{1, 1}, {0, 1}}, {{0, 1}, {0, 0}}};
  CHECK(angle_dist(gamma(p, square), 0.0) < 1e-9);

  // backtracking loop
  const std::vector<DirectedDualEdge> pingpong = {{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}};
  CHECK(angle_dist(gamma(p, pingpong), 0.0) < 1e-9);

  // bad loops
  CHECK_THROWS_AS(gamma(p, {{{0, 0}, {1, 0}}}), InvalidLoop);
  CHECK_THROWS_AS(gamma(p, {{{0, 0}, {1, 1}}}), InvalidLoop);
}

TEST_CASE("gamma on the standard grid generators is zero") {
  const GammaValue g = gamma_generators(standard_grid(4, 2, 2));
  CHECK(angle_dist(g.horizontal, 0.0) < 1e-12);
  CHECK(angle_dist(g.vertical, 0.0) < 1e-12);
}

TEST_CASE("gamma is homology invariant") {
  for (auto [m, n, s] : {std::tuple{4, 2, 0}, {4, 2, 2}}) {
    const TorusPattern p = testsup::forged(m, n, s, 0.09, 800 + m + s);
    // vertical loops through different columns represent the same class
    auto column_loop = [&](int col) {
      std::vector<DirectedDualEdge> loop;
      for (int k = 0; k < p.n(); ++k)
        loop.push_back({FaceId{col, k}, FaceId{col, k + 1}});
      for (int k = col - p.s(); k < col; ++k)
        loop.push_back({FaceId{k, 0}, FaceId{k + 1, 0}});
      return loop;
    };
    const double g0 = gamma(p, column_loop(0));
    const double g1 = gamma(p, column_loop(1));
    CHECK(angle_dist(g0, g1) < 1e-9);

    // a zigzag representative of the horizontal class
    std::vector<DirectedDualEdge> zig;
    zig.push_back({FaceId{0, 0}, FaceId{0, 1}});
    for (int k = 0; k < p.m(); ++k) zig.push_back({FaceId{k, 1}, FaceId{k + 1, 1}});
    zig.push_back({FaceId{p.m(), 1}, FaceId{p.m(), 0}});
    const double gh = gamma(p, zig);
    CHECK(angle_dist(gh, gamma_generators(p).horizontal) < 1e-9);
  }
}

TEST_CASE("gamma flips sign under each mutation") {
  for (auto [m, n, s] : {std::tuple{2, 2, 0}, {4, 2, 2}, {2, 4, 0}}) {
    const TorusPattern p = testsup::forged(m, n, s, 0.09, 900 + m + 10 * n + s);
    const GammaValue g0 = gamma_generators(p);
    for (Color c : {Color::black, Color::white}) {
      const GammaValue g1 = gamma_generators(mutate(p, c));
      CHECK(angle_dist(g1.horizontal, normalize_angle(-g0.horizontal)) < 1e-9);
      CHECK(angle_dist(g1.vertical, normalize_angle(-g0.vertical)) < 1e-9);
    }
  }
}

TEST_CASE("2x2 vertical gamma equals twice the column angle") {
  const TorusPattern p = testsup::forged(2, 2, 0, 0.07, 44);
  const auto L = labels_2x2(p);
  const double adg = oriented_angle(L.A, L.D, L.G);
  const double gv = gamma_generators(p).vertical;
  CHECK(angle_dist(gv, normalize_angle(2 * adg)) < 1e-9);
}

TEST_CASE("monodromy_ratio") {
  auto ratio_of = [](Vec2 u, Vec2 v) {
    return monodromy_ratio(TorusPattern(2, 2, 0, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}, u, v));
  };
  auto r1 = ratio_of({2, 0}, {0, 2});
  CHECK(r1.first == doctest::Approx(0.0));
  CHECK(r1.second == doctest::Approx(1.0));
  auto r2 = ratio_of({2, 0}, {1, 1});
  CHECK(r2.first == doctest::Approx(0.5));
  CHECK(r2.second == doctest::Approx(0.5));
  CHECK_THROWS_AS(ratio_of({0, 0}, {1, 1}), NonGeneric);
}

TEST_CASE("monodromy_ratio constant along orbits") {
  const TorusPattern p = testsup::forged(4, 2, 0, 0.07, 55);
  const auto r0 = monodromy_ratio(p);
  const Orbit o = evolve(p, 0, 20);
  for (int t = 0; t <= 20; ++t) {
    const auto rt = monodromy_ratio(o.at(t));
    CHECK(std::abs(rt.first - r0.first) < 1e-12);
    CHECK(std::abs(rt.second - r0.second) < 1e-12);
  }
}

TEST_CASE("isoradial_check: flags, period formula, agreement of both routes") {
  const IsoradialReport grid = isoradial_check(standard_grid(2, 2, 0));
  CHECK(grid.is_isoradial);
  CHECK(grid.period == 2);

  CHECK(isoradial_check(standard_grid(4, 2, 2)).period == 4);
  CHECK(isoradial_check(standard_grid(4, 2, 0)).period == 4);
  CHECK(isoradial_check(standard_grid(6, 2, 2)).period == 6);
  CHECK(isoradial_check(standard_grid(4, 1, 1)).period == 4);

  const TorusPattern iso = testsup::rhombic_pattern(4, 2, 2, 0.3, 5);
  const IsoradialReport ri = isoradial_check(iso);
  CHECK(ri.is_isoradial);
  CHECK(ri.phi_mismatch < 1e-9);

  const TorusPattern gen = testsup::forged(4, 2, 2, 0.12, 66);
  CHECK_FALSE(isoradial_check(gen).is_isoradial);
}

TEST_CASE("isoradial phi field is periodic with the lcm period") {
  for (auto [m, n, s] : {std::tuple{2, 2, 0}, {4, 2, 2}}) {
    const TorusPattern p = testsup::rhombic_pattern(m, n, s, 0.3, 31 + m + s);
    const long long period = isoradial_check(p).period;
    const PhiField f0 = extract_phi(p);
    const Orbit o = evolve(p, 0, static_cast<int>(period));
    for (int t = 1; t < period; ++t)
      CHECK(extract_phi(o.at(t)).max_angular_diff(f0) > 1e-3);
    CHECK(extract_phi(o.at(static_cast<int>(period))).max_angular_diff(f0) < 1e-8);
    // isoradiality is preserved along the way
    for (int t = 0; t <= period; ++t) CHECK(isoradial_check(o.at(t)).is_isoradial);
  }
}

TEST_CASE("m by 1 patterns are automatically isoradial") {
  for (auto [m, s] : {std::pair{4, 1}, {6, 5}, {2, 1}}) {
    const TorusPattern p = testsup::forged(m, 1, s, 0.08, 1000 + m + s);
    CHECK(m_by_1_isoradiality(p));
  }
  CHECK_THROWS_AS(m_by_1_isoradiality(standard_grid(4, 2, 0)), InvalidParameters);
}

TEST_CASE("invariant_report aggregates") {
  const TorusPattern p = testsup::forged(4, 2, 2, 0.08, 77);
  const InvariantReport rep = invariant_report(p);
  CHECK(rep.worst_theta_vertex_sum < 1e-9);
  CHECK(rep.period == 4);
  CHECK_FALSE(rep.is_isoradial);
}
