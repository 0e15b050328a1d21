#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "recovery.hpp"

using namespace fvs;

namespace {

SampleTable sample_on(const Spectrum& s, const Design& d, Variant v) {
  return synthesize_samples(s, build_sampling_set(d, v).points);
}

OneSparseInput evaluate_on_exponents(Residue p, const Spectrum& line,
                                     const std::vector<Residue>& K) {
  UnitRoots roots(p);
  OneSparseInput in;
  in.p = p;
  for (Residue a : K) {
    Complex acc(0, 0);
    for (const auto& [y, amp] : line.terms()) acc += amp * roots.root(mul_mod(y[0], a, p));
    in.values[a] = acc;
  }
  return in;
}

// Survivor set computed straight from the elimination rule, for cross-checking
// the decoder's output on tiny cases.
std::vector<Residue> survivor_oracle(const OneSparseInput& in,
                                     const std::vector<Residue>& K) {
  const Residue p = in.p;
  std::vector<char> gone(p, 0);
  for (std::size_t l = 0; l + 1 < K.size(); ++l) {
    Complex f0 = in.values.at(0), fl = in.values.at(K[l + 1]);
    double b = 0;
    if (std::abs(f0) >= kAmplitudeEps && std::abs(fl) >= kAmplitudeEps) {
      b = std::arg(fl / f0);
      if (b < 0) b += 2 * std::numbers::pi;
    }
    for (Residue j = 0; j < p; ++j) {
      double x = p * b / (2 * std::numbers::pi) - double(K[l + 1]) * j;
      if (dist_mod(x, p) >= p / 6.0) gone[j] = 1;
    }
  }
  std::vector<Residue> out;
  for (Residue j = 0; j < p; ++j)
    if (!gone[j]) out.push_back(j);
  return out;
}

const std::vector<Residue> kPrimesTo101 = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                           29, 31, 37, 41, 43, 47, 53, 59, 61,
                                           67, 71, 73, 79, 83, 89, 97, 101};

}  // namespace

TEST_CASE("distance to multiples") {
  CHECK(dist_mod(0.0, 5.0) == 0.0);
  CHECK(dist_mod(4.9, 5.0) == doctest::Approx(0.1));
  CHECK(dist_mod(-0.3, 5.0) == doctest::Approx(0.3));
  CHECK(dist_mod(12.5, 5.0) == doctest::Approx(2.5));
}

TEST_CASE("complex median") {
  CHECK(median_complex({{1, 0}, {2, 0}, {100, 0}}) == Complex(2, 0));
  CHECK(median_complex({{1, 5}, {2, 0}, {3, 1}}) == Complex(2, 1));
  CHECK(median_complex({{7, -2}, {7, -2}, {7, -2}, {7, -2}, {7, -2}}) == Complex(7, -2));
  CHECK_THROWS_AS(median_complex({{1, 0}, {2, 0}}), Error);
  CHECK_THROWS_AS(median_complex({}), Error);
}

TEST_CASE("one-sparse decoder: frozen cases") {
  {
    // f(x) = 2 w5^{3x}: unique survivor 3.
    Spectrum line(5, 1);
    line.set(Vec{3}, Complex(2, 0));
    auto K = exponent_set(5);
    auto in = evaluate_on_exponents(5, line, K);
    CHECK(decode_one_sparse(in, K) == 3);
    CHECK(survivor_oracle(in, K) == std::vector<Residue>{3});
  }
  {
    // constant signal: dominant frequency 0
    Spectrum line(7, 1);
    line.set(Vec{0}, Complex(1.5, 0.5));
    auto K = exponent_set(7);
    CHECK(decode_one_sparse(evaluate_on_exponents(7, line, K), K) == 0);
  }
  {
    // f(x) = w11^{4x} + 0.1 w11^{x}: dominance 1 > 2*0.1.
    Spectrum line(11, 1);
    line.set(Vec{4}, Complex(1, 0));
    line.set(Vec{1}, Complex(0.1, 0));
    auto K = exponent_set(11);
    auto in = evaluate_on_exponents(11, line, K);
    CHECK(decode_one_sparse(in, K) == 4);
    CHECK(survivor_oracle(in, K) == std::vector<Residue>{4});
  }
  {
    // all-zero input decodes to 0
    OneSparseInput zero;
    zero.p = 5;
    for (Residue a : exponent_set(5)) zero.values[a] = Complex(0, 0);
    CHECK(decode_one_sparse(zero, exponent_set(5)) == 0);
  }
}

TEST_CASE("one-sparse decoder: dominance property across primes") {
  std::mt19937_64 rng(97);
  auto u01 = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  for (Residue p : kPrimesTo101) {
    auto K = exponent_set(p);
    // All dominant frequencies for small p, a seeded sample for large p.
    std::vector<Residue> targets;
    if (p <= 31) {
      for (Residue y = 0; y < p; ++y) targets.push_back(y);
    } else {
      for (int i = 0; i < 12; ++i) targets.push_back(static_cast<Residue>(rng() % p));
    }
    for (Residue target : targets) {
      Spectrum line(p, 1);
      line.set(Vec{target}, std::polar(1.0, 2 * std::numbers::pi * u01()));
      // spread strictly less than 1/2 of the dominant mass over others
      double rest = 0.45;
      int others = 1 + int(rng() % 3);
      for (int i = 0; i < others; ++i) {
        Residue y = static_cast<Residue>(rng() % p);
        if (y == target) continue;
        line.add(Vec{y}, std::polar(rest / others, 2 * std::numbers::pi * u01()));
      }
      auto in = evaluate_on_exponents(p, line, K);
      CHECK(decode_one_sparse(in, K) == target);
    }
  }
}

TEST_CASE("character solve: normalized coordinates") {
  // H = span{e_{r-h+1}, ..., e_r}, complements e_1..e_{r-h}: the label holds
  // the last h coordinates of w and the decoded values the first r-h.
  Design d;
  d.params = DesignParams{5, 3, 1, 1, 3, 9, 5, 3};
  Subspace sub;
  sub.basis = {Vec{0, 0, 1}};
  sub.complements = complete_basis(sub.basis, 5, 3);
  std::vector<Vec> rows = sub.basis;
  rows.insert(rows.end(), sub.complements.begin(), sub.complements.end());
  sub.solve = Mat::from_rows(rows);
  sub.solve_inv = invert(sub.solve, 5);
  d.family.push_back(sub);

  CHECK(solve_character(d, 0, Vec{4}, Vec{1, 2}) == Vec{1, 2, 4});
  CHECK(solve_character(d, 0, Vec{0}, Vec{0, 0}) == Vec{0, 0, 0});
}

TEST_CASE("character solve: forward-backward, exhaustive on F_3^3") {
  Design d = build_design(3, 3, 1);
  for (std::uint32_t j = 0; j < d.params.n; ++j) {
    const Subspace& sub = d.family[j];
    for (const Vec& w : all_points(3, 3)) {
      Vec label = coset_label(d, j, w);
      Vec u(sub.complements.size());
      for (std::size_t l = 0; l < u.size(); ++l) u[l] = dot_mod(sub.complements[l], w, 3);
      CHECK(solve_character(d, j, label, u) == w);
    }
  }
}

TEST_CASE("gamma1 recovery: frozen tiny case and zero signal") {
  // p=3, r=2, t=1 collapses to a single full-space transform.
  Design d = build_design(3, 2, 1);
  REQUIRE(d.params.m == 1);
  Spectrum g(3, 2);
  g.set(Vec{1, 2}, Complex(2, 1));
  RecoveryReport rep = reconstruct_gamma1(sample_on(g, d, Variant::gamma1), d);
  CHECK(l1_distance(rep.spectrum, g) < 1e-9);

  Spectrum zero(3, 2);
  RecoveryReport zrep = reconstruct_gamma1(sample_on(zero, d, Variant::gamma1), d);
  CHECK(zrep.spectrum.support_size() == 0);
}

TEST_CASE("exact recovery on small designs, both sampling sets") {
  struct Cell { Residue p; std::uint32_t r, t; };
  for (Cell cell : {Cell{3, 3, 1}, Cell{3, 4, 2}, Cell{5, 3, 1}, Cell{5, 2, 1},
                    Cell{7, 3, 2}}) {
    Design d = build_design(cell.p, cell.r, cell.t);
    CAPTURE(cell.p);
    CAPTURE(cell.r);
    CAPTURE(cell.t);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Spectrum g = random_sparse_spectrum(cell.p, cell.r, cell.t, seed);
      RecoveryReport r1 = reconstruct_gamma1(sample_on(g, d, Variant::gamma1), d);
      CHECK(l1_distance(r1.spectrum, g) < 1e-8);
      if (cell.p >= 5) {
        RecoveryReport r2 = reconstruct_gamma2(sample_on(g, d, Variant::gamma2), d);
        CHECK(l1_distance(r2.spectrum, g) < 1e-8);
        CHECK(l1_distance(r1.spectrum, r2.spectrum) < 1e-8);
      }
    }
  }
}

TEST_CASE("degenerate full-space design handles both variants") {
  Design d = build_design(5, 1, 3);
  Spectrum g = random_sparse_spectrum(5, 1, 3, 4);
  CHECK(l1_distance(reconstruct_gamma1(sample_on(g, d, Variant::gamma1), d).spectrum, g) <
        1e-9);
  CHECK(l1_distance(reconstruct_gamma2(sample_on(g, d, Variant::gamma2), d).spectrum, g) <
        1e-9);
}

TEST_CASE("gamma2 reconstruction rejects gamma1-only samples") {
  Design d = build_design(5, 3, 1);
  Spectrum g = random_sparse_spectrum(5, 3, 1, 9);
  SampleTable g1_samples = sample_on(g, d, Variant::gamma1);
  CHECK_THROWS_WITH_AS(reconstruct_gamma2(g1_samples, d),
                       doctest::Contains("missing sample"), Error);
}

TEST_CASE("noisy recovery stays within the l1 guarantee") {
  const double factor = 1.0 + 3.0 * std::sqrt(2.0);
  struct Cell { Residue p; std::uint32_t r, t; };
  for (Cell cell : {Cell{3, 3, 1}, Cell{5, 3, 2}, Cell{7, 2, 1}}) {
    Design d = build_design(cell.p, cell.r, cell.t);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      Spectrum g = random_sparse_spectrum(cell.p, cell.r, cell.t, seed);
      Spectrum eps = random_noise_spectrum(cell.p, cell.r, 0.1, seed + 1000, g);
      Spectrum f = spectrum_sum(g, eps);
      double budget = eps.l1_norm();

      RecoveryReport r1 = reconstruct_gamma1(sample_on(f, d, Variant::gamma1), d);
      CHECK(r1.spectrum.support_size() <= cell.t);
      CHECK(l1_distance(f, r1.spectrum) <= factor * budget + 1e-8);
      if (cell.p >= 5) {
        RecoveryReport r2 = reconstruct_gamma2(sample_on(f, d, Variant::gamma2), d);
        CHECK(r2.spectrum.support_size() <= cell.t);
        CHECK(l1_distance(f, r2.spectrum) <= factor * budget + 1e-8);
      }
    }
  }
}

TEST_CASE("voting soundness on gamma1 diagnostics") {
  Design d = build_design(5, 3, 2);
  const std::uint32_t threshold = 2 * d.params.t * (d.params.m - 1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Spectrum g = random_sparse_spectrum(5, 3, 2, seed);
    Spectrum eps = random_noise_spectrum(5, 3, 0.05, seed + 77, g);
    Spectrum f = spectrum_sum(g, eps);
    double budget = eps.l1_norm();
    RecoveryReport rep = reconstruct_gamma1(sample_on(f, d, Variant::gamma1), d);

    // Heavy labels always clear the vote threshold...
    for (const auto& [y, amp] : f.terms()) {
      if (std::abs(amp) > 2 * budget / d.params.t) {
        auto it = rep.diag.votes.find(y);
        REQUIRE(it != rep.diag.votes.end());
        CHECK(it->second > threshold);
      }
    }
    // ...and every median estimate is within sqrt(2) eps / t of the truth.
    for (const auto& [y, med] : rep.diag.medians) {
      CHECK(std::abs(med - f.at(y)) <=
            std::sqrt(2.0) * budget / d.params.t + 1e-9);
    }
  }
}

TEST_CASE("per-subspace transforms carry few heavy bins") {
  // At most 2t-1 bins of each subspace transform may exceed eps/t.
  Design d = build_design(5, 3, 2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Spectrum g = random_sparse_spectrum(5, 3, 2, seed);
    Spectrum eps = random_noise_spectrum(5, 3, 0.2, seed + 5, g);
    Spectrum f = spectrum_sum(g, eps);
    SampleTable samples = sample_on(f, d, Variant::gamma1);
    for (std::uint32_t j = 0; j < d.params.n; ++j) {
      CosetSpectrum c = subgroup_dft(samples, d, j, zero_vec(3));
      std::uint32_t heavy = 0;
      for (const Complex& v : c.values)
        if (std::abs(v) > eps.l1_norm() / d.params.t + 1e-12) ++heavy;
      CHECK(heavy <= 2 * d.params.t - 1);
    }
  }
}

TEST_CASE("isolation counting bound via annihilator membership") {
  // For every label z, enough subspaces see almost none of the other mass.
  Design d = build_design(3, 3, 1);
  const std::uint32_t want = 2 * d.params.t * (d.params.m - 1) + 1;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Spectrum g = random_sparse_spectrum(3, 3, 1, seed);
    Spectrum eps = random_noise_spectrum(3, 3, 0.3, seed + 9, g);
    Spectrum f = spectrum_sum(g, eps);
    for (const Vec& z : all_points(3, 3)) {
      std::uint32_t good = 0;
      for (std::uint32_t j = 0; j < d.params.n; ++j) {
        double mass = 0;
        for (const auto& [y, amp] : f.terms()) {
          if (y != z && annihilator_contains(d.family[j].basis, sub_vec(y, z, 3), 3))
            mass += std::abs(amp);
        }
        if (mass <= eps.l1_norm() / d.params.t + 1e-12) ++good;
      }
      CHECK(good >= want);
    }
  }
}

TEST_CASE("support size never exceeds t") {
  std::mt19937_64 rng(123);
  Design d = build_design(5, 3, 2);
  for (int trial = 0; trial < 10; ++trial) {
    Spectrum g = random_sparse_spectrum(5, 3, 5, rng());  // denser than t on purpose
    Spectrum eps = random_noise_spectrum(5, 3, 0.5, rng(), g);
    Spectrum f = spectrum_sum(g, eps);
    RecoveryReport rep = reconstruct_gamma1(sample_on(f, d, Variant::gamma1), d);
    CHECK(rep.spectrum.support_size() <= d.params.t);
    RecoveryReport rep2 = reconstruct_gamma2(sample_on(f, d, Variant::gamma2), d);
    CHECK(rep2.spectrum.support_size() <= d.params.t);
  }
}
