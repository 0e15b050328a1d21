#include "recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fvs {

double dist_mod(double x, double d) {
  double y = std::fmod(x, d);
  if (y < 0) y += d;
  return std::min(y, d - y);
}

Complex median_complex(std::vector<Complex> values) {
  if (values.size() % 2 == 0)
    throw Error(ErrorCode::even_length, "median needs an odd number of values");
  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  auto mid = values.size() / 2;
  std::nth_element(re.begin(), re.begin() + mid, re.end());
  std::nth_element(im.begin(), im.begin() + mid, im.end());
  return Complex(re[mid], im[mid]);
}

Residue decode_one_sparse(const OneSparseInput& input, const std::vector<Residue>& K) {
  const Residue p = input.p;
  auto sample = [&](Residue a) -> Complex {
    auto it = input.values.find(a);
    if (it == input.values.end())
      throw Error(ErrorCode::invalid_argument, "decoder input missing a sample");
    return it->second;
  };

  const Complex f0 = sample(0);
  const std::size_t powers = K.size() - 1;  // K = {0, 2^0, ..., 2^k}
  std::vector<double> b(powers, 0.0);
  for (std::size_t l = 0; l < powers; ++l) {
    Complex fl = sample(K[l + 1]);
    if (std::abs(f0) < kAmplitudeEps || std::abs(fl) < kAmplitudeEps) continue;
    double a = std::arg(fl / f0);
    if (a < 0) a += 2.0 * std::numbers::pi;
    b[l] = a;
  }

  std::vector<char> eliminated(p, 0);
  for (std::size_t l = 0; l < powers; ++l) {
    double v = p * b[l] / (2.0 * std::numbers::pi);
    double pw = double(K[l + 1]);  // 2^l, never wraps since 2^k < p
    for (Residue j = 0; j < p; ++j) {
      if (!eliminated[j] && dist_mod(v - pw * j, p) >= p / 6.0) eliminated[j] = 1;
    }
  }
  for (Residue j = 0; j < p; ++j)
    if (!eliminated[j]) return j;
  return 0;
}

Vec solve_character(const Design& d, std::uint32_t j, const Vec& label, const Vec& u) {
  const Subspace& sub = d.family.at(j);
  Vec rhs;
  rhs.reserve(d.params.r);
  rhs.insert(rhs.end(), label.begin(), label.end());
  rhs.insert(rhs.end(), u.begin(), u.end());
  return mat_vec(sub.solve_inv, rhs, d.params.p);
}

namespace {

void check_dims(const SampleTable& samples, const Design& d) {
  if (samples.p != d.params.p || samples.r != d.params.r)
    throw Error(ErrorCode::dimension_mismatch, "samples do not match the design");
}

// Indices of the `count` largest magnitudes, ties broken by lower index
// (= lexicographically smaller label).
std::vector<std::size_t> top_indices(const std::vector<Complex>& vals, std::size_t count) {
  std::vector<std::size_t> idx(vals.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<double> mag(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) mag[i] = std::abs(vals[i]);
  count = std::min(count, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + count, idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (mag[a] != mag[b]) return mag[a] > mag[b];
                      return a < b;
                    });
  idx.resize(count);
  return idx;
}

// Keep the t largest-magnitude candidates (ties: lexicographically smaller
// label first) as the reported spectrum.
void keep_top_t(const std::map<Vec, Complex>& candidates, std::uint32_t t, Spectrum* out) {
  std::vector<std::pair<Vec, Complex>> items(candidates.begin(), candidates.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return std::abs(a.second) > std::abs(b.second);
  });
  if (items.size() > t) items.resize(t);
  for (const auto& [label, value] : items) out->set(label, value);
}

// m = 1 collapses both algorithms to one full-space transform and a top-t cut.
RecoveryReport reconstruct_degenerate(const SampleTable& samples, const Design& d) {
  const Residue p = d.params.p;
  const std::uint32_t h = d.params.h;
  RecoveryReport rep{Spectrum(p, d.params.r), {}};
  CosetSpectrum c = subgroup_dft(samples, d, 0, zero_vec(d.params.r));
  std::map<Vec, Complex> candidates;
  rep.diag.selected.resize(1);
  for (std::size_t idx : top_indices(c.values, d.params.t)) {
    Vec label = label_from_index(idx, p, h);
    rep.diag.selected[0].push_back(label);
    Vec w = solve_character(d, 0, label, Vec{});
    candidates[w] = c.values[idx];
    rep.diag.votes[w] = 1;
    rep.diag.median_in[w] = {c.values[idx]};
  }
  rep.diag.medians = candidates;
  keep_top_t(candidates, d.params.t, &rep.spectrum);
  return rep;
}

}  // namespace

RecoveryReport reconstruct_gamma1(const SampleTable& samples, const Design& d) {
  check_dims(samples, d);
  if (d.params.m == 1) return reconstruct_degenerate(samples, d);

  const Residue p = d.params.p;
  const std::uint32_t t = d.params.t;
  const std::uint32_t n = d.params.n;
  const std::uint32_t h = d.params.h;
  const std::uint32_t r = d.params.r;
  const std::size_t select_count = std::min<std::size_t>(2 * t - 1, d.params.q);
  const std::uint32_t threshold = 2 * t * (d.params.m - 1);

  std::vector<CosetSpectrum> c;
  c.reserve(n);
  for (std::uint32_t j = 0; j < n; ++j)
    c.push_back(subgroup_dft(samples, d, j, zero_vec(r)));

  RecoveryReport rep{Spectrum(p, r), {}};
  rep.diag.selected.resize(n);
  std::map<Vec, std::uint32_t>& votes = rep.diag.votes;
  const Vec zero_u = zero_vec(r - h);

  for (std::uint32_t j = 0; j < n; ++j) {
    const std::vector<Vec>& dual = d.family[j].dual_basis;
    for (std::size_t idx : top_indices(c[j].values, select_count)) {
      Vec label = label_from_index(idx, p, h);
      rep.diag.selected[j].push_back(label);
      // Every character in the matching annihilator coset receives one vote.
      Vec rep_point = solve_character(d, j, label, zero_u);
      Vec digits(r - h, 0);
      for (;;) {
        Vec y = rep_point;
        for (std::size_t l = 0; l < dual.size(); ++l)
          if (digits[l] != 0) y = add_vec(y, scale_vec(digits[l], dual[l], p), p);
        ++votes[y];
        std::size_t l = digits.size();
        bool done = digits.empty();
        while (l > 0) {
          --l;
          if (++digits[l] < p) break;
          digits[l] = 0;
          if (l == 0) done = true;
        }
        if (done) break;
      }
    }
  }

  for (const auto& [y, count] : votes) {
    if (count <= threshold) continue;
    std::vector<Complex> med_in;
    med_in.reserve(n);
    for (std::uint32_t j = 0; j < n; ++j)
      med_in.push_back(c[j].values[label_index(coset_label(d, j, y), p)]);
    rep.diag.medians[y] = median_complex(med_in);
    rep.diag.median_in[y] = std::move(med_in);
  }
  keep_top_t(rep.diag.medians, t, &rep.spectrum);
  return rep;
}

RecoveryReport reconstruct_gamma2(const SampleTable& samples, const Design& d) {
  check_dims(samples, d);
  if (d.params.m == 1) return reconstruct_degenerate(samples, d);

  const Residue p = d.params.p;
  const std::uint32_t t = d.params.t;
  const std::uint32_t n = d.params.n;
  const std::uint32_t h = d.params.h;
  const std::uint32_t r = d.params.r;
  const std::vector<Residue>& K = d.exponents;
  const std::size_t select_count = std::min<std::size_t>(2 * t - 1, d.params.q);
  const std::uint32_t threshold = 2 * t * (d.params.m - 1);

  std::vector<CosetSpectrum> c0;
  c0.reserve(n);
  for (std::uint32_t j = 0; j < n; ++j)
    c0.push_back(subgroup_dft(samples, d, j, zero_vec(r)));

  RecoveryReport rep{Spectrum(p, r), {}};
  rep.diag.selected.resize(n);
  std::map<Vec, std::uint32_t>& votes = rep.diag.votes;
  std::vector<Vec> accepted;  // Z, in vote-crossing order

  for (std::uint32_t j = 0; j < n; ++j) {
    const Subspace& sub = d.family[j];
    // Transforms of the shifted restrictions x -> f(k x_{l,j} + x), k in K.
    // shifted[l][a] holds the one for shift K[a+1] * x_{l+1,j}.
    std::vector<std::vector<CosetSpectrum>> shifted(r - h);
    for (std::uint32_t l = 0; l < r - h; ++l) {
      for (std::size_t a = 1; a < K.size(); ++a) {
        Vec shift = scale_vec(K[a], sub.complements[l], p);
        shifted[l].push_back(subgroup_dft(samples, d, j, shift));
      }
    }
    for (std::size_t idx : top_indices(c0[j].values, select_count)) {
      Vec label = label_from_index(idx, p, h);
      rep.diag.selected[j].push_back(label);
      Vec u(r - h, 0);
      for (std::uint32_t l = 0; l < r - h; ++l) {
        OneSparseInput in;
        in.p = p;
        in.values[0] = c0[j].values[idx];
        for (std::size_t a = 1; a < K.size(); ++a)
          in.values[K[a]] = shifted[l][a - 1].values[idx];
        u[l] = decode_one_sparse(in, K);
      }
      Vec w = solve_character(d, j, label, u);
      if (++votes[w] == threshold + 1) accepted.push_back(w);
    }
  }

  std::sort(accepted.begin(), accepted.end());
  for (const Vec& w : accepted) {
    std::vector<Complex> med_in;
    med_in.reserve(n);
    for (std::uint32_t j = 0; j < n; ++j)
      med_in.push_back(c0[j].values[label_index(coset_label(d, j, w), p)]);
    rep.diag.medians[w] = median_complex(med_in);
    rep.diag.median_in[w] = std::move(med_in);
  }
  keep_top_t(rep.diag.medians, t, &rep.spectrum);
  return rep;
}

RecoveryReport reconstruct(const SampleTable& samples, const Design& d, Variant variant) {
  return variant == Variant::gamma1 ? reconstruct_gamma1(samples, d)
                                    : reconstruct_gamma2(samples, d);
}

}  // namespace fvs
