#include "spectral.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>

namespace fvs {

namespace {

std::string point_to_string(const Vec& x) {
  std::ostringstream os;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) os << ' ';
    os << x[i];
  }
  return os.str();
}

double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

UnitRoots::UnitRoots(Residue p) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_argument, "p must be prime");
  roots_.resize(p);
  for (Residue j = 0; j < p; ++j)
    roots_[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / p);
}

Complex evaluate_character(const Vec& y, const Vec& x, const UnitRoots& roots) {
  if (y.size() != x.size())
    throw Error(ErrorCode::dimension_mismatch, "character/point length mismatch");
  return roots.root(dot_mod(x, y, roots.p()));
}

Spectrum::Spectrum(Residue p, std::uint32_t r) : p_(p), r_(r) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_argument, "p must be prime");
  if (r < 1) throw Error(ErrorCode::invalid_argument, "r must be positive");
}

void Spectrum::check_label(const Vec& label) const {
  if (label.size() != r_)
    throw Error(ErrorCode::dimension_mismatch, "label has wrong length");
  for (Residue c : label)
    if (c >= p_) throw Error(ErrorCode::invalid_argument, "label entry out of range");
}

void Spectrum::set(const Vec& label, Complex value) {
  check_label(label);
  if (std::abs(value) < kAmplitudeEps)
    terms_.erase(label);
  else
    terms_[label] = value;
}

void Spectrum::add(const Vec& label, Complex value) { set(label, at(label) + value); }

Complex Spectrum::at(const Vec& label) const {
  auto it = terms_.find(label);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

double Spectrum::l1_norm() const {
  double acc = 0;
  for (const auto& [label, v] : terms_) acc += std::abs(v);
  return acc;
}

double l1_distance(const Spectrum& a, const Spectrum& b) {
  if (a.p() != b.p() || a.r() != b.r())
    throw Error(ErrorCode::dimension_mismatch, "spectra live on different groups");
  double acc = 0;
  auto ia = a.terms().begin(), ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
      acc += std::abs(ia->second);
      ++ia;
    } else if (ia == a.terms().end() || ib->first < ia->first) {
      acc += std::abs(ib->second);
      ++ib;
    } else {
      acc += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return acc;
}

Spectrum spectrum_sum(const Spectrum& a, const Spectrum& b) {
  if (a.p() != b.p() || a.r() != b.r())
    throw Error(ErrorCode::dimension_mismatch, "spectra live on different groups");
  Spectrum out = a;
  for (const auto& [label, v] : b.terms()) out.add(label, v);
  return out;
}

std::vector<Vec> all_points(Residue p, std::uint32_t r) {
  std::uint64_t total = pow_u64_saturating(p, r);
  if (total > (1ull << 24))
    throw Error(ErrorCode::invalid_argument, "space too large to enumerate");
  std::vector<Vec> pts;
  pts.reserve(total);
  Vec x(r, 0);
  for (;;) {
    pts.push_back(x);
    std::size_t j = r;
    while (j > 0) {
      --j;
      if (++x[j] < p) break;
      x[j] = 0;
      if (j == 0) return pts;
    }
  }
}

SampleTable synthesize_samples(const Spectrum& s, const std::vector<Vec>& points) {
  UnitRoots roots(s.p());
  SampleTable table;
  table.p = s.p();
  table.r = s.r();
  for (const Vec& x : points) {
    Complex acc(0.0, 0.0);
    for (const auto& [y, amp] : s.terms()) acc += amp * roots.root(dot_mod(x, y, s.p()));
    table.values[x] = acc;
  }
  return table;
}

Spectrum full_dft(const SampleTable& f) {
  const Residue p = f.p;
  const std::uint32_t r = f.r;
  std::vector<Vec> pts = all_points(p, r);
  std::vector<Complex> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto it = f.values.find(pts[i]);
    if (it == f.values.end())
      throw Error(ErrorCode::missing_samples,
                  "missing sample at point " + point_to_string(pts[i]));
    vals[i] = it->second;
  }
  UnitRoots roots(p);
  Spectrum out(p, r);
  const double scale = 1.0 / double(pts.size());
  for (const Vec& y : pts) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Residue d = dot_mod(pts[i], y, p);
      acc += vals[i] * roots.root(d == 0 ? 0 : p - d);  // chi_y(x)^{-1}
    }
    out.set(y, acc * scale);
  }
  return out;
}

bool annihilator_contains(const std::vector<Vec>& h_basis, const Vec& y, Residue p) {
  for (const Vec& b : h_basis)
    if (dot_mod(b, y, p) != 0) return false;
  return true;
}

Vec coset_label(const Design& d, std::uint32_t j, const Vec& y) {
  const Subspace& sub = d.family.at(j);
  Vec label(sub.basis.size());
  for (std::size_t i = 0; i < sub.basis.size(); ++i)
    label[i] = dot_mod(sub.basis[i], y, d.params.p);
  return label;
}

std::size_t label_index(const Vec& label, Residue p) {
  std::size_t idx = 0;
  for (Residue c : label) idx = idx * p + c;
  return idx;
}

Vec label_from_index(std::size_t idx, Residue p, std::uint32_t h) {
  Vec label(h, 0);
  for (std::uint32_t i = h; i-- > 0;) {
    label[i] = static_cast<Residue>(idx % p);
    idx /= p;
  }
  return label;
}

CosetSpectrum subgroup_dft(const SampleTable& samples, const Design& d,
                           std::uint32_t j, const Vec& shift) {
  const Residue p = d.params.p;
  const std::uint32_t h = d.params.h;
  const std::size_t ph = static_cast<std::size_t>(d.params.q);

  std::vector<Complex> g(ph);
  std::vector<Vec> pts = coset_points(d, j, shift);
  for (std::size_t i = 0; i < ph; ++i) {
    auto it = samples.values.find(pts[i]);
    if (it == samples.values.end())
      throw Error(ErrorCode::missing_samples,
                  "missing sample at point " + point_to_string(pts[i]));
    g[i] = it->second;
  }

  // Coefficient tuples in index order; reused for both sides of the pairing.
  std::vector<Vec> tuples(ph);
  for (std::size_t i = 0; i < ph; ++i) tuples[i] = label_from_index(i, p, h);

  UnitRoots roots(p);
  CosetSpectrum out;
  out.subspace = j;
  out.shift = shift;
  out.values.assign(ph, Complex(0.0, 0.0));
  const double scale = 1.0 / double(ph);
  for (std::size_t lab = 0; lab < ph; ++lab) {
    Complex acc(0.0, 0.0);
    for (std::size_t c = 0; c < ph; ++c) {
      Residue dphase = dot_mod(tuples[c], tuples[lab], p);
      acc += g[c] * roots.root(dphase == 0 ? 0 : p - dphase);
    }
    out.values[lab] = acc * scale;
  }
  return out;
}

Spectrum random_sparse_spectrum(Residue p, std::uint32_t r, std::uint32_t t,
                                std::uint64_t seed) {
  Spectrum out(p, r);
  std::uint64_t space = pow_u64_saturating(p, r);
  std::uint64_t want = std::min<std::uint64_t>(t, space);
  std::mt19937_64 rng(seed);
  while (out.support_size() < want) {
    Vec y(r);
    for (std::uint32_t i = 0; i < r; ++i) y[i] = static_cast<Residue>(rng() % p);
    if (out.terms().count(y)) continue;
    double mag = 0.5 + uniform01(rng);
    double phase = 2.0 * std::numbers::pi * uniform01(rng);
    out.set(y, std::polar(mag, phase));
  }
  return out;
}

Spectrum random_noise_spectrum(Residue p, std::uint32_t r, double l1,
                               std::uint64_t seed, const Spectrum& avoid) {
  Spectrum out(p, r);
  if (l1 <= 0) return out;
  std::uint64_t space = pow_u64_saturating(p, r);
  if (space <= avoid.support_size())
    throw Error(ErrorCode::invalid_argument, "no labels left for noise");
  std::uint64_t free_labels = space - avoid.support_size();
  // Keep the term count small; the l1 budget is what matters, not the spread.
  std::uint64_t cap =
      std::min<std::uint64_t>(free_labels, 8 * std::max<std::uint64_t>(1, avoid.support_size()));
  std::mt19937_64 rng(seed);
  std::uint64_t count = 1 + rng() % cap;

  std::vector<Vec> labels;
  while (labels.size() < count) {
    Vec y(r);
    for (std::uint32_t i = 0; i < r; ++i) y[i] = static_cast<Residue>(rng() % p);
    if (avoid.terms().count(y) || out.terms().count(y)) continue;
    double w = std::max(1e-6, 1.0 - uniform01(rng));  // (0, 1], bounded away from 0
    double phase = 2.0 * std::numbers::pi * uniform01(rng);
    out.set(y, std::polar(w, phase));
    labels.push_back(y);
  }
  double total = out.l1_norm();
  for (const Vec& y : labels) out.set(y, out.at(y) * (l1 / total));
  return out;
}

}  // namespace fvs
