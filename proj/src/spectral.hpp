#ifndef FVS_SPECTRAL_HPP
#define FVS_SPECTRAL_HPP

#include <complex>
#include <cstdint>
#include <map>

#include "design.hpp"

namespace fvs {

using Complex = std::complex<double>;

// Amplitudes below this are treated as zero everywhere.
inline constexpr double kAmplitudeEps = 1e-12;

// Precomputed p-th roots of unity, omega^j = e^{2 pi i j / p}.
class UnitRoots {
 public:
  explicit UnitRoots(Residue p);
  Residue p() const { return static_cast<Residue>(roots_.size()); }
  const Complex& root(Residue e) const { return roots_[e]; }

 private:
  std::vector<Complex> roots_;
};

// chi_y(x) = omega^<x, y>
Complex evaluate_character(const Vec& y, const Vec& x, const UnitRoots& roots);

// Finitely supported map from character labels of F_p^r to complex amplitudes.
class Spectrum {
 public:
  Spectrum(Residue p, std::uint32_t r);

  Residue p() const { return p_; }
  std::uint32_t r() const { return r_; }

  void set(const Vec& label, Complex value);  // drops values below kAmplitudeEps
  void add(const Vec& label, Complex value);
  Complex at(const Vec& label) const;  // 0 for absent labels
  std::size_t support_size() const { return terms_.size(); }
  const std::map<Vec, Complex>& terms() const { return terms_; }
  double l1_norm() const;

 private:
  void check_label(const Vec& label) const;

  Residue p_;
  std::uint32_t r_;
  std::map<Vec, Complex> terms_;
};

double l1_distance(const Spectrum& a, const Spectrum& b);
Spectrum spectrum_sum(const Spectrum& a, const Spectrum& b);

struct SampleTable {
  Residue p = 0;
  std::uint32_t r = 0;
  std::map<Vec, Complex> values;
};

// All p^r points in lexicographic order. Refuses spaces too large to enumerate.
std::vector<Vec> all_points(Residue p, std::uint32_t r);

// f(x) = sum_y S(y) chi_y(x) at the requested points.
SampleTable synthesize_samples(const Spectrum& s, const std::vector<Vec>& points);

// Direct O(p^{2r}) transform of a table covering all of F_p^r; the test
// oracle and the `oracle-dft` command. Not meant for large spaces.
Spectrum full_dft(const SampleTable& f);

// True iff <b, y> = 0 for every basis vector b of H.
bool annihilator_contains(const std::vector<Vec>& h_basis, const Vec& y, Residue p);

// The h-tuple (<b_1, y>, ..., <b_h, y>) over the basis of H_j. Two labels
// agree exactly when the characters lie in the same H_j^perp-coset.
Vec coset_label(const Design& d, std::uint32_t j, const Vec& y);

// Big-endian flattening of a label tuple; index order = lexicographic order.
std::size_t label_index(const Vec& label, Residue p);
Vec label_from_index(std::size_t idx, Residue p, std::uint32_t h);

// DFT over H_j of y -> f(shift + y), identified with F_p^h through the stored
// basis, normalized by 1/p^h. values[label_index(label)] aggregates all
// full-group coefficients of the matching annihilator coset.
struct CosetSpectrum {
  std::uint32_t subspace = 0;
  Vec shift;
  std::vector<Complex> values;
};

CosetSpectrum subgroup_dft(const SampleTable& samples, const Design& d,
                           std::uint32_t j, const Vec& shift);

// Seeded generators for test signals. Same seed, same spectrum.
Spectrum random_sparse_spectrum(Residue p, std::uint32_t r, std::uint32_t t,
                                std::uint64_t seed);

// Random spectrum with exact l1 mass `l1` spread over labels outside the
// support of `avoid`; the number of noise terms is itself randomized.
Spectrum random_noise_spectrum(Residue p, std::uint32_t r, double l1,
                               std::uint64_t seed, const Spectrum& avoid);

}  // namespace fvs

#endif
