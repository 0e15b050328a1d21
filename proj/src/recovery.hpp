#ifndef FVS_RECOVERY_HPP
#define FVS_RECOVERY_HPP

#include "spectral.hpp"

namespace fvs {

// Distance of x from the nearest integer multiple of d.
double dist_mod(double x, double d);

// Componentwise median (middle order statistic of real and imaginary parts).
// Throws Error(even_length) unless the list has odd length.
Complex median_complex(std::vector<Complex> values);

struct OneSparseInput {
  Residue p = 0;
  std::map<Residue, Complex> values;  // a -> f(a); domain must cover K
};

// Recovers the dominant frequency y' of f(x) = sum_y a_y omega^{xy} from the
// samples at K, by eliminating every candidate whose phase drift at some
// dyadic point exceeds p/6. Correct whenever |a_{y'}| > 2 sum_{y != y'} |a_y|;
// always returns some residue.
Residue decode_one_sparse(const OneSparseInput& input, const std::vector<Residue>& K);

struct Diagnostics {
  std::vector<std::vector<Vec>> selected;        // per subspace, chosen coset labels
  std::map<Vec, std::uint32_t> votes;            // Y
  std::map<Vec, std::vector<Complex>> median_in; // per candidate, the n bin values
  std::map<Vec, Complex> medians;                // f'' on the surviving candidates
};

struct RecoveryReport {
  Spectrum spectrum;  // f', at most t terms
  Diagnostics diag;
};

// Recovery from samples on Gamma_1: per-subspace transforms, votes over whole
// annihilator cosets, medians, top-t selection.
RecoveryReport reconstruct_gamma1(const SampleTable& samples, const Design& d);

// Recovery from samples on Gamma_2: candidate characters are pinned down
// coordinate by coordinate with the one-sparse decoder on shifted transforms,
// so no annihilator coset is ever enumerated.
RecoveryReport reconstruct_gamma2(const SampleTable& samples, const Design& d);

RecoveryReport reconstruct(const SampleTable& samples, const Design& d, Variant variant);

// The unique w with <b_i, w> = label_i and <x_l, w> = u_l, via the
// precomputed inverse of the stacked basis/complement matrix.
Vec solve_character(const Design& d, std::uint32_t j, const Vec& label, const Vec& u);

}  // namespace fvs

#endif
