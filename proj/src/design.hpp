#ifndef FVS_DESIGN_HPP
#define FVS_DESIGN_HPP

#include <cstdint>
#include <vector>

#include "field.hpp"

namespace fvs {

struct DesignParams {
  Residue p = 0;
  std::uint32_t r = 0;  // ambient dimension
  std::uint32_t t = 0;  // target sparsity
  std::uint32_t h = 0;  // subspace dimension
  std::uint32_t m = 0;  // generating order, ceil(r/h)
  std::uint32_t n = 0;  // family size, 4t(m-1)+1
  std::uint64_t q = 0;  // p^h
  std::uint32_t s = 0;  // ceil(r/h), dimension of the frame space F_q^s
};

// Minimal h >= 1 with 4t(ceil(r/h)-1) <= p^h, and the quantities derived
// from it. Guarantees n * p^h < 16 p t^2 r^2.
DesignParams select_parameters(Residue p, std::uint32_t r, std::uint32_t t);

// K = {0} U {2^i : 0 <= i <= k} with k minimal such that 2^k >= p/3.
// All powers stay below p, so the set comes back sorted ascending.
std::vector<Residue> exponent_set(Residue p);

struct Subspace {
  std::vector<Vec> basis;        // h independent rows spanning H_i (RREF)
  std::vector<Vec> complements;  // r-h standard basis vectors x_{l,i}
  Mat solve;                     // rows: basis then complements
  Mat solve_inv;                 // inverse of `solve` mod p
  std::vector<Vec> dual_basis;   // basis of the annihilator H_i^perp
};

struct Design {
  DesignParams params;
  std::vector<Subspace> family;    // n subspaces
  std::vector<Residue> exponents;  // K
};

// The first n points of the full-spark frame
//   {(1, x, ..., x^{s-1}) : x in F_q} U {(0, ..., 0, 1)}
// under the canonical enumeration of F_q; the final point is appended only
// when n = q+1. Throws Error(too_many_points) if n > q+1.
std::vector<std::vector<ExtField::Elem>> vandermonde_set(const ExtField& fq,
                                                         std::uint32_t s,
                                                         std::uint32_t n);

// Lifts frame points from F_q^s to h-dimensional subspaces of F_p^r through
// coefficient flattening followed by truncation to the first r coordinates.
// Images of dimension < h are padded with standard basis vectors in index
// order. Complements and solve matrices are precomputed per subspace.
std::vector<Subspace> lift_family(const DesignParams& params, const ExtField& fq,
                                  const std::vector<std::vector<ExtField::Elem>>& points);

Design build_design(Residue p, std::uint32_t r, std::uint32_t t);

enum class Variant { gamma1 = 1, gamma2 = 2 };

struct CosetRef {
  std::uint32_t subspace = 0;    // index i into the family
  std::uint32_t complement = 0;  // l in 1..r-h; 0 marks the unshifted coset
  Residue scale = 0;             // k in K
  Vec shift;                     // k * x_{l,i}
};

struct SamplingSet {
  Variant variant = Variant::gamma1;
  std::vector<Vec> points;  // deduplicated, sorted
  std::vector<CosetRef> cosets;
};

SamplingSet build_gamma1(const Design& design);
SamplingSet build_gamma2(const Design& design);
SamplingSet build_sampling_set(const Design& design, Variant variant);

// Points of shift + H_i in lexicographic order of the coefficient tuples
// over the stored basis. The ordering matches the coset-spectrum indexing.
std::vector<Vec> coset_points(const Design& design, std::uint32_t i, const Vec& shift);

// Brute force over all C(n, m) subfamilies: each must span F_p^r.
bool verify_m_generating(const Design& design);

// Every nonzero character label may lie in at most m-1 of the annihilators.
bool verify_coherence(const Design& design);

struct BoundReport {
  std::uint64_t gamma1_size = 0;
  std::uint64_t gamma2_size = 0;
  std::uint64_t gamma1_bound = 0;     // 16 p t^2 r^2
  std::uint64_t gamma2_bound_int = 0; // 16 p t^2 r^3 |K|, valid since 2^(|K|-2) < p
  double gamma2_bound = 0;            // 16 p t^2 r^3 (2 + log2 p)
  std::uint64_t n_ph = 0;             // n * p^h
  bool ok = false;
};

// Integer-exact size checks for both sampling sets and for n p^h.
BoundReport check_size_bounds(const Design& design);

}  // namespace fvs

#endif
