#ifndef FVS_FIELD_HPP
#define FVS_FIELD_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fvs {

// A residue mod p, always kept in [0, p).
using Residue = std::uint32_t;

// An element of F_p^r as a length-r coordinate vector. The prime is carried
// by the surrounding context (design, spectrum, ...), not by the vector.
using Vec = std::vector<Residue>;

enum class ErrorCode {
  invalid_argument,
  singular_matrix,
  too_many_points,
  missing_samples,
  even_length,
  dimension_mismatch,
  parse_error,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

bool is_prime(std::uint64_t n);

// base^exp, clamped to UINT64_MAX on overflow.
std::uint64_t pow_u64_saturating(std::uint64_t base, std::uint32_t exp);

inline Residue add_mod(Residue a, Residue b, Residue p) { return (a + b) % p; }
inline Residue sub_mod(Residue a, Residue b, Residue p) { return (a + p - b) % p; }
inline Residue mul_mod(Residue a, Residue b, Residue p) {
  return static_cast<Residue>((std::uint64_t(a) * b) % p);
}
Residue inv_mod(Residue a, Residue p);  // p prime, a != 0 mod p

Residue dot_mod(const Vec& a, const Vec& b, Residue p);

Vec zero_vec(std::size_t r);
Vec unit_vec(std::size_t r, std::size_t j);  // e_{j+1}
Vec add_vec(const Vec& a, const Vec& b, Residue p);
Vec sub_vec(const Vec& a, const Vec& b, Residue p);
Vec scale_vec(Residue k, const Vec& a, Residue p);

// Dense row-major matrix over F_p.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Residue> a;

  Mat() = default;
  Mat(std::size_t nrows, std::size_t ncols)
      : rows(nrows), cols(ncols), a(nrows * ncols, 0) {}

  Residue& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  Residue at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  static Mat from_rows(const std::vector<Vec>& rows_in);
};

Vec mat_vec(const Mat& m, const Vec& v, Residue p);

// In-place reduced row echelon form; returns the rank.
std::size_t rref_in_place(Mat& m, Residue p);

struct SpanResult {
  std::size_t rank = 0;
  std::vector<Vec> basis;  // RREF rows, pivot columns increasing
};

// Rank and a canonical basis of the F_p-span of `vectors` inside F_p^r.
SpanResult rank_and_span(const std::vector<Vec>& vectors, Residue p, std::size_t r);

bool in_span(const std::vector<Vec>& basis, const Vec& v, Residue p, std::size_t r);

// Standard basis vectors extending an independent set to all of F_p^r,
// greedy in index order: e_j is kept iff it strictly increases the span.
std::vector<Vec> complete_basis(const std::vector<Vec>& basis, Residue p, std::size_t r);

// Inverse of a square matrix over F_p; throws Error(singular_matrix).
Mat invert(const Mat& m, Residue p);

// Solves M w = v over F_p for invertible M; throws Error(singular_matrix).
Vec solve_linear(const Mat& m, const Vec& v, Residue p);

// Polynomial over F_p, index i holding the coefficient of z^i.
using Poly = std::vector<Residue>;

// The first monic irreducible of degree h over F_p, scanning candidates by
// increasing value of c_0 + c_1 p + ... + c_{h-1} p^{h-1}.
Poly find_irreducible(Residue p, std::size_t h);

// F_q = F_p[z]/(modulus) with q = p^h. Elements are length-h coefficient
// vectors, constant term first.
class ExtField {
 public:
  using Elem = std::vector<Residue>;

  ExtField(Residue p, std::size_t h);

  Residue p() const { return p_; }
  std::size_t degree() const { return h_; }
  std::uint64_t order() const { return q_; }
  const Poly& modulus() const { return modulus_; }

  Elem zero() const;
  Elem one() const;
  // Element number v, digits of v base p as coefficients (constant term is
  // the least significant digit). This fixes the canonical enumeration of F_q.
  Elem from_index(std::uint64_t v) const;
  std::uint64_t index_of(const Elem& a) const;

  bool is_zero(const Elem& a) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, std::uint64_t e) const;

 private:
  Residue p_;
  std::size_t h_;
  std::uint64_t q_;
  Poly modulus_;
};

}  // namespace fvs

#endif
