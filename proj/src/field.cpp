#include "field.hpp"

#include <algorithm>
#include <utility>

namespace fvs {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t pow_u64_saturating(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t out = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

Residue inv_mod(Residue a, Residue p) {
  a %= p;
  if (a == 0) throw Error(ErrorCode::invalid_argument, "0 has no inverse mod p");
  std::int64_t t0 = 0, t1 = 1;
  std::int64_t r0 = p, r1 = a;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    t0 -= q * t1;
    std::swap(t0, t1);
    r0 -= q * r1;
    std::swap(r0, r1);
  }
  if (t0 < 0) t0 += p;
  return static_cast<Residue>(t0);
}

Residue dot_mod(const Vec& a, const Vec& b, Residue p) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::uint64_t(a[i]) * b[i];
  return static_cast<Residue>(acc % p);
}

Vec zero_vec(std::size_t r) { return Vec(r, 0); }

Vec unit_vec(std::size_t r, std::size_t j) {
  Vec e(r, 0);
  e[j] = 1;
  return e;
}

Vec add_vec(const Vec& a, const Vec& b, Residue p) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = add_mod(a[i], b[i], p);
  return out;
}

Vec sub_vec(const Vec& a, const Vec& b, Residue p) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = sub_mod(a[i], b[i], p);
  return out;
}

Vec scale_vec(Residue k, const Vec& a, Residue p) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mul_mod(k, a[i], p);
  return out;
}

Vec Mat::row(std::size_t i) const {
  return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols);
}

Vec Mat::col(std::size_t j) const {
  Vec out(rows);
  for (std::size_t i = 0; i < rows; ++i) out[i] = at(i, j);
  return out;
}

Mat Mat::from_rows(const std::vector<Vec>& rows_in) {
  Mat m(rows_in.size(), rows_in.empty() ? 0 : rows_in.front().size());
  for (std::size_t i = 0; i < rows_in.size(); ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows_in[i][j];
  }
  return m;
}

Vec mat_vec(const Mat& m, const Vec& v, Residue p) {
  Vec out(m.rows, 0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < m.cols; ++j) acc += std::uint64_t(m.at(i, j)) * v[j];
    out[i] = static_cast<Residue>(acc % p);
  }
  return out;
}

std::size_t rref_in_place(Mat& m, Residue p) {
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols && pivot_row < m.rows; ++col) {
    std::size_t sel = pivot_row;
    while (sel < m.rows && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows) continue;
    if (sel != pivot_row) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(pivot_row, j));
    }
    Residue inv = inv_mod(m.at(pivot_row, col), p);
    for (std::size_t j = col; j < m.cols; ++j)
      m.at(pivot_row, j) = mul_mod(m.at(pivot_row, j), inv, p);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == pivot_row || m.at(i, col) == 0) continue;
      Residue f = m.at(i, col);
      for (std::size_t j = col; j < m.cols; ++j)
        m.at(i, j) = sub_mod(m.at(i, j), mul_mod(f, m.at(pivot_row, j), p), p);
    }
    ++pivot_row;
  }
  return pivot_row;
}

SpanResult rank_and_span(const std::vector<Vec>& vectors, Residue p, std::size_t r) {
  for (const Vec& v : vectors) {
    if (v.size() != r)
      throw Error(ErrorCode::dimension_mismatch, "span input has wrong length");
  }
  Mat m = vectors.empty() ? Mat(0, r) : Mat::from_rows(vectors);
  SpanResult out;
  out.rank = rref_in_place(m, p);
  out.basis.reserve(out.rank);
  for (std::size_t i = 0; i < out.rank; ++i) out.basis.push_back(m.row(i));
  return out;
}

bool in_span(const std::vector<Vec>& basis, const Vec& v, Residue p, std::size_t r) {
  std::size_t base_rank = rank_and_span(basis, p, r).rank;
  std::vector<Vec> ext = basis;
  ext.push_back(v);
  return rank_and_span(ext, p, r).rank == base_rank;
}

std::vector<Vec> complete_basis(const std::vector<Vec>& basis, Residue p, std::size_t r) {
  std::vector<Vec> work = basis;
  std::vector<Vec> out;
  std::size_t rank = rank_and_span(work, p, r).rank;
  for (std::size_t j = 0; j < r && rank < r; ++j) {
    Vec e = unit_vec(r, j);
    work.push_back(e);
    std::size_t new_rank = rank_and_span(work, p, r).rank;
    if (new_rank > rank) {
      rank = new_rank;
      out.push_back(e);
    } else {
      work.pop_back();
    }
  }
  return out;
}

Mat invert(const Mat& m, Residue p) {
  if (m.rows != m.cols) throw Error(ErrorCode::invalid_argument, "inverse of non-square matrix");
  const std::size_t n = m.rows;
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  rref_in_place(aug, p);
  // The left block reduces to the identity exactly when m is invertible.
  for (std::size_t i = 0; i < n; ++i) {
    if (aug.at(i, i) != 1)
      throw Error(ErrorCode::singular_matrix, "matrix is singular over F_p");
  }
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

Vec solve_linear(const Mat& m, const Vec& v, Residue p) {
  if (m.rows != m.cols || v.size() != m.rows)
    throw Error(ErrorCode::invalid_argument, "solve expects a square system");
  const std::size_t n = m.rows;
  Mat aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n) = v[i];
  }
  rref_in_place(aug, p);
  // An invertible left block reduces to the identity with pivots on the diagonal.
  for (std::size_t i = 0; i < n; ++i) {
    if (aug.at(i, i) != 1)
      throw Error(ErrorCode::singular_matrix, "matrix is singular over F_p");
  }
  Vec w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = aug.at(i, n);
  return w;
}

namespace {

Poly poly_from_index(std::uint64_t v, Residue p, std::size_t deg) {
  Poly f(deg + 1, 0);
  for (std::size_t i = 0; i < deg; ++i) {
    f[i] = static_cast<Residue>(v % p);
    v /= p;
  }
  f[deg] = 1;  // monic
  return f;
}

// Remainder of f by a monic divisor g.
Poly poly_rem(Poly f, const Poly& g, Residue p) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t i = f.size(); i-- > dg;) {
    if (f[i] == 0) continue;
    Residue c = f[i];
    for (std::size_t j = 0; j <= dg; ++j)
      f[i - dg + j] = sub_mod(f[i - dg + j], mul_mod(c, g[j], p), p);
  }
  f.resize(dg);
  return f;
}

bool poly_is_zero(const Poly& f) {
  for (Residue c : f)
    if (c != 0) return false;
  return true;
}

}  // namespace

Poly find_irreducible(Residue p, std::size_t h) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_argument, "p must be prime");
  if (h == 0) throw Error(ErrorCode::invalid_argument, "degree must be positive");
  std::uint64_t count = pow_u64_saturating(p, static_cast<std::uint32_t>(h));
  if (count == UINT64_MAX) throw Error(ErrorCode::invalid_argument, "field too large");
  for (std::uint64_t v = 0; v < count; ++v) {
    Poly f = poly_from_index(v, p, h);
    // A reducible degree-h polynomial has a monic factor of degree <= h/2.
    bool reducible = false;
    for (std::size_t d = 1; d <= h / 2 && !reducible; ++d) {
      std::uint64_t divisors = pow_u64_saturating(p, static_cast<std::uint32_t>(d));
      for (std::uint64_t u = 0; u < divisors; ++u) {
        if (poly_is_zero(poly_rem(f, poly_from_index(u, p, d), p))) {
          reducible = true;
          break;
        }
      }
    }
    if (!reducible) return f;
  }
  throw Error(ErrorCode::invalid_argument, "no irreducible found");  // unreachable
}

ExtField::ExtField(Residue p, std::size_t h) : p_(p), h_(h) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_argument, "p must be prime");
  if (h == 0) throw Error(ErrorCode::invalid_argument, "extension degree must be positive");
  q_ = pow_u64_saturating(p, static_cast<std::uint32_t>(h));
  if (q_ == UINT64_MAX) throw Error(ErrorCode::invalid_argument, "field too large");
  modulus_ = find_irreducible(p, h);
}

ExtField::Elem ExtField::zero() const { return Elem(h_, 0); }

ExtField::Elem ExtField::one() const {
  Elem e(h_, 0);
  e[0] = 1;
  return e;
}

ExtField::Elem ExtField::from_index(std::uint64_t v) const {
  Elem e(h_, 0);
  for (std::size_t i = 0; i < h_; ++i) {
    e[i] = static_cast<Residue>(v % p_);
    v /= p_;
  }
  return e;
}

std::uint64_t ExtField::index_of(const Elem& a) const {
  std::uint64_t v = 0;
  for (std::size_t i = h_; i-- > 0;) v = v * p_ + a[i];
  return v;
}

bool ExtField::is_zero(const Elem& a) const {
  for (Residue c : a)
    if (c != 0) return false;
  return true;
}

ExtField::Elem ExtField::add(const Elem& a, const Elem& b) const {
  Elem out(h_);
  for (std::size_t i = 0; i < h_; ++i) out[i] = add_mod(a[i], b[i], p_);
  return out;
}

ExtField::Elem ExtField::sub(const Elem& a, const Elem& b) const {
  Elem out(h_);
  for (std::size_t i = 0; i < h_; ++i) out[i] = sub_mod(a[i], b[i], p_);
  return out;
}

ExtField::Elem ExtField::mul(const Elem& a, const Elem& b) const {
  std::vector<Residue> tmp(2 * h_ - 1, 0);
  for (std::size_t i = 0; i < h_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < h_; ++j)
      tmp[i + j] = add_mod(tmp[i + j], mul_mod(a[i], b[j], p_), p_);
  }
  // Reduce using z^h = -(m_0 + m_1 z + ... + m_{h-1} z^{h-1}).
  for (std::size_t i = tmp.size(); i-- > h_;) {
    if (tmp[i] == 0) continue;
    Residue c = tmp[i];
    tmp[i] = 0;
    for (std::size_t j = 0; j < h_; ++j)
      tmp[i - h_ + j] = sub_mod(tmp[i - h_ + j], mul_mod(c, modulus_[j], p_), p_);
  }
  tmp.resize(h_);
  return tmp;
}

ExtField::Elem ExtField::pow(const Elem& a, std::uint64_t e) const {
  Elem out = one();
  Elem base = a;
  while (e > 0) {
    if (e & 1) out = mul(out, base);
    base = mul(base, base);
    e >>= 1;
  }
  return out;
}

}  // namespace fvs
