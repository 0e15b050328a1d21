#include "design.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fvs {

DesignParams select_parameters(Residue p, std::uint32_t r, std::uint32_t t) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_argument, "p must be prime");
  if (r < 1) throw Error(ErrorCode::invalid_argument, "r must be positive");
  if (t < 1) throw Error(ErrorCode::invalid_argument, "t must be positive");

  DesignParams out;
  out.p = p;
  out.r = r;
  out.t = t;
  for (std::uint32_t h = 1; h <= r; ++h) {
    std::uint32_t m = (r + h - 1) / h;
    std::uint64_t lhs = 4ull * t * (m - 1);
    std::uint64_t ph = pow_u64_saturating(p, h);
    if (lhs <= ph) {
      if (lhs + 1 > UINT32_MAX)
        throw Error(ErrorCode::invalid_argument, "family size overflows");
      out.h = h;
      out.m = m;
      out.s = m;
      out.n = static_cast<std::uint32_t>(lhs + 1);
      out.q = ph;
      return out;
    }
  }
  // h = r always satisfies the inequality (left side is 0).
  throw Error(ErrorCode::invalid_argument, "parameter search failed");
}

std::vector<Residue> exponent_set(Residue p) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_argument, "p must be prime");
  std::uint32_t k = 0;
  while (3ull * (1ull << k) < p) ++k;  // minimal k with 2^k >= p/3
  std::vector<Residue> out;
  out.push_back(0);
  for (std::uint32_t i = 0; i <= k; ++i) out.push_back(static_cast<Residue>(1u << i));
  return out;  // 2^k < 2p/3 < p, so no reduction is needed
}

std::vector<std::vector<ExtField::Elem>> vandermonde_set(const ExtField& fq,
                                                         std::uint32_t s,
                                                         std::uint32_t n) {
  if (n > fq.order() + 1)
    throw Error(ErrorCode::too_many_points, "frame size exceeds q+1");
  std::vector<std::vector<ExtField::Elem>> pts;
  pts.reserve(n);
  std::uint64_t from_moments = std::min<std::uint64_t>(n, fq.order());
  for (std::uint64_t v = 0; v < from_moments; ++v) {
    ExtField::Elem x = fq.from_index(v);
    std::vector<ExtField::Elem> point(s);
    point[0] = fq.one();
    for (std::uint32_t i = 1; i < s; ++i) point[i] = fq.mul(point[i - 1], x);
    pts.push_back(std::move(point));
  }
  if (n == fq.order() + 1) {
    std::vector<ExtField::Elem> last(s, fq.zero());
    last[s - 1] = fq.one();
    pts.push_back(std::move(last));
  }
  return pts;
}

namespace {

// Flatten a vector of F_q^s to F_p^{hs} coefficient-wise, keep the first r coords.
Vec project_point(const std::vector<ExtField::Elem>& v, std::size_t h, std::size_t r) {
  Vec out(r, 0);
  for (std::size_t c = 0; c < v.size(); ++c) {
    for (std::size_t i = 0; i < h; ++i) {
      std::size_t pos = c * h + i;
      if (pos < r) out[pos] = v[c][i];
    }
  }
  return out;
}

Subspace make_subspace(std::vector<Vec> basis, Residue p, std::size_t r, std::size_t h) {
  Subspace sub;
  sub.basis = std::move(basis);
  sub.complements = complete_basis(sub.basis, p, r);
  std::vector<Vec> rows = sub.basis;
  rows.insert(rows.end(), sub.complements.begin(), sub.complements.end());
  sub.solve = Mat::from_rows(rows);
  sub.solve_inv = invert(sub.solve, p);
  // Columns h..r-1 of the inverse annihilate every basis row, so they span H^perp.
  for (std::size_t j = h; j < r; ++j) sub.dual_basis.push_back(sub.solve_inv.col(j));
  return sub;
}

}  // namespace

std::vector<Subspace> lift_family(const DesignParams& params, const ExtField& fq,
                                  const std::vector<std::vector<ExtField::Elem>>& points) {
  const Residue p = params.p;
  const std::size_t r = params.r;
  const std::size_t h = params.h;
  ExtField::Elem z = fq.from_index(p);  // the generator z itself (h > 1), unused for h = 1

  std::vector<Subspace> family;
  family.reserve(points.size());
  for (const auto& a : points) {
    // The F_p-span of {z^j a : 0 <= j < h} is the F_q-line through a.
    std::vector<Vec> images;
    ExtField::Elem zj = fq.one();
    for (std::size_t j = 0; j < h; ++j) {
      std::vector<ExtField::Elem> scaled(a.size());
      for (std::size_t c = 0; c < a.size(); ++c) scaled[c] = fq.mul(zj, a[c]);
      images.push_back(project_point(scaled, h, r));
      if (j + 1 < h) zj = fq.mul(zj, z);
    }
    std::vector<Vec> basis = rank_and_span(images, p, r).basis;
    for (std::size_t j = 0; j < r && basis.size() < h; ++j) {
      Vec e = unit_vec(r, j);
      if (!in_span(basis, e, p, r)) {
        basis.push_back(e);
        basis = rank_and_span(basis, p, r).basis;
      }
    }
    family.push_back(make_subspace(std::move(basis), p, r, h));
  }
  return family;
}

Design build_design(Residue p, std::uint32_t r, std::uint32_t t) {
  Design d;
  d.params = select_parameters(p, r, t);
  ExtField fq(p, d.params.h);
  auto points = vandermonde_set(fq, d.params.s, d.params.n);
  d.family = lift_family(d.params, fq, points);
  d.exponents = exponent_set(p);
  return d;
}

std::vector<Vec> coset_points(const Design& design, std::uint32_t i, const Vec& shift) {
  const Residue p = design.params.p;
  const std::size_t h = design.params.h;
  const Subspace& sub = design.family.at(i);
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(design.params.q));
  Vec digits(h, 0);
  for (;;) {
    Vec x = shift;
    for (std::size_t j = 0; j < h; ++j) {
      if (digits[j] != 0) x = add_vec(x, scale_vec(digits[j], sub.basis[j], p), p);
    }
    pts.push_back(std::move(x));
    // lexicographic odometer, last coordinate fastest
    std::size_t j = h;
    while (j > 0) {
      --j;
      if (++digits[j] < p) break;
      digits[j] = 0;
      if (j == 0) return pts;
    }
  }
}

namespace {

SamplingSet collect(const Design& design, Variant variant, std::vector<CosetRef> refs) {
  SamplingSet out;
  out.variant = variant;
  std::set<Vec> dedup;
  for (const CosetRef& ref : refs) {
    for (Vec& x : coset_points(design, ref.subspace, ref.shift)) dedup.insert(std::move(x));
  }
  out.points.assign(dedup.begin(), dedup.end());
  out.cosets = std::move(refs);
  return out;
}

}  // namespace

SamplingSet build_gamma1(const Design& design) {
  std::vector<CosetRef> refs;
  for (std::uint32_t i = 0; i < design.params.n; ++i)
    refs.push_back(CosetRef{i, 0, 0, zero_vec(design.params.r)});
  return collect(design, Variant::gamma1, std::move(refs));
}

SamplingSet build_gamma2(const Design& design) {
  const std::uint32_t r = design.params.r;
  const std::uint32_t h = design.params.h;
  std::vector<CosetRef> refs;
  for (std::uint32_t i = 0; i < design.params.n; ++i) {
    if (h == r) {
      // No complements; the base coset is the whole sampling contribution.
      refs.push_back(CosetRef{i, 0, 0, zero_vec(r)});
      continue;
    }
    const Subspace& sub = design.family[i];
    for (std::uint32_t l = 1; l <= r - h; ++l) {
      for (Residue k : design.exponents) {
        refs.push_back(CosetRef{i, l, k,
                                scale_vec(k, sub.complements[l - 1], design.params.p)});
      }
    }
  }
  return collect(design, Variant::gamma2, std::move(refs));
}

SamplingSet build_sampling_set(const Design& design, Variant variant) {
  return variant == Variant::gamma1 ? build_gamma1(design) : build_gamma2(design);
}

bool verify_m_generating(const Design& design) {
  const std::uint32_t n = design.params.n;
  const std::uint32_t m = design.params.m;
  if (design.family.size() != n || m < 1 || m > n) return false;
  std::vector<std::uint32_t> idx(m);
  for (std::uint32_t i = 0; i < m; ++i) idx[i] = i;
  for (;;) {
    std::vector<Vec> rows;
    for (std::uint32_t i : idx) {
      const Subspace& sub = design.family[i];
      rows.insert(rows.end(), sub.basis.begin(), sub.basis.end());
    }
    if (rank_and_span(rows, design.params.p, design.params.r).rank != design.params.r)
      return false;
    // next m-combination of {0..n-1}
    std::uint32_t j = m;
    while (j > 0) {
      --j;
      if (idx[j] + 1 <= n - (m - j)) {
        ++idx[j];
        for (std::uint32_t l = j + 1; l < m; ++l) idx[l] = idx[l - 1] + 1;
        break;
      }
      if (j == 0) return true;
    }
  }
}

bool verify_coherence(const Design& design) {
  const Residue p = design.params.p;
  const std::uint32_t r = design.params.r;
  const std::uint32_t limit = design.params.m - 1;
  Vec y(r, 0);
  for (;;) {
    // odometer over all labels, skipping y = 0
    std::size_t j = r;
    while (j > 0) {
      --j;
      if (++y[j] < p) break;
      y[j] = 0;
      if (j == 0) return true;
    }
    std::uint32_t count = 0;
    for (const Subspace& sub : design.family) {
      bool annihilates = true;
      for (const Vec& b : sub.basis) {
        if (dot_mod(b, y, p) != 0) {
          annihilates = false;
          break;
        }
      }
      if (annihilates && ++count > limit) return false;
    }
  }
}

BoundReport check_size_bounds(const Design& design) {
  const DesignParams& prm = design.params;
  BoundReport rep;
  rep.gamma1_size = build_gamma1(design).points.size();
  rep.gamma2_size = build_gamma2(design).points.size();
  rep.gamma1_bound = 16ull * prm.p * prm.t * prm.t * prm.r * prm.r;
  const std::uint64_t ksize = design.exponents.size();  // k + 2
  rep.gamma2_bound_int = rep.gamma1_bound * prm.r * ksize;
  rep.gamma2_bound =
      16.0 * prm.p * prm.t * prm.t * double(prm.r) * prm.r * prm.r *
      (2.0 + std::log2(double(prm.p)));
  rep.n_ph = std::uint64_t(prm.n) * prm.q;
  // 2^k < p certifies |K| = k+2 <= 2 + log2(p) in exact arithmetic.
  const bool k_ok = (1ull << (ksize - 2)) < prm.p;
  rep.ok = rep.gamma1_size <= rep.gamma1_bound && k_ok &&
           rep.gamma2_size <= rep.gamma2_bound_int && rep.n_ph < rep.gamma1_bound;
  return rep;
}

}  // namespace fvs
