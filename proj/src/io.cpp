#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fvs {

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::parse_error, what);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::io_error, "cannot open " + path);
  return is;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::io_error, "cannot write " + path);
  return os;
}

void flush_check(std::ostream& os, const std::string& path) {
  os.flush();
  if (!os) throw Error(ErrorCode::io_error, "write failed: " + path);
}

std::string next_line(std::istream& is, const char* what) {
  std::string line;
  if (!std::getline(is, line)) parse_fail(std::string("unexpected end of file, expected ") + what);
  return line;
}

Vec parse_vec(std::istringstream& ss, std::uint32_t len, Residue p, const char* what) {
  Vec v(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    long long c;
    if (!(ss >> c) || c < 0 || std::uint64_t(c) >= p)
      parse_fail(std::string("bad coordinate in ") + what);
    v[i] = static_cast<Residue>(c);
  }
  return v;
}

void write_vec(std::ostream& os, const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i];
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_design(std::ostream& os, const Design& d) {
  const DesignParams& prm = d.params;
  os << "FVSDESIGN v1\n";
  os << prm.p << ' ' << prm.r << ' ' << prm.t << ' ' << prm.h << ' ' << prm.m << ' '
     << prm.n << '\n';
  for (std::uint32_t i = 0; i < prm.n; ++i) {
    const Subspace& sub = d.family[i];
    os << "H " << i + 1 << '\n';
    for (const Vec& b : sub.basis) {
      write_vec(os, b);
      os << '\n';
    }
    os << "X " << i + 1 << '\n';
    for (const Vec& x : sub.complements) {
      write_vec(os, x);
      os << '\n';
    }
  }
  os << 'K';
  for (Residue k : d.exponents) os << ' ' << k;
  os << '\n';
}

Design read_design(std::istream& is) {
  if (next_line(is, "header") != "FVSDESIGN v1") parse_fail("bad design header");

  Design d;
  DesignParams& prm = d.params;
  {
    std::istringstream ss(next_line(is, "parameter line"));
    if (!(ss >> prm.p >> prm.r >> prm.t >> prm.h >> prm.m >> prm.n))
      parse_fail("bad parameter line");
  }
  if (!is_prime(prm.p)) parse_fail("p must be prime");
  if (prm.r < 1 || prm.t < 1 || prm.h < 1 || prm.h > prm.r) parse_fail("bad dimensions");
  if (prm.m != (prm.r + prm.h - 1) / prm.h) parse_fail("m must equal ceil(r/h)");
  if (prm.n != 4 * prm.t * (prm.m - 1) + 1) parse_fail("n must equal 4t(m-1)+1");
  prm.s = prm.m;
  prm.q = pow_u64_saturating(prm.p, prm.h);

  for (std::uint32_t i = 0; i < prm.n; ++i) {
    {
      std::istringstream ss(next_line(is, "subspace header"));
      std::string tag;
      std::uint32_t num;
      if (!(ss >> tag >> num) || tag != "H" || num != i + 1) parse_fail("bad H block");
    }
    std::vector<Vec> basis;
    for (std::uint32_t b = 0; b < prm.h; ++b) {
      std::istringstream ss(next_line(is, "basis vector"));
      basis.push_back(parse_vec(ss, prm.r, prm.p, "basis vector"));
    }
    {
      std::istringstream ss(next_line(is, "complement header"));
      std::string tag;
      std::uint32_t num;
      if (!(ss >> tag >> num) || tag != "X" || num != i + 1) parse_fail("bad X block");
    }
    std::vector<Vec> complements;
    for (std::uint32_t l = 0; l < prm.r - prm.h; ++l) {
      std::istringstream ss(next_line(is, "complement vector"));
      complements.push_back(parse_vec(ss, prm.r, prm.p, "complement vector"));
    }

    Subspace sub;
    sub.basis = std::move(basis);
    sub.complements = std::move(complements);
    std::vector<Vec> rows = sub.basis;
    rows.insert(rows.end(), sub.complements.begin(), sub.complements.end());
    sub.solve = Mat::from_rows(rows);
    sub.solve_inv = invert(sub.solve, prm.p);  // rejects dependent rows
    for (std::uint32_t j = prm.h; j < prm.r; ++j)
      sub.dual_basis.push_back(sub.solve_inv.col(j));
    d.family.push_back(std::move(sub));
  }

  {
    std::istringstream ss(next_line(is, "exponent line"));
    std::string tag;
    if (!(ss >> tag) || tag != "K") parse_fail("bad exponent line");
    long long v;
    while (ss >> v) {
      if (v < 0 || std::uint64_t(v) >= prm.p) parse_fail("exponent out of range");
      d.exponents.push_back(static_cast<Residue>(v));
    }
  }
  // The decoder relies on K = {0, 1, 2, 4, ...}; reject anything else.
  if (d.exponents.size() < 2 || d.exponents[0] != 0) parse_fail("malformed exponent set");
  for (std::size_t i = 1; i < d.exponents.size(); ++i) {
    if (d.exponents[i] != (1u << (i - 1))) parse_fail("malformed exponent set");
  }
  return d;
}

void save_design(const Design& d, const std::string& path) {
  auto os = open_out(path);
  write_design(os, d);
  flush_check(os, path);
}

Design load_design(const std::string& path) {
  auto is = open_in(path);
  return read_design(is);
}

void write_spectrum(std::ostream& os, const Spectrum& s) {
  for (const auto& [y, v] : s.terms()) {
    write_vec(os, y);
    os << " : " << format_double(v.real()) << ' ' << format_double(v.imag()) << '\n';
  }
}

Spectrum read_spectrum(std::istream& is, Residue p, std::uint32_t r) {
  Spectrum s(p, r);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    Vec y = parse_vec(ss, r, p, "spectrum label");
    std::string sep;
    double re, im;
    if (!(ss >> sep >> re >> im) || sep != ":") parse_fail("bad spectrum line");
    s.set(y, Complex(re, im));
  }
  return s;
}

void save_spectrum(const Spectrum& s, const std::string& path) {
  auto os = open_out(path);
  write_spectrum(os, s);
  flush_check(os, path);
}

Spectrum load_spectrum(const std::string& path, Residue p, std::uint32_t r) {
  auto is = open_in(path);
  return read_spectrum(is, p, r);
}

void write_samples(std::ostream& os, const SampleTable& t) {
  os << "FVSSAMPLES v1\n";
  os << t.p << ' ' << t.r << '\n';
  for (const auto& [x, v] : t.values) {
    write_vec(os, x);
    os << " : " << format_double(v.real()) << ' ' << format_double(v.imag()) << '\n';
  }
}

SampleTable read_samples(std::istream& is) {
  if (next_line(is, "header") != "FVSSAMPLES v1") parse_fail("bad samples header");
  SampleTable t;
  {
    std::istringstream ss(next_line(is, "dimension line"));
    if (!(ss >> t.p >> t.r)) parse_fail("bad dimension line");
  }
  if (!is_prime(t.p)) parse_fail("p must be prime");
  if (t.r < 1) parse_fail("bad dimensions");
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    Vec x = parse_vec(ss, t.r, t.p, "sample point");
    std::string sep;
    double re, im;
    if (!(ss >> sep >> re >> im) || sep != ":") parse_fail("bad sample line");
    t.values[x] = Complex(re, im);
  }
  return t;
}

void save_samples(const SampleTable& t, const std::string& path) {
  auto os = open_out(path);
  write_samples(os, t);
  flush_check(os, path);
}

SampleTable load_samples(const std::string& path) {
  auto is = open_in(path);
  return read_samples(is);
}

void write_report(std::ostream& os, const Design& d, Variant variant,
                  const RecoveryReport& rep) {
  const DesignParams& prm = d.params;
  os << "FVSRECOVERY v1\n";
  os << "p " << prm.p << " r " << prm.r << " t " << prm.t << " h " << prm.h << " m "
     << prm.m << " n " << prm.n << " variant "
     << (variant == Variant::gamma1 ? "gamma1" : "gamma2") << '\n';
  write_spectrum(os, rep.spectrum);
  os << "# diagnostics\n";
  for (std::size_t j = 0; j < rep.diag.selected.size(); ++j)
    os << "j " << j + 1 << " selected " << rep.diag.selected[j].size() << '\n';
  os << "voted-labels " << rep.diag.votes.size() << '\n';
  os << "candidates " << rep.diag.medians.size() << '\n';
}

void save_report(const Design& d, Variant variant, const RecoveryReport& rep,
                 const std::string& path) {
  auto os = open_out(path);
  write_report(os, d, variant, rep);
  flush_check(os, path);
}

}  // namespace fvs
