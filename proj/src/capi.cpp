#define FVS_BUILD
#include "fvs/fvs.h"

#include <new>
#include <string>

#include "io.hpp"

struct fvs_design {
  fvs::Design design;
};

struct fvs_spectrum {
  fvs::Spectrum spectrum;
};

struct fvs_samples {
  fvs::SampleTable samples;
};

namespace {

thread_local std::string g_last_error;

fvs_status map_code(fvs::ErrorCode code) {
  using fvs::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return FVS_ERR_INVALID_ARGUMENT;
    case ErrorCode::singular_matrix: return FVS_ERR_SINGULAR_MATRIX;
    case ErrorCode::too_many_points: return FVS_ERR_TOO_MANY_POINTS;
    case ErrorCode::missing_samples: return FVS_ERR_MISSING_SAMPLES;
    case ErrorCode::even_length: return FVS_ERR_EVEN_LENGTH;
    case ErrorCode::dimension_mismatch: return FVS_ERR_DIMENSION_MISMATCH;
    case ErrorCode::parse_error: return FVS_ERR_PARSE;
    case ErrorCode::io_error: return FVS_ERR_IO;
  }
  return FVS_ERR_INTERNAL;
}

template <typename F>
fvs_status wrap(F&& body) noexcept {
  try {
    body();
    return FVS_OK;
  } catch (const fvs::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FVS_ERR_NOMEM;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FVS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return FVS_ERR_INTERNAL;
  }
}

fvs_status fail_null(const char* what) {
  g_last_error = std::string(what) + " must not be NULL";
  return FVS_ERR_INVALID_ARGUMENT;
}

fvs::Variant to_variant(fvs_variant v) {
  if (v != FVS_GAMMA1 && v != FVS_GAMMA2)
    throw fvs::Error(fvs::ErrorCode::invalid_argument, "unknown sampling variant");
  return v == FVS_GAMMA1 ? fvs::Variant::gamma1 : fvs::Variant::gamma2;
}

}  // namespace

extern "C" {

const char* fvs_status_str(fvs_status status) {
  switch (status) {
    case FVS_OK: return "ok";
    case FVS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FVS_ERR_SINGULAR_MATRIX: return "singular matrix";
    case FVS_ERR_TOO_MANY_POINTS: return "too many points";
    case FVS_ERR_MISSING_SAMPLES: return "missing samples";
    case FVS_ERR_EVEN_LENGTH: return "even-length median input";
    case FVS_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case FVS_ERR_PARSE: return "parse error";
    case FVS_ERR_IO: return "i/o error";
    case FVS_ERR_NOMEM: return "out of memory";
    case FVS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fvs_last_error(void) { return g_last_error.c_str(); }

fvs_status fvs_design_build(uint32_t p, uint32_t r, uint32_t t, fvs_design** out) {
  if (!out) return fail_null("out");
  return wrap([&] { *out = new fvs_design{fvs::build_design(p, r, t)}; });
}

fvs_status fvs_design_load(const char* path, fvs_design** out) {
  if (!out) return fail_null("out");
  if (!path) return fail_null("path");
  return wrap([&] { *out = new fvs_design{fvs::load_design(path)}; });
}

fvs_status fvs_design_save(const fvs_design* d, const char* path) {
  if (!d) return fail_null("design");
  if (!path) return fail_null("path");
  return wrap([&] { fvs::save_design(d->design, path); });
}

fvs_status fvs_design_get_info(const fvs_design* d, fvs_design_info* out) {
  if (!d) return fail_null("design");
  if (!out) return fail_null("out");
  const fvs::DesignParams& prm = d->design.params;
  out->p = prm.p;
  out->r = prm.r;
  out->t = prm.t;
  out->h = prm.h;
  out->m = prm.m;
  out->n = prm.n;
  out->q = prm.q;
  out->exponent_count = static_cast<uint32_t>(d->design.exponents.size());
  return FVS_OK;
}

fvs_status fvs_design_point_count(const fvs_design* d, fvs_variant variant,
                                  uint64_t* out) {
  if (!d) return fail_null("design");
  if (!out) return fail_null("out");
  return wrap([&] {
    *out = fvs::build_sampling_set(d->design, to_variant(variant)).points.size();
  });
}

fvs_status fvs_design_verify(const fvs_design* d, int* m_generating, int* size_bounds,
                             int* coherence) {
  if (!d) return fail_null("design");
  return wrap([&] {
    if (m_generating) *m_generating = fvs::verify_m_generating(d->design) ? 1 : 0;
    if (size_bounds) *size_bounds = fvs::check_size_bounds(d->design).ok ? 1 : 0;
    if (coherence) *coherence = fvs::verify_coherence(d->design) ? 1 : 0;
  });
}

void fvs_design_free(fvs_design* d) { delete d; }

fvs_status fvs_spectrum_create(uint32_t p, uint32_t r, fvs_spectrum** out) {
  if (!out) return fail_null("out");
  return wrap([&] { *out = new fvs_spectrum{fvs::Spectrum(p, r)}; });
}

fvs_status fvs_spectrum_set(fvs_spectrum* s, const uint32_t* label, double re,
                            double im) {
  if (!s) return fail_null("spectrum");
  if (!label) return fail_null("label");
  return wrap([&] {
    fvs::Vec y(label, label + s->spectrum.r());
    s->spectrum.set(y, fvs::Complex(re, im));
  });
}

fvs_status fvs_spectrum_random(uint32_t p, uint32_t r, uint32_t t, uint64_t seed,
                               fvs_spectrum** out) {
  if (!out) return fail_null("out");
  return wrap([&] {
    *out = new fvs_spectrum{fvs::random_sparse_spectrum(p, r, t, seed)};
  });
}

fvs_status fvs_spectrum_add_noise(fvs_spectrum* s, double l1, uint64_t seed,
                                  fvs_spectrum** noise_out) {
  if (!s) return fail_null("spectrum");
  return wrap([&] {
    fvs::Spectrum noise = fvs::random_noise_spectrum(s->spectrum.p(), s->spectrum.r(),
                                                     l1, seed, s->spectrum);
    s->spectrum = fvs::spectrum_sum(s->spectrum, noise);
    if (noise_out) *noise_out = new fvs_spectrum{std::move(noise)};
  });
}

fvs_status fvs_spectrum_dims(const fvs_spectrum* s, uint32_t* p, uint32_t* r) {
  if (!s) return fail_null("spectrum");
  if (p) *p = s->spectrum.p();
  if (r) *r = s->spectrum.r();
  return FVS_OK;
}

fvs_status fvs_spectrum_term_count(const fvs_spectrum* s, uint64_t* out) {
  if (!s) return fail_null("spectrum");
  if (!out) return fail_null("out");
  *out = s->spectrum.support_size();
  return FVS_OK;
}

fvs_status fvs_spectrum_term(const fvs_spectrum* s, uint64_t index, uint32_t* label,
                             double* re, double* im) {
  if (!s) return fail_null("spectrum");
  return wrap([&] {
    if (index >= s->spectrum.support_size())
      throw fvs::Error(fvs::ErrorCode::invalid_argument, "term index out of range");
    auto it = s->spectrum.terms().begin();
    std::advance(it, static_cast<std::ptrdiff_t>(index));
    if (label)
      for (uint32_t i = 0; i < s->spectrum.r(); ++i) label[i] = it->first[i];
    if (re) *re = it->second.real();
    if (im) *im = it->second.imag();
  });
}

fvs_status fvs_spectrum_l1_norm(const fvs_spectrum* s, double* out) {
  if (!s) return fail_null("spectrum");
  if (!out) return fail_null("out");
  *out = s->spectrum.l1_norm();
  return FVS_OK;
}

fvs_status fvs_spectrum_l1_distance(const fvs_spectrum* a, const fvs_spectrum* b,
                                    double* out) {
  if (!a || !b) return fail_null("spectrum");
  if (!out) return fail_null("out");
  return wrap([&] { *out = fvs::l1_distance(a->spectrum, b->spectrum); });
}

fvs_status fvs_spectrum_load(const char* path, uint32_t p, uint32_t r,
                             fvs_spectrum** out) {
  if (!out) return fail_null("out");
  if (!path) return fail_null("path");
  return wrap([&] { *out = new fvs_spectrum{fvs::load_spectrum(path, p, r)}; });
}

fvs_status fvs_spectrum_save(const fvs_spectrum* s, const char* path) {
  if (!s) return fail_null("spectrum");
  if (!path) return fail_null("path");
  return wrap([&] { fvs::save_spectrum(s->spectrum, path); });
}

void fvs_spectrum_free(fvs_spectrum* s) { delete s; }

fvs_status fvs_samples_synthesize(const fvs_design* d, const fvs_spectrum* s,
                                  fvs_variant variant, fvs_samples** out) {
  if (!d) return fail_null("design");
  if (!s) return fail_null("spectrum");
  if (!out) return fail_null("out");
  return wrap([&] {
    if (s->spectrum.p() != d->design.params.p || s->spectrum.r() != d->design.params.r)
      throw fvs::Error(fvs::ErrorCode::dimension_mismatch,
                       "spectrum does not match the design's group");
    fvs::SamplingSet set = fvs::build_sampling_set(d->design, to_variant(variant));
    *out = new fvs_samples{fvs::synthesize_samples(s->spectrum, set.points)};
  });
}

fvs_status fvs_samples_full(const fvs_spectrum* s, fvs_samples** out) {
  if (!s) return fail_null("spectrum");
  if (!out) return fail_null("out");
  return wrap([&] {
    auto points = fvs::all_points(s->spectrum.p(), s->spectrum.r());
    *out = new fvs_samples{fvs::synthesize_samples(s->spectrum, points)};
  });
}

fvs_status fvs_samples_load(const char* path, fvs_samples** out) {
  if (!out) return fail_null("out");
  if (!path) return fail_null("path");
  return wrap([&] { *out = new fvs_samples{fvs::load_samples(path)}; });
}

fvs_status fvs_samples_save(const fvs_samples* t, const char* path) {
  if (!t) return fail_null("samples");
  if (!path) return fail_null("path");
  return wrap([&] { fvs::save_samples(t->samples, path); });
}

fvs_status fvs_samples_count(const fvs_samples* t, uint64_t* out) {
  if (!t) return fail_null("samples");
  if (!out) return fail_null("out");
  *out = t->samples.values.size();
  return FVS_OK;
}

fvs_status fvs_samples_dims(const fvs_samples* t, uint32_t* p, uint32_t* r) {
  if (!t) return fail_null("samples");
  if (p) *p = t->samples.p;
  if (r) *r = t->samples.r;
  return FVS_OK;
}

void fvs_samples_free(fvs_samples* t) { delete t; }

fvs_status fvs_reconstruct(const fvs_design* d, const fvs_samples* t,
                           fvs_variant variant, const char* report_path,
                           fvs_spectrum** out) {
  if (!d) return fail_null("design");
  if (!t) return fail_null("samples");
  if (!out) return fail_null("out");
  return wrap([&] {
    fvs::Variant v = to_variant(variant);
    fvs::RecoveryReport rep = fvs::reconstruct(t->samples, d->design, v);
    if (report_path) fvs::save_report(d->design, v, rep, report_path);
    *out = new fvs_spectrum{std::move(rep.spectrum)};
  });
}

fvs_status fvs_full_dft(const fvs_samples* t, fvs_spectrum** out) {
  if (!t) return fail_null("samples");
  if (!out) return fail_null("out");
  return wrap([&] { *out = new fvs_spectrum{fvs::full_dft(t->samples)}; });
}

}  // extern "C"
