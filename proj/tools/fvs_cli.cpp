// Command-line front end for the fvs shared library. Talks to the core
// exclusively through the public C API.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fvs/fvs.h"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

int exit_code_for(fvs_status st) {
  return (st == FVS_ERR_IO || st == FVS_ERR_PARSE) ? kExitIo : kExitValidation;
}

[[noreturn]] void die(fvs_status st) {
  std::fprintf(stderr, "error: %s\n", fvs_last_error());
  std::exit(exit_code_for(st));
}

void check(fvs_status st) {
  if (st != FVS_OK) die(st);
}

struct DesignDeleter { void operator()(fvs_design* d) const { fvs_design_free(d); } };
struct SpectrumDeleter { void operator()(fvs_spectrum* s) const { fvs_spectrum_free(s); } };
struct SamplesDeleter { void operator()(fvs_samples* t) const { fvs_samples_free(t); } };

using DesignPtr = std::unique_ptr<fvs_design, DesignDeleter>;
using SpectrumPtr = std::unique_ptr<fvs_spectrum, SpectrumDeleter>;
using SamplesPtr = std::unique_ptr<fvs_samples, SamplesDeleter>;

DesignPtr load_design(const std::string& path) {
  fvs_design* d = nullptr;
  check(fvs_design_load(path.c_str(), &d));
  return DesignPtr(d);
}

double gamma1_bound(const fvs_design_info& info) {
  return 16.0 * info.p * info.t * info.t * info.r * info.r;
}

double gamma2_bound(const fvs_design_info& info) {
  return 16.0 * info.p * info.t * info.t * double(info.r) * info.r * info.r *
         (2.0 + std::log2(double(info.p)));
}

void print_sizes(const fvs_design* d, const fvs_design_info& info) {
  uint64_t g1 = 0, g2 = 0;
  check(fvs_design_point_count(d, FVS_GAMMA1, &g1));
  check(fvs_design_point_count(d, FVS_GAMMA2, &g2));
  std::printf("|Gamma1| = %" PRIu64 "   (bound 16*p*t^2*r^2 = %.0f)\n", g1,
              gamma1_bound(info));
  std::printf("|Gamma2| = %" PRIu64 "   (bound 16*p*t^2*r^3*(2+log2 p) = %.1f)\n", g2,
              gamma2_bound(info));
  std::printf("n*p^h = %" PRIu64 " < %.0f\n", uint64_t(info.n) * info.q,
              gamma1_bound(info));
}

int cmd_design(uint32_t p, uint32_t r, uint32_t t, const std::string& out) {
  fvs_design* raw = nullptr;
  check(fvs_design_build(p, r, t, &raw));
  DesignPtr d(raw);
  fvs_design_info info{};
  check(fvs_design_get_info(d.get(), &info));
  std::printf("p=%u r=%u t=%u h=%u m=%u n=%u q=%" PRIu64 " |K|=%u\n", info.p, info.r,
              info.t, info.h, info.m, info.n, info.q, info.exponent_count);
  print_sizes(d.get(), info);
  check(fvs_design_save(d.get(), out.c_str()));
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_sample(const std::string& design_path, const std::string& spectrum_path,
               bool have_seed, uint64_t seed, const std::string& variant_name,
               double noise, const std::string& out) {
  DesignPtr d = load_design(design_path);
  fvs_design_info info{};
  check(fvs_design_get_info(d.get(), &info));

  SpectrumPtr truth;
  if (!spectrum_path.empty()) {
    fvs_spectrum* s = nullptr;
    check(fvs_spectrum_load(spectrum_path.c_str(), info.p, info.r, &s));
    truth.reset(s);
  } else if (have_seed) {
    fvs_spectrum* s = nullptr;
    check(fvs_spectrum_random(info.p, info.r, info.t, seed, &s));
    truth.reset(s);
  } else {
    std::fprintf(stderr, "error: provide --spectrum or --seed\n");
    return kExitValidation;
  }

  SpectrumPtr eps;
  if (noise > 0) {
    fvs_spectrum* e = nullptr;
    check(fvs_spectrum_add_noise(truth.get(), noise, seed ^ 0x9e3779b97f4a7c15ull, &e));
    eps.reset(e);
  }

  fvs_variant variant = variant_name == "gamma2" ? FVS_GAMMA2 : FVS_GAMMA1;
  fvs_samples* raw = nullptr;
  check(fvs_samples_synthesize(d.get(), truth.get(), variant, &raw));
  SamplesPtr samples(raw);
  check(fvs_samples_save(samples.get(), out.c_str()));
  // Sidecars: the sampled signal's spectrum, and the noise part if any.
  check(fvs_spectrum_save(truth.get(), (out + ".truth").c_str()));
  if (eps) check(fvs_spectrum_save(eps.get(), (out + ".noise").c_str()));

  uint64_t count = 0;
  check(fvs_samples_count(samples.get(), &count));
  std::printf("sampled %" PRIu64 " points (%s) -> %s\n", count, variant_name.c_str(),
              out.c_str());
  return 0;
}

int cmd_reconstruct(const std::string& design_path, const std::string& samples_path,
                    const std::string& variant_name, const std::string& out,
                    const std::string& truth_path, const std::string& spectrum_out) {
  DesignPtr d = load_design(design_path);
  fvs_design_info info{};
  check(fvs_design_get_info(d.get(), &info));

  fvs_samples* raw_samples = nullptr;
  check(fvs_samples_load(samples_path.c_str(), &raw_samples));
  SamplesPtr samples(raw_samples);

  fvs_variant variant = variant_name == "gamma2" ? FVS_GAMMA2 : FVS_GAMMA1;
  fvs_spectrum* raw_spec = nullptr;
  check(fvs_reconstruct(d.get(), samples.get(), variant, out.c_str(), &raw_spec));
  SpectrumPtr recovered(raw_spec);

  uint64_t support = 0;
  check(fvs_spectrum_term_count(recovered.get(), &support));
  std::printf("recovered %" PRIu64 " terms -> %s\n", support, out.c_str());

  if (!spectrum_out.empty()) check(fvs_spectrum_save(recovered.get(), spectrum_out.c_str()));

  if (!truth_path.empty()) {
    fvs_spectrum* raw_truth = nullptr;
    check(fvs_spectrum_load(truth_path.c_str(), info.p, info.r, &raw_truth));
    SpectrumPtr truth(raw_truth);
    double err = 0;
    check(fvs_spectrum_l1_distance(truth.get(), recovered.get(), &err));
    std::printf("l1 error vs truth: %.17g\n", err);
  }
  return 0;
}

int cmd_verify(const std::string& design_path) {
  DesignPtr d = load_design(design_path);
  int m_gen = 0, bounds = 0, coherence = 0;
  check(fvs_design_verify(d.get(), &m_gen, &bounds, &coherence));
  std::printf("m-generating: %s\n", m_gen ? "PASS" : "FAIL");
  std::printf("size bounds:  %s\n", bounds ? "PASS" : "FAIL");
  std::printf("coherence:    %s\n", coherence ? "PASS" : "FAIL");
  return (m_gen && bounds && coherence) ? 0 : kExitValidation;
}

int cmd_oracle_dft(const std::string& samples_path, const std::string& out) {
  fvs_samples* raw = nullptr;
  check(fvs_samples_load(samples_path.c_str(), &raw));
  SamplesPtr samples(raw);
  fvs_spectrum* raw_spec = nullptr;
  check(fvs_full_dft(samples.get(), &raw_spec));
  SpectrumPtr spec(raw_spec);
  check(fvs_spectrum_save(spec.get(), out.c_str()));
  uint64_t support = 0;
  check(fvs_spectrum_term_count(spec.get(), &support));
  std::printf("transform has %" PRIu64 " nonzero terms -> %s\n", support, out.c_str());
  return 0;
}

int cmd_bench(uint32_t p, uint32_t r, uint32_t t, uint32_t trials, uint64_t seed) {
  fvs_design* raw = nullptr;
  check(fvs_design_build(p, r, t, &raw));
  DesignPtr d(raw);
  fvs_design_info info{};
  check(fvs_design_get_info(d.get(), &info));
  std::printf("p=%u r=%u t=%u h=%u m=%u n=%u\n", info.p, info.r, info.t, info.h, info.m,
              info.n);
  print_sizes(d.get(), info);
  std::printf("%-6s %-10s %-10s %-12s %-12s %-12s %-12s\n", "trial", "samples1",
              "samples2", "alg1_ms", "alg2_ms", "err1", "err2");

  double total1 = 0, total2 = 0;
  for (uint32_t trial = 0; trial < trials; ++trial) {
    fvs_spectrum* raw_truth = nullptr;
    check(fvs_spectrum_random(info.p, info.r, info.t, seed + trial, &raw_truth));
    SpectrumPtr truth(raw_truth);

    SamplesPtr samples[2];
    uint64_t counts[2] = {0, 0};
    for (int v = 0; v < 2; ++v) {
      fvs_samples* raw_s = nullptr;
      check(fvs_samples_synthesize(d.get(), truth.get(), v == 0 ? FVS_GAMMA1 : FVS_GAMMA2,
                                   &raw_s));
      samples[v].reset(raw_s);
      check(fvs_samples_count(samples[v].get(), &counts[v]));
    }

    double ms[2] = {0, 0};
    double err[2] = {0, 0};
    for (int v = 0; v < 2; ++v) {
      auto start = std::chrono::steady_clock::now();
      fvs_spectrum* raw_rec = nullptr;
      check(fvs_reconstruct(d.get(), samples[v].get(), v == 0 ? FVS_GAMMA1 : FVS_GAMMA2,
                            nullptr, &raw_rec));
      auto stop = std::chrono::steady_clock::now();
      SpectrumPtr rec(raw_rec);
      ms[v] = std::chrono::duration<double, std::milli>(stop - start).count();
      check(fvs_spectrum_l1_distance(truth.get(), rec.get(), &err[v]));
    }
    total1 += ms[0];
    total2 += ms[1];
    std::printf("%-6u %-10" PRIu64 " %-10" PRIu64 " %-12.3f %-12.3f %-12.3g %-12.3g\n",
                trial, counts[0], counts[1], ms[0], ms[1], err[0], err[1]);
  }
  if (trials > 0)
    std::printf("total  alg1 %.3f ms   alg2 %.3f ms\n", total1, total2);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic sampling designs and sparse Fourier recovery on F_p^r"};
  app.require_subcommand(1);

  uint32_t p = 0, r = 0, t = 0, trials = 5;
  uint64_t seed = 0;
  bool have_seed = false;
  double noise = 0;
  std::string out, design_path, samples_path, spectrum_path, truth_path, spectrum_out;
  std::string variant = "gamma1";

  auto* design = app.add_subcommand("design", "construct a sampling design");
  design->add_option("-p", p, "prime modulus")->required();
  design->add_option("-r", r, "ambient dimension")->required();
  design->add_option("-t", t, "target sparsity")->required();
  design->add_option("-o,--output", out, "design file to write")->required();

  auto* sample = app.add_subcommand("sample", "evaluate a signal on a sampling set");
  sample->add_option("-d,--design", design_path, "design file")->required();
  sample->add_option("--spectrum", spectrum_path, "spectrum file to synthesize");
  sample->add_option("--seed", seed, "generate a random t-sparse spectrum")
      ->each([&](const std::string&) { have_seed = true; });
  sample->add_option("--variant", variant, "gamma1 or gamma2")
      ->check(CLI::IsMember({"gamma1", "gamma2"}));
  sample->add_option("--noise", noise, "l1 mass of added off-support noise");
  sample->add_option("-o,--output", out, "sample file to write")->required();

  auto* rec = app.add_subcommand("reconstruct", "recover a sparse spectrum from samples");
  rec->add_option("-d,--design", design_path, "design file")->required();
  rec->add_option("-i,--input", samples_path, "sample file")->required();
  rec->add_option("--variant", variant, "gamma1 or gamma2")
      ->check(CLI::IsMember({"gamma1", "gamma2"}));
  rec->add_option("-o,--output", out, "report file to write")->required();
  rec->add_option("--truth", truth_path, "reference spectrum for the error line");
  rec->add_option("--spectrum-out", spectrum_out, "also write the bare spectrum here");

  auto* verify = app.add_subcommand("verify", "check a design's structural guarantees");
  verify->add_option("-d,--design", design_path, "design file")->required();

  auto* oracle = app.add_subcommand("oracle-dft", "direct transform of a complete table");
  oracle->add_option("-i,--input", samples_path, "sample file covering all of F_p^r")
      ->required();
  oracle->add_option("-o,--output", out, "spectrum file to write")->required();

  auto* bench = app.add_subcommand("bench", "time both reconstructions");
  bench->add_option("-p", p, "prime modulus")->required();
  bench->add_option("-r", r, "ambient dimension")->required();
  bench->add_option("-t", t, "target sparsity")->required();
  bench->add_option("--trials", trials, "number of trials");
  bench->add_option("--seed", seed, "seed for the generated spectra");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : kExitValidation;
  }

  if (design->parsed()) return cmd_design(p, r, t, out);
  if (sample->parsed())
    return cmd_sample(design_path, spectrum_path, have_seed, seed, variant, noise, out);
  if (rec->parsed())
    return cmd_reconstruct(design_path, samples_path, variant, out, truth_path,
                           spectrum_out);
  if (verify->parsed()) return cmd_verify(design_path);
  if (oracle->parsed()) return cmd_oracle_dft(samples_path, out);
  if (bench->parsed()) return cmd_bench(p, r, t, trials, seed);
  return kExitValidation;
}
