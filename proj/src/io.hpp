#ifndef FVS_IO_HPP
#define FVS_IO_HPP

#include <iosfwd>
#include <string>

#include "recovery.hpp"

namespace fvs {

// Doubles are serialized with 17 significant digits (lossless round trip).
std::string format_double(double v);

void write_design(std::ostream& os, const Design& d);
Design read_design(std::istream& is);
void save_design(const Design& d, const std::string& path);
Design load_design(const std::string& path);

void write_spectrum(std::ostream& os, const Spectrum& s);
Spectrum read_spectrum(std::istream& is, Residue p, std::uint32_t r);
void save_spectrum(const Spectrum& s, const std::string& path);
Spectrum load_spectrum(const std::string& path, Residue p, std::uint32_t r);

void write_samples(std::ostream& os, const SampleTable& t);
SampleTable read_samples(std::istream& is);
void save_samples(const SampleTable& t, const std::string& path);
SampleTable load_samples(const std::string& path);

void write_report(std::ostream& os, const Design& d, Variant variant,
                  const RecoveryReport& rep);
void save_report(const Design& d, Variant variant, const RecoveryReport& rep,
                 const std::string& path);

}  // namespace fvs

#endif
