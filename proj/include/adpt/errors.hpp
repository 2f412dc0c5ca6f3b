#pragma once

#include <stdexcept>
#include <string>

namespace adpt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested jet depth / feature beyond what the object supports.
struct CapabilityError : Error {
  using Error::Error;
};

struct NumericError : Error {
  using Error::Error;
};

// Spectral gap below the configured floor; carries the measured gap.
struct GapError : Error {
  double measured_gap;
  GapError(const std::string& what, double gap) : Error(what), measured_gap(gap) {}
};

// Band multiplicity / degeneracy inconsistent with the BandSpec.
struct BandError : Error {
  using Error::Error;
};

// ||pi_a - pi_b|| >= 1, Nagy transport undefined.
struct TransportDomainError : Error {
  using Error::Error;
};

// Symbol has non-negligible mass at the grid's Nyquist momentum.
struct AliasingError : Error {
  double wrap_jump;
  AliasingError(const std::string& what, double jump) : Error(what), wrap_jump(jump) {}
};

// Spectrum of an almost-projector not clustered near {0,1}.
struct ClusterError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace adpt
