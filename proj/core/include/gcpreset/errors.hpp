// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace gcpreset {

enum class errc {
  domain,                   // argument outside the mathematical domain
  out_of_support,           // density queried outside the support closure
  reflect_not_needed,       // reflection requested for a directly handled regime
  xi_zero,                  // operation requires a positive reset rate
  singular,                 // density has a non-integrable point value here
  empty_samples,            // no samples to aggregate
  quadrature_nonconverged,  // adaptive integrator failed its tolerance
};

const char* to_string(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::domain: return "DOMAIN";
    case errc::out_of_support: return "OUT_OF_SUPPORT";
    case errc::reflect_not_needed: return "REFLECT_NOT_NEEDED";
    case errc::xi_zero: return "XI_ZERO";
    case errc::singular: return "SINGULAR";
    case errc::empty_samples: return "EMPTY_SAMPLES";
    case errc::quadrature_nonconverged: return "QUADRATURE_NONCONVERGED";
  }
  return "UNKNOWN";
}

}  // namespace gcpreset
