#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace motivic {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

// Error codes double as CLI exit codes.
enum class ErrorCode : int {
  Config = 2,        // malformed input / validation failure
  Precondition = 3,  // operation or theorem hypothesis not met
  Stabilization = 4, // truncated series did not stabilize
  SizeLimit = 5,     // brute-force enumeration refused as too large
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

private:
  ErrorCode code_;
};

// Parses "a", "-a", or "a/b" (optional leading sign). Throws Error(Config)
// on anything else.  The result is always in lowest terms.
inline Rat parse_rational(const std::string& s) {
  if (s.empty()) throw Error(ErrorCode::Config, "empty rational literal");
  const std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw Error(ErrorCode::Config, "bad rational literal: " + s);
  std::size_t slash = std::string::npos;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] == '/') {
      if (slash != std::string::npos || i == start || i + 1 == s.size())
        throw Error(ErrorCode::Config, "bad rational literal: " + s);
      slash = i;
      continue;
    }
    if (s[i] < '0' || s[i] > '9') throw Error(ErrorCode::Config, "bad rational literal: " + s);
  }
  Int num(s.substr(start, (slash == std::string::npos ? s.size() : slash) - start));
  Int den(1);
  if (slash != std::string::npos) den = Int(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::Config, "zero denominator");
  Rat r = Rat(num) / Rat(den); // division canonicalizes
  return s[0] == '-' ? Rat(-r) : r;
}

inline std::string to_string(const Rat& r) { return r.str(); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

} // namespace motivic
