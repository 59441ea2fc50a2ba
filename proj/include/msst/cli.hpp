#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "msst/families.hpp"

namespace msst::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kResource = 2,
  kDisagreement = 3,  // a verification row or --verify check failed
};

/// Family name followed by its parameters, e.g. {"rect-grid", "4", "5"} or
/// {"split", "3", "0,1", "1,2"}. random-split and random-convex draw from `seed`.
/// Throws ParameterError.
FamilySpec parse_family(const std::vector<std::string>& tokens, std::uint64_t seed = 0);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msst::cli
