#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rains::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kNotConverged = 2;
inline constexpr int kCertificateFailed = 3;

// Runs one command; args excludes the program name.
//
//   bound      --state FILE [--max-iters N] [--tol T] [--precision P] [--out CSV] [--tensor-square]
//   kkt        --rho FILE --sigma FILE [--tol T] [--precision P] [--tensor-square]
//   experiment NAME --out CSV [--max-iters N] [--tol T] [--precision P]
//              NAME: nonadditivity | isotropic_scan | bell_scan
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rains::cli
