#ifndef REACHMOD_COMMANDS_HPP
#define REACHMOD_COMMANDS_HPP

#include <iosfwd>
#include <string>

#include "reachmod/polyring.hpp"

namespace reachmod::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParseError = 2,
  kDimensionError = 3,
  kCapExhausted = 4,
  kVerificationFailed = 5,
  kMethodDisagreement = 6,
};

enum class Method { Kernel, Iterative };

struct RunOptions {
  Method method = Method::Kernel;
  MonomialOrder order = MonomialOrder::GRevLex;
  bool structured = false;
  bool verify = false;
  std::size_t pair_cap = 1'000'000;
  std::size_t chain_cap = 64;
};

/// Commands: maxreach, kernel, curly-m, invariant-check, compare, oracle.
/// Results go to `out` and are byte-identical across runs; timings and
/// diagnostics go to `err`.
int run(const std::string& command, const std::string& path, const RunOptions& options,
        std::ostream& out, std::ostream& err);

}  // namespace reachmod::cli

#endif  // REACHMOD_COMMANDS_HPP
