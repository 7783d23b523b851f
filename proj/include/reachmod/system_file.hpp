#ifndef REACHMOD_SYSTEM_FILE_HPP
#define REACHMOD_SYSTEM_FILE_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "reachmod/geocontrol.hpp"

namespace reachmod {

/// A system file describes one instance:
///
///   ring:
///     variables: [t, w]     # optional, default none (R = Q or F_p)
///     characteristic: 0     # optional, 0 = rationals, else a prime < 2^31
///   A: [["0", "1"], ["t", "0"]]
///   B: [["1"], ["t"]]
///   M:
///     image: [["1"], ["0"]]  # columns generate M; or
///     kernel: [["0", "1"]]   # M = {x : C x = 0}; or the scalars zero / full
///
/// Entries are polynomial strings (plain YAML numbers are accepted too).
/// JSON is valid input as well.
struct SystemFile {
  RingPtr ring;
  SystemPair system;
  StateSubmodule m;
  /// "image", "kernel", "zero" or "full".
  std::string m_form;
};

/// Throws ParseError (with a "line N, field X" location) or DimensionError.
SystemFile parse_system_text(std::string_view text, MonomialOrder order = MonomialOrder::GRevLex,
                             const EngineOptions& options = {});
SystemFile parse_system_file(const std::filesystem::path& path,
                             MonomialOrder order = MonomialOrder::GRevLex,
                             const EngineOptions& options = {});

}  // namespace reachmod

#endif  // REACHMOD_SYSTEM_FILE_HPP
