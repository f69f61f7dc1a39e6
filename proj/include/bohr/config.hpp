#pragma once

// Run configuration shared by the CLI subcommands. Every report embeds the
// config that produced it, so a run can be reproduced bit-for-bit from the
// report alone in standard precision mode.

#include "bohr/expsum.hpp"

#include <stdexcept>

#include <cstdint>
#include <string>

namespace bohr {

struct RunConfig {
  std::string precision = "standard";  // "standard" | "high"
  double equiv_tol = 1e-9;
  double grid_window = 0.0;     // 0: derived per instance
  double lattice_bound = 0.0;   // 0: derived per instance
  GridSpec grid;
  int threads = 1;
  std::uint64_t seed = 1;
  std::string out_path;

  void validate() const {
    if (precision != "standard" && precision != "high")
      throw std::invalid_argument("precision must be \"standard\" or \"high\"");
    if (!(equiv_tol > 0)) throw std::invalid_argument("equiv_tol must be > 0");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  }

  int phase_precision_bits() const { return precision == "high" ? 320 : 192; }
};

}  // namespace bohr
