#pragma once

#include "nilstab/cohomology.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nilstab::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct ExperimentConfig {
  std::string group = "lattice:2";
  std::string cocycle;
  std::string cycle;
  std::vector<std::size_t> n_list;
  std::size_t samples = 200;
  long bound = 3;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string format = "csv";
};

/// Builtin group name ("lattice:m", "Zm", "heisenberg3", "H3") or a JSON file.
GroupRef resolve_group(const std::string& source);
/// "builtin:z2_skinny", "builtin:heisenberg_skinny", "zero", or a JSON file.
/// Builtin cocycles must live on the selected group.
PolyCocycle resolve_cocycle(const std::string& source, const GroupRef& group);
/// "builtin:voiculescu", "builtin:c1", "builtin:ck:<k>", or a JSON file.
Chain2 resolve_cycle(const std::string& source, std::size_t hirsch);

int cmd_validate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_certify(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line, argv[0] included.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nilstab::cli
