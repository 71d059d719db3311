#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace oamw::cli {

int run(int argc, char** argv);

inline const std::vector<std::string> kTargets{"fig3b", "fig4",   "fig5",   "fig6",    "fig7",
                                               "table1", "table3", "table5", "h-search"};

struct ReproduceArgs {
  std::string target;
  std::filesystem::path out = ".";
  std::uint64_t seed = 1;
  int jobs = 1;
  int n = 1024;
  long budget = 200000;
  int resolution = 101;
};

/// Writes the target's artifacts plus manifest.json into args.out. Returns the process exit code.
int reproduce(const ReproduceArgs& args);

}  // namespace oamw::cli
