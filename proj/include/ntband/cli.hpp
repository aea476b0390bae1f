#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ntband {

// Exit codes, stable and documented:
//   0 success
//   2 configuration / grid error
//   3 covariance not positive definite
//   4 i/o error
//   5 run finished but some paths went bankrupt
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNotPositiveDefinite = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitBankruptPaths = 5;

struct CliOptions {
    std::string config_path;
    std::string config_b_path; // compare only
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<unsigned> threads;
    bool quiet = false;
};

int cmd_weights(const CliOptions& options);
int cmd_simulate(const CliOptions& options);
int cmd_compare(const CliOptions& options);
int cmd_trades(const CliOptions& options);

} // namespace ntband
