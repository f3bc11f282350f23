#ifndef PATCHKPP_CLI_HPP
#define PATCHKPP_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include "patchkpp/io.hpp"
#include "patchkpp/landscape.hpp"
#include "patchkpp/pde.hpp"

namespace patchkpp {

inline constexpr const char* kVersion = "0.1.0";

/** Resolved run configuration: landscape/reaction/numerics blocks plus the
 *  subcommand-specific scenario block. Schema-checked before any
 *  computation; exactly one of alpha/sigma selects the landscape. */
struct RunConfig {
    Landscape landscape = build_landscape(1, 1, 1, 1, 0.5);
    Reaction reaction = Reaction::logistic(1.0, 1.0);
    StepperConfig numerics;
    int nodes_per_patch = 32;
    double bound_tol = 1e-6;
    json scenario;     // validated per subcommand
    std::uint64_t seed = 1;
    json resolved;     // full config echo, re-runnable as a config
};

RunConfig parse_config(const json& raw);
RunConfig load_config(const std::filesystem::path& path);

void write_manifest(const RunConfig& cfg, const std::string& command,
                    const std::filesystem::path& outdir);

// Subcommand drivers; artifacts land in outdir. Throwing follows the error
// taxonomy (ConfigError / PreconditionError / NumericalError).
void run_eigen(const RunConfig& cfg, const std::filesystem::path& outdir);
void run_speed(const RunConfig& cfg, const std::filesystem::path& outdir);
void run_simulate(const RunConfig& cfg, const std::filesystem::path& outdir);
void run_steady(const RunConfig& cfg, const std::filesystem::path& outdir);
void run_persistence_map(const RunConfig& cfg, const std::filesystem::path& outdir);
int run_selftest(const RunConfig& cfg, const std::filesystem::path& outdir);

/** Exit-code mapping: 0 ok, 2 config, 3 non-persistent precondition,
 *  4 numerical failure. */
int dispatch(const std::string& command, const std::filesystem::path& config_path,
             const std::filesystem::path& outdir, std::uint64_t seed_override,
             bool has_seed_override);

} // namespace patchkpp

#endif
