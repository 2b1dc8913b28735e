#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "table.hpp"

namespace ecg::cli {

enum class ExitCode : int { success = 0, mismatch = 1, usage = 2 };

struct RunConfig {
    std::string command;  // mg, mn, grid, verify, constants, matrix
    std::string suite;    // verify only
    std::map<std::string, std::int64_t> params;
    bool per_prime = false;
    Format format = Format::csv;
    std::int64_t cutoff = 100'000;
    std::optional<std::filesystem::path> output_path;
    std::optional<std::filesystem::path> class_cache;
    std::uint64_t seed = 0;
    int threads = 0;  // 0: OpenMP default

    bool has(const std::string& name) const { return params.count(name) != 0; }
    /// Throws std::invalid_argument if the parameter is absent.
    std::int64_t param(const std::string& name) const;
    std::int64_t param_or(const std::string& name, std::int64_t fallback) const;
    /// Throws std::invalid_argument unless cutoff >= 100.
    void validate() const;
};

struct CommandResult {
    Document doc;
    ExitCode code = ExitCode::success;
};

CommandResult cmd_mg(const RunConfig& cfg);
CommandResult cmd_mn(const RunConfig& cfg);
CommandResult cmd_grid(const RunConfig& cfg);
CommandResult cmd_constants(const RunConfig& cfg);
CommandResult cmd_matrix(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);

/// Dispatches on cfg.command.
CommandResult execute(const RunConfig& cfg);

}  // namespace ecg::cli
