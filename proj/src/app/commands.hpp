#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "io.hpp"

namespace heatcert::app {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumeric = 3, kProperty = 4 };

struct RunConfig {
    std::string subcommand;
    std::vector<double> amplitudes;
    int p = 2;
    std::vector<int> modes{1, 3};
    /// Defaults per command: 50 for the Galerkin runs, 10 for fd, 2 (= t1) for picard.
    std::optional<double> horizon;
    std::optional<double> rtol;
    std::optional<double> atol;
    std::optional<double> blowup_threshold;
    std::filesystem::path out = "out";
    std::uint64_t seed = 42;

    int k_max = 10;
    int truncation = 16;
    std::size_t intervals = 2048;
    int grid = 256;
    std::size_t trials = 10000;
    std::optional<double> sup_pos;
    std::optional<double> sup_abs;

    /// Throws DomainError when a field violates its module's preconditions.
    void validate() const;
};

struct RecordFile {
    std::filesystem::path subdir;
    std::string name;
    json record;
};

struct CommandOutput {
    std::vector<RecordFile> records;
    std::string summary;
    bool property_ok = true;
    std::string property_message{};
};

using CommandFn = std::function<CommandOutput(const RunConfig&)>;

CommandOutput cmd_table(const RunConfig& cfg);
CommandOutput cmd_scenario(const RunConfig& cfg);
CommandOutput cmd_critical(const RunConfig& cfg);
CommandOutput cmd_limit(const RunConfig& cfg);
CommandOutput cmd_kaplan(const RunConfig& cfg);
CommandOutput cmd_sobolev(const RunConfig& cfg);
CommandOutput cmd_picard(const RunConfig& cfg);
CommandOutput cmd_fd(const RunConfig& cfg);
CommandOutput cmd_wave(const RunConfig& cfg);

struct CommandInfo {
    const char* name;
    const char* help;
    CommandFn fn;
};

const std::vector<CommandInfo>& commands();

/// Validates, runs, writes the records under cfg.out and maps failures to exit codes.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace heatcert::app
