#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "qbs/replication.hpp"

namespace qbs::cli {

// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

enum class OutputFormat { Json, Csv, Text };

OutputFormat parse_format(std::string_view text);

struct QramTestOptions {
    std::filesystem::path data_file;
    std::uint64_t shots = 1024;
    std::optional<std::uint64_t> seed;
    OutputFormat format = OutputFormat::Text;
};

struct CounterTestOptions {
    std::optional<std::string> controls;  // MSB-first, s_{p-1} ... s_0
    bool exhaustive = false;
    std::optional<std::size_t> p;
    std::optional<std::uint64_t> seed;
    OutputFormat format = OutputFormat::Text;
};

struct AssessCommandOptions {
    std::filesystem::path table;
    std::filesystem::path query;
    std::size_t n = 8;
    std::size_t replications = 1000;
    double alpha = 0.05;
    Mode mode = Mode::QuantumSequential;
    std::optional<std::uint64_t> seed;
    OutputFormat format = OutputFormat::Json;
    std::optional<std::filesystem::path> replications_csv;
};

struct SelfcheckOptions {
    // Test-only hook: builds counters with the carry loop reversed, which
    // must make the popcount check fail.
    bool corrupt_counter_order = false;
};

// Each command writes its report to `out`, diagnostics to `err`, and returns
// one of the exit codes above. Library errors map to kExitUsage.
int cmd_qram_test(const QramTestOptions& options, std::ostream& out, std::ostream& err);
int cmd_counter_test(const CounterTestOptions& options, std::ostream& out, std::ostream& err);
int cmd_assess(const AssessCommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_selfcheck(const SelfcheckOptions& options, std::ostream& out, std::ostream& err);

}  // namespace qbs::cli
