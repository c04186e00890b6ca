#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qbs/version.hpp"

namespace {

using namespace qbs::cli;

// Routes report output to --out when given, stdout otherwise.
class Output {
public:
    bool open(const std::string& path, std::ostream& err) {
        if (path.empty()) return true;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) {
            err << "error: cannot write " << path << '\n';
            return false;
        }
        return true;
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum bootstrap sampling for approximate query error assessment"};
    app.set_version_flag("--version", std::string(qbs::kVersion));
    app.require_subcommand(1);

    std::string format = "text";
    std::string out_path;
    std::uint64_t seed_value = 0;

    const auto add_common = [&](CLI::App* cmd, const std::string& default_format) {
        cmd->add_option("--seed", seed_value, "64-bit seed (drawn from entropy and echoed if absent)");
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->default_str(default_format);
        cmd->add_option("--out", out_path, "Write the report to PATH instead of stdout");
    };

    QramTestOptions qram;
    auto* qram_cmd = app.add_subcommand("qram-test", "Run the resampler on a data array and tabulate outcomes");
    qram_cmd->add_option("data", qram.data_file, "JSON data file ({\"bits\": [...]} or {\"values\": [...], \"width\": w})")
        ->required();
    qram_cmd->add_option("--shots", qram.shots, "Number of shots")->capture_default_str();
    add_common(qram_cmd, "text");

    CounterTestOptions counter;
    std::string controls;
    std::size_t p = 8;
    auto* counter_cmd = app.add_subcommand("counter-test", "Run the quantum counter on control inputs");
    counter_cmd->add_option("--controls", controls, "Control bits, MSB first (s_{p-1} ... s_0)");
    counter_cmd->add_flag("--exhaustive", counter.exhaustive, "Check every control input (p <= 10)");
    counter_cmd->add_option("-p", p, "Number of control qubits")->capture_default_str();
    add_common(counter_cmd, "text");

    AssessCommandOptions assess;
    std::string mode = "sequential";
    std::string replications_csv;
    auto* assess_cmd = app.add_subcommand("assess", "Estimate a query and its bootstrap error");
    assess_cmd->add_option("--table", assess.table, "CSV or JSON table")->required();
    assess_cmd->add_option("--query", assess.query, "JSON query file")->required();
    assess_cmd->add_option("-n,--sample-size", assess.n, "AQP sample size n")->capture_default_str();
    assess_cmd->add_option("-B,--reps", assess.replications, "Bootstrap replications B")->capture_default_str();
    assess_cmd->add_option("--alpha", assess.alpha, "Significance level in (0, 0.5)")->capture_default_str();
    assess_cmd->add_option("--mode", mode, "Replication mode")
        ->check(CLI::IsMember({"sequential", "parallel", "oracle", "quantum_sequential", "quantum_parallel",
                               "classical_oracle"}))
        ->capture_default_str();
    assess_cmd->add_option("--replications-csv", replications_csv, "Also write replications as CSV");
    add_common(assess_cmd, "json");

    SelfcheckOptions selfcheck;
    auto* selfcheck_cmd = app.add_subcommand("selfcheck", "Run the embedded invariant checks");
    selfcheck_cmd->add_flag("--corrupt-counter-order", selfcheck.corrupt_counter_order)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const bool seeded = [&] {
        for (auto* cmd : {qram_cmd, counter_cmd, assess_cmd}) {
            if (cmd->parsed() && cmd->count("--seed") > 0) return true;
        }
        return false;
    }();
    const std::optional<std::uint64_t> seed = seeded ? std::optional(seed_value) : std::nullopt;

    Output output;
    if (!output.open(out_path, std::cerr)) return kExitUsage;

    try {
        if (qram_cmd->parsed()) {
            qram.seed = seed;
            qram.format = parse_format(format);
            return cmd_qram_test(qram, output.stream(), std::cerr);
        }
        if (counter_cmd->parsed()) {
            if (counter_cmd->count("--controls") > 0) counter.controls = controls;
            if (counter_cmd->count("-p") > 0 || counter.exhaustive) counter.p = p;
            counter.seed = seed;
            counter.format = parse_format(format);
            return cmd_counter_test(counter, output.stream(), std::cerr);
        }
        if (assess_cmd->parsed()) {
            if (assess_cmd->count("--format") == 0) format = "json";
            assess.mode = qbs::parse_mode(mode);
            assess.seed = seed;
            assess.format = parse_format(format);
            if (!replications_csv.empty()) assess.replications_csv = replications_csv;
            return cmd_assess(assess, output.stream(), std::cerr);
        }
        if (selfcheck_cmd->parsed()) return cmd_selfcheck(selfcheck, output.stream(), std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
