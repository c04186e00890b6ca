#include "commands.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qbs/qbs.hpp"
#include "qbs/json.hpp"

namespace qbs::cli {

namespace {

using nlohmann::json;

std::string bar(std::uint64_t value, std::uint64_t max, std::size_t width = 40) {
    if (max == 0) return {};
    const auto eighths = static_cast<std::size_t>(static_cast<double>(value) / static_cast<double>(max) *
                                                  static_cast<double>(width * 8) + 0.5);
    static const char* partial[] = {"", "▏", "▎", "▍", "▌", "▋", "▊", "▉"};
    std::string s;
    for (std::size_t i = 0; i < eighths / 8; ++i) s += "█";
    s += partial[eighths % 8];
    return s;
}

std::string header(std::string_view command, std::uint64_t seed, std::string_view extra) {
    std::ostringstream ss;
    ss << "# qbs " << kVersion << ' ' << command << " seed=" << seed;
    if (!extra.empty()) ss << ' ' << extra;
    return ss.str();
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const qbs::Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

// Counter check shared by counter-test and selfcheck: loads `controls` via X
// gates, runs the counter, measures once.
struct CounterRun {
    Bitstring full;
    std::uint64_t controls = 0;
    std::uint64_t counter = 0;
    std::size_t p = 0;
    std::size_t q = 0;
};

CounterRun run_counter(std::uint64_t controls, std::size_t p, std::uint64_t seed,
                       CarryOrder order = CarryOrder::HighToLow) {
    const CounterSpec spec = CounterSpec::for_controls(p);
    Circuit c(p + spec.counter_bits);
    for (std::size_t i = 0; i < p; ++i) {
        if ((controls >> i) & 1U) c.x(static_cast<Qubit>(i));
    }
    c.append(build_counter(spec, order), Qubit{0});
    const Bitstring shot = measure_once(c, seed);
    return {shot, extract(shot.value, {0, static_cast<Qubit>(p)}),
            extract(shot.value, {static_cast<Qubit>(p), static_cast<Qubit>(spec.counter_bits)}), p,
            spec.counter_bits};
}

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

CheckResult check_norms() {
    Rng rng(0x6e6f726d);
    std::size_t worst_case = 0;
    double worst = 0.0;
    for (std::size_t trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.below(5));
        Circuit c(n);
        for (std::size_t g = 0; g < 30; ++g) {
            const auto t = static_cast<Qubit>(rng.below(n));
            const auto kind = rng.below(3);
            if (kind == 0) {
                c.h(t);
            } else if (kind == 1) {
                c.x(t);
            } else {
                const auto ctl = static_cast<Qubit>((t + 1 + rng.below(n - 1)) % n);
                c.cx(ctl, t);
            }
        }
        const double drift = std::abs(simulate(c).norm_squared() - 1.0);
        if (drift > worst) {
            worst = drift;
            worst_case = trial;
        }
    }
    std::ostringstream d;
    d << "200 random circuits, max |norm - 1| = " << worst << " (case " << worst_case << ")";
    return {"statevector norm", worst <= 1e-12, d.str()};
}

CheckResult check_qram() {
    Rng rng(0x7172616d);
    std::size_t checked = 0;
    std::size_t bad = 0;
    for (std::size_t a = 1; a <= 3; ++a) {
        for (std::size_t trial = 0; trial < 20; ++trial) {
            std::vector<std::uint8_t> bits(std::size_t{1} << a);
            for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
            const BitDataArray data(bits);
            const Circuit q = build_bit_qram(data);
            for (std::size_t addr = 0; addr < data.size(); ++addr) {
                const BasisState out = simulate_basis(q, addr);
                ++checked;
                if (out != (addr | (BasisState{data[addr]} << a))) ++bad;
            }
        }
    }
    return {"qram lookup", bad == 0,
            std::to_string(checked - bad) + "/" + std::to_string(checked) + " address lookups correct"};
}

CheckResult check_counter(CarryOrder order) {
    std::size_t checked = 0;
    std::size_t bad = 0;
    for (std::size_t p = 1; p <= 8; ++p) {
        const CounterSpec spec = CounterSpec::for_controls(p);
        const Circuit c = build_counter(spec, order);
        for (std::uint64_t in = 0; in < (std::uint64_t{1} << p); ++in) {
            const BasisState out = simulate_basis(c, in);
            ++checked;
            if (extract(out, {static_cast<Qubit>(p), static_cast<Qubit>(spec.counter_bits)}) !=
                static_cast<std::uint64_t>(std::popcount(in))) {
                ++bad;
            }
        }
    }
    return {"counter popcount", bad == 0,
            std::to_string(checked - bad) + "/" + std::to_string(checked) + " inputs (p = 1..8) correct"};
}

CheckResult check_adder() {
    std::size_t checked = 0;
    std::size_t bad = 0;
    for (std::size_t w = 1; w <= 3; ++w) {
        const Circuit c = build_ripple_adder(w);
        const std::uint64_t lim = std::uint64_t{1} << w;
        for (std::uint64_t a = 0; a < lim; ++a) {
            for (std::uint64_t b = 0; b < lim; ++b) {
                const BasisState out = simulate_basis(c, a | (b << w));
                const std::uint64_t sum = a + b;
                const BasisState want = a | ((sum % lim) << w) | ((sum >= lim ? 1ULL : 0ULL) << (2 * w + 1));
                ++checked;
                if (out != want) ++bad;
            }
        }
    }
    return {"ripple-carry adder", bad == 0,
            std::to_string(checked - bad) + "/" + std::to_string(checked) + " operand pairs (width 1..3) correct"};
}

CheckResult check_oracle_agreement() {
    const SampleResults s = SampleResults::count({0, 1, 0, 1, 0, 1, 0, 1}, 16);
    const auto quantum = replicate(s, 500, Mode::QuantumSequential, 0x5eed01);
    const auto classical = classical_bootstrap_oracle(s, 500, 0x5eed02);
    const auto hq = histogram(quantum.raw_counts(), s.n() + 1);
    const auto hc = histogram(classical.raw_counts(), s.n() + 1);
    const ChiSquareResult r = chi_square_two_sample(hq, hc);
    std::ostringstream d;
    d << "B = 500 each, chi2 = " << std::setprecision(4) << r.statistic << " (dof " << r.dof
      << "), p = " << r.p_value;
    return {"quantum/classical oracle agreement", !r.rejects(0.001), d.str()};
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
    if (text == "json") return OutputFormat::Json;
    if (text == "csv") return OutputFormat::Csv;
    if (text == "text") return OutputFormat::Text;
    throw ParseError("unknown output format '" + std::string(text) + "'");
}

int cmd_qram_test(const QramTestOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (options.shots == 0) throw InvalidArgument("--shots must be positive");
        const std::uint64_t seed = options.seed.value_or(entropy_seed());
        const DataArray data = load_data_array(options.data_file);

        const bool is_bits = std::holds_alternative<BitDataArray>(data);
        const Circuit qsa = is_bits ? build_qsa(std::get<BitDataArray>(data))
                                    : [&] {
                                          const auto& v = std::get<ValueDataArray>(data);
                                          Circuit c(v.address_width() + v.width());
                                          for (std::size_t q = 0; q < v.address_width(); ++q) c.h(static_cast<Qubit>(q));
                                          c.append(build_value_qram(v), Qubit{0});
                                          c.label("addr", {0, static_cast<Qubit>(v.address_width())});
                                          c.label("data", {static_cast<Qubit>(v.address_width()),
                                                           static_cast<Qubit>(v.width())});
                                          return c;
                                      }();
        const auto lookup = [&](std::size_t addr) -> std::uint64_t {
            return is_bits ? std::get<BitDataArray>(data)[addr] : std::get<ValueDataArray>(data)[addr];
        };
        const QubitRange addr_reg = *qsa.find_register("addr");
        const QubitRange data_reg = *qsa.find_register("data");

        const CountsTable counts = sample(qsa, options.shots, seed);
        struct Row {
            std::uint64_t addr;
            std::uint64_t value;
            std::uint64_t count;
            bool ok;
        };
        std::vector<Row> rows;
        bool all_ok = true;
        std::uint64_t max_count = 0;
        for (const auto& [state, n] : counts.entries()) {
            const std::uint64_t addr = extract(state, addr_reg);
            const std::uint64_t value = extract(state, data_reg);
            const bool ok = value == lookup(addr);
            all_ok = all_ok && ok;
            max_count = std::max(max_count, n);
            rows.push_back({addr, value, n, ok});
        }
        std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.addr < b.addr; });

        const auto addr_bits = [&](std::uint64_t a) { return Bitstring{a, addr_reg.size}.str(); };
        const auto data_bits = [&](std::uint64_t v) { return Bitstring{v, data_reg.size}.str(); };

        switch (options.format) {
            case OutputFormat::Json: {
                json j{{"version", kVersion},
                       {"command", "qram-test"},
                       {"seed", seed},
                       {"shots", options.shots},
                       {"address_width", addr_reg.size},
                       {"data_width", data_reg.size},
                       {"match", all_ok}};
                json arr = json::array();
                for (const Row& r : rows) {
                    arr.push_back({{"address_binary", addr_bits(r.addr)},
                                   {"address", r.addr},
                                   {"data_binary", data_bits(r.value)},
                                   {"data", r.value},
                                   {"count", r.count},
                                   {"expected", lookup(r.addr)}});
                }
                j["rows"] = std::move(arr);
                out << j.dump(2) << '\n';
                break;
            }
            case OutputFormat::Csv:
                out << header("qram-test", seed, "shots=" + std::to_string(options.shots)) << '\n';
                out << "address_binary,address_decimal,data,count\n";
                for (const Row& r : rows) {
                    out << addr_bits(r.addr) << ',' << r.addr << ',' << data_bits(r.value) << ',' << r.count << '\n';
                }
                break;
            case OutputFormat::Text:
                out << header("qram-test", seed, "shots=" + std::to_string(options.shots)) << '\n';
                out << std::left << std::setw(10) << "address" << std::setw(9) << "decimal" << std::setw(8)
                    << "data" << std::setw(7) << "count" << "histogram\n";
                for (const Row& r : rows) {
                    out << std::left << std::setw(10) << addr_bits(r.addr) << std::setw(9) << r.addr << std::setw(8)
                        << data_bits(r.value) << std::setw(7) << r.count << bar(r.count, max_count)
                        << (r.ok ? "" : "  MISMATCH") << '\n';
                }
                out << "data matches array: " << (all_ok ? "yes" : "no") << '\n';
                break;
        }
        return all_ok ? kExitOk : kExitVerificationFailed;
    });
}

int cmd_counter_test(const CounterTestOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::uint64_t seed = options.seed.value_or(entropy_seed());
        if (options.exhaustive == options.controls.has_value()) {
            throw InvalidArgument("give exactly one of --controls or --exhaustive");
        }
        if (options.exhaustive) {
            const std::size_t p = options.p.value_or(8);
            if (p == 0 || p > 10) throw InvalidArgument("exhaustive mode needs 1 <= p <= 10");
            std::uint64_t correct = 0;
            const std::uint64_t total = std::uint64_t{1} << p;
            std::vector<std::uint64_t> failures;
            for (std::uint64_t in = 0; in < total; ++in) {
                const CounterRun r = run_counter(in, p, derive_seed(seed, in));
                if (r.counter == static_cast<std::uint64_t>(std::popcount(in)) && r.controls == in) {
                    ++correct;
                } else {
                    failures.push_back(in);
                }
            }
            const bool pass = correct == total;
            const std::size_t q = counter_width(p);
            if (options.format == OutputFormat::Json) {
                out << json{{"version", kVersion}, {"command", "counter-test"}, {"seed", seed},
                            {"p", p}, {"q", q}, {"checked", total}, {"correct", correct}, {"pass", pass},
                            {"failures", failures}}
                           .dump(2)
                    << '\n';
            } else if (options.format == OutputFormat::Csv) {
                out << header("counter-test", seed, "exhaustive") << '\n' << "p,q,checked,correct,pass\n"
                    << p << ',' << q << ',' << total << ',' << correct << ',' << (pass ? "true" : "false") << '\n';
            } else {
                out << header("counter-test", seed, "p=" + std::to_string(p) + " q=" + std::to_string(q)) << '\n'
                    << correct << '/' << total << " correct\n";
            }
            return pass ? kExitOk : kExitVerificationFailed;
        }

        const Bitstring controls = parse_bitstring(*options.controls);
        if (options.p && *options.p != controls.width) {
            throw InvalidArgument("-p " + std::to_string(*options.p) + " does not match the " +
                                  std::to_string(controls.width) + "-bit control string");
        }
        const CounterRun r = run_counter(controls.value, controls.width, seed);
        const auto ones = static_cast<std::uint64_t>(std::popcount(controls.value));
        const Bitstring ctrl_bits{r.controls, r.p};
        const Bitstring count_bits{r.counter, r.q};
        const bool pass = r.counter == ones && r.controls == controls.value;

        switch (options.format) {
            case OutputFormat::Json:
                out << json{{"version", kVersion},
                            {"command", "counter-test"},
                            {"seed", seed},
                            {"p", r.p},
                            {"q", r.q},
                            {"full_bitstring", r.full.str()},
                            {"raw_little_endian", r.full.raw()},
                            {"controls", ctrl_bits.str()},
                            {"counter", count_bits.str()},
                            {"value", r.counter},
                            {"popcount", ones},
                            {"correct", pass}}
                           .dump(2)
                    << '\n';
                break;
            case OutputFormat::Csv:
                out << header("counter-test", seed, "") << '\n'
                    << "full_bitstring,raw_little_endian,controls,counter,value,popcount\n"
                    << r.full.str() << ',' << r.full.raw() << ',' << ctrl_bits.str() << ',' << count_bits.str() << ','
                    << r.counter << ',' << ones << '\n';
                break;
            case OutputFormat::Text:
                out << header("counter-test", seed, "p=" + std::to_string(r.p) + " q=" + std::to_string(r.q)) << '\n'
                    << std::left << std::setw(26) << "Full bitstring measured" << r.full.str()
                    << " (last bit to first bit)\n"
                    << std::setw(26) << "Raw little-endian" << r.full.raw() << '\n'
                    << std::setw(26) << "Control bits measured" << ctrl_bits.str() << " (" << ones
                    << (ones == 1 ? " one)\n" : " ones)\n")
                    << std::setw(26) << "Counter bits measured" << count_bits.str() << " (binary of value "
                    << r.counter << ")\n"
                    << "result: " << (pass ? "correct" : "INCORRECT") << '\n';
                break;
        }
        return pass ? kExitOk : kExitVerificationFailed;
    });
}

int cmd_assess(const AssessCommandOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        AssessOptions opts;
        opts.sample_size = options.n;
        opts.replications = options.replications;
        opts.alpha = options.alpha;
        opts.mode = options.mode;
        opts.seed = options.seed.value_or(entropy_seed());
        z_value(opts.alpha);  // reject a bad alpha before reading any input

        const TableData table = load_table(options.table);
        const QuerySpec query = load_query(options.query);
        const BootstrapReport report = assess(table, query, opts);

        const auto write_csv = [&](std::ostream& os) {
            os << header("assess", report.seed, "mode=" + std::string(to_string(report.mode))) << '\n'
               << "index,raw,matched,estimate\n";
            os << std::setprecision(17);
            for (std::size_t j = 0; j < report.replications.size(); ++j) {
                const Replication& r = report.replications.replications[j];
                os << j << ',' << r.raw << ',' << r.matched << ',' << r.estimate << '\n';
            }
        };
        if (options.replications_csv) {
            std::ofstream f(*options.replications_csv);
            if (!f) throw ParseError("cannot write " + options.replications_csv->string());
            write_csv(f);
        }

        switch (options.format) {
            case OutputFormat::Json: out << json(report).dump(2) << '\n'; break;
            case OutputFormat::Csv: write_csv(out); break;
            case OutputFormat::Text: {
                out << header("assess", report.seed, "mode=" + std::string(to_string(report.mode))) << '\n';
                out << std::left << std::setprecision(10);
                out << std::setw(12) << "aggregate" << to_string(report.aggregate) << '\n'
                    << std::setw(12) << "N" << report.population << '\n'
                    << std::setw(12) << "n" << report.n << '\n'
                    << std::setw(12) << "f" << report.f << '\n'
                    << std::setw(12) << "B" << report.replication_count << '\n'
                    << std::setw(12) << "estimate" << report.point_estimate << '\n'
                    << std::setw(12) << "se_B" << report.se << '\n'
                    << std::setw(12) << "alpha" << report.alpha << " (z = " << report.z << ")\n"
                    << std::setw(12) << "CI" << '[' << report.ci.lower << ", " << report.ci.upper << "]\n";
                std::map<std::uint64_t, std::uint64_t> hist;
                for (const Replication& r : report.replications.replications) ++hist[r.raw];
                std::uint64_t max_count = 0;
                for (const auto& [_, c] : hist) max_count = std::max(max_count, c);
                out << "replications (raw value: count)\n";
                for (const auto& [raw, c] : hist) {
                    out << std::right << std::setw(8) << raw << " | " << std::left << std::setw(6) << c
                        << bar(c, max_count) << '\n';
                }
                break;
            }
        }
        return kExitOk;
    });
}

int cmd_selfcheck(const SelfcheckOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto start = std::chrono::steady_clock::now();
        std::vector<CheckResult> results;
        results.push_back(check_norms());
        results.push_back(check_qram());
        results.push_back(check_counter(options.corrupt_counter_order ? CarryOrder::LowToHigh
                                                                       : CarryOrder::HighToLow));
        results.push_back(check_adder());
        results.push_back(check_oracle_agreement());

        std::size_t failed = 0;
        out << "# qbs " << kVersion << " selfcheck\n";
        for (const CheckResult& r : results) {
            out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
            failed += r.pass ? 0 : 1;
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        err << "selfcheck took " << std::fixed << std::setprecision(2) << secs << " s\n";
        if (failed == 0) {
            out << "all checks passed\n";
            return kExitOk;
        }
        out << failed << " check(s) failed\n";
        return kExitVerificationFailed;
    });
}

}  // namespace qbs::cli
