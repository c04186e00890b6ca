#include "qbs/replication.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>

#include "qbs/counter.hpp"
#include "qbs/error.hpp"
#include "qbs/qram.hpp"
#include "qbs/rng.hpp"

namespace qbs {

namespace {

// Zero-match AVG resamples have no defined mean and are redrawn; give up
// after this many consecutive attempts.
constexpr std::uint64_t kMaxAvgAttempts = 10000;

std::vector<std::uint8_t> to_bits(const std::vector<std::uint64_t>& y) {
    std::vector<std::uint8_t> out(y.size());
    std::transform(y.begin(), y.end(), out.begin(), [](std::uint64_t v) { return static_cast<std::uint8_t>(v); });
    return out;
}

std::size_t value_width(const SampleResults& s) {
    const std::uint64_t max = s.y.empty() ? 0 : *std::max_element(s.y.begin(), s.y.end());
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::bit_width(max)));
}

void require_power_of_two(const SampleResults& s) {
    if (s.n() < 2 || !std::has_single_bit(s.n())) {
        throw InvalidArgument("quantum replication needs a sample size that is a power of two "
                              "(at least 2); got n = " + std::to_string(s.n()));
    }
}

std::uint64_t draw_seed(std::uint64_t seed, std::uint64_t attempt, std::uint64_t draw) {
    return derive_seed(attempt == 0 ? seed : derive_seed(seed, ~attempt), draw);
}

}  // namespace

std::string_view to_string(Aggregate aggregate) {
    switch (aggregate) {
        case Aggregate::Count: return "COUNT";
        case Aggregate::Sum: return "SUM";
        case Aggregate::Avg: return "AVG";
    }
    return "?";
}

Aggregate parse_aggregate(std::string_view text) {
    std::string up(text);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (up == "COUNT") return Aggregate::Count;
    if (up == "SUM") return Aggregate::Sum;
    if (up == "AVG") return Aggregate::Avg;
    throw ParseError("unknown aggregate '" + std::string(text) + "'");
}

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::QuantumSequential: return "quantum_sequential";
        case Mode::QuantumParallel: return "quantum_parallel";
        case Mode::ClassicalOracle: return "classical_oracle";
    }
    return "?";
}

Mode parse_mode(std::string_view text) {
    if (text == "quantum_sequential" || text == "sequential") return Mode::QuantumSequential;
    if (text == "quantum_parallel" || text == "parallel") return Mode::QuantumParallel;
    if (text == "classical_oracle" || text == "oracle") return Mode::ClassicalOracle;
    throw ParseError("unknown mode '" + std::string(text) + "'");
}

std::uint64_t SampleResults::total() const noexcept { return std::accumulate(y.begin(), y.end(), std::uint64_t{0}); }

std::size_t SampleResults::matched() const noexcept {
    return static_cast<std::size_t>(std::count(matches.begin(), matches.end(), std::uint8_t{1}));
}

void SampleResults::validate() const {
    if (y.empty()) throw InvalidArgument("sample results are empty");
    if (population < y.size()) {
        throw InvalidArgument("population size " + std::to_string(population) +
                              " is smaller than the sample size " + std::to_string(y.size()));
    }
    if (matches.size() != y.size()) throw InvalidArgument("match flags and tuple results differ in length");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (matches[i] > 1) throw InvalidArgument("match flags must be 0 or 1");
        if (aggregate == Aggregate::Count && (y[i] > 1 || y[i] != matches[i])) {
            throw InvalidArgument("COUNT tuple results must be bits equal to the match flags");
        }
        if (aggregate != Aggregate::Count && matches[i] == 0 && y[i] != 0) {
            throw InvalidArgument("non-matching tuples must contribute 0");
        }
    }
}

SampleResults SampleResults::count(std::vector<std::uint8_t> bits, std::uint64_t population) {
    SampleResults s;
    s.aggregate = Aggregate::Count;
    s.y.assign(bits.begin(), bits.end());
    s.matches = std::move(bits);
    s.population = population;
    s.validate();
    return s;
}

SampleResults SampleResults::values(Aggregate aggregate, std::vector<std::uint64_t> values,
                                    std::vector<std::uint8_t> matches, std::uint64_t population) {
    SampleResults s;
    s.aggregate = aggregate;
    s.y = std::move(values);
    s.matches = std::move(matches);
    s.population = population;
    s.validate();
    return s;
}

std::vector<double> ReplicationSet::estimates() const {
    std::vector<double> out(replications.size());
    std::transform(replications.begin(), replications.end(), out.begin(),
                   [](const Replication& r) { return r.estimate; });
    return out;
}

std::vector<std::uint64_t> ReplicationSet::raw_counts() const {
    std::vector<std::uint64_t> out(replications.size());
    std::transform(replications.begin(), replications.end(), out.begin(),
                   [](const Replication& r) { return r.raw; });
    return out;
}

Circuit build_parallel_replication_circuit(const SampleResults& sample) {
    sample.validate();
    if (sample.aggregate != Aggregate::Count) {
        throw InvalidArgument("parallel replication supports COUNT queries only");
    }
    require_power_of_two(sample);
    const std::size_t n = sample.n();
    const BitDataArray data(to_bits(sample.y));
    const std::size_t block = data.address_width() + 1;
    const CounterSpec spec = CounterSpec::for_controls(n);
    const std::size_t total = n * block + spec.counter_bits;
    if (total > simulator_capacity()) {
        throw ConfigError("parallel replication circuit for n = " + std::to_string(n) + " needs " +
                          std::to_string(total) + " qubits, above the simulator capacity of " +
                          std::to_string(simulator_capacity()) + "; use sequential mode");
    }

    Circuit c(total);
    const Circuit qsa = build_qsa(data);
    std::vector<Qubit> counter_map;
    for (std::size_t k = 0; k < n; ++k) {
        const auto offset = static_cast<Qubit>(k * block);
        c.append(qsa, offset);
        c.label("addr" + std::to_string(k), {offset, static_cast<Qubit>(block - 1)});
        c.label("data" + std::to_string(k), {static_cast<Qubit>(offset + block - 1), 1});
        counter_map.push_back(static_cast<Qubit>(offset + block - 1));
    }
    const auto count_first = static_cast<Qubit>(n * block);
    for (std::size_t j = 0; j < spec.counter_bits; ++j) counter_map.push_back(count_first + static_cast<Qubit>(j));
    c.append(build_counter(spec), counter_map);
    c.label("count", {count_first, static_cast<Qubit>(spec.counter_bits)});
    return c;
}

Replicator::Replicator(const SampleResults& sample, Mode mode) : sample_(sample), mode_(mode) {
    sample_.validate();
    if (sample_.aggregate == Aggregate::Avg && sample_.matched() == 0) {
        throw InvalidArgument("AVG replication needs at least one matching tuple");
    }
    switch (mode_) {
        case Mode::ClassicalOracle: return;
        case Mode::QuantumParallel:
            resampler_ = build_parallel_replication_circuit(sample_);
            sampler_.emplace(*resampler_);
            return;
        case Mode::QuantumSequential: break;
    }

    require_power_of_two(sample_);
    const std::size_t n = sample_.n();
    counter_ = build_counter(CounterSpec::for_controls(n));
    if (sample_.aggregate == Aggregate::Count) {
        resampler_ = build_qsa(BitDataArray(to_bits(sample_.y)));
    } else {
        const std::size_t w = value_width(sample_);
        resampler_ = build_value_qsa(ValueDataArray(sample_.y, w), BitDataArray(sample_.matches));
        // Wide enough for n copies of the largest encodable value.
        const std::uint64_t max_sum = static_cast<std::uint64_t>(n) * ((std::uint64_t{1} << w) - 1);
        accumulator_width_ = static_cast<std::size_t>(std::bit_width(max_sum));
        adder_ = build_ripple_adder(accumulator_width_);
    }
    sampler_.emplace(*resampler_);
}

Replication Replicator::run(std::uint64_t seed) const {
    switch (mode_) {
        case Mode::QuantumSequential: return run_sequential(seed);
        case Mode::QuantumParallel: return run_parallel(seed);
        case Mode::ClassicalOracle: return run_classical(seed);
    }
    throw InvalidArgument("unknown mode");
}

Replication Replicator::finish(std::uint64_t raw, std::uint64_t matched) const {
    Replication r{raw, matched, 0.0};
    if (sample_.aggregate == Aggregate::Avg) {
        r.estimate = static_cast<double>(raw) / static_cast<double>(matched);
    } else {
        r.estimate = static_cast<double>(raw) / sample_.f();
    }
    return r;
}

Replication Replicator::run_sequential(std::uint64_t seed) const {
    const std::size_t n = sample_.n();
    const Circuit& qsa = *resampler_;
    const QubitRange data = *qsa.find_register("data");
    const QubitRange count = *counter_->find_register("count");
    const bool is_count = sample_.aggregate == Aggregate::Count;
    const QubitRange flag = is_count ? data : *qsa.find_register("match");

    for (std::uint64_t attempt = 0; attempt < kMaxAvgAttempts; ++attempt) {
        BasisState control_bits = 0;
        std::uint64_t accumulator = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Rng rng(draw_seed(seed, attempt, i));
            const BasisState shot = sampler_->draw(rng);
            control_bits |= extract(shot, flag) << i;
            if (!is_count) {
                const BasisState value = extract(shot, data);
                const BasisState in = value | (accumulator << accumulator_width_);
                const BasisState out = simulate_basis(*adder_, in);
                accumulator = extract(out, *adder_->find_register("b"));
            }
        }
        const std::uint64_t matched = extract(simulate_basis(*counter_, control_bits), count);
        if (sample_.aggregate == Aggregate::Avg && matched == 0) continue;
        return finish(is_count ? matched : accumulator, matched);
    }
    throw InvalidArgument("AVG resampling drew no matching tuple in " + std::to_string(kMaxAvgAttempts) +
                          " attempts");
}

Replication Replicator::run_parallel(std::uint64_t seed) const {
    Rng rng(seed);
    const BasisState shot = sampler_->draw(rng);
    const std::uint64_t raw = extract(shot, *resampler_->find_register("count"));
    return finish(raw, raw);
}

Replication Replicator::run_classical(std::uint64_t seed) const {
    Rng rng(seed);
    const std::size_t n = sample_.n();
    for (std::uint64_t attempt = 0; attempt < kMaxAvgAttempts; ++attempt) {
        std::uint64_t raw = 0;
        std::uint64_t matched = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t pick = rng.below(n);
            raw += sample_.y[pick];
            matched += sample_.matches[pick];
        }
        if (sample_.aggregate == Aggregate::Avg && matched == 0) continue;
        return finish(raw, matched);
    }
    throw InvalidArgument("AVG resampling drew no matching tuple in " + std::to_string(kMaxAvgAttempts) +
                          " attempts");
}

Replication run_replication_sequential(const SampleResults& sample, std::uint64_t seed) {
    return Replicator(sample, Mode::QuantumSequential).run(seed);
}

ReplicationSet replicate(const SampleResults& sample, std::size_t replications, Mode mode, std::uint64_t seed) {
    if (replications < 2) {
        throw InvalidArgument("need at least 2 bootstrap replications; got " + std::to_string(replications));
    }
    const Replicator replicator(sample, mode);
    ReplicationSet set{mode, sample.aggregate, seed, sample.f(), {}};
    set.replications.reserve(replications);
    for (std::size_t j = 0; j < replications; ++j) set.replications.push_back(replicator.run(derive_seed(seed, j)));
    return set;
}

ReplicationSet classical_bootstrap_oracle(const SampleResults& sample, std::size_t replications,
                                          std::uint64_t seed) {
    return replicate(sample, replications, Mode::ClassicalOracle, seed);
}

}  // namespace qbs
