#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gmin/gates.hpp"
#include "gmin/groups.hpp"
#include "gmin/noise.hpp"
#include "gmin/rng.hpp"

namespace gmin {

/// Contiguous run of qubits; qubit `offset` is the least significant bit of
/// the register's integer value.
struct Register {
    int offset = 0;
    int width = 0;

    std::uint64_t mask() const { return width == 0 ? 0 : ((std::uint64_t{1} << width) - 1); }
    std::vector<Qubit> qubits() const;
    Qubit operator[](int bit) const { return offset + bit; }
};

/// group | position1 | position2 | ancilla, from qubit 0 upward.
struct RegisterLayout {
    static constexpr int kDefaultCapacity = 24;

    int group_bits = 0;
    int position_bits = 0;
    int ancilla_bits = 0;

    RegisterLayout() = default;
    /// Throws ContractError when the layout is malformed or exceeds `capacity` qubits.
    RegisterLayout(int m, int n, int ancilla, int capacity = kDefaultCapacity);

    int total() const { return group_bits + 2 * position_bits + ancilla_bits; }
    Register group() const { return {0, group_bits}; }
    Register position1() const { return {group_bits, position_bits}; }
    Register position2() const { return {group_bits + position_bits, position_bits}; }
    Register ancilla() const { return {group_bits + 2 * position_bits, ancilla_bits}; }
    /// position1, position2 and ancilla as one register (the AEM check set).
    Register check_block() const { return {group_bits, 2 * position_bits + ancilla_bits}; }
    std::uint64_t basis_index(std::uint64_t x, std::uint64_t v1, std::uint64_t v2,
                              std::uint64_t anc = 0) const;
};

/// Dense state vector plus the per-qubit clocks used by the noise model.
class QuantumState {
  public:
    explicit QuantumState(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }
    cplx amplitude(std::uint64_t index) const { return amps_[index]; }

    /// Prepares |index> and sets every qubit's last-action time to `now()`.
    void reset_basis(std::uint64_t index);

    /// Ideal gate application; multi-controlled gates are applied directly.
    void apply(const Gate& g);
    void apply(const CircuitBlock& block);
    void apply_matrix(Qubit q, const Mat2& m);

    double norm_squared() const;
    /// Marginal distribution of a register.
    std::vector<double> register_probabilities(const Register& reg) const;
    /// Projects onto `outcome` of `reg` and renormalizes; returns the outcome's prior probability.
    double project(const Register& reg, std::uint64_t outcome);

    double now() const { return now_; }
    void advance(double dt) { now_ += dt; }
    double last_action(Qubit q) const { return last_action_[q]; }
    void mark_action(Qubit q, double t) { last_action_[q] = t; }

    /// Debug dump: one `index re im` line per nonzero amplitude.
    void dump(std::ostream& os, double threshold = 0.0) const;

  private:
    int num_qubits_;
    std::vector<cplx> amps_;
    std::vector<double> last_action_;
    double now_ = 0.0;
};

/// A circuit in two forms: the logical one (multi-controlled gates intact)
/// and its native decomposition with a precomputed schedule.
struct CompiledBlock {
    CircuitBlock logical;
    CircuitBlock native;
    Schedule native_schedule;

    long long duration() const { return native_schedule.total_duration; }
};

/// Thrown when a noisy run meets a gate that has not been decomposed.
class UndecomposedGateError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Ideal or noisy executor. In noisy mode every touched qubit receives a
/// sampled error rotation before each gate, parameterized by the time since
/// the start of that qubit's previous gate or measurement.
class Engine {
  public:
    Engine() = default;
    explicit Engine(std::optional<NoiseParams> noise) : noise_(noise) {
        if (noise_ && noise_->is_noiseless()) noise_.reset();
    }

    bool noisy() const { return noise_.has_value(); }
    const std::optional<NoiseParams>& noise() const { return noise_; }

    /// Runs a compiled block; the clock advances by its scheduled duration
    /// in both modes.
    void run(QuantumState& state, const CompiledBlock& block, Rng& rng) const;
    /// Runs a native block layer by layer.
    void run_native(QuantumState& state, const CircuitBlock& block, const Schedule& sched,
                    Rng& rng) const;
    /// Measures a register; lasts kMeasurementTime. Measured qubits receive
    /// their accumulated error before the projection.
    std::uint64_t measure(QuantumState& state, const Register& reg, Rng& rng) const;

  private:
    void inject(QuantumState& state, Qubit q, double at, Rng& rng) const;

    std::optional<NoiseParams> noise_;
};

/// Single-gate form: error injection (when `noise` is set), the gate, and a
/// clock advance of the gate's duration.
void apply_gate(QuantumState& state, const Gate& g, const NoiseParams* noise, Rng* rng);

/// Born-rule measurement of `reg`; the clock advances by kMeasurementTime.
std::uint64_t measure_register(QuantumState& state, const Register& reg, Rng& rng,
                               const NoiseParams* noise = nullptr);

}  // namespace gmin
