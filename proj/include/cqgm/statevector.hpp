// Dense statevector simulator.
//
// Convention used throughout: qubit 0 is the least significant bit of the
// basis index, so |q1 q0> = |10> is basis index 2. Registers are contiguous
// qubit ranges and marginals are read in the same bit order.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace cqgm {

using cdouble = std::complex<double>;

struct QuantumState {
    int num_qubits = 0;
    std::vector<cdouble> amplitudes;

    static QuantumState zero(int num_qubits);
    static QuantumState basis(int num_qubits, std::uint64_t index);

    std::uint64_t dim() const { return amplitudes.size(); }
    double norm() const;
};

enum class GateKind {
    H,
    X,
    Y,
    Z,
    RY,            // exp(-i angle Y / 2): |0> -> cos(a/2)|0> + sin(a/2)|1>
    Phase,         // diag(1, e^{i angle}) on the target
    Permutation,   // basis permutation over the target qubits
    DiagonalSign,  // +-1 sign per basis state of the target qubits
};

struct ControlBit {
    int qubit = 0;
    int value = 1;  // required bit value, 0 or 1
};

// One gate. Any kind may carry controls; the op acts only on basis states
// whose control bits match. CX is X with one control, CRY is RY with one
// control, multi-controlled RY is RY with a control list.
struct GateOp {
    GateKind kind = GateKind::X;
    std::vector<int> targets;
    std::vector<ControlBit> controls;
    double angle = 0.0;
    std::function<std::uint64_t(std::uint64_t)> permutation;  // on target sub-index
    std::function<int(std::uint64_t)> sign;                   // on target sub-index, returns +-1
    std::string label;  // used by the circuit printer for oracle-style ops
};

struct QubitRange {
    int first = 0;
    int count = 0;
};

struct Circuit {
    int num_qubits = 0;
    std::vector<GateOp> ops;
    std::map<std::string, QubitRange> registers;

    void add_register(const std::string& name, QubitRange range);
    QubitRange reg(const std::string& name) const;  // throws on unknown name
};

namespace ops {
GateOp h(int target);
GateOp x(int target);
GateOp y(int target);
GateOp z(int target);
GateOp ry(int target, double angle);
GateOp cry(int control, int target, double angle);
GateOp cx(int control, int target);
GateOp mcry(std::vector<ControlBit> controls, int target, double angle);
GateOp phase(int target, double angle);
GateOp cphase(int control, int target, double angle);
GateOp permutation(std::vector<int> targets,
                   std::function<std::uint64_t(std::uint64_t)> fn,
                   std::string label = "PERM");
GateOp diagonal_sign(std::vector<int> targets,
                     std::function<int(std::uint64_t)> fn,
                     std::string label = "SIGN");
}  // namespace ops

// Applies one gate in place. Throws std::out_of_range for bad indices and
// std::invalid_argument for overlapping target/control sets or a
// non-bijective permutation.
void apply(QuantumState& state, const GateOp& op);

// Applies all ops in order. Qubit counts must match.
QuantumState run(const Circuit& circuit, QuantumState initial);
QuantumState run(const Circuit& circuit);  // from |0...0>

// Marginal distribution over a contiguous register, length 2^count.
std::vector<double> marginal_probabilities(const QuantumState& state, QubitRange range);
std::vector<double> probabilities(const QuantumState& state, const Circuit& circuit,
                                  const std::string& register_name);

// Multinomial sample of the register marginal; counts indexed by basis state.
// Deterministic for a fixed seed.
std::vector<std::uint64_t> sample(const QuantumState& state, QubitRange range,
                                  std::uint64_t shots, std::uint64_t seed);

GateOp adjoint(const GateOp& op);
Circuit adjoint(const Circuit& circuit);

// Qubits an op acts on or is conditioned on (targets + controls).
std::vector<int> touched_qubits(const GateOp& op);

}  // namespace cqgm
