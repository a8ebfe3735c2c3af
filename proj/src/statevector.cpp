#include "cqgm/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cqgm/rng.hpp"

namespace cqgm {

QuantumState QuantumState::zero(int num_qubits) {
    return basis(num_qubits, 0);
}

QuantumState QuantumState::basis(int num_qubits, std::uint64_t index) {
    if (num_qubits < 0 || num_qubits > 28)
        throw std::invalid_argument("qubit count out of supported range");
    QuantumState s;
    s.num_qubits = num_qubits;
    s.amplitudes.assign(1ULL << num_qubits, cdouble{0.0, 0.0});
    if (index >= s.amplitudes.size())
        throw std::out_of_range("basis index out of range");
    s.amplitudes[index] = cdouble{1.0, 0.0};
    return s;
}

double QuantumState::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

void Circuit::add_register(const std::string& name, QubitRange range) {
    if (range.first < 0 || range.count < 0 || range.first + range.count > num_qubits)
        throw std::out_of_range("register outside circuit");
    for (const auto& [other, r] : registers) {
        bool disjoint = range.first >= r.first + r.count || r.first >= range.first + range.count;
        if (!disjoint && range.count > 0 && r.count > 0)
            throw std::invalid_argument("register overlaps " + other);
    }
    registers[name] = range;
}

QubitRange Circuit::reg(const std::string& name) const {
    auto it = registers.find(name);
    if (it == registers.end()) throw std::invalid_argument("unknown register: " + name);
    return it->second;
}

namespace ops {

GateOp h(int target) { return GateOp{GateKind::H, {target}, {}, 0.0, {}, {}, {}}; }
GateOp x(int target) { return GateOp{GateKind::X, {target}, {}, 0.0, {}, {}, {}}; }
GateOp y(int target) { return GateOp{GateKind::Y, {target}, {}, 0.0, {}, {}, {}}; }
GateOp z(int target) { return GateOp{GateKind::Z, {target}, {}, 0.0, {}, {}, {}}; }

GateOp ry(int target, double angle) {
    return GateOp{GateKind::RY, {target}, {}, angle, {}, {}, {}};
}

GateOp cry(int control, int target, double angle) {
    return GateOp{GateKind::RY, {target}, {{control, 1}}, angle, {}, {}, {}};
}

GateOp cx(int control, int target) {
    return GateOp{GateKind::X, {target}, {{control, 1}}, 0.0, {}, {}, {}};
}

GateOp mcry(std::vector<ControlBit> controls, int target, double angle) {
    return GateOp{GateKind::RY, {target}, std::move(controls), angle, {}, {}, {}};
}

GateOp phase(int target, double angle) {
    return GateOp{GateKind::Phase, {target}, {}, angle, {}, {}, {}};
}

GateOp cphase(int control, int target, double angle) {
    return GateOp{GateKind::Phase, {target}, {{control, 1}}, angle, {}, {}, {}};
}

GateOp permutation(std::vector<int> targets, std::function<std::uint64_t(std::uint64_t)> fn,
                   std::string label) {
    GateOp op;
    op.kind = GateKind::Permutation;
    op.targets = std::move(targets);
    op.permutation = std::move(fn);
    op.label = std::move(label);
    return op;
}

GateOp diagonal_sign(std::vector<int> targets, std::function<int(std::uint64_t)> fn,
                     std::string label) {
    GateOp op;
    op.kind = GateKind::DiagonalSign;
    op.targets = std::move(targets);
    op.sign = std::move(fn);
    op.label = std::move(label);
    return op;
}

}  // namespace ops

namespace {

struct ControlMask {
    std::uint64_t mask = 0;
    std::uint64_t value = 0;
};

ControlMask control_mask(const GateOp& op) {
    ControlMask cm;
    for (const auto& c : op.controls) {
        cm.mask |= 1ULL << c.qubit;
        if (c.value) cm.value |= 1ULL << c.qubit;
    }
    return cm;
}

void validate(const QuantumState& state, const GateOp& op) {
    std::uint64_t seen = 0;
    for (int t : op.targets) {
        if (t < 0 || t >= state.num_qubits) throw std::out_of_range("target qubit out of range");
        if (seen & (1ULL << t)) throw std::invalid_argument("duplicate target qubit");
        seen |= 1ULL << t;
    }
    for (const auto& c : op.controls) {
        if (c.qubit < 0 || c.qubit >= state.num_qubits)
            throw std::out_of_range("control qubit out of range");
        if (seen & (1ULL << c.qubit))
            throw std::invalid_argument("control overlaps target or another control");
        seen |= 1ULL << c.qubit;
        if (c.value != 0 && c.value != 1) throw std::invalid_argument("control value must be 0/1");
    }
    if (op.targets.empty()) throw std::invalid_argument("gate has no target");
}

// 2x2 butterfly on the target qubit: [a0,a1] -> [m00 a0 + m01 a1, m10 a0 + m11 a1].
void apply_single(QuantumState& state, const GateOp& op, cdouble m00, cdouble m01, cdouble m10,
                  cdouble m11) {
    const std::uint64_t dim = state.dim();
    const std::uint64_t tbit = 1ULL << op.targets[0];
    const auto cm = control_mask(op);
    auto* a = state.amplitudes.data();
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & tbit) continue;
        if ((i & cm.mask) != cm.value) continue;
        const cdouble a0 = a[i];
        const cdouble a1 = a[i | tbit];
        a[i] = m00 * a0 + m01 * a1;
        a[i | tbit] = m10 * a0 + m11 * a1;
    }
}

std::uint64_t extract_sub_index(std::uint64_t idx, const std::vector<int>& targets) {
    std::uint64_t sub = 0;
    for (std::size_t j = 0; j < targets.size(); ++j)
        sub |= ((idx >> targets[j]) & 1ULL) << j;
    return sub;
}

std::uint64_t deposit_sub_index(std::uint64_t idx, std::uint64_t sub,
                                const std::vector<int>& targets) {
    for (std::size_t j = 0; j < targets.size(); ++j) {
        const std::uint64_t bit = (sub >> j) & 1ULL;
        idx = (idx & ~(1ULL << targets[j])) | (bit << targets[j]);
    }
    return idx;
}

void apply_permutation(QuantumState& state, const GateOp& op) {
    const std::size_t k = op.targets.size();
    if (k > 28) throw std::invalid_argument("permutation target set too large");
    const std::uint64_t sub_dim = 1ULL << k;
    std::vector<std::uint64_t> table(sub_dim);
    std::vector<bool> hit(sub_dim, false);
    for (std::uint64_t s = 0; s < sub_dim; ++s) {
        const std::uint64_t t = op.permutation(s);
        if (t >= sub_dim || hit[t]) throw std::invalid_argument("permutation is not a bijection");
        hit[t] = true;
        table[s] = t;
    }
    const auto cm = control_mask(op);
    std::vector<cdouble> out = state.amplitudes;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if ((i & cm.mask) != cm.value) continue;
        const std::uint64_t sub = extract_sub_index(i, op.targets);
        out[deposit_sub_index(i, table[sub], op.targets)] = state.amplitudes[i];
    }
    state.amplitudes = std::move(out);
}

void apply_diagonal_sign(QuantumState& state, const GateOp& op) {
    const auto cm = control_mask(op);
    const std::uint64_t sub_dim = 1ULL << op.targets.size();
    std::vector<double> table(sub_dim);
    for (std::uint64_t s = 0; s < sub_dim; ++s) {
        const int v = op.sign(s);
        if (v != 1 && v != -1) throw std::invalid_argument("sign oracle must return +-1");
        table[s] = static_cast<double>(v);
    }
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if ((i & cm.mask) != cm.value) continue;
        state.amplitudes[i] *= table[extract_sub_index(i, op.targets)];
    }
}

}  // namespace

void apply(QuantumState& state, const GateOp& op) {
    validate(state, op);
    constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    switch (op.kind) {
        case GateKind::H:
            apply_single(state, op, inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
            break;
        case GateKind::X:
            apply_single(state, op, 0.0, 1.0, 1.0, 0.0);
            break;
        case GateKind::Y:
            apply_single(state, op, 0.0, cdouble{0.0, -1.0}, cdouble{0.0, 1.0}, 0.0);
            break;
        case GateKind::Z:
            apply_single(state, op, 1.0, 0.0, 0.0, -1.0);
            break;
        case GateKind::RY: {
            const double co = std::cos(op.angle / 2.0);
            const double si = std::sin(op.angle / 2.0);
            apply_single(state, op, co, -si, si, co);
            break;
        }
        case GateKind::Phase:
            apply_single(state, op, 1.0, 0.0, 0.0, std::polar(1.0, op.angle));
            break;
        case GateKind::Permutation:
            if (!op.permutation) throw std::invalid_argument("permutation op without function");
            apply_permutation(state, op);
            break;
        case GateKind::DiagonalSign:
            if (!op.sign) throw std::invalid_argument("sign op without function");
            apply_diagonal_sign(state, op);
            break;
    }
}

QuantumState run(const Circuit& circuit, QuantumState initial) {
    if (initial.num_qubits != circuit.num_qubits)
        throw std::invalid_argument("state/circuit qubit count mismatch");
    for (const auto& op : circuit.ops) apply(initial, op);
    return initial;
}

QuantumState run(const Circuit& circuit) {
    return run(circuit, QuantumState::zero(circuit.num_qubits));
}

std::vector<double> marginal_probabilities(const QuantumState& state, QubitRange range) {
    if (range.first < 0 || range.count < 0 || range.first + range.count > state.num_qubits)
        throw std::out_of_range("register outside state");
    const std::uint64_t mask = (range.count == 64) ? ~0ULL : ((1ULL << range.count) - 1);
    std::vector<double> probs(1ULL << range.count, 0.0);
    for (std::uint64_t i = 0; i < state.dim(); ++i)
        probs[(i >> range.first) & mask] += std::norm(state.amplitudes[i]);
    return probs;
}

std::vector<double> probabilities(const QuantumState& state, const Circuit& circuit,
                                  const std::string& register_name) {
    return marginal_probabilities(state, circuit.reg(register_name));
}

std::vector<std::uint64_t> sample(const QuantumState& state, QubitRange range,
                                  std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("shots must be >= 1");
    const std::vector<double> probs = marginal_probabilities(state, range);
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    std::vector<std::uint64_t> counts(probs.size(), 0);
    Rng rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        counts[static_cast<std::size_t>(it - cdf.begin())]++;
    }
    return counts;
}

GateOp adjoint(const GateOp& op) {
    GateOp out = op;
    switch (op.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::DiagonalSign:
            break;  // self-inverse
        case GateKind::RY:
        case GateKind::Phase:
            out.angle = -op.angle;
            break;
        case GateKind::Permutation: {
            const std::uint64_t sub_dim = 1ULL << op.targets.size();
            auto inverse = std::make_shared<std::vector<std::uint64_t>>(sub_dim);
            for (std::uint64_t s = 0; s < sub_dim; ++s) {
                const std::uint64_t t = op.permutation(s);
                if (t >= sub_dim) throw std::invalid_argument("permutation is not a bijection");
                (*inverse)[t] = s;
            }
            out.permutation = [inverse](std::uint64_t s) { return (*inverse)[s]; };
            break;
        }
    }
    return out;
}

Circuit adjoint(const Circuit& circuit) {
    Circuit out;
    out.num_qubits = circuit.num_qubits;
    out.registers = circuit.registers;
    out.ops.reserve(circuit.ops.size());
    for (auto it = circuit.ops.rbegin(); it != circuit.ops.rend(); ++it)
        out.ops.push_back(adjoint(*it));
    return out;
}

std::vector<int> touched_qubits(const GateOp& op) {
    std::vector<int> qs = op.targets;
    for (const auto& c : op.controls) qs.push_back(c.qubit);
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    return qs;
}

}  // namespace cqgm
