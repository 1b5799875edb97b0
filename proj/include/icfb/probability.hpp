#pragma once

// Finite-alphabet joint pmfs, conditional kernels and information measures.
// All logarithms are base 2.

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace icfb {

inline constexpr std::size_t kDefaultCellCap = std::size_t{1} << 22;
inline constexpr double kPmfTolerance = 1e-12;

struct Variable {
    std::string label;
    std::size_t card = 1;

    bool operator==(const Variable&) const = default;
};

using LabelSet = std::vector<std::string>;

// Dense probability tensor. The first variable is the slowest-varying index.
class JointPmf {
public:
    JointPmf(std::vector<Variable> variables, std::vector<double> weights,
             std::size_t cell_cap = kDefaultCellCap);

    // Point mass / uniform helpers for tests and fixtures.
    static JointPmf uniform(std::vector<Variable> variables);

    const std::vector<Variable>& variables() const { return variables_; }
    std::span<const double> weights() const { return weights_; }
    std::size_t cell_count() const { return weights_.size(); }

    bool has(const std::string& label) const;
    std::size_t index_of(const std::string& label) const;
    const Variable& variable(const std::string& label) const;

    double at(std::span<const std::size_t> symbols) const;
    std::size_t flat_index(std::span<const std::size_t> symbols) const;
    void unflatten(std::size_t flat, std::span<std::size_t> symbols) const;

private:
    std::vector<Variable> variables_;
    std::vector<double> weights_;
};

// Conditional law P(outputs | inputs). Rows are indexed by the input symbols
// (row-major over `inputs`); each row is a pmf over the output symbols
// (row-major over `outputs`).
class Kernel {
public:
    Kernel(std::vector<Variable> inputs, std::vector<Variable> outputs,
           std::vector<double> rows);

    // Deterministic map: `fn` fills the output symbols from the input symbols.
    using SymbolMap =
        std::function<void(std::span<const std::size_t>, std::span<std::size_t>)>;
    static Kernel deterministic(std::vector<Variable> inputs,
                                std::vector<Variable> outputs,
                                const SymbolMap& fn);

    const std::vector<Variable>& inputs() const { return inputs_; }
    const std::vector<Variable>& outputs() const { return outputs_; }
    std::size_t row_count() const { return row_count_; }
    std::size_t row_width() const { return row_width_; }
    std::span<const double> row(std::size_t input_index) const;
    std::span<const double> weights() const { return rows_; }

private:
    std::vector<Variable> inputs_;
    std::vector<Variable> outputs_;
    std::vector<double> rows_;
    std::size_t row_count_ = 1;
    std::size_t row_width_ = 1;
};

// Append the kernel's outputs to `base`, weighting each cell by the kernel
// row selected by the kernel's input variables.
JointPmf extend(const JointPmf& base, const Kernel& kernel,
                std::size_t cell_cap = kDefaultCellCap);

// Sum out every variable not in `keep`. Variable order follows `joint`.
JointPmf marginalize(const JointPmf& joint, const LabelSet& keep);

// Joint law of deterministic functions of the variables of `joint`.
JointPmf pushforward(const JointPmf& joint, std::vector<Variable> outputs,
                     const Kernel::SymbolMap& fn,
                     std::size_t cell_cap = kDefaultCellCap);

// H(target | given) in bits.
double entropy(const JointPmf& joint, const LabelSet& target,
               const LabelSet& given = {});

// I(a; b | given) in bits, clamped at 0 for round-off negatives.
double mutual_information(const JointPmf& joint, const LabelSet& a,
                          const LabelSet& b, const LabelSet& given = {});

// Memoizing evaluator for many information quantities on one joint.
class InformationCalculator {
public:
    explicit InformationCalculator(const JointPmf& joint) : joint_(joint) {}

    double joint_entropy(LabelSet labels) const;
    double entropy(const LabelSet& target, const LabelSet& given = {}) const;
    double mutual_information(const LabelSet& a, const LabelSet& b,
                              const LabelSet& given = {}) const;

private:
    const JointPmf& joint_;
    mutable std::map<LabelSet, double> cache_;
};

// Shannon entropy of a pmf vector, 0 log 0 = 0.
double entropy_of(std::span<const double> pmf);

double binary_entropy(double p);

} // namespace icfb
