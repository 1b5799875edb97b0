#include "icfb/probability.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "icfb/errors.hpp"

namespace icfb {

namespace {

constexpr double kMiNegativeLimit = -1e-8;

// Neumaier-compensated sum; large joints are built from many small products.
double accurate_sum(std::span<const double> values)
{
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

std::size_t checked_cells(const std::vector<Variable>& vars, std::size_t cap)
{
    std::size_t cells = 1;
    for (const auto& v : vars) {
        if (v.card == 0)
            throw std::invalid_argument("variable '" + v.label + "' has empty alphabet");
        if (cells > cap / v.card)
            throw ResourceLimitError("joint cell count exceeds cap of " +
                                     std::to_string(cap));
        cells *= v.card;
    }
    return cells;
}

void check_unique_labels(const std::vector<Variable>& vars)
{
    std::set<std::string> seen;
    for (const auto& v : vars) {
        if (!seen.insert(v.label).second)
            throw std::invalid_argument("duplicate variable label '" + v.label + "'");
    }
}

std::size_t product_of_cards(const std::vector<Variable>& vars)
{
    std::size_t n = 1;
    for (const auto& v : vars)
        n *= v.card;
    return n;
}

// Strides (row-major) for the given variables.
std::vector<std::size_t> strides_of(const std::vector<Variable>& vars)
{
    std::vector<std::size_t> strides(vars.size(), 1);
    for (std::size_t i = vars.size(); i-- > 1;)
        strides[i - 1] = strides[i] * vars[i].card;
    return strides;
}

// Advance a mixed-radix odometer; returns false after the last state.
bool advance(std::vector<std::size_t>& digits, const std::vector<Variable>& vars)
{
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < vars[i].card)
            return true;
        digits[i] = 0;
    }
    return false;
}

} // namespace

JointPmf::JointPmf(std::vector<Variable> variables, std::vector<double> weights,
                   std::size_t cell_cap)
    : variables_(std::move(variables))
    , weights_(std::move(weights))
{
    check_unique_labels(variables_);
    std::size_t cells = checked_cells(variables_, cell_cap);
    if (weights_.size() != cells)
        throw std::invalid_argument("joint pmf weight count does not match alphabets");
    for (double w : weights_) {
        if (!(w >= 0.0) || w > 1.0 + kPmfTolerance)
            throw std::invalid_argument("joint pmf weight outside [0,1]");
    }
    double total = accurate_sum(weights_);
    if (std::abs(total - 1.0) > kPmfTolerance)
        throw std::invalid_argument("joint pmf does not sum to 1");
}

JointPmf JointPmf::uniform(std::vector<Variable> variables)
{
    std::size_t cells = checked_cells(variables, kDefaultCellCap);
    std::vector<double> w(cells, 1.0 / static_cast<double>(cells));
    return JointPmf(std::move(variables), std::move(w));
}

bool JointPmf::has(const std::string& label) const
{
    return std::any_of(variables_.begin(), variables_.end(),
                       [&](const Variable& v) { return v.label == label; });
}

std::size_t JointPmf::index_of(const std::string& label) const
{
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].label == label)
            return i;
    }
    throw std::invalid_argument("unknown variable label '" + label + "'");
}

const Variable& JointPmf::variable(const std::string& label) const
{
    return variables_[index_of(label)];
}

std::size_t JointPmf::flat_index(std::span<const std::size_t> symbols) const
{
    if (symbols.size() != variables_.size())
        throw std::invalid_argument("symbol tuple has wrong arity");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i] >= variables_[i].card)
            throw std::out_of_range("symbol out of alphabet range");
        flat = flat * variables_[i].card + symbols[i];
    }
    return flat;
}

void JointPmf::unflatten(std::size_t flat, std::span<std::size_t> symbols) const
{
    for (std::size_t i = variables_.size(); i-- > 0;) {
        symbols[i] = flat % variables_[i].card;
        flat /= variables_[i].card;
    }
}

double JointPmf::at(std::span<const std::size_t> symbols) const
{
    return weights_[flat_index(symbols)];
}

Kernel::Kernel(std::vector<Variable> inputs, std::vector<Variable> outputs,
               std::vector<double> rows)
    : inputs_(std::move(inputs))
    , outputs_(std::move(outputs))
    , rows_(std::move(rows))
{
    if (outputs_.empty())
        throw std::invalid_argument("kernel needs at least one output variable");
    std::vector<Variable> all = inputs_;
    all.insert(all.end(), outputs_.begin(), outputs_.end());
    check_unique_labels(all);
    checked_cells(all, kDefaultCellCap);
    row_count_ = product_of_cards(inputs_);
    row_width_ = product_of_cards(outputs_);
    if (rows_.size() != row_count_ * row_width_)
        throw std::invalid_argument("kernel weight count does not match alphabets");
    for (std::size_t r = 0; r < row_count_; ++r) {
        auto rw = row(r);
        for (double w : rw) {
            if (!(w >= 0.0))
                throw std::invalid_argument("kernel has a negative weight");
        }
        if (std::abs(accurate_sum(rw) - 1.0) > kPmfTolerance)
            throw std::invalid_argument("kernel row does not sum to 1");
    }
}

Kernel Kernel::deterministic(std::vector<Variable> inputs,
                             std::vector<Variable> outputs, const SymbolMap& fn)
{
    std::size_t nrows = product_of_cards(inputs);
    std::size_t width = product_of_cards(outputs);
    std::vector<double> rows(nrows * width, 0.0);
    std::vector<std::size_t> in(inputs.size(), 0);
    std::vector<std::size_t> out(outputs.size(), 0);
    for (std::size_t r = 0; r < nrows; ++r) {
        std::fill(out.begin(), out.end(), 0);
        fn(in, out);
        std::size_t col = 0;
        for (std::size_t j = 0; j < outputs.size(); ++j) {
            if (out[j] >= outputs[j].card)
                throw std::out_of_range("deterministic map output out of range");
            col = col * outputs[j].card + out[j];
        }
        rows[r * width + col] = 1.0;
        advance(in, inputs);
    }
    return Kernel(std::move(inputs), std::move(outputs), std::move(rows));
}

std::span<const double> Kernel::row(std::size_t input_index) const
{
    return std::span<const double>(rows_).subspan(input_index * row_width_, row_width_);
}

JointPmf extend(const JointPmf& base, const Kernel& kernel, std::size_t cell_cap)
{
    const auto& vars = base.variables();
    std::vector<std::size_t> input_pos;
    for (const auto& in : kernel.inputs()) {
        std::size_t pos = base.index_of(in.label);
        if (vars[pos].card != in.card)
            throw std::invalid_argument("kernel input '" + in.label +
                                        "' alphabet size mismatch");
        input_pos.push_back(pos);
    }
    for (const auto& out : kernel.outputs()) {
        if (base.has(out.label))
            throw std::invalid_argument("kernel output '" + out.label +
                                        "' already present in joint");
    }

    std::vector<Variable> result_vars = vars;
    result_vars.insert(result_vars.end(), kernel.outputs().begin(),
                       kernel.outputs().end());
    std::size_t cells = checked_cells(result_vars, cell_cap);
    std::vector<double> w(cells, 0.0);

    const std::size_t width = kernel.row_width();
    std::vector<std::size_t> digits(vars.size(), 0);
    auto bw = base.weights();
    for (std::size_t flat = 0; flat < bw.size(); ++flat) {
        double p = bw[flat];
        if (p != 0.0) {
            std::size_t r = 0;
            for (std::size_t k = 0; k < input_pos.size(); ++k)
                r = r * kernel.inputs()[k].card + digits[input_pos[k]];
            auto row = kernel.row(r);
            double* dst = w.data() + flat * width;
            for (std::size_t c = 0; c < width; ++c)
                dst[c] = p * row[c];
        }
        advance(digits, vars);
    }
    return JointPmf(std::move(result_vars), std::move(w), cell_cap);
}

JointPmf marginalize(const JointPmf& joint, const LabelSet& keep)
{
    if (keep.empty())
        throw std::invalid_argument("marginalize needs a nonempty label set");
    std::set<std::string> keep_set(keep.begin(), keep.end());
    for (const auto& l : keep_set)
        joint.index_of(l);

    const auto& vars = joint.variables();
    std::vector<Variable> kept;
    std::vector<std::size_t> kept_pos;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (keep_set.count(vars[i].label)) {
            kept.push_back(vars[i]);
            kept_pos.push_back(i);
        }
    }
    if (kept.size() == vars.size())
        return joint;

    // Stride of each joint position in the kept tensor (0 for dropped ones).
    std::vector<std::size_t> kept_strides = strides_of(kept);
    std::vector<std::size_t> map_stride(vars.size(), 0);
    for (std::size_t k = 0; k < kept_pos.size(); ++k)
        map_stride[kept_pos[k]] = kept_strides[k];

    std::vector<double> w(product_of_cards(kept), 0.0);
    std::vector<std::size_t> digits(vars.size(), 0);
    std::size_t target = 0;
    auto jw = joint.weights();
    for (std::size_t flat = 0; flat < jw.size(); ++flat) {
        w[target] += jw[flat];
        // Incremental odometer keeping `target` in sync.
        for (std::size_t i = vars.size(); i-- > 0;) {
            if (++digits[i] < vars[i].card) {
                target += map_stride[i];
                break;
            }
            target -= map_stride[i] * (vars[i].card - 1);
            digits[i] = 0;
        }
    }
    return JointPmf(std::move(kept), std::move(w));
}

JointPmf pushforward(const JointPmf& joint, std::vector<Variable> outputs,
                     const Kernel::SymbolMap& fn, std::size_t cell_cap)
{
    check_unique_labels(outputs);
    std::size_t cells = checked_cells(outputs, cell_cap);
    std::vector<double> w(cells, 0.0);
    const auto& vars = joint.variables();
    std::vector<std::size_t> in(vars.size(), 0);
    std::vector<std::size_t> out(outputs.size(), 0);
    auto jw = joint.weights();
    for (std::size_t flat = 0; flat < jw.size(); ++flat) {
        if (jw[flat] != 0.0) {
            fn(in, out);
            std::size_t col = 0;
            for (std::size_t j = 0; j < outputs.size(); ++j) {
                if (out[j] >= outputs[j].card)
                    throw std::out_of_range("pushforward output out of range");
                col = col * outputs[j].card + out[j];
            }
            w[col] += jw[flat];
        }
        advance(in, vars);
    }
    return JointPmf(std::move(outputs), std::move(w), cell_cap);
}

double entropy_of(std::span<const double> pmf)
{
    double h = 0.0;
    for (double p : pmf) {
        if (p > 0.0)
            h -= p * std::log2(p);
    }
    return h;
}

double binary_entropy(double p)
{
    const double q[2] = {p, 1.0 - p};
    return entropy_of(q);
}

namespace {

void check_labels(const JointPmf& joint, const LabelSet& labels)
{
    for (const auto& l : labels)
        joint.index_of(l);
}

void check_disjoint(const LabelSet& a, const LabelSet& b)
{
    for (const auto& l : a) {
        if (std::find(b.begin(), b.end(), l) != b.end())
            throw std::invalid_argument("label '" + l + "' appears in two argument sets");
    }
}

LabelSet union_of(const LabelSet& a, const LabelSet& b)
{
    LabelSet u = a;
    u.insert(u.end(), b.begin(), b.end());
    return u;
}

double clamp_mi(double value)
{
    if (value < kMiNegativeLimit)
        throw std::domain_error("mutual information is negative; the pmf is inconsistent");
    return value < 0.0 ? 0.0 : value;
}

} // namespace

double InformationCalculator::joint_entropy(LabelSet labels) const
{
    if (labels.empty())
        return 0.0;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    auto it = cache_.find(labels);
    if (it != cache_.end())
        return it->second;
    double h = entropy_of(marginalize(joint_, labels).weights());
    cache_.emplace(std::move(labels), h);
    return h;
}

double InformationCalculator::entropy(const LabelSet& target, const LabelSet& given) const
{
    if (target.empty())
        throw std::invalid_argument("entropy needs a nonempty target");
    check_labels(joint_, target);
    check_labels(joint_, given);
    check_disjoint(target, given);
    double h = joint_entropy(union_of(target, given)) - joint_entropy(given);
    return h < 0.0 ? 0.0 : h;
}

double InformationCalculator::mutual_information(const LabelSet& a, const LabelSet& b,
                                                 const LabelSet& given) const
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("mutual information needs nonempty arguments");
    check_labels(joint_, a);
    check_labels(joint_, b);
    check_labels(joint_, given);
    check_disjoint(a, b);
    check_disjoint(a, given);
    check_disjoint(b, given);
    double v = joint_entropy(union_of(a, given)) + joint_entropy(union_of(b, given)) -
               joint_entropy(union_of(union_of(a, b), given)) - joint_entropy(given);
    return clamp_mi(v);
}

double entropy(const JointPmf& joint, const LabelSet& target, const LabelSet& given)
{
    return InformationCalculator(joint).entropy(target, given);
}

double mutual_information(const JointPmf& joint, const LabelSet& a, const LabelSet& b,
                          const LabelSet& given)
{
    return InformationCalculator(joint).mutual_information(a, b, given);
}

} // namespace icfb
