#pragma once

// Seeded generators for test instances.

#include <random>
#include <string>
#include <vector>

#include "icfb/bounds.hpp"
#include "icfb/regions.hpp"
#include "oracles.hpp"

namespace fixtures {

// Random system over R1, R2 and up to two auxiliaries with integer
// coefficients in [-2, 2] and integer constants.
inline icfb::LinearRateSystem random_system(std::mt19937_64& gen, std::size_t& aux_count)
{
    std::uniform_int_distribution<int> nvar(0, 2), nrow(1, 12), coef(-2, 2), cst(-2, 6);
    aux_count = static_cast<std::size_t>(nvar(gen));
    std::vector<std::string> vars{"R1", "R2"};
    for (std::size_t i = 0; i < aux_count; ++i) vars.push_back("A" + std::to_string(i));
    icfb::LinearRateSystem s(vars);
    const int rows = nrow(gen);
    for (int r = 0; r < rows; ++r) {
        icfb::RateInequality row;
        for (std::size_t i = 0; i < vars.size(); ++i) row.coeffs.emplace_back(coef(gen));
        row.bound = cst(gen);
        s.add_row(row);
    }
    return s;
}

// Feasibility of the system with (R1, R2) fixed, solved by the oracle.
inline bool system_feasible_at(const icfb::LinearRateSystem& s, double r1, double r2, double tol)
{
    const std::size_t k = s.variables().size() - 2;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    const std::size_t i1 = s.index_of("R1"), i2 = s.index_of("R2");
    for (const auto& row : s.rows()) {
        std::vector<double> a;
        for (std::size_t i = 0; i < row.coeffs.size(); ++i)
            if (i != i1 && i != i2) a.push_back(row.coeffs[i].to_double());
        A.push_back(a);
        b.push_back(row.bound - row.coeffs[i1].to_double() * r1 - row.coeffs[i2].to_double() * r2);
    }
    return oracle::feasible(A, b, k, tol);
}

inline std::vector<double> random_rows(std::size_t rows, std::size_t width, std::mt19937_64& gen)
{
    std::vector<double> out;
    for (std::size_t r = 0; r < rows; ++r) {
        auto p = oracle::random_pmf(width, gen);
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

// Binary alphabets everywhere; |Q| in {1, 2}.
inline icfb::IcGfChannel random_binary_channel(std::mt19937_64& gen)
{
    icfb::IcGfChannel::Alphabets a{2, 2, 2, 2, 2, 2};
    return icfb::IcGfChannel(a, random_rows(4, 16, gen));
}

inline icfb::GfInputDistribution random_binary_distribution(std::mt19937_64& gen, std::size_t q)
{
    icfb::GfInputDistribution::Cards c;
    c.q = q;
    c.u1 = c.u2 = c.v1 = c.v2 = 2;
    c.x1 = c.x2 = c.y1 = c.y2 = 2;
    return icfb::GfInputDistribution(c, oracle::random_pmf(q, gen), random_rows(q, 4, gen),
                                     random_rows(q, 4, gen), random_rows(2 * 2 * q, 2, gen),
                                     random_rows(2 * 2 * q, 2, gen));
}

inline icfb::DetIfInputDistribution random_product(std::size_t x1, std::size_t x2, std::mt19937_64& gen)
{
    return icfb::DetIfInputDistribution::product(oracle::random_pmf(x1, gen, 0.2),
                                                 oracle::random_pmf(x2, gen, 0.2));
}

} // namespace fixtures
