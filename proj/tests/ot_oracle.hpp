#ifndef SAD_TESTS_OT_ORACLE_HPP
#define SAD_TESTS_OT_ORACLE_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

// Reference transportation solver for the tests: a dense two-phase primal
// simplex with Bland's rule. Slow but independent of the library's solver.
namespace ot_oracle {

namespace detail {

constexpr double kTol = 1e-11;

struct Simplex {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;          // rows x (cols + 1), last column is rhs
    std::vector<double> reduced;    // cols
    std::vector<std::size_t> basis; // rows

    double& at(std::size_t r, std::size_t c) { return a[r * (cols + 1) + c]; }
    double& rhs(std::size_t r) { return at(r, cols); }

    void pivot(std::size_t pr, std::size_t pc) {
        double p = at(pr, pc);
        for (std::size_t c = 0; c <= cols; ++c) at(pr, c) /= p;
        at(pr, pc) = 1.0;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr) continue;
            double f = at(r, pc);
            if (f == 0) continue;
            for (std::size_t c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
            at(r, pc) = 0.0;
        }
        double f = reduced[pc];
        if (f != 0) {
            for (std::size_t c = 0; c < cols; ++c) reduced[c] -= f * at(pr, c);
            reduced[pc] = 0.0;
        }
        basis[pr] = pc;
    }

    // One Bland step; false when no improving column remains.
    bool iterate(const std::vector<bool>& allowed) {
        std::size_t enter = cols;
        for (std::size_t c = 0; c < cols; ++c)
            if (allowed[c] && reduced[c] < -kTol) {
                enter = c;
                break;
            }
        if (enter == cols) return false;
        std::size_t leave = rows;
        double best = 0;
        for (std::size_t r = 0; r < rows; ++r) {
            double coef = at(r, enter);
            if (coef <= kTol) continue;
            double ratio = rhs(r) / coef;
            if (leave == rows || ratio < best - kTol ||
                (ratio < best + kTol && basis[r] < basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave == rows) throw std::runtime_error("oracle: unbounded program");
        pivot(leave, enter);
        return true;
    }

    void run(const std::vector<bool>& allowed) {
        for (std::size_t step = 0; step < 200000; ++step)
            if (!iterate(allowed)) return;
        throw std::runtime_error("oracle: iteration limit hit");
    }
};

} // namespace detail

// Minimum cost of shipping `supply` onto `demand` (equal totals) with dense
// per-pair costs, cost[i * demand.size() + j].
inline double transport_cost(const std::vector<double>& supply, const std::vector<double>& demand,
                             const std::vector<double>& cost) {
    const std::size_t ns = supply.size(), nd = demand.size();
    if (ns == 0 || nd == 0) throw std::invalid_argument("oracle: empty side");
    if (cost.size() != ns * nd) throw std::invalid_argument("oracle: cost size");
    const std::size_t n = ns * nd, total = n + ns + nd;

    detail::Simplex s;
    s.rows = ns + nd;
    s.cols = total;
    s.a.assign(s.rows * (total + 1), 0.0);
    s.basis.resize(s.rows);

    for (std::size_t i = 0; i < ns; ++i) {
        for (std::size_t j = 0; j < nd; ++j) s.at(i, i * nd + j) = 1.0;
        s.rhs(i) = supply[i];
    }
    for (std::size_t j = 0; j < nd; ++j) {
        for (std::size_t i = 0; i < ns; ++i) s.at(ns + j, i * nd + j) = 1.0;
        s.rhs(ns + j) = demand[j];
    }
    for (std::size_t r = 0; r < s.rows; ++r) {
        if (s.rhs(r) < 0) throw std::invalid_argument("oracle: negative mass");
        s.at(r, n + r) = 1.0;
        s.basis[r] = n + r;
    }

    // Phase 1: drive the artificial basis to zero. With unit artificial
    // costs the initial reduced cost of x_ij is -2 (it appears in two rows).
    s.reduced.assign(total, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        double sum = 0;
        for (std::size_t r = 0; r < s.rows; ++r) sum += s.at(r, c);
        s.reduced[c] = -sum;
    }
    std::vector<bool> allowed(total, true);
    s.run(allowed);
    double infeas = 0;
    for (std::size_t r = 0; r < s.rows; ++r)
        if (s.basis[r] >= n) infeas += s.rhs(r);
    if (infeas > 1e-7) throw std::runtime_error("oracle: infeasible program");

    // Swap out basic artificials where a real pivot exists; an all-zero row
    // is redundant and can keep its zero-valued artificial.
    for (std::size_t r = 0; r < s.rows; ++r) {
        if (s.basis[r] < n) continue;
        for (std::size_t c = 0; c < n; ++c)
            if (s.at(r, c) > detail::kTol || s.at(r, c) < -detail::kTol) {
                s.pivot(r, c);
                break;
            }
    }

    // Phase 2: the real objective, artificials barred from entering.
    for (std::size_t c = 0; c < total; ++c) {
        allowed[c] = c < n;
        s.reduced[c] = c < n ? cost[c] : 0.0;
    }
    for (std::size_t r = 0; r < s.rows; ++r) {
        if (s.basis[r] >= n) continue;
        double cb = cost[s.basis[r]];
        if (cb == 0) continue;
        for (std::size_t c = 0; c < total; ++c) s.reduced[c] -= cb * s.at(r, c);
    }
    for (std::size_t r = 0; r < s.rows; ++r) s.reduced[s.basis[r]] = 0.0;
    s.run(allowed);

    double value = 0;
    for (std::size_t r = 0; r < s.rows; ++r)
        if (s.basis[r] < n) value += cost[s.basis[r]] * s.rhs(r);
    return value;
}

} // namespace ot_oracle

#endif
