#pragma once

// Small dense linear programming toolkit.
//
// Model collects variables and sparse rows; maximize() lowers everything to
// the canonical form  max c'x  s.t.  Ax <= b, x >= 0  and runs a two-phase
// dictionary simplex on it.

#include "nse/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace nse::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(Status status) {
    switch (status) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration limit";
    }
    return "unknown";
}

struct Term {
    std::size_t var;
    double coef;
};

using Expression = std::vector<Term>;

struct Solution {
    Status status = Status::Infeasible;
    double objective = 0.0;
    std::vector<double> values;
    /// One multiplier per constraint, in insertion order.
    std::vector<double> duals;

    bool optimal() const { return status == Status::Optimal; }
};

namespace detail {

/// Dictionary-form simplex for  max c'x  s.t.  Ax <= b, x >= 0.
///
/// The dictionary keeps only the nonbasic columns plus one artificial column
/// (used to reach a feasible basis when some b_i < 0). Rows m and m+1 hold the
/// real and the phase-one objectives. Every few dozen pivots the dictionary is
/// recomputed from the original data through an LU factorization of the basis
/// matrix.
class DenseSimplex {
public:
    DenseSimplex(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                 const std::vector<double>& c)
        : m_(b.size()), n_(c.size()), rhs_(n_ + 1), width_(n_ + 2), a_(m_, n_), b_(m_), c_(n_), basis_(m_),
          nonbasis_(n_ + 1), table_((m_ + 2) * width_, 0.0) {
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) a_(i, j) = a[i][j];
            b_(i) = b[i];
            basis_[i] = static_cast<long>(n_ + i);
        }
        for (std::size_t j = 0; j < n_; ++j) {
            c_(j) = c[j];
            nonbasis_[j] = static_cast<long>(j);
        }
        nonbasis_[n_] = kArtificial;
        rebuild();
        iteration_limit_ = 200 * (m_ + n_) + 10000;
        rebuild_interval_ = std::max(kMinRebuildInterval, m_ / 2);
    }

    Status solve(std::vector<double>& x, std::vector<double>& y, double& value) {
        x.assign(n_, 0.0);
        y.assign(m_, 0.0);
        value = 0.0;
        if (m_ > 0) {
            std::size_t r = 0;
            for (std::size_t i = 1; i < m_; ++i)
                if (at(i, rhs_) < at(r, rhs_)) r = i;
            if (at(r, rhs_) < -kEps) {
                pivot(r, n_);
                Status phase_one = run(m_ + 1);
                if (phase_one == Status::IterationLimit) return phase_one;
                if (at(m_ + 1, rhs_) < -kFeasibilityEps) return Status::Infeasible;
                evict_artificial();
                rebuild();
            }
        }
        const Status status = run(m_);
        if (status != Status::Optimal) return status;
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_)
                x[static_cast<std::size_t>(basis_[i])] = std::max(0.0, at(i, rhs_));
        for (std::size_t j = 0; j <= n_; ++j)
            if (nonbasis_[j] >= 0 && static_cast<std::size_t>(nonbasis_[j]) >= n_)
                y[static_cast<std::size_t>(nonbasis_[j]) - n_] = std::max(0.0, at(m_, j));
        value = at(m_, rhs_);
        return Status::Optimal;
    }

private:
    static constexpr long kArtificial = -1;
    static constexpr double kEps = 1e-10;
    static constexpr double kFeasibilityEps = 1e-9;
    static constexpr double kPivotEps = 1e-9;
    static constexpr std::size_t kMinRebuildInterval = 40;

    double& at(std::size_t i, std::size_t j) { return table_[i * width_ + j]; }

    // Column of [A | I | -1] for a variable label.
    Eigen::VectorXd column(long label) const {
        if (label == kArtificial) return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m_), -1.0);
        const auto k = static_cast<std::size_t>(label);
        if (k < n_) return a_.col(static_cast<Eigen::Index>(k));
        Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m_));
        e(static_cast<Eigen::Index>(k - n_)) = 1.0;
        return e;
    }

    double cost(long label) const {
        return label >= 0 && static_cast<std::size_t>(label) < n_ ? c_(label) : 0.0;
    }
    static double phase_one_cost(long label) { return label == kArtificial ? -1.0 : 0.0; }

    // Recomputes the whole dictionary for the current basis.
    void rebuild() {
        since_rebuild_ = 0;
        if (m_ == 0) {
            for (std::size_t j = 0; j <= n_; ++j) {
                at(0, j) = -cost(nonbasis_[j]);
                at(1, j) = -phase_one_cost(nonbasis_[j]);
            }
            return;
        }
        const auto m = static_cast<Eigen::Index>(m_);
        Eigen::MatrixXd basis(m, m);
        Eigen::VectorXd c2(m), c1(m);
        for (std::size_t i = 0; i < m_; ++i) {
            basis.col(static_cast<Eigen::Index>(i)) = column(basis_[i]);
            c2(static_cast<Eigen::Index>(i)) = cost(basis_[i]);
            c1(static_cast<Eigen::Index>(i)) = phase_one_cost(basis_[i]);
        }
        Eigen::MatrixXd rest(m, static_cast<Eigen::Index>(n_ + 2));
        for (std::size_t j = 0; j <= n_; ++j) rest.col(static_cast<Eigen::Index>(j)) = column(nonbasis_[j]);
        rest.col(static_cast<Eigen::Index>(rhs_)) = b_;
        const Eigen::MatrixXd solved = Eigen::PartialPivLU<Eigen::MatrixXd>(basis).solve(rest);
        const Eigen::RowVectorXd obj2 = c2.transpose() * solved;
        const Eigen::RowVectorXd obj1 = c1.transpose() * solved;
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < width_; ++j)
                at(i, j) = solved(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        for (std::size_t j = 0; j <= n_; ++j) {
            at(m_, j) = obj2(static_cast<Eigen::Index>(j)) - cost(nonbasis_[j]);
            at(m_ + 1, j) = obj1(static_cast<Eigen::Index>(j)) - phase_one_cost(nonbasis_[j]);
        }
        at(m_, rhs_) = obj2(static_cast<Eigen::Index>(rhs_));
        at(m_ + 1, rhs_) = obj1(static_cast<Eigen::Index>(rhs_));
        for (std::size_t i = 0; i < m_; ++i)
            if (std::fabs(at(i, rhs_)) < kEps) at(i, rhs_) = 0.0;
    }

    void pivot(std::size_t r, std::size_t s) {
        double* row_r = &table_[r * width_];
        const double inv = 1.0 / row_r[s];
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i == r) continue;
            double* row_i = &table_[i * width_];
            if (row_i[s] == 0.0) continue;
            const double factor = row_i[s] * inv;
            for (std::size_t j = 0; j < width_; ++j) row_i[j] -= row_r[j] * factor;
            row_i[s] = -factor;
        }
        for (std::size_t j = 0; j < width_; ++j) row_r[j] *= inv;
        row_r[s] = inv;
        std::swap(basis_[r], nonbasis_[s]);
        if (++since_rebuild_ >= rebuild_interval_) rebuild();
    }

    // Primal simplex on the objective stored in row `objective`.
    Status run(std::size_t objective) {
        const bool phase_one = objective == m_ + 1;
        std::size_t degenerate_streak = 0;
        bool bland = false;
        for (std::size_t iter = 0; iter < iteration_limit_; ++iter) {
            long s = -1;
            for (std::size_t j = 0; j <= n_; ++j) {
                if (!phase_one && nonbasis_[j] == kArtificial) continue;
                const double d = at(objective, j);
                if (d >= -kEps) continue;
                if (s < 0) {
                    s = static_cast<long>(j);
                    continue;
                }
                const auto cur = static_cast<std::size_t>(s);
                if (bland ? nonbasis_[j] < nonbasis_[cur]
                          : (d < at(objective, cur) ||
                             (d == at(objective, cur) && nonbasis_[j] < nonbasis_[cur])))
                    s = static_cast<long>(j);
            }
            if (s < 0) {
                if (since_rebuild_ == 0) return Status::Optimal;
                rebuild();
                continue;
            }
            const auto col = static_cast<std::size_t>(s);

            long r = -1;
            double best_ratio = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                const double d = at(i, col);
                if (d <= kPivotEps) continue;
                const double ratio = std::max(0.0, at(i, rhs_)) / d;
                if (r < 0) {
                    best_ratio = ratio;
                    r = static_cast<long>(i);
                    continue;
                }
                const auto cur = static_cast<std::size_t>(r);
                const double tie = kEps * (1.0 + best_ratio);
                bool take = ratio < best_ratio - tie;
                if (!take && ratio <= best_ratio + tie)
                    take = bland ? basis_[i] < basis_[cur] : d > at(cur, col);
                if (take) {
                    best_ratio = std::min(best_ratio, ratio);
                    r = static_cast<long>(i);
                }
            }
            if (r < 0) {
                if (since_rebuild_ == 0) return Status::Unbounded;
                rebuild();
                continue;
            }

            if (best_ratio <= kEps) {
                if (++degenerate_streak > 50) bland = true;
            } else {
                degenerate_streak = 0;
                bland = false;
            }
            pivot(static_cast<std::size_t>(r), col);
        }
        return Status::IterationLimit;
    }

    // After phase one an artificial may remain basic at level zero; swap it
    // for any structural column with a usable pivot.
    void evict_artificial() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] != kArtificial) continue;
            long best = -1;
            for (std::size_t j = 0; j <= n_; ++j) {
                if (std::fabs(at(i, j)) <= 1e-9) continue;
                if (best < 0 || std::fabs(at(i, j)) > std::fabs(at(i, static_cast<std::size_t>(best))))
                    best = static_cast<long>(j);
            }
            if (best >= 0) pivot(i, static_cast<std::size_t>(best));
        }
    }

    std::size_t m_, n_, rhs_, width_;
    Eigen::MatrixXd a_;
    Eigen::VectorXd b_;
    Eigen::VectorXd c_;
    std::vector<long> basis_;
    std::vector<long> nonbasis_;
    std::vector<double> table_;
    std::size_t iteration_limit_ = 0;
    std::size_t since_rebuild_ = 0;
    std::size_t rebuild_interval_ = kMinRebuildInterval;
};

} // namespace detail

/// A linear program under construction. Variables are non-negative unless
/// declared free.
class Model {
public:
    std::size_t add_variable(double objective = 0.0, bool free = false) {
        objective_.push_back(objective);
        free_.push_back(free);
        return objective_.size() - 1;
    }

    std::size_t num_variables() const { return objective_.size(); }
    std::size_t num_constraints() const { return rows_.size(); }

    void set_objective(std::size_t var, double coef) { objective_.at(var) = coef; }

    void add_constraint(Expression terms, Sense sense, double rhs) {
        for (const Term& t : terms)
            if (t.var >= objective_.size())
                throw SolverError("LP constraint references unknown variable " + std::to_string(t.var));
        rows_.push_back(Row{std::move(terms), sense, rhs});
    }

    Solution maximize() const {
        // Column layout: one column per variable, plus a negative part for free ones.
        std::vector<std::size_t> neg_col(objective_.size(), kNone);
        std::size_t cols = objective_.size();
        for (std::size_t v = 0; v < objective_.size(); ++v)
            if (free_[v]) neg_col[v] = cols++;

        std::vector<std::vector<double>> a;
        std::vector<double> b;
        auto emit = [&](const Row& row, double sign) {
            std::vector<double> dense(cols, 0.0);
            for (const Term& t : row.terms) {
                dense[t.var] += sign * t.coef;
                if (neg_col[t.var] != kNone) dense[neg_col[t.var]] -= sign * t.coef;
            }
            a.push_back(std::move(dense));
            b.push_back(sign * row.rhs);
        };
        for (const Row& row : rows_) {
            if (row.sense != Sense::GreaterEqual) emit(row, 1.0);
            if (row.sense != Sense::LessEqual) emit(row, -1.0);
        }
        std::vector<double> c(cols, 0.0);
        for (std::size_t v = 0; v < objective_.size(); ++v) {
            c[v] = objective_[v];
            if (neg_col[v] != kNone) c[neg_col[v]] = -objective_[v];
        }

        detail::DenseSimplex simplex(a, b, c);
        std::vector<double> x, y;
        Solution sol;
        sol.status = simplex.solve(x, y, sol.objective);
        if (sol.status == Status::Optimal) {
            sol.values.assign(objective_.size(), 0.0);
            for (std::size_t v = 0; v < objective_.size(); ++v) {
                sol.values[v] = x[v];
                if (neg_col[v] != kNone) sol.values[v] -= x[neg_col[v]];
            }
            sol.duals.assign(rows_.size(), 0.0);
            std::size_t k = 0;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i].sense != Sense::GreaterEqual) sol.duals[i] += y[k++];
                if (rows_[i].sense != Sense::LessEqual) sol.duals[i] -= y[k++];
            }
        }
        return sol;
    }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    struct Row {
        Expression terms;
        Sense sense;
        double rhs;
    };

    std::vector<double> objective_;
    std::vector<bool> free_;
    std::vector<Row> rows_;
};

/// Evaluates a linear expression at a primal point.
inline double evaluate(const Expression& expr, const std::vector<double>& values) {
    double sum = 0.0;
    for (const Term& t : expr) sum += t.coef * values[t.var];
    return sum;
}

} // namespace nse::lp
