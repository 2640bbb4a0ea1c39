#pragma once

// Dense-tableau primal simplex for  min c'x  s.t.  Ax = b, x >= 0.
//
// Start: either a crash basis built by pivoting a caller-supplied set of
// columns (the support of a known feasible point) into an all-artificial
// basis, or a phase-1 run minimizing the artificial sum. Artificials left at
// zero are pivoted out; rows where that is impossible are redundant and get
// dropped. Phase 2 prices by Dantzig's rule and falls back to Bland's rule
// once the objective stalls for 2*rows pivots. The final basis is refactored
// with an LU decomposition and re-checked for feasibility and optimality.

#include "mwt/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace mwt::lp {

struct StandardForm {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
};

struct SimplexOptions {
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    double pivot_tol = 1e-9;
    std::size_t refactor_interval = 200;
    std::size_t max_iterations = 0; // 0: 50 * (rows + cols)
};

enum class SimplexStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct SimplexResult {
    SimplexStatus status = SimplexStatus::Infeasible;
    Eigen::VectorXd x;
    double objective = 0.0;
    std::vector<int> basis; // structural column per kept row
    std::size_t iterations = 0;
    std::size_t degenerate_pivots = 0;
    std::size_t redundant_rows = 0;
    std::size_t empty_rows = 0;
    bool crash_start = false;
    bool bland_fallback = false;
    double max_residual = 0.0;
};

namespace detail {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class Solver {
public:
    Solver(const StandardForm& lp, const SimplexOptions& opt) : opt_(opt), n_(lp.A.cols()) {
        const Eigen::Index m0 = lp.A.rows();
        for (Eigen::Index i = 0; i < m0; ++i) {
            if (lp.A.row(i).cwiseAbs().maxCoeff() == 0.0 || lp.A.cols() == 0) {
                if (std::abs(lp.b(i)) > opt_.feasibility_tol) infeasible_empty_row_ = true;
                ++empty_rows_;
                continue;
            }
            rows_.push_back(i);
        }
        m_ = static_cast<Eigen::Index>(rows_.size());
        A_.resize(m_, n_);
        b_.resize(m_);
        for (Eigen::Index r = 0; r < m_; ++r) {
            const double s = lp.b(rows_[r]) < 0 ? -1.0 : 1.0;
            A_.row(r) = s * lp.A.row(rows_[r]);
            b_(r) = s * lp.b(rows_[r]);
        }
        c_ = lp.c;
        max_iter_ = opt_.max_iterations ? opt_.max_iterations
                                        : 50 * static_cast<std::size_t>(m_ + n_ + 1);
    }

    SimplexResult run(std::span<const int> crash) {
        SimplexResult res;
        res.empty_rows = empty_rows_;
        if (infeasible_empty_row_) return finish(res, SimplexStatus::Infeasible);

        init_artificial();
        bool started = !crash.empty() && try_crash(crash);
        res.crash_start = started;
        if (!started) {
            init_artificial();
            set_phase1_objective();
            const auto st = iterate(res, /*allow_artificial=*/false);
            if (st == SimplexStatus::IterationLimit) return finish(res, st);
            if (-T_(m_, last()) > opt_.feasibility_tol * std::max(1.0, b_.cwiseAbs().sum()))
                return finish(res, SimplexStatus::Infeasible);
        }
        res.redundant_rows = drive_out_artificials();
        drop_artificial_columns();
        set_phase2_objective();
        stall_ = 0;
        for (int attempt = 0; attempt < 4; ++attempt) {
            const auto st = iterate(res, false);
            if (st != SimplexStatus::Optimal) return finish(res, st);
            if (refactor() && optimal_after_refactor()) break;
        }
        return finish(res, SimplexStatus::Optimal);
    }

private:
    Eigen::Index last() const { return T_.cols() - 1; }
    bool is_artificial(int j) const { return j >= n_; }

    void init_artificial() {
        T_ = Tableau::Zero(m_ + 1, n_ + m_ + 1);
        T_.topLeftCorner(m_, n_) = A_;
        for (Eigen::Index i = 0; i < m_; ++i) T_(i, n_ + i) = 1.0;
        T_.block(0, n_ + m_, m_, 1) = b_;
        basis_.resize(static_cast<std::size_t>(m_));
        for (Eigen::Index i = 0; i < m_; ++i) basis_[i] = static_cast<int>(n_ + i);
        with_artificials_ = true;
    }

    void pivot(Eigen::Index r, Eigen::Index j) {
        T_.row(r) /= T_(r, j);
        T_(r, j) = 1.0;
        for (Eigen::Index i = 0; i <= m_; ++i) {
            if (i == r) continue;
            const double f = T_(i, j);
            if (f == 0.0) continue;
            T_.row(i) -= f * T_.row(r);
            T_(i, j) = 0.0;
        }
        basis_[r] = static_cast<int>(j);
    }

    bool try_crash(std::span<const int> columns) {
        for (int j : columns) {
            Eigen::Index best = -1;
            double best_abs = opt_.pivot_tol;
            for (Eigen::Index i = 0; i < m_; ++i) {
                if (!is_artificial(basis_[i])) continue;
                const double a = std::abs(T_(i, j));
                if (a > best_abs) {
                    best_abs = a;
                    best = i;
                }
            }
            if (best < 0) return false;
            pivot(best, j);
        }
        for (Eigen::Index i = 0; i < m_; ++i) {
            const double v = T_(i, last());
            if (v < -opt_.feasibility_tol) return false;
            if (is_artificial(basis_[i]) && std::abs(v) > opt_.feasibility_tol) return false;
        }
        return true;
    }

    void set_phase1_objective() {
        T_.row(m_).setZero();
        for (Eigen::Index i = 0; i < m_; ++i) {
            T_.row(m_).head(n_) -= T_.row(i).head(n_);
            T_(m_, last()) -= T_(i, last());
        }
    }

    // Reduced costs in the bottom row; its last entry is minus the objective.
    void set_phase2_objective() {
        T_.row(m_).setZero();
        T_.row(m_).head(n_) = c_.transpose();
        for (Eigen::Index i = 0; i < m_; ++i) {
            const double cb = c_(basis_[i]);
            if (cb != 0.0) T_.row(m_) -= cb * T_.row(i);
        }
        for (Eigen::Index i = 0; i < m_; ++i) T_(m_, basis_[i]) = 0.0;
    }

    std::size_t drive_out_artificials() {
        std::vector<Eigen::Index> redundant;
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (!is_artificial(basis_[i])) continue;
            Eigen::Index best = -1;
            double best_abs = opt_.pivot_tol;
            for (Eigen::Index j = 0; j < n_; ++j) {
                const double a = std::abs(T_(i, j));
                if (a > best_abs) {
                    best_abs = a;
                    best = j;
                }
            }
            if (best >= 0)
                pivot(i, best);
            else
                redundant.push_back(i);
        }
        if (redundant.empty()) return 0;
        std::vector<char> drop(static_cast<std::size_t>(m_), 0);
        for (auto i : redundant) drop[i] = 1;
        Tableau T(m_ - static_cast<Eigen::Index>(redundant.size()) + 1, T_.cols());
        Eigen::MatrixXd A(T.rows() - 1, n_);
        Eigen::VectorXd b(T.rows() - 1);
        std::vector<int> basis;
        Eigen::Index r = 0;
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (drop[i]) continue;
            T.row(r) = T_.row(i);
            A.row(r) = A_.row(i);
            b(r) = b_(i);
            basis.push_back(basis_[i]);
            ++r;
        }
        T.row(r) = T_.row(m_);
        T_ = std::move(T);
        A_ = std::move(A);
        b_ = std::move(b);
        basis_ = std::move(basis);
        m_ = r;
        return redundant.size();
    }

    void drop_artificial_columns() {
        if (!with_artificials_) return;
        Tableau T(m_ + 1, n_ + 1);
        T.leftCols(n_) = T_.leftCols(n_);
        T.col(n_) = T_.col(last());
        T_ = std::move(T);
        with_artificials_ = false;
    }

    SimplexStatus iterate(SimplexResult& res, bool allow_artificial) {
        const Eigen::Index ncols = allow_artificial ? T_.cols() - 1 : n_;
        double last_obj = -T_(m_, last());
        std::size_t since_refactor = 0;
        while (true) {
            if (res.iterations >= max_iter_) return SimplexStatus::IterationLimit;
            Eigen::Index enter = -1;
            if (!bland_) {
                double best = -opt_.optimality_tol;
                for (Eigen::Index j = 0; j < ncols; ++j)
                    if (T_(m_, j) < best) {
                        best = T_(m_, j);
                        enter = j;
                    }
            } else {
                for (Eigen::Index j = 0; j < ncols && enter < 0; ++j)
                    if (T_(m_, j) < -opt_.optimality_tol) enter = j;
            }
            if (enter < 0) return SimplexStatus::Optimal;

            Eigen::Index leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < m_; ++i) {
                const double a = T_(i, enter);
                if (a <= opt_.pivot_tol) continue;
                const double ratio = std::max(0.0, T_(i, last())) / a;
                bool take = false;
                if (leave < 0 || ratio < best_ratio - 1e-12) {
                    take = true;
                } else if (ratio <= best_ratio + 1e-12) {
                    take = bland_ ? basis_[i] < basis_[leave] : a > T_(leave, enter);
                }
                if (take) {
                    leave = i;
                    best_ratio = std::min(best_ratio, ratio);
                }
            }
            if (leave < 0) return SimplexStatus::Unbounded;
            if (best_ratio <= 1e-12) ++res.degenerate_pivots;
            pivot(leave, enter);
            ++res.iterations;

            const double obj = -T_(m_, last());
            if (obj < last_obj - 1e-12 * std::max(1.0, std::abs(last_obj))) {
                stall_ = 0;
                last_obj = obj;
            } else if (++stall_ > 2 * static_cast<std::size_t>(m_) && !bland_) {
                bland_ = true;
                res.bland_fallback = true;
            }
            if (++since_refactor >= opt_.refactor_interval && !with_artificials_) {
                refactor();
                since_refactor = 0;
            }
        }
    }

    // Rebuilds the tableau from the original data and the current basis.
    bool refactor() {
        if (with_artificials_ || m_ == 0) return true;
        Eigen::MatrixXd B(m_, m_);
        for (Eigen::Index i = 0; i < m_; ++i) B.col(i) = A_.col(basis_[i]);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
        if (!(std::abs(lu.determinant()) > 0.0)) return false;
        Eigen::MatrixXd body(m_, n_ + 1);
        body.leftCols(n_) = A_;
        body.col(n_) = b_;
        const Eigen::MatrixXd solved = lu.solve(body);
        if (!solved.allFinite()) return false;
        T_.topRows(m_) = solved;
        for (Eigen::Index i = 0; i < m_; ++i)
            if (std::abs(T_(i, last())) < 1e-13) T_(i, last()) = 0.0;
        set_phase2_objective();
        return true;
    }

    bool optimal_after_refactor() const {
        for (Eigen::Index j = 0; j < n_; ++j)
            if (T_(m_, j) < -opt_.optimality_tol) return false;
        return true;
    }

    SimplexResult& finish(SimplexResult& res, SimplexStatus st) {
        res.status = st;
        if (st != SimplexStatus::Optimal) return res;
        res.x = Eigen::VectorXd::Zero(n_);
        for (Eigen::Index i = 0; i < m_; ++i) {
            double v = T_(i, last());
            if (v < 0.0) v = 0.0;
            res.x(basis_[i]) = v;
        }
        res.basis = basis_;
        res.objective = c_.dot(res.x);
        return res;
    }

    SimplexOptions opt_;
    Eigen::Index n_ = 0;
    Eigen::Index m_ = 0;
    std::vector<Eigen::Index> rows_;
    Eigen::MatrixXd A_;
    Eigen::VectorXd b_;
    Eigen::VectorXd c_;
    Tableau T_;
    std::vector<int> basis_;
    bool with_artificials_ = false;
    bool bland_ = false;
    bool infeasible_empty_row_ = false;
    std::size_t empty_rows_ = 0;
    std::size_t stall_ = 0;
    std::size_t max_iter_ = 0;
};

} // namespace detail

// `crash` lists columns spanning a known feasible point; may be empty.
inline SimplexResult simplex(const StandardForm& lp, std::span<const int> crash = {},
                             const SimplexOptions& options = {}) {
    if (lp.A.rows() != lp.b.size() || lp.A.cols() != lp.c.size())
        throw InputError("simplex: inconsistent dimensions");
    detail::Solver solver(lp, options);
    SimplexResult res = solver.run(crash);
    if (res.status == SimplexStatus::Optimal && lp.A.rows() > 0)
        res.max_residual = (lp.A * res.x - lp.b).cwiseAbs().maxCoeff();
    return res;
}

} // namespace mwt::lp
