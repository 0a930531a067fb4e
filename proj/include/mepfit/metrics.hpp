#ifndef MEPFIT_METRICS_HPP
#define MEPFIT_METRICS_HPP

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include <mepfit/model.hpp>
#include <mepfit/types.hpp>

namespace mepfit
{

///
/// Correspondence from estimated terms to ground-truth terms. When the term
/// count or the multiplicity multiset disagrees no pairing exists; the
/// report flags the mismatch instead of throwing so that failed noisy runs
/// can still be tabulated.
///
struct TermMatching
{
    std::vector<Index> est_to_true;
    bool structural_mismatch = false;
    std::string diagnostic;
};

namespace detail
{

/// Minimum-cost square assignment (Hungarian method with potentials).
/// Returns the column assigned to each row.
template <typename Real>
std::vector<Index> min_cost_assignment(
    const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& cost)
{
    const Index n      = cost.rows();
    const Real inf     = std::numeric_limits<Real>::infinity();
    std::vector<Real> u(n + 1, Real(0)), v(n + 1, Real(0));
    std::vector<Index> match(n + 1, 0), way(n + 1, 0);
    for (Index i = 1; i <= n; ++i)
    {
        match[0] = i;
        Index j0 = 0;
        std::vector<Real> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do
        {
            used[j0]      = true;
            const Index i0 = match[j0];
            Index j1       = 0;
            Real delta     = inf;
            for (Index j = 1; j <= n; ++j)
            {
                if (used[j])
                {
                    continue;
                }
                const Real cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j])
                {
                    minv[j] = cur;
                    way[j]  = j0;
                }
                if (minv[j] < delta)
                {
                    delta = minv[j];
                    j1    = j;
                }
            }
            for (Index j = 0; j <= n; ++j)
            {
                if (used[j])
                {
                    u[match[j]] += delta;
                    v[j] -= delta;
                }
                else
                {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do
        {
            const Index j1 = way[j0];
            match[j0]      = match[j1];
            j0             = j1;
        } while (j0 != 0);
    }
    std::vector<Index> row_to_col(n);
    for (Index j = 1; j <= n; ++j)
    {
        row_to_col[match[j] - 1] = j - 1;
    }
    return row_to_col;
}

} // namespace detail

///
/// Minimum-total-cost pairing of estimated and true terms under the cost
/// |z_est - z_true|, restricted to pairs of equal multiplicity. Matching is
/// done in z-space since zeros are branch-free.
///
template <typename Real>
TermMatching match_parameters(const MonomialExponentialModel<Real>& estimated,
                              const MonomialExponentialModel<Real>& truth)
{
    TermMatching out;
    if (estimated.num_terms() != truth.num_terms())
    {
        out.structural_mismatch = true;
        out.diagnostic = "term count " +
                         std::to_string(estimated.num_terms()) + " vs " +
                         std::to_string(truth.num_terms());
        return out;
    }
    std::map<Index, std::vector<Index>> est_by_mult, true_by_mult;
    for (Index j = 0; j < estimated.num_terms(); ++j)
    {
        est_by_mult[estimated.terms()[j].multiplicity()].push_back(j);
    }
    for (Index j = 0; j < truth.num_terms(); ++j)
    {
        true_by_mult[truth.terms()[j].multiplicity()].push_back(j);
    }
    for (const auto& [mult, est_idx] : est_by_mult)
    {
        auto it = true_by_mult.find(mult);
        if (it == true_by_mult.end() || it->second.size() != est_idx.size())
        {
            out.structural_mismatch = true;
            out.diagnostic =
                "multiplicity multiset mismatch at m = " + std::to_string(mult);
            return out;
        }
    }
    out.est_to_true.assign(static_cast<std::size_t>(estimated.num_terms()),
                           Index(0));
    for (const auto& [mult, est_idx] : est_by_mult)
    {
        const auto& true_idx = true_by_mult[mult];
        const Index group    = static_cast<Index>(est_idx.size());
        Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> cost(group, group);
        for (Index a = 0; a < group; ++a)
        {
            for (Index b = 0; b < group; ++b)
            {
                cost(a, b) = std::abs(
                    estimated.terms()[est_idx[a]].zero() -
                    truth.terms()[true_idx[b]].zero());
            }
        }
        const auto assign = detail::min_cost_assignment(cost);
        for (Index a = 0; a < group; ++a)
        {
            out.est_to_true[est_idx[a]] = true_idx[assign[a]];
        }
    }
    return out;
}

///
/// Max over matched terms of |1 - f / f*|, after shifting each estimated
/// exponent by the integer multiple of 2*pi*i that brings it closest to its
/// true partner (the principal-branch logarithm is reconciled here).
///
template <typename Real>
Real error_f(const MonomialExponentialModel<Real>& estimated,
             const MonomialExponentialModel<Real>& truth,
             const TermMatching& matching)
{
    if (matching.structural_mismatch)
    {
        return std::numeric_limits<Real>::infinity();
    }
    constexpr Real two_pi = Real(2) * Real(EIGEN_PI);
    Real worst            = Real(0);
    for (Index i = 0; i < estimated.num_terms(); ++i)
    {
        const Complex<Real> ft = truth.terms()[matching.est_to_true[i]].exponent;
        Complex<Real> fe       = estimated.terms()[i].exponent;
        const Real wind        = std::round((ft.imag() - fe.imag()) / two_pi);
        fe += Complex<Real>(Real(0), wind * two_pi);
        worst = std::max(worst, std::abs(Complex<Real>(1) - fe / ft));
    }
    return worst;
}

///
/// Max over matched coefficient pairs of |1 - c / c*|, degree by degree
/// within each term. Returns nothing when some true coefficient is zero
/// (the relative metric is undefined there).
///
template <typename Real>
std::optional<Real> error_c(const MonomialExponentialModel<Real>& estimated,
                            const MonomialExponentialModel<Real>& truth,
                            const TermMatching& matching)
{
    if (matching.structural_mismatch)
    {
        return std::numeric_limits<Real>::infinity();
    }
    Real worst = Real(0);
    for (Index i = 0; i < estimated.num_terms(); ++i)
    {
        const auto& te = estimated.terms()[i];
        const auto& tt = truth.terms()[matching.est_to_true[i]];
        for (Index s = 0; s < te.multiplicity(); ++s)
        {
            if (tt.coefficients(s) == Complex<Real>(0))
            {
                return std::nullopt;
            }
            worst = std::max(
                worst, std::abs(Complex<Real>(1) -
                                te.coefficients(s) / tt.coefficients(s)));
        }
    }
    return worst;
}

///
/// Max over the grid x_i = i b / 50, i = 1..50, of |1 - h(x_i) / h*(x_i)|.
/// Grid points where the true sum vanishes exactly are excluded and
/// reported through `excluded` when given.
///
template <typename Real>
Real error_h(const MonomialExponentialModel<Real>& estimated,
             const MonomialExponentialModel<Real>& truth, Real b,
             std::vector<Index>* excluded = nullptr)
{
    Real worst = Real(0);
    for (Index i = 1; i <= 50; ++i)
    {
        const Complex<Real> x(Real(i) * b / Real(50), Real(0));
        const Complex<Real> ht = evaluate(truth, x);
        if (ht == Complex<Real>(0))
        {
            if (excluded != nullptr)
            {
                excluded->push_back(i);
            }
            continue;
        }
        const Complex<Real> he = evaluate(estimated, x);
        if (he == ht)
        {
            continue;  // identical values contribute exactly zero
        }
        worst = std::max(worst, std::abs(Complex<Real>(1) - he / ht));
    }
    return worst;
}

///
/// The three error estimates against a ground truth, plus the matching they
/// were computed under. A structural mismatch yields infinite errors with a
/// diagnostic rather than an exception.
///
template <typename Real>
struct ErrorReport
{
    Real e_f = Real(0);
    Real e_c = Real(0);
    Real e_h = Real(0);
    bool e_c_applicable = true;
    TermMatching matching;
    Real b = Real(0);
    std::vector<Index> excluded_grid_points;
};

template <typename Real>
ErrorReport<Real>
compute_error_report(const MonomialExponentialModel<Real>& estimated,
                     const MonomialExponentialModel<Real>& truth, Real b)
{
    ErrorReport<Real> report;
    report.b        = b;
    report.matching = match_parameters(estimated, truth);
    if (report.matching.structural_mismatch)
    {
        const Real inf = std::numeric_limits<Real>::infinity();
        report.e_f     = inf;
        report.e_c     = inf;
        report.e_h     = inf;
        return report;
    }
    report.e_f = error_f(estimated, truth, report.matching);
    if (auto ec = error_c(estimated, truth, report.matching))
    {
        report.e_c = *ec;
    }
    else
    {
        report.e_c            = std::numeric_limits<Real>::quiet_NaN();
        report.e_c_applicable = false;
    }
    report.e_h = error_h(estimated, truth, b, &report.excluded_grid_points);
    return report;
}

} // namespace mepfit

#endif // MEPFIT_METRICS_HPP
