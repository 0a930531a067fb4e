#ifndef MEPFIT_ESTIMATOR_HPP
#define MEPFIT_ESTIMATOR_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include <mepfit/errors.hpp>
#include <mepfit/hankel.hpp>
#include <mepfit/kernels.hpp>
#include <mepfit/model.hpp>
#include <mepfit/types.hpp>

namespace mepfit
{

template <typename Real>
struct EstimatorOptions
{
    /// Relative single-linkage radius for grouping repeated eigenvalues.
    Real cluster_tol = Real(1e-3);
    /// Rank policy for the order estimate; when absent it is derived from
    /// the sample set's recorded noise amplitude.
    std::optional<RankPolicy<Real>> rank_policy;
    /// Solve the coefficient system on all 2N samples instead of the first
    /// M (exact square solve).
    bool use_all_samples = true;
    /// Minimum acceptable diagonal of the inverted Sigma factor, relative
    /// to its largest entry.
    Real sigma_floor = Real(1e-12);
    /// With noisy data, keep every column of the Mhat window whose singular
    /// value clears the sigma floor for the pencil stage and select the
    /// estimated-order strongest terms afterwards by fitted energy. The
    /// extra columns absorb the perturbation; the reported order is always
    /// the thresholded estimate.
    bool overmodel_under_noise = true;
};

template <typename Real>
struct EigenvalueCluster
{
    Complex<Real> center;        // arithmetic mean of the members
    Index multiplicity = 0;      // member count
    std::vector<Index> members;  // indices into the clustered eigenvalue list
};

template <typename Real>
struct RecoveredModel
{
    MonomialExponentialModel<Real> model;
    Index estimated_M = 0;
    ComplexVector<Real> raw_eigenvalues;  // every pencil eigenvalue computed
    std::vector<EigenvalueCluster<Real>> clusters;
    Real fit_residual = Real(0);          // coefficient solve residual norm
    RealVector<Real> order_spectrum;      // singular values of the H0 window
};

///
/// Generalized eigenvalues of the shifted Hankel pencil, computed from the
/// joint factorization of (H1, H0) as the spectrum of
/// diag(sigma_b)^{-1} V_NM^* U_NM diag(sigma_a). On exact data truncated to
/// the true order these are the Prony-polynomial zeros with multiplicity.
///
template <typename Real>
ComplexVector<Real> pencil_eigenvalues(const HankelPair<Real>& pair,
                                       Real sigma_floor = Real(1e-12))
{
    const Index m        = pair.cols();
    GsvdFactors<Real> f  = gsvd(pair.H1, pair.H0);
    const Real floor_abs = sigma_floor * f.sigma_b.maxCoeff();
    if (f.sigma_b.minCoeff() < floor_abs)
    {
        throw SingularPencilError(
            "pencil: Sigma diagonal below the invertibility floor");
    }
    ComplexMatrix<Real> reduced = f.V.leftCols(m).adjoint() * f.U.leftCols(m);
    reduced = f.sigma_b.cwiseInverse()
                  .template cast<Complex<Real>>()
                  .asDiagonal() *
              reduced *
              f.sigma_a.template cast<Complex<Real>>().asDiagonal();
    return eigenvalues(reduced);
}

///
/// Single-linkage clustering under the relative radius
/// |a - b| <= tol * max(1, |a|, |b|). Clusters are ordered by descending
/// multiplicity, then ascending principal argument of the center.
///
template <typename Real>
std::vector<EigenvalueCluster<Real>>
cluster_multiplicities(const ComplexVector<Real>& eigs, Real tol)
{
    const Index n = eigs.size();
    if (n == 0 || tol <= Real(0))
    {
        throw SizingError("cluster: nonempty input and positive tol required");
    }
    std::vector<Index> component(static_cast<std::size_t>(n), Index(-1));
    Index n_comp = 0;
    for (Index i = 0; i < n; ++i)
    {
        if (component[i] >= 0)
        {
            continue;
        }
        std::vector<Index> stack{i};
        component[i] = n_comp;
        while (!stack.empty())
        {
            const Index a = stack.back();
            stack.pop_back();
            for (Index b = 0; b < n; ++b)
            {
                if (component[b] >= 0)
                {
                    continue;
                }
                const Real radius = tol * std::max({Real(1), std::abs(eigs(a)),
                                                    std::abs(eigs(b))});
                if (std::abs(eigs(a) - eigs(b)) <= radius)
                {
                    component[b] = n_comp;
                    stack.push_back(b);
                }
            }
        }
        ++n_comp;
    }
    std::vector<EigenvalueCluster<Real>> clusters(
        static_cast<std::size_t>(n_comp));
    for (Index i = 0; i < n; ++i)
    {
        auto& cl = clusters[static_cast<std::size_t>(component[i])];
        cl.center += eigs(i);
        cl.members.push_back(i);
        ++cl.multiplicity;
    }
    for (auto& cl : clusters)
    {
        cl.center /= Real(cl.multiplicity);
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const EigenvalueCluster<Real>& a,
                 const EigenvalueCluster<Real>& b) {
                  if (a.multiplicity != b.multiplicity)
                  {
                      return a.multiplicity > b.multiplicity;
                  }
                  const Real aa = std::arg(a.center);
                  const Real ab = std::arg(b.center);
                  if (aa != ab)
                  {
                      return aa < ab;
                  }
                  if (std::abs(a.center) != std::abs(b.center))
                  {
                      return std::abs(a.center) < std::abs(b.center);
                  }
                  return a.members.front() < b.members.front();
              });
    return clusters;
}

/// Principal-branch exponents of the cluster centers.
template <typename Real>
std::vector<std::pair<Complex<Real>, Index>>
recover_exponents(const std::vector<EigenvalueCluster<Real>>& clusters)
{
    std::vector<std::pair<Complex<Real>, Index>> out;
    out.reserve(clusters.size());
    for (const auto& cl : clusters)
    {
        if (std::abs(cl.center) < Real(1e-12))
        {
            throw DegenerateZeroError(
                "recover_exponents: cluster center too close to zero");
        }
        out.emplace_back(std::log(cl.center), cl.multiplicity);
    }
    return out;
}

namespace detail
{

/// z^k for integer k >= 0 by square-and-multiply, with 0^0 == 1.
template <typename Real>
Complex<Real> pow_int(Complex<Real> z, long long k)
{
    Complex<Real> acc(1);
    while (k > 0)
    {
        if (k & 1)
        {
            acc *= z;
        }
        z *= z;
        k >>= 1;
    }
    return acc;
}

} // namespace detail

///
/// R x M matrix whose row for node k carries the basis values k^s z_j^k,
/// block per term, degrees ascending. For simple zeros this is the
/// Vandermonde matrix of the nodes.
///
template <typename Real>
ComplexMatrix<Real>
casorati_matrix(const std::vector<std::pair<Complex<Real>, Index>>& terms,
                const std::vector<Index>& points)
{
    Index m = 0;
    for (const auto& [z, mult] : terms)
    {
        if (mult < 1)
        {
            throw SizingError("casorati: multiplicity must be >= 1");
        }
        m += mult;
    }
    const Index rows = static_cast<Index>(points.size());
    if (rows < m)
    {
        throw SizingError("casorati: fewer nodes than columns");
    }
    ComplexMatrix<Real> k(rows, m);
    for (Index r = 0; r < rows; ++r)
    {
        const Index node = points[static_cast<std::size_t>(r)];
        Index col        = 0;
        for (const auto& [z, mult] : terms)
        {
            const Complex<Real> zk = detail::pow_int(z, node);
            Real monomial          = Real(1);  // node^0, also for node == 0
            for (Index s = 0; s < mult; ++s)
            {
                k(r, col++) = monomial * zk;
                monomial *= Real(node);
            }
        }
    }
    return k;
}

/// Least-squares coefficients of the difference-equation basis against the
/// sampled values, ordered term-major with ascending degree.
template <typename Real>
ComplexVector<Real> solve_coefficients(const ComplexMatrix<Real>& casorati,
                                       const ComplexVector<Real>& h)
{
    return lstsq(casorati, h);
}

///
/// Full pipeline: Hankel pair, order estimate, pencil eigenvalues through
/// the joint factorization, multiplicity clustering, exponent recovery, and
/// the Casorati least-squares coefficient solve.
///
template <typename Real>
RecoveredModel<Real> estimate(const SampleSet<Real>& samples, Index mhat,
                              const EstimatorOptions<Real>& opts = {})
{
    const Index count = samples.count();
    if (count % 2 != 0)
    {
        throw SizingError("estimate: an even sample count (2N) is required");
    }
    const Index n = count / 2;
    if (mhat < 1 || mhat > n)
    {
        throw SizingError("estimate: need N >= Mhat >= 1");
    }

    HankelPair<Real> pair = build_hankel_pair(samples, n, mhat);
    RealVector<Real> spectrum = singular_values(pair.H0);

    RankPolicy<Real> policy;
    if (opts.rank_policy)
    {
        policy = *opts.rank_policy;
    }
    else
    {
        policy.noise_delta = samples.noise_sigma;
    }
    const Index m_signal =
        estimate_order_from_spectrum(spectrum, n, mhat, policy);

    Index m_pencil = m_signal;
    const bool noisy = policy.noise_floor.has_value() ||
                       policy.noise_delta > Real(0);
    if (noisy && opts.overmodel_under_noise)
    {
        const RankPolicy<Real> exact_policy{};
        const Real thr =
            std::max(exact_policy.threshold(n, mhat, spectrum(0)),
                     opts.sigma_floor * spectrum(0));
        Index wide = 0;
        while (wide < spectrum.size() && spectrum(wide) > thr)
        {
            ++wide;
        }
        m_pencil = std::max(m_signal, wide);
    }

    ComplexVector<Real> raw =
        pencil_eigenvalues(truncate(pair, m_pencil), opts.sigma_floor);

    // With extra pencil columns, keep the m_signal eigenvalues carrying the
    // most fitted energy over the whole sample window.
    ComplexVector<Real> selected = raw;
    std::vector<Index> selected_idx(static_cast<std::size_t>(raw.size()));
    std::iota(selected_idx.begin(), selected_idx.end(), Index(0));
    if (raw.size() > m_signal)
    {
        std::vector<std::pair<Complex<Real>, Index>> singletons;
        singletons.reserve(static_cast<std::size_t>(raw.size()));
        for (Index j = 0; j < raw.size(); ++j)
        {
            singletons.emplace_back(raw(j), Index(1));
        }
        std::vector<Index> nodes(static_cast<std::size_t>(count));
        std::iota(nodes.begin(), nodes.end(), pair.k0);
        ComplexMatrix<Real> vand = casorati_matrix<Real>(singletons, nodes);
        ComplexVector<Real> amp  = lstsq(vand, samples.values);
        RealVector<Real> energy(raw.size());
        for (Index j = 0; j < raw.size(); ++j)
        {
            energy(j) = std::norm(amp(j)) * vand.col(j).squaredNorm();
        }
        std::sort(selected_idx.begin(), selected_idx.end(),
                  [&](Index a, Index b) {
                      if (energy(a) != energy(b))
                      {
                          return energy(a) > energy(b);
                      }
                      return a < b;
                  });
        selected_idx.resize(static_cast<std::size_t>(m_signal));
        std::sort(selected_idx.begin(), selected_idx.end());
        selected.resize(m_signal);
        for (Index j = 0; j < m_signal; ++j)
        {
            selected(j) = raw(selected_idx[static_cast<std::size_t>(j)]);
        }
    }

    std::vector<EigenvalueCluster<Real>> clusters =
        cluster_multiplicities(selected, opts.cluster_tol);
    for (auto& cl : clusters)
    {
        for (auto& idx : cl.members)
        {
            idx = selected_idx[static_cast<std::size_t>(idx)];
        }
    }

    auto exponents = recover_exponents(clusters);

    std::vector<std::pair<Complex<Real>, Index>> zero_terms;
    zero_terms.reserve(clusters.size());
    for (const auto& cl : clusters)
    {
        zero_terms.emplace_back(cl.center, cl.multiplicity);
    }
    const Index rows = opts.use_all_samples ? count : m_signal;
    std::vector<Index> nodes(static_cast<std::size_t>(rows));
    std::iota(nodes.begin(), nodes.end(), pair.k0);
    ComplexMatrix<Real> casorati = casorati_matrix<Real>(zero_terms, nodes);
    ComplexVector<Real> rhs      = samples.values.head(rows);
    ComplexVector<Real> coeffs   = solve_coefficients(casorati, rhs);

    RecoveredModel<Real> out;
    out.estimated_M     = m_signal;
    out.raw_eigenvalues = raw;
    out.clusters        = clusters;
    out.order_spectrum  = spectrum;
    out.fit_residual    = (casorati * coeffs - rhs).norm();

    std::vector<ModelTerm<Real>> terms;
    terms.reserve(exponents.size());
    Index offset = 0;
    for (const auto& [f, mult] : exponents)
    {
        ModelTerm<Real> t;
        t.exponent     = f;
        t.coefficients = coeffs.segment(offset, mult);
        offset += mult;
        terms.push_back(std::move(t));
    }
    out.model = MonomialExponentialModel<Real>(std::move(terms));
    return out;
}

} // namespace mepfit

#endif // MEPFIT_ESTIMATOR_HPP
