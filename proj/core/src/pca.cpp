#include <algorithm>
#include <cmath>

#include "semdirb/cluster.hpp"
#include "semdirb/error.hpp"
#include "semdirb/rng.hpp"

namespace semdirb {
namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void axpy(double a, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

bool normalize(Vec& v) {
    const double n = std::sqrt(dot(v, v));
    if (!(n > 0.0)) return false;
    for (auto& x : v) x /= n;
    return true;
}

// Covariance product C v = X^T (X v) / n on the centred rows.
Vec cov_apply(const std::vector<Vec>& centred, const Vec& v) {
    Vec out(v.size(), 0.0);
    for (const auto& row : centred) axpy(dot(row, v), row, out);
    for (auto& x : out) x /= static_cast<double>(centred.size());
    return out;
}

// Some unit vector orthogonal to `u`.
Vec orthogonal_to(const Vec& u) {
    std::size_t j = 0;
    for (std::size_t i = 1; i < u.size(); ++i)
        if (std::fabs(u[i]) < std::fabs(u[j])) j = i;
    Vec e(u.size(), 0.0);
    e[j] = 1.0;
    axpy(-dot(e, u), u, e);
    normalize(e);
    return e;
}

void orthonormalize(Vec& a, Vec& b) {
    if (!normalize(a)) {
        a.assign(a.size(), 0.0);
        a[0] = 1.0;
    }
    axpy(-dot(a, b), a, b);
    if (!normalize(b)) b = orthogonal_to(a);
}

void fix_sign(Vec& v) {
    std::size_t j = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::fabs(v[i]) > std::fabs(v[j])) j = i;
    if (v[j] < 0.0)
        for (auto& x : v) x = -x;
}

}  // namespace

PcaProjection pca_project(const EmbeddingSet& embeddings) {
    const auto n = embeddings.size();
    const auto dim = embeddings.dim;
    if (n < 2) throw DataError("PCA needs at least two points");
    if (dim < 1) throw DataError("PCA needs a positive dimension");

    Vec mean(dim, 0.0);
    for (const auto& v : embeddings.vectors) {
        if (v.size() != dim) throw DataError("PCA input has inconsistent dimensions");
        axpy(1.0, v, mean);
    }
    for (auto& m : mean) m /= static_cast<double>(n);
    std::vector<Vec> centred;
    centred.reserve(n);
    double total = 0.0;
    for (const auto& v : embeddings.vectors) {
        Vec c(dim);
        for (std::size_t d = 0; d < dim; ++d) c[d] = v[d] - mean[d];
        total += dot(c, c);
        centred.push_back(std::move(c));
    }
    total /= static_cast<double>(n);
    if (!(total > 0.0)) throw DataError("PCA input has zero variance (all points identical)");

    PcaProjection out;
    out.total_variance = total;

    if (dim == 1) {
        out.components = {Vec{1.0}, Vec{0.0}};
        out.variance[0] = total;
        out.coords.reserve(n);
        for (const auto& c : centred) out.coords.push_back({c[0], 0.0});
        return out;
    }

    // Orthogonal (block power) iteration on a 2-D subspace with a
    // Rayleigh-Ritz rotation each step; the rotation diagonalizes V^T C V, so
    // the two projected coordinates are uncorrelated at every step.
    Rng rng(0x9ca5eedULL);
    Vec v1(dim), v2(dim);
    for (auto& x : v1) x = rng.unit() - 0.5;
    for (auto& x : v2) x = rng.unit() - 0.5;
    orthonormalize(v1, v2);

    double lambda1 = 0.0, lambda2 = 0.0;
    constexpr std::size_t kMaxIters = 2000;
    for (std::size_t it = 0; it < kMaxIters; ++it) {
        Vec w1 = cov_apply(centred, v1);
        Vec w2 = cov_apply(centred, v2);
        orthonormalize(w1, w2);

        const Vec c1 = cov_apply(centred, w1);
        const Vec c2 = cov_apply(centred, w2);
        const double a = dot(w1, c1), b = dot(w1, c2), c = dot(w2, c2);
        const double theta = 0.5 * std::atan2(2.0 * b, a - c);
        const double cs = std::cos(theta), sn = std::sin(theta);
        Vec u1(dim), u2(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            u1[d] = cs * w1[d] + sn * w2[d];
            u2[d] = -sn * w1[d] + cs * w2[d];
        }
        lambda1 = a * cs * cs + 2.0 * b * sn * cs + c * sn * sn;
        lambda2 = a * sn * sn - 2.0 * b * sn * cs + c * cs * cs;
        fix_sign(u1);
        fix_sign(u2);

        double change = 0.0;
        for (std::size_t d = 0; d < dim; ++d)
            change = std::max({change, std::fabs(u1[d] - v1[d]), std::fabs(u2[d] - v2[d])});
        v1 = std::move(u1);
        v2 = std::move(u2);
        if (change < 1e-12) break;
    }

    out.variance[0] = std::max(lambda1, 0.0);
    out.variance[1] = std::max(lambda2, 0.0);
    out.coords.reserve(n);
    for (const auto& c : centred) out.coords.push_back({dot(c, v1), dot(c, v2)});
    out.components = {std::move(v1), std::move(v2)};
    return out;
}

}  // namespace semdirb
