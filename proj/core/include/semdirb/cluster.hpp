#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "semdirb/embed.hpp"
#include "semdirb/wordlist.hpp"

namespace semdirb {

inline constexpr std::size_t kDefaultClusterCount = 20;

struct ClusterModel {
    std::size_t k = 0;
    std::size_t dim = 0;
    std::vector<std::vector<double>> centroids;
    std::vector<std::size_t> assignment;  // indexed by entry id
    double inertia = 0.0;
    std::uint64_t seed = 0;

    std::size_t size() const { return assignment.size(); }
    /// Entry ids of each cluster, ascending.
    std::vector<std::vector<EntryId>> members() const;
};

struct KMeansOptions {
    std::size_t k = kDefaultClusterCount;
    std::uint64_t seed = 0;
    std::size_t restarts = 10;
    std::size_t max_iters = 300;
    double tol = 1e-4;  // largest centroid move that counts as converged
};

/// Lloyd iterations from k-means++ seeding, best of `restarts` by inertia
/// (ties go to the earlier restart). Restart r draws from derive_seed(seed, r).
/// Euclidean distance; assignment ties go to the lowest centroid index.
/// A cluster left empty is re-seeded at the point farthest from its centroid.
/// Throws DataError when k < 1, k > n, or options are not positive.
ClusterModel kmeans(const EmbeddingSet& embeddings, const KMeansOptions& options);

/// One Lloyd run from a single seed; kmeans() is the best of several.
ClusterModel kmeans_single(const EmbeddingSet& embeddings, std::size_t k, std::uint64_t seed,
                           std::size_t max_iters, double tol);

/// Nearest centroid per point (ties -> lowest index).
std::vector<std::size_t> assign_nearest(const EmbeddingSet& embeddings,
                                        const std::vector<std::vector<double>>& centroids);

/// Sum of squared distances of every point to its assigned centroid.
double compute_inertia(const EmbeddingSet& embeddings, const std::vector<std::vector<double>>& centroids,
                       const std::vector<std::size_t>& assignment);

struct ElbowPoint {
    std::size_t k = 0;
    double inertia = 0.0;
};

struct ElbowCurve {
    std::vector<ElbowPoint> points;
    std::size_t knee_k = 0;    // max chord distance
    std::size_t chosen_k = 0;  // knee_k + 1 when that stays within range
    std::vector<std::size_t> non_monotonic_k;  // k whose inertia exceeds the previous k's
};

/// Knee of an inertia curve. Both axes are min-max normalized; the knee is
/// the point farthest (perpendicular) from the chord joining the first and
/// last points, ties to the smallest k. chosen_k steps one to the right of
/// the knee when that k is still in the curve. Needs at least two points with
/// strictly increasing k.
ElbowCurve choose_elbow(std::vector<ElbowPoint> points);

/// Runs kmeans for every k in [k_min, k_max] and applies choose_elbow.
/// Requires 1 <= k_min < k_max <= n.
ElbowCurve elbow_select(const EmbeddingSet& embeddings, std::size_t k_min, std::size_t k_max,
                        const KMeansOptions& options);

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct PcaProjection {
    std::vector<Point2> coords;                 // indexed by entry id
    std::vector<std::vector<double>> components;  // two unit loading vectors
    double variance[2] = {0.0, 0.0};           // variance along each component
    double total_variance = 0.0;

    double explained_ratio() const {
        return total_variance > 0.0 ? (variance[0] + variance[1]) / total_variance : 0.0;
    }
};

/// Projects mean-centred data onto its top two principal directions, found by
/// power iteration on the covariance (applied as X^T X v, never formed) with
/// deflation. Each component's largest-magnitude loading is made positive.
/// Throws DataError when n < 2 or every point is identical.
PcaProjection pca_project(const EmbeddingSet& embeddings);

/// Cluster config file:
///   #k=<K>
///   #dim=<D>
///   #seed=<S>
///   #inertia=<I>           (optional on load)
///   C <idx> <c0> ... <cD-1>
///   A <entry_id> <cluster_idx>
/// Centroid values are written with round-trip precision.
void save_cluster_config(const ClusterModel& model, const Wordlist& wordlist, const std::filesystem::path& path);
std::string format_cluster_config(const ClusterModel& model, const Wordlist& wordlist);
ClusterModel load_cluster_config(const std::filesystem::path& path, const Wordlist& wordlist);

/// `entry_id<TAB>x<TAB>y<TAB>cluster_idx`; the cluster column is empty when
/// `model` is null.
std::string format_plot_points(const PcaProjection& projection, const ClusterModel* model);

}  // namespace semdirb
