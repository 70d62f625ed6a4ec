#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "semdirb/cluster.hpp"
#include "semdirb/error.hpp"
#include "semdirb/rng.hpp"

namespace semdirb {
namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void check_embeddings(const EmbeddingSet& set) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set.vectors[i].size() != set.dim)
            throw DataError("embedding " + std::to_string(i) + " has dimension " +
                            std::to_string(set.vectors[i].size()) + ", expected " + std::to_string(set.dim));
        for (double x : set.vectors[i])
            if (!std::isfinite(x)) throw DataError("embedding " + std::to_string(i) + " has a non-finite value");
    }
}

std::vector<std::vector<double>> kmeanspp_init(const EmbeddingSet& set, std::size_t k, Rng& rng) {
    const auto n = set.size();
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);
    centroids.push_back(set.vectors[rng.below(n)]);
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(set.vectors[i], centroids[0]);

    while (centroids.size() < k) {
        double total = 0.0;
        for (double d : d2) total += d;
        std::size_t pick = n;
        if (total > 0.0) {
            const double r = rng.unit() * total;
            double cum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (d2[i] <= 0.0) continue;
                cum += d2[i];
                pick = i;
                if (cum > r) break;
            }
        } else {
            // Every point already coincides with a centroid.
            pick = static_cast<std::size_t>(rng.below(n));
        }
        centroids.push_back(set.vectors[pick]);
        for (std::size_t i = 0; i < n; ++i)
            d2[i] = std::min(d2[i], squared_distance(set.vectors[i], centroids.back()));
    }
    return centroids;
}

// Moves the farthest point of a multi-member cluster into each empty cluster.
void reseed_empty(const EmbeddingSet& set, std::vector<std::vector<double>>& centroids,
                  std::vector<std::size_t>& labels) {
    const auto k = centroids.size();
    std::vector<std::size_t> counts(k, 0);
    for (auto l : labels) ++counts[l];
    for (std::size_t j = 0; j < k; ++j) {
        if (counts[j] != 0) continue;
        std::size_t far = set.size();
        double far_d = -1.0;
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (counts[labels[i]] < 2) continue;
            const double d = squared_distance(set.vectors[i], centroids[labels[i]]);
            if (d > far_d) {
                far_d = d;
                far = i;
            }
        }
        if (far == set.size()) return;  // k > distinct points; nothing to move
        --counts[labels[far]];
        labels[far] = j;
        counts[j] = 1;
        centroids[j] = set.vectors[far];
    }
}

std::vector<std::vector<double>> cluster_means(const EmbeddingSet& set, const std::vector<std::size_t>& labels,
                                               const std::vector<std::vector<double>>& previous) {
    const auto k = previous.size();
    std::vector<std::vector<double>> sums(k, std::vector<double>(set.dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < set.size(); ++i) {
        auto& s = sums[labels[i]];
        const auto& x = set.vectors[i];
        for (std::size_t d = 0; d < set.dim; ++d) s[d] += x[d];
        ++counts[labels[i]];
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (counts[j] == 0) {
            sums[j] = previous[j];
            continue;
        }
        for (auto& v : sums[j]) v /= static_cast<double>(counts[j]);
    }
    return sums;
}

}  // namespace

std::vector<std::vector<EntryId>> ClusterModel::members() const {
    std::vector<std::vector<EntryId>> out(k);
    for (EntryId id = 0; id < assignment.size(); ++id) out[assignment[id]].push_back(id);
    return out;
}

std::vector<std::size_t> assign_nearest(const EmbeddingSet& embeddings,
                                        const std::vector<std::vector<double>>& centroids) {
    std::vector<std::size_t> labels(embeddings.size(), 0);
    for (std::size_t i = 0; i < embeddings.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < centroids.size(); ++j) {
            const double d = squared_distance(embeddings.vectors[i], centroids[j]);
            if (d < best) {
                best = d;
                labels[i] = j;
            }
        }
    }
    return labels;
}

double compute_inertia(const EmbeddingSet& embeddings, const std::vector<std::vector<double>>& centroids,
                       const std::vector<std::size_t>& assignment) {
    double total = 0.0;
    for (std::size_t i = 0; i < embeddings.size(); ++i)
        total += squared_distance(embeddings.vectors[i], centroids[assignment[i]]);
    return total;
}

ClusterModel kmeans_single(const EmbeddingSet& embeddings, std::size_t k, std::uint64_t seed,
                           std::size_t max_iters, double tol) {
    Rng rng(seed);
    auto centroids = kmeanspp_init(embeddings, k, rng);
    auto labels = assign_nearest(embeddings, centroids);
    for (std::size_t it = 0; it < max_iters; ++it) {
        reseed_empty(embeddings, centroids, labels);
        auto next = cluster_means(embeddings, labels, centroids);
        double shift = 0.0;
        for (std::size_t j = 0; j < k; ++j) shift = std::max(shift, std::sqrt(squared_distance(next[j], centroids[j])));
        centroids = std::move(next);
        labels = assign_nearest(embeddings, centroids);
        if (shift < tol) break;
    }
    ClusterModel model;
    model.k = k;
    model.dim = embeddings.dim;
    model.inertia = compute_inertia(embeddings, centroids, labels);
    model.centroids = std::move(centroids);
    model.assignment = std::move(labels);
    model.seed = seed;
    return model;
}

ClusterModel kmeans(const EmbeddingSet& embeddings, const KMeansOptions& options) {
    const auto n = embeddings.size();
    if (options.k < 1) throw DataError("k must be at least 1");
    if (options.k > n)
        throw DataError("k=" + std::to_string(options.k) + " exceeds the number of entries (" + std::to_string(n) + ")");
    if (options.restarts < 1 || options.max_iters < 1 || !(options.tol > 0.0))
        throw DataError("restarts, max_iters and tol must be positive");
    check_embeddings(embeddings);

    std::vector<ClusterModel> runs(options.restarts);
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.restarts, std::thread::hardware_concurrency()));
    for (std::size_t base = 0; base < options.restarts; base += workers) {
        std::vector<std::future<ClusterModel>> batch;
        for (std::size_t r = base; r < std::min(options.restarts, base + workers); ++r)
            batch.push_back(std::async(std::launch::async, [&, r] {
                return kmeans_single(embeddings, options.k, derive_seed(options.seed, r), options.max_iters, options.tol);
            }));
        for (std::size_t i = 0; i < batch.size(); ++i) runs[base + i] = batch[i].get();
    }

    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r)
        if (runs[r].inertia < runs[best].inertia) best = r;
    ClusterModel model = std::move(runs[best]);
    model.seed = options.seed;
    return model;
}

}  // namespace semdirb
