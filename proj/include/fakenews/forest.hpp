#pragma once

// Random forest of Gini-split decision trees over sparse features.
//
// Split search at a node: among a per-split random subset of features
// (examined in ascending index order), candidate thresholds are midpoints
// between consecutive distinct observed values, the implicit zeros of sparse
// rows included. When a feature shows more than max_thresholds midpoints,
// an evenly spaced (quantile) subset of them is evaluated instead. A split
// is accepted only if it strictly lowers the sample-weighted Gini impurity;
// equal-impurity candidates resolve to the lowest feature index, then the
// lowest threshold. Samples with value <= threshold go left.
//
// Determinism: tree t draws its bootstrap rows and every per-split feature
// subset (in depth-first build order) from its own xoshiro256** stream
// seeded with seed + t, so parallel and sequential training build identical
// forests.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <thread>
#include <vector>

#include "fakenews/error.hpp"
#include "fakenews/prng.hpp"
#include "fakenews/sparse.hpp"

namespace fakenews {

struct TreeNode {
    std::size_t feature = 0;
    double threshold = 0.0;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;
    std::array<std::size_t, 2> class_counts{0, 0};  // leaf payload

    bool is_leaf() const { return left == nullptr; }

    // Leaf majority vote; tie -> class 1.
    int leaf_vote() const { return class_counts[1] >= class_counts[0] ? 1 : 0; }
};

struct ForestHyper {
    std::size_t n_trees = 100;
    std::size_t max_depth = 40;
    std::size_t n_features_per_split = 0;  // 0 -> ceil(sqrt(dim)); >= dim -> all (no sampling)
    bool bootstrap = true;                 // test hook: off trains every tree on all rows
    std::size_t max_thresholds = 32;
    std::size_t n_threads = 0;             // 0 -> hardware concurrency
};

struct ForestModel {
    std::vector<std::unique_ptr<TreeNode>> trees;
    std::size_t dim = 0;
    ForestHyper hyper;
    std::uint64_t seed = 0;
};

namespace forest_detail {

struct ValueLabel {
    double value;
    int label;
};

// Reusable per-tree scratch; the stamp arrays avoid clearing dim-sized
// buffers between nodes.
struct Workspace {
    std::vector<std::uint32_t> mark;
    std::vector<std::size_t> slot;
    std::uint32_t stamp = 0;
    std::vector<std::vector<ValueLabel>> buckets;
    std::vector<std::size_t> candidates;

    explicit Workspace(std::size_t dim) : mark(dim, 0), slot(dim, 0) {}
};

inline double weighted_child_impurity(std::size_t l0, std::size_t l1, std::size_t r0,
                                      std::size_t r1) {
    const double nl = static_cast<double>(l0 + l1);
    const double nr = static_cast<double>(r0 + r1);
    double impurity = 0.0;
    if (nl > 0) {
        const double p0 = static_cast<double>(l0) / nl;
        const double p1 = static_cast<double>(l1) / nl;
        impurity += nl * (1.0 - p0 * p0 - p1 * p1);
    }
    if (nr > 0) {
        const double p0 = static_cast<double>(r0) / nr;
        const double p1 = static_cast<double>(r1) / nr;
        impurity += nr * (1.0 - p0 * p0 - p1 * p1);
    }
    return impurity / (nl + nr);
}

inline double gini(std::size_t c0, std::size_t c1) {
    const double n = static_cast<double>(c0 + c1);
    const double p0 = static_cast<double>(c0) / n;
    const double p1 = static_cast<double>(c1) / n;
    return 1.0 - p0 * p0 - p1 * p1;
}

struct BestSplit {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double impurity = 0.0;
};

// Evaluates one feature's candidate thresholds given the nonzero
// (value,label) pairs observed in the node; zeros are the remainder.
inline void eval_feature(std::size_t feature, std::vector<ValueLabel>& nonzero,
                         std::size_t n0, std::size_t n1, std::size_t max_thresholds,
                         BestSplit& best) {
    std::size_t nz0 = 0, nz1 = 0;
    for (const ValueLabel& vl : nonzero) (vl.label == 1 ? nz1 : nz0) += 1;
    const std::size_t zero0 = n0 - nz0;
    const std::size_t zero1 = n1 - nz1;

    std::sort(nonzero.begin(), nonzero.end(),
              [](const ValueLabel& a, const ValueLabel& b) { return a.value < b.value; });

    // Distinct value groups in ascending order, zero block included.
    struct Group {
        double value;
        std::size_t c0, c1;
    };
    std::vector<Group> groups;
    groups.reserve(nonzero.size() + 1);
    bool zero_placed = zero0 + zero1 == 0;
    auto place_zero = [&] {
        groups.push_back({0.0, zero0, zero1});
        zero_placed = true;
    };
    for (const ValueLabel& vl : nonzero) {
        if (!zero_placed && vl.value > 0.0) place_zero();
        if (!groups.empty() && groups.back().value == vl.value) {
            (vl.label == 1 ? groups.back().c1 : groups.back().c0) += 1;
        } else {
            groups.push_back({vl.value, static_cast<std::size_t>(vl.label == 0),
                              static_cast<std::size_t>(vl.label == 1)});
        }
    }
    if (!zero_placed) place_zero();
    if (groups.size() < 2) return;

    const std::size_t n_mid = groups.size() - 1;
    // Prefix counts after each group; midpoint i separates groups [0..i] from the rest.
    std::vector<std::array<std::size_t, 2>> prefix(n_mid);
    std::size_t acc0 = 0, acc1 = 0;
    for (std::size_t i = 0; i < n_mid; ++i) {
        acc0 += groups[i].c0;
        acc1 += groups[i].c1;
        prefix[i] = {acc0, acc1};
    }

    auto try_midpoint = [&](std::size_t i) {
        const double threshold = (groups[i].value + groups[i + 1].value) / 2.0;
        const std::size_t l0 = prefix[i][0], l1 = prefix[i][1];
        const double impurity = weighted_child_impurity(l0, l1, n0 - l0, n1 - l1);
        if (!best.found || impurity < best.impurity) {
            best.found = true;
            best.feature = feature;
            best.threshold = threshold;
            best.impurity = impurity;
        }
    };

    if (n_mid <= max_thresholds) {
        for (std::size_t i = 0; i < n_mid; ++i) try_midpoint(i);
    } else {
        std::size_t previous = n_mid;  // sentinel
        for (std::size_t j = 0; j < max_thresholds; ++j) {
            std::size_t pick = ((j + 1) * n_mid) / (max_thresholds + 1);
            if (pick >= n_mid) pick = n_mid - 1;
            if (pick == previous) continue;
            previous = pick;
            try_midpoint(pick);
        }
    }
}

inline std::unique_ptr<TreeNode> make_leaf(std::size_t c0, std::size_t c1) {
    auto node = std::make_unique<TreeNode>();
    node->class_counts = {c0, c1};
    return node;
}

inline std::unique_ptr<TreeNode> build_node(const std::vector<SparseVector>& X,
                                            const std::vector<int>& y,
                                            const std::vector<std::size_t>& samples,
                                            std::size_t dim, std::size_t k_features,
                                            std::size_t max_thresholds,
                                            std::size_t depth, std::size_t depth_limit,
                                            Rng& rng, Workspace& ws) {
    if (samples.empty()) raise(ErrorKind::EmptyNode, "tree node received zero samples");

    std::size_t n0 = 0, n1 = 0;
    for (std::size_t s : samples) (y[s] == 1 ? n1 : n0) += 1;
    if (n0 == 0 || n1 == 0 || depth >= depth_limit) return make_leaf(n0, n1);

    // Candidate feature subset for this split, ascending. Drawing happens in
    // depth-first build order, which is part of the determinism contract.
    ws.candidates.clear();
    if (k_features >= dim) {
        for (std::size_t f = 0; f < dim; ++f) ws.candidates.push_back(f);
    } else {
        ++ws.stamp;
        while (ws.candidates.size() < k_features) {
            const auto f = static_cast<std::size_t>(rng.next_below(dim));
            if (ws.mark[f] == ws.stamp) continue;
            ws.mark[f] = ws.stamp;
            ws.candidates.push_back(f);
        }
        std::sort(ws.candidates.begin(), ws.candidates.end());
    }

    if (ws.buckets.size() < ws.candidates.size()) ws.buckets.resize(ws.candidates.size());
    for (std::size_t i = 0; i < ws.candidates.size(); ++i) ws.buckets[i].clear();
    ++ws.stamp;
    for (std::size_t i = 0; i < ws.candidates.size(); ++i) {
        ws.mark[ws.candidates[i]] = ws.stamp;
        ws.slot[ws.candidates[i]] = i;
    }
    for (std::size_t s : samples)
        for (const SparseEntry& e : X[s].entries)
            if (ws.mark[e.index] == ws.stamp)
                ws.buckets[ws.slot[e.index]].push_back({e.value, y[s]});

    BestSplit best;
    for (std::size_t i = 0; i < ws.candidates.size(); ++i)
        eval_feature(ws.candidates[i], ws.buckets[i], n0, n1, max_thresholds, best);

    const double parent = gini(n0, n1);
    if (!best.found || !(best.impurity < parent - 1e-12)) return make_leaf(n0, n1);

    std::vector<std::size_t> left_samples, right_samples;
    for (std::size_t s : samples)
        (X[s].at(best.feature) <= best.threshold ? left_samples : right_samples)
            .push_back(s);
    // Guard against degenerate partitions from floating-point threshold edge
    // cases; should not happen with midpoint thresholds.
    if (left_samples.empty() || right_samples.empty()) return make_leaf(n0, n1);

    auto node = std::make_unique<TreeNode>();
    node->feature = best.feature;
    node->threshold = best.threshold;
    node->class_counts = {n0, n1};
    node->left = build_node(X, y, left_samples, dim, k_features, max_thresholds,
                            depth + 1, depth_limit, rng, ws);
    node->right = build_node(X, y, right_samples, dim, k_features, max_thresholds,
                             depth + 1, depth_limit, rng, ws);
    return node;
}

}  // namespace forest_detail

// Trains a single tree on the given rows (all rows when `samples` is empty is
// not allowed; pass the full index range explicitly). Exposed so the split
// search can be checked against a brute-force oracle with subsampling off.
inline std::unique_ptr<TreeNode> train_tree(const std::vector<SparseVector>& X,
                                            const std::vector<int>& y,
                                            const std::vector<std::size_t>& samples,
                                            const ForestHyper& hyper, std::size_t dim,
                                            Rng& rng) {
    forest_detail::Workspace ws(dim);
    const std::size_t k = hyper.n_features_per_split
                              ? hyper.n_features_per_split
                              : static_cast<std::size_t>(
                                    std::ceil(std::sqrt(static_cast<double>(dim))));
    return forest_detail::build_node(X, y, samples, dim, k, hyper.max_thresholds, 0,
                                     hyper.max_depth, rng, ws);
}

inline ForestModel train_forest(const std::vector<SparseVector>& X,
                                const std::vector<int>& y, const ForestHyper& hyper,
                                std::uint64_t seed) {
    if (X.size() != y.size())
        raise(ErrorKind::LengthMismatch, "feature and label counts differ");
    if (X.size() < 2) raise(ErrorKind::EmptyCorpus, "need at least 2 training examples");
    for (const SparseVector& x : X) check_dim(x, X.front().dim);
    bool saw[2] = {false, false};
    for (int label : y) saw[label == 1] = true;
    if (!saw[0] || !saw[1])
        raise(ErrorKind::SingleClassTraining,
              "training data contains a single class; both labels are required");
    if (hyper.n_trees < 1) raise(ErrorKind::UsageError, "n_trees must be >= 1");
    if (hyper.max_depth < 1) raise(ErrorKind::UsageError, "max_depth must be >= 1");

    ForestModel model;
    model.dim = X.front().dim;
    model.hyper = hyper;
    model.seed = seed;
    model.trees.resize(hyper.n_trees);

    const std::size_t n = X.size();
    auto build_one = [&](std::size_t t) {
        Rng rng(seed + t);
        std::vector<std::size_t> samples(n);
        if (hyper.bootstrap) {
            for (std::size_t i = 0; i < n; ++i)
                samples[i] = static_cast<std::size_t>(rng.next_below(n));
        } else {
            for (std::size_t i = 0; i < n; ++i) samples[i] = i;
        }
        model.trees[t] = train_tree(X, y, samples, hyper, model.dim, rng);
    };

    std::size_t n_threads = hyper.n_threads ? hyper.n_threads
                                            : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min(n_threads, hyper.n_trees);
    if (n_threads <= 1) {
        for (std::size_t t = 0; t < hyper.n_trees; ++t) build_one(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < n_threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < hyper.n_trees;
                     t = next.fetch_add(1))
                    build_one(t);
            });
        for (auto& th : pool) th.join();
    }
    return model;
}

inline int predict_tree(const TreeNode& root, const SparseVector& x) {
    const TreeNode* node = &root;
    while (!node->is_leaf())
        node = x.at(node->feature) <= node->threshold ? node->left.get()
                                                      : node->right.get();
    return node->leaf_vote();
}

struct ForestVote {
    int label = 1;
    double vote_fraction = 1.0;  // votes for the returned label / n_trees
};

inline ForestVote predict_forest(const ForestModel& model, const SparseVector& x) {
    check_dim(x, model.dim);
    std::size_t ones = 0;
    for (const auto& tree : model.trees) ones += predict_tree(*tree, x) == 1;
    const std::size_t n = model.trees.size();
    ForestVote vote;
    vote.label = 2 * ones >= n ? 1 : 0;  // forest tie -> class 1
    const std::size_t winning = vote.label == 1 ? ones : n - ones;
    vote.vote_fraction = static_cast<double>(winning) / static_cast<double>(n);
    return vote;
}

}  // namespace fakenews
