#include "uopt/linearize.hpp"

#include "uopt/errors.hpp"

namespace uopt {

std::vector<std::uint32_t> hwang_lin_merge(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                           std::span<const WeightHandle> dist, WeightArena& arena) {
    std::vector<std::uint32_t> out;
    hwang_lin_merge_into(out, a, b, dist, arena);
    return out;
}

std::vector<std::uint32_t> tree_dp_linearize(const SpanningTree& tree, std::span<const WeightHandle> dist,
                                             WeightArena& arena) {
    if (!tree.valid()) throw ContractViolation("tree_dp_linearize needs a valid tree");
    if (dist.size() != tree.size()) throw ContractViolation("one distance per tree vertex expected");
    const auto order = tree.preorder();
    const auto children = tree.children();
    std::vector<std::deque<std::uint32_t>> list(tree.size());
    // Reverse preorder visits children before parents.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::uint32_t r = *it;
        std::deque<std::uint32_t> acc;
        for (std::uint32_t c : children[r]) {
            if (acc.empty()) {
                acc = std::move(list[c]);
            } else {
                std::deque<std::uint32_t> merged;
                hwang_lin_merge_into(merged, acc, list[c], dist, arena);
                acc = std::move(merged);
            }
            list[c] = {};
        }
        acc.push_front(r);
        list[r] = std::move(acc);
    }
    auto& root = list[tree.root];
    return {root.begin(), root.end()};
}

}  // namespace uopt
