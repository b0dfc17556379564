#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ratekit/rng.hpp"

namespace ratekit {

inline const char* kLabelGeneral = "General";
inline const char* kLabelNotGeneral = "NotGeneral";

struct DatasetItem {
    std::string id;
    std::string label;
    std::vector<std::string> tokens;
};

/// Items plus per-class counts kept in sync. Class labels are plain
/// strings so the same type carries both the five-rating task and the
/// binarized General / NotGeneral task.
class LabeledDataset {
public:
    LabeledDataset() = default;

    void add(DatasetItem item) {
        ++class_counts_[item.label];
        items_.push_back(std::move(item));
    }

    const std::vector<DatasetItem>& items() const { return items_; }
    const std::map<std::string, size_t>& class_counts() const { return class_counts_; }
    size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    /// Class names in sorted order; the canonical iteration order for all
    /// seeded operations.
    std::vector<std::string> classes() const {
        std::vector<std::string> out;
        out.reserve(class_counts_.size());
        for (const auto& [label, count] : class_counts_) out.push_back(label);
        return out;
    }

private:
    std::vector<DatasetItem> items_;
    std::map<std::string, size_t> class_counts_;
};

struct SplitSpec {
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
};

namespace detail {

// Items of one class, sorted by id. Sorting first makes every seeded
// draw independent of input order.
inline std::vector<const DatasetItem*> class_members_sorted(const LabeledDataset& data,
                                                            const std::string& label) {
    std::vector<const DatasetItem*> members;
    for (const DatasetItem& item : data.items())
        if (item.label == label) members.push_back(&item);
    std::sort(members.begin(), members.end(),
              [](const DatasetItem* a, const DatasetItem* b) { return a->id < b->id; });
    return members;
}

}  // namespace detail

/// Balances classes to floor(min_class_count / 2) items each, chosen
/// uniformly without replacement. Deterministic for a fixed seed.
inline LabeledDataset balance_classes(const LabeledDataset& data, std::uint64_t seed) {
    if (data.empty()) throw std::runtime_error("balance_classes: empty dataset");
    size_t min_count = SIZE_MAX;
    for (const auto& [label, count] : data.class_counts()) {
        if (count < 2)
            throw std::runtime_error("balance_classes: class '" + label +
                                     "' has fewer than 2 items");
        min_count = std::min(min_count, count);
    }
    const size_t take = min_count / 2;

    Rng rng(seed);
    LabeledDataset out;
    for (const std::string& label : data.classes()) {
        std::vector<const DatasetItem*> members = detail::class_members_sorted(data, label);
        // Partial Fisher-Yates: the first `take` slots are a uniform
        // without-replacement sample.
        for (size_t i = 0; i < take; ++i) {
            size_t j = i + static_cast<size_t>(rng.next_below(members.size() - i));
            std::swap(members[i], members[j]);
        }
        members.resize(take);
        std::sort(members.begin(), members.end(),
                  [](const DatasetItem* a, const DatasetItem* b) { return a->id < b->id; });
        for (const DatasetItem* m : members) out.add(*m);
    }
    return out;
}

/// Collapses the five ratings into the binary task: GeneralAudiences
/// becomes General, everything else NotGeneral. Item count is preserved.
inline LabeledDataset binarize(const LabeledDataset& data) {
    LabeledDataset out;
    for (const DatasetItem& item : data.items()) {
        DatasetItem copy = item;
        if (item.label == "GeneralAudiences") {
            copy.label = kLabelGeneral;
        } else if (item.label == "TeenAndUp" || item.label == "Mature" ||
                   item.label == "Explicit" || item.label == "NotRated") {
            copy.label = kLabelNotGeneral;
        } else {
            throw std::runtime_error("binarize: unexpected label '" + item.label + "'");
        }
        out.add(std::move(copy));
    }
    return out;
}

/// Stratified train/test split: per class, floor(count * train_fraction)
/// items go to train after a seeded shuffle, the rest to test. The splits
/// are disjoint and exhaustive.
inline std::pair<LabeledDataset, LabeledDataset> split_train_test(const LabeledDataset& data,
                                                                  const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw std::invalid_argument("split_train_test: train_fraction must be in (0,1)");
    if (data.size() < 2) throw std::runtime_error("split_train_test: need at least 2 items");

    Rng rng(spec.seed);
    LabeledDataset train, test;
    for (const std::string& label : data.classes()) {
        std::vector<const DatasetItem*> members = detail::class_members_sorted(data, label);
        rng.shuffle(members);
        // 1e-9 guard: 10 * 0.7 must floor to 7, not fall victim to the
        // binary representation of 0.7.
        const size_t n_train = static_cast<size_t>(
            std::floor(static_cast<double>(members.size()) * spec.train_fraction + 1e-9));
        for (size_t i = 0; i < members.size(); ++i)
            (i < n_train ? train : test).add(*members[i]);
    }
    return {std::move(train), std::move(test)};
}

}  // namespace ratekit
