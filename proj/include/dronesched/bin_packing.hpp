#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dronesched/augmented_tree.hpp"
#include "dronesched/core_model.hpp"

namespace dronesched {

enum class Strategy { next_fit, first_fit };

inline const char* to_string(Strategy strategy) {
  return strategy == Strategy::next_fit ? "next-fit" : "first-fit";
}

inline Strategy parse_strategy(std::string_view text) {
  if (text == "next-fit") return Strategy::next_fit;
  if (text == "first-fit") return Strategy::first_fit;
  throw Error(ErrorKind::parse_error, "unknown strategy '" + std::string(text) + "'");
}

// One placement decision with the remaining capacity of every bin that was
// a candidate (active for that id) just before the item was placed.
struct PlacementRecord {
  IdNumber id_number = 0;
  Cost cost;
  BinNumber bin = 0;
  std::vector<std::pair<BinNumber, Cost>> candidates;
};

class PlacementTrace {
 public:
  void append(PlacementRecord record) { records_.push_back(std::move(record)); }
  const std::vector<PlacementRecord>& records() const noexcept { return records_; }
  bool empty() const noexcept { return records_.empty(); }

  // id_number,cost,bin,candidates   with candidates as "bin:rem;bin:rem"
  void write_csv(std::ostream& out) const {
    out << "id_number,cost,bin,candidates\n";
    for (const auto& r : records_) {
      out << r.id_number << ',' << to_string(r.cost) << ',' << r.bin << ',';
      for (std::size_t i = 0; i < r.candidates.size(); ++i) {
        if (i) out << ';';
        out << r.candidates[i].first << ':' << to_string(r.candidates[i].second);
      }
      out << '\n';
    }
  }

 private:
  std::vector<PlacementRecord> records_;
};

namespace detail {
inline void check_item(const Cost& cost, const Rational& budget) {
  if (cost <= 0) throw Error(ErrorKind::malformed_request, "item cost must be positive");
  if (cost > budget)
    throw Error(ErrorKind::infeasible_request,
                "item cost " + to_string(cost) + " exceeds budget " + to_string(budget));
}
}  // namespace detail

// Next-fit per idNumber: one active bin per id; an item that does not fit
// closes it and opens the next number.
class NextFitState {
 public:
  BinNumber place(IdNumber id, const Cost& cost, const Rational& budget,
                  PlacementTrace* trace = nullptr) {
    detail::check_item(cost, budget);
    PlacementRecord record;
    BinNumber bin;
    auto it = id_to_bin_.find(id);
    if (it == id_to_bin_.end()) {
      bin = 1;
      id_to_bin_.emplace(id, bin);
      bin_to_capacity_.emplace(id, budget - cost);
    } else {
      Rational& remaining = bin_to_capacity_.at(id);
      if (trace) record.candidates.emplace_back(it->second, remaining);
      if (remaining >= cost) {
        remaining -= cost;
      } else {
        ++it->second;
        remaining = budget - cost;
      }
      bin = it->second;
    }
    if (trace) {
      record.id_number = id;
      record.cost = cost;
      record.bin = bin;
      trace->append(std::move(record));
    }
    return bin;
  }

  std::optional<BinNumber> active_bin(IdNumber id) const {
    auto it = id_to_bin_.find(id);
    if (it == id_to_bin_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<Rational> remaining(IdNumber id) const {
    auto it = bin_to_capacity_.find(id);
    if (it == bin_to_capacity_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t id_count() const noexcept { return id_to_bin_.size(); }

 private:
  std::unordered_map<IdNumber, BinNumber> id_to_bin_;
  std::unordered_map<IdNumber, Rational> bin_to_capacity_;
};

// First-fit per idNumber over a max-augmented AVL tree of active bins keyed
// by bin number. A bin whose remaining capacity reaches zero is closed and
// removed; bin numbers are never reused.
class FirstFitTree {
 public:
  using BinTree = MaxAugmentedTree<BinNumber, Rational>;

  BinNumber place(IdNumber id, const Cost& cost, const Rational& budget,
                  PlacementTrace* trace = nullptr) {
    detail::check_item(cost, budget);
    BinTree& tree = trees_[id];
    PlacementRecord record;
    if (trace) record.candidates = bins_of(tree);

    BinNumber bin;
    Rational remaining;
    if (auto hit = tree.take_first_fit(cost)) {
      bin = hit->first;
      remaining = std::move(hit->second);
    } else {
      bin = ++bins_created_[id];
      remaining = budget - cost;
      tree.insert(bin, remaining);
    }
    if (remaining == 0) tree.erase(bin);

    if (trace) {
      record.id_number = id;
      record.cost = cost;
      record.bin = bin;
      trace->append(std::move(record));
    }
    return bin;
  }

  // Removes every active bin with zero remaining capacity, for all ids.
  void close_zero_bins() {
    for (auto& [id, tree] : trees_) {
      std::vector<BinNumber> closed;
      tree.for_each([&](BinNumber bin, const Rational& rem) {
        if (rem == 0) closed.push_back(bin);
      });
      for (BinNumber bin : closed) tree.erase(bin);
    }
  }

  // Installs an active bin directly; used to set up states in tests and tools.
  void seed_bin(IdNumber id, BinNumber bin, const Rational& remaining) {
    trees_[id].insert(bin, remaining);
    auto& created = bins_created_[id];
    created = std::max(created, bin);
  }

  std::vector<std::pair<BinNumber, Rational>> active_bins(IdNumber id) const {
    auto it = trees_.find(id);
    if (it == trees_.end()) return {};
    return bins_of(it->second);
  }

  BinNumber bins_created(IdNumber id) const {
    auto it = bins_created_.find(id);
    return it == bins_created_.end() ? 0 : it->second;
  }

  const BinTree* tree(IdNumber id) const {
    auto it = trees_.find(id);
    return it == trees_.end() ? nullptr : &it->second;
  }

  bool aggregates_valid() const {
    return std::all_of(trees_.begin(), trees_.end(),
                       [](const auto& entry) { return entry.second.aggregates_valid(); });
  }

 private:
  std::unordered_map<IdNumber, BinTree> trees_;
  std::unordered_map<IdNumber, BinNumber> bins_created_;

  static std::vector<std::pair<BinNumber, Rational>> bins_of(const BinTree& tree) {
    std::vector<std::pair<BinNumber, Rational>> bins;
    bins.reserve(tree.size());
    tree.for_each([&](BinNumber bin, const Rational& rem) { bins.emplace_back(bin, rem); });
    return bins;
  }
};

}  // namespace dronesched
