#pragma once

#include <functional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dronesched/core_model.hpp"

namespace dronesched {

// Minimum-free idNumber bookkeeping.
//
// Invariant: free ∪ used = {1, ..., max_issued()}, free ∩ used = ∅.
// acquire() therefore always returns the least positive id not in use.
class IdPool {
 public:
  IdNumber acquire() {
    IdNumber id;
    if (free_.empty()) {
      id = ++max_issued_;
    } else {
      id = free_.top();
      free_.pop();
    }
    used_.insert(id);
    return id;
  }

  void release(IdNumber id) {
    if (used_.erase(id) == 0)
      throw std::logic_error("release of idNumber " + std::to_string(id) + " which is not in use");
    free_.push(id);
  }

  // Largest id ever issued (gIdNumber).
  IdNumber max_issued() const noexcept { return max_issued_; }

  const std::set<IdNumber>& used() const noexcept { return used_; }
  std::size_t free_count() const noexcept { return free_.size(); }
  bool in_use(IdNumber id) const { return used_.count(id) != 0; }

 private:
  IdNumber max_issued_ = 0;
  std::priority_queue<IdNumber, std::vector<IdNumber>, std::greater<>> free_;
  std::set<IdNumber> used_;
};

}  // namespace dronesched
