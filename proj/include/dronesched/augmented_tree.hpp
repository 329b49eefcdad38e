#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>

namespace dronesched {

// AVL tree keyed by `Key`, each node holding a `Value` and the maximum Value
// over its subtree. Rotations and path updates keep the aggregate exact, so
// "leftmost node with value >= x" runs in O(log n).
template <typename Key, typename Value>
class MaxAugmentedTree {
 public:
  struct Node {
    Key key;
    Value value;
    Value max;
    int height = 1;
    std::unique_ptr<Node> left;
    std::unique_ptr<Node> right;

    Node(Key k, Value v) : key(std::move(k)), value(v), max(std::move(v)) {}
  };

  MaxAugmentedTree() = default;
  MaxAugmentedTree(MaxAugmentedTree&&) noexcept = default;
  MaxAugmentedTree& operator=(MaxAugmentedTree&&) noexcept = default;
  MaxAugmentedTree(const MaxAugmentedTree& other) : root_(clone(other.root_.get())), size_(other.size_) {}
  MaxAugmentedTree& operator=(const MaxAugmentedTree& other) {
    if (this != &other) {
      root_ = clone(other.root_.get());
      size_ = other.size_;
    }
    return *this;
  }

  bool empty() const noexcept { return !root_; }
  std::size_t size() const noexcept { return size_; }
  const Node* root() const noexcept { return root_.get(); }

  void insert(Key key, Value value) {
    root_ = insert_at(std::move(root_), std::move(key), std::move(value));
    ++size_;
  }

  bool erase(const Key& key) {
    bool removed = false;
    root_ = erase_at(std::move(root_), key, removed);
    if (removed) --size_;
    return removed;
  }

  const Value* find(const Key& key) const {
    const Node* node = root_.get();
    while (node) {
      if (key < node->key)
        node = node->left.get();
      else if (node->key < key)
        node = node->right.get();
      else
        return &node->value;
    }
    return nullptr;
  }

  // Finds the smallest-key node whose value is >= amount, subtracts amount
  // from it and repairs max along the root path. nullopt when root.max < amount.
  std::optional<std::pair<Key, Value>> take_first_fit(const Value& amount) {
    if (!root_ || root_->max < amount) return std::nullopt;
    return descend(*root_, amount);
  }

  template <typename F>
  void for_each(F&& visit) const {
    in_order(root_.get(), visit);
  }

  // Recomputes every aggregate from scratch and compares to the stored one.
  bool aggregates_valid() const {
    bool ok = true;
    check(root_.get(), ok);
    return ok;
  }

 private:
  std::unique_ptr<Node> root_;
  std::size_t size_ = 0;

  static int height(const Node* node) { return node ? node->height : 0; }

  static void pull(Node& node) {
    node.height = 1 + std::max(height(node.left.get()), height(node.right.get()));
    node.max = node.value;
    if (node.left && node.max < node.left->max) node.max = node.left->max;
    if (node.right && node.max < node.right->max) node.max = node.right->max;
  }

  static std::unique_ptr<Node> rotate_right(std::unique_ptr<Node> node) {
    auto pivot = std::move(node->left);
    node->left = std::move(pivot->right);
    pull(*node);
    pivot->right = std::move(node);
    pull(*pivot);
    return pivot;
  }

  static std::unique_ptr<Node> rotate_left(std::unique_ptr<Node> node) {
    auto pivot = std::move(node->right);
    node->right = std::move(pivot->left);
    pull(*node);
    pivot->left = std::move(node);
    pull(*pivot);
    return pivot;
  }

  static std::unique_ptr<Node> rebalance(std::unique_ptr<Node> node) {
    pull(*node);
    int balance = height(node->left.get()) - height(node->right.get());
    if (balance > 1) {
      if (height(node->left->left.get()) < height(node->left->right.get()))
        node->left = rotate_left(std::move(node->left));
      return rotate_right(std::move(node));
    }
    if (balance < -1) {
      if (height(node->right->right.get()) < height(node->right->left.get()))
        node->right = rotate_right(std::move(node->right));
      return rotate_left(std::move(node));
    }
    return node;
  }

  static std::unique_ptr<Node> insert_at(std::unique_ptr<Node> node, Key key, Value value) {
    if (!node) return std::make_unique<Node>(std::move(key), std::move(value));
    if (key < node->key)
      node->left = insert_at(std::move(node->left), std::move(key), std::move(value));
    else if (node->key < key)
      node->right = insert_at(std::move(node->right), std::move(key), std::move(value));
    else
      throw std::logic_error("duplicate key in MaxAugmentedTree");
    return rebalance(std::move(node));
  }

  static std::unique_ptr<Node> take_min(std::unique_ptr<Node>& node) {
    if (!node->left) {
      auto min = std::move(node);
      node = std::move(min->right);
      return min;
    }
    auto min = take_min(node->left);
    node = rebalance(std::move(node));
    return min;
  }

  static std::unique_ptr<Node> erase_at(std::unique_ptr<Node> node, const Key& key, bool& removed) {
    if (!node) return node;
    if (key < node->key) {
      node->left = erase_at(std::move(node->left), key, removed);
    } else if (node->key < key) {
      node->right = erase_at(std::move(node->right), key, removed);
    } else {
      removed = true;
      if (!node->left) return std::move(node->right);
      if (!node->right) return std::move(node->left);
      auto successor = take_min(node->right);
      successor->left = std::move(node->left);
      successor->right = std::move(node->right);
      node = std::move(successor);
    }
    return rebalance(std::move(node));
  }

  // Left-first descent: take this node when it fits and nothing to its left
  // does, otherwise go where the subtree max says a fit exists.
  static std::pair<Key, Value> descend(Node& node, const Value& amount) {
    std::pair<Key, Value> found;
    if (!(node.value < amount)) {
      if (!node.left || node.left->max < amount) {
        node.value -= amount;
        found = {node.key, node.value};
      } else {
        found = descend(*node.left, amount);
      }
    } else if (node.left && !(node.left->max < amount)) {
      found = descend(*node.left, amount);
    } else {
      found = descend(*node.right, amount);
    }
    pull(node);
    return found;
  }

  template <typename F>
  static void in_order(const Node* node, F& visit) {
    if (!node) return;
    in_order(node->left.get(), visit);
    visit(node->key, node->value);
    in_order(node->right.get(), visit);
  }

  static std::optional<Value> check(const Node* node, bool& ok) {
    if (!node) return std::nullopt;
    Value expected = node->value;
    auto l = check(node->left.get(), ok);
    auto r = check(node->right.get(), ok);
    if (l && expected < *l) expected = *l;
    if (r && expected < *r) expected = *r;
    if (expected != node->max) ok = false;
    int h = 1 + std::max(height(node->left.get()), height(node->right.get()));
    int balance = height(node->left.get()) - height(node->right.get());
    if (h != node->height || balance > 1 || balance < -1) ok = false;
    if (node->left && !(node->left->key < node->key)) ok = false;
    if (node->right && !(node->key < node->right->key)) ok = false;
    return expected;
  }

  static std::unique_ptr<Node> clone(const Node* node) {
    if (!node) return nullptr;
    auto copy = std::make_unique<Node>(node->key, node->value);
    copy->max = node->max;
    copy->height = node->height;
    copy->left = clone(node->left.get());
    copy->right = clone(node->right.get());
    return copy;
  }
};

}  // namespace dronesched
