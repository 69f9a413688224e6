#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace ccpivot {

// Binary min-heap over the fixed id set 0..size-1 with updatable keys.
// Equal keys are ordered by smaller id, so the top is fully determined by
// the key values.
template <typename Key>
class IndexedMinHeap {
 public:
  IndexedMinHeap() = default;

  explicit IndexedMinHeap(std::vector<Key> keys) : keys_(std::move(keys)) {
    heap_.resize(keys_.size());
    pos_.resize(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      heap_[i] = static_cast<std::uint32_t>(i);
      pos_[i] = static_cast<std::uint32_t>(i);
    }
    rebuild();
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  std::uint32_t top() const { return heap_.front(); }
  const Key& key(std::uint32_t id) const { return keys_[id]; }

  void update(std::uint32_t id, Key key) {
    const Key old = keys_[id];
    keys_[id] = key;
    if (key < old)
      sift_up(pos_[id]);
    else if (old < key)
      sift_down(pos_[id]);
  }

  // Applies f to every key in place and restores heap order.
  template <typename F>
  void transform_all(F&& f) {
    for (auto& k : keys_) k = f(k);
    rebuild();
  }

 private:
  bool less(std::uint32_t a, std::uint32_t b) const {
    return keys_[a] < keys_[b] || (!(keys_[b] < keys_[a]) && a < b);
  }

  void rebuild() {
    for (std::size_t i = heap_.size() / 2; i-- > 0;) sift_down(i);
  }

  void place(std::size_t i, std::uint32_t id) {
    heap_[i] = id;
    pos_[id] = static_cast<std::uint32_t>(i);
  }

  void sift_up(std::size_t i) {
    const std::uint32_t id = heap_[i];
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!less(id, heap_[parent])) break;
      place(i, heap_[parent]);
      i = parent;
    }
    place(i, id);
  }

  void sift_down(std::size_t i) {
    const std::uint32_t id = heap_[i];
    const std::size_t n = heap_.size();
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && less(heap_[child + 1], heap_[child])) ++child;
      if (!less(heap_[child], id)) break;
      place(i, heap_[child]);
      i = child;
    }
    place(i, id);
  }

  std::vector<Key> keys_;
  std::vector<std::uint32_t> heap_;
  std::vector<std::uint32_t> pos_;
};

}  // namespace ccpivot
