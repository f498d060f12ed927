#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "floodfill/error.hpp"

namespace floodfill {

/// A queued cell. Entries order lexicographically by (priority, serial).
struct QueueEntry {
  double priority = 0.0;
  std::uint64_t serial = 0;
  std::size_t cell = 0;

  friend bool operator==(const QueueEntry&, const QueueEntry&) = default;
};

constexpr bool entry_before(const QueueEntry& a, const QueueEntry& b) {
  return a.priority < b.priority || (a.priority == b.priority && a.serial < b.serial);
}

namespace detail {

inline std::uint64_t take_serial(std::uint64_t& next) {
  if (next == std::numeric_limits<std::uint64_t>::max()) {
    throw QueueError("insertion serial counter exhausted");
  }
  return next++;
}

inline void check_priority(double priority) {
  if (std::isnan(priority)) throw QueueError("NaN priority");
}

}  // namespace detail

/**
  Binary min-heap with a total order: ties on priority are broken by an
  insertion serial, so equal-priority entries pop in the order they were
  pushed. Priorities may be any non-NaN double, including -inf.
*/
class TotalOrderHeap {
 public:
  static constexpr const char* name() { return "heap"; }

  void reserve(std::size_t n) { entries_.reserve(n); }

  void push(double priority, std::size_t cell) {
    detail::check_priority(priority);
    entries_.push_back({priority, detail::take_serial(next_serial_), cell});
    std::push_heap(entries_.begin(), entries_.end(), later);
  }

  QueueEntry pop() {
    if (entries_.empty()) throw QueueError("pop from empty heap");
    std::pop_heap(entries_.begin(), entries_.end(), later);
    const auto top = entries_.back();
    entries_.pop_back();
    return top;
  }

  std::optional<double> peek_min_priority() const {
    if (entries_.empty()) return std::nullopt;
    return entries_.front().priority;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  // std heap algorithms build max-heaps; invert the order.
  static bool later(const QueueEntry& a, const QueueEntry& b) { return entry_before(b, a); }

  std::vector<QueueEntry> entries_;
  std::uint64_t next_serial_ = 0;
};

/**
  Monotone bucket (hierarchical) queue over integer priorities in
  [lowest, highest], plus one floor bucket for -inf (NoData keys).

  Each bucket is a FIFO, so equal priorities pop in insertion order and the
  pop sequence matches TotalOrderHeap's exactly. Pushing below the lowest
  non-empty bucket already popped from is a contract violation: the
  flooding algorithms never do it.

  Buckets are intrusive singly linked lists threaded through a node pool,
  so an empty bucket costs 8 bytes.
*/
class BucketQueue {
 public:
  static constexpr std::size_t kMaxBuckets = std::size_t{1} << 26;

  static constexpr const char* name() { return "bucket"; }

  BucketQueue(std::int64_t lowest, std::int64_t highest) : lowest_(lowest) {
    if (highest < lowest) throw QueueError("bucket range is empty");
    const auto span = static_cast<std::uint64_t>(highest - lowest);
    if (span + 2 > kMaxBuckets) {
      throw QueueError("bucket range of " + std::to_string(span + 1) + " priorities exceeds the cap");
    }
    highest_ = highest;
    heads_.assign(static_cast<std::size_t>(span + 2), kNil);
    tails_.assign(static_cast<std::size_t>(span + 2), kNil);
  }

  /// True when [lowest, highest] fits under the bucket cap.
  static bool fits(std::int64_t lowest, std::int64_t highest) {
    return highest >= lowest && static_cast<std::uint64_t>(highest - lowest) + 2 <= kMaxBuckets;
  }

  void reserve(std::size_t n) { nodes_.reserve(n); }

  void push(double priority, std::size_t cell) {
    detail::check_priority(priority);
    const auto b = bucket_of(priority);
    if (b < cursor_) {
      throw QueueError("monotonicity violation: priority " + std::to_string(priority) +
                       " is below the current minimum");
    }
    const QueueEntry entry{priority, detail::take_serial(next_serial_), cell};
    std::uint32_t node = 0;
    if (free_ != kNil) {
      node = free_;
      free_ = nodes_[node].next;
      nodes_[node] = {entry, kNil};
    } else {
      if (nodes_.size() >= kNil) throw QueueError("bucket queue node pool exhausted");
      node = static_cast<std::uint32_t>(nodes_.size());
      nodes_.push_back({entry, kNil});
    }
    if (tails_[b] == kNil) {
      heads_[b] = node;
    } else {
      nodes_[tails_[b]].next = node;
    }
    tails_[b] = node;
    ++size_;
  }

  QueueEntry pop() {
    if (size_ == 0) throw QueueError("pop from empty bucket queue");
    while (heads_[cursor_] == kNil) ++cursor_;
    const auto node = heads_[cursor_];
    const auto entry = nodes_[node].entry;
    heads_[cursor_] = nodes_[node].next;
    if (heads_[cursor_] == kNil) tails_[cursor_] = kNil;
    nodes_[node].next = free_;
    free_ = node;
    --size_;
    return entry;
  }

  std::optional<double> peek_min_priority() const {
    if (size_ == 0) return std::nullopt;
    auto b = cursor_;
    while (heads_[b] == kNil) ++b;
    return nodes_[heads_[b]].entry.priority;
  }

  bool empty() const { return size_ == 0; }
  std::size_t size() const { return size_; }

 private:
  static constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();

  struct Node {
    QueueEntry entry;
    std::uint32_t next;
  };

  std::size_t bucket_of(double priority) const {
    if (priority == -std::numeric_limits<double>::infinity()) return 0;
    if (priority != std::trunc(priority) || priority < static_cast<double>(lowest_) ||
        priority > static_cast<double>(highest_)) {
      throw QueueError("priority " + std::to_string(priority) + " is not an integer in [" +
                       std::to_string(lowest_) + ", " + std::to_string(highest_) + "]");
    }
    return static_cast<std::size_t>(static_cast<std::int64_t>(priority) - lowest_) + 1;
  }

  std::int64_t lowest_;
  std::int64_t highest_ = 0;
  std::vector<std::uint32_t> heads_;
  std::vector<std::uint32_t> tails_;
  std::vector<Node> nodes_;
  std::uint32_t free_ = kNil;
  std::size_t cursor_ = 0;
  std::size_t size_ = 0;
  std::uint64_t next_serial_ = 0;
};

/// FIFO ring buffer with amortized O(1) push and pop.
template <class T>
class RingQueue {
 public:
  void push(const T& value) {
    if (size_ == buffer_.size()) grow();
    buffer_[(head_ + size_) & (buffer_.size() - 1)] = value;
    ++size_;
  }

  T pop() {
    if (size_ == 0) throw QueueError("pop from empty FIFO");
    T value = buffer_[head_];
    head_ = (head_ + 1) & (buffer_.size() - 1);
    --size_;
    return value;
  }

  const T& front() const { return buffer_[head_]; }
  bool empty() const { return size_ == 0; }
  std::size_t size() const { return size_; }

 private:
  void grow() {
    std::vector<T> bigger(buffer_.empty() ? 64 : buffer_.size() * 2);
    for (std::size_t i = 0; i < size_; ++i) bigger[i] = buffer_[(head_ + i) & (buffer_.size() - 1)];
    buffer_ = std::move(bigger);
    head_ = 0;
  }

  std::vector<T> buffer_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
};

}  // namespace floodfill
