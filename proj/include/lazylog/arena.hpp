#pragma once

#include <cstddef>
#include <memory>
#include <new>
#include <type_traits>
#include <utility>
#include <vector>

namespace lazylog {

/// Bump allocator with stack-like release. Only trivially destructible
/// objects may live here: release() reclaims memory without running
/// destructors.
class Arena {
public:
  struct Mark {
    std::size_t block = 0;
    std::size_t offset = 0;
  };

  explicit Arena(std::size_t block_size = 1 << 16) : block_size_(block_size) {}
  Arena(const Arena&) = delete;
  Arena& operator=(const Arena&) = delete;
  Arena(Arena&&) noexcept = default;
  Arena& operator=(Arena&&) noexcept = default;

  void* allocate(std::size_t bytes, std::size_t align) {
    for (;;) {
      if (current_ < blocks_.size()) {
        auto& block = blocks_[current_];
        std::size_t start = (offset_ + align - 1) & ~(align - 1);
        if (start + bytes <= block.size) {
          offset_ = start + bytes;
          return block.data.get() + start;
        }
        ++current_;
        offset_ = 0;
        continue;
      }
      std::size_t size = std::max(block_size_, bytes + align);
      blocks_.push_back(Block{std::make_unique<std::byte[]>(size), size});
    }
  }

  template <class T, class... Args> T* make(Args&&... args) {
    static_assert(std::is_trivially_destructible_v<T>);
    return ::new (allocate(sizeof(T), alignof(T))) T{std::forward<Args>(args)...};
  }

  template <class T> T* make_array(std::size_t n) {
    static_assert(std::is_trivially_destructible_v<T>);
    if (n == 0)
      return nullptr;
    auto* p = static_cast<T*>(allocate(sizeof(T) * n, alignof(T)));
    for (std::size_t i = 0; i < n; ++i)
      ::new (p + i) T{};
    return p;
  }

  Mark mark() const { return {current_, offset_}; }
  void release(Mark m) {
    current_ = m.block;
    offset_ = m.offset;
  }
  void clear() { release({}); }

  std::size_t bytes_reserved() const {
    std::size_t total = 0;
    for (const auto& b : blocks_)
      total += b.size;
    return total;
  }

private:
  struct Block {
    std::unique_ptr<std::byte[]> data;
    std::size_t size;
  };
  std::vector<Block> blocks_;
  std::size_t block_size_;
  std::size_t current_ = 0;
  std::size_t offset_ = 0;
};

} // namespace lazylog
