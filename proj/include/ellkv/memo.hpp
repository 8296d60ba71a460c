#pragma once

#include <map>
#include <mutex>

namespace ellkv::detail {

// Thread-safe insert-only cache. References stay valid for the program's
// lifetime because entries are never erased. The value is computed outside
// the lock so computations may recurse into the same memo.
template <typename Key, typename Value>
class Memo {
 public:
  template <typename Fn>
  const Value& get(const Key& key, Fn&& compute) {
    {
      std::lock_guard lock(mu_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    Value v = compute();
    std::lock_guard lock(mu_);
    return map_.try_emplace(key, std::move(v)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<Key, Value> map_;
};

}  // namespace ellkv::detail
