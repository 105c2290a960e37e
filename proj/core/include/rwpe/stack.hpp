#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <type_traits>
#include <utility>

namespace rwpe {

/// Runs `fn` on a thread with a stack of `stack_bytes` and waits for it.
/// Exceptions thrown by `fn` are rethrown in the caller.
void run_on_stack(std::size_t stack_bytes, const std::function<void()>& fn);

inline constexpr std::size_t kDefaultStackBytes = std::size_t{1} << 30;

template <class F>
auto with_big_stack(F&& fn, std::size_t stack_bytes = kDefaultStackBytes) -> decltype(fn()) {
  using R = decltype(fn());
  if constexpr (std::is_void_v<R>) {
    run_on_stack(stack_bytes, fn);
  } else {
    std::optional<R> out;
    run_on_stack(stack_bytes, [&] { out.emplace(fn()); });
    return std::move(*out);
  }
}

}  // namespace rwpe
