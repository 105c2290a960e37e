#include "rwpe/stack.hpp"

#include <pthread.h>

#include <stdexcept>
#include <string>

namespace rwpe {
namespace {

struct Task {
  const std::function<void()>* fn;
  std::exception_ptr error;
};

void* trampoline(void* arg) {
  auto* task = static_cast<Task*>(arg);
  try {
    (*task->fn)();
  } catch (...) {
    task->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void run_on_stack(std::size_t stack_bytes, const std::function<void()>& fn) {
  if (stack_bytes == 0) {
    fn();
    return;
  }
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, stack_bytes);
  Task task{&fn, nullptr};
  pthread_t thread;
  const int rc = pthread_create(&thread, &attr, trampoline, &task);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    // Fall back to the calling thread when a large stack is unavailable.
    fn();
    return;
  }
  pthread_join(thread, nullptr);
  if (task.error) std::rethrow_exception(task.error);
}

}  // namespace rwpe
