#ifndef EQK_PARALLEL_HPP
#define EQK_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace eqk
{

// Evaluates fn(0..n-1) on up to `threads` workers and returns the results in
// index order, so any subsequent reduction is independent of scheduling. The
// exception of the lowest failing index is rethrown.
template <typename Fn>
auto parallel_map(std::size_t n, std::size_t threads, Fn &&fn) -> std::vector<std::invoke_result_t<Fn &, std::size_t>>
{
    using result_t = std::invoke_result_t<Fn &, std::size_t>;
    std::vector<std::optional<result_t>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1 || n <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        const auto count = std::min(threads, n);
        pool.reserve(count);
        for (std::size_t t = 0; t < count; ++t) {
            pool.emplace_back(worker);
        }
    }
    std::vector<result_t> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

} // namespace eqk

#endif
