#include "ffexpand/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ffx {

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FFEXPAND_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap > 0) n = std::min<unsigned long>(n, static_cast<unsigned long>(cap));
        } catch (const std::exception&) {
            // Unparsable values are ignored.
        }
    }
    return n;
}

void parallel_chunks(std::size_t n, unsigned workers,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& body) {
    workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(workers, n)));
    if (workers == 1) {
        body(0, 0, n);
        return;
    }
    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex mu;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers, end = n * (w + 1) / workers;
        threads.emplace_back([&, w, begin, end] {
            try {
                body(w, begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace ffx
