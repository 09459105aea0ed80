#pragma once

#include <cstdint>

#if defined(_WIN32)
#include <chrono>
#else
#include <ctime>
#endif

namespace cstatsize::timing {

// Monotonic wall clock in nanoseconds.
inline std::uint64_t mono_ns() {
#if defined(_WIN32)
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now().time_since_epoch())
            .count());
#else
    timespec ts;
    clock_gettime(CLOCK_MONOTONIC, &ts);
    return static_cast<std::uint64_t>(ts.tv_sec) * 1000000000ull +
           static_cast<std::uint64_t>(ts.tv_nsec);
#endif
}

// true if the monotonic clock source is usable.
inline bool mono_clock_available() {
#if defined(_WIN32)
    return true;
#else
    timespec ts;
    return clock_gettime(CLOCK_MONOTONIC, &ts) == 0;
#endif
}

// Optimization barriers for benchmark loops. keep() makes a computed value
// observed so the call producing it cannot be elided; clobber_memory() makes
// the compiler assume all memory changed, so per-iteration inputs are
// re-read and results are not reused across iterations.
#if defined(__GNUC__) || defined(__clang__)

inline void keep(double value) {
#if defined(__x86_64__)
    asm volatile("" : : "x"(value));
#else
    asm volatile("" : : "g"(value) : "memory");
#endif
}

inline void clobber_memory() { asm volatile("" : : : "memory"); }

#else

namespace detail {
inline volatile double sink_slot;
}
inline void keep(double value) { detail::sink_slot = value; }
inline void clobber_memory() {}

#endif

// Smallest positive difference observable between consecutive clock reads.
std::uint64_t clock_resolution_ns();

}  // namespace cstatsize::timing
