#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace vlc {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested object would exceed the configured element cap.
class CapacityError : public Error {
public:
    CapacityError(const std::string& what, std::size_t requested, std::size_t cap)
        : Error(what + ": " + std::to_string(requested) + " elements requested, cap is " +
                std::to_string(cap)),
          requested_(requested),
          cap_(cap) {}

    std::size_t requested() const noexcept { return requested_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t requested_;
    std::size_t cap_;
};

/// The physics is undefined for the given input (vacuum, dark slit, null state).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed arguments: bad labels, mismatched sizes, invalid geometry.
class ValidationError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline std::atomic<std::size_t>& size_cap_storage() {
    static std::atomic<std::size_t> cap = [] {
        std::size_t value = 1'000'000;
        if (const char* env = std::getenv("VLC_SIZE_CAP")) {
            char* end = nullptr;
            const unsigned long long parsed = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && parsed > 0) value = static_cast<std::size_t>(parsed);
        }
        return value;
    }();
    return cap;
}

}  // namespace detail

/// Maximum number of matrix elements any single dense object may hold.
/// Defaults to 10^6; the environment variable VLC_SIZE_CAP overrides it at first use.
inline std::size_t size_cap() { return detail::size_cap_storage().load(); }

inline void set_size_cap(std::size_t cap) { detail::size_cap_storage().store(cap); }

/// Throws CapacityError when `elements` exceeds the cap.
inline void require_capacity(std::size_t elements, const std::string& what) {
    const std::size_t cap = size_cap();
    if (elements > cap) throw CapacityError(what, elements, cap);
}

/// RAII override of the size cap, used by tests.
class ScopedSizeCap {
public:
    explicit ScopedSizeCap(std::size_t cap) : previous_(size_cap()) { set_size_cap(cap); }
    ~ScopedSizeCap() { set_size_cap(previous_); }
    ScopedSizeCap(const ScopedSizeCap&) = delete;
    ScopedSizeCap& operator=(const ScopedSizeCap&) = delete;

private:
    std::size_t previous_;
};

}  // namespace vlc
