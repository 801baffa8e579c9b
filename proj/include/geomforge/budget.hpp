#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

namespace geomforge {

/// Thrown when an enumeration would exceed the configured budget.
/// The CLI maps this to exit code 3.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// Resource ceilings for every enumerating operation. All limits are
/// checked up front where the size is predictable, and per-step otherwise,
/// so no operation can hang.
struct Budget {
    std::uint64_t max_group_order = 1'000'000;    // element enumeration (conjugacy classes etc.)
    std::uint64_t max_grassmannian = 2'000'000;   // subspaces per enumeration
    std::uint64_t max_enumeration = 10'000'000;   // raw search nodes (GL filters, DFS)
    std::uint64_t time_ms = 600'000;              // wall-clock ceiling per operation

    static Budget defaults() { return Budget{}; }

    /// Parses "key=value,key=value" with keys max_group_order,
    /// max_grassmannian, max_enumeration, time_ms. A bare number scales
    /// every count limit by that factor.
    static Budget parse(const std::string& text) {
        Budget b;
        if (text.empty()) return b;
        if (text.find('=') == std::string::npos) {
            double f = std::stod(text);
            b.max_group_order = static_cast<std::uint64_t>(b.max_group_order * f);
            b.max_grassmannian = static_cast<std::uint64_t>(b.max_grassmannian * f);
            b.max_enumeration = static_cast<std::uint64_t>(b.max_enumeration * f);
            return b;
        }
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("bad budget item: " + item);
            std::string key = item.substr(0, eq);
            std::uint64_t val = std::stoull(item.substr(eq + 1));
            if (key == "max_group_order") b.max_group_order = val;
            else if (key == "max_grassmannian") b.max_grassmannian = val;
            else if (key == "max_enumeration") b.max_enumeration = val;
            else if (key == "time_ms") b.time_ms = val;
            else throw std::invalid_argument("unknown budget key: " + key);
        }
        return b;
    }

    /// Defaults overridden by the GEOMFORGE_BUDGET environment variable.
    static Budget from_env() {
        const char* env = std::getenv("GEOMFORGE_BUDGET");
        return env ? parse(env) : defaults();
    }

    void require_group_order(std::uint64_t n, const char* what) const {
        if (n > max_group_order)
            throw budget_error(std::string(what) + ": group order " + std::to_string(n) +
                               " exceeds budget " + std::to_string(max_group_order));
    }
    void require_enumeration(std::uint64_t n, const char* what) const {
        if (n > max_enumeration)
            throw budget_error(std::string(what) + ": enumeration size " + std::to_string(n) +
                               " exceeds budget " + std::to_string(max_enumeration));
    }
    void require_grassmannian(std::uint64_t n, const char* what) const {
        if (n > max_grassmannian)
            throw budget_error(std::string(what) + ": " + std::to_string(n) +
                               " subspaces exceed budget " + std::to_string(max_grassmannian));
    }
};

/// Wall-clock guard; poll() from long-running loops.
class Stopwatch {
public:
    explicit Stopwatch(std::uint64_t limit_ms)
        : start_(std::chrono::steady_clock::now()), limit_ms_(limit_ms) {}

    std::uint64_t elapsed_ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(d).count());
    }
    void poll(const char* what) const {
        if (elapsed_ms() > limit_ms_)
            throw budget_error(std::string(what) + ": time ceiling exceeded");
    }

private:
    std::chrono::steady_clock::time_point start_;
    std::uint64_t limit_ms_;
};

} // namespace geomforge
