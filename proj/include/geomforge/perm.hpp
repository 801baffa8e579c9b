#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace geomforge {

/// Permutation of {0..n-1} as an image array. Products compose like
/// functions: (a*b)(x) = a(b(x)).
struct Perm {
    std::vector<std::uint32_t> img;

    Perm() = default;
    explicit Perm(std::vector<std::uint32_t> images) : img(std::move(images)) {}

    static Perm identity(unsigned n) {
        Perm p;
        p.img.resize(n);
        std::iota(p.img.begin(), p.img.end(), 0u);
        return p;
    }

    unsigned degree() const { return static_cast<unsigned>(img.size()); }
    std::uint32_t operator()(std::uint32_t x) const { return img[x]; }

    friend Perm operator*(const Perm& a, const Perm& b) {
        Perm out;
        out.img.resize(a.img.size());
        for (std::size_t x = 0; x < b.img.size(); ++x) out.img[x] = a.img[b.img[x]];
        return out;
    }

    Perm inverse() const {
        Perm out;
        out.img.resize(img.size());
        for (std::size_t x = 0; x < img.size(); ++x) out.img[img[x]] = static_cast<std::uint32_t>(x);
        return out;
    }

    bool is_identity() const {
        for (std::size_t x = 0; x < img.size(); ++x)
            if (img[x] != x) return false;
        return true;
    }

    int smallest_moved() const {
        for (std::size_t x = 0; x < img.size(); ++x)
            if (img[x] != x) return static_cast<int>(x);
        return -1;
    }

    /// Multiplicative order (lcm of cycle lengths).
    std::uint64_t order() const {
        std::vector<char> seen(img.size(), 0);
        std::uint64_t ord = 1;
        for (std::size_t x = 0; x < img.size(); ++x) {
            if (seen[x]) continue;
            std::uint64_t len = 0;
            std::uint32_t y = static_cast<std::uint32_t>(x);
            while (!seen[y]) {
                seen[y] = 1;
                y = img[y];
                ++len;
            }
            ord = std::lcm(ord, len);
        }
        return ord;
    }

    friend bool operator==(const Perm& a, const Perm& b) { return a.img == b.img; }
    friend bool operator!=(const Perm& a, const Perm& b) { return a.img != b.img; }
    friend bool operator<(const Perm& a, const Perm& b) { return a.img < b.img; }

    std::string to_text() const {
        std::string out;
        for (std::size_t i = 0; i < img.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(img[i]);
        }
        return out;
    }

    static Perm parse(const std::string& line) {
        Perm p;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && line[pos] == ' ') ++pos;
            if (pos >= line.size()) break;
            std::size_t end = pos;
            while (end < line.size() && line[end] != ' ') ++end;
            p.img.push_back(static_cast<std::uint32_t>(std::stoul(line.substr(pos, end - pos))));
            pos = end;
        }
        std::vector<char> seen(p.img.size(), 0);
        for (auto v : p.img) {
            if (v >= p.img.size() || seen[v])
                throw std::invalid_argument("not a permutation: " + line);
            seen[v] = 1;
        }
        return p;
    }
};

} // namespace geomforge
