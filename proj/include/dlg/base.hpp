#pragma once

// Shared small utilities: vectors, deterministic rng, hashing, formatting.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlg {

using VecD = std::vector<double>;
using VecI = std::vector<int>;

inline double dot(const VecD& a, const VecD& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline VecD operator+(const VecD& a, const VecD& b) {
    VecD r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline VecD operator-(const VecD& a, const VecD& b) {
    VecD r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline VecD operator*(double s, const VecD& a) {
    VecD r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline double norm(const VecD& a) { return std::sqrt(dot(a, a)); }

// splitmix64: deterministic, platform independent.
inline uint64_t splitmix64(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic rng; avoids std distributions (implementation defined).
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed ^ 0x6a09e667f3bcc908ULL) {}
    uint64_t next_u64() { return splitmix64(state_); }
    // uniform in [0,1)
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * next_double(); }
    int next_int(int n) { return int(next_u64() % uint64_t(n)); }

  private:
    uint64_t state_;
};

inline uint64_t hash_combine(uint64_t h, uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

inline uint64_t hash_ints(const VecI& v) {
    uint64_t h = 0x243f6a8885a308d3ULL;
    for (int x : v) h = hash_combine(h, uint64_t(x) + 1);
    return h;
}

inline std::string format_double(double x, int sig = 12) {
    std::ostringstream os;
    os.precision(sig);
    os << x;
    return os.str();
}

struct Failure : std::runtime_error {
    explicit Failure(const std::string& m) : std::runtime_error(m) {}
};

inline void require(bool c, const std::string& msg) {
    if (!c) throw Failure(msg);
}

}  // namespace dlg
