// Splittable random streams. Every consumer takes an explicit stream;
// substreams are derived by key mixing so trial t is reproducible no
// matter how trials are sharded across workers.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ppclab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class RngStream {
public:
    explicit RngStream(std::uint64_t key) : key_(key), eng_(splitmix64(key)) {}
    RngStream(std::uint64_t master, std::uint64_t stream_id)
        : RngStream(splitmix64(master ^ splitmix64(stream_id + 0x51ed2701a9b3c5f7ULL))) {}

    RngStream substream(std::uint64_t i) const { return RngStream(key_, i); }
    std::uint64_t key() const { return key_; }

    std::uint64_t u64() { return eng_(); }
    double uniform() {  // in [0,1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    bool bernoulli(double p) { return uniform() < p; }
    bool bit() { return eng_() & 1u; }
    // index into [0,n)
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
    }
    // sample from explicit probabilities (assumed to sum to ~1)
    std::size_t categorical(const std::vector<double>& probs) {
        double u = uniform();
        for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
            if (u < probs[k]) return k;
            u -= probs[k];
        }
        return probs.empty() ? 0 : probs.size() - 1;
    }
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
    }

private:
    std::uint64_t key_;
    std::mt19937_64 eng_;
};

}  // namespace ppclab
