#include "cknorm/rng.hpp"

namespace cknorm {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, const std::string& label, std::uint64_t index) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a over the label
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t state = master ^ h;
    std::uint64_t mixed = splitmix64(state);
    state ^= index + 0x632be59bd9b4e019ULL;
    mixed ^= splitmix64(state);
    return mixed;
}

} // namespace cknorm
