#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace brachx {

// splitmix64; used both as the generator and to derive child-stream seeds,
// so results do not depend on the standard library's distribution internals.
struct Rng {
    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller (platform-independent)
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double(), u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Eigen::VectorXd gaussian_vector(int dim) {
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v(i) = next_gaussian();
        return v;
    }

    // isotropic direction scaled to the given norm
    Eigen::VectorXd sphere_vector(int dim, double norm) {
        Eigen::VectorXd v = gaussian_vector(dim);
        double len = v.norm();
        while (len < 1e-12) {  // astronomically unlikely
            v = gaussian_vector(dim);
            len = v.norm();
        }
        return v * (norm / len);
    }

    std::uint64_t state;

  private:
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Child-stream seed for sample `index` of stream `seed`: results are
// independent of scheduling because each index owns its stream.
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
    Rng mix(seed ^ (0xA0761D6478BD642FULL + index * 0xE7037ED1A0B428DBULL));
    return mix.next_u64();
}

}  // namespace brachx
