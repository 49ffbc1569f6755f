#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace mch::detail {

/// Iterative radix-2 complex FFT with precomputed twiddle and bit-reversal
/// tables. n must be a power of two. Neither direction applies a 1/n scale;
/// callers normalize. Twiddles are table lookups, so repeated transforms are
/// bit-stable.
class FftPlan {
public:
    explicit FftPlan(int n) : n_(n), rev_(n), w_(n / 2) {
        int lg = 0;
        while ((1 << lg) < n) ++lg;
        for (int i = 0; i < n; ++i) {
            int r = 0;
            for (int b = 0; b < lg; ++b)
                if (i & (1 << b)) r |= 1 << (lg - 1 - b);
            rev_[i] = r;
        }
        const double step = 2.0 * std::numbers::pi / n;
        for (int j = 0; j < n / 2; ++j) w_[j] = {std::cos(step * j), -std::sin(step * j)};
    }

    int size() const { return n_; }

    void forward(std::complex<double>* a) const { transform(a, false); }
    void inverse(std::complex<double>* a) const { transform(a, true); }

private:
    void transform(std::complex<double>* a, bool inv) const {
        for (int i = 0; i < n_; ++i)
            if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);
        for (int len = 2; len <= n_; len <<= 1) {
            const int half = len >> 1;
            const int stride = n_ / len;
            for (int base = 0; base < n_; base += len) {
                for (int j = 0; j < half; ++j) {
                    std::complex<double> w = w_[j * stride];
                    if (inv) w = std::conj(w);
                    const std::complex<double> u = a[base + j];
                    const std::complex<double> v = a[base + j + half] * w;
                    a[base + j] = u + v;
                    a[base + j + half] = u - v;
                }
            }
        }
    }

    int n_;
    std::vector<int> rev_;
    std::vector<std::complex<double>> w_;
};

}  // namespace mch::detail
