#include "wrl/kernels.hpp"

#include <cmath>
#include <cstdlib>

namespace wrl::kernels {

namespace {

double scalar_sum_abs_diff(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i] - b[i]);
    return s;
}

double scalar_sum_squares(const double* p, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += p[i] * p[i];
    return s;
}

double scalar_dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void scalar_axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double scalar_sum_plog2p(const double* p, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i] > 0.0) s += p[i] * std::log2(p[i]);
    }
    return s;
}

double scalar_sum_plog2_ratio(const double* p, const double* q, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i] > 0.0) s += p[i] * std::log2(p[i] / q[i]);
    }
    return s;
}

void scalar_kron_expand(const double* in, std::size_t n, const double* row,
                        std::size_t k, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double v = in[i];
        double* o = out + i * k;
        for (std::size_t j = 0; j < k; ++j) o[j] = v * row[j];
    }
}

const Ops kScalarOps = {
    "scalar",
    scalar_sum_abs_diff,
    scalar_sum_squares,
    scalar_dot,
    scalar_axpy,
    scalar_sum_plog2p,
    scalar_sum_plog2_ratio,
    scalar_kron_expand,
};

bool force_scalar() {
    static const bool forced = std::getenv("WRL_FORCE_SCALAR") != nullptr;
    return forced;
}

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

#if !defined(WRL_HAVE_AVX2_TU)
const Ops* avx2_ops() { return nullptr; }
#endif

const Ops& wide_ops() {
    static const Ops* wide = [] {
        if (force_scalar()) return &kScalarOps;
        if (const Ops* simd = avx2_ops()) return simd;
        return &kScalarOps;
    }();
    return *wide;
}

std::size_t dispatch_threshold() { return 4096; }

namespace {
inline const Ops& pick(std::size_t n) {
    return n >= dispatch_threshold() ? wide_ops() : kScalarOps;
}
}  // namespace

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
    return pick(n).sum_abs_diff(a, b, n);
}

double sum_squares(const double* p, std::size_t n) {
    return pick(n).sum_squares(p, n);
}

double dot(const double* a, const double* b, std::size_t n) {
    return pick(n).dot(a, b, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    pick(n).axpy(a, x, y, n);
}

double sum_plog2p(const double* p, std::size_t n) {
    return pick(n).sum_plog2p(p, n);
}

double sum_plog2_ratio(const double* p, const double* q, std::size_t n) {
    return pick(n).sum_plog2_ratio(p, q, n);
}

void kron_expand(const double* in, std::size_t n, const double* row,
                 std::size_t k, double* out) {
    pick(n * k).kron_expand(in, n, row, k, out);
}

}  // namespace wrl::kernels
