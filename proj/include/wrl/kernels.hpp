#pragma once

// Data-parallel reduction kernels behind the probability and leakage code.
// Scalar reference implementations plus AVX2 variants selected at runtime.
//
// Inputs shorter than dispatch_threshold() always take the scalar path, so
// information quantities on small alphabets accumulate in plain left-to-right
// order (adding explicit zero terms never perturbs a partial sum there).

#include <cstddef>

namespace wrl::kernels {

struct Ops {
    const char* name;
    // sum_i |a[i] - b[i]|
    double (*sum_abs_diff)(const double* a, const double* b, std::size_t n);
    // sum_i p[i]^2
    double (*sum_squares)(const double* p, std::size_t n);
    // sum_i a[i]*b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y[i] += a*x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // sum_i p[i]*log2(p[i]) over entries with p[i] > 0
    double (*sum_plog2p)(const double* p, std::size_t n);
    // sum_i p[i]*log2(p[i]/q[i]) over entries with p[i] > 0
    double (*sum_plog2_ratio)(const double* p, const double* q, std::size_t n);
    // out[i*k + j] = in[i] * row[j]
    void (*kron_expand)(const double* in, std::size_t n, const double* row,
                        std::size_t k, double* out);
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when unsupported by CPU or build

// Backend that dispatched calls use for large inputs. Honors WRL_FORCE_SCALAR.
const Ops& wide_ops();
std::size_t dispatch_threshold();

double sum_abs_diff(const double* a, const double* b, std::size_t n);
double sum_squares(const double* p, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
double sum_plog2p(const double* p, std::size_t n);
double sum_plog2_ratio(const double* p, const double* q, std::size_t n);
void kron_expand(const double* in, std::size_t n, const double* row,
                 std::size_t k, double* out);

}  // namespace wrl::kernels
