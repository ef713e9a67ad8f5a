// Compiled with -mavx2 (and without -mfma) only.
#include <immintrin.h>

#include "frontcap/simd.hpp"

namespace frontcap::simd::detail {

namespace {

constexpr std::size_t W = 4;

void minmod3(const double* prev, const double* cur, const double* next, std::size_t n, double dx, double* out) {
    const __m256d vdx = _mm256_set1_pd(dx);
    const __m256d v2dx = _mm256_set1_pd(2.0 * dx);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + W <= n; k += W) {
        const __m256d p = _mm256_loadu_pd(prev + k);
        const __m256d c = _mm256_loadu_pd(cur + k);
        const __m256d q = _mm256_loadu_pd(next + k);
        const __m256d fwd = _mm256_div_pd(_mm256_sub_pd(q, c), vdx);
        const __m256d ctr = _mm256_div_pd(_mm256_sub_pd(q, p), v2dx);
        const __m256d bwd = _mm256_div_pd(_mm256_sub_pd(c, p), vdx);
        const __m256d pos = _mm256_and_pd(_mm256_and_pd(_mm256_cmp_pd(fwd, zero, _CMP_GT_OQ),
                                                        _mm256_cmp_pd(ctr, zero, _CMP_GT_OQ)),
                                          _mm256_cmp_pd(bwd, zero, _CMP_GT_OQ));
        const __m256d neg = _mm256_and_pd(_mm256_and_pd(_mm256_cmp_pd(fwd, zero, _CMP_LT_OQ),
                                                        _mm256_cmp_pd(ctr, zero, _CMP_LT_OQ)),
                                          _mm256_cmp_pd(bwd, zero, _CMP_LT_OQ));
        const __m256d lo = _mm256_min_pd(_mm256_min_pd(fwd, ctr), bwd);
        const __m256d hi = _mm256_max_pd(_mm256_max_pd(fwd, ctr), bwd);
        const __m256d s = _mm256_or_pd(_mm256_and_pd(pos, lo), _mm256_and_pd(neg, hi));
        _mm256_storeu_pd(out + k, s);
    }
    if (k < n) scalar_table().minmod3(prev + k, cur + k, next + k, n - k, dx, out + k);
}

void edges(const double* rho, const double* slope, std::size_t n, double h, double* plus, double* minus) {
    const __m256d vh = _mm256_set1_pd(h);
    std::size_t k = 0;
    for (; k + W <= n; k += W) {
        const __m256d r = _mm256_loadu_pd(rho + k);
        const __m256d d = _mm256_mul_pd(vh, _mm256_loadu_pd(slope + k));
        _mm256_storeu_pd(plus + k, _mm256_add_pd(r, d));
        _mm256_storeu_pd(minus + k, _mm256_sub_pd(r, d));
    }
    if (k < n) scalar_table().edges(rho + k, slope + k, n - k, h, plus + k, minus + k);
}

void upwind_flux(const double* left, const double* right, const double* u, std::size_t n, double* flux) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + W <= n; k += W) {
        const __m256d v = _mm256_loadu_pd(u + k);
        const __m256d up = _mm256_and_pd(v, _mm256_cmp_pd(v, zero, _CMP_GT_OQ));
        const __m256d dn = _mm256_and_pd(v, _mm256_cmp_pd(v, zero, _CMP_LT_OQ));
        const __m256d f = _mm256_add_pd(_mm256_mul_pd(up, _mm256_loadu_pd(left + k)),
                                        _mm256_mul_pd(dn, _mm256_loadu_pd(right + k)));
        _mm256_storeu_pd(flux + k, f);
    }
    if (k < n) scalar_table().upwind_flux(left + k, right + k, u + k, n - k, flux + k);
}

void flux_divergence(const double* flux, std::size_t n, double lambda, double* out) {
    const __m256d vl = _mm256_set1_pd(lambda);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(flux + i + 1), _mm256_loadu_pd(flux + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vl, d));
    }
    if (i < n) scalar_table().flux_divergence(flux + i, n - i, lambda, out + i);
}

void add(const double* a, const double* b, std::size_t n, double* out) {
    std::size_t i = 0;
    for (; i + W <= n; i += W)
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    if (i < n) scalar_table().add(a + i, b + i, n - i, out + i);
}

void implicit_growth_update(const double* rho, const double* div, const double* growth, std::size_t n, double dt,
                            double* out) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d vdt = _mm256_set1_pd(dt);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const __m256d num = _mm256_sub_pd(_mm256_loadu_pd(rho + i), _mm256_loadu_pd(div + i));
        const __m256d den = _mm256_sub_pd(one, _mm256_mul_pd(vdt, _mm256_loadu_pd(growth + i)));
        _mm256_storeu_pd(out + i, _mm256_div_pd(num, den));
    }
    if (i < n) scalar_table().implicit_growth_update(rho + i, div + i, growth + i, n - i, dt, out + i);
}

void scaled_difference(const double* hi, const double* lo, std::size_t n, double scale, double* out) {
    const __m256d vs = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(hi + i), _mm256_loadu_pd(lo + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vs, d));
    }
    if (i < n) scalar_table().scaled_difference(hi + i, lo + i, n - i, scale, out + i);
}

// One row per lane; each lane accumulates its own row in storage order, so
// the result matches the scalar loop exactly.
void csr_matvec(std::size_t rows, const std::int32_t* row_ptr, const std::int32_t* col, const double* val,
                const double* x, double* y) {
    std::size_t r = 0;
    for (; r + W <= rows; r += W) {
        const __m128i start = _mm_loadu_si128(reinterpret_cast<const __m128i*>(row_ptr + r));
        const __m128i stop = _mm_loadu_si128(reinterpret_cast<const __m128i*>(row_ptr + r + 1));
        const __m128i len = _mm_sub_epi32(stop, start);
        alignas(16) std::int32_t lens[W];
        _mm_store_si128(reinterpret_cast<__m128i*>(lens), len);
        std::int32_t max_len = lens[0];
        for (std::size_t l = 1; l < W; ++l) max_len = lens[l] > max_len ? lens[l] : max_len;

        __m256d acc = _mm256_setzero_pd();
        for (std::int32_t k = 0; k < max_len; ++k) {
            const __m128i vk = _mm_set1_epi32(k);
            const __m128i live32 = _mm_cmpgt_epi32(len, vk);
            const __m256d live = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(live32));
            const __m128i pos = _mm_add_epi32(start, vk);
            const __m128i idx = _mm_mask_i32gather_epi32(_mm_setzero_si128(), col, pos, live32, 4);
            const __m256d a = _mm256_mask_i32gather_pd(_mm256_setzero_pd(), val, pos, live, 8);
            const __m256d b = _mm256_mask_i32gather_pd(_mm256_setzero_pd(), x, idx, live, 8);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(a, b));
        }
        _mm256_storeu_pd(y + r, acc);
    }
    if (r < rows) {
        for (; r < rows; ++r) {
            double sum = 0.0;
            for (std::int32_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) sum = sum + val[k] * x[col[k]];
            y[r] = sum;
        }
    }
}

constexpr KernelTable kTable{
    "avx2", minmod3, edges, upwind_flux, flux_divergence, add, implicit_growth_update, scaled_difference, csr_matvec,
};

}  // namespace

const KernelTable& avx2_table() noexcept { return kTable; }

}  // namespace frontcap::simd::detail
