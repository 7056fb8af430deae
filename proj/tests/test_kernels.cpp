#include <cmath>
#include <vector>

#include "doctest.h"
#include "smr/core/rng.hpp"
#include "smr/kernels/kernels.hpp"

using namespace smr;
namespace k = smr::kern;

namespace {

std::vector<float> random_vec(Rng& rng, int n, float lo = -2.0f, float hi = 2.0f) {
  std::vector<float> v(n);
  for (auto& x : v) x = static_cast<float>(rng.uniform(lo, hi));
  return v;
}

bool close_abs_rel(float a, float b, float atol, float rtol) {
  return std::fabs(a - b) <= atol + rtol * std::max(std::fabs(a), std::fabs(b));
}

struct BackendGuard {
  k::Backend saved;
  BackendGuard() : saved(k::active_backend()) {}
  ~BackendGuard() { k::set_backend(saved); }
};

}  // namespace

TEST_CASE("kernel backends: simd variants match the scalar reference") {
  if (k::best_supported_backend() == k::Backend::scalar) {
    MESSAGE("no simd backend on this machine; equivalence vacuous");
    return;
  }
  BackendGuard guard;
  Rng rng(20240517);

  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + rng.uniform_int(700);
    auto a = random_vec(rng, n);
    auto b = random_vec(rng, n);
    const float alpha = static_cast<float>(rng.uniform(-1.5, 1.5));

    k::set_backend(k::Backend::scalar);
    const float dot_s = k::dot_f32(a.data(), b.data(), n);
    const float sum_s = k::vsum_f32(a.data(), n);
    std::vector<float> axpy_s = b;
    k::axpy_f32(alpha, a.data(), axpy_s.data(), n);
    std::vector<float> scale_s = a;
    k::scale_f32(scale_s.data(), alpha, n);
    std::vector<float> add_s(n), mul_s(n), elu_s(n), elubwd_s(n);
    k::vadd_f32(a.data(), b.data(), add_s.data(), n);
    k::vmul_f32(a.data(), b.data(), mul_s.data(), n);
    k::elu_fwd_f32(a.data(), elu_s.data(), n);
    k::elu_bwd_f32(elu_s.data(), b.data(), elubwd_s.data(), n);

    k::set_backend(k::Backend::avx2);
    const float dot_v = k::dot_f32(a.data(), b.data(), n);
    const float sum_v = k::vsum_f32(a.data(), n);
    std::vector<float> axpy_v = b;
    k::axpy_f32(alpha, a.data(), axpy_v.data(), n);
    std::vector<float> scale_v = a;
    k::scale_f32(scale_v.data(), alpha, n);
    std::vector<float> add_v(n), mul_v(n), elu_v(n), elubwd_v(n);
    k::vadd_f32(a.data(), b.data(), add_v.data(), n);
    k::vmul_f32(a.data(), b.data(), mul_v.data(), n);
    k::elu_fwd_f32(a.data(), elu_v.data(), n);
    k::elu_bwd_f32(elu_v.data(), b.data(), elubwd_v.data(), n);

    CHECK(close_abs_rel(dot_s, dot_v, 1e-4f, 1e-5f));
    CHECK(close_abs_rel(sum_s, sum_v, 1e-4f, 1e-5f));
    for (int i = 0; i < n; ++i) {
      CHECK(close_abs_rel(axpy_s[i], axpy_v[i], 1e-6f, 1e-6f));
      CHECK(scale_s[i] == scale_v[i]);
      CHECK(add_s[i] == add_v[i]);
      CHECK(mul_s[i] == mul_v[i]);
      CHECK(close_abs_rel(elu_s[i], elu_v[i], 2e-6f, 2e-6f));
      CHECK(close_abs_rel(elubwd_s[i], elubwd_v[i], 2e-6f, 2e-6f));
    }
  }
}

TEST_CASE("kernel backends: gemm variants match the scalar reference") {
  if (k::best_supported_backend() == k::Backend::scalar) return;
  BackendGuard guard;
  Rng rng(77001);

  for (int trial = 0; trial < 25; ++trial) {
    const int M = 1 + rng.uniform_int(40);
    const int N = 1 + rng.uniform_int(64);
    const int K = 1 + rng.uniform_int(48);
    const bool acc = trial % 2 == 0;

    auto A = random_vec(rng, M * K);
    auto B = random_vec(rng, K * N);
    auto Bt = random_vec(rng, N * K);
    auto At = random_vec(rng, K * M);
    auto C0 = random_vec(rng, M * N);

    auto run = [&](k::Backend be) {
      k::set_backend(be);
      std::vector<float> nn = C0, nt = C0, tn = C0;
      k::gemm_nn_f32(M, N, K, A.data(), K, B.data(), N, nn.data(), N, acc);
      k::gemm_nt_f32(M, N, K, A.data(), K, Bt.data(), K, nt.data(), N, acc);
      k::gemm_tn_f32(M, N, K, At.data(), M, B.data(), N, tn.data(), N, acc);
      return std::make_tuple(nn, nt, tn);
    };

    auto [nn_s, nt_s, tn_s] = run(k::Backend::scalar);
    auto [nn_v, nt_v, tn_v] = run(k::Backend::avx2);

    for (int i = 0; i < M * N; ++i) {
      CHECK(close_abs_rel(nn_s[i], nn_v[i], 1e-4f, 2e-5f));
      CHECK(close_abs_rel(nt_s[i], nt_v[i], 1e-4f, 2e-5f));
      CHECK(close_abs_rel(tn_s[i], tn_v[i], 1e-4f, 2e-5f));
    }
  }
}

TEST_CASE("gemm: nn/nt/tn agree with each other on transposed inputs") {
  Rng rng(5150);
  const int M = 7, N = 13, K = 9;
  auto A = random_vec(rng, M * K);
  auto B = random_vec(rng, K * N);

  std::vector<float> Bt(N * K), At(K * M);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < N; ++j) Bt[j * K + i] = B[i * N + j];
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < K; ++j) At[j * M + i] = A[i * K + j];

  std::vector<float> nn(M * N, 0.0f), nt(M * N, 0.0f), tn(M * N, 0.0f);
  k::gemm_nn_f32(M, N, K, A.data(), K, B.data(), N, nn.data(), N, false);
  k::gemm_nt_f32(M, N, K, A.data(), K, Bt.data(), K, nt.data(), N, false);
  k::gemm_tn_f32(M, N, K, At.data(), M, B.data(), N, tn.data(), N, false);

  for (int i = 0; i < M * N; ++i) {
    CHECK(close_abs_rel(nn[i], nt[i], 1e-5f, 1e-5f));
    CHECK(close_abs_rel(nn[i], tn[i], 1e-5f, 1e-5f));
  }
}

TEST_CASE("rng: deterministic streams and fork independence") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  // fork() depends only on (seed, stream), not on draw position.
  Rng c(42);
  c.next_u64();
  c.next_u64();
  Rng f1 = Rng(42).fork(7);
  Rng f2 = c.fork(7);
  for (int i = 0; i < 10; ++i) CHECK(f1.next_u64() == f2.next_u64());

  Rng d(43);
  bool differs = false;
  Rng a2(42);
  for (int i = 0; i < 10; ++i) differs |= a2.next_u64() != d.next_u64();
  CHECK(differs);

  // uniform stays in range, normal has sane moments.
  Rng e(7);
  double acc = 0, acc2 = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = e.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double g = e.normal();
    acc += g;
    acc2 += g * g;
  }
  CHECK(std::fabs(acc / n) < 0.03);
  CHECK(std::fabs(acc2 / n - 1.0) < 0.05);
}
