#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hed/detail/fft.hpp"
#include "hed/errors.hpp"
#include "hed/rng.hpp"

namespace hed {

struct FbmSpec {
  double hurst = 0.5;
  int length = 0;
  double scale = 1.0;  // sigma
  std::uint64_t seed = 0;
};

// Autocovariance of fractional Gaussian noise:
//   gamma(k) = (sigma^2 / 2) (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}).
inline double fgn_autocov(double hurst, double scale, int lag) {
  const double k = static_cast<double>(std::abs(lag));
  const double two_h = 2.0 * hurst;
  return 0.5 * scale * scale *
         (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
          std::pow(std::abs(k - 1.0), two_h));
}

namespace detail {

inline void validate_fbm_spec(const FbmSpec& spec) {
  if (!(spec.hurst > 0.0 && spec.hurst < 1.0)) {
    throw InvalidParams("fbm invariant violated: hurst must lie in (0, 1)");
  }
  if (spec.length < 1) {
    throw InvalidParams("fbm invariant violated: length must be >= 1");
  }
  if (!(spec.scale > 0.0)) {
    throw InvalidParams("fbm invariant violated: scale must be > 0");
  }
}

// Davies-Harte circulant embedding. Returns false (leaving out untouched)
// when the embedding spectrum has a materially negative eigenvalue.
inline bool fgn_circulant(const FbmSpec& spec, std::vector<double>& out) {
  const std::size_t n = static_cast<std::size_t>(spec.length);
  const std::size_t m = std::max<std::size_t>(next_pow2(2 * (n - 1)), 2);

  std::vector<std::complex<double>> row(m);
  for (std::size_t j = 0; j <= m / 2; ++j) {
    row[j] = fgn_autocov(spec.hurst, spec.scale, static_cast<int>(j));
  }
  for (std::size_t j = m / 2 + 1; j < m; ++j) {
    row[j] = row[m - j];
  }
  fft(row);

  double max_eig = 0.0;
  for (const auto& e : row) max_eig = std::max(max_eig, e.real());
  for (const auto& e : row) {
    if (e.real() < -1e-10 * max_eig) return false;
  }

  Rng rng(spec.seed);
  std::vector<std::complex<double>> coeff(m);
  const double inv_m = 1.0 / static_cast<double>(m);
  coeff[0] = std::sqrt(std::max(0.0, row[0].real()) * inv_m) * rng.normal();
  for (std::size_t j = 1; j < m / 2; ++j) {
    const double s = std::sqrt(std::max(0.0, row[j].real()) * inv_m * 0.5);
    const double re = rng.normal();
    const double im = rng.normal();
    coeff[j] = std::complex<double>(s * re, s * im);
    coeff[m - j] = std::conj(coeff[j]);
  }
  coeff[m / 2] = std::sqrt(std::max(0.0, row[m / 2].real()) * inv_m) * rng.normal();

  fft(coeff);
  out.resize(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = coeff[k].real();
  return true;
}

// Covariance square-root fallback: Cholesky of the Toeplitz covariance.
// O(n^3); only reached when the embedding spectrum fails.
inline std::vector<double> fgn_cholesky(const FbmSpec& spec) {
  const std::size_t n = static_cast<std::size_t>(spec.length);
  std::vector<double> chol(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double v = fgn_autocov(spec.hurst, spec.scale, static_cast<int>(i - j));
      for (std::size_t k = 0; k < j; ++k) v -= chol[i * n + k] * chol[j * n + k];
      if (i == j) {
        if (!(v > 0.0)) {
          throw EmbeddingFailure(
              "fgn covariance is not positive definite; both the circulant "
              "embedding and the square-root factorization failed");
        }
        chol[i * n + j] = std::sqrt(v);
      } else {
        chol[i * n + j] = v / chol[j * n + j];
      }
    }
  }
  Rng rng(spec.seed);
  std::vector<double> z(n);
  for (auto& x : z) x = rng.normal();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += chol[i * n + j] * z[j];
    out[i] = acc;
  }
  return out;
}

}  // namespace detail

// Stationary fractional Gaussian noise (the increment process of fBm) with
// the exact target autocovariance. Circulant embedding with a spectral
// nonnegativity check; falls back to a covariance square-root factorization
// if the embedding fails.
inline std::vector<double> fbm_sample(const FbmSpec& spec) {
  detail::validate_fbm_spec(spec);
  if (spec.length == 1) {
    Rng rng(spec.seed);
    return {spec.scale * rng.normal()};
  }
  std::vector<double> out;
  if (detail::fgn_circulant(spec, out)) {
    return out;
  }
  return detail::fgn_cholesky(spec);
}

}  // namespace hed
