#include <algorithm>
#include <vector>

#include "pillowfloer/errors.hpp"
#include "pillowfloer/knots.hpp"

namespace pillowfloer {

TwoBridgeSpec::TwoBridgeSpec(long p_, long q_) : p(p_), q(q_) {
  if (p <= 0 || p % 2 == 0) throw InvalidSpec("2-bridge p must be odd and positive");
  if (gcd_long(p, q) != 1) throw InvalidSpec("2-bridge (p,q) must be coprime");
  if (q == 0) throw InvalidSpec("2-bridge q must be nonzero");
}

TorusSpec::TorusSpec(long p_, long q_, long r_, long s_, double eA, double eB)
    : p(p_), q(q_), r(r_), s(s_), epsA(eA), epsB(eB) {
  if (gcd_long(p, q) != 1) throw NonCoprime("torus (p,q) must be coprime");
  if (p * r + q * s != 1) throw InvalidSpec("need p*r + q*s = 1 exactly");
}

int signature_two_bridge(const TwoBridgeSpec& spec) {
  // sigma = -sum_i sign(sin(2 pi i/p)) sign(sin(2 pi i q/p)), exact in Z
  const long p = spec.p;
  long total = 0;
  for (long i = 1; i < p; ++i) {
    const long a = ((2 * i) % (2 * p) + 2 * p) % (2 * p);
    const long b = ((2 * i * spec.q) % (2 * p) + 2 * p) % (2 * p);
    const int sa = (a > 0 && a < p) ? 1 : -1;
    const int sb = (b > 0 && b < p) ? 1 : -1;
    total += sa * sb;
  }
  return static_cast<int>(-total);
}

namespace {

// symmetric congruent diagonalization over Q; returns #positive - #negative
int rational_signature(std::vector<std::vector<Rational>> S) {
  const int n = static_cast<int>(S.size());
  int pos = 0, neg = 0;
  for (int i = 0; i < n; ++i) {
    if (S[i][i].sign() == 0) {
      int jswap = -1, jadd = -1;
      for (int j = i + 1; j < n; ++j) {
        if (S[j][j].sign() != 0 && jswap < 0) jswap = j;
        if (S[i][j].sign() != 0 && jadd < 0) jadd = j;
      }
      if (jswap >= 0) {
        std::swap(S[i], S[jswap]);
        for (int k = 0; k < n; ++k) std::swap(S[k][i], S[k][jswap]);
      } else if (jadd >= 0) {
        for (int k = 0; k < n; ++k) S[i][k] = S[i][k] + S[jadd][k];
        for (int k = 0; k < n; ++k) S[k][i] = S[k][i] + S[k][jadd];
      } else {
        continue;  // zero row/column: null direction
      }
    }
    const Rational piv = S[i][i];
    if (piv.sign() > 0)
      ++pos;
    else if (piv.sign() < 0)
      ++neg;
    for (int j = i + 1; j < n; ++j) {
      if (S[i][j].sign() == 0) continue;
      const Rational f = S[i][j] / piv;
      for (int k = i; k < n; ++k) S[j][k] = S[j][k] - f * S[i][k];
      for (int k = i; k < n; ++k) S[k][j] = S[k][j] - f * S[k][i];
    }
  }
  return pos - neg;
}

}  // namespace

int signature_torus(long p, long q) {
  if (gcd_long(p, q) != 1) throw NonCoprime("signature_torus needs coprime (p,q)");
  if (p < 2 || q < 2) return 0;
  // Seifert form of the fiber surface as the tensor square of the 1-variable
  // forms A_n = I - superdiag; sigma = sign of -(V + V^T)
  const long a = p - 1, b = q - 1, n = a * b;
  auto A = [](long, long i, long j) -> long {
    if (i == j) return 1;
    if (j == i + 1) return -1;
    return 0;
  };
  std::vector<std::vector<Rational>> S(n, std::vector<Rational>(n, Rational(0)));
  for (long i1 = 0; i1 < a; ++i1)
    for (long j1 = 0; j1 < b; ++j1)
      for (long i2 = 0; i2 < a; ++i2)
        for (long j2 = 0; j2 < b; ++j2) {
          const long v = A(a, i1, i2) * A(b, j1, j2);
          const long vt = A(a, i2, i1) * A(b, j2, j1);
          if (v + vt != 0) S[i1 * b + j1][i2 * b + j2] = Rational(-(v + vt));
        }
  return rational_signature(std::move(S));
}

namespace {

std::vector<long> poly_mul(const std::vector<long>& x, const std::vector<long>& y) {
  std::vector<long> r(x.size() + y.size() - 1, 0);
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  return r;
}

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
  std::vector<long> out(num.size() - den.size() + 1, 0);
  for (long i = static_cast<long>(out.size()) - 1; i >= 0; --i) {
    const long c = num[i + den.size() - 1] / den.back();
    out[i] = c;
    for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  for (long v : num)
    if (v != 0) throw InvalidSpec("inexact polynomial division");
  return out;
}

std::vector<long> t_pow_minus_1(long n) {
  std::vector<long> r(n + 1, 0);
  r[0] = -1;
  r[n] = 1;
  return r;
}

}  // namespace

std::vector<long> alexander_polynomial_torus(long p, long q) {
  if (gcd_long(p, q) != 1) throw NonCoprime("alexander_polynomial_torus needs coprime (p,q)");
  // (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))
  const auto num = poly_mul(t_pow_minus_1(p * q), t_pow_minus_1(1));
  const auto den = poly_mul(t_pow_minus_1(p), t_pow_minus_1(q));
  return poly_div_exact(num, den);
}

long alexander_abs_sum_torus(long p, long q) {
  long s = 0;
  for (long c : alexander_polynomial_torus(p, q)) s += std::labs(c);
  return s;
}

}  // namespace pillowfloer
