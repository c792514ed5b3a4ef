#include "gampc/core/field.hpp"

namespace gampc {

thread_local std::uint64_t Fp::p_ = Fp::kMersenne61;

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

// Deterministic Miller-Rabin; these bases are exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (p % sp == 0) return p == sp;
  }
  std::uint64_t d = p - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, p);
    if (x == 1 || x == p - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, p);
      if (x == p - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

void Fp::set_modulus(std::uint64_t p) {
  if (p < 2 || p > kMersenne61 || !is_prime_u64(p))
    throw std::invalid_argument("field modulus must be a prime in [2, 2^61-1]");
  p_ = p;
}

Fp Fp::from_signed(std::int64_t v) {
  auto m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return raw(static_cast<std::uint64_t>(r));
}

Fp Fp::pow(std::uint64_t e) const { return raw(powmod(v_, e, p_)); }

Fp Fp::inv() const {
  if (v_ == 0) throw std::domain_error("inverse of zero");
  return pow(p_ - 2);
}

std::ostream& operator<<(std::ostream& os, Fp x) { return os << x.value(); }

}  // namespace gampc
