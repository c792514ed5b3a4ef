#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>

namespace gampc {

// Element of GF(p). The modulus is a per-thread run parameter so that Monte
// Carlo trials over tiny fields and correctness runs over 2^61-1 can coexist.
class Fp {
 public:
  static constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

  Fp() = default;
  explicit Fp(std::uint64_t v) : v_(v % p_) {}
  static Fp from_signed(std::int64_t v);

  std::uint64_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  static std::uint64_t modulus() { return p_; }
  // Throws std::invalid_argument for p < 2, p > 2^61-1 or composite p.
  static void set_modulus(std::uint64_t p);

  // RAII override of the modulus for a scope (restores the previous one).
  class Scope {
   public:
    explicit Scope(std::uint64_t p) : saved_(p_) { set_modulus(p); }
    ~Scope() { p_ = saved_; }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    std::uint64_t saved_;
  };

  friend Fp operator+(Fp a, Fp b) {
    std::uint64_t s = a.v_ + b.v_;
    if (s >= p_) s -= p_;
    return raw(s);
  }
  friend Fp operator-(Fp a, Fp b) { return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + p_ - b.v_); }
  friend Fp operator*(Fp a, Fp b) {
    return raw(static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.v_) * b.v_) % p_));
  }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

  Fp pow(std::uint64_t e) const;
  // Throws std::domain_error on zero.
  Fp inv() const;

  template <class Rng>
  static Fp random(Rng& rng) {
    std::uniform_int_distribution<std::uint64_t> d(0, p_ - 1);
    return raw(d(rng));
  }
  template <class Rng>
  static Fp random_nonzero(Rng& rng) {
    std::uniform_int_distribution<std::uint64_t> d(1, p_ - 1);
    return raw(d(rng));
  }

 private:
  static Fp raw(std::uint64_t v) {
    Fp f;
    f.v_ = v;
    return f;
  }
  static thread_local std::uint64_t p_;
  std::uint64_t v_ = 0;
};

std::ostream& operator<<(std::ostream& os, Fp x);

bool is_prime_u64(std::uint64_t p);

}  // namespace gampc
