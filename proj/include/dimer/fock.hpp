#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

// Two-site bosonic Fock space with sites labelled by the primes 2 and 3.
// A basis ket |2^a 3^b> holds a bosons at site 2 and b at site 3; its
// integer label is n = 2^a * 3^b. States are stored per particle-number
// block, with block k spanned by |2^a 3^(k-a)>, a = 0..k.
//
// Fixed conventions used everywhere:
//   * block amplitudes are indexed by the site-2 occupation a, ascending;
//   * all amplitudes are double-precision complex;
//   * a default-constructed BlockVector is the zero vector produced by
//     annihilating the vacuum and acts as an additive identity.

namespace dimer {

using Complex = std::complex<double>;

enum class Site { p2, p3 };

constexpr int site_prime(Site s) { return s == Site::p2 ? 2 : 3; }

struct BasisState {
  int alpha = 0;  // bosons at site 2
  int beta = 0;   // bosons at site 3

  constexpr int particles() const { return alpha + beta; }
  friend constexpr bool operator==(const BasisState&, const BasisState&) = default;
};

// The integer label n = 2^alpha * 3^beta, computed exactly. Formatting
// convenience only; it overflows 64 bits near k = 40 while the exponent
// pair representation does not.
inline std::uint64_t integer_label(const BasisState& s) {
  if (s.alpha < 0 || s.beta < 0) throw std::invalid_argument("integer_label: negative occupation");
  std::uint64_t n = 1;
  constexpr std::uint64_t kMax = std::uint64_t(-1);
  for (int i = 0; i < s.alpha; ++i) {
    if (n > kMax / 2) throw std::overflow_error("integer_label: 2^alpha 3^beta exceeds 64 bits");
    n *= 2;
  }
  for (int i = 0; i < s.beta; ++i) {
    if (n > kMax / 3) throw std::overflow_error("integer_label: 2^alpha 3^beta exceeds 64 bits");
    n *= 3;
  }
  return n;
}

// Amplitudes over one particle-number block; amps[a] multiplies |2^a 3^(k-a)>.
struct BlockVector {
  std::vector<Complex> amps;

  BlockVector() = default;

  static BlockVector zero(int k) {
    if (k < 0) throw std::invalid_argument("BlockVector::zero: negative block");
    BlockVector v;
    v.amps.assign(std::size_t(k) + 1, Complex(0.0, 0.0));
    return v;
  }

  static BlockVector basis(const BasisState& s) {
    BlockVector v = zero(s.particles());
    v.amps[s.alpha] = Complex(1.0, 0.0);
    return v;
  }

  bool empty() const { return amps.empty(); }
  int particles() const { return int(amps.size()) - 1; }

  double norm_sq() const {
    double s = 0.0;
    for (const Complex& a : amps) s += std::norm(a);
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  bool is_finite() const {
    for (const Complex& a : amps)
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    return true;
  }

  BlockVector& operator+=(const BlockVector& o) {
    if (o.empty()) return *this;
    if (empty()) return *this = o;
    if (amps.size() != o.amps.size()) throw std::invalid_argument("BlockVector: block mismatch");
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] += o.amps[i];
    return *this;
  }
  BlockVector& operator-=(const BlockVector& o) {
    if (o.empty()) return *this;
    if (empty()) {
      *this = o;
      for (Complex& a : amps) a = -a;
      return *this;
    }
    if (amps.size() != o.amps.size()) throw std::invalid_argument("BlockVector: block mismatch");
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] -= o.amps[i];
    return *this;
  }
  BlockVector& operator*=(const Complex& c) {
    for (Complex& a : amps) a *= c;
    return *this;
  }
  BlockVector& operator*=(double c) {
    for (Complex& a : amps) a *= c;
    return *this;
  }

  friend BlockVector operator+(BlockVector a, const BlockVector& b) { return a += b; }
  friend BlockVector operator-(BlockVector a, const BlockVector& b) { return a -= b; }
  friend BlockVector operator*(Complex c, BlockVector v) { return v *= c; }
  friend BlockVector operator*(double c, BlockVector v) { return v *= c; }
  friend bool operator==(const BlockVector&, const BlockVector&) = default;
};

// <u, v> with the conjugate on the left argument.
inline Complex inner(const BlockVector& u, const BlockVector& v) {
  if (u.empty() || v.empty()) return Complex(0.0, 0.0);
  if (u.amps.size() != v.amps.size()) throw std::invalid_argument("inner: block mismatch");
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < u.amps.size(); ++i) s += std::conj(u.amps[i]) * v.amps[i];
  return s;
}

// A finitely supported element of the full Fock space: map from particle
// number k to the block living there. Iteration order is ascending k.
struct FockVector {
  std::map<int, BlockVector> blocks;

  static FockVector vacuum() {
    FockVector v;
    v.blocks.emplace(0, BlockVector::basis({0, 0}));
    return v;
  }

  static FockVector single(BlockVector b) {
    FockVector v;
    v.set_block(std::move(b));
    return v;
  }

  // Keys the block by its own particle number, so stored keys cannot
  // disagree with block sizes. Empty blocks are dropped.
  void set_block(BlockVector b) {
    if (b.empty()) return;
    const int k = b.particles();
    blocks[k] = std::move(b);
  }

  const BlockVector* block(int k) const {
    auto it = blocks.find(k);
    return it == blocks.end() ? nullptr : &it->second;
  }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& [k, b] : blocks) s += b.norm_sq();
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  FockVector& operator+=(const FockVector& o) {
    for (const auto& [k, b] : o.blocks) {
      auto it = blocks.find(k);
      if (it == blocks.end())
        blocks.emplace(k, b);
      else
        it->second += b;
    }
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    for (const auto& [k, b] : o.blocks) {
      auto it = blocks.find(k);
      if (it == blocks.end()) {
        BlockVector neg = b;
        neg *= -1.0;
        blocks.emplace(k, std::move(neg));
      } else {
        it->second -= b;
      }
    }
    return *this;
  }
  FockVector& operator*=(const Complex& c) {
    for (auto& [k, b] : blocks) b *= c;
    return *this;
  }
  FockVector& operator*=(double c) {
    for (auto& [k, b] : blocks) b *= c;
    return *this;
  }

  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend bool operator==(const FockVector&, const FockVector&) = default;
};

inline Complex inner(const FockVector& u, const FockVector& v) {
  Complex s(0.0, 0.0);
  for (const auto& [k, b] : u.blocks) {
    const BlockVector* other = v.block(k);
    if (other) s += inner(b, *other);
  }
  return s;
}

// --- elementary ladder operators ---------------------------------------
//
// a_p   |2^a 3^b>  ->  sqrt(occupation) with one boson removed at p
// a_p^+ |2^a 3^b>  ->  sqrt(occupation + 1) with one boson added at p
//
// Zero input (including the empty block) stays zero.

inline BlockVector apply_create(Site site, const BlockVector& v) {
  if (v.empty()) return {};
  const int k = v.particles();
  BlockVector out = BlockVector::zero(k + 1);
  if (site == Site::p2) {
    for (int a = 0; a <= k; ++a) out.amps[a + 1] = std::sqrt(double(a + 1)) * v.amps[a];
  } else {
    for (int a = 0; a <= k; ++a) out.amps[a] = std::sqrt(double(k - a + 1)) * v.amps[a];
  }
  return out;
}

inline BlockVector apply_annihilate(Site site, const BlockVector& v) {
  if (v.empty() || v.particles() == 0) return {};
  const int k = v.particles();
  BlockVector out = BlockVector::zero(k - 1);
  if (site == Site::p2) {
    for (int a = 0; a < k; ++a) out.amps[a] = std::sqrt(double(a + 1)) * v.amps[a + 1];
  } else {
    for (int a = 0; a < k; ++a) out.amps[a] = std::sqrt(double(k - a)) * v.amps[a];
  }
  return out;
}

// c = (a_2 + a_3)/sqrt(2) and d = (a_2 - a_3)/sqrt(2): a second bosonic
// mode pair satisfying the same commutation relations.

inline BlockVector apply_c(const BlockVector& v) {
  if (v.empty() || v.particles() == 0) return {};
  const int k = v.particles();
  constexpr double inv = 1.0 / std::numbers::sqrt2;
  BlockVector out = BlockVector::zero(k - 1);
  for (int a = 0; a < k; ++a)
    out.amps[a] = inv * (std::sqrt(double(a + 1)) * v.amps[a + 1] + std::sqrt(double(k - a)) * v.amps[a]);
  return out;
}

inline BlockVector apply_d(const BlockVector& v) {
  if (v.empty() || v.particles() == 0) return {};
  const int k = v.particles();
  constexpr double inv = 1.0 / std::numbers::sqrt2;
  BlockVector out = BlockVector::zero(k - 1);
  for (int a = 0; a < k; ++a)
    out.amps[a] = inv * (std::sqrt(double(a + 1)) * v.amps[a + 1] - std::sqrt(double(k - a)) * v.amps[a]);
  return out;
}

inline BlockVector apply_c_dagger(const BlockVector& v) {
  if (v.empty()) return {};
  const int k = v.particles();
  constexpr double inv = 1.0 / std::numbers::sqrt2;
  BlockVector out = BlockVector::zero(k + 1);
  for (int a = 0; a <= k; ++a) {
    out.amps[a + 1] += inv * std::sqrt(double(a + 1)) * v.amps[a];
    out.amps[a] += inv * std::sqrt(double(k - a + 1)) * v.amps[a];
  }
  return out;
}

inline BlockVector apply_d_dagger(const BlockVector& v) {
  if (v.empty()) return {};
  const int k = v.particles();
  constexpr double inv = 1.0 / std::numbers::sqrt2;
  BlockVector out = BlockVector::zero(k + 1);
  for (int a = 0; a <= k; ++a) {
    out.amps[a + 1] += inv * std::sqrt(double(a + 1)) * v.amps[a];
    out.amps[a] -= inv * std::sqrt(double(k - a + 1)) * v.amps[a];
  }
  return out;
}

// Number operators act diagonally and exactly: no sqrt round trip.
inline BlockVector apply_number_site(Site site, const BlockVector& v) {
  if (v.empty()) return {};
  const int k = v.particles();
  BlockVector out = v;
  for (int a = 0; a <= k; ++a) out.amps[a] *= double(site == Site::p2 ? a : k - a);
  return out;
}

inline BlockVector apply_number(const BlockVector& v) {
  if (v.empty()) return {};
  BlockVector out = v;
  out *= double(v.particles());
  return out;
}

// Blockwise lowering across a whole Fock vector (block k feeds block k-1).
inline FockVector apply_c_full(const FockVector& v) {
  FockVector out;
  for (const auto& [k, b] : v.blocks) out.set_block(apply_c(b));
  return out;
}

inline FockVector apply_d_full(const FockVector& v) {
  FockVector out;
  for (const auto& [k, b] : v.blocks) out.set_block(apply_d(b));
  return out;
}

}  // namespace dimer
