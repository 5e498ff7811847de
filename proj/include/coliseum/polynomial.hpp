#pragma once
#include <complex>
#include <string>
#include <vector>

namespace coliseum {

using cplx = std::complex<double>;

// Magnitudes beyond this are treated as "at infinity"; evaluation saturates
// instead of overflowing to inf/nan.
inline constexpr double kSaturation = 1e150;
inline constexpr double kInfSentinel = 1e300;

class Polynomial {
 public:
  Polynomial() : c_{cplx(0.0)} {}
  explicit Polynomial(std::vector<cplx> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx leading() const { return c_.back(); }

  cplx operator()(cplx z) const;

  Polynomial derivative() const;

  bool operator==(const Polynomial& o) const { return c_ == o.c_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // Comma-separated ascending coefficients, each `re` or `re+imi`.
  static Polynomial parse(const std::string& text);
  std::string to_string() const;

 private:
  std::vector<cplx> c_;
};

// g(h(z)); throws DegreeError beyond degree_cap.
Polynomial compose(const Polynomial& g, const Polynomial& h, int degree_cap = 4096);

// |g'(z)| (1+|z|^2) / (1+|g(z)|^2)
double spherical_deriv_norm(const Polynomial& g, cplx z);

// R with |z| >= R  =>  |h_j(z)| >= 2|z| for every generator.
double escape_radius(const std::vector<Polynomial>& gens);

struct OrbitVerdict {
  enum Kind { Escaped, Trapped, Undecided };
  Kind kind = Undecided;
  int steps = 0;
  bool budget_exceeded = false;
  std::string witness_word;
};

const char* to_string(OrbitVerdict::Kind k);

OrbitVerdict filled_julia_membership(const Polynomial& g, cplx z, int n_max, double R);

}  // namespace coliseum
