#include "coliseum/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "coliseum/errors.hpp"

namespace coliseum {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  while (c_.size() > 1 && c_.back() == cplx(0.0)) c_.pop_back();
  if (c_.empty()) c_.push_back(cplx(0.0));
}

cplx Polynomial::operator()(cplx z) const {
  if (std::abs(z.real()) > kSaturation || std::abs(z.imag()) > kSaturation)
    return cplx(kInfSentinel, 0.0);
  cplx acc = c_.back();
  for (int k = static_cast<int>(c_.size()) - 2; k >= 0; --k) {
    acc = acc * z + c_[k];
    if (std::abs(acc.real()) > kSaturation || std::abs(acc.imag()) > kSaturation)
      return cplx(kInfSentinel, 0.0);
  }
  if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
    return cplx(kInfSentinel, 0.0);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() == 1) return Polynomial{};
  std::vector<cplx> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

namespace {

double parse_real(const std::string& s) {
  size_t pos = 0;
  double v = std::stod(s, &pos);
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) throw ConfigError("bad number in polynomial: '" + s + "'");
  return v;
}

cplx parse_coeff(std::string tok) {
  tok.erase(std::remove_if(tok.begin(), tok.end(),
                           [](unsigned char ch) { return std::isspace(ch); }),
            tok.end());
  if (tok.empty()) throw ConfigError("empty coefficient");
  if (tok.back() == 'i') {
    // re+imi or pure imi: split at the sign that separates the two parts
    std::string body = tok.substr(0, tok.size() - 1);
    for (size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        return cplx(parse_real(body.substr(0, k)), parse_real(body.substr(k)));
      }
    }
    if (body.empty() || body == "+") return cplx(0.0, 1.0);
    if (body == "-") return cplx(0.0, -1.0);
    return cplx(0.0, parse_real(body));
  }
  return cplx(parse_real(tok), 0.0);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Polynomial Polynomial::parse(const std::string& text) {
  std::vector<cplx> c;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) c.push_back(parse_coeff(tok));
  if (c.empty()) throw ConfigError("empty polynomial text");
  return Polynomial(std::move(c));
}

std::string Polynomial::to_string() const {
  std::string out;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (k) out += ",";
    out += fmt17(c_[k].real());
    if (c_[k].imag() != 0.0) {
      if (c_[k].imag() > 0) out += "+";
      out += fmt17(c_[k].imag()) + "i";
    }
  }
  return out;
}

Polynomial compose(const Polynomial& g, const Polynomial& h, int degree_cap) {
  long long dg = g.degree(), dh = h.degree();
  if (dg * dh > degree_cap)
    throw DegreeError("composition degree " + std::to_string(dg * dh) +
                      " exceeds cap " + std::to_string(degree_cap));
  // Horner in the polynomial ring: acc = acc*h + c_k
  std::vector<cplx> acc{g.coeffs().back()};
  auto mul_add = [&](const std::vector<cplx>& a, const std::vector<cplx>& b, cplx add) {
    std::vector<cplx> r(a.size() + b.size() - 1, cplx(0.0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    r[0] += add;
    return r;
  };
  for (int k = g.degree() - 1; k >= 0; --k)
    acc = mul_add(acc, h.coeffs(), g.coeffs()[k]);
  return Polynomial(std::move(acc));
}

double spherical_deriv_norm(const Polynomial& g, cplx z) {
  double dz = std::abs(g.derivative()(z));
  double gz = std::abs(g(z));
  return dz * (1.0 + std::norm(z)) / (1.0 + gz * gz);
}

double escape_radius(const std::vector<Polynomial>& gens) {
  double R = 1.0;
  for (const auto& g : gens) {
    double lower = 0.0;
    for (int k = 0; k < g.degree(); ++k) lower += std::abs(g.coeffs()[k]);
    R = std::max(R, (2.0 + lower) / std::abs(g.leading()));
  }
  return R;
}

const char* to_string(OrbitVerdict::Kind k) {
  switch (k) {
    case OrbitVerdict::Escaped: return "Escaped";
    case OrbitVerdict::Trapped: return "Trapped";
    default: return "Undecided";
  }
}

OrbitVerdict filled_julia_membership(const Polynomial& g, cplx z, int n_max, double R) {
  for (int n = 0; n <= n_max; ++n) {
    if (std::abs(z) > R) return {OrbitVerdict::Escaped, n, false, ""};
    if (n == n_max) break;
    z = g(z);
  }
  return {OrbitVerdict::Undecided, n_max, false, ""};
}

}  // namespace coliseum
