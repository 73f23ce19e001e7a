#pragma once

#include "blowup/poly.hpp"
#include "blowup/rational.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace blowup {

// All integrals below are in units of |S^{d-1}|, so every value is rational.

enum class Domain { ball, sphere };

Rational monomial_moment(Domain dom, int d, const Exponents& alpha);
Rational integrate_poly(Domain dom, int d, const Poly& p);

std::vector<std::string> xi_vars(int d);

struct PolyField {
  int d = 9;
  Poly u1, u2;
};

PolyField make_field(int d, const Poly& u1, const Poly& u2);
PolyField make_field(int d, const Rational& c1, const Rational& c2); // constant pair

// sum over all index tuples of  d^order p . d^order q, integrated over the domain
Rational contract(const Poly& p, const Poly& q, int order, Domain dom, int d);

Poly laplacian(const Poly& p);
Poly euler(const Poly& p); // xi . grad

// (L u)_1 = -xi.grad u1 - 2 u1 + u2,  (L u)_2 = Lap u1 - xi.grad u2 - 3 u2
PolyField apply_Ltilde(const PolyField& u);

// the j-th part of the adapted inner product, j >= 1
Rational hk_part(const PolyField& u, const PolyField& v, int j);
// sum of parts 1..k; k >= 3
Rational hk_inner(const PolyField& u, const PolyField& v, int k);
// standard H^k(B) x H^{k-1}(B) norm squared
Rational standard_norm2(const PolyField& u, int k);

struct GapResult {
  Rational gap;       // Re(L u | u)_k + c_d |u|_k^2
  Rational inner;     // Re(L u | u)_k
  Rational norm2;     // |u|_k^2
  Rational c;         // 1/2 for d = 9, 3/2 for d = 7
  bool exploratory = false;
};

Rational dissipativity_constant(int d);
GapResult dissipativity_gap(const PolyField& u, int k);

// |u|_{H_k}^2 / |u|_standard^2; throws on the zero field
Rational norm_equivalence_ratio(const PolyField& u, int k);

// sparse random pair: up to `terms` monomials per component, total degree <= max_degree,
// coefficients p/q with |p| <= 9, 1 <= q <= 6
PolyField random_field(int d, int max_degree, std::mt19937_64& rng, int terms = 6);

struct CorpusReport {
  int d = 9, k = 5, count = 0, max_degree = 6;
  std::uint64_t seed = 0;
  Rational max_gap;
  double ratio_min = 0, ratio_max = 0;
  std::vector<int> failures; // indices with gap > 0
  bool exploratory = false;
};

CorpusReport dissipativity_corpus(int d, int k, int count, std::uint64_t seed, int max_degree = 6);

} // namespace blowup
