// Derives the 2-dim representation of T(5,5,5) = <x, y | x^5, y^5, (xy)^5>
// carried by V_0(2,2,2,2) at l = 5 and prints it as a representation file.
//
// x and y act by Dehn twists, so each has eigenvalues {t_0, t_2} = {1, z5^3}.
// x is diagonal; y = [[p, 1], [r, s]]. The product xy is a third Dehn twist up
// to a scalar, so its eigenvalues are {c, c z5^{+-3}} with c^2 z5^{+-3} = det.
// Candidates are searched over 20th roots of unity in lexicographic order; the
// first one with y irreducible against x and an invariant Hermitian form of
// signature (1,1) under some Galois embedding is kept.
#include <cstdlib>
#include <iostream>
#include <numeric>

#include "mfkit/cohomology.hpp"
#include "mfkit/error.hpp"

using namespace mfkit;

namespace {

constexpr long kOrder = 20;

CycloScalar z(long k) { return CycloScalar::root_of_unity(k, kOrder); }
CycloScalar conj(const CycloScalar& x) { return x.galois(-1); }

CycloMatrix diag(const CycloScalar& a, const CycloScalar& b) {
  CycloMatrix m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

CycloMatrix conj_transpose(const CycloMatrix& m) {
  CycloMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = conj(m(i, j));
  return t;
}

}  // namespace

int main() {
  try {
    const CycloScalar one(Rational(1), kOrder);
    const CycloScalar t2 = z(12);  // z5^3
    const CycloMatrix x = diag(one, t2);
    const CycloScalar det = t2;  // det x = det y
    const GroupPresentation pres = builtin_presentation("triangle(5,5,5)");

    for (long a = 0; a < kOrder; ++a) {
      for (long b = a + 1; b < kOrder; ++b) {
        if ((a + b) % kOrder != (2 * 12) % kOrder) continue;  // det(xy) = det(x) det(y)
        if ((b - a) % kOrder != 8 && (b - a) % kOrder != 12) continue;  // ratio z5^{+-3}
        const CycloScalar trace_y = one + t2;
        const CycloScalar trace_xy = z(a) + z(b);
        // tr y = p + s and tr xy = p + t2 s.
        const CycloScalar s = (trace_xy - trace_y) / (t2 - one);
        const CycloScalar p = trace_y - s;
        const CycloScalar r = p * s - det;
        if (r.is_zero()) continue;  // reducible: e_1 would be a common eigenvector

        CycloMatrix y(2, 2);
        y(0, 0) = p;
        y(0, 1) = one;
        y(1, 0) = r;
        y(1, 1) = s;

        // Diagonal invariant form diag(1, h) for x; y fixes it iff h = (1 - |p|^2) / |r|^2 and the
        // remaining entries of y* H y = H hold.
        const CycloScalar h = (one - p * conj(p)) / (r * conj(r));
        const CycloMatrix form = diag(one, h);
        if (conj(h) != h || conj_transpose(y) * form * y != form) continue;
        long embedding = 0;
        for (long k = 1; k < kOrder && embedding == 0; ++k)
          if (std::gcd(k, kOrder) == 1 && h.galois(k).to_complex(1).real() < 0) embedding = k;
        if (embedding == 0) continue;

        MatrixRep rep;
        rep.dim = 2;
        rep.order = kOrder;
        rep.generators = {x, y};
        rep.validate();
        const RelatorCheck check = check_relators(pres, rep, RelatorMode::Projective);
        if (!check.ok) continue;
        if (!is_irreducible(pres, rep)) continue;

        std::cerr << "eigenvalues of xy: z20^" << a << ", z20^" << b << "; signature (1,1) under z20 -> z20^"
                  << embedding << "; (xy)^5 = " << check.scalars[2].to_string() << "\n";
        std::cout << to_json(rep).dump(2) << "\n";
        return 0;
      }
    }
    std::cerr << "no candidate found\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return 1;
  }
}
