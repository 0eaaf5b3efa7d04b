#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfkit/linalg.hpp"

namespace mfkit {

// Letters are signed 1-based generator indices: +i is g_i, -i is g_i^{-1}.
using Word = std::vector<int>;

struct GroupPresentation {
  int generator_count = 0;
  std::vector<Word> relators;

  // Throws Error("invalid_presentation") for out-of-range or zero letters.
  void validate() const;
};

struct MatrixRep {
  std::size_t dim = 1;
  long order = 1;
  std::vector<CycloMatrix> generators;

  // Square dim x dim, invertible, entries in Q(zeta_order). Throws
  // Error("invalid_rep") naming the generator.
  void validate() const;
};

enum class RelatorMode {
  Linear,      // every relator maps to the identity
  Projective,  // every relator maps to a scalar matrix
};

struct RelatorCheck {
  bool ok = true;
  std::optional<std::size_t> failing_relator;  // 0-based
  std::vector<CycloScalar> scalars;            // per relator, when ok
};

CycloMatrix evaluate_word(const Word& word, const MatrixRep& rep);

// Fox derivative d(word)/d(g_gen) evaluated through rep; gen is 1-based.
CycloMatrix fox_derivative(const Word& word, int gen, const MatrixRep& rep);

RelatorCheck check_relators(const GroupPresentation& pres, const MatrixRep& rep, RelatorMode mode);

struct CocycleReport {
  std::size_t dim_Z1 = 0;
  std::size_t dim_B1 = 0;
  std::size_t dim_H1 = 0;
  std::size_t dim_H0 = 0;
};

// Throws Error("not_a_representation") naming the first relator that is not
// the identity.
CocycleReport h_report(const GroupPresentation& pres, const MatrixRep& rep);

// Conjugation action on dim x dim matrices, X -> A X A^{-1}, in the basis
// E_{ij} ordered row-major.
MatrixRep adjoint(const MatrixRep& rep);

// Commutant is the scalars. Accepts projective reps (the adjoint is linear).
bool is_irreducible(const GroupPresentation& pres, const MatrixRep& rep);

// "triangle(p,q,r)", "free(n)" or "cyclic(n)". Throws Error("unknown_presentation").
GroupPresentation builtin_presentation(const std::string& name);

MatrixRep trivial_rep(int generator_count, std::size_t dim = 1);
// Permutation matrices; each perm is 0-based images of 0..n-1.
MatrixRep permutation_rep(const std::vector<std::vector<int>>& perms);
MatrixRep direct_sum(const MatrixRep& a, const MatrixRep& b);

nlohmann::json to_json(const CocycleReport& report);
nlohmann::json to_json(const MatrixRep& rep);
nlohmann::json to_json(const GroupPresentation& pres);

GroupPresentation presentation_from_json(const nlohmann::json& j);
// Schema errors carry a JSON pointer. When pres is given the relators are
// checked in the requested mode and failures name the relator index.
MatrixRep rep_from_json(const nlohmann::json& j, const GroupPresentation* pres = nullptr,
                        RelatorMode mode = RelatorMode::Linear);

MatrixRep load_rep(const std::string& path, const GroupPresentation* pres = nullptr,
                   RelatorMode mode = RelatorMode::Linear);
GroupPresentation load_presentation(const std::string& path);

}  // namespace mfkit
