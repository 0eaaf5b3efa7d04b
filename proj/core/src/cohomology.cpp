#include "mfkit/cohomology.hpp"

#include <cstdlib>
#include <fstream>
#include <regex>

#include "mfkit/error.hpp"

namespace mfkit {

void GroupPresentation::validate() const {
  if (generator_count < 0) throw Error("invalid_presentation", "negative generator count");
  for (std::size_t r = 0; r < relators.size(); ++r)
    for (int letter : relators[r])
      if (letter == 0 || std::abs(letter) > generator_count)
        throw Error("invalid_presentation", "relator " + std::to_string(r) + " uses letter " +
                                                std::to_string(letter) + " outside +-1.." +
                                                std::to_string(generator_count));
}

void MatrixRep::validate() const {
  if (dim < 1) throw Error("invalid_rep", "dimension must be at least 1");
  if (order < 1) throw Error("invalid_rep", "order must be positive");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& m = generators[i];
    if (m.rows() != dim || m.cols() != dim)
      throw Error("invalid_rep", "generator " + std::to_string(i + 1) + " is not " +
                                     std::to_string(dim) + "x" + std::to_string(dim));
    if (order % m.order() != 0)
      throw Error("invalid_rep", "generator " + std::to_string(i + 1) + " has entries outside Q(zeta_" +
                                     std::to_string(order) + ")");
    if (m.determinant().is_zero())
      throw Error("invalid_rep", "generator " + std::to_string(i + 1) + " is not invertible");
  }
}

namespace {

void require_compatible(const Word& word, const MatrixRep& rep) {
  for (int letter : word)
    if (letter == 0 || static_cast<std::size_t>(std::abs(letter)) > rep.generators.size())
      throw InvalidArgument("letter " + std::to_string(letter) + " has no generator matrix");
}

// Matrices and inverses for every generator, lifted to the rep's order.
struct Evaluator {
  std::vector<CycloMatrix> mats;
  std::vector<CycloMatrix> invs;
  std::size_t dim;
  long order;

  explicit Evaluator(const MatrixRep& rep) : dim(rep.dim), order(rep.order) {
    for (const auto& g : rep.generators) {
      mats.push_back(g.lifted(order));
      invs.push_back(mats.back().inverse());
    }
  }
  const CycloMatrix& letter(int l) const {
    return l > 0 ? mats[static_cast<std::size_t>(l - 1)] : invs[static_cast<std::size_t>(-l - 1)];
  }
  CycloMatrix word(const Word& w) const {
    CycloMatrix acc = CycloMatrix::identity(dim, order);
    for (int l : w) acc = acc * letter(l);
    return acc;
  }
  // All Fox derivatives of w, one per generator.
  std::vector<CycloMatrix> fox(const Word& w) const {
    std::vector<CycloMatrix> d(mats.size(), CycloMatrix(dim, dim));
    CycloMatrix prefix = CycloMatrix::identity(dim, order);
    for (int l : w) {
      const std::size_t j = static_cast<std::size_t>(std::abs(l) - 1);
      if (l > 0) {
        d[j] = d[j] + prefix;
      } else {
        d[j] = d[j] - prefix * invs[j];
      }
      prefix = prefix * letter(l);
    }
    return d;
  }
};

}  // namespace

CycloMatrix evaluate_word(const Word& word, const MatrixRep& rep) {
  require_compatible(word, rep);
  return Evaluator(rep).word(word);
}

CycloMatrix fox_derivative(const Word& word, int gen, const MatrixRep& rep) {
  require_compatible(word, rep);
  if (gen < 1 || static_cast<std::size_t>(gen) > rep.generators.size())
    throw InvalidArgument("generator index " + std::to_string(gen) + " out of range");
  return Evaluator(rep).fox(word)[static_cast<std::size_t>(gen - 1)];
}

RelatorCheck check_relators(const GroupPresentation& pres, const MatrixRep& rep, RelatorMode mode) {
  pres.validate();
  if (static_cast<std::size_t>(pres.generator_count) != rep.generators.size())
    throw Error("invalid_rep", "presentation has " + std::to_string(pres.generator_count) +
                                   " generators but the representation has " +
                                   std::to_string(rep.generators.size()));
  const Evaluator ev(rep);
  RelatorCheck out;
  for (std::size_t r = 0; r < pres.relators.size(); ++r) {
    const CycloMatrix value = ev.word(pres.relators[r]);
    CycloScalar s;
    const bool good = mode == RelatorMode::Linear ? value.is_identity() : value.is_scalar(&s);
    if (!good) {
      out.ok = false;
      out.failing_relator = r;
      out.scalars.clear();
      return out;
    }
    out.scalars.push_back(mode == RelatorMode::Linear ? CycloScalar(1) : s);
  }
  return out;
}

CocycleReport h_report(const GroupPresentation& pres, const MatrixRep& rep) {
  rep.validate();
  const RelatorCheck check = check_relators(pres, rep, RelatorMode::Linear);
  if (!check.ok)
    throw Error("not_a_representation",
                "relator " + std::to_string(*check.failing_relator) + " does not map to the identity");

  const Evaluator ev(rep);
  const std::size_t d = rep.dim;
  const std::size_t k = rep.generators.size();
  CocycleReport report;

  if (k == 0) {
    report.dim_H0 = d;
    return report;
  }

  std::vector<CycloMatrix> fixed;
  for (const auto& m : ev.mats) fixed.push_back(m - CycloMatrix::identity(d, rep.order));
  report.dim_H0 = kernel_dimension(vstack(fixed));

  if (pres.relators.empty()) {
    report.dim_Z1 = k * d;
  } else {
    std::vector<CycloMatrix> rows;
    for (const auto& r : pres.relators) rows.push_back(hstack(ev.fox(r)));
    report.dim_Z1 = kernel_dimension(vstack(rows));
  }
  report.dim_B1 = d - report.dim_H0;
  if (report.dim_Z1 < report.dim_B1) throw Error("internal", "coboundaries exceed cocycles");
  report.dim_H1 = report.dim_Z1 - report.dim_B1;
  return report;
}

MatrixRep adjoint(const MatrixRep& rep) {
  const std::size_t d = rep.dim;
  MatrixRep out;
  out.dim = d * d;
  out.order = rep.order;
  for (const auto& g : rep.generators) {
    const CycloMatrix a = g.lifted(rep.order);
    const CycloMatrix ainv = a.inverse();
    CycloMatrix ad(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t l = 0; l < d; ++l)
            if (!a(i, k).is_zero() && !ainv(l, j).is_zero()) ad(i * d + j, k * d + l) = a(i, k) * ainv(l, j);
    out.generators.push_back(std::move(ad));
  }
  return out;
}

bool is_irreducible(const GroupPresentation& pres, const MatrixRep& rep) {
  rep.validate();
  const RelatorCheck check = check_relators(pres, rep, RelatorMode::Projective);
  if (!check.ok)
    throw Error("not_a_representation",
                "relator " + std::to_string(*check.failing_relator) + " does not map to a scalar");
  return h_report(pres, adjoint(rep)).dim_H0 == 1;
}

GroupPresentation builtin_presentation(const std::string& name) {
  static const std::regex triangle(R"(\s*triangle\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
  static const std::regex single(R"(\s*(free|cyclic)\(\s*(\d+)\s*\)\s*)");
  std::smatch m;
  auto number = [&](std::size_t i) {
    const std::string s = m[i].str();
    if (s.size() > 6) throw Error("unknown_presentation", "parameter too large in " + name);
    return std::stoi(s);
  };
  GroupPresentation pres;
  if (std::regex_match(name, m, triangle)) {
    const int p = number(1);
    const int q = number(2);
    const int r = number(3);
    if (p < 1 || q < 1 || r < 1) throw Error("unknown_presentation", "exponents must be positive in " + name);
    pres.generator_count = 2;
    pres.relators.push_back(Word(static_cast<std::size_t>(p), 1));
    pres.relators.push_back(Word(static_cast<std::size_t>(q), 2));
    Word xy;
    for (int i = 0; i < r; ++i) {
      xy.push_back(1);
      xy.push_back(2);
    }
    pres.relators.push_back(std::move(xy));
    return pres;
  }
  if (std::regex_match(name, m, single)) {
    const int n = number(2);
    if (m[1] == "free") {
      pres.generator_count = n;
    } else {
      if (n < 1) throw Error("unknown_presentation", "cyclic order must be positive");
      pres.generator_count = 1;
      pres.relators.push_back(Word(static_cast<std::size_t>(n), 1));
    }
    return pres;
  }
  throw Error("unknown_presentation", "unknown presentation '" + name + "'");
}

MatrixRep trivial_rep(int generator_count, std::size_t dim) {
  MatrixRep rep;
  rep.dim = dim;
  rep.generators.assign(static_cast<std::size_t>(generator_count), CycloMatrix::identity(dim));
  return rep;
}

MatrixRep permutation_rep(const std::vector<std::vector<int>>& perms) {
  MatrixRep rep;
  if (perms.empty()) return rep;
  rep.dim = perms.front().size();
  for (const auto& p : perms) {
    if (p.size() != rep.dim) throw InvalidArgument("permutations act on different sets");
    CycloMatrix m(rep.dim, rep.dim);
    std::vector<bool> hit(rep.dim, false);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto img = static_cast<std::size_t>(p[i]);
      if (p[i] < 0 || img >= rep.dim || hit[img]) throw InvalidArgument("not a permutation");
      hit[img] = true;
      m(img, i) = CycloScalar(1);  // e_i -> e_{p(i)}
    }
    rep.generators.push_back(std::move(m));
  }
  return rep;
}

MatrixRep direct_sum(const MatrixRep& a, const MatrixRep& b) {
  if (a.generators.size() != b.generators.size())
    throw InvalidArgument("direct sum of representations with different generator counts");
  MatrixRep out;
  out.dim = a.dim + b.dim;
  out.order = std::lcm(a.order, b.order);
  for (std::size_t g = 0; g < a.generators.size(); ++g) {
    CycloMatrix m(out.dim, out.dim);
    for (std::size_t i = 0; i < a.dim; ++i)
      for (std::size_t j = 0; j < a.dim; ++j) m(i, j) = a.generators[g](i, j);
    for (std::size_t i = 0; i < b.dim; ++i)
      for (std::size_t j = 0; j < b.dim; ++j) m(a.dim + i, a.dim + j) = b.generators[g](i, j);
    out.generators.push_back(std::move(m));
  }
  return out;
}

nlohmann::json to_json(const CocycleReport& report) {
  return {{"dim_H0", report.dim_H0},
          {"dim_H1", report.dim_H1},
          {"dim_Z1", report.dim_Z1},
          {"dim_B1", report.dim_B1}};
}

nlohmann::json to_json(const MatrixRep& rep) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : rep.generators) gens.push_back(to_json(g.lifted(rep.order)));
  return {{"dim", rep.dim}, {"order", rep.order}, {"generators", gens}};
}

nlohmann::json to_json(const GroupPresentation& pres) {
  return {{"generators", pres.generator_count}, {"relators", pres.relators}};
}

GroupPresentation presentation_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("schema", "/: presentation must be an object");
  if (!j.contains("generators") || !j["generators"].is_number_integer() || j["generators"].get<long>() < 0)
    throw Error("schema", "/generators must be a nonnegative integer");
  if (!j.contains("relators") || !j["relators"].is_array())
    throw Error("schema", "/relators must be an array");
  GroupPresentation pres;
  pres.generator_count = j["generators"].get<int>();
  for (std::size_t r = 0; r < j["relators"].size(); ++r) {
    const auto& w = j["relators"][r];
    if (!w.is_array()) throw Error("schema", "/relators/" + std::to_string(r) + " must be an array");
    Word word;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!w[i].is_number_integer())
        throw Error("schema", "/relators/" + std::to_string(r) + "/" + std::to_string(i) + " must be an integer");
      word.push_back(w[i].get<int>());
    }
    pres.relators.push_back(std::move(word));
  }
  pres.validate();
  return pres;
}

MatrixRep rep_from_json(const nlohmann::json& j, const GroupPresentation* pres, RelatorMode mode) {
  if (!j.is_object()) throw Error("schema", "/: representation must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long>() < 1)
    throw Error("schema", "/dim must be a positive integer");
  if (!j.contains("order") || !j["order"].is_number_integer() || j["order"].get<long>() < 1)
    throw Error("schema", "/order must be a positive integer");
  if (!j.contains("generators") || !j["generators"].is_array())
    throw Error("schema", "/generators must be an array");
  MatrixRep rep;
  rep.dim = j["dim"].get<std::size_t>();
  rep.order = j["order"].get<long>();
  for (std::size_t g = 0; g < j["generators"].size(); ++g) {
    const std::string ptr = "/generators/" + std::to_string(g);
    CycloMatrix m = matrix_from_json(j["generators"][g], ptr);
    if (m.rows() != rep.dim || m.cols() != rep.dim)
      throw Error("schema", ptr + " must be " + std::to_string(rep.dim) + "x" + std::to_string(rep.dim));
    rep.generators.push_back(std::move(m));
  }
  rep.validate();
  if (pres != nullptr) {
    const RelatorCheck check = check_relators(*pres, rep, mode);
    if (!check.ok)
      throw Error("not_a_representation",
                  "relator " + std::to_string(*check.failing_relator) +
                      (mode == RelatorMode::Linear ? " does not map to the identity" : " does not map to a scalar"));
  }
  return rep;
}

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("schema", path + ": " + e.what());
  }
}

}  // namespace

MatrixRep load_rep(const std::string& path, const GroupPresentation* pres, RelatorMode mode) {
  return rep_from_json(read_json_file(path), pres, mode);
}

GroupPresentation load_presentation(const std::string& path) {
  return presentation_from_json(read_json_file(path));
}

}  // namespace mfkit
