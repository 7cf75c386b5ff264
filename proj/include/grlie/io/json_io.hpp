#pragma once

// JSON readers and writers for presentations, group specs and reports.
// Requires the single-header nlohmann json.hpp on the include path.

#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "grlie/catalog/catalog.hpp"
#include "grlie/error.hpp"
#include "grlie/hilbert/hilbert.hpp"
#include "grlie/liepres/liepres.hpp"
#include "grlie/pgroup/pgroup.hpp"
#include "grlie/restrictify/restricted.hpp"
#include "grlie/verify/verify.hpp"

namespace grlie::io {

using json = nlohmann::ordered_json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad field '") + key + "': " + e.what());
  }
}

template <class T>
T field_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

// ---------------------------------------------------------------------------
// Presentations

/// Either an ordinary or a restricted presentation (relators using P(...)).
struct PresentationFile {
  Alphabet alphabet;
  std::vector<std::string> relators;

  bool restricted() const {
    for (auto& r : relators)
      if (parse_lie_expression(r)->uses_pmap()) return true;
    return false;
  }
  LiePresentation lie() const { return LiePresentation::parse(alphabet, relators); }
  RestrictedPresentation restricted_presentation() const { return RestrictedPresentation::parse(alphabet, relators); }
};

inline GroupSpec group_spec_from_json(const json& j);

/// `{"generators": [{"name": "a", "degree": 1}, ...], "relators": [...]}`;
/// generators may also be plain names. A catalog spec with a "family" key is
/// accepted and expanded.
inline PresentationFile presentation_from_json(const json& j) {
  PresentationFile f;
  if (j.contains("family")) {
    GroupSpec s = group_spec_from_json(j);
    if (s.family == "labute_mild") {
      auto rp = labute_mild(s.n, s.p);
      return {rp.alphabet, rp.relator_text};
    }
    LiePresentation lp = presentation_for(s);
    return {lp.alphabet, lp.relator_text};
  }
  if (!j.contains("generators") || !j.at("generators").is_array()) throw InputError("presentation needs 'generators'");
  for (auto& g : j.at("generators")) {
    if (g.is_string()) {
      f.alphabet.names.push_back(g.get<std::string>());
      f.alphabet.weights.push_back(1);
    } else {
      f.alphabet.names.push_back(field<std::string>(g, "name"));
      f.alphabet.weights.push_back(field_or<int>(g, "degree", 1));
    }
  }
  f.alphabet.validate();
  f.relators = field_or<std::vector<std::string>>(j, "relators", {});
  return f;
}

// ---------------------------------------------------------------------------
// Group specs

inline std::vector<std::pair<std::string, std::string>> edges_from_json(const json& j) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw InputError("edges must be pairs of vertex names");
    out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return out;
}

inline GroupSpec group_spec_from_json(const json& j) {
  const std::string fam = field<std::string>(j, "family");
  GroupSpec s;
  s.family = fam;
  if (fam == "free") {
    s.rank = field<int>(j, "rank");
  } else if (fam == "surface") {
    s.genus = field<int>(j, "genus");
  } else if (fam == "one_relator") {
    s.generators = field<std::vector<std::string>>(j, "generators");
    s.relator_word = field<std::string>(j, "relator");
  } else if (fam == "raag") {
    s.vertices = field<std::vector<std::string>>(j, "vertices");
    s.edges = edges_from_json(j.contains("edges") ? j.at("edges") : json::array());
  } else if (fam == "pure_braid") {
    s.strands = field<int>(j, "strands");
  } else if (fam == "supersolvable_exponents" || fam == "almost_direct" || fam == "free_product") {
    s.exponents = field<std::vector<int>>(j, "exponents");
  } else if (fam == "heisenberg") {
    // presentation only
  } else if (fam == "heisenberg_zp") {
    s = heisenberg_zp(field<std::uint32_t>(j, "p"), field<std::int64_t>(j, "modulus"));
  } else if (fam == "labute_mild") {
    s.n = field<int>(j, "n");
    s.p = field<std::uint32_t>(j, "p");
  } else if (fam == "finite_matrix") {
    s.modulus = field<std::int64_t>(j, "modulus");
    s.dim = field<int>(j, "dim");
    s.matrices = field<std::vector<IntMatrix>>(j, "generators");
  } else if (fam == "unitriangular") {
    s = unitriangular_spec(field<int>(j, "dim"), field<std::int64_t>(j, "modulus"));
  } else if (fam == "cayley_table") {
    s.table = field<std::vector<std::vector<std::uint32_t>>>(j, "table");
    s.table_generators = field_or<std::vector<std::uint32_t>>(j, "generators", {});
  } else if (fam == "abelian") {
    s = abelian_spec(field<std::vector<std::uint32_t>>(j, "orders"));
  } else if (fam == "quaternion") {
    s = quaternion_spec();
  } else {
    throw InputError("unknown family '" + fam + "'");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Writers

inline json dims_json(const std::vector<std::size_t>& d) {
  json out = json::object();
  for (std::size_t n = 0; n < d.size(); ++n) out[std::to_string(n + 1)] = d[n];
  return out;
}

inline json dims_json(const DimensionTable& t) {
  json out = json::object();
  for (std::size_t n = 1; n <= t.max_degree(); ++n) {
    const BigInt v = t.at(n);
    if (v <= BigInt(std::numeric_limits<long long>::max())) out[std::to_string(n)] = static_cast<long long>(v);
    else out[std::to_string(n)] = v.str();
  }
  return out;
}

inline json series_json(const PowerSeriesZ& s) {
  json out = json::array();
  for (std::size_t i = 0; i <= s.order(); ++i) {
    const BigInt& v = s[i];
    if (v <= BigInt(std::numeric_limits<long long>::max()) && v >= BigInt(std::numeric_limits<long long>::min()))
      out.push_back(static_cast<long long>(v));
    else
      out.push_back(v.str());
  }
  return out;
}

inline json vec_json(const FpVec& v) {
  json out = json::array();
  for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back({it->first, it->second});
  return out;
}

/// Basis labels and nonzero structure constants.
inline json algebra_json(const RestrictedGLA& A, bool tables) {
  json out;
  out["p"] = A.p();
  out["dims"] = dims_json(A.dims());
  json basis = json::object();
  for (int n = 1; n <= A.max_degree(); ++n) {
    json labels = json::array();
    for (auto& l : A.labels(n)) labels.push_back(l.text);
    basis[std::to_string(n)] = labels;
  }
  out["basis"] = basis;
  if (!tables) return out;
  json brackets = json::array();
  for (int i = 1; i <= A.max_degree(); ++i)
    for (int j = i; i + j <= A.max_degree(); ++j)
      for (std::size_t a = 0; a < A.dim(i); ++a)
        for (std::size_t b = (i == j ? a + 1 : 0); b < A.dim(j); ++b) {
          const FpVec& v = A.bracket_basis(i, a, j, b);
          if (v.empty()) continue;
          brackets.push_back({{"left", {i, a}}, {"right", {j, b}}, {"value", vec_json(v)}});
        }
  out["brackets"] = brackets;
  json pmap = json::array();
  for (int n = 1; static_cast<long>(n) * A.p() <= A.max_degree(); ++n)
    for (std::size_t a = 0; a < A.dim(n); ++a) {
      const FpVec& v = A.pmap_basis(n, a);
      if (v.empty()) continue;
      pmap.push_back({{"arg", {n, a}}, {"value", vec_json(v)}});
    }
  out["pmap"] = pmap;
  return out;
}

inline json report_json(const VerificationReport& r) {
  json out;
  out["kind"] = r.kind;
  out["description"] = r.description;
  out["p"] = r.p;
  out["N"] = r.N;
  json rows = json::array();
  for (auto& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"predicted", row.predicted},
                    {"oracle", row.oracle},
                    {"kernel", row.kernel},
                    {"verdict", row.verdict}});
  out["degrees"] = rows;
  out["faithful_range"] = r.faithful_range;
  if (r.homomorphism.performed) {
    const auto& h = r.homomorphism;
    out["homomorphism"] = {{"well_defined", h.well_defined},
                           {"brackets", h.brackets},
                           {"pmap", h.pmap},
                           {"surjective_degrees", h.surjective_degrees}};
    if (!h.failure.empty()) out["homomorphism"]["failure"] = h.failure;
  }
  out["passed"] = r.passed;
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

inline json subgroup_sizes_json(const std::vector<Subgroup>& D) {
  json out = json::array();
  for (std::size_t n = 1; n < D.size(); ++n) out.push_back(D[n].size());
  return out;
}

}  // namespace grlie::io
