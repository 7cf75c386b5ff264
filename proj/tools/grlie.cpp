// grlie command-line frontend: JSON on stdout, optional tables on stderr.

#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grlie/catalog/catalog.hpp"
#include "grlie/error.hpp"
#include "grlie/freelie/freelie.hpp"
#include "grlie/hilbert/hilbert.hpp"
#include "grlie/io/json_io.hpp"
#include "grlie/liepres/liepres.hpp"
#include "grlie/pgroup/pgroup.hpp"
#include "grlie/restrictify/restricted.hpp"
#include "grlie/verify/verify.hpp"

using namespace grlie;
using grlie::io::json;

namespace {

enum Exit { kOk = 0, kInput = 1, kVerification = 2, kBudget = 3 };

std::vector<long long> parse_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad integer list entry '" + item + "'");
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::uint32_t checked_prime(long long p) {
  if (p < 2 || p > 46337 || !is_prime(static_cast<std::uint64_t>(p))) throw InputError("p must be a prime below 46337");
  return static_cast<std::uint32_t>(p);
}

void require_positive(int N, const char* what) {
  if (N < 1) throw InputError(std::string(what) + " must be >= 1");
}

// Tables for --pretty; purely cosmetic.
void print_dims(std::ostream& os, const json& dims, const std::string& title) {
  os << title << "\n  n  dim\n";
  for (auto& [k, v] : dims.items()) os << "  " << k << "  " << v.dump() << "\n";
}

void print_report(std::ostream& os, const json& r) {
  os << r["kind"].get<std::string>() << (r["passed"].get<bool>() ? "  PASSED" : "  FAILED") << "\n";
  os << "  n  predicted  oracle  kernel  verdict\n";
  for (auto& row : r["degrees"])
    os << "  " << row["n"] << "  " << row["predicted"] << "  " << row["oracle"] << "  " << row["kernel"] << "  "
       << row["verdict"].get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grlie: graded Lie algebras, restrictification and Zassenhaus oracles"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Print human-readable tables to stderr");

  std::function<json()> run;
  std::function<void(const json&)> show;

  // witt / lyndon
  int k = 2, n = 5;
  auto* witt = app.add_subcommand("witt", "Ranks of the free Lie algebra, degrees 1..n");
  witt->add_option("-k", k, "Number of generators")->required();
  witt->add_option("-n", n, "Top degree")->required();
  witt->callback([&] {
    run = [&] {
      require_positive(k, "k");
      require_positive(n, "n");
      json ranks = json::object();
      for (int m = 1; m <= n; ++m) {
        BigInt r = witt_rank(k, m);
        ranks[std::to_string(m)] = r <= BigInt(std::numeric_limits<long long>::max()) ? json(static_cast<long long>(r))
                                                                                      : json(r.str());
      }
      return json{{"k", k}, {"ranks", ranks}};
    };
    show = [](const json& p) { print_dims(std::cerr, p["ranks"], "Witt ranks"); };
  });

  auto* lyn = app.add_subcommand("lyndon", "Lyndon words on k letters, degrees 1..n");
  lyn->add_option("-k", k, "Number of generators")->required();
  lyn->add_option("-n", n, "Top degree")->required();
  lyn->callback([&] {
    run = [&] {
      require_positive(k, "k");
      require_positive(n, "n");
      Alphabet a = Alphabet::standard(k);
      json words = json::object(), counts = json::object();
      for (int m = 1; m <= n; ++m) {
        json list = json::array();
        for (auto& w : lyndon_words(a, m)) list.push_back(a.spell(w));
        counts[std::to_string(m)] = list.size();
        words[std::to_string(m)] = std::move(list);
      }
      return json{{"k", k}, {"counts", counts}, {"words", words}};
    };
    show = [](const json& p) { print_dims(std::cerr, p["counts"], "Lyndon word counts"); };
  });

  // present
  std::string file, ring = "fp";
  long long p = 2;
  int N = 4;
  bool tables = false;
  auto* present = app.add_subcommand("present", "Quotient of the free Lie algebra by a presentation");
  present->add_option("file", file, "Presentation JSON")->required();
  present->add_option("--ring", ring, "z or fp")->check(CLI::IsMember({"z", "fp"}));
  present->add_option("-p", p, "Prime (fp ring)");
  present->add_option("-N", N, "Top degree")->required();
  present->add_flag("--tables", tables, "Include structure constants (fp ring)");
  present->callback([&] {
    run = [&] {
      require_positive(N, "N");
      auto pf = io::presentation_from_json(io::read_json_file(file));
      if (pf.restricted()) throw InputError("presentation uses P(...); use the restrictify subcommand");
      LiePresentation pres = pf.lie();
      if (ring == "z") {
        auto inv = quotient_z(pres, N);
        json ranks = json::object(), torsion = json::object();
        for (int m = 1; m <= N; ++m) {
          const auto& d = inv.degrees[m - 1];
          ranks[std::to_string(m)] = d.free_rank;
          json t = json::array();
          for (auto& x : d.torsion) t.push_back(x.str());
          torsion[std::to_string(m)] = t;
        }
        return json{{"ring", "z"}, {"dims", ranks}, {"torsion", torsion}, {"gamma_free", inv.is_gamma_free_up_to_N}};
      }
      auto L = quotient_fp(pres, checked_prime(p), N);
      json out{{"ring", "fp"}, {"p", p}, {"dims", io::dims_json(L.dims())}};
      json basis = json::object();
      for (int m = 1; m <= N; ++m) basis[std::to_string(m)] = L.labels(m);
      out["basis"] = basis;
      if (tables) {
        json br = json::array();
        for (int i = 1; i <= N; ++i)
          for (int j = i; i + j <= N; ++j)
            for (std::size_t a = 0; a < L.dim(i); ++a)
              for (std::size_t b = (i == j ? a + 1 : 0); b < L.dim(j); ++b) {
                const auto& v = L.bracket_basis(i, a, j, b);
                if (!v.empty()) br.push_back({{"left", {i, a}}, {"right", {j, b}}, {"value", io::vec_json(v)}});
              }
        out["brackets"] = br;
      }
      return out;
    };
    show = [](const json& p) { print_dims(std::cerr, p["dims"], "Quotient dimensions"); };
  });

  // restrictify
  std::string mode = "plain";
  auto* restr = app.add_subcommand("restrictify", "Restrictification of a presented Lie algebra");
  restr->add_option("file", file, "Presentation JSON (relators may use P(...))")->required();
  restr->add_option("-p", p, "Prime")->required();
  restr->add_option("-N", N, "Top degree")->required();
  restr->add_option("--mode", mode, "plain, zero-pmap or abelianize")
      ->check(CLI::IsMember({"plain", "zero-pmap", "abelianize"}));
  restr->add_flag("--tables", tables, "Include structure constants");
  restr->callback([&] {
    run = [&] {
      require_positive(N, "N");
      const std::uint32_t q = checked_prime(p);
      auto pf = io::presentation_from_json(io::read_json_file(file));
      RestrictedGLA R = pf.restricted() ? restricted_presentation_quotient(pf.restricted_presentation(), q, N)
                                        : restrictify(quotient_fp(pf.lie(), q, N), N);
      QuotientMode m = mode == "zero-pmap" ? QuotientMode::ZeroPMap
                       : mode == "abelianize" ? QuotientMode::Abelianize
                                              : QuotientMode::Plain;
      json out = io::algebra_json(restricted_quotient_mode(R, m), tables);
      out["mode"] = mode;
      return out;
    };
    show = [](const json& p) { print_dims(std::cerr, p["dims"], "Restricted dimensions"); };
  });

  // series
  std::string kind, direction, dims_text, coeffs_text, denom_text;
  auto* series = app.add_subcommand("series", "Hilbert series of enveloping algebras");
  series->add_option("kind", kind, "pbw or jennings")->required()->check(CLI::IsMember({"pbw", "jennings"}));
  series->add_option("direction", direction, "expand or invert")->required()->check(CLI::IsMember({"expand", "invert"}));
  series->add_option("--dims", dims_text, "Dimension table d1,d2,... (expand)");
  series->add_option("--coeffs", coeffs_text, "Series coefficients c0,c1,... (invert)");
  series->add_option("--denominator", denom_text, "Invert 1/q(t) for q given as q0,q1,... (invert)");
  series->add_option("-p", p, "Prime (jennings)");
  series->add_option("-N", N, "Truncation order");
  series->callback([&] {
    run = [&]() -> json {
      const bool jennings = kind == "jennings";
      const std::uint32_t q = jennings ? checked_prime(p) : 0;
      if (direction == "expand") {
        if (dims_text.empty()) throw InputError("expand needs --dims");
        auto d = DimensionTable::from(parse_list(dims_text));
        require_positive(N, "N");
        PowerSeriesZ s = jennings ? jennings_series(d, q, N) : pbw_series(d, N);
        return json{{"kind", kind}, {"coefficients", io::series_json(s)}};
      }
      PowerSeriesZ s(0);
      if (!denom_text.empty()) {
        require_positive(N, "N");
        s = PowerSeriesZ::from_ints(N, parse_list(denom_text)).inverse();
      } else if (!coeffs_text.empty()) {
        auto c = parse_list(coeffs_text);
        s = PowerSeriesZ::from_ints(c.size() - 1, c);
      } else {
        throw InputError("invert needs --coeffs or --denominator");
      }
      DimensionTable d = jennings ? jennings_invert(s, q) : pbw_invert(s);
      return json{{"kind", kind}, {"dims", io::dims_json(d)}};
    };
    show = [&](const json& p) {
      if (p.contains("dims")) print_dims(std::cerr, p["dims"], "Solved dimensions");
      else std::cerr << "coefficients " << p["coefficients"].dump() << "\n";
    };
  });

  // catalog
  std::string family, word, vertices, edges, exponents;
  int rank = 2, genus = 1, strands = 3, count = 3;
  auto* cat = app.add_subcommand("catalog", "Dimension tables of catalog families");
  cat->add_option("family", family, "free, surface, one_relator, raag, pure_braid, heisenberg, supersolvable, "
                                    "almost_direct, free_product, labute_mild")
      ->required();
  cat->add_option("--rank", rank, "Free rank");
  cat->add_option("--genus", genus, "Surface genus");
  cat->add_option("--generators", vertices, "Comma-separated generator or vertex names");
  cat->add_option("--word", word, "One-relator group word");
  cat->add_option("--edges", edges, "RAAG edges u-v,u-w,...");
  cat->add_option("--strands", strands, "Pure braid strands");
  cat->add_option("--exponents", exponents, "Ranks of free factors");
  cat->add_option("--n", count, "labute_mild generator count");
  cat->add_option("-p", p, "Prime (labute_mild)");
  cat->add_option("-N", N, "Top degree")->required();
  cat->callback([&] {
    run = [&]() -> json {
      require_positive(N, "N");
      json out{{"family", family}};
      auto from_pres = [&](const LiePresentation& pres) {
        auto inv = quotient_z(pres, N);
        json dims = json::object();
        for (int m = 1; m <= N; ++m) dims[std::to_string(m)] = inv.degrees[m - 1].free_rank;
        out["generators"] = pres.alphabet.names;
        out["relators"] = pres.relator_text;
        out["dims"] = dims;
        out["gamma_free"] = inv.is_gamma_free_up_to_N;
      };
      auto ranks = [&] {
        std::vector<int> r;
        for (auto x : parse_list(exponents)) r.push_back(static_cast<int>(x));
        if (r.empty()) throw InputError("--exponents is required for this family");
        return r;
      };
      if (family == "free") from_pres(free_presentation(rank));
      else if (family == "surface") {
        auto r = surface_presentation(genus);
        from_pres(r.presentation);
        out["relator_weight"] = r.weight;
        out["primitive"] = r.primitive;
      } else if (family == "one_relator") {
        auto names = split(vertices, ',');
        auto r = one_relator_presentation(Alphabet(names, std::vector<int>(names.size(), 1)), word);
        from_pres(r.presentation);
        out["relator_weight"] = r.weight;
        out["primitive"] = r.primitive;
        if (r.warning) out["warning"] = *r.warning;
      } else if (family == "raag") {
        std::vector<std::pair<std::string, std::string>> es;
        for (auto& e : split(edges, ',')) {
          auto uv = split(e, '-');
          if (uv.size() != 2) throw InputError("edge '" + e + "' must look like u-v");
          es.emplace_back(uv[0], uv[1]);
        }
        from_pres(raag_presentation(split(vertices, ','), es));
      } else if (family == "pure_braid") from_pres(pure_braid_presentation(strands));
      else if (family == "heisenberg") from_pres(heisenberg_presentation());
      else if (family == "supersolvable") out["dims"] = io::dims_json(supersolvable_dims(ranks(), N));
      else if (family == "almost_direct" || family == "free_product") {
        std::vector<DimensionTable> parts;
        for (int r : ranks()) parts.push_back(witt_dims(r, N));
        out["dims"] = io::dims_json(family == "free_product" ? free_product_all(parts, N) : almost_direct_dims(parts, N));
      } else if (family == "labute_mild") {
        const std::uint32_t q = checked_prime(p);
        auto rp = labute_mild(count, q);
        auto R = restricted_presentation_quotient(rp, q, N);
        out["generators"] = rp.alphabet.names;
        out["relators"] = rp.relator_text;
        out["restricted_dims"] = io::dims_json(R.dims());
        out["note"] = "inhomogeneous relators imposed through their lowest-degree part";
      } else {
        throw InputError("unknown family '" + family + "'");
      }
      return out;
    };
    show = [](const json& p) {
      print_dims(std::cerr, p.contains("dims") ? p["dims"] : p["restricted_dims"], "Catalog dimensions");
    };
  });

  // oracle
  std::string oracle_mode = "product";
  bool structure = false;
  int Nopt = 0;
  auto* oracle = app.add_subcommand("oracle", "Dimension subgroups and gr^Z of a finite p-group");
  oracle->add_option("file", file, "Group spec JSON")->required();
  oracle->add_option("-p", p, "Prime")->required();
  oracle->add_option("-N", Nopt, "Top degree (default: until D_n is trivial)");
  oracle->add_option("--mode", oracle_mode, "augmentation, product or both")
      ->check(CLI::IsMember({"augmentation", "product", "both"}));
  oracle->add_flag("--tables", structure, "Include gr^Z structure constants");
  oracle->callback([&] {
    run = [&]() -> json {
      const std::uint32_t q = checked_prime(p);
      FinitePGroup G = build_group(io::group_spec_from_json(io::read_json_file(file)));
      if (G.size() > 1 && G.p() != q) throw InputError("group order is not a power of p");
      int top = Nopt > 0 ? Nopt : std::max(1, dimension_series_length(G, q) - 1);
      json out{{"order", G.size()}, {"p", q}, {"N", top}, {"mode", oracle_mode}};
      std::vector<Subgroup> D;
      if (oracle_mode != "augmentation") {
        D = dimension_series_product(G, q, top + 1);
        out["product_sizes"] = io::subgroup_sizes_json(D);
      }
      if (oracle_mode != "product") {
        auto A = dimension_series_augmentation(G, q, top + 1);
        out["augmentation_sizes"] = io::subgroup_sizes_json(A.D);
        out["omega_dims"] = A.omega_dims;
        if (oracle_mode == "both") {
          bool same = true;
          for (int m = 1; m <= top + 1; ++m) same = same && A.D[m] == D[m];
          out["definitions_agree"] = same;
          if (!same) throw VerificationFailure("dimension subgroup definitions disagree");
        } else {
          D = A.D;
        }
      }
      ZassenhausData Z = zassenhaus_structure(G, q, D, top);
      out["dims"] = io::dims_json(Z.d);
      if (structure) out["gr_z"] = io::algebra_json(Z.algebra, true);
      return out;
    };
    show = [](const json& p) { print_dims(std::cerr, p["dims"], "Zassenhaus dimensions"); };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Theorem harness");
  verify->require_subcommand(1);
  std::string pres_file, group_file, moduli_text, cmode = "exponent_p";
  int trials = 100;
  std::uint64_t seed = 1;
  auto pres_from = [&]() -> LiePresentation {
    if (!pres_file.empty()) return io::presentation_from_json(io::read_json_file(pres_file)).lie();
    if (family == "heisenberg") return heisenberg_presentation();
    if (family == "free") return free_presentation(rank);
    throw InputError("give --presentation FILE or --family heisenberg|free");
  };
  auto report_out = [&](const VerificationReport& r) {
    json out = io::report_json(r);
    if (!r.passed) throw std::pair<json, int>(out, kVerification);
    return out;
  };

  auto* va = verify->add_subcommand("theorem-a", "Oracle dims bounded by the prediction");
  va->add_option("--presentation", pres_file, "Presentation JSON");
  va->add_option("--family", family, "heisenberg or free");
  va->add_option("--rank", rank, "Free rank (family free)");
  va->add_option("--group", group_file, "Group spec JSON")->required();
  va->add_option("-p", p, "Prime")->required();
  va->add_option("-N", N, "Top degree")->required();
  va->callback([&] {
    run = [&] {
      require_positive(N, "N");
      FinitePGroup G = build_group(io::group_spec_from_json(io::read_json_file(group_file)));
      return report_out(theorem_a_check(pres_from(), G, checked_prime(p), N, group_file));
    };
    show = [](const json& p) { print_report(std::cerr, p); };
  });

  auto* vb = verify->add_subcommand("theorem-b", "Prediction equals oracle on stabilized degrees");
  vb->add_option("--family", family, "heisenberg")->required();
  vb->add_option("-p", p, "Prime")->required();
  vb->add_option("--moduli", moduli_text, "Modulus ladder, e.g. 9,27")->required();
  vb->add_option("-N", N, "Top degree")->required();
  vb->callback([&] {
    run = [&] {
      require_positive(N, "N");
      if (family != "heisenberg") throw InputError("theorem-b supports the heisenberg family");
      const std::uint32_t q = checked_prime(p);
      std::vector<GroupSpec> ladder;
      for (auto m : parse_list(moduli_text)) ladder.push_back(heisenberg_zp(q, m));
      return report_out(theorem_b_certify(heisenberg_presentation(), ladder, q, N, "heisenberg moduli " + moduli_text));
    };
    show = [](const json& p) { print_report(std::cerr, p); };
  });

  auto* vh = verify->add_subcommand("hall", "Randomized Hall congruences");
  vh->add_option("--group", group_file, "Group spec JSON")->required();
  vh->add_option("-p", p, "Prime")->required();
  vh->add_option("--trials", trials, "Number of trials");
  vh->add_option("--seed", seed, "RNG seed");
  vh->callback([&] {
    run = [&] {
      FinitePGroup G = build_group(io::group_spec_from_json(io::read_json_file(group_file)));
      auto res = hall_prop_check(G, checked_prime(p), trials, seed);
      json out{{"trials", res.trials}, {"failures", res.failures}, {"passed", res.passed()}};
      if (res.witness)
        out["witness"] = {{"statement", res.witness->statement}, {"i", res.witness->i}, {"j", res.witness->j},
                          {"x", res.witness->x}, {"y", res.witness->y}};
      if (!res.passed()) throw std::pair<json, int>(out, kVerification);
      return out;
    };
    show = [](const json& p) { std::cerr << "hall: " << p["failures"] << " failures in " << p["trials"] << "\n"; };
  });

  auto* vc = verify->add_subcommand("corollary", "Exponent-p and abelian restricted corollaries");
  vc->add_option("--mode", cmode, "exponent_p or abelian_restricted")
      ->check(CLI::IsMember({"exponent_p", "abelian_restricted"}));
  vc->add_option("--presentation", pres_file, "Presentation JSON");
  vc->add_option("--family", family, "heisenberg or free");
  vc->add_option("--group", group_file, "Group spec JSON (exponent_p)");
  vc->add_option("-p", p, "Prime")->required();
  vc->add_option("-N", N, "Top degree")->required();
  vc->callback([&] {
    run = [&] {
      require_positive(N, "N");
      const std::uint32_t q = checked_prime(p);
      if (cmode == "exponent_p") {
        if (group_file.empty()) throw InputError("exponent_p needs --group");
        FinitePGroup G = build_group(io::group_spec_from_json(io::read_json_file(group_file)));
        json out = report_out(corollary_exponent_p(pres_from(), G, q, N, group_file));
        ZassenhausData Z = zassenhaus_structure(G, q, N);
        out["engel_failures"] = engel_sample(Z.algebra, trials);
        return out;
      }
      return report_out(corollary_abelian_restricted(restrictify(quotient_fp(pres_from(), q, N), N)));
    };
    show = [](const json& p) { print_report(std::cerr, p); };
  });

  std::string echo;
  for (int i = 1; i < argc; ++i) echo += (i > 1 ? " " : "") + std::string(argv[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  }

  auto emit = [&](const std::string& status, const json& payload) {
    json out{{"command", echo}, {"status", status}, {"payload", payload}};
    std::cout << out.dump(2) << "\n";
  };
  try {
    json payload = run();
    emit("ok", payload);
    if (pretty && show) show(payload);
    return kOk;
  } catch (const std::pair<json, int>& failed) {
    emit("verification_failure", failed.first);
    if (pretty && show) show(failed.first);
    return failed.second;
  } catch (const InputError& e) {
    emit("input_error", json{{"error", e.what()}});
    return kInput;
  } catch (const VerificationFailure& e) {
    emit("verification_failure", json{{"error", e.what()}});
    return kVerification;
  } catch (const BudgetExceeded& e) {
    emit("budget_exceeded", json{{"error", e.what()}});
    return kBudget;
  } catch (const std::domain_error& e) {
    emit("input_error", json{{"error", e.what()}});
    return kInput;
  }
}
