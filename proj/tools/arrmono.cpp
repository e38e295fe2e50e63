#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "arrmono/json_io.hpp"

using namespace arrmono;

namespace {

struct Global {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string json_out;
  std::string arrangement;
};

std::string poly_text(const PolyZ& p) {
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const BigInt& c = p[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const bool neg = c < 0;
    const BigInt a = neg ? BigInt(-c) : c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    if (a != 1 || k == 0) os << a;
    if (k > 0) os << "T" << (k > 1 ? "^" + std::to_string(k) : "");
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::string key_text(const PolyKey& k) {
  std::ostringstream os;
  for (std::size_t i = 0; i < k.size(); ++i) os << (i ? " " : "") << k[i];
  return "[" + os.str() + "]";
}

void emit(const Global& g, const std::string& command, Json body, bool ok) {
  Json j{{"command", command}, {"seed", g.seed}, {"ok", ok}};
  j["result"] = std::move(body);
  if (g.json_out.empty()) return;
  if (g.json_out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(g.json_out);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write " + g.json_out);
  f << j.dump(2) << "\n";
}

Arrangement load_or_sample(const Global& g, int n, int m, std::uint64_t q) {
  if (!g.arrangement.empty()) {
    std::ifstream f(g.arrangement);
    if (!f) fail(ErrorKind::ParseError, "cannot open " + g.arrangement);
    return read_arrangement(f);
  }
  if (n <= 0 || m <= 0 || q == 0) fail(ErrorKind::InvalidArgument, "need --arrangement or -n, -m, -q");
  const auto [p, k] = split_prime_power(q);
  return random_arrangement(n, m, FieldCache::global().get(p, k), derive_seed(g.seed, "cli-arrangement"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monodromy of double covers branched along hyperplane arrangements"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "Root seed");
  app.add_option("--threads", g.threads, "Counting threads (0 = hardware)");
  app.add_option("--json-out", g.json_out, "Write a JSON report here ('-' for stdout)");
  app.add_option("--arrangement", g.arrangement, "Arrangement file")->check(CLI::ExistingFile);

  int n = 0, m = 0, dim = 0, samples = 0;
  std::uint64_t q = 0;
  std::uint32_t ell = 0;
  std::vector<unsigned> levels;
  std::vector<int> n_list{2, 4, 6, 8, 10};
  std::vector<std::uint32_t> ell_list{5, 7, 11, 13, 17};
  int m_offset = 4;
  std::string family = "SP";
  bool nonsquare = false, half = false;

  auto* predict = app.add_subcommand("predict", "Predicted monodromy group for (n, l)");
  predict->add_option("-n", n)->required();
  predict->add_option("-l,--ell", ell)->required();

  auto* split = app.add_subcommand("case-split", "Kernel class of the Picard-Lefschetz reflection over a grid");
  split->add_option("--n-list", n_list)->delimiter(',');
  split->add_option("--ell-list", ell_list)->delimiter(',');
  split->add_option("--m-offset", m_offset, "m = n + offset");

  auto* certify = app.add_subcommand("certify", "BSGS certificate for Sp or the orthogonal kernel chain");
  certify->add_option("--family", family)->check(CLI::IsMember({"SP", "O"}));
  certify->add_option("--dim", dim)->required();
  certify->add_option("-l,--ell", ell)->required();
  certify->add_flag("--nonsquare-disc", nonsquare, "O only: Gram diag(1, ..., 1, nonsquare)");

  auto* count = app.add_subcommand("count", "Point counts N_i of the double cover");
  count->add_option("-n", n);
  count->add_option("-m", m);
  count->add_option("-q", q);
  count->add_option("--levels", levels)->delimiter(',')->required();

  auto* zeta = app.add_subcommand("zeta", "Frobenius characteristic polynomial");
  zeta->add_option("-n", n);
  zeta->add_option("-m", m);
  zeta->add_option("-q", q);
  zeta->add_flag("--symplectic-half", half, "Odd n beyond the table budget: count half the tower");

  auto* wedge = app.add_subcommand("wedge-check", "Isotropic shear check for wedge powers of transvections");
  wedge->add_option("--dim", dim)->required();
  wedge->add_option("-n", n)->required();
  wedge->add_option("-l,--ell", ell)->default_val(7);
  wedge->add_option("--samples", samples)->default_val(100);

  auto* hyper = app.add_subcommand("hyperelliptic-compare", "P_X against the wedge of P_C on seeded points");
  hyper->add_option("-q", q)->required();
  hyper->add_option("-m", m)->required();
  hyper->add_option("-n", n)->required();

  auto* survey = app.add_subcommand("survey", "Irreducible fraction of P over a tower of fields");
  survey->add_option("-n", n)->default_val(1);
  survey->add_option("-m", m)->required();
  survey->add_option("-q", q)->required();
  survey->add_option("--levels", levels)->delimiter(',')->required();
  survey->add_option("--samples", samples)->required();

  auto* dist = app.add_subcommand("distribution", "Frobenius char polys mod l against the predicted group");
  dist->add_option("-n", n)->required();
  dist->add_option("-m", m)->required();
  dist->add_option("-q", q)->required();
  dist->add_option("-l,--ell", ell)->required();
  dist->add_option("--samples", samples)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  // JSON on stdout moves the text report to stderr.
  std::ostream& out = g.json_out == "-" ? std::cerr : std::cout;
  CountOptions copts{g.threads};
  try {
    if (*predict) {
      const auto p = predict_group(n, ell);
      out << "n=" << n << " l=" << ell << " -> " << to_string(p.label) << " " << p.reason << "\n";
      emit(g, "predict", to_json(p), true);
      return 0;
    }
    if (*split) {
      std::vector<CaseSplitTriple> grid;
      for (int nn : n_list)
        for (auto l : ell_list) grid.push_back({nn, nn + m_offset, l});
      const auto r = verify_case_split(grid, g.seed);
      for (const auto& row : r.rows)
        out << "n=" << row.params.n << " m=" << row.params.m << " l=" << row.params.ell << " (d,d)=" << row.delta_norm
                  << " theta=" << row.reflection.theta << " det=" << row.reflection.det << " -> " << to_string(row.prediction.label)
                  << (row.consistent ? "  ok" : "  MISMATCH") << "\n";
      emit(g, "case-split", to_json(r), r.all_consistent);
      return r.all_consistent ? 0 : 1;
    }
    if (*certify) {
      const auto fam = family == "SP" ? Family::SP : Family::O;
      const auto r = certify_generation(fam, static_cast<std::size_t>(dim), ell, g.seed, !nonsquare);
      out << family << "(" << dim << ", " << ell << "): order " << r.order << " expected " << r.expected << "\n";
      for (const auto& c : r.chain) out << "  [O : " << to_string(c.label) << "] = " << c.index << (c.ok ? "" : "  FAIL") << "\n";
      emit(g, "certify", to_json(r), r.ok);
      return r.ok ? 0 : 1;
    }
    if (*count) {
      const auto arr = load_or_sample(g, n, m, q);
      Json counts = Json::array();
      for (unsigned i : levels) {
        const auto N = count_points(arr, i, copts);
        out << "N_" << i << " = " << N << "\n";
        counts.push_back({{"level", i}, {"count", N}});
      }
      emit(g, "count", {{"arrangement", arrangement_json(arr)}, {"counts", counts}}, true);
      return 0;
    }
    if (*zeta) {
      const auto arr = load_or_sample(g, n, m, q);
      ZetaOptions zo;
      zo.count = copts;
      zo.allow_symplectic_half = half;
      const auto r = frobenius_charpoly(arr, zo);
      out << "P(T) = " << poly_text(r.P) << "\n"
                << "degree " << r.P.degree() << (r.degree_ok ? " ok" : " BAD") << ", Weil " << (r.weil_ok ? "ok" : "BAD")
                << ", functional equation sign " << r.sign << "\n";
      emit(g, "zeta", to_json(r), r.all_ok());
      return r.all_ok() ? 0 : 1;
    }
    if (*wedge) {
      const PrimeField F(ell);
      const auto W = BilinearSpace::standard_symplectic(F, static_cast<std::size_t>(dim));
      Rng rng(derive_seed(g.seed, "wedge-check"));
      int passed = 0;
      for (int t = 0; t < samples; ++t) {
        Vec v(static_cast<std::size_t>(dim));
        do {
          for (auto& x : v) x = static_cast<std::uint32_t>(uniform_below(rng, ell));
        } while (detail::is_zero_vec(v));
        const auto phi = transvection(W, v, static_cast<std::uint32_t>(1 + uniform_below(rng, ell - 1)));
        passed += shear_check(phi.mat(), static_cast<std::size_t>(n));
      }
      const bool ok = passed == samples;
      out << "(wedge^" << n << " phi - 1)^2 = 0, wedge^" << n << " phi != 1: " << passed << "/" << samples << "\n";
      emit(g, "wedge-check", {{"dim", dim}, {"n", n}, {"ell", ell}, {"samples", samples}, {"passed", passed}}, ok);
      return ok ? 0 : 1;
    }
    if (*hyper) {
      const auto [p, k] = split_prime_power(q);
      const auto F = FieldCache::global().get(p, k);
      const auto pts = random_points(m, F, derive_seed(g.seed, "hyperelliptic"));
      const auto r = hyperelliptic_consistency(pts, n, F, copts);
      out << "P_C(T)        = " << poly_text(r.curve) << "\n"
                << "P_X(T)        = " << poly_text(r.variety) << "\n"
                << "wedge^" << n << " P_C(T) = " << poly_text(r.wedge) << "\n"
                << (r.equal ? "equal" : "DIFFERENT") << "\n";
      emit(g, "hyperelliptic-compare", to_json(r), r.equal);
      return r.equal ? 0 : 1;
    }
    if (*survey) {
      const auto r = survey_irreducibility(n, m, q, levels, static_cast<std::size_t>(samples), g.seed, copts);
      for (const auto& L : r.per_level)
        out << "level " << L.level << " (F_" << L.field_order << "): " << L.irreducible << "/" << L.samples << " irreducible ("
                  << L.certified << " mod-p certified, " << L.exhaustive << " exhaustive)\n";
      emit(g, "survey", to_json(r), true);
      return 0;
    }
    if (*dist) {
      DistributionOptions dopts;
      dopts.count = copts;
      const auto r = frobenius_distribution(n, m, q, ell, static_cast<std::size_t>(samples), g.seed, dopts);
      out << "predicted " << to_string(r.prediction.label) << " " << r.prediction.reason << ", group side "
                << (r.exhaustive ? "exhaustive" : "sampled") << " (" << r.group_accepted << " elements, " << r.group.size() << " classes)\n"
                << "Frobenius classes " << r.frobenius.size() << ", containment " << (r.containment ? "yes" : "NO") << ", TV " << r.tv << "\n";
      for (const auto& k : r.missing) out << "  missing " << key_text(k) << "\n";
      emit(g, "distribution", to_json(r), r.containment);
      return r.containment ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
