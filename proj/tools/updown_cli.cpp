// updown: exact up-down numbers from the command line.

#include "updown/updown.hpp"
#include "updown/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace updown;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitVerify = 3;

/// Largest N dumped or swept without --force.
constexpr unsigned kRowGuardN = 20;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string format = "text";
  unsigned threads = 1;
  bool force = false;
  std::optional<std::uint64_t> seed;
};

std::string fmt_ld(long double v) {
  std::ostringstream out;
  out << std::setprecision(15) << v;
  return out.str();
}

std::string rational_with_decimal(const BigRational& r) {
  return to_fraction_string(r) + " (" + to_decimal_string(r) + ")";
}

/// Writes to the named file, or stdout when the path is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  bool to_stdout() const { return !file_.is_open(); }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------- compute

enum class Algorithm { recursion, closed_form, triangle, phi, oracle };

const std::map<std::string, Algorithm>& algorithm_names() {
  static const std::map<std::string, Algorithm> names = {
      {"recursion", Algorithm::recursion}, {"closed-form", Algorithm::closed_form},
      {"triangle", Algorithm::triangle},   {"phi", Algorithm::phi},
      {"oracle", Algorithm::oracle},
  };
  return names;
}

std::string name_of(Algorithm a) {
  for (const auto& [name, value] : algorithm_names())
    if (value == a) return name;
  return "?";
}

BigInt count_with(Algorithm a, const Signature& s, const CommonOptions& common) {
  switch (a) {
    case Algorithm::recursion:
      return c_recursion(s);
    case Algorithm::closed_form:
      return s.empty() ? BigInt(1) : c_closed_form(to_composition(s));
    case Algorithm::triangle:
      return c_triangle(s);
    case Algorithm::phi: {
      const BigRational v = evaluate(c_polynomial(static_cast<unsigned>(s.size())), s);
      if (!is_integer(v)) throw std::logic_error("c_N evaluated to a non-integer");
      return numerator_of(v);
    }
    case Algorithm::oracle:
      return count_one(s, {common.force, common.threads});
  }
  return 0;
}

/// A composition when the text has ':' or ',' or is all digits; otherwise a
/// '+'/'-' signature.
Signature parse_input(const std::string& text) {
  const bool digits_only = !text.empty() && text.find_first_not_of("0123456789") == std::string::npos;
  if (text.find(':') != std::string::npos || text.find(',') != std::string::npos || digits_only)
    return from_composition(Composition::parse(text));
  return Signature::parse(text);
}

int cmd_compute(const std::string& input, const std::string& algorithm, bool all,
                const CommonOptions& common) {
  Signature s;
  try {
    s = parse_input(input);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto N = static_cast<unsigned>(s.size());
  if (N > kMaxPolyLevel && (all || algorithm == "phi"))
    throw UsageError("phi evaluation supports N <= 64");

  std::vector<Algorithm> algos;
  if (all) {
    for (Algorithm a : {Algorithm::recursion, Algorithm::closed_form, Algorithm::triangle, Algorithm::phi})
      algos.push_back(a);
    if (N <= kCensusCap || common.force) algos.push_back(Algorithm::oracle);
  } else {
    const auto it = algorithm_names().find(algorithm);
    if (it == algorithm_names().end()) throw UsageError("unknown algorithm: " + algorithm);
    if (it->second == Algorithm::oracle && N > kCensusCap && !common.force)
      throw UsageError("oracle refuses N > " + std::to_string(kCensusCap) + " without --force");
    algos.push_back(it->second);
  }

  std::vector<std::pair<Algorithm, BigInt>> results;
  for (Algorithm a : algos) results.emplace_back(a, count_with(a, s, common));
  bool agree = true;
  for (const auto& [a, c] : results) agree = agree && c == results.front().second;

  const BigInt& C = results.front().second;
  const BigRational P(C, factorial(N + 1));
  const Composition comp = to_composition(s);
  if (common.format == "json") {
    json j;
    j["schema"] = "updown.compute/1";
    j["signature"] = s.str();
    j["islands"] = comp.str();
    j["N"] = N;
    j["C"] = C.str();
    j["P"] = to_fraction_string(P);
    j["P_decimal"] = to_decimal_string(P);
    json per = json::object();
    for (const auto& [a, c] : results) per[name_of(a)] = c.str();
    j["algorithms"] = per;
    j["agree"] = agree;
    std::cout << j.dump(2) << "\n";
  } else if (common.format == "csv") {
    std::cout << "signature,islands,N,algorithm,C,P,P_decimal\n";
    for (const auto& [a, c] : results) {
      const BigRational p(c, factorial(N + 1));
      std::cout << s.str() << ',' << comp.str() << ',' << N << ',' << name_of(a) << ',' << c.str() << ','
                << to_fraction_string(p) << ',' << to_decimal_string(p) << '\n';
    }
  } else {
    std::cout << "signature: " << s.str() << "\n"
              << "islands:   " << comp.str() << "\n"
              << "N:         " << N << "\n";
    for (const auto& [a, c] : results) std::cout << "C[" << name_of(a) << "]: " << c.str() << "\n";
    std::cout << "C:         " << C.str() << "\n"
              << "P:         " << rational_with_decimal(P) << "\n";
    if (all) std::cout << "agree:     " << (agree ? "yes" : "NO") << "\n";
  }
  if (!agree) throw VerificationFailure("algorithms disagree on " + s.str());
  return kExitOk;
}

// ---------------------------------------------------------------- dump

int cmd_dump(unsigned N, const std::string& engine, const std::string& path, const CommonOptions& common) {
  if (N == 0) throw UsageError("dump needs N >= 1");
  if (N > kRowGuardN && !common.force)
    throw UsageError("2^" + std::to_string(N) + " rows exceed the size guard; pass --force");
  if (N > 63) throw UsageError("dump supports N <= 63");
  if (engine == "phi" && N > kMaxPolyLevel) throw UsageError("phi engine supports N <= 64");

  const std::uint64_t rows = std::uint64_t{1} << N;
  std::optional<LinearPolynomial> cN;
  if (engine == "phi") {
    cN = c_polynomial(N);
  } else if (engine != "recursion" && engine != "triangle") {
    throw UsageError("unknown engine: " + engine);
  }

  std::vector<BigInt> counts(rows);
  parallel_slices(rows, common.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    UpDownCounter counter;
    for (std::size_t idx = begin; idx < end; ++idx) {
      const Signature s = signature_from_index(N, idx);
      if (cN) {
        counts[idx] = numerator_of(evaluate(*cN, s));
      } else if (engine == "triangle") {
        counts[idx] = c_triangle(s);
      } else {
        counts[idx] = counter.count(s);
      }
    }
  });

  Output out(path);
  auto& os = out.stream();
  const BigInt total = factorial(N + 1);
  os << "index,signature,C,P,P_decimal\n";
  for (std::uint64_t idx = 0; idx < rows; ++idx) {
    const BigRational p(counts[idx], total);
    os << idx << ',' << signature_from_index(N, idx).str() << ',' << counts[idx].str() << ','
       << to_fraction_string(p) << ',' << to_decimal_string(p) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- congruence

int cmd_congruence(unsigned N, std::int64_t m, const std::string& predictor_name, bool doubled,
                   const std::string& path, const CommonOptions& common) {
  if (m < 2) throw UsageError("modulus must be at least 2");
  if (N == 0) throw UsageError("congruence needs N >= 1");
  if (N > kRowGuardN && !common.force)
    throw UsageError("2^" + std::to_string(N) + " signatures exceed the size guard; pass --force");

  std::string chosen = predictor_name;
  if (chosen == "auto") {
    if (is_prime(m) && m >= 3 && (static_cast<std::int64_t>(N) == m - 1 || static_cast<std::int64_t>(N) == m))
      chosen = "prime";
    else
      chosen = "polynomial";
  }

  ResiduePredictor predictor;
  std::string description;
  if (chosen == "prime") {
    if (!is_prime(m) || m < 3) throw UsageError("prime predictor needs an odd prime modulus");
    if (static_cast<std::int64_t>(N) == m - 1) {
      predictor = [m](const Signature& s) { return predict_residue_prime_minus_one(s, m); };
      description = "C = s1...sN (mod p), N = p-1";
    } else if (static_cast<std::int64_t>(N) == m) {
      predictor = [m](const Signature& s) { return predict_residue_prime(s, m); };
      description = "2C = (s1+sN) s1...sN (mod p), N = p";
    } else {
      throw UsageError("prime predictor needs N = p-1 or N = p");
    }
  } else if (chosen == "mod9") {
    if (N != 8 || m != 9) throw UsageError("mod9 predictor needs N = 8 and modulus 9");
    predictor = predict_residue_mod9_level8;
    description = "C = (6 s3 s6 + 4) s1...s8 (mod 9)";
  } else if (chosen == "mod7") {
    if (N != 8 || m != 7) throw UsageError("mod7 predictor needs N = 8 and modulus 7");
    predictor = predict_residue_mod7_level8;
    description = "C = (4(s1s2 + s1s8 + s7s8) + 3) s1...s8 (mod 7)";
  } else if (chosen == "polynomial") {
    std::optional<ResiduePolynomial> reduced;
    try {
      reduced = reduce_c_polynomial(N, m, doubled);
    } catch (const InadmissibleModulus& e) {
      if (doubled || m % 2 == 0) throw;
      reduced = reduce_c_polynomial(N, m, true);
    }
    description = std::string(reduced->doubled() ? "2 c_N" : "c_N") + " reduced mod " + std::to_string(m) +
                  " (" + std::to_string(reduced->terms().size()) + " surviving terms)";
    predictor = [r = *reduced](const Signature& s) { return r.predict_count(s); };
  } else {
    throw UsageError("unknown predictor: " + predictor_name);
  }

  const CongruenceReport report = verify_congruence_sweep(N, m, predictor, common.threads);

  const bool rows_on_stdout = path.empty() ? common.format == "csv" : path == "-";
  if (!path.empty() || common.format == "csv") {
    Output out(rows_on_stdout ? "" : path);
    auto& os = out.stream();
    os << "index,signature,residue_actual,residue_predicted\n";
    for (const auto& row : report.rows)
      os << row.index << ',' << row.signature.str() << ',' << row.actual << ',' << row.predicted << '\n';
  }
  std::ostream& summary = rows_on_stdout ? std::cerr : std::cout;
  if (common.format == "json") {
    json j;
    j["schema"] = "updown.congruence/1";
    j["N"] = N;
    j["modulus"] = m;
    j["predictor"] = description;
    j["signatures"] = report.rows.size();
    j["violations"] = report.violations.size();
    json hist = json::object();
    for (const auto& [res, n] : report.histogram) hist[std::to_string(res)] = n;
    j["residue_histogram"] = hist;
    summary << j.dump(2) << "\n";
  } else {
    summary << "N=" << N << " modulus=" << m << " predictor: " << description << "\n"
            << "signatures=" << report.rows.size() << " violations=" << report.violations.size() << "\n"
            << "residues:";
    for (const auto& [res, n] : report.histogram) summary << ' ' << res << ':' << n;
    summary << "\n";
  }
  if (!report.ok()) throw VerificationFailure(std::to_string(report.violations.size()) + " violations");
  return kExitOk;
}

// ---------------------------------------------------------------- randomtest

json report_to_json(const RandomnessReport& r) {
  json j;
  j["schema"] = "updown.randomtest/1";
  j["label"] = r.label;
  j["N"] = r.N;
  j["signature"] = r.signature.str();
  j["islands"] = r.islands.str();
  j["C"] = r.count.str();
  j["exact_p"] = to_fraction_string(r.exact_p);
  j["p_decimal"] = to_decimal_string(r.exact_p);
  j["log2_p"] = fmt_ld(r.log2_p);
  j["theorem2_bound"] = to_fraction_string(r.theorem2_bound);
  j["bound_decimal"] = to_decimal_string(r.theorem2_bound);
  j["log2_bound"] = fmt_ld(r.log2_bound);
  if (r.threshold_log2) {
    j["threshold_log2"] = *r.threshold_log2;
    j["p_below_threshold"] = r.p_below_threshold;
    j["bound_certifies"] = r.bound_certifies;
  } else {
    j["threshold_log2"] = nullptr;
  }
  j["notes"] = r.notes;
  return j;
}

int cmd_randomtest(const std::string& csv_path, const std::string& column, const std::string& tie_policy,
                   std::optional<double> threshold, const CommonOptions& common) {
  TiePolicy policy;
  try {
    policy = parse_tie_policy(tie_policy);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw DataError("cannot open " + csv_path);
  const SeriesInput series = read_csv_column(in, column);
  const RandomnessReport r = randomness_test(series, policy, threshold, common.seed);
  if (common.format == "json") {
    std::cout << report_to_json(r).dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "series:        " << r.label << " (" << series.values.size() << " values)\n"
            << "signature:     " << r.signature.str() << "\n"
            << "islands:       " << r.islands.str() << "\n"
            << "N:             " << r.N << "\n"
            << "C:             " << r.count.str() << "\n"
            << "P:             " << rational_with_decimal(r.exact_p) << "\n"
            << "log2 P:        " << fmt_ld(r.log2_p) << "\n"
            << "bound:         " << rational_with_decimal(r.theorem2_bound) << "\n"
            << "log2 bound:    " << fmt_ld(r.log2_bound) << "\n";
  if (r.threshold_log2) {
    std::cout << "threshold:     log2 P < " << *r.threshold_log2 << "\n"
              << "P below:       " << (r.p_below_threshold ? "yes" : "no") << "\n"
              << "bound certifies: " << (r.bound_certifies ? "yes" : "no") << "\n";
  }
  for (const auto& note : r.notes) std::cout << "note:          " << note << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& suite, const CommonOptions& common) {
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = verify_suite_names();
  } else {
    suites.push_back(suite);
  }
  bool ok = true;
  json all = json::array();
  for (const auto& name : suites) {
    VerifyResult r;
    try {
      r = run_verify_suite(name, common.threads);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    ok = ok && r.ok();
    if (common.format == "json") {
      all.push_back({{"suite", r.suite},
                     {"checked", r.checked},
                     {"failures", r.failures},
                     {"seconds", r.seconds},
                     {"status", r.ok() ? "pass" : "fail"},
                     {"messages", r.messages}});
    } else {
      std::cout << "suite=" << r.suite << " checked=" << r.checked << " failures=" << r.failures
                << " seconds=" << std::fixed << std::setprecision(3) << r.seconds << std::defaultfloat
                << " status=" << (r.ok() ? "PASS" : "FAIL") << "\n";
      for (const auto& msg : r.messages) std::cout << "  " << msg << "\n";
    }
  }
  if (common.format == "json") std::cout << json{{"schema", "updown.verify/1"}, {"suites", all}}.dump(2) << "\n";
  if (!ok) throw VerificationFailure("verification failed");
  return kExitOk;
}

// ---------------------------------------------------------------- bench

int cmd_bench(unsigned from, unsigned to, const std::vector<std::string>& algo_names, unsigned samples,
              const CommonOptions& common) {
  if (from == 0 || to < from) throw UsageError("bench needs 1 <= from <= to");
  std::vector<Algorithm> algos;
  for (const auto& name : algo_names) {
    if (name == "all") {
      for (const auto& [n, a] : algorithm_names()) algos.push_back(a);
      continue;
    }
    const auto it = algorithm_names().find(name);
    if (it == algorithm_names().end()) throw UsageError("unknown algorithm: " + name);
    algos.push_back(it->second);
  }
  if (algos.empty()) throw UsageError("no algorithms selected");

  std::mt19937_64 rng(common.seed.value_or(20050101));
  const bool csv = common.format == "csv";
  if (csv) std::cout << "N,algorithm,signatures,seconds,phi_terms,gamma_terms\n";
  json rows = json::array();
  for (unsigned N = from; N <= to; ++N) {
    // workload: every signature for small N, a seeded sample otherwise
    std::vector<Signature> work;
    if (N <= 10) {
      for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << N); ++idx) work.push_back(signature_from_index(N, idx));
    } else {
      if (N > 63) throw UsageError("bench supports N <= 63");
      for (unsigned k = 0; k < samples; ++k) work.push_back(signature_from_index(N, rng() >> (64 - N)));
    }

    struct Timing {
      Algorithm algo;
      double seconds;
      std::vector<BigInt> values;
    };
    std::vector<Timing> timings;
    std::size_t phi_terms = 0;
    for (Algorithm a : algos) {
      if (a == Algorithm::oracle && N > kCensusCap && !common.force) continue;
      if (a == Algorithm::phi && N > kMaxPolyLevel) continue;
      Timing t{a, 0, {}};
      t.values.reserve(work.size());
      const auto start = std::chrono::steady_clock::now();
      if (a == Algorithm::phi) {
        const LinearPolynomial cN = c_polynomial(N);
        phi_terms = cN.size();
        for (const auto& s : work) t.values.push_back(numerator_of(evaluate(cN, s)));
      } else if (a == Algorithm::oracle) {
        const SignatureCensus c = census(N, {common.force, common.threads});
        for (const auto& s : work) t.values.push_back(c.count(s));
      } else if (a == Algorithm::recursion) {
        UpDownCounter counter;  // cold memo per run
        for (const auto& s : work) t.values.push_back(counter.count(s));
      } else {
        for (const auto& s : work) t.values.push_back(count_with(a, s, common));
      }
      t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      timings.push_back(std::move(t));
    }
    for (const auto& t : timings)
      if (t.values != timings.front().values)
        throw VerificationFailure("algorithms disagree at N=" + std::to_string(N) + " (" + name_of(t.algo) +
                                  " vs " + name_of(timings.front().algo) + ")");
    if (common.format == "text") std::cout << "N=" << std::setw(2) << N << "  all algorithms agree\n";
    const std::uint64_t gamma_terms = gamma_term_count(N);
    for (const auto& t : timings) {
      const std::string terms = t.algo == Algorithm::phi ? std::to_string(phi_terms) : "";
      if (csv) {
        std::cout << N << ',' << name_of(t.algo) << ',' << work.size() << ',' << fmt_ld(t.seconds) << ','
                  << terms << ',' << gamma_terms << '\n';
      } else if (common.format == "json") {
        json row = {{"N", N}, {"algorithm", name_of(t.algo)}, {"signatures", work.size()},
                    {"seconds", t.seconds}, {"gamma_terms", gamma_terms}};
        if (t.algo == Algorithm::phi) row["phi_terms"] = phi_terms;
        rows.push_back(row);
      } else {
        std::cout << "N=" << std::setw(2) << N << "  " << std::left << std::setw(12) << name_of(t.algo)
                  << std::right << " signatures=" << work.size() << " seconds=" << std::fixed
                  << std::setprecision(6) << t.seconds << std::defaultfloat;
        if (t.algo == Algorithm::phi) std::cout << " phi_terms=" << phi_terms << " gamma_terms=" << gamma_terms;
        std::cout << "\n";
      }
    }
  }
  if (common.format == "json") std::cout << json{{"schema", "updown.bench/1"}, {"rows", rows}}.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- phi

int cmd_phi(unsigned N, bool as_c, bool doubled, bool by_run_type, const std::string& path) {
  if (N > kMaxPolyLevel) throw UsageError("phi supports N <= 64");
  LinearPolynomial p = as_c || doubled ? c_polynomial(N) : phi(N);
  if (doubled) p *= BigRational(2);
  Output out(path);
  auto& os = out.stream();
  if (!by_run_type) {
    os << dump(p);
    return kExitOk;
  }
  os << "run_type\tcoefficient\tmonomials\n";
  os << "()\t" << to_fraction_string(p.constant_term()) << "\t1\n";
  for (const auto& rt : even_run_types(N)) {
    os << '(';
    for (std::size_t k = 0; k < rt.parts.size(); ++k) os << (k ? "," : "") << rt.parts[k];
    os << ")\t" << to_fraction_string(gamma_coefficient(p, rt, N)) << '\t' << gamma(rt, N).size() << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bounds

int cmd_bounds(unsigned N, const std::string& composition, const std::string& path) {
  std::vector<Composition> comps;
  if (!composition.empty()) {
    try {
      comps.push_back(Composition::parse(composition));
      from_composition(comps.back());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (comps.back().islands.empty()) throw UsageError("composition needs at least one island");
  } else {
    if (N == 0) throw UsageError("bounds needs N >= 1 or --composition");
    if (N > kRowGuardN) throw UsageError("bounds sweeps support N <= 20");
    for_each_composition(N, [&](const std::vector<unsigned>& islands) { comps.push_back({Sign::plus, islands}); });
  }
  Output out(path);
  auto& os = out.stream();
  os << "islands,exact_p,exact_p_decimal,bound,bound_decimal,ratio,ratio_decimal,satisfied\n";
  bool all_ok = true;
  for (const auto& c : comps) {
    const BoundReport r = bound_report(c);
    all_ok = all_ok && r.satisfied;
    std::string islands;
    for (std::size_t k = 0; k < c.islands.size(); ++k) islands += (k ? " " : "") + std::to_string(c.islands[k]);
    os << islands << ',' << to_fraction_string(r.exact_p) << ',' << to_decimal_string(r.exact_p) << ','
       << to_fraction_string(r.bound) << ',' << to_decimal_string(r.bound) << ',' << to_fraction_string(r.ratio)
       << ',' << to_decimal_string(r.ratio) << ',' << (r.satisfied ? "true" : "false") << '\n';
  }
  if (!all_ok) throw VerificationFailure("bound violated");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact up-down permutation numbers: counts, probabilities, universal polynomial, congruences"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads for sweeps")->capture_default_str();
  app.add_flag("--force", common.force, "Lift size guards and the enumeration cap");
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Seed for jittered ties and benchmark sampling");

  // compute
  auto* compute = app.add_subcommand("compute", "C and P for one signature or composition");
  std::string compute_input;
  std::string compute_algo = "recursion";
  bool compute_all = false;
  compute->add_option("input", compute_input,
                      "Signature like ++--+ (use `--` before inputs starting with '-') or composition like +:2,3,1")
      ->required();
  compute->add_option("-a,--algorithm", compute_algo, "recursion | closed-form | triangle | phi | oracle")
      ->capture_default_str();
  compute->add_flag("--all", compute_all, "Run every algorithm and require agreement");

  // dump
  auto* dump_cmd = app.add_subcommand("dump", "All signatures of length N with C and P, in binary-index order");
  unsigned dump_n = 0;
  std::string dump_engine = "recursion", dump_path;
  dump_cmd->add_option("N", dump_n, "Signature length")->required();
  dump_cmd->add_option("-e,--engine", dump_engine, "recursion | phi | triangle")->capture_default_str();
  dump_cmd->add_option("-o,--output", dump_path, "CSV path (default stdout)");

  // congruence
  auto* cong = app.add_subcommand("congruence", "Residues of C(sigma) mod m for every sigma of length N");
  unsigned cong_n = 0;
  std::int64_t cong_m = 0;
  std::string cong_predictor = "auto", cong_path;
  bool cong_doubled = false;
  cong->add_option("N", cong_n, "Signature length")->required();
  cong->add_option("modulus", cong_m, "Modulus m >= 2")->required();
  cong->add_option("-p,--predictor", cong_predictor, "auto | prime | polynomial | mod9 | mod7")
      ->capture_default_str();
  cong->add_flag("--doubled", cong_doubled, "Reduce 2 c_N instead of c_N");
  cong->add_option("-o,--output", cong_path, "Residue CSV path");

  // randomtest
  auto* rt = app.add_subcommand("randomtest", "Up-down probability of a numeric series from CSV");
  std::string rt_path, rt_column = "0", rt_ties = "error";
  double rt_threshold = 0;
  rt->add_option("csv", rt_path, "CSV file with a header row")->required();
  rt->add_option("-c,--column", rt_column, "Column name or 0-based index")->capture_default_str();
  rt->add_option("--tie-policy", rt_ties, "error | drop | jitter")->capture_default_str();
  auto* rt_threshold_opt = rt->add_option("--threshold-log2", rt_threshold, "Flag log2 P below this value");

  // verify
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  std::string ver_suite = "all";
  ver->add_option("suite", ver_suite, "table1 | phi8 | congruences | bounds | identity-sweeps | all")
      ->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Time the algorithms after checking they agree");
  unsigned bench_from = 1, bench_to = 9, bench_samples = 256;
  std::vector<std::string> bench_algos{"all"};
  bench->add_option("--from", bench_from, "Smallest N")->capture_default_str();
  bench->add_option("--to", bench_to, "Largest N")->capture_default_str();
  bench->add_option("--algorithms", bench_algos, "Algorithms (or all)")->delimiter(',');
  bench->add_option("--samples", bench_samples, "Sampled signatures per N above 10")->capture_default_str();

  // phi
  auto* phi_cmd = app.add_subcommand("phi", "Dump the universal polynomial truncated at N");
  unsigned phi_n = 0;
  bool phi_c = false, phi_doubled = false, phi_by_rt = false;
  std::string phi_path;
  phi_cmd->add_option("N", phi_n, "Truncation level")->required();
  phi_cmd->add_flag("--c", phi_c, "Scale to c_N = (N+1)! 2^-N Phi_N");
  phi_cmd->add_flag("--doubled", phi_doubled, "Scale to 2 c_N");
  phi_cmd->add_flag("--by-run-type", phi_by_rt, "One line per gamma-series instead of per monomial");
  phi_cmd->add_option("-o,--output", phi_path, "Output path");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Island-length upper bound reports as CSV");
  unsigned bnd_n = 0;
  std::string bnd_comp, bnd_path;
  bnd->add_option("N", bnd_n, "Report every composition of N");
  bnd->add_option("--composition", bnd_comp, "Single composition, e.g. 2,3,1");
  bnd->add_option("-o,--output", bnd_path, "CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (seed_opt->count()) common.seed = seed_value;

  try {
    if (*compute) return cmd_compute(compute_input, compute_algo, compute_all, common);
    if (*dump_cmd) return cmd_dump(dump_n, dump_engine, dump_path, common);
    if (*cong) return cmd_congruence(cong_n, cong_m, cong_predictor, cong_doubled, cong_path, common);
    if (*rt) {
      std::optional<double> threshold;
      if (rt_threshold_opt->count()) threshold = rt_threshold;
      return cmd_randomtest(rt_path, rt_column, rt_ties, threshold, common);
    }
    if (*ver) return cmd_verify(ver_suite, common);
    if (*bench) return cmd_bench(bench_from, bench_to, bench_algos, bench_samples, common);
    if (*phi_cmd) return cmd_phi(phi_n, phi_c, phi_doubled, phi_by_rt, phi_path);
    if (*bnd) return cmd_bounds(bnd_n, bnd_comp, bnd_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerify;
  } catch (const InadmissibleModulus& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
