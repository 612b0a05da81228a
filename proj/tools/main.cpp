// twosided: build Coxeter groups, verify the two-sided complex, print tables.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twosided/complex.hpp"
#include "twosided/contingency.hpp"
#include "twosided/double_coset.hpp"
#include "twosided/enumeration.hpp"
#include "twosided/errors.hpp"
#include "twosided/io.hpp"

using namespace twosided;

namespace {

enum Exit { kPass = 0, kVerifyFailed = 1, kUsage = 2, kCapacity = 3 };

constexpr std::uint64_t kHeavyOrder = 1'000'000;
constexpr std::uint64_t kStructuralSample = 10'000;

struct RunConfig {
  std::string type_spec;
  std::string cache_dir = ".twosided-cache";
  std::string format = "text";
  std::uint64_t budget = kDefaultElementBudget;
  bool allow_heavy = false;
  std::string out;
  std::string what = "hasse";
  int min_rank = 0;
  int max_rank = 64;
};

CachedGroup load(const RunConfig &cfg) {
  const CoxeterSystem system = classify_finite(parse_type_spec(cfg.type_spec));
  if (system.order() > kHeavyOrder && !cfg.allow_heavy)
    throw CapacityExceeded(system.label() + " has " + std::to_string(system.order()) +
                           " elements; pass --allow-heavy to build it");
  return load_or_build(cfg.type_spec, cfg.cache_dir, cfg.budget);
}

/// Output goes to --out when given, else stdout.
class Sink {
public:
  explicit Sink(const std::string &path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_)
        throw InvalidArgument("cannot open " + path + " for writing");
    }
  }
  std::ostream &stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

int cmd_build(const RunConfig &cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const CachedGroup cached = load(cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const GroupTable &table = cached.table;
  if (table.order() != table.system().order())
    throw InvariantViolation("built " + std::to_string(table.order()) + " elements but " +
                             table.system().label() + " has order " +
                             std::to_string(table.system().order()));
  std::cout << table.system().label() << ": order " << table.order() << ", longest length "
            << table.max_length() << (cached.hit ? ", cache hit " : ", built ")
            << cached.path.string() << " (" << secs << " s)\n";
  return kPass;
}

struct CheckLine {
  std::string name;
  std::string status; // PASS, FAIL, SKIP
  std::string detail;
};

int cmd_verify(const RunConfig &cfg) {
  const CachedGroup cached = load(cfg);
  const GroupTable &table = cached.table;
  const int n = table.rank();
  const XiComplex complex(table);
  std::vector<CheckLine> lines;

  auto record = [&](const std::string &name, const std::function<CheckResult()> &run) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const CheckResult r = run();
      std::ostringstream detail;
      if (r.ok)
        detail << r.checked << " checked";
      else
        detail << r.failure;
      detail << " (" << std::fixed << std::setprecision(2)
             << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
             << " s)";
      lines.push_back({name, r.ok ? "PASS" : "FAIL", detail.str()});
    } catch (const Error &e) {
      lines.push_back({name, "FAIL", e.what()});
    }
  };
  auto skip = [&](const std::string &name, const std::string &why) {
    lines.push_back({name, "SKIP", why});
  };
  auto flag = [](bool ok, const std::string &what) {
    CheckResult r;
    r.checked = 1;
    if (!ok)
      r.fail(what);
    return r;
  };

  const FaceSample sample{n <= 3 ? 0 : kStructuralSample, 1};
  record("boolean_intervals", [&] { return verify_boolean_intervals(complex, sample); });
  record("balanced", [&] { return verify_balanced(complex, sample); });
  record("partition", [&] { return verify_partition(complex, sample); });
  record("weak_order_monotone", [&] { return verify_weak_order_monotone(complex, sample); });
  record("facet_count", [&] {
    return flag(complex.facet_count() == table.system().order(), "facet count differs from |W|");
  });
  record("sigma_ideal", [&] {
    return coxeter_subcomplex(complex, n <= 3 ? 0 : kStructuralSample).isomorphism;
  });
  if (n <= 3 || cfg.allow_heavy) {
    record("shelling", [&] {
      const auto order = length_order(table);
      const ShellingReport rep = verify_shelling(complex, order);
      CheckResult r;
      r.checked = rep.positions_checked;
      if (!rep.is_shelling)
        r.fail("shelling condition fails at position " + std::to_string(*rep.first_failure));
      else if (!rep.descent_formula)
        r.fail("descent formula fails at position " +
               std::to_string(*rep.first_formula_mismatch));
      return r;
    });
  } else {
    skip("shelling", "rank > 3; pass --allow-heavy");
  }
  record("thin", [&] { return verify_thin(complex); });
  record("pseudomanifold", [&] { return verify_pseudomanifold(complex); });
  record("euler_characteristic", [&] {
    const auto chi = euler_characteristic(complex);
    return flag(chi == 0, "reduced Euler characteristic is " + std::to_string(chi));
  });

  std::optional<EulerianMatrix> matrix;
  const bool flag_ok = table.order() * (std::uint64_t{1} << (2 * n)) <= 2'000'000'000ull;
  if (flag_ok || cfg.allow_heavy) {
    record("reciprocity", [&] {
      const FlagCounts counts = flag_counts(table);
      CheckResult r = flag(reciprocity_check(counts.f, counts.h), "f/h reciprocity fails");
      if (r.ok && flag_h_by_inclusion_exclusion(counts.f) != counts.h)
        r.fail("inclusion-exclusion h differs from the descent census");
      if (r.ok)
        matrix = verified_eulerian(table, counts.f);
      return r;
    });
  } else {
    skip("reciprocity", "subset-pair census too large; pass --allow-heavy");
  }
  if (!matrix)
    matrix = eulerian_matrix(table);
  record("symmetries", [&] { return flag(check_symmetries(*matrix), "matrix symmetry fails"); });
  record("gamma", [&] {
    const GammaTable gamma = gamma_expansion(*matrix);
    return flag(gamma.negative_entries().empty(), "gamma table has negative entries");
  });
  if (table.system().is_standard_type_a() && (n <= 3 || cfg.allow_heavy))
    record("contingency_isomorphism", [&] { return verify_isomorphism(table); });
  else if (table.system().is_standard_type_a())
    skip("contingency_isomorphism", "rank > 3; pass --allow-heavy");

  bool failed = false;
  for (const auto &l : lines)
    failed |= l.status == "FAIL";
  Sink sink(cfg.out);
  if (cfg.format == "json") {
    nlohmann::json j;
    j["type"] = table.system().label();
    j["order"] = table.order();
    j["faces"] = complex.size();
    for (const auto &l : lines)
      j["checks"].push_back({{"name", l.name}, {"status", l.status}, {"detail", l.detail}});
    j["ok"] = !failed;
    sink.stream() << j.dump(2) << '\n';
  } else {
    sink.stream() << table.system().label() << ": " << table.order() << " elements, "
                  << complex.size() << " faces\n";
    for (const auto &l : lines)
      sink.stream() << l.status << ' ' << l.name << ": " << l.detail << '\n';
  }
  return failed ? kVerifyFailed : kPass;
}

int cmd_tables(const RunConfig &cfg) {
  const CachedGroup cached = load(cfg);
  const EulerianMatrix m = eulerian_matrix(cached.table);
  const GammaTable gamma = gamma_expansion(m);
  Rows mrows = m.rows();
  Rows grows = gamma.display_rows();
  Sink sink(cfg.out);
  std::ostream &os = sink.stream();
  switch (parse_format(cfg.format)) {
  case Format::Json: {
    nlohmann::json j;
    j["type"] = cached.table.system().label();
    j["eulerian"] = mrows;
    j["gamma"] = grows;
    os << j.dump(2) << '\n';
    break;
  }
  case Format::Csv:
    write_matrix_csv(os, mrows);
    os << '\n';
    write_matrix_csv(os, grows);
    break;
  case Format::Text:
    os << cached.table.system().label() << " two-sided Eulerian numbers\n";
    write_matrix_text(os, mrows);
    os << "\ngamma\n";
    write_matrix_text(os, grows);
    break;
  case Format::Dot:
    throw InvalidArgument("tables have no dot format");
  }
  return kPass;
}

int cmd_export(const RunConfig &cfg) {
  const CachedGroup cached = load(cfg);
  const XiComplex complex(cached.table);
  Sink sink(cfg.out);
  if (cfg.what == "hasse")
    write_hasse_dot(sink.stream(), complex, cfg.min_rank, cfg.max_rank);
  else if (cfg.what == "sigma")
    write_sigma_dot(sink.stream(), complex);
  else if (cfg.what == "contingency")
    write_contingency_json(sink.stream(), complex);
  else
    throw InvalidArgument("unknown export '" + cfg.what + "'");
  return kPass;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Two-sided Coxeter complexes: groups, verification, Eulerian tables"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App *sub) {
    sub->add_option("-t,--type", cfg.type_spec, "Coxeter type, e.g. A3, B4xA1, I2(7)")
        ->required();
    sub->add_option("--cache-dir", cfg.cache_dir, "group cache directory")
        ->envname("TWOSIDED_CACHE_DIR");
    sub->add_option("--budget", cfg.budget, "maximum number of group elements");
    sub->add_flag("--allow-heavy", cfg.allow_heavy, "enable large groups and slow checks");
    sub->add_option("-o,--out", cfg.out, "output file (default stdout)");
  };
  auto *build = app.add_subcommand("build", "build a group and write it to the cache");
  common(build);
  auto *verify = app.add_subcommand("verify", "run the verification suite");
  common(verify);
  verify->add_option("--format", cfg.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  auto *tables = app.add_subcommand("tables", "print the Eulerian matrix and gamma table");
  common(tables);
  tables->add_option("--format", cfg.format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  auto *exp = app.add_subcommand("export", "write a Hasse diagram or contingency tables");
  common(exp);
  exp->add_option("what", cfg.what, "hasse, sigma or contingency")
      ->check(CLI::IsMember({"hasse", "sigma", "contingency"}));
  exp->add_option("--format", cfg.format, "dot (hasse, sigma) or json (contingency)");
  exp->add_option("--min-rank", cfg.min_rank, "lowest face rank in the Hasse diagram");
  exp->add_option("--max-rank", cfg.max_rank, "highest face rank in the Hasse diagram");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*build)
      return cmd_build(cfg);
    if (*verify)
      return cmd_verify(cfg);
    if (*tables)
      return cmd_tables(cfg);
    return cmd_export(cfg);
  } catch (const CapacityExceeded &e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const InvalidArgument &e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const NotFinite &e) {
    std::cerr << "not finite: " << e.what() << '\n';
    return kUsage;
  } catch (const CorruptCache &e) {
    std::cerr << "corrupt cache: " << e.what() << '\n';
    return kUsage;
  } catch (const WrongType &e) {
    std::cerr << "wrong type: " << e.what() << '\n';
    return kUsage;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
}
