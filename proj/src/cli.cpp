#include "brlab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <openssl/sha.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "brlab/binary_forms.hpp"
#include "brlab/bounds.hpp"
#include "brlab/exterior.hpp"
#include "brlab/repcomb.hpp"

namespace brlab {

namespace {

using nlohmann::json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadPrime:
    case ErrorKind::DivisionByZero:
    case ErrorKind::FieldMismatch:
      return kExitArithmetic;
    default:
      return kExitUsage;
  }
}

std::vector<Rational> parse_vector(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  if (out.empty()) throw UsageError("empty vector '" + text + "'");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
  std::ostringstream hex;
  for (auto b : digest) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(b);
  return hex.str();
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

struct TensorFlags {
  int m = 0, n = 0, l = 0;
  std::string field = "Q";
  std::string u, v, w;
  std::string out;
};

struct BoundFlags {
  std::string method;
  std::optional<int> p;
  std::string tensor;
  std::optional<int> m, n, l;
  std::string field = "auto";
};

struct KernelFlags {
  int m = 0, n = 0, p = 0, l = 1;
  std::string check = "both";
  std::string field = "auto";
};

struct TableFlags {
  int n_min = 0, n_max = 0;
  std::optional<int> l;
  bool json = false;
  std::size_t budget = kDefaultTableBudget;
};

struct KoszulFlags {
  std::string tensor;
  std::optional<int> m, n, l;
  int p = 0;
  bool restricted = false;
  std::string out;
  std::string labels;
};

struct RankFlags {
  std::string matrix;
  std::string field = "auto";
};

std::string run_tensor(const std::string& kind, const TensorFlags& f) {
  Tensor3 t = [&] {
    if (kind == "matmul") {
      if (f.m < 1 || f.n < 1 || f.l < 1) throw UsageError("--m, --n, --l must be >= 1");
      return matmul_tensor(f.m, f.n, f.l, FieldTag::parse(f.field));
    }
    if (kind == "rank-one") {
      return rank_one_tensor(parse_vector(f.u), parse_vector(f.v), parse_vector(f.w), FieldTag::parse(f.field));
    }
    if (f.m < 1 || f.n < 1 || f.l < 1) throw UsageError("--m, --n, --l must be >= 1");
    const auto setup = restriction_projector(f.m, f.n);
    return project_factor_A(matmul_tensor(f.m, f.n, f.l, FieldTag::parse(f.field)), setup.projector);
  }();
  std::ostringstream ss;
  write_tensor(ss, t);
  return ss.str();
}

// The tensor a bound or flattening refers to: a file, or matmul(m, n, l).
struct TensorSource {
  Tensor3 tensor;
  std::optional<std::string> hash;
};

TensorSource load_tensor(const std::string& path, std::optional<int> m, std::optional<int> n, std::optional<int> l) {
  if (!path.empty()) {
    if (m || n || l) throw UsageError("give either --tensor or --m/--n/--l, not both");
    const auto bytes = read_file(path);
    std::istringstream in(bytes);
    return {read_tensor(in), sha256_hex(bytes)};
  }
  if (!m || !n || !l) throw UsageError("need --tensor FILE or all of --m, --n, --l");
  return {matmul_tensor(*m, *n, *l), std::nullopt};
}

json run_bound(const BoundFlags& f) {
  const auto choice = FieldChoice::parse(f.field);
  const std::string& method = f.method;
  auto no_tensor_file = [&] {
    if (!f.tensor.empty()) throw UsageError("--method " + method + " does not take --tensor");
  };
  if (method == "lickteig-square") {
    no_tensor_file();
    if (!f.n) throw UsageError("lickteig-square needs --n");
    return to_json(lickteig_certificate(*f.n));
  }
  if (method == "theorem1-formula") {
    no_tensor_file();
    if (!f.m || !f.n || !f.l) throw UsageError("theorem1-formula needs --m, --n, --l");
    return to_json(theorem1_certificate(*f.m, *f.n, *f.l));
  }
  if (method == "koszul-restricted") {
    no_tensor_file();
    if (!f.m || !f.n || !f.l) throw UsageError("koszul-restricted needs --m, --n, --l");
    if (f.p && *f.p != *f.n - 1) throw UsageError("koszul-restricted uses p = n-1");
    return to_json(bound_matmul_restricted(*f.m, *f.n, *f.l, choice));
  }
  auto source = load_tensor(f.tensor, f.m, f.n, f.l);
  BoundCertificate cert = [&] {
    if (method == "classical") {
      if (f.p) throw UsageError("classical does not take --p");
      return bound_classical(source.tensor, choice);
    }
    if (method == "strassen") {
      if (f.p && *f.p != 1) throw UsageError("strassen is the p = 1 Koszul flattening");
      return bound_koszul(source.tensor, 1, choice);
    }
    if (!f.p) throw UsageError("koszul needs --p");
    return bound_koszul(source.tensor, *f.p, choice);
  }();
  cert.m = f.m;
  cert.n = f.n;
  cert.l = f.l;
  cert.tensor_hash = source.hash;
  return to_json(cert);
}

json run_kernel_dim(const KernelFlags& f) {
  const auto& check = f.check;
  const bool want_pieri = check == "pieri" || check == "both" || check == "rank";
  const bool want_formula = check == "formula" || check == "both" || check == "rank";
  json j{{"m", f.m}, {"n", f.n}, {"p", f.p}, {"l", f.l}, {"check", check}};
  std::vector<std::int64_t> values;
  if (want_pieri) {
    const auto v = kernel_dim_pieri(f.m, f.n, f.p, f.l);
    j["pieri"] = v;
    values.push_back(static_cast<std::int64_t>(v));
  }
  if (want_formula) {
    const auto v = kernel_dim_formula(f.m, f.n, f.p, f.l);
    j["formula"] = v;
    j["validated_range"] = kernel_formula_validated(f.m, f.n, f.p);
    values.push_back(v);
  }
  if (check == "rank") {
    const auto k = koszul_flattening(matmul_tensor(f.m, f.n, f.l), f.p);
    const auto r = compute_rank(k.matrix, FieldChoice::parse(f.field));
    const auto kernel = static_cast<std::int64_t>(k.matrix.cols()) - static_cast<std::int64_t>(r.rank);
    j["source_dim"] = k.matrix.cols();
    j["rank"] = r.rank;
    j["rank_field"] = r.field.str();
    j["rank_kernel"] = kernel;
    values.push_back(kernel);
  }
  const bool agree = std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
  j["agree"] = agree;
  if (!agree) throw CrossCheckFailure(j.dump());
  return j;
}

std::string run_table(const TableFlags& f) {
  if (f.n_min > f.n_max) throw UsageError("--n-min must not exceed --n-max");
  if (f.n_min < 1) throw UsageError("--n-min must be >= 1");
  const auto rule = f.l ? LRule::fixed(*f.l) : LRule::equal_n();
  const auto rows = compare_table(f.n_min, f.n_max, rule, f.budget);
  if (f.json) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
  }
  auto cell = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
  std::ostringstream ss;
  ss << std::setw(4) << "n" << std::setw(4) << "l" << std::setw(11) << "classical" << std::setw(10) << "strassen"
     << std::setw(10) << "lickteig" << std::setw(10) << "theorem1" << std::setw(10) << "computed" << '\n';
  for (const auto& r : rows) {
    ss << std::setw(4) << r.n << std::setw(4) << r.l << std::setw(11) << r.classical << std::setw(10)
       << cell(r.strassen) << std::setw(10) << cell(r.lickteig) << std::setw(10) << r.theorem1 << std::setw(10)
       << cell(r.computed) << '\n';
  }
  return ss.str();
}

void run_koszul(const KoszulFlags& f, std::ostream& out) {
  KoszulMatrix k = [&] {
    if (f.restricted) {
      if (!f.tensor.empty()) throw UsageError("--restricted builds from --m/--n/--l, not --tensor");
      if (!f.m || !f.n || !f.l) throw UsageError("--restricted needs --m, --n, --l");
      return restricted_koszul(*f.m, *f.n, *f.l, f.p);
    }
    return koszul_flattening(load_tensor(f.tensor, f.m, f.n, f.l).tensor, f.p);
  }();
  std::ostringstream ss;
  write_matrix(ss, k.matrix);
  emit(out, f.out, ss.str());
  if (!f.labels.empty()) {
    std::ostringstream ls;
    write_labels(ls, k);
    emit(out, f.labels, ls.str());
  }
}

json run_rank(const RankFlags& f) {
  std::ifstream in(f.matrix);
  if (!in) throw UsageError("cannot open '" + f.matrix + "'");
  const auto m = read_matrix(in);
  const auto r = compute_rank(m, FieldChoice::parse(f.field));
  json j{{"rows", m.rows()},
         {"cols", m.cols()},
         {"nnz", m.nnz()},
         {"rank", r.rank},
         {"field", r.field.str()},
         {"method", to_string(r.method)},
         {"certified_lower_bound_over_q", r.certified_lower_bound_over_q}};
  return j;
}

}  // namespace

int report_failure(const std::exception& e, std::ostream& out, std::ostream& err) {
  if (const auto* c = dynamic_cast<const CrossCheckFailure*>(&e)) {
    out << c->what() << '\n';
    err << "error: cross-check disagreement\n";
    return kExitCrossCheck;
  }
  err << "error: " << e.what() << '\n';
  if (const auto* b = dynamic_cast<const Error*>(&e)) return exit_code_for(b->kind());
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Border-rank lower bounds from Koszul flattenings", "brlab"};
  app.require_subcommand(1, 1);

  TensorFlags tf;
  auto* tensor = app.add_subcommand("tensor", "Construct a tensor file");
  tensor->require_subcommand(1, 1);
  auto* t_matmul = tensor->add_subcommand("matmul", "Matrix multiplication tensor M<m,n,l>");
  auto* t_rank_one = tensor->add_subcommand("rank-one", "Rank-one tensor u (x) v (x) w");
  auto* t_restrict = tensor->add_subcommand("restrict", "M<m,n,l> with A projected onto S^{m+n-2}W*");
  for (auto* sub : {t_matmul, t_restrict}) {
    sub->add_option("--m", tf.m)->required();
    sub->add_option("--n", tf.n)->required();
  }
  t_matmul->add_option("--l", tf.l)->required();
  tf.l = 1;
  t_restrict->add_option("--l", tf.l, "defaults to 1");
  t_rank_one->add_option("--u", tf.u, "comma-separated rationals")->required();
  t_rank_one->add_option("--v", tf.v)->required();
  t_rank_one->add_option("--w", tf.w)->required();
  for (auto* sub : {t_matmul, t_rank_one, t_restrict}) {
    sub->add_option("--field", tf.field, "Q or Fp:<prime>");
    sub->add_option("--out", tf.out, "output file (stdout when omitted)");
  }

  BoundFlags bf;
  auto* bound = app.add_subcommand("bound", "Print a border-rank lower-bound certificate");
  bound->add_option("--method", bf.method)
      ->required()
      ->check(CLI::IsMember(
          {"classical", "strassen", "koszul", "koszul-restricted", "theorem1-formula", "lickteig-square"}));
  bound->add_option("--p", bf.p);
  bound->add_option("--tensor", bf.tensor, "tensor JSON file");
  bound->add_option("--m", bf.m);
  bound->add_option("--n", bf.n);
  bound->add_option("--l", bf.l);
  bound->add_option("--field", bf.field, "auto, q, fp, fp:<prime> or multiprime");

  KernelFlags kf;
  auto* kernel = app.add_subcommand("kernel-dim", "Kernel dimension of the matmul Koszul flattening");
  kernel->add_option("--m", kf.m)->required();
  kernel->add_option("--n", kf.n)->required();
  kernel->add_option("--p", kf.p)->required();
  kernel->add_option("--l", kf.l);
  kernel->add_option("--check", kf.check)->check(CLI::IsMember({"pieri", "formula", "both", "rank"}));
  kernel->add_option("--field", kf.field, "field for --check rank");

  TableFlags tbf;
  auto* table = app.add_subcommand("table", "Compare lower bounds for M<n,n,l>");
  table->add_option("--n-min", tbf.n_min)->required();
  table->add_option("--n-max", tbf.n_max)->required();
  table->add_option("--l", tbf.l, "fixed l (default: l = n)");
  table->add_option("--budget", tbf.budget, "largest matrix column count to compute");
  table->add_flag("--json", tbf.json);

  KoszulFlags kzf;
  auto* koszul = app.add_subcommand("koszul", "Write a Koszul flattening as a sparse matrix file");
  koszul->add_option("--p", kzf.p)->required();
  koszul->add_option("--tensor", kzf.tensor);
  koszul->add_option("--m", kzf.m);
  koszul->add_option("--n", kzf.n);
  koszul->add_option("--l", kzf.l);
  koszul->add_flag("--restricted", kzf.restricted, "restrict A to S^{m+n-2}W* first");
  koszul->add_option("--out", kzf.out);
  koszul->add_option("--labels", kzf.labels, "also write row/column labels to this file");

  RankFlags rf;
  auto* rank = app.add_subcommand("rank", "Rank of a sparse matrix file");
  rank->add_option("--matrix", rf.matrix)->required();
  rank->add_option("--field", rf.field);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*tensor) {
      const std::string kind = *t_matmul ? "matmul" : *t_rank_one ? "rank-one" : "restrict";
      emit(out, tf.out, run_tensor(kind, tf));
    } else if (*bound) {
      out << run_bound(bf).dump() << '\n';
    } else if (*kernel) {
      out << run_kernel_dim(kf).dump() << '\n';
    } else if (*table) {
      out << run_table(tbf);
    } else if (*koszul) {
      run_koszul(kzf, out);
    } else if (*rank) {
      out << run_rank(rf).dump() << '\n';
    }
  } catch (const UsageError& e) {
    return report_failure(e, out, err);
  } catch (const CrossCheckFailure& e) {
    return report_failure(e, out, err);
  } catch (const Error& e) {
    return report_failure(e, out, err);
  }
  return kExitOk;
}

}  // namespace brlab
