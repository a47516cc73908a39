#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qaffine/qaffine_c.h"

// Thin shell over the C API: argument parsing, file IO, and exit codes.
// JSON goes to stdout, everything human-readable to stderr. Exit codes are
// the qaf_status values: 0 pass, 1 check failed, 2 bad input, 3 resource
// limit.

namespace {

struct Selector {
  std::string algebra;
  std::string spec_file;
  std::string family;
  long n = -1;
};

int input_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

int report_last_error(qaf_status st) {
  std::cerr << "error: " << qaf_last_error() << "\n";
  return static_cast<int>(st);
}

bool slurp(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream os;
  os << in.rdbuf();
  *out = os.str();
  return true;
}

std::string family_name(const std::string& family, long n) {
  if (family == "B") return "B1_0_" + std::to_string(n);
  if (family == "A2") return "A2_0_" + std::to_string(n);
  if (family == "C2") return "C2_" + std::to_string(n);
  if (family == "A4") return "A4_0_" + std::to_string(n);
  return "";
}

// Resolves the one algebra selector to a handle, or returns an exit code.
int open_algebra(const Selector& sel, qaf_algebra** out) {
  const int chosen = (!sel.algebra.empty()) + (!sel.spec_file.empty()) + (!sel.family.empty());
  if (chosen != 1)
    return input_error("choose exactly one of --algebra, --spec, --family with --n");
  qaf_status st;
  if (!sel.algebra.empty()) {
    st = qaf_algebra_create_catalog(sel.algebra.c_str(), out);
  } else if (!sel.spec_file.empty()) {
    std::string text;
    if (!slurp(sel.spec_file, &text)) return input_error("cannot read " + sel.spec_file);
    st = qaf_algebra_create_json(text.c_str(), out);
  } else {
    if (sel.n < 0) return input_error("--family needs --n");
    const std::string name = family_name(sel.family, sel.n);
    if (name.empty())
      return input_error("unknown family '" + sel.family + "', expected B, A2, C2 or A4");
    st = qaf_algebra_create_catalog(name.c_str(), out);
  }
  if (st != QAF_OK) return report_last_error(st);
  return 0;
}

void print_json_line(const char* s) {
  std::fputs(s, stdout);
  std::fputc('\n', stdout);
}

void add_selector(CLI::App* cmd, Selector* sel) {
  cmd->add_option("--algebra", sel->algebra, "catalog algebra name");
  cmd->add_option("--spec", sel->spec_file, "path to an algebra spec JSON file");
  cmd->add_option("--family", sel->family, "catalog family: B, A2, C2 or A4")
      ->check(CLI::IsMember({"B", "A2", "C2", "A4"}));
  cmd->add_option("--n", sel->n, "member index within --family");
}

struct JobFlags {
  std::string cache_dir;
  unsigned long long seed = 0;
  bool seed_given = false;
  std::string lambda0;
  bool allow_nonintegrable = false;
};

void add_job_flags(CLI::App* cmd, JobFlags* jf) {
  cmd->add_option("--cache-dir", jf->cache_dir,
                  "rank cache directory (default: $QAFFINE_CACHE_DIR)");
  cmd->add_option("--seed", jf->seed, "seed for the evaluation cross-check points")
      ->each([jf](const std::string&) { jf->seed_given = true; });
}

qaf_job_options to_options(const JobFlags& jf, std::string* cache_store) {
  *cache_store = jf.cache_dir;
  if (cache_store->empty()) {
    if (const char* env = std::getenv("QAFFINE_CACHE_DIR")) *cache_store = env;
  }
  qaf_job_options opt{};
  opt.cache_dir = cache_store->empty() ? nullptr : cache_store->c_str();
  opt.lambda0 = jf.lambda0.empty() ? nullptr : jf.lambda0.c_str();
  opt.seed = jf.seed;
  opt.use_seed = jf.seed_given ? 1 : 0;
  opt.allow_nonintegrable = jf.allow_nonintegrable ? 1 : 0;
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact characters and relation checks for affine superalgebras at generic q"};
  app.require_subcommand(1);

  CLI::App* cmd_catalog = app.add_subcommand("catalog", "list the built-in algebras");

  std::string validate_file;
  CLI::App* cmd_validate = app.add_subcommand("validate", "check an algebra spec file");
  cmd_validate->add_option("--spec", validate_file, "path to an algebra spec JSON file")
      ->required();

  Selector chr_sel;
  JobFlags chr_flags;
  std::string chr_labels, chr_format = "json";
  long chr_depth = -1;
  CLI::App* cmd_character =
      app.add_subcommand("character", "weight multiplicities of a highest-weight module");
  add_selector(cmd_character, &chr_sel);
  add_job_flags(cmd_character, &chr_flags);
  cmd_character->add_option("--labels", chr_labels, "comma-separated rational labels")
      ->required();
  cmd_character->add_option("--lambda0", chr_flags.lambda0,
                            "claimed lambda0 coefficient, validated against the labels");
  cmd_character->add_option("--depth", chr_depth, "height bound on the weights (default 5)");
  cmd_character->add_option("--format", chr_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd_character->add_flag("--allow-nonintegrable", chr_flags.allow_nonintegrable,
                          "permit labels outside the integrable-dominant set");

  Selector ver_sel;
  JobFlags ver_flags;
  std::string ver_kind, ver_labels, ver_labels2;
  long ver_depth = -1;
  bool ver_mutate = false, ver_specialized = false;
  CLI::App* cmd_verify = app.add_subcommand("verify", "run a relation or character check");
  cmd_verify
      ->add_option("kind", ver_kind, "serre | presentation | tensor | classical | twist")
      ->required()
      ->check(CLI::IsMember({"serre", "presentation", "tensor", "classical", "twist"}));
  add_selector(cmd_verify, &ver_sel);
  add_job_flags(cmd_verify, &ver_flags);
  cmd_verify->add_option("--labels", ver_labels, "highest-weight labels for module checks");
  cmd_verify->add_option("--labels2", ver_labels2, "labels of the right tensor factor");
  cmd_verify->add_option("--depth", ver_depth,
                         "height bound on the checked words (default 4; tensor 2)");
  cmd_verify->add_flag("--mutate-sign", ver_mutate,
                       "negative control: corrupt the twist sign vectors");
  cmd_verify->add_flag("--specialized,--q-minus-one", ver_specialized,
                       "check the presentation coefficients at q = -1");

  Selector exp_sel;
  CLI::App* cmd_export = app.add_subcommand("export", "print an algebra spec as JSON");
  add_selector(cmd_export, &exp_sel);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (app.got_subcommand(cmd_catalog)) {
    char* s = qaf_catalog_list();
    if (!s) return report_last_error(QAF_BAD_INPUT);
    print_json_line(s);
    qaf_string_free(s);
    return 0;
  }

  if (app.got_subcommand(cmd_validate)) {
    std::string text;
    if (!slurp(validate_file, &text)) return input_error("cannot read " + validate_file);
    const qaf_status st = qaf_validate_json(text.c_str());
    if (st == QAF_BAD_INPUT) return report_last_error(st);
    std::ostringstream os;
    os << "{\n  \"check\": \"validate\",\n  \"status\": \""
       << (st == QAF_OK ? "pass" : "fail") << "\",\n  \"diagnostic\": ";
    if (st == QAF_OK) {
      os << "null";
    } else {
      std::string msg = qaf_last_error();
      std::string escaped;
      for (char c : msg) {
        if (c == '"' || c == '\\') escaped += '\\';
        escaped += c;
      }
      os << '"' << escaped << '"';
      std::cerr << "invalid spec: " << msg << "\n";
    }
    os << "\n}";
    print_json_line(os.str().c_str());
    return static_cast<int>(st);
  }

  if (app.got_subcommand(cmd_character)) {
    qaf_algebra* alg = nullptr;
    if (int rc = open_algebra(chr_sel, &alg)) return rc;
    std::string cache_store;
    const qaf_job_options opt = to_options(chr_flags, &cache_store);
    char* out = nullptr;
    const qaf_status st =
        chr_format == "csv"
            ? qaf_character_csv(alg, chr_labels.c_str(), chr_depth, &opt, &out)
            : qaf_character(alg, chr_labels.c_str(), chr_depth, &opt, &out);
    qaf_algebra_destroy(alg);
    if (st == QAF_BAD_INPUT) return report_last_error(st);
    if (out) {
      if (chr_format == "csv")
        std::fputs(out, stdout);
      else
        print_json_line(out);
      qaf_string_free(out);
    }
    if (st == QAF_RESOURCE_LIMIT)
      std::cerr << "warning: a weight space hit the basis limit; table is partial\n";
    return static_cast<int>(st);
  }

  if (app.got_subcommand(cmd_verify)) {
    if (ver_specialized && ver_kind != "presentation")
      return input_error("--specialized applies only to 'verify presentation'");
    if (ver_mutate && ver_kind != "twist")
      return input_error("--mutate-sign applies only to 'verify twist'");
    qaf_algebra* alg = nullptr;
    if (int rc = open_algebra(ver_sel, &alg)) return rc;
    std::string cache_store;
    const qaf_job_options opt = to_options(ver_flags, &cache_store);
    const std::string kind = ver_specialized ? "specialized" : ver_kind;
    char* out = nullptr;
    const qaf_status st = qaf_verify(
        alg, kind.c_str(), ver_labels.empty() ? nullptr : ver_labels.c_str(),
        ver_labels2.empty() ? nullptr : ver_labels2.c_str(), ver_depth,
        ver_mutate ? 1 : 0, &opt, &out);
    qaf_algebra_destroy(alg);
    if (st != QAF_OK && st != QAF_CHECK_FAILED) return report_last_error(st);
    if (out) {
      print_json_line(out);
      qaf_string_free(out);
    }
    std::cerr << (st == QAF_OK ? "pass" : "FAIL") << ": " << kind << "\n";
    return static_cast<int>(st);
  }

  if (app.got_subcommand(cmd_export)) {
    qaf_algebra* alg = nullptr;
    if (int rc = open_algebra(exp_sel, &alg)) return rc;
    char* s = qaf_algebra_export_json(alg);
    qaf_algebra_destroy(alg);
    if (!s) return report_last_error(QAF_BAD_INPUT);
    print_json_line(s);
    qaf_string_free(s);
    return 0;
  }

  return input_error("no subcommand");
}
