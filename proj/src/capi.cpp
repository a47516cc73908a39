#include "qaffine/qaffine_c.h"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "qaffine/cartan.hpp"
#include "qaffine/service.hpp"
#include "qaffine/verma.hpp"

using namespace qaffine;

struct qaf_algebra {
  AlgebraData data;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs a callable, mapping exceptions onto status codes and the thread's
// error slot. The callable returns a qaf_status itself so verification
// outcomes can pass through.
template <typename F>
qaf_status guarded(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const ResourceLimit& e) {
    g_last_error = e.what();
    return QAF_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QAF_BAD_INPUT;
  }
}

JobOptions to_job_options(const qaf_job_options* opt) {
  JobOptions jo;
  if (!opt) return jo;
  if (opt->cache_dir && *opt->cache_dir) jo.cache_dir = opt->cache_dir;
  if (opt->lambda0) jo.lambda0_claim = opt->lambda0;
  if (opt->use_seed) jo.seed = opt->seed;
  jo.allow_nonintegrable = opt->allow_nonintegrable != 0;
  return jo;
}

const char* require(const char* p, const char* what) {
  if (!p) throw std::invalid_argument(std::string("null ") + what);
  return p;
}

}  // namespace

extern "C" {

uint32_t qaf_abi_version(void) { return 1; }

void qaf_string_free(char* s) { std::free(s); }

const char* qaf_last_error(void) { return g_last_error.c_str(); }

char* qaf_catalog_list(void) {
  g_last_error.clear();
  try {
    return dup_string(catalog_listing().dump(2));
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

qaf_status qaf_algebra_create_catalog(const char* name, qaf_algebra** out) {
  return guarded([&]() -> qaf_status {
    require(name, "name");
    require(reinterpret_cast<const char*>(out), "output handle");
    *out = new qaf_algebra{catalog(name)};
    return QAF_OK;
  });
}

qaf_status qaf_algebra_create_json(const char* spec_json, qaf_algebra** out) {
  return guarded([&]() -> qaf_status {
    require(spec_json, "spec");
    require(reinterpret_cast<const char*>(out), "output handle");
    *out = new qaf_algebra{AlgebraData::from_json(spec_json)};
    return QAF_OK;
  });
}

qaf_status qaf_algebra_partner(const qaf_algebra* a, qaf_algebra** out) {
  return guarded([&]() -> qaf_status {
    if (!a) throw std::invalid_argument("null algebra");
    require(reinterpret_cast<const char*>(out), "output handle");
    *out = new qaf_algebra{partner(a->data)};
    return QAF_OK;
  });
}

char* qaf_algebra_export_json(const qaf_algebra* a) {
  g_last_error.clear();
  if (!a) {
    g_last_error = "null algebra";
    return nullptr;
  }
  try {
    return dup_string(a->data.to_json());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

void qaf_algebra_destroy(qaf_algebra* a) { delete a; }

qaf_status qaf_validate_json(const char* spec_json) {
  g_last_error.clear();
  if (!spec_json) {
    g_last_error = "null spec";
    return QAF_BAD_INPUT;
  }
  try {
    AlgebraData::from_json(spec_json);
    return QAF_OK;
  } catch (const std::invalid_argument& e) {
    // Text or shape problems all say "JSON"; anything else is well-formed
    // input describing an impossible algebra, which is a finding.
    g_last_error = e.what();
    const std::string what = e.what();
    if (what.find("JSON") != std::string::npos) return QAF_BAD_INPUT;
    return QAF_CHECK_FAILED;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QAF_BAD_INPUT;
  }
}

qaf_status qaf_character(const qaf_algebra* a, const char* labels_csv, long depth,
                         const qaf_job_options* opt, char** json_out) {
  return guarded([&]() -> qaf_status {
    if (!a) throw std::invalid_argument("null algebra");
    require(labels_csv, "labels");
    require(reinterpret_cast<const char*>(json_out), "output handle");
    const JobOptions jo = to_job_options(opt);
    const auto labels = parse_labels(labels_csv, a->data.node_count());
    const long d = depth < 0 ? 5 : depth;
    const nlohmann::ordered_json table = character_json(a->data, labels, d, jo);
    *json_out = dup_string(table.dump(2));
    const bool partial = table.contains("partial") && table["partial"].get<bool>();
    return partial ? QAF_RESOURCE_LIMIT : QAF_OK;
  });
}

qaf_status qaf_character_csv(const qaf_algebra* a, const char* labels_csv, long depth,
                             const qaf_job_options* opt, char** csv_out) {
  return guarded([&]() -> qaf_status {
    if (!a) throw std::invalid_argument("null algebra");
    require(labels_csv, "labels");
    require(reinterpret_cast<const char*>(csv_out), "output handle");
    const JobOptions jo = to_job_options(opt);
    const auto labels = parse_labels(labels_csv, a->data.node_count());
    const long d = depth < 0 ? 5 : depth;
    const nlohmann::ordered_json table = character_json(a->data, labels, d, jo);
    *csv_out = dup_string(character_csv(table));
    const bool partial = table.contains("partial") && table["partial"].get<bool>();
    return partial ? QAF_RESOURCE_LIMIT : QAF_OK;
  });
}

qaf_status qaf_verify(const qaf_algebra* a, const char* kind, const char* labels_csv,
                      const char* labels2_csv, long depth, int mutate_sign,
                      const qaf_job_options* opt, char** json_out) {
  return guarded([&]() -> qaf_status {
    if (!a) throw std::invalid_argument("null algebra");
    require(kind, "kind");
    require(reinterpret_cast<const char*>(json_out), "output handle");
    const JobOptions jo = to_job_options(opt);

    VerifyJob job;
    job.kind = kind;
    job.mutate_sign = mutate_sign != 0;
    const bool needs_labels =
        job.kind == "serre" || job.kind == "classical" || job.kind == "tensor" ||
        job.kind == "twist";
    if (needs_labels) {
      require(labels_csv, "labels");
      job.labels = parse_labels(labels_csv, a->data.node_count());
    }
    if (job.kind == "tensor") {
      require(labels2_csv, "second labels");
      job.labels2 = parse_labels(labels2_csv, a->data.node_count());
    }
    job.depth = depth >= 0 ? depth : (job.kind == "tensor" ? 2 : 4);

    const VerificationReport rep = run_verify(a->data, job, jo);
    *json_out = dup_string(rep.to_json().dump(2));
    return rep.pass ? QAF_OK : QAF_CHECK_FAILED;
  });
}

}  // extern "C"
