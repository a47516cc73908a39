#include "qaffine/service.hpp"

#include <memory>
#include <sstream>
#include <stdexcept>

#include "qaffine/algebra.hpp"
#include "qaffine/cache.hpp"
#include "qaffine/transmutation.hpp"
#include "qaffine/verma.hpp"

namespace qaffine {

using nlohmann::ordered_json;

std::vector<Rat> parse_labels(const std::string& csv, int expected) {
  std::vector<Rat> out;
  std::string field;
  std::istringstream in(csv);
  while (std::getline(in, field, ',')) out.push_back(rat_from_string(field));
  if (out.size() != static_cast<size_t>(expected)) {
    std::ostringstream os;
    os << "expected " << expected << " labels, got " << out.size();
    throw std::invalid_argument(os.str());
  }
  return out;
}

std::vector<Rat> sample_points_for_seed(unsigned long long seed) {
  std::vector<Rat> pts;
  unsigned long long h = fnv1a64(std::to_string(seed));
  for (int k = 0; k < 3; ++k) {
    long num = 2 + static_cast<long>((h >> (16 * k)) % 23);
    long den = 1 + static_cast<long>((h >> (16 * k + 8)) % 5);
    if (num == den) num += den;
    pts.push_back(rat(num, den));
  }
  return pts;
}

ordered_json catalog_listing() {
  ordered_json out = ordered_json::array();
  for (const std::string& name : catalog_names()) {
    ordered_json row;
    row["name"] = name;
    row["rank"] = catalog(name).rank();
    try {
      row["partner"] = partner_name(name);
    } catch (const std::domain_error&) {
      row["partner"] = nullptr;
    }
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

std::unique_ptr<DiskRankCache> make_cache(const JobOptions& opt) {
  if (opt.cache_dir.empty()) return nullptr;
  return std::make_unique<DiskRankCache>(opt.cache_dir);
}

void check_lambda0_claim(const AlgebraData& data, const std::vector<Rat>& labels,
                         const JobOptions& opt) {
  if (opt.lambda0_claim.empty()) return;
  const Rat claimed = rat_from_string(opt.lambda0_claim);
  const Rat actual = data.lambda0_coefficient(labels);
  if (claimed != actual)
    throw std::domain_error("lambda0 coefficient of these labels is " + rat_to_string(actual) +
                            ", not " + rat_to_string(claimed));
}

Weight integrable_weight_or_throw(const AlgebraData& data, const std::vector<Rat>& labels,
                                  bool allow_nonintegrable) {
  Weight lam = data.weight_from_labels(labels);
  std::string why;
  if (!data.integrable_dominant(lam, &why) && !allow_nonintegrable)
    throw std::domain_error("labels are not integrable-dominant: " + why);
  return lam;
}

}  // namespace

ordered_json character_json(const AlgebraData& data, const std::vector<Rat>& labels, long depth,
                            const JobOptions& opt) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  check_lambda0_claim(data, labels, opt);
  const Weight lam = integrable_weight_or_throw(data, labels, opt.allow_nonintegrable);

  InducedModule mod(data, lam, QParam::Generic);
  mod.set_sample_points(sample_points_for_seed(opt.seed));
  auto cache = make_cache(opt);
  if (cache) mod.attach_rank_cache(cache.get());

  const CharacterTable table = mod.character(depth);

  ordered_json out;
  out["algebra"] = data.name();
  ordered_json lab = ordered_json::array();
  for (const Rat& l : labels) lab.push_back(rat_to_string(l));
  out["highest_weight_labels"] = std::move(lab);
  out["lambda0_coeff"] = rat_to_string(data.lambda0_coefficient(labels));
  out["depth"] = depth;
  ordered_json entries = ordered_json::array();
  for (const CharacterEntry& e : table.entries) {
    ordered_json row;
    row["alpha_coords"] = e.alpha_coords;
    row["multiplicity"] = e.multiplicity;
    entries.push_back(std::move(row));
  }
  out["entries"] = std::move(entries);
  if (table.partial) out["partial"] = true;
  return out;
}

std::string character_csv(const ordered_json& character) {
  const auto& entries = character.at("entries");
  std::ostringstream os;
  size_t nodes = 0;
  if (!entries.empty()) nodes = entries.front().at("alpha_coords").size();
  for (size_t i = 0; i < nodes; ++i) os << "alpha" << i << ",";
  os << "multiplicity\n";
  for (const auto& e : entries) {
    for (const auto& c : e.at("alpha_coords")) os << c.get<long>() << ",";
    os << e.at("multiplicity").get<long>() << "\n";
  }
  return os.str();
}

VerificationReport run_verify(const AlgebraData& data, const VerifyJob& job,
                              const JobOptions& opt) {
  if (job.depth < 0) throw std::invalid_argument("depth must be nonnegative");

  if (job.kind == "presentation") {
    Stopwatch sw;
    VerificationReport rep;
    rep.check = "presentation";
    rep.algebra = data.name();
    rep.depth = 0;
    for (const RelationCheck& rc : verify_sc_presentation(data)) {
      if (!rc.pass) {
        rep.fail({{"relation", rc.relation}, {"residual", rc.residual}});
        break;
      }
    }
    rep.elapsed_ms = sw.ms();
    return rep;
  }
  if (job.kind == "specialized") return specialized_relations_report(data);

  if (job.kind == "twist") {
    TwistSpec spec = twist_for(data);
    if (job.mutate_sign) spec = mutate_twist(data, spec);
    TwistedModule tm(data, job.labels, std::move(spec));
    return tm.verify(job.depth);
  }

  const Weight lam = integrable_weight_or_throw(data, job.labels, true);
  InducedModule mod(data, lam, QParam::Generic);
  mod.set_sample_points(sample_points_for_seed(opt.seed));
  auto cache = make_cache(opt);
  if (cache) mod.attach_rank_cache(cache.get());

  if (job.kind == "serre") return mod.relations_report(job.depth);
  if (job.kind == "classical") return mod.classical_action_check(job.depth);
  if (job.kind == "tensor") {
    const Weight lam2 = integrable_weight_or_throw(data, job.labels2, true);
    InducedModule right(data, lam2, QParam::Generic);
    right.set_sample_points(sample_points_for_seed(opt.seed));
    std::unique_ptr<DiskRankCache> cache2 = make_cache(opt);
    if (cache2) right.attach_rank_cache(cache2.get());
    TensorModule tens(mod, right);
    return tens.relations_report(job.depth);
  }
  throw std::invalid_argument("unknown verification kind: " + job.kind);
}

}  // namespace qaffine
