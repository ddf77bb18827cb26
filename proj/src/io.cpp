#include "d4lab/io.hpp"

#include "json.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace d4lab {

namespace {
bool is_odd_prime_power(long long q) {
  if (q < 3 || q % 2 == 0) return false;
  long long p = 0;
  for (long long d = 3; d * d <= q; d += 2)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return true;  // prime
  while (q % p == 0) q /= p;
  return q == 1;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}
}  // namespace

void validate_config(const ExperimentConfig& cfg) {
  if (!is_odd_prime_power(cfg.q)) fail(Errc::InvalidInput, "q must be an odd prime power >= 3");
  if (cfg.n < 1) fail(Errc::InvalidInput, "n must be >= 1");
  if (cfg.n_max >= 0 && cfg.n_max < cfg.n) fail(Errc::InvalidInput, "n range end before start");
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= cfg.beta && cfg.beta <= 1.0))
    fail(Errc::InvalidInput, "need 0 <= alpha <= beta <= 1");
  if (!(cfg.sigma > 0.0)) fail(Errc::InvalidInput, "sigma must be positive");
  if (cfg.kind != "fejer" && cfg.kind != "freeman")
    fail(Errc::InvalidInput, "kind must be fejer or freeman");
  if (cfg.format != "csv" && cfg.format != "json")
    fail(Errc::InvalidInput, "format must be csv or json");
  if (cfg.max_degree < 1) fail(Errc::InvalidInput, "max-degree must be >= 1");
}

std::string field_key(const QuadField& K) { return K.key(); }

std::string element_key(const QuadElement& b) {
  return poly_str(b.A) + ";" + poly_str(b.B) + ";" + poly_str(b.c);
}

std::string pair_to_json(const QuarticPair& p, long long q) {
  nlohmann::json j;
  j["q"] = q;
  j["n"] = p.n;
  j["K"] = p.K->key();
  j["beta"] = element_key(p.beta);
  nlohmann::json rd = nlohmann::json::array();
  for (auto& pl : p.relDisc.places) rd.push_back(qplace_str(pl));
  j["relDisc"] = rd;
  j["C"] = "q^" + std::to_string(2 * p.n);
  j["type"] = galois_type_str(p.type);
  if (p.Kf) {
    j["Kflip"] = p.Kf->key();
    j["betaflip"] = element_key(p.betaf);
    j["J"] = "q^" + std::to_string(2 * p.tJ);
  }
  return j.dump();
}

void write_family_snapshot(std::ostream& os, const std::vector<QuarticPair>& fam,
                           long long q) {
  for (auto& p : fam) os << pair_to_json(p, q) << "\n";
}

std::string lpoly_record(const std::string& key, const LPolynomial& P) {
  nlohmann::json j;
  j["v"] = 1;
  j["key"] = key;
  j["q"] = P.q;
  j["kind"] = P.kind == LKind::ZetaNumerator ? "zeta" : "relative";
  j["N"] = P.N;
  nlohmann::json b = nlohmann::json::array();
  for (auto& c : P.b) b.push_back(c.get_str());
  j["b"] = b;
  nlohmann::json s = nlohmann::json::array();
  for (auto& c : P.s) s.push_back(c);
  j["s"] = s;
  nlohmann::json a = nlohmann::json::array();
  for (double th : P.angles) a.push_back(fmt_double(th));
  j["angles"] = a;
  return j.dump();
}

std::pair<std::string, LPolynomial> parse_lpoly_record(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  if (!j.contains("v") || j["v"].get<int>() != 1)
    fail(Errc::InvalidInput, "unknown cache record schema version");
  LPolynomial P;
  P.q = j["q"].get<long long>();
  P.kind = j["kind"].get<std::string>() == "zeta" ? LKind::ZetaNumerator : LKind::Relative;
  P.N = j["N"].get<int>();
  for (auto& c : j["b"]) P.b.emplace_back(c.get<std::string>());
  for (auto& c : j["s"]) P.s.push_back(c.get<long long>());
  for (auto& a : j["angles"]) P.angles.push_back(std::strtod(a.get<std::string>().c_str(), nullptr));
  return {j["key"].get<std::string>(), std::move(P)};
}

LPolyCache::LPolyCache(const std::string& dir) {
  if (dir.empty()) return;
  path_ = dir + "/lpoly-cache.jsonl";
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto [k, P] = parse_lpoly_record(line);
    entries_[k] = std::move(P);
  }
}

std::optional<LPolynomial> LPolyCache::lookup(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void LPolyCache::store(const std::string& key, const LPolynomial& P) {
  if (entries_.count(key)) return;
  entries_[key] = P;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  out << lpoly_record(key, P) << "\n";
}

std::string density_report_csv(const std::vector<DensityRow>& rows) {
  std::ostringstream os;
  os << "q,n,alpha,beta,family_size,mean_D,prediction,discrepancy,nonvanishing_proportion\n";
  for (auto& r : rows)
    os << r.q << "," << r.n << "," << fmt_double(r.alpha) << "," << fmt_double(r.beta) << ","
       << r.family_size << "," << fmt_double(r.mean_D) << "," << fmt_double(r.prediction)
       << "," << fmt_double(r.discrepancy) << "," << fmt_double(r.nonvanishing) << "\n";
  return os.str();
}

std::string density_report_json(const std::vector<DensityRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& r : rows) {
    nlohmann::json j;
    j["q"] = r.q;
    j["n"] = r.n;
    j["alpha"] = r.alpha;
    j["beta"] = r.beta;
    j["family_size"] = r.family_size;
    j["mean_D"] = r.mean_D;
    j["prediction"] = r.prediction;
    j["discrepancy"] = r.discrepancy;
    j["nonvanishing_proportion"] = r.nonvanishing;
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

std::string histogram_csv(const std::map<int, unsigned long long>& hist) {
  std::ostringstream os;
  os << "multiplicity,count\n";
  for (auto& [m, c] : hist) os << m << "," << c << "\n";
  return os.str();
}

}  // namespace d4lab
