#include "condsense/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "condsense/oracle.hpp"

namespace condsense {

namespace {

std::size_t p_size(const FamilySpec& s, const char* key) {
  auto it = s.params.find(key);
  if (it == s.params.end() || it->second < 1.0)
    throw std::invalid_argument(std::string("family needs parameter ") + key);
  return static_cast<std::size_t>(it->second);
}

double p_real(const FamilySpec& s, const char* key, double fallback) {
  auto it = s.params.find(key);
  return it == s.params.end() ? fallback : it->second;
}

std::vector<int> seeded_bits(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<int> bits(count);
  for (auto& b : bits) b = static_cast<int>(rng() & 1u);
  return bits;
}

}  // namespace

FamilySpec FamilySpec::parse(const std::string& text) {
  FamilySpec spec;
  std::string body;
  auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (colon != std::string::npos) body = text.substr(colon + 1);
  std::transform(spec.kind.begin(), spec.kind.end(), spec.kind.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (spec.kind == "file") {
    spec.path = body;
    return spec;
  }
  std::string item;
  std::stringstream ss(body);
  while (std::getline(ss, item, ';')) {
    std::stringstream inner(item);
    std::string piece;
    while (std::getline(inner, piece, ',')) {
      auto eq = piece.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("family parameter needs key=value: " + piece);
      spec.params[piece.substr(0, eq)] = std::stod(piece.substr(eq + 1));
    }
  }
  return spec;
}

std::string FamilySpec::name() const {
  if (kind == "file") return "file:" + path;
  std::ostringstream out;
  out << kind;
  char sep = ':';
  for (const auto& [k, v] : params) {
    out << sep << k << '=' << v;
    sep = ';';
  }
  return out.str();
}

Distribution paninski(std::size_t m, double eps, const std::vector<int>& bits) {
  if (m == 0 || bits.size() != m) throw std::invalid_argument("need one bit per pair");
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("bad eps");
  std::vector<double> w(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    double lo = (1.0 - eps) / (2.0 * static_cast<double>(m));
    double hi = (1.0 + eps) / (2.0 * static_cast<double>(m));
    w[2 * i] = bits[i] ? hi : lo;
    w[2 * i + 1] = bits[i] ? lo : hi;
  }
  return Distribution::from_weights(std::move(w));
}

std::pair<Distribution, Distribution> appendix_a(std::size_t R, std::size_t K,
                                                 double eps,
                                                 const std::vector<int>& bits) {
  if (R == 0 || K < 2 || bits.size() != R)
    throw std::invalid_argument("need one bit per block pair");
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("bad eps");
  const double denom = 2.0 * static_cast<double>(R);
  std::vector<Block> member, ref;
  std::size_t start = 1;
  double block_len = 1.0;
  for (std::size_t r = 1; r <= 2 * R; ++r) {
    block_len *= static_cast<double>(K);  // K^r
    auto len = static_cast<std::size_t>(block_len + 0.5);
    double base = 1.0 / (denom * block_len);
    ref.push_back({start, len, base});
    // pairs of blocks share 1/R total mass, tilted by the pair's bit
    std::size_t pair = (r + 1) / 2;
    bool odd = (r % 2) == 1;
    double tilt = (bits[pair - 1] == 0) == odd ? 1.0 - eps : 1.0 + eps;
    member.push_back({start, len, base * tilt});
    start += len;
  }
  return {Distribution::from_blocks(std::move(member)),
          Distribution::from_blocks(std::move(ref))};
}

Instance generate(const FamilySpec& spec) {
  Instance inst;
  inst.name = spec.name();
  const std::string& k = spec.kind;

  if (k == "uniform") {
    std::size_t n = p_size(spec, "n");
    inst.dist = Distribution::from_blocks({{1, n, 1.0 / static_cast<double>(n)}});
  } else if (k == "point") {
    std::size_t n = p_size(spec, "n");
    auto i = static_cast<std::size_t>(p_real(spec, "i", 1.0));
    if (i < 1 || i > n) throw std::invalid_argument("point mass outside domain");
    std::vector<double> w(n, 0.0);
    w[i - 1] = 1.0;
    inst.dist = Distribution::from_weights(std::move(w));
  } else if (k == "simplex") {
    std::size_t n = p_size(spec, "n");
    auto seed = static_cast<std::uint64_t>(p_real(spec, "seed", 0.0));
    std::mt19937_64 rng(splitmix64(seed ^ 0x51a91effULL));
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> w(n);
    for (auto& v : w) v = exp1(rng);
    inst.dist = Distribution::from_weights(std::move(w));
  } else if (k == "zipf" || k == "rzipf") {
    std::size_t n = p_size(spec, "n");
    double s = p_real(spec, "s", 1.0);
    std::vector<double> w(n);
    for (std::size_t i = 1; i <= n; ++i)
      w[i - 1] = std::pow(static_cast<double>(i), -s);
    if (k == "rzipf") std::reverse(w.begin(), w.end());
    inst.dist = Distribution::from_weights(std::move(w));
  } else if (k == "staircase") {
    std::size_t n = p_size(spec, "n");
    std::size_t levels = p_size(spec, "levels");
    if (levels > n) throw std::invalid_argument("more levels than elements");
    // increasing steps, flat within each; exercises the far-from-monotone side
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
      w[i] = static_cast<double>(1 + i * levels / n);
    inst.dist = Distribution::from_weights(std::move(w));
  } else if (k == "paninski") {
    std::size_t m = p_size(spec, "m");
    double eps = p_real(spec, "eps", 0.4);
    auto seed = static_cast<std::uint64_t>(p_real(spec, "seed", 0.0));
    inst.dist = paninski(m, eps, seeded_bits(m, seed ^ 0x9a21b5ULL));
  } else if (k == "appendixa") {
    std::size_t R = p_size(spec, "r");
    std::size_t K = p_size(spec, "k");
    double eps = p_real(spec, "eps", 0.4);
    auto seed = static_cast<std::uint64_t>(p_real(spec, "seed", 0.0));
    auto [member, ref] = appendix_a(R, K, eps, seeded_bits(R, seed ^ 0xaaff01ULL));
    inst.dist = std::move(member);
    inst.dstar = std::move(ref);
  } else if (k == "half") {
    std::size_t n = p_size(spec, "n");
    if (n < 2) throw std::invalid_argument("domain too small");
    std::size_t h = n / 2;
    inst.dist = Distribution::from_blocks(
        {{1, h, 1.0 / static_cast<double>(h)}, {h + 1, n - h, 0.0}});
  } else if (k == "file") {
    if (spec.path.size() > 5 && spec.path.substr(spec.path.size() - 5) == ".json")
      inst.dist = Distribution::load_json(spec.path);
    else
      inst.dist = Distribution::load_csv(spec.path);
  } else {
    throw std::invalid_argument("unknown family: " + k);
  }
  return inst;
}

}  // namespace condsense
