#include "hhomlp/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "hhomlp/text.hpp"

namespace hhomlp::synthetic {

namespace {

enum Field : std::size_t {
  kDuration = 0,
  kSrcBytes = 4,
  kDstBytes = 5,
  kLand = 6,
  kWrongFragment = 7,
  kUrgent = 8,
  kHot = 9,
  kFailedLogins = 10,
  kLoggedIn = 11,
  kCompromised = 12,
  kRootShell = 13,
  kSuAttempted = 14,
  kNumRoot = 15,
  kFileCreations = 16,
  kShells = 17,
  kAccessFiles = 18,
  kIsGuestLogin = 21,
  kCount = 22,
  kSrvCount = 23,
  kSerrorRate = 24,
  kSrvSerrorRate = 25,
  kRerrorRate = 26,
  kSrvRerrorRate = 27,
  kSameSrvRate = 28,
  kDiffSrvRate = 29,
  kSrvDiffHostRate = 30,
  kDstHostCount = 31,
  kDstHostSrvCount = 32,
  kDstHostSameSrvRate = 33,
  kDstHostDiffSrvRate = 34,
  kDstHostSameSrcPortRate = 35,
  kDstHostSrvDiffHostRate = 36,
  kDstHostSerrorRate = 37,
  kDstHostSrvSerrorRate = 38,
  kDstHostRerrorRate = 39,
  kDstHostSrvRerrorRate = 40,
  kFieldCount = 41,
};

struct Record {
  std::array<double, kFieldCount> v{};
  std::string protocol = "tcp";
  std::string service = "http";
  std::string flag = "SF";
  std::string label = "normal";
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  Record next() {
    const double u = rng_.uniform();
    if (u < 0.1969) return normal();
    if (u < 0.1969 + 0.7924) return dos();
    if (u < 0.1969 + 0.7924 + 0.0083) return probe();
    if (u < 0.1969 + 0.7924 + 0.0083 + 0.0023) return r2l();
    return u2r();
  }

 private:
  double unit() { return rng_.uniform(); }
  double rate(double centre, double spread) {
    return std::clamp(centre + spread * (2.0 * unit() - 1.0), 0.0, 1.0);
  }
  double count(double lo, double hi) {
    return std::floor(lo + (hi - lo + 1.0) * unit());
  }
  double bytes(double median, double sigma) {
    return std::floor(median * std::exp(sigma * rng_.normal()));
  }
  template <typename T, std::size_t N>
  const T& pick(const std::array<T, N>& options) {
    return options[rng_.index(N)];
  }

  Record normal() {
    Record r;
    static const std::array<const char*, 6> kServices = {
        "http", "http", "http", "smtp", "ftp_data", "domain_u"};
    r.service = pick(kServices);
    r.protocol = r.service == std::string("domain_u") ? "udp" : "tcp";
    r.flag = unit() < 0.97 ? "SF" : "REJ";
    auto& v = r.v;
    v[kDuration] = unit() < 0.9 ? 0.0 : count(1, 300);
    v[kSrcBytes] = bytes(240, 0.6);
    v[kDstBytes] = bytes(1800, 1.2);
    v[kLoggedIn] = r.protocol == "tcp" ? 1.0 : 0.0;
    v[kHot] = unit() < 0.05 ? count(1, 4) : 0.0;
    v[kCount] = count(1, 25);
    v[kSrvCount] = count(1, 30);
    v[kSerrorRate] = unit() < 0.95 ? 0.0 : rate(0.1, 0.1);
    v[kSrvSerrorRate] = v[kSerrorRate];
    v[kRerrorRate] = r.flag == "REJ" ? rate(0.8, 0.2) : 0.0;
    v[kSrvRerrorRate] = v[kRerrorRate];
    v[kSameSrvRate] = rate(0.97, 0.03);
    v[kDiffSrvRate] = rate(0.02, 0.02);
    v[kSrvDiffHostRate] = rate(0.1, 0.1);
    v[kDstHostCount] = count(10, 255);
    v[kDstHostSrvCount] = count(100, 255);
    v[kDstHostSameSrvRate] = rate(0.9, 0.1);
    v[kDstHostDiffSrvRate] = rate(0.03, 0.03);
    v[kDstHostSameSrcPortRate] = rate(0.05, 0.05);
    v[kDstHostSrvDiffHostRate] = rate(0.03, 0.03);
    v[kDstHostSerrorRate] = rate(0.01, 0.01);
    v[kDstHostSrvSerrorRate] = rate(0.01, 0.01);
    v[kDstHostRerrorRate] = r.flag == "REJ" ? rate(0.5, 0.3) : 0.0;
    v[kDstHostSrvRerrorRate] = v[kDstHostRerrorRate];
    // Atypical benign rows: bursts of ICMP echo traffic and busy hosts.
    if (unit() < 0.06) {
      r.protocol = "icmp";
      r.service = unit() < 0.5 ? "ecr_i" : "eco_i";
      v[kSrcBytes] = bytes(520, 0.8);
      v[kDstBytes] = 0.0;
      v[kLoggedIn] = 0.0;
      v[kCount] = count(1, 200);
      v[kSrvCount] = v[kCount];
      v[kDstHostSameSrcPortRate] = rate(0.5, 0.5);
    }
    return r;
  }

  Record dos() {
    const double u = unit();
    if (u < 0.72) return smurf();
    if (u < 0.99) return neptune();
    if (u < 0.995) return back();
    return teardrop();
  }

  Record smurf() {
    Record r;
    r.protocol = "icmp";
    r.service = "ecr_i";
    r.label = "smurf";
    auto& v = r.v;
    v[kSrcBytes] = unit() < 0.8 ? 1032.0 : 520.0;
    v[kCount] = unit() < 0.9 ? 511.0 : count(100, 511);
    v[kSrvCount] = v[kCount];
    v[kSameSrvRate] = 1.0;
    v[kDstHostCount] = 255.0;
    v[kDstHostSrvCount] = unit() < 0.9 ? 255.0 : count(50, 255);
    v[kDstHostSameSrvRate] = 1.0;
    v[kDstHostSameSrcPortRate] = rate(0.95, 0.05);
    return r;
  }

  Record neptune() {
    Record r;
    static const std::array<const char*, 5> kServices = {
        "private", "private", "private", "telnet", "http"};
    r.service = pick(kServices);
    r.flag = unit() < 0.9 ? "S0" : "REJ";
    r.label = "neptune";
    auto& v = r.v;
    const bool syn = r.flag == "S0";
    v[kCount] = count(100, 300);
    v[kSrvCount] = count(1, 30);
    v[kSerrorRate] = syn ? rate(0.98, 0.02) : 0.0;
    v[kSrvSerrorRate] = v[kSerrorRate];
    v[kRerrorRate] = syn ? 0.0 : rate(0.98, 0.02);
    v[kSrvRerrorRate] = v[kRerrorRate];
    v[kSameSrvRate] = rate(0.06, 0.05);
    v[kDiffSrvRate] = rate(0.07, 0.03);
    v[kDstHostCount] = 255.0;
    v[kDstHostSrvCount] = count(1, 30);
    v[kDstHostSameSrvRate] = rate(0.06, 0.05);
    v[kDstHostDiffSrvRate] = rate(0.07, 0.03);
    v[kDstHostSerrorRate] = syn ? rate(0.98, 0.02) : 0.0;
    v[kDstHostSrvSerrorRate] = v[kDstHostSerrorRate];
    v[kDstHostRerrorRate] = syn ? 0.0 : rate(0.98, 0.02);
    v[kDstHostSrvRerrorRate] = v[kDstHostRerrorRate];
    // Slow floods look closer to ordinary traffic.
    if (unit() < 0.05) {
      v[kCount] = count(5, 60);
      v[kSerrorRate] = rate(0.5, 0.4);
      v[kDstHostCount] = count(20, 255);
    }
    return r;
  }

  Record back() {
    Record r;
    r.label = "back";
    auto& v = r.v;
    v[kSrcBytes] = 54540.0;
    v[kDstBytes] = bytes(8314, 0.1);
    v[kHot] = 2.0;
    v[kLoggedIn] = 1.0;
    v[kCount] = count(1, 10);
    v[kSrvCount] = count(1, 10);
    v[kSameSrvRate] = 1.0;
    v[kDstHostCount] = count(50, 255);
    v[kDstHostSrvCount] = count(50, 255);
    v[kDstHostSameSrvRate] = 1.0;
    return r;
  }

  Record teardrop() {
    Record r;
    r.protocol = "udp";
    r.service = "private";
    r.label = "teardrop";
    auto& v = r.v;
    v[kSrcBytes] = 28.0;
    v[kWrongFragment] = 3.0;
    v[kCount] = count(1, 100);
    v[kSrvCount] = v[kCount];
    v[kSameSrvRate] = 1.0;
    v[kDstHostCount] = 255.0;
    v[kDstHostSrvCount] = count(1, 100);
    return r;
  }

  Record probe() {
    Record r;
    auto& v = r.v;
    const double u = unit();
    if (u < 0.3) {
      r.label = "ipsweep";
      r.protocol = "icmp";
      r.service = "eco_i";
      v[kSrcBytes] = 8.0;
      v[kCount] = count(1, 5);
      v[kSrvCount] = count(1, 40);
      v[kDstHostSrvDiffHostRate] = rate(0.5, 0.5);
      v[kSrvDiffHostRate] = 1.0;
    } else if (u < 0.55) {
      r.label = "portsweep";
      r.service = "private";
      r.flag = unit() < 0.5 ? "REJ" : "RSTR";
      v[kDuration] = count(0, 10);
      v[kRerrorRate] = rate(0.9, 0.1);
      v[kSrvRerrorRate] = 1.0;
      v[kDstHostSameSrcPortRate] = 1.0;
      v[kDstHostRerrorRate] = rate(0.9, 0.1);
      v[kDstHostSrvRerrorRate] = 1.0;
    } else if (u < 0.9) {
      r.label = "satan";
      r.service = "other";
      r.flag = "REJ";
      v[kCount] = count(1, 500);
      v[kRerrorRate] = rate(0.9, 0.1);
      v[kDiffSrvRate] = rate(0.9, 0.1);
      v[kDstHostDiffSrvRate] = rate(0.8, 0.2);
      v[kDstHostRerrorRate] = rate(0.9, 0.1);
    } else {
      r.label = "nmap";
      r.protocol = "udp";
      r.service = "private";
      v[kCount] = count(1, 3);
      v[kDstHostSameSrcPortRate] = 1.0;
    }
    v[kDstHostCount] = count(1, 255);
    v[kDstHostSrvCount] = count(1, 10);
    v[kDstHostSameSrvRate] = rate(0.2, 0.2);
    return r;
  }

  Record r2l() {
    Record r;
    auto& v = r.v;
    if (unit() < 0.8) {
      r.label = "warezclient";
      r.service = "ftp_data";
      v[kDuration] = count(100, 15000);
      v[kSrcBytes] = bytes(300000, 0.8);
      v[kIsGuestLogin] = 1.0;
      v[kHot] = count(20, 30);
    } else {
      r.label = "guess_passwd";
      r.service = "telnet";
      r.flag = "RSTO";
      v[kSrcBytes] = 125.0;
      v[kDstBytes] = 179.0;
      v[kFailedLogins] = 1.0;
      v[kDuration] = count(1, 5);
    }
    v[kLoggedIn] = r.label == "warezclient" ? 1.0 : 0.0;
    v[kCount] = count(1, 3);
    v[kSrvCount] = count(1, 3);
    v[kSameSrvRate] = 1.0;
    v[kDstHostCount] = count(1, 50);
    v[kDstHostSrvCount] = count(1, 50);
    return r;
  }

  Record u2r() {
    Record r;
    r.label = "buffer_overflow";
    r.service = "telnet";
    auto& v = r.v;
    v[kDuration] = count(20, 300);
    v[kSrcBytes] = bytes(1500, 0.5);
    v[kDstBytes] = bytes(4000, 0.5);
    v[kHot] = count(1, 3);
    v[kLoggedIn] = 1.0;
    v[kCompromised] = count(0, 2);
    v[kRootShell] = 1.0;
    v[kFileCreations] = count(0, 2);
    v[kShells] = count(0, 1);
    v[kAccessFiles] = count(0, 1);
    v[kCount] = 1.0;
    v[kSrvCount] = 1.0;
    v[kSameSrvRate] = 1.0;
    v[kDstHostCount] = count(1, 20);
    v[kDstHostSrvCount] = count(1, 20);
    return r;
  }

  Rng rng_;
};

}  // namespace

std::string kdd_like_csv(std::size_t rows, std::uint64_t seed) {
  Generator gen(seed);
  std::string out;
  out.reserve(rows * 160);
  for (std::size_t i = 0; i < rows; ++i) {
    const Record r = gen.next();
    for (std::size_t f = 0; f < kFieldCount; ++f) {
      switch (f) {
        case 1:
          out += r.protocol;
          break;
        case 2:
          out += r.service;
          break;
        case 3:
          out += r.flag;
          break;
        default:
          out += text::format_double(r.v[f]);
      }
      out.push_back(',');
    }
    out += r.label;
    out += ".\n";
  }
  return out;
}

data::Dataset with_unit_norm(data::Dataset dataset) {
  data::NormStats s;
  s.min.assign(dataset.cols, 0.0);
  s.max.assign(dataset.cols, 1.0);
  s.fitted_on = data::Partition::kTrain;
  dataset.norm = std::move(s);
  return dataset;
}

data::Dataset linearly_separable(std::size_t rows, std::uint64_t seed,
                                 double margin) {
  Rng rng(seed);
  RealVector values;
  std::vector<std::uint8_t> labels;
  values.reserve(rows * 2);
  while (labels.size() < rows) {
    const double x0 = rng.uniform();
    const double x1 = rng.uniform();
    // Distance to the line x0 + x1 = 1.
    if (std::abs(x0 + x1 - 1.0) / std::sqrt(2.0) < margin) continue;
    values.push_back(x0);
    values.push_back(x1);
    labels.push_back(x0 + x1 > 1.0 ? 1 : 0);
  }
  return with_unit_norm(
      data::make_dataset(std::move(values), 2, std::move(labels), {"x0", "x1"}));
}

data::Dataset one_informative(std::size_t rows, std::size_t d,
                              std::uint64_t seed) {
  Rng rng(seed);
  RealVector values;
  std::vector<std::uint8_t> labels;
  values.reserve(rows * d);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::uint8_t label = r % 2 == 0 ? 1 : 0;
    values.push_back(static_cast<double>(label));
    for (std::size_t c = 1; c < d; ++c) values.push_back(rng.uniform());
    labels.push_back(label);
  }
  return with_unit_norm(
      data::make_dataset(std::move(values), d, std::move(labels)));
}

}  // namespace hhomlp::synthetic
