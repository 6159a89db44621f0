#include "scissors/json_io.hpp"

namespace scissors {

namespace {

void split_re_im(const std::vector<cplx>& zs, nlohmann::json& re, nlohmann::json& im) {
  re = nlohmann::json::array();
  im = nlohmann::json::array();
  for (const cplx& z : zs) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
}

std::vector<cplx> join_re_im(const nlohmann::json& j, size_t expected) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != expected || im.size() != expected)
    throw DimensionMismatch("re/im array lengths do not match the declared dimension");
  std::vector<cplx> zs(expected);
  for (size_t k = 0; k < expected; ++k) zs[k] = cplx(re[k].get<double>(), im[k].get<double>());
  return zs;
}

}  // namespace

void to_json(nlohmann::json& j, const FockVector& v) {
  j = nlohmann::json{{"dim", v.dim()}};
  split_re_im(v.amp, j["re"], j["im"]);
}

void from_json(const nlohmann::json& j, FockVector& v) {
  const int dim = j.at("dim").get<int>();
  if (dim < 1) throw InvalidDimension("serialized FockVector has dimension < 1");
  v.amp = join_re_im(j, static_cast<size_t>(dim));
}

void to_json(nlohmann::json& j, const DensityMatrix& rho) {
  j = nlohmann::json{{"dim", rho.dim}};
  split_re_im(rho.m, j["re"], j["im"]);
}

void from_json(const nlohmann::json& j, DensityMatrix& rho) {
  const int dim = j.at("dim").get<int>();
  if (dim < 1) throw InvalidDimension("serialized DensityMatrix has dimension < 1");
  rho.dim = dim;
  rho.m = join_re_im(j, static_cast<size_t>(dim) * static_cast<size_t>(dim));
}

void to_json(nlohmann::json& j, const MetricReport& r) {
  j = nlohmann::json{{"mean_n", r.mean_n}, {"var_x", r.var_x}};
  j["mandel_q"] = r.mandel_q ? nlohmann::json(*r.mandel_q) : nlohmann::json(nullptr);
  j["skew_w"] = r.skew_w ? nlohmann::json(*r.skew_w) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const PovmElement& e) {
  j = nlohmann::json{{"diagonal", e.diagonal}, {"truncation_bound", e.truncation_bound}};
}

}  // namespace scissors
