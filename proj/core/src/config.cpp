#include "condsense/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace condsense {

namespace {

struct Field {
  const char* name;
  double Config::*ptr;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      {"compare_reps_mult", &Config::compare_reps_mult},
      {"geom_cap_mult", &Config::geom_cap_mult},
      {"compare_accept_lo", &Config::compare_accept_lo},
      {"compare_accept_hi", &Config::compare_accept_hi},
      {"ca_R_mult", &Config::ca_R_mult},
      {"ca_R_min", &Config::ca_R_min},
      {"ca_threshold_c", &Config::ca_threshold_c},
      {"ca_gamma", &Config::ca_gamma},
      {"window_conf", &Config::window_conf},
      {"anchor_lo", &Config::anchor_lo},
      {"anchor_hi", &Config::anchor_hi},
      {"oracle_gamma", &Config::oracle_gamma},
      {"oracle_lo", &Config::oracle_lo},
      {"oracle_hi", &Config::oracle_hi},
      {"se_K_mult", &Config::se_K_mult},
      {"ect_C_mult", &Config::ect_C_mult},
      {"ect_C_min", &Config::ect_C_min},
      {"ect_Cp_mult", &Config::ect_Cp_mult},
      {"ect_Cp_min", &Config::ect_Cp_min},
      {"ect_T_off", &Config::ect_T_off},
      {"ect_beta_off", &Config::ect_beta_off},
      {"gge_K_mult", &Config::gge_K_mult},
      {"gge_gamma1_thresh_mult", &Config::gge_gamma1_thresh_mult},
      {"tu_scan_K_mult", &Config::tu_scan_K_mult},
      {"tu_scan_lo", &Config::tu_scan_lo},
      {"tu_scan_hi", &Config::tu_scan_hi},
      {"est1_R_mult", &Config::est1_R_mult},
      {"est2_R_mult", &Config::est2_R_mult},
      {"est2_R_cap", &Config::est2_R_cap},
      {"est2_ca_R_mult", &Config::est2_ca_R_mult},
      {"est2_ca_R_min", &Config::est2_ca_R_min},
      {"est2_screen_cands", &Config::est2_screen_cands},
      {"est2_screen_R", &Config::est2_screen_R},
      {"est3_R_mult", &Config::est3_R_mult},
      {"est3_lo", &Config::est3_lo},
      {"est3_hi", &Config::est3_hi},
      {"est3_T_mult", &Config::est3_T_mult},
      {"est3_T_cap", &Config::est3_T_cap},
      {"pd_S_mult", &Config::pd_S_mult},
      {"pd_S_min", &Config::pd_S_min},
      {"pd_T_off", &Config::pd_T_off},
      {"pd_single_mult", &Config::pd_single_mult},
      {"ti_c1_mult", &Config::ti_c1_mult},
      {"expo_R_mult", &Config::expo_R_mult},
      {"expo_tau_floor_mult", &Config::expo_tau_floor_mult},
      {"expo_prod_floor_mult", &Config::expo_prod_floor_mult},
      {"dtf_samples_mult", &Config::dtf_samples_mult},
      {"dtf_inner_eps_div", &Config::dtf_inner_eps_div},
      {"vv_mult", &Config::vv_mult},
      {"vv_null_sims", &Config::vv_null_sims},
      {"vv_quantile", &Config::vv_quantile},
      {"pcid_R_mult", &Config::pcid_R_mult},
      {"pcid_pair_mult", &Config::pcid_pair_mult},
      {"pcid_alpha_floor_mult", &Config::pcid_alpha_floor_mult},
      {"pcid_prod_floor_mult", &Config::pcid_prod_floor_mult},
      {"lru_capacity", &Config::lru_capacity},
      {"c_tu", &Config::c_tu},
      {"c_pd", &Config::c_pd},
      {"c_ti", &Config::c_ti},
  };
  return f;
}

}  // namespace

void Config::set(const std::string& key, double value) {
  for (const Field& f : fields()) {
    if (key == f.name) {
      this->*(f.ptr) = value;
      return;
    }
  }
  throw std::invalid_argument("unknown config key: " + key);
}

std::map<std::string, double> Config::as_map() const {
  std::map<std::string, double> m;
  for (const Field& f : fields()) m[f.name] = this->*(f.ptr);
  return m;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  Config cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string key, eq;
    double value;
    if (!(ss >> key)) continue;
    if (!(ss >> eq >> value) || eq != "=")
      throw std::invalid_argument("bad config line " + std::to_string(lineno) +
                                  " in " + path);
    cfg.set(key, value);
  }
  return cfg;
}

}  // namespace condsense
