#include "fractree/measurement.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fractree/errors.hpp"
#include "fractree/kernels.hpp"
#include "fractree/rng.hpp"

namespace fractree {

namespace {

void format_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}

FrequencyGrid make_grid(double min_omega, double max_omega, int count) {
  if (!(min_omega > 0.0) || !(max_omega > min_omega)) {
    throw InputError("measurement: grid needs 0 < min_omega < max_omega");
  }
  if (count < 2) {
    throw InputError("measurement: grid needs at least 2 points");
  }
  FrequencyGrid grid;
  grid.omega.resize(static_cast<std::size_t>(count));
  const double ratio = std::log(max_omega / min_omega);
  for (int i = 0; i < count; ++i) {
    grid.omega[static_cast<std::size_t>(i)] = min_omega * std::exp(ratio * double(i) / double(count - 1));
  }
  grid.omega.front() = min_omega;
  grid.omega.back() = max_omega;
  return grid;
}

void validate(const FrequencyGrid& grid) {
  if (grid.omega.empty()) throw InputError("measurement: empty frequency grid");
  double prev = 0.0;
  for (double w : grid.omega) {
    if (!(w > prev) || !std::isfinite(w)) {
      throw InputError("measurement: grid frequencies must be positive and strictly increasing");
    }
    prev = w;
  }
}

std::vector<Complex> eval_frequency_response(const HalfOrderRational& rat, const FrequencyGrid& grid) {
  validate(grid);
  const std::size_t n = grid.omega.size();
  std::vector<double> w_re(n), w_im(n), out_re(n), out_im(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex w = std::sqrt(Complex(0.0, grid.omega[i]));
    w_re[i] = w.real();
    w_im[i] = w.imag();
  }
  kernels::active_backend().eval_grid(w_re.data(), w_im.data(), n, rat.zeros.data(), rat.poles.data(),
                                      rat.zeros.size(), out_re.data(), out_im.data());
  std::vector<Complex> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = Complex(out_re[i], out_im[i]);
  return values;
}

Complex noisy_value(Complex value, double n_mag_pct, double n_phase_pct) {
  const double mag = std::abs(value);
  const double phase = std::atan2(value.imag(), value.real());
  const double noisy_mag = std::pow(10.0, (1.0 + n_mag_pct / 100.0) * std::log10(mag));
  const double noisy_phase = (1.0 + n_phase_pct / 100.0) * phase;
  return std::polar(noisy_mag, noisy_phase);
}

FrequencyResponse simulate_measurement(const DamageCase& dc, const TreeParams& params,
                                       const FrequencyGrid& grid, const NoiseSpec& noise) {
  validate(dc);
  validate(grid);
  if (!(noise.n_max_pct >= 0.0)) {
    throw InputError("measurement: noise amplitude must be non-negative");
  }
  const HalfOrderRational rat = delta_for_case(dc, params);
  FrequencyResponse fr;
  fr.grid = grid;
  fr.true_case = dc;
  fr.noise_pct = noise.n_max_pct;
  fr.seed = noise.seed;
  fr.values = eval_frequency_response(rat, grid);
  if (noise.n_max_pct > 0.0) {
    UniformRng rng(noise.seed);
    for (Complex& v : fr.values) {
      const double n_mag = rng.next_symmetric(noise.n_max_pct);
      const double n_phase = noise.independent_draws ? rng.next_symmetric(noise.n_max_pct) : n_mag;
      v = noisy_value(v, n_mag, n_phase);
    }
  }
  return fr;
}

void write_measurement(const FrequencyResponse& fr, const std::filesystem::path& path) {
  if (fr.values.size() != fr.grid.omega.size()) {
    throw InputError("measurement: value count does not match grid");
  }
  std::ofstream out(path);
  if (!out) {
    throw InputError("measurement: cannot open for writing: " + path.string());
  }
  std::string buf;
  buf += "# fractree-meas v1\n";
  if (fr.true_case) {
    buf += "# true_case=" + to_string(fr.true_case->component) + " eps=";
    format_double(buf, fr.true_case->eps);
    buf += "\n";
  } else {
    buf += "# true_case=none\n";
  }
  buf += "# noise_pct=";
  format_double(buf, fr.noise_pct);
  buf += "\n# seed=" + std::to_string(fr.seed) + "\n";
  buf += "omega,re,im\n";
  for (std::size_t i = 0; i < fr.values.size(); ++i) {
    format_double(buf, fr.grid.omega[i]);
    buf += ',';
    format_double(buf, fr.values[i].real());
    buf += ',';
    format_double(buf, fr.values[i].imag());
    buf += '\n';
  }
  out << buf;
  if (!out) {
    throw InputError("measurement: write failed: " + path.string());
  }
}

FrequencyResponse read_measurement(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("measurement: cannot open: " + path.string());
  }
  FrequencyResponse fr;
  std::string line;
  int line_no = 0;
  bool saw_version = false, saw_columns = false;
  auto fail = [&](const std::string& what) -> void {
    throw InputError("measurement: " + path.string() + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      if (body == "fractree-meas v1") {
        saw_version = true;
      } else if (body.rfind("true_case=", 0) == 0) {
        const std::string spec = body.substr(10);
        if (spec != "none") {
          std::istringstream ls(spec);
          std::string comp, eps_tok;
          ls >> comp >> eps_tok;
          if (eps_tok.rfind("eps=", 0) != 0) fail("cannot parse true_case header");
          DamageCase dc;
          dc.component = parse_component(comp);
          try {
            dc.eps = std::stod(eps_tok.substr(4));
          } catch (const std::exception&) {
            fail("cannot parse true_case eps");
          }
          fr.true_case = dc;
        }
      } else if (body.rfind("noise_pct=", 0) == 0) {
        try {
          fr.noise_pct = std::stod(body.substr(10));
        } catch (const std::exception&) {
          fail("cannot parse noise_pct header");
        }
      } else if (body.rfind("seed=", 0) == 0) {
        try {
          fr.seed = std::stoull(body.substr(5));
        } catch (const std::exception&) {
          fail("cannot parse seed header");
        }
      }
      continue;
    }
    if (!saw_columns) {
      if (line != "omega,re,im") fail("expected column header 'omega,re,im'");
      saw_columns = true;
      continue;
    }
    std::istringstream ls(line);
    std::string field;
    double vals[3];
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(ls, field, ',')) fail("row needs 3 comma-separated fields");
      try {
        std::size_t used = 0;
        vals[i] = std::stod(field, &used);
        if (used != field.size()) fail("trailing junk in numeric field");
      } catch (const InputError&) {
        throw;
      } catch (const std::exception&) {
        fail("cannot parse numeric field '" + field + "'");
      }
    }
    if (std::getline(ls, field, ',')) fail("row needs exactly 3 fields");
    if (!fr.grid.omega.empty() && !(vals[0] > fr.grid.omega.back())) {
      fail("frequencies must be strictly increasing");
    }
    fr.grid.omega.push_back(vals[0]);
    fr.values.emplace_back(vals[1], vals[2]);
  }
  if (!saw_version) {
    throw InputError("measurement: " + path.string() + ": missing 'fractree-meas v1' header");
  }
  if (fr.values.empty()) {
    throw InputError("measurement: " + path.string() + ": no data rows");
  }
  validate(fr.grid);
  return fr;
}

}
