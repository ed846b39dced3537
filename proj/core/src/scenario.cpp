// SPDX-License-Identifier: Apache-2.0
#include "isaclab/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "isaclab/rng.hpp"

namespace isaclab {

namespace {
constexpr double kHalfPi = 1.5707963267948966;
}

void ScenarioConfig::validate() const {
    // The analysis needs at least a 2-dimensional AN null space in the SSJB
    // scheme, hence N >= 4. Odd antenna counts are fine: the symmetric ULA
    // phase grid and every norm identity hold for either parity, and the
    // reference operating point itself uses N = 15.
    if (n_tx < 4) throw ValidationError("n_tx must be >= 4");
    if (m_rx < 2) throw ValidationError("m_rx must be >= 2");
    if (ne < 2) throw ValidationError("ne must be >= 2");
    if (!(power > 0.0)) throw ValidationError("power must be > 0");
    if (frame_len <= n_tx) throw ValidationError("frame_len must exceed n_tx");
    if (!(sigma2 > 0.0)) throw ValidationError("sigma2 must be > 0");
    if (!(sigma2_r > 0.0)) throw ValidationError("sigma2_r must be > 0");
    if (std::abs(c3) <= 0.0) throw ValidationError("c3 must be nonzero");
    if (std::abs(c4) <= 0.0) throw ValidationError("c4 must be nonzero");
    if (!(delta > 0.0 && delta < kHalfPi)) throw ValidationError("delta must lie in (0, pi/2)");
}

namespace {

std::complex<double> parse_complex(const nlohmann::json& j, const std::string& key) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ValidationError("config key '" + key + "' must be a number or [re, im]");
}

} // namespace

ScenarioConfig ScenarioConfig::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config root must be a JSON object");

    ScenarioConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "n_tx") cfg.n_tx = value.get<int>();
        else if (key == "m_rx") cfg.m_rx = value.get<int>();
        else if (key == "ne") cfg.ne = value.get<int>();
        else if (key == "power") cfg.power = value.get<double>();
        else if (key == "frame_len") cfg.frame_len = value.get<int>();
        else if (key == "sigma2") cfg.sigma2 = value.get<double>();
        else if (key == "sigma2_r") cfg.sigma2_r = value.get<double>();
        else if (key == "c1") cfg.c1 = parse_complex(value, key);
        else if (key == "c2") cfg.c2 = parse_complex(value, key);
        else if (key == "c3") cfg.c3 = parse_complex(value, key);
        else if (key == "c4") cfg.c4 = parse_complex(value, key);
        else if (key == "c5") cfg.c5 = parse_complex(value, key);
        else if (key == "delta") cfg.delta = value.get<double>();
        else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
        else throw ValidationError("unknown config key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig ScenarioConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

ChannelRealization sample_realization(const ScenarioConfig& config,
                                      std::uint64_t seed, std::uint64_t index) {
    config.validate();
    CounterRng rng(seed, index);
    ChannelRealization out;
    out.h.resize(config.n_tx);
    out.h_e.resize(config.n_tx);
    for (int i = 0; i < config.n_tx; ++i) out.h(i) = rng.cnormal();
    for (int i = 0; i < config.n_tx; ++i) out.h_e(i) = rng.cnormal();
    out.theta = rng.uniform(-kHalfPi, kHalfPi);
    out.phi = rng.uniform(-kHalfPi, kHalfPi);
    return out;
}

namespace {

void fill_steering(int n, double angle, Eigen::VectorXcd& v, Eigen::VectorXcd& v_dot) {
    v.resize(n);
    v_dot.resize(n);
    const double s = std::sin(angle);
    const double c = std::cos(angle);
    for (int i = 0; i < n; ++i) {
        const double half_offset = 0.5 * static_cast<double>(n - (2 * i + 1));
        const double f = M_PI * s * half_offset;
        const double f_dot = M_PI * c * half_offset;
        const std::complex<double> e{std::cos(f), -std::sin(f)}; // e^{-j f}
        v(i) = e;
        v_dot(i) = std::complex<double>(0.0, -f_dot) * e;
    }
}

} // namespace

SteeringSet steering(const ScenarioConfig& config, double theta, double phi) {
    config.validate();
    if (!(theta > -kHalfPi && theta < kHalfPi))
        throw ValidationError("theta must lie in (-pi/2, pi/2)");
    if (!(phi > -kHalfPi && phi < kHalfPi))
        throw ValidationError("phi must lie in (-pi/2, pi/2)");
    SteeringSet out;
    out.theta = theta;
    out.phi = phi;
    fill_steering(config.n_tx, theta, out.a, out.a_dot);
    fill_steering(config.m_rx, theta, out.b, out.b_dot);
    fill_steering(config.ne, phi, out.c, out.c_dot);
    return out;
}

RtkStats rtk(const Eigen::VectorXcd& h, double theta) {
    const int n = static_cast<int>(h.size());
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    RtkStats out;
    for (int i = 0; i < n; ++i) {
        const double half_offset = 0.5 * static_cast<double>(n - (2 * i + 1));
        const double f = M_PI * s * half_offset;
        const double f_dot = M_PI * c * half_offset;
        // e^{j f_i} h_i = r_i + j t_i
        const std::complex<double> rot = std::complex<double>(std::cos(f), std::sin(f)) * h(i);
        out.r += rot.real();
        out.t += rot.imag();
        out.k += std::norm(h(i));
        out.g_re += f_dot * rot.real();
        out.g_im -= f_dot * rot.imag();
    }
    return out;
}

} // namespace isaclab
