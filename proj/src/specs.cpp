#include "qutrit/specs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace qutrit {

namespace {

std::map<std::string, double> parse_kv(const std::string& text,
                                       const std::vector<std::string>& expected) {
    std::map<std::string, double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (std::find(expected.begin(), expected.end(), key) == expected.end())
            throw ParseError("unknown parameter '" + key + "' in '" + text + "'");
        try {
            std::size_t used = 0;
            out[key] = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw ParseError("bad numeric value '" + value + "' for '" + key + "'");
        }
    }
    for (const auto& key : expected)
        if (!out.count(key))
            throw ParseError("missing parameter '" + key + "' in '" + text + "'");
    return out;
}

}  // namespace

LindbladGenerator ModelSpec::build() const {
    if (const auto* p = std::get_if<SystemIParams>(&params))
        return generator_system_I(*p, atoms);
    return generator_system_II(std::get<SystemIIParams>(params), atoms);
}

double ModelSpec::max_rate() const {
    if (const auto* p = std::get_if<SystemIParams>(&params))
        return std::max(p->gamma1, p->gamma2);
    const auto& p = std::get<SystemIIParams>(params);
    return std::max(p.gammaE, p.gammaU);
}

bool ModelSpec::is_system_II_max_interference() const {
    const auto* p = std::get_if<SystemIIParams>(&params);
    return p && p->gammaU == 0.0;
}

ModelSpec parse_model(const std::string& text, int atoms) {
    if (atoms != 1 && atoms != 2) throw ParseError("atoms must be 1 or 2");
    if (text.rfind("sysI:", 0) == 0) {
        const auto kv = parse_kv(text.substr(5), {"g1", "g2", "beta"});
        SystemIParams p{kv.at("g1"), kv.at("g2"), kv.at("beta")};
        return ModelSpec{p, atoms};
    }
    if (text.rfind("sysII:", 0) == 0) {
        const auto kv = parse_kv(text.substr(6), {"ge", "gu"});
        SystemIIParams p{kv.at("ge"), kv.at("gu")};
        return ModelSpec{p, atoms};
    }
    throw ParseError("unknown model spec '" + text + "' (expected sysI:... or sysII:...)");
}

StateSpec parse_state(const std::string& text, int atoms) {
    if (atoms != 2 && text.rfind("file:", 0) != 0)
        throw ParseError("named state families are two-atom; use file: for single-atom states");
    if (text == "psimax") {
        const PureStateParams params{std::acos(-1.0) / 4.0, std::acos(1.0 / std::sqrt(3.0))};
        return StateSpec{DensityMatrix::from_pure(psi_max()), params};
    }
    if (text.rfind("pure:", 0) == 0) {
        const auto kv = parse_kv(text.substr(5), {"theta", "phi"});
        const PureStateParams params{kv.at("theta"), kv.at("phi")};
        try {
            return StateSpec{DensityMatrix::from_pure(pure_state(params)), params};
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    if (text.rfind("isotropic:", 0) == 0) {
        const auto kv = parse_kv(text.substr(10), {"p"});
        const IsotropicParams params{kv.at("p")};
        try {
            return StateSpec{isotropic_state(params), params};
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    if (text.rfind("file:", 0) == 0) {
        ComplexMatrix m = read_matrix_csv(text.substr(5));
        const std::size_t expected = atoms == 1 ? 3 : 9;
        if (m.rows() != expected || m.cols() != expected)
            throw ParseError("state file has dimension " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected " +
                             std::to_string(expected) + "x" + std::to_string(expected));
        return StateSpec{DensityMatrix(std::move(m)), std::monostate{}};
    }
    throw ParseError("unknown state spec '" + text + "'");
}

namespace {

Complex parse_complex(std::string token) {
    token.erase(std::remove_if(token.begin(), token.end(),
                               [](char c) { return c == ' ' || c == '\t'; }),
                token.end());
    if (token.empty()) throw ParseError("empty matrix entry");
    std::size_t used = 0;
    double re = 0.0;
    try {
        re = std::stod(token, &used);
    } catch (const std::exception&) {
        throw ParseError("bad matrix entry '" + token + "'");
    }
    if (used == token.size()) return Complex(re, 0.0);
    std::string rest = token.substr(used);
    if (rest.back() != 'j') throw ParseError("bad matrix entry '" + token + "'");
    rest.pop_back();
    if (rest == "+" || rest == "-") rest += "1";
    double im = 0.0;
    try {
        std::size_t used2 = 0;
        im = std::stod(rest, &used2);
        if (used2 != rest.size()) throw std::invalid_argument(rest);
    } catch (const std::exception&) {
        throw ParseError("bad matrix entry '" + token + "'");
    }
    return Complex(re, im);
}

}  // namespace

ComplexMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open state file '" + path + "'");
    std::vector<std::vector<Complex>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<Complex> row;
        std::stringstream ss(line);
        std::string token;
        while (std::getline(ss, token, ',')) row.push_back(parse_complex(token));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("state file '" + path + "' is empty");
    const std::size_t cols = rows.front().size();
    for (const auto& row : rows)
        if (row.size() != cols)
            throw ParseError("ragged rows in state file '" + path + "'");
    ComplexMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
}

std::string format_complex(const Complex& z) {
    std::ostringstream out;
    out.precision(17);
    out << z.real();
    if (z.imag() >= 0.0 || std::isnan(z.imag())) out << "+";
    out << z.imag() << "j";
    return out.str();
}

void write_matrix_csv(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ",";
            out << format_complex(m(i, j));
        }
        out << "\n";
    }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const std::vector<std::pair<int, int>>& elements) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out.precision(17);
    out << "t,negativity,trace_defect,min_eig";
    for (const auto& [i, j] : elements)
        out << ",elem_" << i << "_" << j << "_re,elem_" << i << "_" << j << "_im";
    out << "\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out << traj.times[k] << "," << traj.negativities[k] << ","
            << traj.diagnostics[k].trace_defect << "," << traj.diagnostics[k].min_eigenvalue;
        for (const auto& [i, j] : elements) {
            const Complex z = traj.states[k](static_cast<std::size_t>(i - 1),
                                             static_cast<std::size_t>(j - 1));
            out << "," << z.real() << "," << z.imag();
        }
        out << "\n";
    }
}

}  // namespace qutrit
