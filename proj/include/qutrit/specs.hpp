#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qutrit/evolution.hpp"
#include "qutrit/lindblad.hpp"
#include "qutrit/states.hpp"

namespace qutrit {

// Bad model/state spec strings and malformed files; the CLI maps this
// to its parse-error exit code.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// `sysI:g1=<r>,g2=<r>,beta=<r>` | `sysII:ge=<r>,gu=<r>`
struct ModelSpec {
    std::variant<SystemIParams, SystemIIParams> params;
    int atoms = 2;

    LindbladGenerator build() const;
    double max_rate() const;
    bool is_system_II_max_interference() const;
};

ModelSpec parse_model(const std::string& text, int atoms);

// `pure:theta=<rad>,phi=<rad>` | `psimax` | `isotropic:p=<real>` | `file:<path>`
struct StateSpec {
    DensityMatrix state;
    // set when the spec names a closed-form family
    std::variant<std::monostate, PureStateParams, IsotropicParams> family;
};

StateSpec parse_state(const std::string& text, int atoms = 2);

// 9 rows x 9 columns of `re+imj` pairs
ComplexMatrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const ComplexMatrix& m);
std::string format_complex(const Complex& z);

// `t,negativity,trace_defect,min_eig[,elem_<i>_<j>_re,elem_<i>_<j>_im ...]`
void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const std::vector<std::pair<int, int>>& elements = {});

}  // namespace qutrit
