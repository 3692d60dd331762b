#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ternion {

struct SimulateParams {
    std::string mode = "planar";  //!< planar | general | state
    double g = 1;
    // planar: slopes z = l / r1
    double M2 = 1;
    double z0 = 1;
    double z1 = 2;
    double z_start = 1.99;
    // general: slopes y = r2 / r1
    double M0 = 0;
    double M1 = 0;
    double y0 = 0;
    double y1 = 0;
    double y_start = 0;
    // explicit initial state (l, r1, r2, v0, v1, v2)
    std::array<double, 6> state{};
    double t_end = 2000;
    double max_step = 0.1;  //!< 0 means unlimited
    long max_steps = 1'000'000;
    bool allow_singular_stop = false;  //!< exit 0 with a truncated trajectory
    bool compare_closed_form = false;  //!< append the closed-form r1 column

    friend bool operator==(const SimulateParams&, const SimulateParams&) = default;
};

struct VerifyParams {
    std::string suite = "all";  //!< algebra | calculus | field | dynamics | all
    std::string inject_fault;   //!< empty or multisine-offset

    friend bool operator==(const VerifyParams&, const VerifyParams&) = default;
};

struct ScatterParams {
    double g = 1;
    std::array<double, 3> v_in{1.0, 0.3, 0.0};
    std::vector<double> M1{-1.0, -0.5};
    std::vector<double> M2{0.5, 1.0};

    friend bool operator==(const ScatterParams&, const ScatterParams&) = default;
};

struct FormParams {
    //! trisectrice-loop | cubic-band | polar-band | sphere | box-divergence
    std::string preset = "trisectrice-loop";
    double rho = 1;
    double phi = 0;
    double a1 = 1;
    double a2 = 2.718281828459045;
    double phi_lo = 0;
    double phi_hi = 1;
    std::array<double, 3> center_frame{3.0, 2.0, 0.0};
    double radius = 1;
    std::array<double, 6> box{0.0, 1.0, 0.0, 1.0, 0.0, 1.0};

    friend bool operator==(const FormParams&, const FormParams&) = default;
};

struct FieldScanParams {
    std::array<double, 2> l{0.5, 2.0};
    std::array<double, 2> r1{-1.0, 1.0};
    std::array<double, 2> r2{-1.0, 1.0};
    std::array<int, 3> n{4, 4, 4};

    friend bool operator==(const FieldScanParams&, const FieldScanParams&) = default;
};

/*!
 * Parameters of one CLI run; serialized in full into the run manifest.
 */
struct RunConfig {
    std::string command = "simulate";
    std::uint64_t seed = 42;
    double tol = 1e-10;           //!< ODE / quadrature tolerance
    double drift_tol = 1e-8;      //!< relative angular-momentum drift bound
    std::string out;
    std::string manifest;
    VerifyParams verify;
    SimulateParams simulate;
    ScatterParams scatter;
    FormParams form;
    FieldScanParams field_scan;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

//! JSON text of the full configuration (all fields explicit).
std::string serialize(const RunConfig& c);
//! Parses a configuration or a manifest (whose extra "results" key is ignored).
//! Throws ConfigError on empty input, malformed JSON, unknown keys, or wrong types.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
//! Checks value ranges for the configured command; throws ConfigError.
void validate(const RunConfig& c);

}  // namespace ternion
