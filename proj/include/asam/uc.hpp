#pragma once

#include "asam/milp.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace asam::opt {

/// One dispatchable unit (an asset for agents, an order for redispatch).
struct UCUnit {
    std::string name;
    int node = 0;
    double pnom = 0.0;          // MW
    std::vector<double> p_min_pu; // per t, size T
    std::vector<double> p_max_pu; // per t, size T; 0 forces the unit off
    double srmc = 0.0;          // EUR/MWh
    double suc = 0.0;           // EUR per start
    double sdc = 0.0;           // EUR per stop
    // ramp limits in p.u. of pnom per ISP; infinity disables
    double ramp_up = kInf;
    double ramp_down = kInf;
    double ramp_start_up = kInf;
    double ramp_shut_down = kInf;
    int min_up = 0;   // ISPs
    int min_down = 0; // ISPs
    bool committable = true; // false: no binaries, u == 1 throughout

    bool initial_on = false;
    double initial_g = 0.0;
    int initial_time_in_state = 1000000; // ISPs already spent in the initial state

    /// Optional per-t dispatch floor/cap in MW (empty = none).
    std::vector<double> dispatch_floor;
    std::vector<double> dispatch_cap;

    /// Equal dispatch and commitment over every t with p_max_pu > 0.
    bool flat = false;
};

/// Linear coupling applied at every t: lower <= sum coef * g_{unit,t} <= upper.
struct UCCoupling {
    std::vector<std::pair<int, double>> terms; // (unit index, coef)
    double lower = -kInf;
    double upper = kInf;
};

struct UCProblem {
    int horizon = 0;
    int num_nodes = 1;
    std::vector<std::vector<double>> load; // [node][t] MW
    std::vector<UCUnit> units;
    std::vector<UCCoupling> couplings;
    bool slack = true;
    double slack_penalty = 10000.0;   // EUR/MWh of shortfall
    double surplus_penalty = 10000.0; // EUR/MWh of surplus
    double isp_hours = 0.25;
};

enum class UCStatus { Optimal, Infeasible, NodeLimit, Failed };

std::string to_string(UCStatus s);

struct UCSolution {
    UCStatus status = UCStatus::Failed;
    double objective = 0.0; // EUR
    std::vector<std::vector<double>> g;  // [unit][t]
    std::vector<std::vector<int>> u;     // [unit][t]
    std::vector<std::vector<double>> shortfall; // [node][t], supply missing
    std::vector<std::vector<double>> surplus;   // [node][t], supply in excess
    /// Constraint class whose removal restores feasibility (only when infeasible).
    std::string infeasible_class;
    long nodes = 0;
};

class UCError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws UCError on malformed input (sizes, bounds).
void validate(const UCProblem& p);

UCSolution solve_uc(const UCProblem& p, MilpOptions options = {});

/// Exhaustive commitment enumeration with an LP per pattern (dense tableau).
/// Throws UCError when more than `max_binaries` commitment decisions are free.
UCSolution brute_force_uc(const UCProblem& p, int max_binaries = 12);

/// Post-hoc check of band, ramp, min up/down, balance, flatness and coupling
/// rows. Returns one message per violation.
std::vector<std::string> verify_uc(const UCProblem& p, const UCSolution& s, double tol = 1e-6);

/// Objective value of a given solution under the problem's cost terms.
double evaluate_uc_cost(const UCProblem& p, const UCSolution& s);

} // namespace asam::opt
