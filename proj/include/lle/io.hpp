// include/lle/io.hpp
//
// Serialization of branches, field snapshots, bifurcation reports and sign
// maps.  Numbers use the shortest round-trip decimal representation so
// reruns produce identical files.

#pragma once

#include "json.hpp"

#include <ostream>
#include <string>
#include <vector>

#include "lle/bifurcation.hpp"
#include "lle/bounds.hpp"
#include "lle/continuation.hpp"
#include "lle/response.hpp"

namespace lle::io {

std::string format_double(double v);

std::string events_to_string(std::uint32_t events);

struct LabeledBranch {
    int id = 0;
    double zeta = 0.0;
    const Branch* branch = nullptr;
};

// branch_id,step,param_name,param_value,zeta,norm_sq_over_2pi,arclength,min_sv,events
void write_branch_csv(std::ostream& os, const std::vector<LabeledBranch>& branches, const std::string& param_name);

nlohmann::json field_to_json(const PeriodicField& u, const Params& p);
PeriodicField field_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const Params& p);

nlohmann::json to_json(const BifurcationReport& r);
nlohmann::json to_json(const BoundsReport& r);

// t,zeta,rho,second_deriv,sign,singular
void write_sign_map_csv(std::ostream& os, const std::vector<SignMapRow>& rows);

}  // namespace lle::io
