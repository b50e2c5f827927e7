#include "fecon/scenario.hpp"

namespace fecon::scenario {

namespace {

constexpr const char* kSaturatedGrowth = R"json({
  "name": "saturated_growth",
  "description": "Saturated reference frames: capital grows once r clears exp(-2), about 13.5%",
  "exchange": {
    "supply": {"rho": 1.0, "m": 2.0, "c": 2.0, "K": 0.0, "M": 1.0},
    "demand": {"rho": 1.0, "m": 3.0, "c": 3.0, "K": 0.0, "M": 1.0},
    "rho_star": 1.0,
    "c": 1.0,
    "M": 1.0
  }
})json";

constexpr const char* kFig7Canonical = R"json({
  "name": "fig7_canonical",
  "description": "The four canonical market-dynamics curves at kappa = 1",
  "dynamics": {
    "canonical": {"kinds": ["a", "b", "c", "d"], "kappa": 1.0},
    "grid": {"start": 0.0, "stop": 5.0, "points": 512}
  }
})json";

constexpr const char* kBidDecompositionDemo = R"json({
  "name": "bid_decomposition_demo",
  "description": "Decomposes a 4x4 expectation matrix and classifies the architects",
  "bid": {
    "matrix": [
      [0.5, 0.3, 0.0, 0.2],
      [0.3, 0.5, 0.2, 0.0],
      [0.0, 0.2, 0.5, 0.3],
      [0.2, 0.0, 0.3, 0.5]
    ],
    "E": [1.0, 2.0, 3.0, 4.0],
    "I": [4.0, 3.0, 2.0, 1.0],
    "I_theta": 1.5,
    "E_p": 12.0
  }
})json";

constexpr const char* kExternalityDemo = R"json({
  "name": "externality_demo",
  "description": "Block-level budgets and externality classes across an obsolescence schedule",
  "industrialization": {
    "base": [1, 0],
    "block_orders": [2, 2],
    "uniform_blocks": true,
    "E": [4.0, 6.0],
    "I": [3.0, 5.0],
    "E_split": [[5.0, -1.0], [3.0, 3.0]],
    "I_split": [[1.5, 1.5], [2.5, 2.5]],
    "epochs": [
      {"label": "delivery", "flips": []},
      {"label": "aged", "flips": [[0, 0], [0, 1]]},
      {"label": "obsolete", "flips": [[0, 0]]}
    ],
    "advantage": {
      "i": 0,
      "j": 1,
      "candidates": [
        {"beta": 1, "E_row": [5.0, -1.0], "I_row": [2.5, 2.5], "T": [[1, 0], [0, 1]]},
        {"beta": 2, "E_row": [2.0, 2.0], "I_row": [2.5, 2.5], "T": [[1, 1], [1, 1]]}
      ]
    }
  }
})json";

constexpr const char* kWeirdFixedPoint = R"json({
  "name": "weird_fixed_point",
  "description": "Weighting iterations pulled to the interior fixed point near 0.34",
  "behavior": {
    "regime": "weird",
    "kappa": 1.0,
    "p0": [0.05, 0.2, 0.5, 0.9],
    "outcome": 100.0
  }
})json";

constexpr const char* kPovertyTrap = R"json({
  "name": "poverty_trap",
  "description": "Steep weighting splits starts around 0.71 between ruin and fulfilment",
  "behavior": {
    "regime": "poor",
    "kappa": 1.0,
    "p0": [0.05, 0.35, 0.69, 0.72, 0.95],
    "outcome": 100.0
  }
})json";

constexpr const char* kProjectValuation = R"json({
  "name": "project_valuation",
  "description": "Payoff, capacity aggregates and two-slope project value on a 4-state project",
  "valuation": {
    "capacity": {"kind": "additive", "point_weights": [0.25, 0.25, 0.25, 0.25]},
    "org": {
      "departments": [[0, 1], [2, 3]],
      "function_events": [[[0, 2], [1, 3]], [[0], [1, 2, 3]]]
    },
    "value_params": {"rho": 2.0, "c_gain": 2.0, "c_loss": 1.0},
    "marketing_outcomes": [3.0, 5.0],
    "capability": 2.0,
    "realized_outcomes": [4.0, -2.0],
    "prospect": [
      {"epsilon": 2.0, "event": [0, 1]},
      {"epsilon": 4.0, "event": [2, 3]}
    ],
    "c_tech": 3
  }
})json";

constexpr const char* kDynamicsFit = R"json({
  "name": "dynamics_fit",
  "description": "A supply and a demand curve that coincide exactly on the grid",
  "dynamics": {
    "supply": {"kappa": 1.0, "c": 1.0, "M": -1.0, "amplitudes": [1.0, 1.0]},
    "demand": {"kappa": -1.0, "c": 1.0, "M": -1.0, "amplitudes": [1.0, 1.0]},
    "grid": {"start": 0.0, "stop": 5.0, "points": 512}
  }
})json";

constexpr BuiltinScenario kBuiltins[] = {
    {"saturated_growth", "growth threshold of saturated reference frames", kSaturatedGrowth},
    {"fig7_canonical", "the four canonical market-dynamics curves", kFig7Canonical},
    {"bid_decomposition_demo", "expectation matrix decomposition and architect selection",
     kBidDecompositionDemo},
    {"externality_demo", "externality metric across an obsolescence schedule",
     kExternalityDemo},
    {"weird_fixed_point", "weighting iterations converging near 0.34", kWeirdFixedPoint},
    {"poverty_trap", "weighting iterations splitting around 0.71", kPovertyTrap},
    {"project_valuation", "payoff, capacities and project value", kProjectValuation},
    {"dynamics_fit", "a perfectly fitting supply/demand pair", kDynamicsFit},
};

} // namespace

std::span<const BuiltinScenario> builtin_scenarios() { return kBuiltins; }

const BuiltinScenario* find_builtin(const std::string& name) {
    for (const auto& builtin : kBuiltins) {
        if (name == builtin.name) return &builtin;
    }
    return nullptr;
}

} // namespace fecon::scenario
