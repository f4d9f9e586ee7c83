#pragma once

#include <span>
#include <string>
#include <vector>

#include "gpt/state_table.hpp"

namespace gpt {

/// Two gbits with a XOR b = j j' and uniform marginals.
StateTable pr_box();

/// E * PR + (1 - E) * noise; p(a XOR b = j j' | j j') = (1 + E) / 2.
StateTable isotropic_box(double correlation);

/// Gbit PR variant with a XOR b = j j' XOR alpha j XOR beta j' XOR gamma.
StateTable pr_variant(int alpha, int beta, int gamma);

/// Local deterministic two-gbit box a = a_out[j], b = b_out[j'].
StateTable deterministic_box(int a0, int a1, int b0, int b1);

/// Pure gbit state v in 0..3: setting 0 yields v >> 1, setting 1 yields v & 1.
StateTable gbit_vertex(int v);

/// Classical parties (1, shape[t]) with joint distribution `dist`
/// (row-major over the shape). Shape defaults to a single party.
StateTable classical(std::span<const double> dist, std::vector<int> shape = {});

/// Classical point mass on `outcome` of a (1, outcomes) party.
StateTable classical_pure(int outcomes, int outcome);

/// Uniform classical bits x0, x1 and a gbit Z whose setting j yields x_j.
StateTable ssa_example();

/// Every entry 1/l for the given system (two gbits by default).
StateTable uniform_noise(const SystemType& system);
StateTable uniform_noise();

SystemType gbit_pair();

/// Resolves a state by name: pr | pr_box, isotropic:E, gbit_vertex:v,
/// classical:p0,p1,..., ssa-example, noise | uniform_noise, uniform-gbit.
/// Dashes and underscores are interchangeable. Throws std::invalid_argument.
StateTable build_named_state(const std::string& text);

}  // namespace gpt
