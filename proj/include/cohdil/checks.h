#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cohdil/channel.h"
#include "cohdil/random.h"

namespace cohdil {

/// (E (x) id_k)(X) for X on C^{d_in} (x) C^k.
Matrix apply_extended(const ChoiOperator& j, const Matrix& x, std::size_t k);

/// Operational definitions, evaluated without looking at J directly.
/// CP: (E (x) id)(rho) >= 0 on the maximally entangled input and `samples` random pure inputs.
bool cp_by_action(const ChoiOperator& j, Rng& rng, int samples = 8, double tol = 1e-7);
/// TP: tr E(|a><b|) = delta_ab on every matrix unit.
bool tp_by_action(const ChoiOperator& j, double tol = 1e-7);
/// Unital: E(I) = I.
bool unital_by_action(const ChoiOperator& j, double tol = 1e-7);

enum class ChannelFamily { cptp, cp_not_tp, mixed_unitary, transpose_composed, hermitian_preserving };

std::string to_string(ChannelFamily f);

/// Random channel of the given family with d_in = d_out = d.
ChoiOperator random_channel(ChannelFamily family, std::size_t d, Rng& rng);

struct EquivalenceSummary {
    int trials = 0;
    /// Per equivalence: mismatches, and how many trials had the property true / false.
    struct Tally {
        std::string name;
        int mismatches = 0;
        int seen_true = 0;
        int seen_false = 0;
    };
    std::vector<Tally> tallies;

    bool pass() const;
};

/// Checks CP <=> J >= 0, TP <=> tr_out J = I, unital <=> tr_in J = I, TP(E) <=> unital(E^dag),
/// CP(E) <=> CP(E^dag) on `trials` random maps with 2 <= d <= max_dim, cycling through the
/// channel families so that both sides of every equivalence are exercised.
EquivalenceSummary choi_equivalence_suite(Rng& rng, int trials, std::size_t max_dim);

}  // namespace cohdil
