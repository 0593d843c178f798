#pragma once

// Obstruction pipeline: knot test, orientation invariant, definiteness,
// then the embedding search on the reduced form. A definite form with no
// embedding obstructs sliceness; a found witness ends the obstruction;
// links and indefinite forms fall outside the method's hypotheses.

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "montobs/lattice.hpp"
#include "montobs/montesinos.hpp"

namespace montobs {

enum class VerdictOutcome { obstructed, embedding_found, not_applicable, aborted };

inline const char* outcome_name(VerdictOutcome o) {
    switch (o) {
        case VerdictOutcome::obstructed: return "obstructed";
        case VerdictOutcome::embedding_found: return "embedding_found";
        case VerdictOutcome::not_applicable: return "not_applicable";
        case VerdictOutcome::aborted: return "aborted";
    }
    throw std::logic_error("unreachable outcome");
}

struct SliceVerdict {
    FamilyParams params;
    bool is_knot = false;
    Rational nr_value;
    bool negative_definite = false;
    int rank = 0;
    Int determinant;
    VerdictOutcome outcome = VerdictOutcome::not_applicable;
    std::optional<EmbeddingWitness> witness;
    std::uint64_t nodes_explored = 0;
    std::uint64_t elapsed_ms = 0;

    explicit SliceVerdict(const FamilyParams& p) : params(p) {}
};

// measure_time = false pins elapsed_ms to 0, for byte-stable batch output.
inline SliceVerdict obstruct_verdict(const FamilyParams& p, const SearchOptions& opts = {},
                                     bool measure_time = true) {
    const auto t0 = std::chrono::steady_clock::now();
    SliceVerdict v(p);
    v.is_knot = is_knot(p);
    v.nr_value = nr_value(p);
    const SymIntMatrix form = intersection_form(build_family_reduced(p));
    v.rank = form.order();
    v.determinant = abs(Int(det_exact(form)));
    v.negative_definite = is_negative_definite(form);
    // Definiteness has two independent routes; they may never disagree.
    if (v.negative_definite != (v.nr_value.sign() > 0))
        throw std::logic_error("definiteness test disagrees with the orientation invariant");

    if (!v.is_knot || !v.negative_definite) {
        v.outcome = VerdictOutcome::not_applicable;
    } else {
        const SearchOutcome res = find_embedding(form, opts);
        v.nodes_explored = res.nodes_explored;
        switch (res.status) {
            case SearchStatus::exhausted:
                v.outcome = VerdictOutcome::obstructed;
                break;
            case SearchStatus::found:
                v.outcome = VerdictOutcome::embedding_found;
                v.witness = res.witness;
                if (!v.witness || !verify_witness(form, *v.witness))
                    throw std::logic_error("embedding witness failed verification");
                break;
            case SearchStatus::aborted:
                v.outcome = VerdictOutcome::aborted;
                break;
        }
    }
    if (measure_time) {
        const auto dt = std::chrono::steady_clock::now() - t0;
        v.elapsed_ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(dt).count());
    }
    return v;
}

}  // namespace montobs
