#pragma once

#include "crinv/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crinv {

// Constant combination of a stage frame, possibly conjugated.
struct Letter {
    Vec coeffs;
    bool conjugated = false;
};

// How stage k is obtained from stage k-1.
struct StageChoice {
    int order_t = 0;
    std::vector<Letter> word;  // innermost first
    bool imaginary = false;
    int pivot = 0;  // frame index eliminated when passing to the kernel
    Vec kernel;     // the form on the previous frame at the base point, normalized
};

struct Tower {
    std::vector<SubbundleFrame> stages;  // E_0 = H10 ... E_m
    std::vector<DualForm> forms;
    std::vector<StageChoice> choices;
    std::vector<Series> associated;  // dual functions of stages with t_k >= 3

    std::size_t depth() const { return choices.size(); }
};

struct Multitype {
    std::vector<Bounded> entries;
    int bound = 0;
    Tower certificate;
    long words_examined = 0;
    int branches = 0;
    bool reduced_letters = false;  // combination letters were cut back to fit the word budget
    bool truncated_search = false;  // the word budget was exhausted

    std::string str() const;
    int infinite_count() const;
};

// Lexicographic order with "≥W" above every integer below W.
bool lex_less(const std::vector<Bounded>& a, const std::vector<Bounded>& b);

struct TowerOptions {
    int word_bound = 6;
    int branch_cap = 16;
    long word_budget = 60000;
};

// Smallest order t <= word_bound of a dual form over E that does not vanish on E
// at the base point, or -1.
int minimal_form_order(const Hypersurface& S, const SubbundleFrame& E, int word_bound);

Multitype tower_multitype(const Hypersurface& S, const TowerOptions& opt);
Multitype tower_multitype(const Hypersurface& S, int word_bound);

// Rebuilds a tower from its choices on another base point of the same data.
std::optional<Tower> replay_tower(const Hypersurface& S, const std::vector<StageChoice>& choices);

bool q_finite(const Multitype& m, int q);

struct StructureReport {
    bool differentials_independent = false;
    int points_on_m = 0;
    int containment_checked = 0;
    int multitype_checked = 0;
    std::vector<std::string> violations;
    std::vector<std::string> notes;
    bool ok() const { return differentials_independent && violations.empty(); }
};

// Checks of the tower structure at sample points of S (holomorphic coordinates):
// independence of the associated differentials, Levi kernel containment on M,
// and semicontinuity of the multitype.
// Multitypes already computed at the points may be passed in `known`.
StructureReport structure_checks(const Series& r, const Hypersurface& S, const Multitype& m,
                                 const std::vector<Vec>& points, const std::vector<Multitype>* known = nullptr);

}  // namespace crinv
