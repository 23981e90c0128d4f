#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdpair/twisted.hpp"

namespace pdpair {

enum class Verdict { holds, fails, undecided };
std::string to_string(Verdict v);
/// fails < undecided < holds
Verdict worst(Verdict a, Verdict b);

struct EngineOptions {
    /// Coset cap for enumerating pi_1 before giving up (possibly infinite).
    std::size_t max_cosets = 1000000;
    /// Largest group order certified through the regular permutation system.
    std::size_t lambda_budget = 128;
    /// Permutation witnesses come from subgroups of index up to this.
    std::size_t witness_index = 5;
    std::size_t max_witnesses = 16;
    std::size_t max_orientation_systems = 64;
};

/// Outcome of one quasi-isomorphism test with a fixed coefficient system.
struct SystemCheck {
    std::string system;
    std::size_t rank = 1;
    bool quasi_iso = false;
    std::map<int, HomologyGroup> cone_homology;
    Json to_json() const;
};

struct ConditionResult {
    Verdict verdict = Verdict::holds;
    /// How the verdict was reached, e.g. "simply connected", "regular system
    /// of order 2", "witness", "pi_1 not enumerated".
    std::string method;
    /// Only finitely many coefficient systems were checked and all passed.
    bool integer_only = false;
    /// Component (of X for conditions 1 and 2, of Y for 3) deciding the verdict.
    std::optional<std::size_t> component;
    std::optional<SystemCheck> witness;
    std::vector<SystemCheck> checks;
    Json to_json() const;
};

struct FundamentalClassSearch {
    HomologyGroup group;
    /// +g and -g for a generator g of the free part when it has rank 1.
    std::vector<IntVector> classes;
    bool ambiguous = false;
};

struct DualityReport {
    Verdict verdict = Verdict::fails;
    /// "poincare pair", "interior duality only" (conditions 1 and 2 without
    /// 3), "not a poincare pair" or "undecided".
    std::string classification;
    std::optional<int> formal_dimension;
    std::string orientation_system;
    std::optional<Connection> orientation;
    /// In the relative chain basis of the pair with the orientation system.
    std::optional<IntVector> fundamental_class;
    std::array<ConditionResult, 3> conditions;
    bool integer_only = false;
    std::size_t components = 1;
    std::vector<std::string> notes;

    Json to_json() const;
    std::string summary() const;
};

struct TriadReport {
    Verdict verdict = Verdict::fails;
    DualityReport pair;
    std::array<std::optional<DualityReport>, 2> pieces;
    /// Sign relating each restricted boundary class to the independently found
    /// fundamental class of the piece, when that piece is connected.
    std::array<std::optional<int>, 2> piece_signs;
    std::vector<std::string> notes;

    Json to_json() const;
    std::string summary() const;
};

struct ThomResult {
    Verdict verdict = Verdict::fails;
    int degree = 0;
    std::string orientation_system;
    std::optional<Connection> orientation;
    IntVector cocycle;
    ConditionResult check;
    Json to_json() const;
};

/// Builds the map to test for a coefficient system on a connected piece.
using MapBuilder = std::function<ChainMap(const Connection& coefficients)>;

class DualityEngine {
public:
    explicit DualityEngine(EngineOptions options = {});

    const EngineOptions& options() const { return options_; }

    /// Decides whether build(B) is a quasi-isomorphism for every local system
    /// B on the connected complex `space`: witnesses first (trivial, sign
    /// characters, low-index permutation systems), then certification through
    /// the regular system when pi_1 is finite and small enough.
    ConditionResult decide(const SimplicialComplex& space, const MapBuilder& build);

    FundamentalClassSearch find_fundamental_classes(const SimplicialPair& pair, const Connection& orientation, int n);

    /// Condition 1, 2 or 3 for the class z in the relative chains of pair
    /// with the given orientation system. Disconnected pairs are decided per
    /// component.
    ConditionResult check_condition(const SimplicialPair& pair, const Connection& orientation, const IntVector& z,
                                    int n, int which);

    DualityReport verify_pair(const SimplicialPair& pair);
    /// The three conditions for fixed (orientation, n, z).
    DualityReport verify_with(const SimplicialPair& pair, const Connection& orientation, int n, const IntVector& z,
                              const std::string& orientation_label = {});
    TriadReport verify_triad(const SimplicialTriad& triad);

    ThomResult verify_thom_class(const SimplicialPair& pair, const Connection& orientation, const IntVector& u, int k,
                                 const std::string& orientation_label = {});
    std::optional<ThomResult> find_thom_class(const SimplicialPair& pair, int k);

    /// Orientation systems of a connected complex, as connections with labels.
    std::vector<std::pair<std::string, Connection>> orientation_connections(const SimplicialComplex& c);

private:
    struct GroupData;
    GroupData& group_data(const GroupPresentation& p);

    EngineOptions options_;
    std::map<std::string, std::shared_ptr<GroupData>> groups_;
};

DualityReport verify_pair(const SimplicialPair& pair, const EngineOptions& options = {});

/// Boundary of a relative cycle of (X, Y) as an absolute chain of the
/// subcomplex `on` (a subcomplex of Y), with coefficients restricted.
IntVector boundary_on(const TwistedComplex& relative, const IntVector& z, int n, const TwistedComplex& on);

/// Moves a chain between twisted complexes on different complexes sharing a
/// vertex universe, matching simplices by their vertices; cells absent from
/// the target are dropped.
IntVector move_chain(const TwistedComplex& from, int p, const IntVector& v, const TwistedComplex& to);

/// Homology of the tensor product and Tor of two finitely generated abelian
/// groups, in invariant-factor form.
HomologyGroup tensor_groups(const HomologyGroup& a, const HomologyGroup& b);
HomologyGroup tor_groups(const HomologyGroup& a, const HomologyGroup& b);
HomologyGroup direct_sum(const std::vector<HomologyGroup>& parts);

struct KunnethFactor {
    SimplicialPair pair;
    Connection connection;
    std::string label;
};

struct KunnethDegree {
    int degree = 0;
    HomologyGroup computed, predicted;
    bool match = false;
};

/// Cross/cap compatibility (xi x eta) cap (a x b) = sign (xi cap a) x (eta cap b)
/// with sign (-1)^((q - q1) r1), tested in homology on generator classes.
struct CrossCapCheck {
    int q = 0, q1 = 0, r = 0, r1 = 0;
    int sign = 1;
    bool holds = false;
    /// The opposite sign would have failed (the classes are not 2-torsion).
    bool discriminating = false;
};

struct KunnethReport {
    std::string label;
    std::vector<KunnethDegree> degrees;
    std::vector<CrossCapCheck> cross_cap;
    bool ok = false;
    Json to_json() const;
};

/// Twisted homology of the shuffle product against the Kunneth formula, plus
/// the cross/cap sign identity when both factors are absolute.
KunnethReport kunneth_check(const KunnethFactor& a, const KunnethFactor& b);

}  // namespace pdpair
