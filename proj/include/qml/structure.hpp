#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace qml {

inline constexpr int kMaxWorlds = 64;

/// Subset of {0, ..., world_count-1} as a 64-bit mask.
class WorldSet {
public:
    constexpr WorldSet() = default;
    WorldSet(std::initializer_list<int> worlds);

    static constexpr WorldSet from_bits(std::uint64_t bits)
    {
        WorldSet ws;
        ws.bits_ = bits;
        return ws;
    }
    static constexpr WorldSet all(int world_count)
    {
        return from_bits(world_count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << world_count) - 1);
    }

    [[nodiscard]] constexpr std::uint64_t bits() const { return bits_; }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
    [[nodiscard]] constexpr int size() const { return std::popcount(bits_); }
    [[nodiscard]] constexpr bool contains(int w) const { return (bits_ >> w) & 1U; }
    [[nodiscard]] constexpr bool subset_of(WorldSet other) const { return (bits_ & ~other.bits_) == 0; }
    [[nodiscard]] constexpr bool intersects(WorldSet other) const { return (bits_ & other.bits_) != 0; }
    /// Least member; -1 when empty.
    [[nodiscard]] constexpr int first() const { return bits_ == 0 ? -1 : std::countr_zero(bits_); }
    [[nodiscard]] std::vector<int> members() const;

    constexpr void insert(int w) { bits_ |= std::uint64_t{1} << w; }
    constexpr void erase(int w) { bits_ &= ~(std::uint64_t{1} << w); }

    friend constexpr WorldSet operator&(WorldSet a, WorldSet b) { return from_bits(a.bits_ & b.bits_); }
    friend constexpr WorldSet operator|(WorldSet a, WorldSet b) { return from_bits(a.bits_ | b.bits_); }
    /// Set difference.
    friend constexpr WorldSet operator-(WorldSet a, WorldSet b) { return from_bits(a.bits_ & ~b.bits_); }
    constexpr WorldSet& operator&=(WorldSet o) { bits_ &= o.bits_; return *this; }
    constexpr WorldSet& operator|=(WorldSet o) { bits_ |= o.bits_; return *this; }

    friend constexpr bool operator==(WorldSet, WorldSet) = default;
    // Orders by mask value, which is the deterministic order of closed_sets().
    friend constexpr auto operator<=>(WorldSet, WorldSet) = default;

private:
    std::uint64_t bits_ = 0;
};

[[nodiscard]] std::string to_string(WorldSet ws);

/// A finite quantum modal structure <W, R_Q, R_M, rho>.
///
/// Holds whatever it is given; side conditions are checked by validate().
/// Only range errors are rejected eagerly (MalformedInput).  Atoms absent
/// from the valuation denote the empty set.
class QuantumModalStructure {
public:
    explicit QuantumModalStructure(int world_count);

    [[nodiscard]] int world_count() const { return world_count_; }
    [[nodiscard]] WorldSet worlds() const { return WorldSet::all(world_count_); }

    [[nodiscard]] bool rq(int i, int j) const { return rq_[check(i)].contains(check(j)); }
    [[nodiscard]] bool rm(int i, int l) const { return rm_[check(i)].contains(check(l)); }
    [[nodiscard]] WorldSet rq_neighbors(int i) const { return rq_[check(i)]; }
    [[nodiscard]] WorldSet rm_successors(int i) const { return rm_[check(i)]; }
    [[nodiscard]] const std::vector<WorldSet>& rq_rows() const { return rq_; }
    [[nodiscard]] const std::vector<WorldSet>& rm_rows() const { return rm_; }

    void set_rq(int i, int j, bool value = true);
    void set_rm(int i, int l, bool value = true);
    void set_rq_row(int i, WorldSet row);
    void set_rm_row(int i, WorldSet row);
    /// Adds the reflexive and symmetric pairs missing from R_Q.
    void complete_rq();

    [[nodiscard]] WorldSet valuation(const std::string& atom) const;
    [[nodiscard]] const std::map<std::string, WorldSet>& valuations() const { return valuation_; }
    void set_valuation(const std::string& atom, WorldSet worlds);

    friend bool operator==(const QuantumModalStructure&, const QuantumModalStructure&) = default;

private:
    int check(int w) const;
    WorldSet check(WorldSet ws) const;

    int world_count_;
    std::vector<WorldSet> rq_;
    std::vector<WorldSet> rm_;
    std::map<std::string, WorldSet> valuation_;
};

enum class Condition { Reflexivity, Symmetry, Forcing, Closedness };

/// One failed side condition with its least witness.
///
/// witness: Reflexivity {i}; Symmetry {i, j}; Forcing {i, l, j} where
/// rm(i,l) and rq(i,j) hold but rm(j,l) does not; Closedness {} with `atom`.
struct Violation {
    Condition condition;
    std::vector<int> witness;
    std::string atom;

    [[nodiscard]] std::string describe() const;
};

/// Empty iff the structure is a quantum modal structure.  At most one
/// record per condition (per atom for closedness).
[[nodiscard]] std::vector<Violation> validate(const QuantumModalStructure& s);
[[nodiscard]] inline bool is_valid(const QuantumModalStructure& s) { return validate(s).empty(); }

/// X^perp = { j | no k in X with rq(j,k) }.
[[nodiscard]] WorldSet ortho_complement(WorldSet x, const QuantumModalStructure& s);
[[nodiscard]] WorldSet ortho_complement(WorldSet x, int world_count, const std::vector<WorldSet>& rq_rows);
/// X^perp^perp.
[[nodiscard]] WorldSet ortho_closure(WorldSet x, const QuantumModalStructure& s);
[[nodiscard]] bool is_closed(WorldSet x, const QuantumModalStructure& s);

/// Every R_Q-closed set, ascending by mask.  Always contains the empty set
/// and W.
[[nodiscard]] std::vector<WorldSet> closed_sets(const QuantumModalStructure& s);
[[nodiscard]] std::vector<WorldSet> closed_sets(int world_count, const std::vector<WorldSet>& rq_rows);

/// Connected components of R_Q, ordered by least member.
[[nodiscard]] std::vector<WorldSet> rq_components(int world_count, const std::vector<WorldSet>& rq_rows);

} // namespace qml
