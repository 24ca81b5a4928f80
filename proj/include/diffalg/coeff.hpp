#pragma once

#include "diffalg/errors.hpp"
#include "diffalg/numeric.hpp"

#include <cstdint>
#include <string>

namespace diffalg {

enum class RingKind { rationals, integers, prime_field };

/// Coefficient domain. Elements are stored as exact rationals; for Z the
/// denominator is always 1, for GF(p) the canonical representative lies in
/// [0, p). All arithmetic goes through the ring so reductions happen eagerly.
class CoeffRing {
  public:
    static CoeffRing rationals() { return CoeffRing(RingKind::rationals, 0); }
    static CoeffRing integers() { return CoeffRing(RingKind::integers, 0); }
    static CoeffRing prime_field(std::uint64_t p);

    // Accepts "Q", "Z", "GF2", "GF(p)" and "Zp(p)".
    static CoeffRing from_name(const std::string& name);

    RingKind kind() const { return kind_; }
    std::uint64_t prime() const { return p_; }
    bool is_field() const { return kind_ != RingKind::integers; }
    std::string name() const;

    bool operator==(const CoeffRing& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const CoeffRing& o) const { return !(*this == o); }

    Rat zero() const { return Rat(0); }
    Rat one() const { return Rat(1); }
    Rat from_int(const Int& n) const;
    Rat from_int(long long n) const { return from_int(Int(n)); }

    // Canonical representative; rejects values outside the ring
    // (non-integral input for Z and GF(p)).
    Rat normalize(const Rat& a) const;

    Rat add(const Rat& a, const Rat& b) const { return normalize(a + b); }
    Rat sub(const Rat& a, const Rat& b) const { return normalize(a - b); }
    Rat mul(const Rat& a, const Rat& b) const { return normalize(a * b); }
    Rat neg(const Rat& a) const { return normalize(-a); }
    Rat inv(const Rat& a) const;
    Rat div(const Rat& a, const Rat& b) const;

    bool is_zero(const Rat& a) const { return a == 0; }

    std::string to_string(const Rat& a) const;
    // Parses "n" or "n/d" and normalizes into the ring.
    Rat parse(const std::string& text) const;

  private:
    CoeffRing(RingKind kind, std::uint64_t p) : kind_(kind), p_(p) {}

    RingKind kind_;
    std::uint64_t p_;
};

} // namespace diffalg
