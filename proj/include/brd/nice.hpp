#pragma once

// The auxiliary structure Y, nice embeddings of Y into a prefix, and the
// explicit envelope built from copies of irreducible pieces.

#include "brd/envelope.hpp"

#include <string>
#include <vector>

namespace brd {

/// An ordered embedding f of the irreducible piece I into K ending at a.
struct IrrMap {
    std::size_t irr_index = 0;
    Structure irr;
    std::vector<std::size_t> f;
};

/// Points of Y in <_Y order: a copy point (a, r, b) or the point a of K.
struct YPoint {
    bool copy = false;
    std::size_t a = 0;
    std::size_t r = 0;
    std::size_t b = 0;
};

struct YStructure {
    std::size_t horizon = 0;
    std::vector<std::vector<IrrMap>> irr;  // irr[a] = Irr(a)
    std::vector<YPoint> points;
    std::vector<std::size_t> k_position;  // position of point a of K within points
    Structure structure;                  // Y enumerated in <_Y order
};

YStructure build_y(const LimitPrefix& prefix, std::size_t horizon);

struct NiceEmbedding {
    std::vector<std::size_t> eta;  // eta[i]: level of the i-th point of Y
    std::size_t demand_levels = 0;
};

/// Greedy eta in <_Y order: each point goes to the least level above the
/// previous image whose coding node carries exactly the required relations to
/// ran(eta) and zeros elsewhere. When the prefix has no such level, one is
/// appended, up to a total prefix size of budget (then BudgetExhausted).
NiceEmbedding nice_embedding(const YStructure& y, LimitPrefix& prefix, std::size_t budget);

/// Pairs (y, m) with m < eta(y), R(m, eta(y)) != 0 and m outside ran(eta).
std::vector<std::string> nice_clause_violations(const NiceEmbedding& eta, const LimitPrefix& prefix);

/// For consecutive y0 <_Y y1 <= y and n = eta(y):
/// c(n)|eta(y1) = Left(c(n)|(eta(y0)+1), eta(y1)).
std::vector<std::string> nice_left_violations(const NiceEmbedding& eta, const LimitPrefix& prefix);

struct Resolution {
    std::size_t level = 0;
    std::size_t point = 0;  // index into YStructure::points
};

struct NiceEnvelope {
    LevelSet envelope;
    LevelSet resolved_levels;  // crit(S) together with Start values below their level
    std::vector<Resolution> resolutions;
};

/// E = S together with the eta-images of every copy containing a point at a
/// critical or Start level. Throws CritResolutionFailure when such a level is
/// not the image of a copy point.
NiceEnvelope nice_envelope(const LevelSet& s, const NiceEmbedding& eta, const YStructure& y,
                           const LimitPrefix& prefix);

}  // namespace brd
